use serde::{Deserialize, Serialize};

use super::{gen_k_tree, Graph, GraphError};

/// Largest stacked-triangulation level built without an explicit override.
pub const DEFAULT_STACKED_LEVEL_CAP: u32 = 9;

/// Named graph families with their parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GraphFamily {
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    StackedTriangulation { level: u32 },
    KTree { k: usize, n: usize, seed: u64 },
    Path { n: usize },
    Cycle { n: usize },
    Custom,
}

/// Builds a member of `family`. `level_cap` bounds stacked triangulations.
pub fn generate(family: &GraphFamily, level_cap: u32) -> Result<Graph, GraphError> {
    match *family {
        GraphFamily::Complete { n } => {
            if n == 0 {
                return Err(GraphError::InvalidParameters("K_n needs n >= 1".into()));
            }
            Ok(gen_complete(n))
        }
        GraphFamily::CompleteBipartite { a, b } => {
            if a == 0 || b == 0 {
                return Err(GraphError::InvalidParameters("K_{a,b} needs a, b >= 1".into()));
            }
            Ok(gen_complete_bipartite(a, b))
        }
        GraphFamily::StackedTriangulation { level } => gen_stacked_triangulation_capped(level, level_cap),
        GraphFamily::KTree { k, n, seed } => Ok(gen_k_tree(k, n, seed)?.graph),
        GraphFamily::Path { n } => Ok(gen_path(n)),
        GraphFamily::Cycle { n } => {
            if n < 3 {
                return Err(GraphError::InvalidParameters("C_n needs n >= 3".into()));
            }
            Ok(gen_cycle(n))
        }
        GraphFamily::Custom => {
            Err(GraphError::InvalidParameters("custom graphs are read from files, not generated".into()))
        }
    }
}

pub fn gen_complete(n: usize) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, pairs).expect("complete graph is simple")
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn gen_complete_bipartite(a: usize, b: usize) -> Graph {
    let pairs = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::new(a + b, pairs).expect("complete bipartite graph is simple")
}

pub fn gen_path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
}

pub fn gen_cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
}

pub fn gen_stacked_triangulation(level: u32) -> Result<Graph, GraphError> {
    gen_stacked_triangulation_capped(level, DEFAULT_STACKED_LEVEL_CAP)
}

/// Stacked triangulation `T_level`: starting from a triangle (which has two
/// facial triangles), every round puts one new vertex into every facial
/// triangle. New vertices are numbered level by level, in the creation order
/// of the face they are placed in.
pub fn gen_stacked_triangulation_capped(level: u32, cap: u32) -> Result<Graph, GraphError> {
    Ok(stacked_faces(level, cap)?.0)
}

/// The graph together with, for every vertex beyond the first three, the face
/// it was stacked into.
pub(super) fn stacked_faces(level: u32, cap: u32) -> Result<(Graph, Vec<[usize; 3]>), GraphError> {
    if level > cap {
        return Err(GraphError::CapExceeded(format!("stacked triangulation level {level} above cap {cap}")));
    }
    let n = 3usize.pow(level) + 2;
    let mut pairs = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 2]];
    let mut attach = Vec::with_capacity(n - 3);
    let mut next = 3;
    for _ in 0..level {
        let mut new_faces = Vec::with_capacity(faces.len() * 3);
        for &[a, b, c] in &faces {
            let v = next;
            next += 1;
            pairs.extend([(a, v), (b, v), (c, v)]);
            attach.push([a, b, c]);
            new_faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
        }
        faces = new_faces;
    }
    debug_assert_eq!(next, n);
    Ok((Graph::new(n, pairs)?, attach))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_sizes() {
        assert_eq!((gen_complete(1).n(), gen_complete(1).m()), (1, 0));
        assert_eq!((gen_complete(5).n(), gen_complete(5).m()), (5, 10));
        assert_eq!(gen_complete(15).m(), 105);
    }

    #[test]
    fn complete_bipartite_sizes() {
        let g = gen_complete_bipartite(1, 1);
        assert_eq!((g.n(), g.m()), (2, 1));
        let g = gen_complete_bipartite(3, 3);
        assert_eq!(g.m(), 9);
        // no edge inside a part
        assert!(g.edges().iter().all(|e| e.u < 3 && e.v >= 3));
        assert_eq!(gen_complete_bipartite(2, 3).m(), 6);
    }

    #[test]
    fn stacked_triangulation_small_levels() {
        let t0 = gen_stacked_triangulation(0).unwrap();
        assert_eq!((t0.n(), t0.m()), (3, 3));
        let t1 = gen_stacked_triangulation(1).unwrap();
        assert_eq!((t1.n(), t1.m()), (5, 9));
        // T_1 is K_5 minus the edge between the two stacked vertices.
        assert!(!t1.has_edge(3, 4));
        assert_eq!(gen_stacked_triangulation(2).unwrap().n(), 11);
    }

    #[test]
    fn stacked_triangulation_counts_up_to_cap() {
        for level in 0..=DEFAULT_STACKED_LEVEL_CAP {
            let g = gen_stacked_triangulation(level).unwrap();
            assert_eq!(g.n(), 3usize.pow(level) + 2);
            assert_eq!(g.m(), 3 * g.n() - 6);
        }
    }

    #[test]
    fn stacked_triangulation_cap() {
        assert!(matches!(gen_stacked_triangulation(10), Err(GraphError::CapExceeded(_))));
        assert!(gen_stacked_triangulation_capped(3, 2).is_err());
    }

    #[test]
    fn generate_dispatch() {
        let g = generate(&GraphFamily::Cycle { n: 5 }, 9).unwrap();
        assert_eq!(g.m(), 5);
        assert!(generate(&GraphFamily::Complete { n: 0 }, 9).is_err());
        assert!(generate(&GraphFamily::Custom, 9).is_err());
        let g = generate(&GraphFamily::KTree { k: 2, n: 6, seed: 3 }, 9).unwrap();
        assert_eq!(g.m(), 2 * 6 - 3);
    }
}
