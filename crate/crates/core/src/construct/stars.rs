//! Star decompositions and the embeddings built from them.

use serde::Serialize;

use super::ConstructError;
use crate::bounds::ForestPartition;
use crate::embedding::{LinearEmbedding, SpineOrder};
use crate::graph::{Edge, Graph};

/// Edge partition into star forests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarForestPartition {
    pub star_forests: Vec<Vec<Edge>>,
    /// Per star forest, the center of each of its stars. A single-edge star
    /// reports the endpoint it was grown from.
    pub centers: Vec<Vec<usize>>,
}

impl StarForestPartition {
    /// Checks that the parts partition the edges and each part is a
    /// vertex-disjoint union of the stars around its listed centers.
    pub fn validate(&self, graph: &Graph) -> bool {
        let mut used = vec![false; graph.m()];
        for (edges, centers) in self.star_forests.iter().zip(&self.centers) {
            let mut owner = vec![usize::MAX; graph.n()];
            for &c in centers {
                owner[c] = c;
            }
            for e in edges {
                let Some(id) = graph.edge_id(e.u, e.v) else { return false };
                if std::mem::replace(&mut used[id], true) {
                    return false;
                }
                let (c, leaf) = match (owner[e.u] == e.u, owner[e.v] == e.v) {
                    (true, false) => (e.u, e.v),
                    (false, true) => (e.v, e.u),
                    _ => return false,
                };
                if owner[leaf] != usize::MAX {
                    return false;
                }
                owner[leaf] = c;
            }
        }
        self.star_forests.len() == self.centers.len() && used.iter().all(|&u| u)
    }
}

/// Splits every forest into at most two star forests: each tree is rooted at
/// its smallest vertex and edges are grouped by the depth parity of their
/// upper endpoint. Empty groups are dropped.
pub fn star_forests_from_forests(fp: &ForestPartition, graph: &Graph) -> StarForestPartition {
    let n = graph.n();
    let mut star_forests = Vec::new();
    let mut centers = Vec::new();
    for forest in &fp.forests {
        let mut adj = vec![Vec::new(); n];
        for e in forest {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut depth = vec![usize::MAX; n];
        let mut parts = [Vec::new(), Vec::new()];
        let mut part_centers = [Vec::new(), Vec::new()];
        for root in 0..n {
            if depth[root] != usize::MAX || adj[root].is_empty() {
                continue;
            }
            depth[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let parity = depth[x] % 2;
                let mut is_center = false;
                for &y in &adj[x] {
                    if depth[y] == usize::MAX {
                        depth[y] = depth[x] + 1;
                        parts[parity].push(Edge::new(x, y));
                        is_center = true;
                        queue.push_back(y);
                    }
                }
                if is_center {
                    part_centers[parity].push(x);
                }
            }
        }
        for (edges, cs) in parts.into_iter().zip(part_centers) {
            if !edges.is_empty() {
                star_forests.push(edges);
                centers.push(cs);
            }
        }
    }
    StarForestPartition { star_forests, centers }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Free,
    Center,
    Leaf(usize),
}

/// Vertex roles of one star forest, with leaf counts per center.
#[derive(Clone)]
struct StarState {
    role: Vec<Role>,
    leaves: Vec<usize>,
    edges: Vec<Edge>,
}

impl StarState {
    fn new(n: usize) -> Self {
        StarState { role: vec![Role::Free; n], leaves: vec![0; n], edges: Vec::new() }
    }

    fn attach(&mut self, c: usize, leaf: usize) {
        self.role[c] = Role::Center;
        self.role[leaf] = Role::Leaf(c);
        self.leaves[c] += 1;
    }

    /// Adds `e` if it extends a star or starts a new one. A single-edge
    /// star may be flipped so that either endpoint becomes the center.
    fn try_add(&mut self, e: Edge) -> bool {
        for (x, y) in [(e.u, e.v), (e.v, e.u)] {
            if self.role[y] != Role::Free {
                continue;
            }
            match self.role[x] {
                Role::Center | Role::Free => self.attach(x, y),
                Role::Leaf(c) if self.leaves[c] == 1 => {
                    self.leaves[c] = 0;
                    self.role[c] = Role::Free;
                    self.attach(x, c);
                    self.attach(x, y);
                }
                Role::Leaf(_) => continue,
            }
            self.edges.push(e);
            return true;
        }
        false
    }

    fn centers(&self) -> Vec<usize> {
        (0..self.role.len()).filter(|&v| self.role[v] == Role::Center && self.leaves[v] > 0).collect()
    }
}

/// Greedily empties star forests: the smallest one is dissolved when each of
/// its edges fits into some other star forest, until no part can be removed.
/// Never increases the number of parts.
pub fn compact_star_forests(sfp: &StarForestPartition, graph: &Graph) -> StarForestPartition {
    let n = graph.n();
    let mut parts: Vec<StarState> = sfp
        .star_forests
        .iter()
        .map(|edges| {
            let mut s = StarState::new(n);
            for &e in edges {
                let added = s.try_add(e);
                debug_assert!(added, "input part is a star forest");
            }
            s
        })
        .collect();
    let mut stuck = vec![false; parts.len()];
    while let Some(victim) = (0..parts.len()).filter(|&i| !stuck[i]).min_by_key(|&i| parts[i].edges.len()) {
        let mut trial: Vec<StarState> =
            parts.iter().enumerate().filter(|&(i, _)| i != victim).map(|(_, p)| p.clone()).collect();
        let fits = parts[victim].edges.iter().all(|&e| trial.iter_mut().any(|p| p.try_add(e)));
        if fits {
            parts = trial;
            stuck.remove(victim);
            // Other parts gained edges, so earlier failures may now succeed
            // or fail differently; only the victim's slot is gone.
            stuck.iter_mut().for_each(|s| *s = false);
        } else {
            stuck[victim] = true;
        }
    }
    StarForestPartition {
        centers: parts.iter().map(StarState::centers).collect(),
        star_forests: parts.into_iter().map(|p| p.edges).collect(),
    }
}

/// Star forests of a minimum forest partition, split by depth parity and then
/// compacted. At most `2 a(G)` parts.
pub fn star_forest_partition(graph: &Graph) -> StarForestPartition {
    compact_star_forests(&star_forests_from_forests(&crate::bounds::arboricity_partition(graph), graph), graph)
}

/// Identity spine, one page per star forest. Stars never cross themselves,
/// so every page is a union of crossing-free components.
pub fn union_embedding_from_star_forests(
    sfp: &StarForestPartition,
    graph: &Graph,
) -> Result<LinearEmbedding, ConstructError> {
    Ok(LinearEmbedding::from_pages(graph.clone(), SpineOrder::identity(graph.n()), &sfp.star_forests)?)
}

/// Center of a star given by its edges, if it is one.
pub fn star_center(edges: &[Edge]) -> Option<usize> {
    let first = edges.first()?;
    [first.u, first.v].into_iter().find(|&c| edges.iter().all(|e| e.has_endpoint(c)))
}

/// Identity spine, one page per star. The locality of a vertex is the number
/// of stars it belongs to.
pub fn local_embedding_from_stars(graph: &Graph, stars: &[Vec<Edge>]) -> Result<LinearEmbedding, ConstructError> {
    for (i, s) in stars.iter().enumerate() {
        if star_center(s).is_none() {
            return Err(ConstructError::NotAStar(i));
        }
    }
    Ok(LinearEmbedding::from_pages(graph.clone(), SpineOrder::identity(graph.n()), stars)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Each vertex is the center of the star to its neighbors that precede
    /// it in a degeneracy order. A vertex is a leaf of at most `d` stars, so
    /// the locality is at most `d + 1`.
    Degeneracy,
    /// Every vertex gets at least one outgoing edge (a spanning tree of each
    /// component oriented toward a vertex whose extra edge leaves it), so a
    /// vertex of degree `deg` lies in at most `deg` stars. Needs every
    /// component with edges to contain a cycle.
    OutDegreePositive,
}

/// Stars from orienting every edge toward a leaf: the star at `v` is the set
/// of edges oriented out of `v`. Empty stars are omitted.
pub fn orientation_stars(graph: &Graph, how: Orientation) -> Result<Vec<Vec<Edge>>, ConstructError> {
    let tail: Vec<usize> = match how {
        Orientation::Degeneracy => {
            let (order, _) = graph.degeneracy_order();
            let mut rank = vec![0; graph.n()];
            for (i, &v) in order.iter().enumerate() {
                rank[v] = i;
            }
            // A vertex is a leaf only toward neighbors removed after it.
            graph.edges().iter().map(|e| if rank[e.u] > rank[e.v] { e.u } else { e.v }).collect()
        }
        Orientation::OutDegreePositive => out_degree_positive(graph)?,
    };
    let mut stars = vec![Vec::new(); graph.n()];
    for (id, &t) in tail.iter().enumerate() {
        stars[t].push(graph.edge(id));
    }
    Ok(stars.into_iter().filter(|s| !s.is_empty()).collect())
}

fn out_degree_positive(graph: &Graph) -> Result<Vec<usize>, ConstructError> {
    let n = graph.n();
    let mut tail = vec![usize::MAX; graph.m()];
    let mut done = vec![false; n];
    let mut seen = vec![false; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut tree = vec![false; graph.m()];
    let mut tree_adj = vec![Vec::new(); n];
    for comp in graph.components() {
        if comp.len() == 1 {
            continue;
        }
        // Any non-tree edge closes a cycle; grow a BFS tree from one of its
        // endpoints, orient tree edges toward that root and the closing edge
        // away from it.
        let start = comp[0];
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in graph.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    let id = graph.edge_id(x, y).expect("adjacent");
                    parent_edge[y] = id;
                    tree[id] = true;
                    queue.push_back(y);
                }
            }
        }
        let closing = comp
            .iter()
            .flat_map(|&x| graph.neighbors(x).iter().map(move |&y| (x, y)))
            .map(|(x, y)| graph.edge_id(x, y).expect("adjacent"))
            .find(|&id| !tree[id])
            .ok_or(ConstructError::InvalidParameters(format!(
                "component of vertex {start} is a tree; some vertex must stay a leaf"
            )))?;
        let root = graph.edge(closing).u;
        // Re-root the tree at `root` by walking parent edges.
        for &v in &comp {
            if parent_edge[v] != usize::MAX {
                let e = graph.edge(parent_edge[v]);
                tree_adj[e.u].push((e.v, parent_edge[v]));
                tree_adj[e.v].push((e.u, parent_edge[v]));
            }
        }
        done[root] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &(y, id) in &tree_adj[x] {
                if !done[y] {
                    done[y] = true;
                    tail[id] = y;
                    stack.push(y);
                }
            }
        }
        tail[closing] = root;
    }
    for (id, t) in tail.iter_mut().enumerate() {
        if *t == usize::MAX {
            *t = graph.edge(id).u;
        }
    }
    Ok(tail)
}
