//! Partition of the edges into the fewest forests (matroid union with
//! breadth-first augmenting paths).

use std::collections::VecDeque;

use serde::Serialize;

use super::density::{ceil, max_density, DensityObjective};
use super::BoundsError;
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForestPartition {
    pub forests: Vec<Vec<Edge>>,
}

impl ForestPartition {
    pub fn arboricity(&self) -> usize {
        self.forests.len()
    }
}

/// Whether the edges form a forest on `n` vertices.
pub fn is_forest(n: usize, edges: &[Edge]) -> bool {
    let mut dsu = Dsu::new(n);
    edges.iter().all(|e| dsu.union(e.u, e.v))
}

/// `ceil(max |E(H)| / (|V(H)| - 1))`, the arboricity by Nash-Williams' formula.
pub fn nash_williams_arboricity(graph: &Graph) -> Result<usize, BoundsError> {
    if graph.m() == 0 {
        return Ok(0);
    }
    Ok(ceil(max_density(graph, DensityObjective::FOREST)?.value))
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.parent[a.max(b)] = a.min(b);
        true
    }
}

struct Forest {
    /// (neighbor, edge id) per vertex.
    adj: Vec<Vec<(usize, usize)>>,
    /// Components only ever merge: an exchange along an augmenting path
    /// replaces an edge by one spanned by the same forest.
    dsu: Dsu,
}

impl Forest {
    fn new(n: usize) -> Self {
        Forest { adj: vec![Vec::new(); n], dsu: Dsu::new(n) }
    }

    fn insert(&mut self, e: Edge, id: usize) {
        self.adj[e.u].push((e.v, id));
        self.adj[e.v].push((e.u, id));
    }

    fn remove(&mut self, e: Edge, id: usize) {
        self.adj[e.u].retain(|&(_, i)| i != id);
        self.adj[e.v].retain(|&(_, i)| i != id);
    }

    /// Edge ids on the tree path between two vertices of one component.
    fn path(&self, from: usize, to: usize, via: &mut [Option<(usize, usize)>], touched: &mut Vec<usize>) -> Vec<usize> {
        let mut stack = vec![from];
        via[from] = Some((from, usize::MAX));
        touched.push(from);
        while let Some(x) = stack.pop() {
            if x == to {
                break;
            }
            for &(y, id) in &self.adj[x] {
                if via[y].is_none() {
                    via[y] = Some((x, id));
                    touched.push(y);
                    stack.push(y);
                }
            }
        }
        let mut out = Vec::new();
        let mut x = to;
        while x != from {
            let (p, id) = via[x].expect("endpoints share a tree");
            out.push(id);
            x = p;
        }
        for &t in touched.iter() {
            via[t] = None;
        }
        touched.clear();
        out
    }
}

/// Partitions the edges into `arboricity` forests. Edges are inserted in
/// order of their larger endpoint; a new forest is opened only when no
/// augmenting path exists, which by the matroid partition theorem happens
/// only when the current count is below the arboricity.
pub fn arboricity_partition(graph: &Graph) -> ForestPartition {
    let n = graph.n();
    let m = graph.m();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| {
        let e = graph.edge(i);
        (e.v, e.u)
    });

    let mut forests: Vec<Forest> = Vec::new();
    let mut home: Vec<Option<usize>> = vec![None; m];
    let mut via = vec![None; n];
    let mut touched = Vec::new();
    let mut seen = vec![usize::MAX; m];
    let mut pred: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX); m];

    for (round, &start) in order.iter().enumerate() {
        seen[start] = round;
        let mut queue = VecDeque::from([start]);
        let mut done = None;
        'search: while let Some(g) = queue.pop_front() {
            let e = graph.edge(g);
            for (f, forest) in forests.iter_mut().enumerate() {
                if home[g] == Some(f) {
                    continue;
                }
                if forest.dsu.find(e.u) != forest.dsu.find(e.v) {
                    done = Some((g, f));
                    break 'search;
                }
                for h in forest.path(e.u, e.v, &mut via, &mut touched) {
                    if seen[h] != round {
                        seen[h] = round;
                        pred[h] = (g, f);
                        queue.push_back(h);
                    }
                }
            }
        }
        let (last, target) = done.unwrap_or_else(|| {
            forests.push(Forest::new(n));
            (start, forests.len() - 1)
        });
        let joined = graph.edge(last);
        forests[target].dsu.union(joined.u, joined.v);
        let (mut cur, mut dest) = (last, target);
        loop {
            let e = graph.edge(cur);
            if let Some(old) = home[cur] {
                forests[old].remove(e, cur);
            }
            forests[dest].insert(e, cur);
            home[cur] = Some(dest);
            if cur == start {
                break;
            }
            (cur, dest) = pred[cur];
        }
    }

    let mut out = vec![Vec::new(); forests.len()];
    for (id, f) in home.iter().enumerate() {
        out[f.expect("every edge placed")].push(graph.edge(id));
    }
    ForestPartition { forests: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_complete_bipartite, gen_path, gen_stacked_triangulation, random_graph};

    fn check(g: &Graph) {
        let p = arboricity_partition(g);
        let total: usize = p.forests.iter().map(Vec::len).sum();
        assert_eq!(total, g.m());
        for f in &p.forests {
            assert!(!f.is_empty());
            assert!(is_forest(g.n(), f));
        }
        assert_eq!(p.arboricity(), nash_williams_arboricity(g).unwrap());
    }

    #[test]
    fn known_arboricities() {
        assert_eq!(arboricity_partition(&gen_path(5)).arboricity(), 1);
        assert_eq!(arboricity_partition(&gen_complete(4)).arboricity(), 2);
        assert_eq!(arboricity_partition(&gen_complete(8)).arboricity(), 4);
        assert_eq!(arboricity_partition(&gen_complete_bipartite(4, 4)).arboricity(), 3);
        assert_eq!(arboricity_partition(&Graph::empty(3)).arboricity(), 0);
    }

    #[test]
    fn matches_nash_williams() {
        for n in 2..9 {
            check(&gen_complete(n));
        }
        for seed in 0..40 {
            check(&random_graph(6 + (seed % 12) as usize, 1 + seed % 5, 6, seed));
        }
        for level in 0..4 {
            check(&gen_stacked_triangulation(level).unwrap());
        }
    }
}
