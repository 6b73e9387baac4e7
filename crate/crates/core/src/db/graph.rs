use super::Elem;
use std::collections::VecDeque;

/// A simple undirected graph on `[n]` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<Elem>>,
}

impl SimpleGraph {
    pub(crate) fn from_adjacency(adj: Vec<Vec<Elem>>) -> Self {
        SimpleGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: Elem) -> &[Elem] {
        &self.adj[v as usize - 1]
    }

    pub fn degree(&self, v: Elem) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: Elem, b: Elem) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for (i, ns) in self.adj.iter().enumerate() {
            let a = i as Elem + 1;
            out.extend(ns.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest element.
    pub fn components(&self) -> Vec<Vec<Elem>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start as Elem + 1];
            let mut queue = VecDeque::from([start as Elem + 1]);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if !seen[w as usize - 1] {
                        seen[w as usize - 1] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.adj.len();
        let mut side = vec![u8::MAX; n];
        for start in 0..n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    let w = w as usize - 1;
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: Elem) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        dist[source as usize - 1] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v as usize - 1].unwrap();
            for &w in self.neighbors(v) {
                if dist[w as usize - 1].is_none() {
                    dist[w as usize - 1] = Some(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

#[cfg(test)]
mod tests {
    use crate::db::Database;

    #[test]
    fn components_and_bipartiteness() {
        let c6 = Database::graph(6, 4, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]).unwrap();
        let g = c6.gaifman_graph();
        assert_eq!(g.components(), vec![vec![1, 2, 3, 4, 5, 6]]);
        assert!(g.is_bipartite());
        assert_eq!(g.distances_from(1)[3], Some(3));

        let two = Database::graph(6, 4, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        let g = two.gaifman_graph();
        assert_eq!(g.components().len(), 2);
        assert!(!g.is_bipartite());
        assert_eq!(g.distances_from(1)[4], None);
    }
}
