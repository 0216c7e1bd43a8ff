//! Simple undirected graphs and the edge-list text format.
//!
//! The format is a header line `n m` followed by `m` lines `u v` with 0-based
//! ids. Anything after a `#` is ignored, as are blank lines.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::vset::{Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn edgeless(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting loops, duplicate edges and out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, nb) in adj.iter_mut().enumerate() {
            nb.sort_unstable();
            if let Some(w) = nb.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj })
    }

    /// Builds a graph from an edge list that may repeat edges.
    pub(crate) fn from_edges_dedup(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            debug_assert!(u != v);
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in adj.iter_mut() {
            nb.sort_unstable();
            nb.dedup();
        }
        Graph { adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn open_neighborhood(&self, v: Vertex) -> VertexSet {
        VertexSet::from_iter(self.n(), self.adj[v].iter().copied())
    }

    pub fn closed_neighborhood(&self, v: Vertex) -> VertexSet {
        let mut s = self.open_neighborhood(v);
        s.insert(v);
        s
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        q.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// Errors with a pair of mutually unreachable vertices when disconnected.
    pub fn check_connected(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::EmptyGraph);
        }
        let comps = self.components();
        if comps.len() > 1 {
            return Err(Error::Disconnected(comps[0][0], comps[1][0]));
        }
        Ok(())
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.m() + 1 == self.n()
    }

    /// Deletes `v`; vertices above it shift down by one.
    pub fn remove_vertex(&self, v: Vertex) -> Graph {
        let relabel = |w: Vertex| if w > v { w - 1 } else { w };
        let adj = self
            .adj
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v)
            .map(|(_, nb)| {
                nb.iter()
                    .filter(|&&w| w != v)
                    .map(|&w| relabel(w))
                    .collect()
            })
            .collect();
        Graph { adj }
    }

    /// Applies `perm` (old id -> new id).
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::from_edges_dedup(self.n(), &edges)
    }

    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = content_lines(text);
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing header `n m`".into(),
        })?;
        let nums = parse_usizes(hl, header)?;
        let [n, m] = nums[..] else {
            return Err(Error::Parse {
                line: hl,
                msg: format!("header must be `n m`, got `{header}`"),
            });
        };
        let mut edges = Vec::with_capacity(m);
        for (ln, line) in lines {
            let nums = parse_usizes(ln, line)?;
            let [u, v] = nums[..] else {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("edge line must be `u v`, got `{line}`"),
                });
            };
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("vertex out of range in `{line}` (n = {n})"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// Yields `(1-based line number, trimmed content)` with comments stripped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn parse_usizes(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("expected a non-negative integer, got `{t}`"),
            })
        })
        .collect()
}
