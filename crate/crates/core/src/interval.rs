//! Interval models of interval graphs.
//!
//! File format: one line `vertex s e` per vertex, `#` comments allowed.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{content_lines, Graph};
use crate::vset::Vertex;

#[derive(Clone, Debug, PartialEq)]
pub struct IntervalRepresentation {
    /// `(start, end)` per vertex.
    pub intervals: Vec<(f64, f64)>,
}

impl IntervalRepresentation {
    pub fn new(intervals: Vec<(f64, f64)>) -> Self {
        IntervalRepresentation { intervals }
    }

    pub fn start(&self, v: Vertex) -> f64 {
        self.intervals[v].0
    }

    pub fn end(&self, v: Vertex) -> f64 {
        self.intervals[v].1
    }

    /// The graph whose edges are the intersecting pairs.
    pub fn intersection_graph(&self) -> Graph {
        let n = self.intervals.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = (self.intervals[u], self.intervals[v]);
                if a.0 <= b.1 && b.0 <= a.1 {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges_dedup(n, &edges)
    }

    /// Checks endpoint order, distinctness of all `2n` endpoints, and that the
    /// intersection graph is `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.intervals.len() != g.n() {
            return Err(Error::BadInterval(format!(
                "{} intervals for {} vertices",
                self.intervals.len(),
                g.n()
            )));
        }
        let mut ends = Vec::with_capacity(2 * g.n());
        for (v, &(s, e)) in self.intervals.iter().enumerate() {
            if !(s.is_finite() && e.is_finite()) || s > e {
                return Err(Error::BadInterval(format!("vertex {v}: [{s}, {e}]")));
            }
            ends.push(s);
            ends.push(e);
        }
        ends.sort_by(f64::total_cmp);
        if let Some(w) = ends.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::BadInterval(format!("endpoint {} used twice", w[0])));
        }
        let h = self.intersection_graph();
        if h != *g {
            let diff = (0..g.n())
                .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
                .find(|&(u, v)| g.has_edge(u, v) != h.has_edge(u, v))
                .unwrap_or((0, 0));
            return Err(Error::BadInterval(format!(
                "pair {}-{} disagrees with the graph",
                diff.0, diff.1
            )));
        }
        Ok(())
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut slots: Vec<Option<(f64, f64)>> = vec![None; n];
        for (ln, line) in content_lines(text) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: String| Error::Parse { line: ln, msg };
            let [v, s, e] = parts[..] else {
                return Err(bad(format!("expected `vertex s e`, got `{line}`")));
            };
            let v: usize = v.parse().map_err(|_| bad(format!("bad vertex `{v}`")))?;
            let s: f64 = s.parse().map_err(|_| bad(format!("bad start `{s}`")))?;
            let e: f64 = e.parse().map_err(|_| bad(format!("bad end `{e}`")))?;
            if v >= n {
                return Err(bad(format!("vertex {v} out of range (n = {n})")));
            }
            if slots[v].replace((s, e)).is_some() {
                return Err(bad(format!("vertex {v} listed twice")));
            }
        }
        let intervals = slots
            .into_iter()
            .enumerate()
            .map(|(v, x)| {
                x.ok_or_else(|| Error::BadInterval(format!("vertex {v} has no interval")))
            })
            .collect::<Result<_>>()?;
        Ok(IntervalRepresentation { intervals })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, (a, b)) in self.intervals.iter().enumerate() {
            let _ = writeln!(s, "{v} {a} {b}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_and_round_trips() {
        let rep = IntervalRepresentation::new(vec![(0.0, 2.0), (1.0, 3.0), (2.5, 4.0)]);
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        rep.validate(&g).unwrap();
        let back = IntervalRepresentation::parse(&rep.to_text(), 3).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn rejects_mismatch_and_shared_ends() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let apart = IntervalRepresentation::new(vec![(0.0, 1.0), (2.0, 3.0)]);
        assert!(matches!(apart.validate(&g), Err(Error::BadInterval(_))));
        let shared = IntervalRepresentation::new(vec![(0.0, 1.0), (1.0, 3.0)]);
        assert!(matches!(shared.validate(&g), Err(Error::BadInterval(_))));
        assert!(IntervalRepresentation::parse("0 0 1\n", 2).is_err());
    }
}
