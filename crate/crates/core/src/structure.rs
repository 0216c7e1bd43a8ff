//! False twins and vertex covers.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::{Vertex, VertexSet};

/// Groups vertices by open neighborhood. Classes are sorted and ordered by
/// smallest member.
pub fn false_twin_classes(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut by_nb: BTreeMap<&[Vertex], Vec<Vertex>> = BTreeMap::new();
    for v in 0..g.n() {
        by_nb.entry(g.neighbors(v)).or_default().push(v);
    }
    let mut classes: Vec<Vec<Vertex>> = by_nb.into_values().collect();
    classes.sort_by_key(|c| c[0]);
    classes
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverMode {
    Exact,
    Approx2,
}

/// Largest cover size the exact branching will look for.
pub const EXACT_COVER_CAP: usize = 20;

pub fn check_cover(g: &Graph, cover: &VertexSet) -> Result<()> {
    match g
        .edges()
        .into_iter()
        .find(|&(u, v)| !cover.contains(u) && !cover.contains(v))
    {
        Some((u, v)) => Err(Error::NotACover(u, v)),
        None => Ok(()),
    }
}

pub fn vertex_cover(g: &Graph, mode: CoverMode) -> Result<VertexSet> {
    match mode {
        CoverMode::Approx2 => Ok(approx_cover(g)),
        CoverMode::Exact => exact_cover(g, EXACT_COVER_CAP),
    }
}

/// Endpoints of a greedy maximal matching, then redundant vertices dropped
/// (highest id first).
fn approx_cover(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut cover = VertexSet::empty(n);
    for (u, v) in g.edges() {
        if !cover.contains(u) && !cover.contains(v) {
            cover.insert(u);
            cover.insert(v);
        }
    }
    for v in (0..n).rev() {
        if cover.contains(v) && g.neighbors(v).iter().all(|&w| cover.contains(w)) {
            cover.remove(v);
        }
    }
    cover
}

fn exact_cover(g: &Graph, cap: usize) -> Result<VertexSet> {
    let n = g.n();
    for k in 0..=cap {
        let mut taken = vec![false; n];
        if branch(g, &mut taken, k) {
            return Ok(VertexSet::from_iter(n, (0..n).filter(|&v| taken[v])));
        }
    }
    Err(Error::CoverBudgetExceeded(cap))
}

/// Covers the edges not yet covered by `taken` using at most `k` more
/// vertices. Branches on a max-degree vertex: take it, or take its neighbors.
fn branch(g: &Graph, taken: &mut [bool], k: usize) -> bool {
    let live = |v: Vertex, taken: &[bool]| g.neighbors(v).iter().filter(|&&w| !taken[w]).count();
    let pick = (0..g.n())
        .filter(|&v| !taken[v])
        .map(|v| (live(v, taken), v))
        .filter(|&(d, _)| d > 0)
        .max_by_key(|&(d, v)| (d, std::cmp::Reverse(v)));
    let Some((deg, v)) = pick else {
        return true;
    };
    if k == 0 || matching_bound(g, taken) > k {
        return false;
    }
    taken[v] = true;
    if branch(g, taken, k - 1) {
        return true;
    }
    taken[v] = false;
    if deg <= k {
        let nb: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !taken[w])
            .collect();
        for &w in &nb {
            taken[w] = true;
        }
        if branch(g, taken, k - deg) {
            return true;
        }
        for &w in &nb {
            taken[w] = false;
        }
    }
    false
}

/// Size of a greedy matching on the uncovered edges, a lower bound on the
/// vertices still needed.
fn matching_bound(g: &Graph, taken: &[bool]) -> usize {
    let mut used = vec![false; g.n()];
    let mut size = 0;
    for (u, v) in g.edges() {
        if !taken[u] && !taken[v] && !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            size += 1;
        }
    }
    size
}
