//! Deterministic instance generators. Random ones take a seed and always
//! produce connected graphs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interval::IntervalRepresentation;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn need(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidSize(what.to_string()))
    }
}

pub fn path(n: usize) -> Result<Graph> {
    need(n >= 1, "path needs n >= 1")?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    need(n >= 3, "cycle needs n >= 3")?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn edgeless(n: usize) -> Result<Graph> {
    need(n >= 1, "edgeless graph needs n >= 1")?;
    Ok(Graph::edgeless(n))
}

/// `K_{a,b}`; the first `a` ids form one side.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    need(a >= 1 && b >= 1, "complete bipartite needs a, b >= 1")?;
    let edges: Vec<_> = (0..a)
        .flat_map(|i| (a..a + b).map(move |j| (i, j)))
        .collect();
    Graph::from_edges(a + b, &edges)
}

/// `K_{2n}` minus the perfect matching `{i, i + n}`.
pub fn octahedron(n: usize) -> Result<Graph> {
    need(n >= 2, "octahedron needs n >= 2")?;
    let m = 2 * n;
    let edges: Vec<_> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .filter(|&(i, j)| j != i + n)
        .collect();
    Graph::from_edges(m, &edges)
}

/// Vertex `i` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    need(n >= 1, "tree needs n >= 1")?;
    let mut r = rng(seed);
    let edges: Vec<_> = (1..n).map(|i| (r.gen_range(0..i), i)).collect();
    Graph::from_edges(n, &edges)
}

/// Grows a cactus by hanging pendant edges and cycles of length 3..=8 off
/// random existing vertices.
pub fn random_cactus(n: usize, seed: u64) -> Result<Graph> {
    need(n >= 1, "cactus needs n >= 1")?;
    let mut r = rng(seed);
    let mut edges = Vec::new();
    let mut count = 1;
    while count < n {
        let at = r.gen_range(0..count);
        let room = n - count;
        if room >= 2 && r.gen_bool(0.6) {
            let len = r.gen_range(3..=8.min(room + 1));
            let mut prev = at;
            for _ in 1..len {
                edges.push((prev, count));
                prev = count;
                count += 1;
            }
            edges.push((prev, at));
        } else {
            edges.push((at, count));
            count += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// A connected interval graph with its model. Intervals are laid out on an
/// integer grid and then perturbed so that all endpoints are distinct while
/// intervals that touch on the grid still intersect.
pub fn random_interval(n: usize, seed: u64) -> Result<(Graph, IntervalRepresentation)> {
    need(n >= 1, "interval graph needs n >= 1")?;
    let mut r = rng(seed);
    let mut grid = Vec::with_capacity(n);
    let mut reach = 0u64;
    for i in 0..n {
        let a = if i == 0 { 0 } else { r.gen_range(0..=reach) };
        let b = a + r.gen_range(0..=4);
        reach = reach.max(b);
        grid.push((a, b));
    }
    let scale = 4 * n as u64;
    let intervals = grid
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let i = i as u64;
            (
                (a * scale + i) as f64,
                (b * scale + 2 * n as u64 + i) as f64,
            )
        })
        .collect();
    let rep = IntervalRepresentation::new(intervals);
    let g = rep.intersection_graph();
    Ok((g, rep))
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    need(n >= 1, "graph needs n >= 1")?;
    need(
        (0.0..=1.0).contains(&p),
        "edge probability must lie in [0, 1]",
    )?;
    let mut r = rng(seed);
    let mut edges: Vec<_> = (1..n).map(|i| (r.gen_range(0..i), i)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges_dedup(n, &edges))
}
