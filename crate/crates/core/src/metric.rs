//! Shortest-path metric of a graph: distances, balls, intervals, diametral
//! pairs, and the deduplicated family of all balls.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::{Vertex, VertexSet};

pub(crate) const UNREACHABLE: u32 = u32::MAX;

/// BFS hop counts from `src`; unreachable vertices get `UNREACHABLE`.
pub(crate) fn bfs_row(g: &Graph, src: Vertex) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.n()];
    dist[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        let du = dist[u];
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = du + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs hop distances of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn eccentricity(&self, u: Vertex) -> u32 {
        self.row(u).iter().copied().max().unwrap_or(0)
    }

    pub fn diameter(&self) -> u32 {
        (0..self.n).map(|u| self.eccentricity(u)).max().unwrap_or(0)
    }

    /// Diameter of a subset, measured in the whole graph.
    pub fn set_diameter(&self, members: &VertexSet) -> u32 {
        let v = members.to_vec();
        let mut best = 0;
        for (i, &a) in v.iter().enumerate() {
            for &b in &v[i + 1..] {
                best = best.max(self.get(a, b));
            }
        }
        best
    }
}

pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix> {
    g.check_connected()?;
    let n = g.n();
    let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|s| bfs_row(g, s)).collect();
    let mut dist = Vec::with_capacity(n * n);
    for r in rows {
        dist.extend(r);
    }
    Ok(DistanceMatrix { n, dist })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub center: Vertex,
    pub radius: u32,
    pub members: VertexSet,
}

fn ball_from_row(row: &[u32], r: u32) -> VertexSet {
    VertexSet::from_iter(
        row.len(),
        row.iter()
            .enumerate()
            .filter(|&(_, &d)| d <= r)
            .map(|(v, _)| v),
    )
}

pub fn ball(d: &DistanceMatrix, x: Vertex, r: u32) -> Result<Ball> {
    if x >= d.n() {
        return Err(Error::VertexOutOfRange {
            vertex: x,
            n: d.n(),
        });
    }
    Ok(Ball {
        center: x,
        radius: r,
        members: ball_from_row(d.row(x), r),
    })
}

/// `{ w : d(u,w) + d(w,v) = d(u,v) }`.
pub fn interval_vertices(d: &DistanceMatrix, u: Vertex, v: Vertex) -> VertexSet {
    let duv = d.get(u, v);
    VertexSet::from_iter(
        d.n(),
        (0..d.n()).filter(|&w| d.get(u, w) + d.get(w, v) == duv),
    )
}

/// Lexicographically least `(u, v)`, `u <= v`, realizing the diameter of
/// `members`. A singleton yields `(x, x)`.
pub fn diametral_pair(members: &VertexSet, d: &DistanceMatrix) -> Result<(Vertex, Vertex)> {
    let v = members.to_vec();
    let Some(&first) = v.first() else {
        return Err(Error::InvalidSize("diametral pair of an empty set".into()));
    };
    let mut best = (0, first, first);
    for (i, &a) in v.iter().enumerate() {
        for &b in &v[i + 1..] {
            let dab = d.get(a, b);
            if dab > best.0 {
                best = (dab, a, b);
            }
        }
    }
    Ok((best.1, best.2))
}

/// Hausdorff distance between two vertex sets under the graph metric.
pub fn set_hausdorff(a: &VertexSet, b: &VertexSet, d: &DistanceMatrix) -> u32 {
    fn directed(a: &VertexSet, b: &VertexSet, d: &DistanceMatrix) -> u32 {
        a.iter()
            .map(|x| b.iter().map(|y| d.get(x, y)).min().unwrap_or(UNREACHABLE))
            .max()
            .unwrap_or(0)
    }
    directed(a, b, d).max(directed(b, a, d))
}

pub fn hausdorff_distance(b1: &Ball, b2: &Ball, d: &DistanceMatrix) -> u32 {
    set_hausdorff(&b1.members, &b2.members, d)
}

/// All distinct balls of a graph, with every `(center, radius)` that realizes
/// each one. Radii run over `0..=ecc(center)`.
#[derive(Clone, Debug)]
pub struct BallFamily {
    n: usize,
    classes: Vec<VertexSet>,
    reps: Vec<Vec<(Vertex, u32)>>,
    /// `by_center[x][r]` is the class of `B_r(x)` for `r <= ecc(x)`.
    by_center: Vec<Vec<usize>>,
    index: HashMap<VertexSet, usize>,
}

impl BallFamily {
    fn from_rows(rows: &[Vec<u32>]) -> Self {
        let n = rows.len();
        let mut groups: HashMap<VertexSet, Vec<(Vertex, u32)>> = HashMap::new();
        for (x, row) in rows.iter().enumerate() {
            let ecc = row
                .iter()
                .copied()
                .filter(|&d| d != UNREACHABLE)
                .max()
                .unwrap_or(0);
            for r in 0..=ecc {
                groups
                    .entry(ball_from_row(row, r))
                    .or_default()
                    .push((x, r));
            }
        }
        let mut entries: Vec<_> = groups.into_iter().collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut classes = Vec::with_capacity(entries.len());
        let mut reps = Vec::with_capacity(entries.len());
        let mut by_center: Vec<Vec<usize>> = rows.iter().map(|_| Vec::new()).collect();
        let mut index = HashMap::with_capacity(entries.len());
        for (i, (set, mut rs)) in entries.into_iter().enumerate() {
            rs.sort_by_key(|&(x, r)| (r, x));
            for &(x, r) in &rs {
                let slot = &mut by_center[x];
                if slot.len() <= r as usize {
                    slot.resize(r as usize + 1, usize::MAX);
                }
                slot[r as usize] = i;
            }
            index.insert(set.clone(), i);
            classes.push(set);
            reps.push(rs);
        }
        BallFamily {
            n,
            classes,
            reps,
            by_center,
            index,
        }
    }

    pub fn enumerate(d: &DistanceMatrix) -> Self {
        let rows: Vec<Vec<u32>> = (0..d.n()).map(|x| d.row(x).to_vec()).collect();
        Self::from_rows(&rows)
    }

    /// Balls taken inside each connected component; accepts disconnected graphs.
    pub fn enumerate_by_component(g: &Graph) -> Self {
        let rows: Vec<Vec<u32>> = (0..g.n()).map(|x| bfs_row(g, x)).collect();
        Self::from_rows(&rows)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn members(&self, class: usize) -> &VertexSet {
        &self.classes[class]
    }

    /// Every `(center, radius)` of the class, sorted by radius then center.
    pub fn reps(&self, class: usize) -> &[(Vertex, u32)] {
        &self.reps[class]
    }

    /// Minimum radius, then minimum center.
    pub fn canonical(&self, class: usize) -> (Vertex, u32) {
        self.reps[class][0]
    }

    /// Class of `B_r(x)`; radii beyond the eccentricity map to the largest ball.
    pub fn class_of(&self, x: Vertex, r: u32) -> usize {
        let row = &self.by_center[x];
        row[(r as usize).min(row.len() - 1)]
    }

    pub fn index_of(&self, set: &VertexSet) -> Option<usize> {
        self.index.get(set).copied()
    }
}

pub fn enumerate_balls(d: &DistanceMatrix) -> BallFamily {
    BallFamily::enumerate(d)
}

/// A connected graph together with its metric and ball family.
#[derive(Clone, Debug)]
pub struct BallSpace {
    pub graph: Graph,
    pub dist: DistanceMatrix,
    pub family: BallFamily,
}

impl BallSpace {
    pub fn new(graph: Graph) -> Result<Self> {
        let dist = all_pairs_distances(&graph)?;
        let family = BallFamily::enumerate(&dist);
        Ok(BallSpace {
            graph,
            dist,
            family,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn ball(&self, x: Vertex, r: u32) -> &VertexSet {
        self.family.members(self.family.class_of(x, r))
    }
}
