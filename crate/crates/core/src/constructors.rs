//! Explicit teaching maps for the balls of trees, interval graphs, cycles,
//! cacti, diameter-2 graphs with the edge-union property, and the
//! approximate diametral-pair map for arbitrary graphs.
//!
//! Every map is indexed like the ball family of the given [`BallSpace`].

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::analysis::{hyperbolicity, Delta};
use crate::cactus::{apex, gate, BlockKind, CactusStructure};
use crate::concept::{SignedSample, TeachingMap};
use crate::error::{Error, Result};
use crate::generators;
use crate::interval::IntervalRepresentation;
use crate::metric::{diametral_pair, interval_vertices, BallSpace};
use crate::vset::{Vertex, VertexSet};

fn pair(n: usize, u: Vertex, v: Vertex) -> VertexSet {
    VertexSet::from_iter(n, [u, v])
}

/// Positive diametral pair of every ball; a singleton ball gets itself.
fn diametral_map(space: &BallSpace) -> Result<TeachingMap> {
    let n = space.n();
    let fam = &space.family;
    (0..fam.len())
        .map(|c| {
            let (u, v) = diametral_pair(fam.members(c), &space.dist)?;
            Ok(SignedSample::positive(pair(n, u, v)))
        })
        .collect::<Result<_>>()
        .map(TeachingMap::new)
}

pub fn tree_nctm_plus(space: &BallSpace) -> Result<TeachingMap> {
    if !space.graph.is_tree() {
        return Err(Error::NotTree(format!(
            "{} vertices and {} edges",
            space.n(),
            space.graph.m()
        )));
    }
    diametral_map(space)
}

/// Radius-0 balls get their center; larger balls get the member whose
/// interval ends first and the member whose interval starts last. When those
/// coincide the ball is exactly the set of intervals containing that one, so
/// any second member separates it from the singleton.
pub fn interval_nctm_plus(space: &BallSpace, rep: &IntervalRepresentation) -> Result<TeachingMap> {
    rep.validate(&space.graph)?;
    let n = space.n();
    let fam = &space.family;
    let samples = (0..fam.len())
        .map(|c| {
            let (x, r) = fam.canonical(c);
            if r == 0 {
                return SignedSample::positive(VertexSet::singleton(n, x));
            }
            let m = fam.members(c);
            let u = m
                .iter()
                .min_by(|&a, &b| rep.end(a).total_cmp(&rep.end(b)))
                .expect("ball is non-empty");
            let v = m
                .iter()
                .max_by(|&a, &b| rep.start(a).total_cmp(&rep.start(b)))
                .expect("ball is non-empty");
            let v = if u == v {
                m.iter().find(|&w| w != u).unwrap_or(u)
            } else {
                v
            };
            SignedSample::positive(pair(n, u, v))
        })
        .collect();
    Ok(TeachingMap::new(samples))
}

/// Signed map on the cycle `0-1-...-(n-1)`: the arc `x-r..x+r` is taught by
/// its first vertex and the first vertex after it; the whole cycle by nothing.
pub fn cycle_nctm_on(space: &BallSpace) -> Result<TeachingMap> {
    let n = space.n();
    if n < 3 || space.graph != generators::cycle(n)? {
        return Err(Error::Unsupported(
            "cycle map expects the cycle 0-1-...-(n-1)".into(),
        ));
    }
    let fam = &space.family;
    let samples = (0..fam.len())
        .map(|c| {
            if fam.members(c).len() == n {
                return SignedSample::empty(n);
            }
            let (x, r) = fam.canonical(c);
            let (x, r) = (x as i64, r as i64);
            let m = n as i64;
            let first = (x - r).rem_euclid(m) as usize;
            let after = (x + r + 1).rem_euclid(m) as usize;
            SignedSample {
                pos: VertexSet::singleton(n, first),
                neg: VertexSet::singleton(n, after),
            }
        })
        .collect();
    Ok(TeachingMap::new(samples))
}

pub fn cycle_nctm(n: usize) -> Result<(BallSpace, TeachingMap)> {
    let space = BallSpace::new(generators::cycle(n)?)?;
    let tm = cycle_nctm_on(&space)?;
    Ok((space, tm))
}

/// Diametral pairs as positives, plus up to two negatives chosen on the
/// cycle through the center of a minimal representative.
pub fn cactus_nctm(space: &BallSpace) -> Result<TeachingMap> {
    let cactus = CactusStructure::new(&space.graph)?;
    let n = space.n();
    let d = &space.dist;
    let fam = &space.family;
    let mut gates: HashMap<usize, Vec<Vertex>> = HashMap::new();
    let mut samples = Vec::with_capacity(fam.len());
    for c in 0..fam.len() {
        let ball = fam.members(c);
        let (u, v) = diametral_pair(ball, d)?;
        let pos = pair(n, u, v);
        let (x, r) = fam.canonical(c);

        let top = apex(d, x, u, v)?;
        let r2 = r
            .checked_sub(d.get(x, top))
            .ok_or_else(|| Error::NotCactus(format!("apex {top} too far from {x}")))?;
        if space.ball(top, r2) != ball {
            return Err(Error::NotCactus(format!(
                "re-centering B_{r}({x}) at {top} changes the ball"
            )));
        }
        if !cactus.path_union(u, v).contains(x) {
            return Err(Error::NotCactus(format!(
                "center {x} of a minimal ball is off C({u},{v})"
            )));
        }

        let path = cactus.block_path(u, v);
        let holding: Vec<usize> = path
            .iter()
            .copied()
            .filter(|&b| cactus.blocks[b].members.contains(x))
            .collect();
        let cyc = match holding[..] {
            [b] if cactus.blocks[b].kind == BlockKind::Cycle => b,
            _ => {
                samples.push(SignedSample::positive(pos));
                continue;
            }
        };
        let cycle_members = &cactus.blocks[cyc].members;
        let gt = match gates.entry(cyc) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(
                (0..n)
                    .map(|z| gate(d, z, cycle_members))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let (ug, vg) = (gt[u], gt[v]);
        let mut blocked = interval_vertices(d, x, ug);
        blocked.union_with(&interval_vertices(d, x, vg));
        let zs: Vec<Vertex> = (0..n)
            .filter(|&z| d.get(x, z) == r + 1 && !blocked.contains(gt[z]))
            .collect();
        let on_side = |anchor: Vertex| {
            zs.iter()
                .copied()
                .filter(|&s| d.get(x, anchor) + d.get(anchor, s) == d.get(x, s))
                .max_by_key(|&s| (d.get(anchor, gt[s]), std::cmp::Reverse(s)))
        };
        let mut neg = VertexSet::empty(n);
        for s in [on_side(ug), on_side(vg)].into_iter().flatten() {
            debug_assert!(!ball.contains(s));
            neg.insert(s);
        }
        samples.push(SignedSample { pos, neg });
    }
    Ok(TeachingMap::new(samples))
}

/// The diametral-pair map, which is non-clashing up to Hausdorff distance
/// `2δ`.
pub fn hyperbolic_approx_nctm_plus(space: &BallSpace) -> Result<(TeachingMap, Delta)> {
    let delta = hyperbolicity(&space.dist);
    Ok((diametral_map(space)?, delta))
}

/// Checks diameter 2 and `B_1(x) ∪ B_1(y) = V` for every edge `xy`.
pub fn check_diam2_edge_union(space: &BallSpace) -> Result<()> {
    let diam = space.dist.diameter();
    if diam != 2 {
        return Err(Error::DiameterNotTwo(diam));
    }
    let n = space.n();
    for (x, y) in space.graph.edges() {
        let covered = space
            .graph
            .closed_neighborhood(x)
            .union(&space.graph.closed_neighborhood(y));
        if covered.len() != n {
            return Err(Error::EdgeUnionViolated(x, y));
        }
    }
    Ok(())
}

/// Signed size-2 map for diameter-2 graphs with the edge-union property.
pub fn diam2_nctm(space: &BallSpace) -> Result<TeachingMap> {
    check_diam2_edge_union(space)?;
    let n = space.n();
    let fam = &space.family;
    let d = &space.dist;
    let samples = (0..fam.len())
        .map(|c| {
            if fam.members(c).len() == n {
                return SignedSample::empty(n);
            }
            let (x, r) = fam.canonical(c);
            let witness = if r == 0 {
                space.graph.neighbors(x)[0]
            } else {
                (0..n)
                    .find(|&z| d.get(x, z) == 2)
                    .expect("proper ball of radius 1")
            };
            SignedSample {
                pos: VertexSet::singleton(n, x),
                neg: VertexSet::singleton(n, witness),
            }
        })
        .collect();
    Ok(TeachingMap::new(samples))
}
