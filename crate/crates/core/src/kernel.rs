//! False-twin kernelization parameterized by a vertex cover.
//!
//! With a cover `X`, the rest `I = V ∖ X` is independent. Whenever more than
//! `2^|X| + 1` vertices of `I` are pairwise false twins, one of them (the
//! largest id) is deleted.

use crate::concept::balls_as_concept_class;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::BallFamily;
use crate::solver::{nctd_exact, SolveResult};
use crate::structure::{check_cover, false_twin_classes, vertex_cover, CoverMode};
use crate::vset::{Vertex, VertexSet};

/// Largest twin class allowed in `I`, or `None` when it exceeds `usize`.
pub fn twin_cap(cover_size: usize) -> Option<usize> {
    1usize.checked_shl(cover_size as u32)?.checked_add(1)
}

/// `2^x (2^x + 1) + x`.
pub fn kernel_bound(cover_size: usize) -> Option<usize> {
    let p = 1usize.checked_shl(cover_size as u32)?;
    p.checked_mul(p.checked_add(1)?)?.checked_add(cover_size)
}

/// One application of the rule. Returns the reduced graph (ids above the
/// deleted vertex shift down) and the deleted vertex.
pub fn rr1_step(g: &Graph, cover: &VertexSet) -> Result<Option<(Graph, Vertex)>> {
    Ok(rr1_find(g, cover)?.map(|(v, _)| (g.remove_vertex(v), v)))
}

/// The vertex the rule would delete and the twin class it came from.
fn rr1_find(g: &Graph, cover: &VertexSet) -> Result<Option<(Vertex, Vec<Vertex>)>> {
    check_cover(g, cover)?;
    let Some(cap) = twin_cap(cover.len()) else {
        return Ok(None);
    };
    for class in false_twin_classes(g) {
        let free: Vec<Vertex> = class.into_iter().filter(|&v| !cover.contains(v)).collect();
        if free.len() > cap {
            let v = *free.last().expect("non-empty");
            return Ok(Some((v, free)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deletion {
    /// Original id of the deleted vertex.
    pub vertex: Vertex,
    /// Original ids of its twin class at deletion time.
    pub twins: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelTrace {
    /// Cover used, in original ids.
    pub cover: VertexSet,
    pub deletions: Vec<Deletion>,
    pub kernel: Graph,
    /// Original id to kernel id, `None` if deleted.
    pub vertex_map: Vec<Option<Vertex>>,
}

impl KernelTrace {
    pub fn kernel_cover(&self) -> VertexSet {
        VertexSet::from_iter(
            self.kernel.n(),
            self.cover.iter().filter_map(|v| self.vertex_map[v]),
        )
    }

    pub fn within_bound(&self) -> bool {
        kernel_bound(self.cover.len()).is_none_or(|b| self.kernel.n() <= b)
    }
}

pub fn kernelize(g: &Graph, mode: CoverMode) -> Result<KernelTrace> {
    let cover = vertex_cover(g, mode)?;
    kernelize_with(g, &cover)
}

/// Applies the rule exhaustively with a given cover.
pub fn kernelize_with(g: &Graph, cover: &VertexSet) -> Result<KernelTrace> {
    let mut cur = g.clone();
    let mut cur_cover = cover.clone();
    // current id -> original id
    let mut orig: Vec<Vertex> = (0..g.n()).collect();
    let mut deletions = Vec::new();
    while let Some((v, twins)) = rr1_find(&cur, &cur_cover)? {
        deletions.push(Deletion {
            vertex: orig[v],
            twins: twins.iter().map(|&t| orig[t]).collect(),
        });
        cur = cur.remove_vertex(v);
        orig.remove(v);
        cur_cover = VertexSet::from_iter(
            cur.n(),
            cur_cover.iter().map(|w| if w > v { w - 1 } else { w }),
        );
    }
    let mut vertex_map = vec![None; g.n()];
    for (new, &old) in orig.iter().enumerate() {
        vertex_map[old] = Some(new);
    }
    Ok(KernelTrace {
        cover: cover.clone(),
        deletions,
        kernel: cur,
        vertex_map,
    })
}

/// The balls of `g`, taken per component when `g` is disconnected.
pub fn ball_family(g: &Graph) -> BallFamily {
    BallFamily::enumerate_by_component(g)
}

/// Kernelizes, then solves NCTD⁺ on the kernel. Signed mode is refused: the
/// rule is only known to be safe for positive maps.
pub fn solve_via_kernel(
    g: &Graph,
    positive_only: bool,
    k_max: usize,
    budget: u64,
    mode: CoverMode,
) -> Result<(KernelTrace, SolveResult)> {
    if !positive_only {
        return Err(Error::Unsupported(
            "kernelization is only safe for positive-only maps".into(),
        ));
    }
    let trace = kernelize(g, mode)?;
    let cc = balls_as_concept_class(&ball_family(&trace.kernel));
    let res = nctd_exact(&cc, true, k_max, budget)?;
    Ok((trace, res))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_bipartite, cycle, path};

    #[test]
    fn single_steps() {
        let star = complete_bipartite(1, 7).unwrap();
        let x = VertexSet::singleton(8, 0);
        let (h, v) = rr1_step(&star, &x).unwrap().unwrap();
        assert_eq!((h.n(), v), (7, 7));
        let p3 = path(3).unwrap();
        assert_eq!(rr1_step(&p3, &VertexSet::singleton(3, 1)).unwrap(), None);
        let c6 = cycle(6).unwrap();
        assert_eq!(
            rr1_step(&c6, &VertexSet::from_iter(6, [0, 2, 4])).unwrap(),
            None
        );
        assert_eq!(
            rr1_step(&c6, &VertexSet::from_iter(6, [0, 2])),
            Err(Error::NotACover(3, 4))
        );
    }

    #[test]
    fn exhaustive_kernels() {
        let t = kernelize(&complete_bipartite(1, 7).unwrap(), CoverMode::Approx2).unwrap();
        assert_eq!(t.cover.to_vec(), vec![0]);
        assert_eq!(t.kernel, complete_bipartite(1, 3).unwrap());
        assert_eq!(t.deletions.len(), 4);
        assert_eq!(t.vertex_map[7], None);
        assert_eq!(t.vertex_map[3], Some(3));
        assert!(t.within_bound());
        let c6 = cycle(6).unwrap();
        assert_eq!(kernelize(&c6, CoverMode::Exact).unwrap().kernel, c6);
        let again = kernelize_with(&t.kernel, &t.kernel_cover()).unwrap();
        assert!(again.deletions.is_empty());
    }

    #[test]
    fn bounds() {
        assert_eq!(kernel_bound(1), Some(7));
        assert_eq!(kernel_bound(2), Some(22));
        assert_eq!(twin_cap(0), Some(2));
        assert_eq!(twin_cap(200), None);
        assert_eq!(kernel_bound(40), None);
    }

    #[test]
    fn pipeline() {
        let (_, a) = solve_via_kernel(
            &complete_bipartite(1, 7).unwrap(),
            true,
            8,
            1_000_000,
            CoverMode::Approx2,
        )
        .unwrap();
        let direct = nctd_exact(
            &balls_as_concept_class(&ball_family(&complete_bipartite(1, 7).unwrap())),
            true,
            8,
            1_000_000,
        )
        .unwrap();
        assert_eq!(a.k, direct.k);
        let (_, e) =
            solve_via_kernel(&Graph::edgeless(3), true, 3, 1000, CoverMode::Approx2).unwrap();
        assert_eq!(e.k, 1);
        assert!(solve_via_kernel(&cycle(5).unwrap(), false, 3, 1000, CoverMode::Approx2).is_err());
    }
}
