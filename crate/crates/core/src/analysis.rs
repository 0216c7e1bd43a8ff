//! Gromov hyperbolicity and VC-dimension of set families.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::metric::{BallFamily, DistanceMatrix};
use crate::vset::{Vertex, VertexSet};

/// Hyperbolicity constant, stored doubled so it stays an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Delta {
    pub twice: u32,
}

impl Delta {
    pub fn as_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice.is_multiple_of(2) {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}.5", self.twice / 2)
        }
    }
}

/// Four-point hyperbolicity: the largest gap between the two biggest of the
/// three pair sums over all quadruples, halved.
pub fn hyperbolicity(d: &DistanceMatrix) -> Delta {
    let n = d.n();
    let twice = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut best = 0u32;
            for b in a + 1..n {
                let dab = d.get(a, b);
                for c in b + 1..n {
                    let (dac, dbc) = (d.get(a, c), d.get(b, c));
                    for e in c + 1..n {
                        let s1 = dab + d.get(c, e);
                        let s2 = dac + d.get(b, e);
                        let s3 = d.get(a, e) + dbc;
                        let (hi, mid) = top_two(s1, s2, s3);
                        best = best.max(hi - mid);
                    }
                }
            }
            best
        })
        .max()
        .unwrap_or(0);
    Delta { twice }
}

fn top_two(a: u32, b: u32, c: u32) -> (u32, u32) {
    let hi = a.max(b).max(c);
    let lo = a.min(b).min(c);
    (hi, a + b + c - hi - lo)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcDimension {
    pub dim: usize,
    /// A shattered set of size `dim`.
    pub witness: Vec<Vertex>,
    /// Shattering reached the search bound, so the true value may be larger.
    pub possibly_larger: bool,
}

/// VC-dimension of `sets` over `0..n`, searching subsets of size at most
/// `dmax`. Shattered sets are closed under taking subsets, so candidates of
/// size `d + 1` are grown from shattered sets of size `d`.
pub fn vc_dimension(sets: &[VertexSet], n: usize, dmax: usize) -> VcDimension {
    let shatters = |s: &[Vertex]| -> bool {
        let want = 1usize << s.len();
        if want > sets.len() {
            return false;
        }
        let mut seen = vec![0u64; want.div_ceil(64)];
        let mut hit = 0;
        for c in sets {
            let trace = s
                .iter()
                .enumerate()
                .fold(0usize, |t, (i, &v)| t | (c.contains(v) as usize) << i);
            if seen[trace / 64] >> (trace % 64) & 1 == 0 {
                seen[trace / 64] |= 1 << (trace % 64);
                hit += 1;
                if hit == want {
                    return true;
                }
            }
        }
        false
    };
    let mut level: Vec<Vec<Vertex>> = vec![Vec::new()];
    if !shatters(&[]) {
        return VcDimension {
            dim: 0,
            witness: Vec::new(),
            possibly_larger: false,
        };
    }
    let mut dim = 0;
    while dim < dmax.min(63) {
        let known: HashSet<&[Vertex]> = level.iter().map(|s| s.as_slice()).collect();
        // every d-subset of a shattered (d+1)-set is shattered
        let closed = |t: &[Vertex]| {
            (0..t.len().saturating_sub(1)).all(|skip| {
                let sub: Vec<Vertex> = t
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                known.contains(sub.as_slice())
            })
        };
        let next: Vec<Vec<Vertex>> = level
            .par_iter()
            .flat_map_iter(|s| {
                let from = s.last().map_or(0, |&v| v + 1);
                (from..n).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .filter(|t| closed(t) && shatters(t))
            .collect();
        if next.is_empty() {
            break;
        }
        level = next;
        dim += 1;
    }
    let witness = level.into_iter().next().unwrap_or_default();
    VcDimension {
        dim,
        witness,
        possibly_larger: dim == dmax,
    }
}

pub fn vc_dimension_of_balls(family: &BallFamily, dmax: usize) -> VcDimension {
    vc_dimension(family.classes(), family.ground_size(), dmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path, random_tree};
    use crate::metric::all_pairs_distances;

    fn delta_brute(d: &DistanceMatrix) -> u32 {
        let n = d.n();
        let mut best = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        let mut s = [
                            d.get(a, b) + d.get(c, e),
                            d.get(a, c) + d.get(b, e),
                            d.get(a, e) + d.get(b, c),
                        ];
                        s.sort_unstable();
                        best = best.max(s[2] - s[1]);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn hyperbolicity_small_cases() {
        let d = all_pairs_distances(&cycle(4).unwrap()).unwrap();
        assert_eq!(hyperbolicity(&d), Delta { twice: 2 });
        assert_eq!(hyperbolicity(&d).to_string(), "1");
        for n in 3..10 {
            let d = all_pairs_distances(&cycle(n).unwrap()).unwrap();
            assert_eq!(hyperbolicity(&d).twice, delta_brute(&d), "C{n}");
        }
        let d = all_pairs_distances(&random_tree(15, 3).unwrap()).unwrap();
        assert_eq!(hyperbolicity(&d).twice, 0);
        assert_eq!(Delta { twice: 3 }.to_string(), "1.5");
    }

    #[test]
    fn vc_dimension_small_cases() {
        let fam = |g| BallFamily::enumerate(&all_pairs_distances(&g).unwrap());
        let k2 = vc_dimension_of_balls(&fam(path(2).unwrap()), 5);
        assert_eq!(k2.dim, 1);
        assert!(!k2.possibly_larger);
        assert!(vc_dimension_of_balls(&fam(path(3).unwrap()), 5).dim <= 2);
        let c6 = vc_dimension_of_balls(&fam(cycle(6).unwrap()), 5);
        assert_eq!(c6.dim, 3);
        assert_eq!(c6.witness.len(), 3);
        let capped = vc_dimension_of_balls(&fam(cycle(6).unwrap()), 2);
        assert_eq!(capped.dim, 2);
        assert!(capped.possibly_larger);
    }
}
