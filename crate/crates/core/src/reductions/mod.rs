//! Hardness gadgets with explicit witness maps: Set Cover to split,
//! co-bipartite and bipartite graphs, and 3-Partitioned-3-SAT to a
//! diameter-3 graph with a small vertex cover.

mod p3sat;
mod setcover;

pub use p3sat::{
    p3sat_extract_assignment, p3sat_forward_map, p3sat_to_gadget, set_rep, Literal, Part,
    Partitioned3SatInstance, SetRep,
};
pub use setcover::{
    preprocess_setcover, setcover_forward_map, setcover_to_gadget, PreprocessStep, Preprocessed,
    SetCoverInstance,
};

use std::fmt;
use std::str::FromStr;

use crate::concept::{SignedSample, TeachingMap};
use crate::error::{Error, Result};
use crate::graph::{content_lines, Graph};
use crate::metric::BallSpace;
use crate::vset::{Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Split,
    Cobipartite,
    Bipartite,
    P3sat,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Split => "split",
            Flavor::Cobipartite => "cobipartite",
            Flavor::Bipartite => "bipartite",
            Flavor::P3sat => "p3sat",
        }
    }

    /// Set Cover budget translation.
    pub fn setcover_budget(self, m: usize, t: usize) -> Result<usize> {
        match self {
            Flavor::Split | Flavor::Bipartite => Ok(m + t),
            Flavor::Cobipartite => Ok(2 * m + t + 1),
            Flavor::P3sat => Err(Error::Unsupported("p3sat is not a Set Cover flavor".into())),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "split" => Ok(Flavor::Split),
            "cobipartite" | "co-bipartite" => Ok(Flavor::Cobipartite),
            "bipartite" => Ok(Flavor::Bipartite),
            "p3sat" => Ok(Flavor::P3sat),
            _ => Err(Error::InvalidInstance(format!("unknown flavor `{s}`"))),
        }
    }
}

/// Vertex tags. Indices are 0-based here and printed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// Element vertex `v_i`.
    Elem(usize),
    /// Set vertex `s_j`.
    Set(usize),
    /// `u_j`; the top index is `u_{m+1}` (or `u_{3M+1}`).
    U(usize),
    /// `u'_{3M+1}`.
    UPrime(usize),
    W(usize),
    Z,
    VStar,
    Clause(usize),
    /// `t^δ_{2i}`, stored by variable index.
    True(Part, usize),
    /// `f^δ_{2i-1}`, stored by variable index.
    False(Part, usize),
    Sep(Part, usize),
    SepStar(Part, usize),
    SepW(usize),
    Validity(Part, usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::Elem(i) => write!(f, "v_{}", i + 1),
            Role::Set(j) => write!(f, "s_{}", j + 1),
            Role::U(j) => write!(f, "u_{}", j + 1),
            Role::UPrime(j) => write!(f, "u'_{}", j + 1),
            Role::W(j) => write!(f, "w_{}", j + 1),
            Role::Z => f.write_str("z"),
            Role::VStar => f.write_str("v*"),
            Role::Clause(j) => write!(f, "c_{}", j + 1),
            Role::True(d, i) => write!(f, "t^{d}_{}", 2 * i + 2),
            Role::False(d, i) => write!(f, "f^{d}_{}", 2 * i + 1),
            Role::Sep(d, p) => write!(f, "v^{d}_{}", p + 1),
            Role::SepStar(d, p) => write!(f, "v^{d}*_{}", p + 1),
            Role::SepW(p) => write!(f, "v^W_{}", p + 1),
            Role::Validity(d, i) => write!(f, "c^{d}_{}", i + 1),
        }
    }
}

impl FromStr for Role {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInstance(format!("bad role `{s}`"));
        match s {
            "z" => return Ok(Role::Z),
            "v*" => return Ok(Role::VStar),
            _ => {}
        }
        let (head, idx) = s.rsplit_once('_').ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        let i = idx - 1;
        let role = match head {
            "v" => Role::Elem(i),
            "s" => Role::Set(i),
            "u" => Role::U(i),
            "u'" => Role::UPrime(i),
            "w" => Role::W(i),
            "c" => Role::Clause(i),
            "v^W" => Role::SepW(i),
            _ => {
                let (kind, rest) = head.split_once('^').ok_or_else(bad)?;
                let (part, star) = match rest.strip_suffix('*') {
                    Some(p) => (p, true),
                    None => (rest, false),
                };
                let part: Part = part.parse().map_err(|_| bad())?;
                match (kind, star) {
                    ("t", false) if idx.is_multiple_of(2) => Role::True(part, idx / 2 - 1),
                    ("f", false) if idx % 2 == 1 => Role::False(part, idx / 2),
                    ("v", false) => Role::Sep(part, i),
                    ("v", true) => Role::SepStar(part, i),
                    ("c", false) => Role::Validity(part, i),
                    _ => return Err(bad()),
                }
            }
        };
        Ok(role)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub k: usize,
    pub roles: Vec<Role>,
    pub flavor: Flavor,
    /// Vertex cover recorded by the p3sat builder.
    pub cover: Option<VertexSet>,
}

impl ReductionOutput {
    pub fn roles_text(&self) -> String {
        let mut s = String::new();
        for (v, r) in self.roles.iter().enumerate() {
            s.push_str(&format!("{v} {r}\n"));
        }
        s
    }

    pub fn vertex_of(&self, role: Role) -> Option<Vertex> {
        self.roles.iter().position(|&r| r == role)
    }
}

/// Parses a roles sidecar: one `vertex role` line per vertex, in order.
pub fn parse_roles(text: &str, n: usize) -> Result<Vec<Role>> {
    let mut out: Vec<Option<Role>> = vec![None; n];
    for (ln, line) in content_lines(text) {
        let bad = |msg: String| Error::Parse { line: ln, msg };
        let (v, r) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| bad(format!("expected `vertex role`, got `{line}`")))?;
        let v: usize = v.parse().map_err(|_| bad(format!("bad vertex `{v}`")))?;
        if v >= n {
            return Err(bad(format!("vertex {v} out of range (n = {n})")));
        }
        let r: Role = r.trim().parse().map_err(|e: Error| bad(e.to_string()))?;
        if out[v].replace(r).is_some() {
            return Err(bad(format!("vertex {v} listed twice")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(v, r)| {
            r.ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("no role for vertex {v}"),
            })
        })
        .collect()
}

/// Builds a positive map class by class from a per-`(x, r)` rule, using the
/// first representative (radius, then center) the rule covers.
fn map_from_rule(
    space: &BallSpace,
    rule: impl Fn(Vertex, u32) -> Option<VertexSet>,
) -> Result<TeachingMap> {
    let fam = &space.family;
    let mut samples = Vec::with_capacity(fam.len());
    for c in 0..fam.len() {
        let t = fam
            .reps(c)
            .iter()
            .find_map(|&(x, r)| rule(x, r))
            .ok_or(Error::UndefinedBall(c))?;
        samples.push(SignedSample::positive(t));
    }
    Ok(TeachingMap::new(samples))
}

/// Replaces every positive teaching set larger than `k` by a greedy hitting
/// set drawn from it, keeping all pairs of that concept non-clashing.
/// Returns an error if some set cannot be brought down to `k`.
fn shrink_oversized(concepts: &[VertexSet], tm: &mut TeachingMap, k: usize) -> Result<()> {
    for i in 0..concepts.len() {
        if tm.get(i).size() <= k {
            continue;
        }
        let ci = &concepts[i];
        let cur = tm.get(i).pos.clone();
        // pairs the partner does not settle on its own
        let mut need: Vec<VertexSet> = (0..concepts.len())
            .filter(|&j| j != i && tm.get(j).pos.is_subset(ci))
            .map(|j| cur.difference(&concepts[j]))
            .collect();
        if need.iter().any(|d| d.is_empty()) {
            return Err(Error::InvalidWitness(format!(
                "concept {i} clashes before shrinking"
            )));
        }
        let mut chosen = VertexSet::empty(ci.universe());
        while !need.is_empty() {
            let best = cur
                .iter()
                .max_by_key(|&x| {
                    (
                        need.iter().filter(|d| d.contains(x)).count(),
                        std::cmp::Reverse(x),
                    )
                })
                .expect("non-empty set");
            chosen.insert(best);
            need.retain(|d| !d.contains(best));
        }
        if chosen.len() > k {
            return Err(Error::InvalidWitness(format!(
                "teaching set of concept {i} needs {} > {k} vertices",
                chosen.len()
            )));
        }
        tm.samples[i] = SignedSample::positive(chosen);
    }
    Ok(())
}
