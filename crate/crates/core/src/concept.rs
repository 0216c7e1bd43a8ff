//! Concept classes, signed samples, teaching maps and the non-clashing
//! verifier.
//!
//! Concept class files hold one concept per line as space-separated ids with
//! an optional `# label`; `-` stands for the empty concept, and an optional
//! first line `ground N` fixes the ground set size. Teaching map files hold
//! lines `concept <i> pos <ids...> neg <ids...>` (either section may be empty
//! or missing).

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::content_lines;
use crate::metric::{set_hausdorff, BallFamily, DistanceMatrix};
use crate::vset::{Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConceptClass {
    ground: usize,
    concepts: Vec<VertexSet>,
    labels: Vec<Option<String>>,
}

impl ConceptClass {
    /// Builds a class, rejecting repeated concepts and out-of-range members.
    pub fn new(
        ground: usize,
        concepts: Vec<VertexSet>,
        labels: Vec<Option<String>>,
    ) -> Result<Self> {
        if labels.len() != concepts.len() {
            return Err(Error::ConceptClass(format!(
                "{} labels for {} concepts",
                labels.len(),
                concepts.len()
            )));
        }
        let mut seen = std::collections::HashMap::new();
        for (i, c) in concepts.iter().enumerate() {
            if c.universe() != ground {
                return Err(Error::ConceptClass(format!(
                    "concept {i} lives on {} elements, expected {ground}",
                    c.universe()
                )));
            }
            if let Some(j) = seen.insert(c.clone(), i) {
                return Err(Error::ConceptClass(format!(
                    "concepts {j} and {i} are equal"
                )));
            }
        }
        Ok(ConceptClass {
            ground,
            concepts,
            labels,
        })
    }

    pub fn unlabeled(ground: usize, concepts: Vec<VertexSet>) -> Result<Self> {
        let labels = vec![None; concepts.len()];
        Self::new(ground, concepts, labels)
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[VertexSet] {
        &self.concepts
    }

    pub fn concept(&self, i: usize) -> &VertexSet {
        &self.concepts[i]
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels[i].as_deref()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut ground = None;
        let mut rows: Vec<(usize, Vec<Vertex>, Option<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let (body, label) = match raw.split_once('#') {
                Some((b, l)) => (b.trim(), Some(l.trim().to_string())),
                None => (raw.trim(), None),
            };
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix("ground") {
                if ground.is_some() || !rows.is_empty() {
                    return Err(Error::Parse {
                        line: ln,
                        msg: "`ground` must be the first line".into(),
                    });
                }
                ground = Some(rest.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: ln,
                    msg: format!("bad ground size `{}`", rest.trim()),
                })?);
                continue;
            }
            let ids = if body == "-" {
                Vec::new()
            } else {
                crate::graph::parse_usizes(ln, body)?
            };
            rows.push((ln, ids, label.filter(|l| !l.is_empty())));
        }
        let ground = ground.unwrap_or_else(|| {
            rows.iter()
                .flat_map(|r| r.1.iter())
                .max()
                .map_or(0, |&m| m + 1)
        });
        let mut concepts = Vec::with_capacity(rows.len());
        let mut labels = Vec::with_capacity(rows.len());
        for (ln, ids, label) in rows {
            if let Some(&bad) = ids.iter().find(|&&v| v >= ground) {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("element {bad} outside ground set of size {ground}"),
                });
            }
            concepts.push(VertexSet::from_iter(ground, ids));
            labels.push(label);
        }
        Self::new(ground, concepts, labels)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("ground {}\n", self.ground);
        for (c, l) in self.concepts.iter().zip(&self.labels) {
            let body = if c.is_empty() {
                "-".to_string()
            } else {
                join(c)
            };
            match l {
                Some(l) => {
                    let _ = writeln!(s, "{body} # {l}");
                }
                None => {
                    let _ = writeln!(s, "{body}");
                }
            }
        }
        s
    }
}

fn join(s: &VertexSet) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// A sign vector: `pos` are the `+1` coordinates, `neg` the `-1` ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedSample {
    pub pos: VertexSet,
    pub neg: VertexSet,
}

impl SignedSample {
    pub fn new(pos: VertexSet, neg: VertexSet) -> Result<Self> {
        if !pos.is_disjoint(&neg) {
            return Err(Error::ConceptClass(format!(
                "sample is both positive and negative on {}",
                pos.intersection(&neg)
            )));
        }
        Ok(SignedSample { pos, neg })
    }

    pub fn positive(pos: VertexSet) -> Self {
        let neg = VertexSet::empty(pos.universe());
        SignedSample { pos, neg }
    }

    pub fn empty(ground: usize) -> Self {
        Self::positive(VertexSet::empty(ground))
    }

    pub fn support(&self) -> VertexSet {
        self.pos.union(&self.neg)
    }

    pub fn size(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    pub fn is_positive_only(&self) -> bool {
        self.neg.is_empty()
    }
}

/// `s ≼ c`: positives inside, negatives outside.
pub fn realizable(s: &SignedSample, c: &VertexSet) -> bool {
    s.pos.is_subset(c) && s.neg.is_disjoint(c)
}

/// Whether the two concepts agree on the joint support of their samples.
pub fn clashes(tc: &SignedSample, tc2: &SignedSample, c: &VertexSet, c2: &VertexSet) -> bool {
    let mut mask = tc.support();
    mask.union_with(&tc2.pos);
    mask.union_with(&tc2.neg);
    c.agrees_on(c2, &mask)
}

/// One sample per concept, indexed like the concept class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeachingMap {
    pub samples: Vec<SignedSample>,
}

impl TeachingMap {
    pub fn new(samples: Vec<SignedSample>) -> Self {
        TeachingMap { samples }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn get(&self, i: usize) -> &SignedSample {
        &self.samples[i]
    }

    /// Largest support.
    pub fn size(&self) -> usize {
        self.samples
            .iter()
            .map(SignedSample::size)
            .max()
            .unwrap_or(0)
    }

    pub fn is_positive_only(&self) -> bool {
        self.samples.iter().all(SignedSample::is_positive_only)
    }

    pub fn parse(text: &str, ground: usize, count: usize) -> Result<Self> {
        let mut slots: Vec<Option<SignedSample>> = vec![None; count];
        for (ln, line) in content_lines(text) {
            let bad = |msg: String| Error::Parse { line: ln, msg };
            let mut toks = line.split_whitespace();
            if toks.next() != Some("concept") {
                return Err(bad(format!(
                    "expected `concept <i> pos ... neg ...`, got `{line}`"
                )));
            }
            let idx: usize = toks
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("missing concept index".into()))?;
            if idx >= count {
                return Err(bad(format!(
                    "concept {idx} out of range ({count} concepts)"
                )));
            }
            let mut pos = VertexSet::empty(ground);
            let mut neg = VertexSet::empty(ground);
            let mut into_neg = None;
            for t in toks {
                match t {
                    "pos" => into_neg = Some(false),
                    "neg" => into_neg = Some(true),
                    _ => {
                        let v: usize = t.parse().map_err(|_| bad(format!("bad element `{t}`")))?;
                        if v >= ground {
                            return Err(bad(format!(
                                "element {v} outside ground set of size {ground}"
                            )));
                        }
                        match into_neg {
                            Some(false) => pos.insert(v),
                            Some(true) => neg.insert(v),
                            None => return Err(bad("element before `pos`/`neg`".into())),
                        };
                    }
                }
            }
            let sample = SignedSample::new(pos, neg).map_err(|e| bad(e.to_string()))?;
            if slots[idx].replace(sample).is_some() {
                return Err(bad(format!("concept {idx} listed twice")));
            }
        }
        let got = slots.iter().filter(|s| s.is_some()).count();
        if got != count {
            return Err(Error::MapSizeMismatch {
                expected: count,
                got,
            });
        }
        Ok(TeachingMap::new(slots.into_iter().flatten().collect()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, t) in self.samples.iter().enumerate() {
            let _ = write!(s, "concept {i} pos");
            for v in &t.pos {
                let _ = write!(s, " {v}");
            }
            if !t.neg.is_empty() {
                let _ = write!(s, " neg");
                for v in &t.neg {
                    let _ = write!(s, " {v}");
                }
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    Clash,
    InclusionBroken,
    NotRealizable,
}

/// `a == b` for the single-concept kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub a: usize,
    pub b: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub size: usize,
    pub violations: Vec<Violation>,
    pub positive_only: bool,
}

fn check(
    concepts: &[VertexSet],
    tm: &TeachingMap,
    positive_only: bool,
    exempt: impl Fn(usize, usize) -> bool + Sync,
) -> Result<VerificationReport> {
    if tm.len() != concepts.len() {
        return Err(Error::MapSizeMismatch {
            expected: concepts.len(),
            got: tm.len(),
        });
    }
    let mut violations = Vec::new();
    for (i, (c, t)) in concepts.iter().zip(&tm.samples).enumerate() {
        if !realizable(t, c) {
            violations.push(Violation {
                a: i,
                b: i,
                kind: ViolationKind::NotRealizable,
            });
        }
        if positive_only && !t.is_positive_only() {
            violations.push(Violation {
                a: i,
                b: i,
                kind: ViolationKind::InclusionBroken,
            });
        }
    }
    let supports: Vec<VertexSet> = tm.samples.iter().map(SignedSample::support).collect();
    let clashes: Vec<Violation> = (0..concepts.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let supports = &supports;
            let exempt = &exempt;
            (i + 1..concepts.len()).filter_map(move |j| {
                let mask = supports[i].union(&supports[j]);
                (concepts[i].agrees_on(&concepts[j], &mask) && !exempt(i, j)).then_some(Violation {
                    a: i,
                    b: j,
                    kind: ViolationKind::Clash,
                })
            })
        })
        .collect();
    violations.extend(clashes);
    Ok(VerificationReport {
        ok: violations.is_empty(),
        size: tm.size(),
        violations,
        positive_only,
    })
}

/// Checks realizability, the inclusion condition when `positive_only`, and
/// non-clashing for every pair of concepts.
pub fn verify(
    cc: &ConceptClass,
    tm: &TeachingMap,
    positive_only: bool,
) -> Result<VerificationReport> {
    check(cc.concepts(), tm, positive_only, |_, _| false)
}

/// Like [`verify`] in positive-only mode, except that pairs of balls at
/// Hausdorff distance at most `rho` may clash.
pub fn verify_approx(
    family: &BallFamily,
    tm: &TeachingMap,
    rho: u32,
    d: &DistanceMatrix,
) -> Result<VerificationReport> {
    let cls = family.classes();
    check(cls, tm, true, |i, j| {
        set_hausdorff(&cls[i], &cls[j], d) <= rho
    })
}

/// One concept per distinct ball, labeled by its canonical `(center,radius)`.
pub fn balls_as_concept_class(family: &BallFamily) -> ConceptClass {
    let labels = (0..family.len())
        .map(|i| {
            let (x, r) = family.canonical(i);
            Some(format!("({x},{r})"))
        })
        .collect();
    ConceptClass {
        ground: family.ground_size(),
        concepts: family.classes().to_vec(),
        labels,
    }
}

/// The ten concepts on the 5-cycle `0-1-2-3-4` made of the five non-adjacent
/// pairs and the five 2-paths, with the size-2 positive map that teaches a
/// pair by itself and a path `x, x+1, x+2` by its first edge.
pub fn c5_example_class() -> (ConceptClass, TeachingMap) {
    let n = 5;
    let set = |v: &[usize]| VertexSet::from_iter(n, v.iter().copied());
    let mut concepts = Vec::new();
    let mut labels = Vec::new();
    let mut samples = Vec::new();
    for x in 0..n {
        let pair = set(&[x, (x + 2) % n]);
        samples.push(SignedSample::positive(pair.clone()));
        concepts.push(pair);
        labels.push(Some(format!("pair {x},{}", (x + 2) % n)));
    }
    for x in 0..n {
        let (y, z) = ((x + 1) % n, (x + 2) % n);
        concepts.push(set(&[x, y, z]));
        samples.push(SignedSample::positive(set(&[x, y])));
        labels.push(Some(format!("path {x},{y},{z}")));
    }
    let cc = ConceptClass::new(n, concepts, labels).expect("distinct concepts");
    (cc, TeachingMap::new(samples))
}
