//! Exact NCTD / NCTD⁺ by backtracking.
//!
//! Two concepts `C`, `C'` with teaching supports `S`, `S'` clash iff they agree
//! on `S ∪ S'`, so the pair is fine iff `S` hits `C △ C'` or `S'` does. In
//! positive mode `S ⊆ C` can only hit `C ∖ C'`. Each concept therefore carries
//! a list of masks its support still has to hit, and the search assigns
//! supports concept by concept, pushing a requirement onto every unassigned
//! partner whose mask the new support misses.
//!
//! Adding elements to a support never creates a clash, so only supports of
//! the full size `min(k, |allowed|)` are branched on; the returned witness is
//! then shrunk greedily.

use std::collections::HashMap;

use crate::concept::{ConceptClass, SignedSample, TeachingMap};
use crate::error::{Error, Result};
use crate::vset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    /// Every size up to `k_max` was refuted.
    Refuted,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes(TeachingMap),
    No,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub answer: Answer,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    /// Size of the witness when one was found, else the largest `k` tried.
    pub k: usize,
    pub witness: Option<TeachingMap>,
    pub positive_only: bool,
    pub nodes: u64,
    pub status: Status,
    /// Every size below this is refuted.
    pub lower_bound: usize,
}

/// Steps allowed to each forward-checking hitting-set test before it gives
/// up and reports "maybe".
const LOOKAHEAD_STEPS: u32 = 2_000;

/// Largest total candidate count for which the root matching test runs.
const MATCHING_LIMIT: usize = 200_000;

#[inline]
fn ones(m: u128) -> u32 {
    m.count_ones()
}

struct Search {
    n: usize,
    k: usize,
    concepts: Vec<u128>,
    allowed: Vec<u128>,
    /// `hit[i * c + j]`: what `S_i` must meet to separate `i` from `j`.
    hit: Vec<u128>,
    order: Vec<usize>,
    req: Vec<Vec<u128>>,
    assigned: Vec<Option<u128>>,
    nodes: u64,
    budget: u64,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search {
    fn new(cc: &ConceptClass, k: usize, positive: bool, budget: u64) -> Result<Self> {
        let n = cc.ground_size();
        if n > 128 {
            return Err(Error::GroundTooLarge(n));
        }
        let full = if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        };
        let concepts: Vec<u128> = cc
            .concepts()
            .iter()
            .map(|s| s.to_u128().expect("ground checked"))
            .collect();
        let c = concepts.len();
        let allowed = if positive {
            concepts.clone()
        } else {
            vec![full; c]
        };
        let mut hit = vec![0u128; c * c];
        for i in 0..c {
            for j in 0..c {
                if i != j {
                    let diff = concepts[i] ^ concepts[j];
                    hit[i * c + j] = diff & allowed[i];
                }
            }
        }
        let mut order: Vec<usize> = (0..c).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(ones(concepts[i])), i));
        Ok(Search {
            n,
            k,
            concepts,
            allowed,
            hit,
            order,
            req: vec![Vec::new(); c],
            assigned: vec![None; c],
            nodes: 0,
            budget,
        })
    }

    fn c(&self) -> usize {
        self.concepts.len()
    }

    fn width(&self, i: usize) -> usize {
        (ones(self.allowed[i]) as usize).min(self.k)
    }

    fn add_req(&mut self, j: usize, m: u128, trail: &mut Vec<usize>) {
        self.req[j].push(m);
        trail.push(j);
    }

    fn undo(&mut self, trail: &[usize]) {
        for &j in trail.iter().rev() {
            self.req[j].pop();
        }
    }

    /// Requirements that hold before anything is assigned. False if some pair
    /// can be separated by neither side.
    fn seed_static(&mut self) -> bool {
        let c = self.c();
        let mut trail = Vec::new();
        for i in 0..c {
            for j in i + 1..c {
                let (a, b) = (self.hit[i * c + j], self.hit[j * c + i]);
                match (a == 0, b == 0) {
                    (true, true) => return false,
                    (true, false) => self.add_req(j, b, &mut trail),
                    (false, true) => self.add_req(i, a, &mut trail),
                    _ => {}
                }
            }
        }
        (0..c).all(|i| self.feasible(i))
    }

    /// Assigns `s` to `i` and forward-checks its partners. Returns false on a
    /// wipe-out; the caller undoes `trail` either way.
    fn assign(&mut self, i: usize, s: u128, trail: &mut Vec<usize>) -> bool {
        self.assigned[i] = Some(s);
        let c = self.c();
        let mut touched = Vec::new();
        for j in 0..c {
            if j == i || self.assigned[j].is_some() {
                continue;
            }
            if s & self.hit[i * c + j] == 0 {
                let need = self.hit[j * c + i];
                if need == 0 {
                    return false;
                }
                self.add_req(j, need, trail);
                touched.push(j);
            }
        }
        touched.into_iter().all(|j| self.feasible(j))
    }

    /// Whether concept `j` can still meet all its requirements; may answer
    /// true when unsure.
    fn feasible(&self, j: usize) -> bool {
        let mut steps = 0;
        hitting_set_exists(&self.req[j], self.width(j), &mut steps) != Some(false)
    }

    /// Every full-width support of `i` meeting its requirements, in
    /// lexicographic order.
    fn candidates(&self, i: usize, limit: usize) -> Vec<u128> {
        let elems: Vec<u32> = bits(self.allowed[i]).collect();
        let mut suffix = vec![0u128; elems.len() + 1];
        for p in (0..elems.len()).rev() {
            suffix[p] = suffix[p + 1] | 1u128 << elems[p];
        }
        let mut out = Vec::new();
        enum_supports(
            &elems,
            &suffix,
            &self.req[i],
            0,
            0,
            self.width(i),
            &mut out,
            limit,
        );
        out
    }

    fn run(&mut self, depth: usize) -> Outcome {
        let Some(&i) = self.order[depth..]
            .iter()
            .find(|&&i| self.assigned[i].is_none())
        else {
            return Outcome::Found;
        };
        for s in self.candidates(i, usize::MAX) {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.assigned[i] = None;
                return Outcome::OutOfBudget;
            }
            let mut trail = Vec::new();
            if self.assign(i, s, &mut trail) {
                match self.run(depth + 1) {
                    Outcome::Exhausted => {}
                    done => return done,
                }
            }
            self.undo(&trail);
            self.assigned[i] = None;
        }
        Outcome::Exhausted
    }

    /// Distinct concepts need distinct samples; a failed matching of concepts
    /// to their candidate samples refutes `k` outright.
    fn matching_refutes(&self) -> bool {
        let c = self.c();
        let mut lists = Vec::with_capacity(c);
        let mut total = 0;
        for i in 0..c {
            let cand = self.candidates(i, MATCHING_LIMIT + 1 - total.min(MATCHING_LIMIT));
            total += cand.len();
            if total > MATCHING_LIMIT {
                return false;
            }
            lists.push(cand);
        }
        let mut ids: HashMap<(u128, u128), usize> = HashMap::new();
        let adj: Vec<Vec<usize>> = lists
            .iter()
            .enumerate()
            .map(|(i, cand)| {
                cand.iter()
                    .map(|&s| {
                        let key = (s, s & self.concepts[i]);
                        let next = ids.len();
                        *ids.entry(key).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        if ids.len() < c {
            return true;
        }
        let mut owner = vec![usize::MAX; ids.len()];
        for i in 0..c {
            let mut seen = vec![false; ids.len()];
            if !augment(i, &adj, &mut owner, &mut seen) {
                return true;
            }
        }
        false
    }

    fn witness(&self) -> TeachingMap {
        let c = self.c();
        let mut s: Vec<u128> = self.assigned.iter().map(|a| a.expect("complete")).collect();
        // drop elements while every pair stays separated
        for i in 0..c {
            for e in bits(s[i]).collect::<Vec<_>>() {
                let t = s[i] & !(1u128 << e);
                let fine = (0..c).all(|j| {
                    j == i || t & self.hit[i * c + j] != 0 || s[j] & self.hit[j * c + i] != 0
                });
                if fine {
                    s[i] = t;
                }
            }
        }
        let n = self.n;
        TeachingMap::new(
            s.iter()
                .zip(&self.concepts)
                .map(|(&m, &cm)| SignedSample {
                    pos: VertexSet::from_u128(n, m & cm),
                    neg: VertexSet::from_u128(n, m & !cm),
                })
                .collect(),
        )
    }
}

fn bits(m: u128) -> impl Iterator<Item = u32> {
    let mut m = m;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros();
            m &= m - 1;
            Some(b)
        }
    })
}

fn augment(i: usize, adj: &[Vec<usize>], owner: &mut [usize], seen: &mut [bool]) -> bool {
    for &s in &adj[i] {
        if !seen[s] {
            seen[s] = true;
            if owner[s] == usize::MAX || augment(owner[s], adj, owner, seen) {
                owner[s] = i;
                return true;
            }
        }
    }
    false
}

/// Greedy count of pairwise disjoint masks, a lower bound on any hitting set.
fn packing(sets: impl Iterator<Item = u128>) -> usize {
    let mut used = 0u128;
    let mut count = 0;
    for m in sets {
        if m & used == 0 {
            used |= m;
            count += 1;
        }
    }
    count
}

/// Some(true) / Some(false) when decided, None when out of steps.
fn hitting_set_exists(req: &[u128], slots: usize, steps: &mut u32) -> Option<bool> {
    fn go(req: &[u128], chosen: u128, slots: usize, steps: &mut u32) -> Option<bool> {
        *steps += 1;
        if *steps > LOOKAHEAD_STEPS {
            return None;
        }
        let open = || req.iter().copied().filter(move |&m| m & chosen == 0);
        let Some(pick) = open().min_by_key(|&m| ones(m)) else {
            return Some(true);
        };
        if slots == 0 || packing(open()) > slots {
            return Some(false);
        }
        let mut unsure = false;
        for e in bits(pick) {
            match go(req, chosen | 1u128 << e, slots - 1, steps) {
                Some(true) => return Some(true),
                None => unsure = true,
                Some(false) => {}
            }
        }
        if unsure {
            None
        } else {
            Some(false)
        }
    }
    go(req, 0, slots, steps)
}

#[allow(clippy::too_many_arguments)]
fn enum_supports(
    elems: &[u32],
    suffix: &[u128],
    req: &[u128],
    p: usize,
    chosen: u128,
    slots: usize,
    out: &mut Vec<u128>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if slots == 0 {
        if req.iter().all(|&m| m & chosen != 0) {
            out.push(chosen);
        }
        return;
    }
    if elems.len() - p < slots {
        return;
    }
    let open = || req.iter().copied().filter(|&m| m & chosen == 0);
    if open().any(|m| m & suffix[p] == 0) || packing(open().map(|m| m & suffix[p])) > slots {
        return;
    }
    let bit = 1u128 << elems[p];
    enum_supports(
        elems,
        suffix,
        req,
        p + 1,
        chosen | bit,
        slots - 1,
        out,
        limit,
    );
    enum_supports(elems, suffix, req, p + 1, chosen, slots, out, limit);
}

fn decide(cc: &ConceptClass, k: usize, positive_only: bool, budget: u64) -> Result<Decision> {
    let mut s = Search::new(cc, k, positive_only, budget)?;
    let no = |nodes| Decision {
        answer: Answer::No,
        nodes,
    };
    if !s.seed_static() || s.matching_refutes() {
        return Ok(no(0));
    }
    // concepts with a single possible support are fixed up front
    let mut root_trail = Vec::new();
    for i in 0..s.c() {
        if ones(s.allowed[i]) as usize <= k && s.assigned[i].is_none() {
            let full = s.allowed[i];
            if s.req[i].iter().any(|&m| m & full == 0) || !s.assign(i, full, &mut root_trail) {
                return Ok(no(0));
            }
        }
    }
    let outcome = s.run(0);
    let nodes = s.nodes;
    Ok(match outcome {
        Outcome::Found => Decision {
            answer: Answer::Yes(s.witness()),
            nodes,
        },
        Outcome::Exhausted => no(nodes),
        Outcome::OutOfBudget => Decision {
            answer: Answer::BudgetExceeded,
            nodes,
        },
    })
}

/// Is there a (positive-only) non-clashing map of size at most `k`?
pub fn nctd_decision(
    cc: &ConceptClass,
    k: usize,
    positive_only: bool,
    budget: u64,
) -> Result<Decision> {
    if cc.is_empty() {
        return Err(Error::ConceptClass("empty concept class".into()));
    }
    decide(cc, k, positive_only, budget)
}

/// Smallest `k <= k_max` with a YES answer, trying `k = 0, 1, ...`. The node
/// budget is shared by all rounds.
pub fn nctd_exact(
    cc: &ConceptClass,
    positive_only: bool,
    k_max: usize,
    budget: u64,
) -> Result<SolveResult> {
    let mut nodes = 0u64;
    for k in 0..=k_max {
        let d = nctd_decision(cc, k, positive_only, budget.saturating_sub(nodes))?;
        nodes += d.nodes;
        match d.answer {
            Answer::Yes(w) => {
                return Ok(SolveResult {
                    k,
                    witness: Some(w),
                    positive_only,
                    nodes,
                    status: Status::Optimal,
                    lower_bound: k,
                })
            }
            Answer::No => {}
            Answer::BudgetExceeded => {
                return Ok(SolveResult {
                    k,
                    witness: None,
                    positive_only,
                    nodes,
                    status: Status::BudgetExceeded,
                    lower_bound: k,
                })
            }
        }
    }
    Ok(SolveResult {
        k: k_max,
        witness: None,
        positive_only,
        nodes,
        status: Status::Refuted,
        lower_bound: k_max + 1,
    })
}
