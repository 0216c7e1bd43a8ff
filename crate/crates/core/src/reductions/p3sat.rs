//! 3-Partitioned-3-SAT to a diameter-3 graph whose vertex cover has
//! `3 + 14p` vertices, `p` being the set-rep width.
//!
//! Vertex order: `C`, `W`, `U` (ending with `u_{3M+1}`), `u'_{3M+1}`, `z`,
//! then `A^α, A^β, A^γ` (`t` before `f` for each variable), the `V^δ`, the
//! `V^{δ,*}`, `V^W`, and the `C^δ`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{map_from_rule, shrink_oversized, Flavor, ReductionOutput, Role};
use crate::concept::TeachingMap;
use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_usizes, Graph};
use crate::metric::{all_pairs_distances, BallSpace};
use crate::structure::check_cover;
use crate::vset::{Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Alpha,
    Beta,
    Gamma,
}

impl Part {
    pub const ALL: [Part; 3] = [Part::Alpha, Part::Beta, Part::Gamma];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["a", "b", "c"][self.index()])
    }
}

impl FromStr for Part {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "alpha" | "α" => Ok(Part::Alpha),
            "b" | "beta" | "β" => Ok(Part::Beta),
            "c" | "gamma" | "γ" => Ok(Part::Gamma),
            _ => Err(Error::InvalidInstance(format!("unknown part `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub part: Part,
    /// 0-based variable index inside the part.
    pub var: usize,
    pub positive: bool,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            self.part,
            self.var + 1,
            if self.positive { '+' } else { '-' }
        )
    }
}

/// Assignments are `Vec<bool>` of length `3N`, indexed `part * N + var`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partitioned3SatInstance {
    pub n_vars: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl Partitioned3SatInstance {
    pub fn new(n_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            let bad = |msg: String| Err(Error::InvalidInstance(format!("clause {}: {msg}", j + 1)));
            if c.is_empty() || c.len() > 3 {
                return bad(format!("{} literals", c.len()));
            }
            if let Some(l) = c.iter().find(|l| l.var >= n_vars) {
                return bad(format!(
                    "variable {} out of range (N = {n_vars})",
                    l.var + 1
                ));
            }
            for (a, l) in c.iter().enumerate() {
                if c[a + 1..].iter().any(|o| o.part == l.part) {
                    return bad(format!("two variables from part {}", l.part));
                }
            }
        }
        Ok(Partitioned3SatInstance { n_vars, clauses })
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    /// `N M`, then one clause per line as `part:index:sign` tokens.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing header `N M`".into(),
        })?;
        let [n, m] = parse_usizes(hl, header)?[..] else {
            return Err(Error::Parse {
                line: hl,
                msg: format!("header must be `N M`, got `{header}`"),
            });
        };
        let mut clauses = Vec::with_capacity(m);
        for (ln, line) in lines {
            let bad = |tok: &str| Error::Parse {
                line: ln,
                msg: format!("literal must be `part:index:sign`, got `{tok}`"),
            };
            let mut clause = Vec::new();
            for tok in line.split_whitespace() {
                let [part, idx, sign] = tok.split(':').collect::<Vec<_>>()[..] else {
                    return Err(bad(tok));
                };
                let part: Part = part.parse().map_err(|_| bad(tok))?;
                let idx: usize = idx.parse().map_err(|_| bad(tok))?;
                let positive = match sign {
                    "+" => true,
                    "-" => false,
                    _ => return Err(bad(tok)),
                };
                if idx == 0 {
                    return Err(bad(tok));
                }
                clause.push(Literal {
                    part,
                    var: idx - 1,
                    positive,
                });
            }
            clauses.push(clause);
        }
        if clauses.len() != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header announces {m} clauses, found {}", clauses.len()),
            });
        }
        Self::new(n, clauses)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n_vars, self.m());
        for c in &self.clauses {
            let toks: Vec<String> = c.iter().map(Literal::to_string).collect();
            s.push_str(&toks.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn value(&self, assignment: &[bool], lit: Literal) -> bool {
        assignment[lit.part.index() * self.n_vars + lit.var] == lit.positive
    }

    /// First clause the assignment falsifies.
    pub fn first_unsatisfied(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|&l| self.value(assignment, l)))
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == 3 * self.n_vars && self.first_unsatisfied(assignment).is_none()
    }

    /// Exhaustive search; `None` if unsatisfiable or `3N > 24`.
    pub fn brute_force(&self) -> Option<Vec<bool>> {
        let nv = 3 * self.n_vars;
        if nv > 24 {
            return None;
        }
        (0u32..1 << nv)
            .map(|mask| (0..nv).map(|b| mask >> b & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.satisfied_by(a))
    }
}

/// Injection of `1..=3M` into the `p`-subsets of `[2p]`.
///
/// The sets avoiding position `2p` are taken in colex order, two at a time,
/// and each pair is followed by its two complements: `P1 P2 ~P1 ~P2 P3 P4 ...`.
/// Any four consecutive images then cover `[2p]` among the odd and among the
/// even indices, so every separator vertex has a literal neighbour once
/// `N >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetRep {
    pub m: usize,
    pub p: usize,
    /// `images[l - 1]` is the bitmask of the set for `l`.
    images: Vec<u64>,
    inverse: HashMap<u64, usize>,
}

impl SetRep {
    /// 0-based members of the image of `l` (1-based).
    pub fn image(&self, l: usize) -> Vec<usize> {
        let mask = self.images[l - 1];
        (0..2 * self.p).filter(|&b| mask >> b & 1 == 1).collect()
    }

    fn mask(&self, l: usize) -> u64 {
        self.images[l - 1]
    }

    /// The `l` whose image is `set` (0-based members).
    pub fn index_of(&self, set: &[usize]) -> Option<usize> {
        let mask = set
            .iter()
            .try_fold(0u64, |a, &b| (b < 2 * self.p).then(|| a | 1 << b))?;
        self.inverse.get(&mask).copied()
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }
}

fn central_binomial(p: usize) -> u128 {
    // C(2p, p) built incrementally; exact at every step
    (1..=p as u128).fold(1u128, |c, i| c * (p as u128 + i) / i)
}

pub fn set_rep(m: usize) -> SetRep {
    let need = 3 * m.max(1) as u128;
    let p = (1..)
        .find(|&p| central_binomial(p) >= need)
        .expect("binomials grow");
    let count = 3 * m;
    let full: u64 = (1 << (2 * p)) - 1;
    let limit: u64 = 1 << (2 * p - 1);
    // Gosper's hack walks p-bit masks in increasing value, which is colex
    let mut low = Vec::new();
    let mut x: u64 = (1 << p) - 1;
    while x < limit && 2 * low.len() < count + 2 {
        low.push(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    let mut images = Vec::with_capacity(count + 3);
    for pair in low.chunks(2) {
        images.extend_from_slice(pair);
        images.extend(pair.iter().map(|&b| full & !b));
    }
    images.truncate(count);
    let inverse = images
        .iter()
        .enumerate()
        .map(|(i, &b)| (b, i + 1))
        .collect();
    SetRep {
        m,
        p,
        images,
        inverse,
    }
}

#[derive(Clone, Copy)]
struct Layout {
    n: usize,
    m: usize,
    p: usize,
}

impl Layout {
    fn c(self, j: usize) -> Vertex {
        j
    }
    fn w(self, l: usize) -> Vertex {
        self.m + l
    }
    /// `l == 3M` is `u_{3M+1}`.
    fn u(self, l: usize) -> Vertex {
        4 * self.m + l
    }
    fn top(self) -> Vertex {
        self.u(3 * self.m)
    }
    fn uprime(self) -> Vertex {
        7 * self.m + 1
    }
    fn z(self) -> Vertex {
        7 * self.m + 2
    }
    fn t(self, d: Part, i: usize) -> Vertex {
        7 * self.m + 3 + d.index() * 2 * self.n + 2 * i
    }
    fn f(self, d: Part, i: usize) -> Vertex {
        self.t(d, i) + 1
    }
    fn sep(self, d: Part, q: usize) -> Vertex {
        7 * self.m + 3 + 6 * self.n + d.index() * 2 * self.p + q
    }
    fn star(self, d: Part, q: usize) -> Vertex {
        self.sep(Part::Alpha, 0) + 6 * self.p + d.index() * 2 * self.p + q
    }
    fn sepw(self, q: usize) -> Vertex {
        self.sep(Part::Alpha, 0) + 12 * self.p + q
    }
    fn validity(self, d: Part, i: usize) -> Vertex {
        self.sepw(0) + 2 * self.p + d.index() * self.n + i
    }
    fn total(self) -> usize {
        self.validity(Part::Alpha, 0) + 3 * self.n
    }
}

fn layout(inst: &Partitioned3SatInstance, rep: &SetRep) -> Layout {
    Layout {
        n: inst.n_vars,
        m: inst.m(),
        p: rep.p,
    }
}

pub fn p3sat_to_gadget(inst: &Partitioned3SatInstance) -> Result<ReductionOutput> {
    let (n, m) = (inst.n_vars, inst.m());
    if m <= n {
        return Err(Error::InvalidInstance(format!(
            "need M > N (M = {m}, N = {n})"
        )));
    }
    let rep = set_rep(m);
    let l = layout(inst, &rep);
    let tp = 2 * l.p;
    let total = l.total();
    let in_rep = |ell: usize, q: usize| rep.mask(ell) >> q & 1 == 1;
    let mut e: Vec<(Vertex, Vertex)> = Vec::new();
    for d in Part::ALL {
        for q in 0..tp {
            for a in 0..3 * m {
                e.push((l.sep(d, q), l.u(a)));
                e.push((l.star(d, q), l.u(a)));
            }
        }
    }
    for q in 0..tp {
        for q2 in q + 1..tp {
            e.push((l.sepw(q), l.sepw(q2)));
        }
    }
    for d in Part::ALL {
        for i in 0..n {
            for q in 0..tp {
                if in_rep(2 * i + 2, q) {
                    e.push((l.t(d, i), l.sep(d, q)));
                    e.push((l.t(d, i), l.star(d, q)));
                    e.push((l.f(d, i), l.star(d, q)));
                } else {
                    e.push((l.validity(d, i), l.star(d, q)));
                }
                if in_rep(2 * i + 1, q) {
                    e.push((l.f(d, i), l.sep(d, q)));
                }
            }
            for d2 in Part::ALL {
                if d2 != d {
                    for q in 0..tp {
                        e.push((l.validity(d, i), l.star(d2, q)));
                    }
                }
            }
        }
    }
    for (j, clause) in inst.clauses.iter().enumerate() {
        for d in Part::ALL {
            let ell = clause.iter().find(|lit| lit.part == d).map(|lit| {
                if lit.positive {
                    2 * lit.var + 2
                } else {
                    2 * lit.var + 1
                }
            });
            for q in 0..tp {
                if ell.is_none_or(|ell| !in_rep(ell, q)) {
                    e.push((l.c(j), l.sep(d, q)));
                }
            }
        }
    }
    for a in 0..3 * m {
        for q in 0..tp {
            if in_rep(a + 1, q) {
                e.push((l.w(a), l.sepw(q)));
            } else {
                e.push((l.u(a), l.sepw(q)));
            }
        }
    }
    let is_u_or_a = |x: Vertex| {
        (l.u(0)..l.top()).contains(&x) || (l.t(Part::Alpha, 0)..l.sep(Part::Alpha, 0)).contains(&x)
    };
    for x in 0..total {
        if is_u_or_a(x) || x == l.top() || x == l.uprime() {
            continue;
        }
        e.push((l.top(), x));
        e.push((l.uprime(), x));
    }
    for x in (l.u(0)..l.top()).chain(l.t(Part::Alpha, 0)..l.sep(Part::Alpha, 0)) {
        e.push((l.z(), x));
    }
    // z-top and z-u' were added by the loop above
    let graph = Graph::from_edges(total, &e)?;

    let mut roles = Vec::with_capacity(total);
    roles.extend((0..m).map(Role::Clause));
    roles.extend((0..3 * m).map(Role::W));
    roles.extend((0..=3 * m).map(Role::U));
    roles.push(Role::UPrime(3 * m));
    roles.push(Role::Z);
    for d in Part::ALL {
        for i in 0..n {
            roles.push(Role::True(d, i));
            roles.push(Role::False(d, i));
        }
    }
    for d in Part::ALL {
        roles.extend((0..tp).map(|q| Role::Sep(d, q)));
    }
    for d in Part::ALL {
        roles.extend((0..tp).map(|q| Role::SepStar(d, q)));
    }
    roles.extend((0..tp).map(Role::SepW));
    for d in Part::ALL {
        roles.extend((0..n).map(|i| Role::Validity(d, i)));
    }
    debug_assert_eq!(roles.len(), total);

    let mut cover = VertexSet::from_iter(total, [l.top(), l.uprime(), l.z()]);
    for x in l.sep(Part::Alpha, 0)..l.validity(Part::Alpha, 0) {
        cover.insert(x);
    }
    check_cover(&graph, &cover)?;
    check_structure(&graph, l)?;
    Ok(ReductionOutput {
        graph,
        k: 3 * n + 3 * m,
        roles,
        flavor: Flavor::P3sat,
        cover: Some(cover),
    })
}

fn check_structure(g: &Graph, l: Layout) -> Result<()> {
    let fail = |msg: String| Err(Error::InvalidInstance(format!("p3sat gadget: {msg}")));
    let d = all_pairs_distances(g)?;
    if d.diameter() != 3 {
        return fail(format!("diameter {} instead of 3", d.diameter()));
    }
    let lits = l.t(Part::Alpha, 0)..l.sep(Part::Alpha, 0);
    if let Some(q) = (l.sep(Part::Alpha, 0)..l.sepw(0))
        .find(|&q| !g.neighbors(q).iter().any(|a| lits.contains(a)))
    {
        return fail(format!(
            "separator vertex {q} has no literal neighbour (N too small)"
        ));
    }
    let far = |x: Vertex| -> Vec<Vertex> { (0..g.n()).filter(|&y| d.get(x, y) > 2).collect() };
    for a in 0..3 * l.m {
        if far(l.u(a)) != vec![l.w(a)] {
            return fail(format!("B_2(u_{}) is not V minus w_{}", a + 1, a + 1));
        }
    }
    for dl in Part::ALL {
        for i in 0..l.n {
            if far(l.validity(dl, i)) != vec![l.t(dl, i), l.f(dl, i)] {
                return fail(format!(
                    "B_2(c^{dl}_{}) is not V minus its two literals",
                    i + 1
                ));
            }
        }
    }
    Ok(())
}

/// Positive map of size at most `3N + 3M` built from a satisfying
/// assignment. Sets the per-vertex rules make too large (those of `U` and
/// `u_{3M+1}, u'_{3M+1}` at radius 1 on small instances) are cut down to a
/// greedy hitting set of what they must separate.
pub fn p3sat_forward_map(
    inst: &Partitioned3SatInstance,
    assignment: &[bool],
) -> Result<TeachingMap> {
    if assignment.len() != 3 * inst.n_vars {
        return Err(Error::InvalidInstance(format!(
            "assignment has {} values, expected {}",
            assignment.len(),
            3 * inst.n_vars
        )));
    }
    if let Some(j) = inst.first_unsatisfied(assignment) {
        return Err(Error::Unsatisfied(j + 1));
    }
    let rep = set_rep(inst.m());
    if 2 * rep.p + 3 > 3 * inst.n_vars {
        return Err(Error::InvalidInstance(format!(
            "2p + 3 = {} exceeds 3N = {}",
            2 * rep.p + 3,
            3 * inst.n_vars
        )));
    }
    let out = p3sat_to_gadget(inst)?;
    let l = layout(inst, &rep);
    let n = inst.n_vars;
    let total = l.total();
    let space = BallSpace::new(out.graph)?;
    let span = |r: std::ops::Range<Vertex>| VertexSet::from_iter(total, r);
    let w_all = span(l.w(0)..l.u(0));
    let u_all = span(l.u(0)..l.top());
    let a_all = span(l.t(Part::Alpha, 0)..l.sep(Part::Alpha, 0));
    let vw = span(l.sepw(0)..l.validity(Part::Alpha, 0));
    let mut clauses = span(l.c(0)..l.w(0));
    clauses.union_with(&span(l.validity(Part::Alpha, 0)..total));
    let pi = VertexSet::from_iter(
        total,
        Part::ALL.iter().flat_map(|&d| {
            (0..n).map(move |i| {
                if assignment[d.index() * n + i] {
                    l.t(d, i)
                } else {
                    l.f(d, i)
                }
            })
        }),
    );
    let b1 = |x: Vertex| space.ball(x, 1);
    let b2 = |x: Vertex| space.ball(x, 2);
    let plus = |s: VertexSet, xs: &[Vertex]| {
        let mut s = s;
        for &x in xs {
            s.insert(x);
        }
        s
    };
    let part_of_a = |x: Vertex| Part::ALL[(x - l.t(Part::Alpha, 0)) / (2 * n)];
    let rule = |x: Vertex, r: u32| -> Option<VertexSet> {
        if r == 0 {
            return Some(VertexSet::singleton(total, x));
        }
        if r > 2 {
            return None;
        }
        let one = r == 1;
        let t = if x < l.w(0) || x >= l.validity(Part::Alpha, 0) {
            // C and the C^δ
            if one {
                b1(x).clone()
            } else {
                plus(b2(x).intersection(&a_all), &[x, l.w(0)])
            }
        } else if x < l.u(0) {
            if one {
                b1(x).clone()
            } else {
                plus(b2(x).intersection(&u_all), &[x, l.z(), l.top(), l.uprime()])
            }
        } else if x <= l.uprime() {
            if one {
                b1(x).difference(&clauses)
            } else if x == l.uprime() {
                return None;
            } else {
                b2(x).intersection(&w_all).union(&pi)
            }
        } else if x == l.z() {
            if !one {
                return None;
            }
            VertexSet::from_iter(total, [x, l.u(0)])
        } else if x < l.sep(Part::Alpha, 0) {
            let d = part_of_a(x);
            if one {
                b1(x).clone()
            } else {
                let others: Vec<Vertex> = Part::ALL
                    .iter()
                    .filter(|&&o| o != d)
                    .map(|&o| l.t(o, 0))
                    .collect();
                plus(b1(x).clone(), &[l.u(0), others[0], others[1]])
            }
        } else if x < l.sepw(0) {
            let base = b1(x).difference(&u_all);
            if one {
                base
            } else {
                plus(base, &[l.w(0), l.z()])
            }
        } else if one {
            plus(
                vw.union(&b1(x).intersection(&u_all)),
                &[l.top(), l.uprime()],
            )
        } else {
            plus(vw.union(&u_all), &[l.top(), l.uprime(), l.z()])
        };
        Some(t)
    };
    let mut tm = map_from_rule(&space, rule)?;
    shrink_oversized(space.family.classes(), &mut tm, out.k)?;
    Ok(tm)
}

/// Reads an assignment off the teaching set of `B_2(u_{3M+1}) = V`:
/// `x^δ_i` is true iff that set meets `{t^δ_{2i}, f^δ_{2i-1}}` in `t` only.
pub fn p3sat_extract_assignment(tm: &TeachingMap, out: &ReductionOutput) -> Result<Vec<bool>> {
    let top = out
        .roles
        .iter()
        .enumerate()
        .filter_map(|(v, r)| match r {
            Role::U(a) => Some((*a, v)),
            _ => None,
        })
        .max()
        .map(|(_, v)| v)
        .ok_or_else(|| Error::InvalidWitness("roles name no u vertex".into()))?;
    let n = Part::ALL
        .iter()
        .map(|&d| {
            out.roles
                .iter()
                .filter(|r| matches!(r, Role::True(p, _) if *p == d))
                .count()
        })
        .max()
        .unwrap_or(0);
    let space = BallSpace::new(out.graph.clone())?;
    if tm.len() != space.family.len() {
        return Err(Error::MapSizeMismatch {
            expected: space.family.len(),
            got: tm.len(),
        });
    }
    let t_full = &tm.get(space.family.class_of(top, 2)).pos;
    let mut assignment = vec![false; 3 * n];
    for d in Part::ALL {
        for i in 0..n {
            let find = |role: Role| {
                out.vertex_of(role)
                    .ok_or_else(|| Error::InvalidWitness(format!("no vertex with role {role}")))
            };
            let (tv, fv) = (find(Role::True(d, i))?, find(Role::False(d, i))?);
            match (t_full.contains(tv), t_full.contains(fv)) {
                (false, false) => {
                    return Err(Error::InvalidWitness(format!(
                        "T(V) holds neither literal of x^{d}_{}",
                        i + 1
                    )))
                }
                (has_t, has_f) => assignment[d.index() * n + i] = has_t && !has_f,
            }
        }
    }
    Ok(assignment)
}
