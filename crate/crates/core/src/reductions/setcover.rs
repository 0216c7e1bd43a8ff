//! Set Cover gadgets. Element vertices `v_i`, set vertices `s_j`, then
//! `u_1..u_{m+1}`, `w_1..w_m`, and `z` or `v*` last for the flavors that
//! need an extra vertex.

use super::{map_from_rule, Flavor, ReductionOutput, Role};
use crate::concept::TeachingMap;
use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_usizes, Graph};
use crate::metric::BallSpace;
use crate::vset::{Vertex, VertexSet};

/// Elements are `0..n` internally and `1..=n` in text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
    pub t: usize,
}

impl SetCoverInstance {
    pub fn new(n: usize, sets: Vec<Vec<usize>>, t: usize) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidInstance("empty set family".into()));
        }
        let mut covered = vec![false; n];
        let mut clean = Vec::with_capacity(sets.len());
        for (j, s) in sets.into_iter().enumerate() {
            let mut s = s;
            s.sort_unstable();
            s.dedup();
            if let Some(&e) = s.iter().find(|&&e| e >= n) {
                return Err(Error::InvalidInstance(format!(
                    "set {} has element {} > n = {n}",
                    j + 1,
                    e + 1
                )));
            }
            for &e in &s {
                covered[e] = true;
            }
            clean.push(s);
        }
        if let Some(e) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidInstance(format!(
                "element {} lies in no set",
                e + 1
            )));
        }
        Ok(SetCoverInstance { n, sets: clean, t })
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// `n m t`, then one line of 1-based element ids per set (`-` if empty).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing header `n m t`".into(),
        })?;
        let [n, m, t] = parse_usizes(hl, header)?[..] else {
            return Err(Error::Parse {
                line: hl,
                msg: format!("header must be `n m t`, got `{header}`"),
            });
        };
        let mut sets = Vec::with_capacity(m);
        for (ln, line) in lines {
            let ids = if line == "-" {
                Vec::new()
            } else {
                parse_usizes(ln, line)?
            };
            if ids.iter().any(|&e| e == 0 || e > n) {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("element ids must lie in 1..={n}"),
                });
            }
            sets.push(ids.into_iter().map(|e| e - 1).collect());
        }
        if sets.len() != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header announces {m} sets, found {}", sets.len()),
            });
        }
        Self::new(n, sets, t)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.n, self.m(), self.t);
        for set in &self.sets {
            if set.is_empty() {
                s.push_str("-\n");
            } else {
                let ids: Vec<String> = set.iter().map(|e| (e + 1).to_string()).collect();
                s.push_str(&ids.join(" "));
                s.push('\n');
            }
        }
        s
    }

    /// How many sets contain each element.
    pub fn frequencies(&self) -> Vec<usize> {
        let mut f = vec![0; self.n];
        for s in &self.sets {
            for &e in s {
                f[e] += 1;
            }
        }
        f
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut hit = vec![false; self.n];
        for &j in chosen {
            let Some(s) = self.sets.get(j) else {
                return false;
            };
            for &e in s {
                hit[e] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    /// Smallest cover by brute force; `None` for more than 24 sets.
    pub fn min_cover(&self) -> Option<Vec<usize>> {
        let m = self.m();
        if m > 24 {
            return None;
        }
        let masks: Vec<u64> = self
            .sets
            .iter()
            .map(|s| s.iter().fold(0u64, |a, &e| a | 1 << e))
            .collect();
        if self.n > 64 {
            return None;
        }
        let goal = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        (0u32..1 << m)
            .filter(|sel| {
                (0..m)
                    .filter(|j| sel >> j & 1 == 1)
                    .fold(0, |a, j| a | masks[j])
                    == goal
            })
            .min_by_key(|sel| (sel.count_ones(), *sel))
            .map(|sel| (0..m).filter(|j| sel >> j & 1 == 1).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreprocessStep {
    /// Original element lying in every set.
    RemovedElement(usize),
    /// Copy of original set `source`, appended as set `index`.
    DuplicatedSet { source: usize, index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preprocessed {
    pub instance: SetCoverInstance,
    pub steps: Vec<PreprocessStep>,
    /// New element id to original element id.
    pub elem_origin: Vec<usize>,
    /// New set index to original set index.
    pub set_origin: Vec<usize>,
}

impl Preprocessed {
    /// A cover of the original instance, as a cover of the new one. Original
    /// sets keep their indices.
    pub fn lift_cover(&self, cover: &[usize]) -> Result<Vec<usize>> {
        let orig_m = self
            .set_origin
            .iter()
            .enumerate()
            .filter(|&(j, &o)| j == o)
            .count();
        if cover.iter().any(|&j| j >= orig_m) {
            return Err(Error::InvalidCover("set index out of range".into()));
        }
        Ok(cover.to_vec())
    }

    /// A cover of the new instance, mapped back to original set indices.
    pub fn project_cover(&self, cover: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = cover.iter().map(|&j| self.set_origin[j]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Removes elements present in every set, then duplicates sets until every
/// element lies in at most `m - 2` sets, and, with `need_m_gt_n`, until
/// `m > n`. Minimum cover size is unchanged.
pub fn preprocess_setcover(inst: &SetCoverInstance, need_m_gt_n: bool) -> Result<Preprocessed> {
    let m0 = inst.m();
    if m0 == 0 {
        return Err(Error::InvalidInstance("empty set family".into()));
    }
    let freq = inst.frequencies();
    let mut steps = Vec::new();
    let mut elem_origin = Vec::new();
    let mut new_id = vec![usize::MAX; inst.n];
    for e in 0..inst.n {
        if freq[e] == m0 {
            steps.push(PreprocessStep::RemovedElement(e));
        } else {
            new_id[e] = elem_origin.len();
            elem_origin.push(e);
        }
    }
    let mut sets: Vec<Vec<usize>> = inst
        .sets
        .iter()
        .map(|s| {
            s.iter()
                .filter(|&&e| new_id[e] != usize::MAX)
                .map(|&e| new_id[e])
                .collect()
        })
        .collect();
    let mut set_origin: Vec<usize> = (0..m0).collect();
    let n = elem_origin.len();
    // deficits never shrink, so each pass settles at least one element
    loop {
        let m = sets.len();
        let mut freq = vec![0usize; n];
        for s in &sets {
            for &e in s {
                freq[e] += 1;
            }
        }
        let Some(e) = (0..n).find(|&e| freq[e] + 1 == m) else {
            break;
        };
        let missing = sets
            .iter()
            .position(|s| !s.contains(&e))
            .expect("one set misses e");
        steps.push(PreprocessStep::DuplicatedSet {
            source: set_origin[missing],
            index: m,
        });
        sets.push(sets[missing].clone());
        set_origin.push(set_origin[missing]);
    }
    while need_m_gt_n && sets.len() <= n {
        let m = sets.len();
        steps.push(PreprocessStep::DuplicatedSet {
            source: set_origin[0],
            index: m,
        });
        sets.push(sets[0].clone());
        set_origin.push(set_origin[0]);
    }
    Ok(Preprocessed {
        instance: SetCoverInstance::new(n, sets, inst.t)?,
        steps,
        elem_origin,
        set_origin,
    })
}

/// Vertex numbering of the gadgets.
#[derive(Clone, Copy)]
struct Layout {
    n: usize,
    m: usize,
}

impl Layout {
    fn v(self, i: usize) -> Vertex {
        i
    }
    fn s(self, j: usize) -> Vertex {
        self.n + j
    }
    /// `j == m` is `u_{m+1}`.
    fn u(self, j: usize) -> Vertex {
        self.n + self.m + j
    }
    fn w(self, j: usize) -> Vertex {
        self.n + 2 * self.m + 1 + j
    }
    fn extra(self) -> Vertex {
        self.n + 3 * self.m + 1
    }
    fn top(self) -> Vertex {
        self.u(self.m)
    }
    fn group(self, total: usize, len: usize, at: fn(Self, usize) -> Vertex) -> VertexSet {
        VertexSet::from_iter(total, (0..len).map(|i| at(self, i)))
    }
}

fn check_preconditions(inst: &SetCoverInstance, flavor: Flavor) -> Result<()> {
    let m = inst.m();
    if flavor == Flavor::P3sat {
        return Err(Error::Unsupported("p3sat is not a Set Cover flavor".into()));
    }
    if let Some(e) = inst.frequencies().iter().position(|&f| f + 2 > m) {
        return Err(Error::InvalidInstance(format!(
            "element {} lies in more than m - 2 sets; preprocess first",
            e + 1
        )));
    }
    if flavor != Flavor::Split && m <= inst.n {
        return Err(Error::InvalidInstance(format!(
            "{flavor} gadget needs m > n (m = {m}, n = {})",
            inst.n
        )));
    }
    Ok(())
}

/// Builds the gadget for a preprocessed instance and checks the structure
/// the flavor promises.
pub fn setcover_to_gadget(inst: &SetCoverInstance, flavor: Flavor) -> Result<ReductionOutput> {
    check_preconditions(inst, flavor)?;
    let (n, m) = (inst.n, inst.m());
    let l = Layout { n, m };
    let extra = flavor != Flavor::Split;
    let total = n + 3 * m + 1 + usize::from(extra);
    let mut edges = Vec::new();
    for (j, s) in inst.sets.iter().enumerate() {
        for i in 0..n {
            if !s.contains(&i) {
                edges.push((l.v(i), l.s(j)));
            }
        }
    }
    for j in 0..m {
        for w in 0..m {
            if j != w {
                edges.push((l.u(j), l.w(w)));
            }
        }
        edges.push((l.top(), l.w(j)));
    }
    match flavor {
        Flavor::Split | Flavor::Cobipartite => {
            for a in 0..=m {
                for j in 0..m {
                    edges.push((l.u(a), l.s(j)));
                }
            }
            for i in 0..n {
                for j in 0..m {
                    edges.push((l.v(i), l.w(j)));
                }
            }
            let uv: Vec<Vertex> = (0..=m)
                .map(|j| l.u(j))
                .chain((0..n).map(|i| l.v(i)))
                .collect();
            clique(&uv, &mut edges);
            if flavor == Flavor::Cobipartite {
                let ws: Vec<Vertex> = (0..m)
                    .map(|j| l.w(j))
                    .chain((0..m).map(|j| l.s(j)))
                    .collect();
                clique(&ws, &mut edges);
                for x in (0..n)
                    .map(|i| l.v(i))
                    .chain((0..m).map(|j| l.w(j)))
                    .chain((0..=m).map(|j| l.u(j)))
                {
                    edges.push((l.extra(), x));
                }
            }
        }
        Flavor::Bipartite => {
            for a in 0..=m {
                for i in 0..n {
                    edges.push((l.u(a), l.v(i)));
                }
                edges.push((l.extra(), l.u(a)));
            }
            for j in 0..m {
                edges.push((l.extra(), l.s(j)));
            }
        }
        Flavor::P3sat => unreachable!(),
    }
    let graph = Graph::from_edges(total, &edges)?;
    let mut roles: Vec<Role> = (0..n).map(Role::Elem).collect();
    roles.extend((0..m).map(Role::Set));
    roles.extend((0..=m).map(Role::U));
    roles.extend((0..m).map(Role::W));
    if extra {
        roles.push(if flavor == Flavor::Cobipartite {
            Role::VStar
        } else {
            Role::Z
        });
    }
    validate(&graph, l, flavor, total)?;
    Ok(ReductionOutput {
        graph,
        k: flavor.setcover_budget(m, inst.t)?,
        roles,
        flavor,
        cover: None,
    })
}

fn clique(vs: &[Vertex], edges: &mut Vec<(Vertex, Vertex)>) {
    for (a, &x) in vs.iter().enumerate() {
        for &y in &vs[a + 1..] {
            edges.push((x, y));
        }
    }
}

fn is_independent(g: &Graph, vs: &VertexSet) -> bool {
    vs.iter()
        .all(|x| g.neighbors(x).iter().all(|&y| !vs.contains(y)))
}

fn is_clique(g: &Graph, vs: &VertexSet) -> bool {
    vs.iter()
        .all(|x| vs.iter().all(|y| x == y || g.has_edge(x, y)))
}

fn validate(g: &Graph, l: Layout, flavor: Flavor, total: usize) -> Result<()> {
    let fail = |msg: &str| Err(Error::InvalidInstance(format!("{flavor} gadget: {msg}")));
    let (n, m) = (l.n, l.m);
    let s = l.group(total, m, Layout::s);
    let w = l.group(total, m, Layout::w);
    let u = l.group(total, m + 1, Layout::u);
    let v = l.group(total, n, Layout::v);
    match flavor {
        Flavor::Split | Flavor::Cobipartite => {
            if g.degree(l.top()) + 1 != total {
                return fail("u_{m+1} is not universal");
            }
            if flavor == Flavor::Split && !is_independent(g, &w.union(&s)) {
                return fail("W ∪ S is not independent");
            }
            if flavor == Flavor::Cobipartite {
                let mut a = u.union(&v);
                a.insert(l.extra());
                if !is_clique(g, &w.union(&s)) || !is_clique(g, &a) {
                    return fail("not co-bipartite");
                }
            }
        }
        Flavor::Bipartite => {
            let mut side = w.union(&v);
            side.insert(l.extra());
            if !is_independent(g, &side) || !is_independent(g, &u.union(&s)) {
                return fail("(W ∪ V ∪ {z}, U ∪ S) is not a bipartition");
            }
            let d = crate::metric::all_pairs_distances(g)?;
            if d.diameter() != 3 {
                return fail(&format!("diameter {} instead of 3", d.diameter()));
            }
        }
        Flavor::P3sat => unreachable!(),
    }
    Ok(())
}

/// Witness map for a cover of size at most `t`, over the balls of the
/// flavor's gadget.
pub fn setcover_forward_map(
    inst: &SetCoverInstance,
    cover: &[usize],
    flavor: Flavor,
) -> Result<TeachingMap> {
    if cover.len() > inst.t {
        return Err(Error::InvalidCover(format!(
            "{} sets exceed budget t = {}",
            cover.len(),
            inst.t
        )));
    }
    if !inst.is_cover(cover) {
        return Err(Error::InvalidCover(
            "chosen sets do not cover every element".into(),
        ));
    }
    let out = setcover_to_gadget(inst, flavor)?;
    let space = BallSpace::new(out.graph)?;
    let (n, m) = (inst.n, inst.m());
    let l = Layout { n, m };
    let total = space.n();
    let s_all = l.group(total, m, Layout::s);
    let w_all = l.group(total, m, Layout::w);
    let u_all = l.group(total, m + 1, Layout::u);
    let u_low = l.group(total, m, Layout::u);
    let v_all = l.group(total, n, Layout::v);
    let chosen = VertexSet::from_iter(total, cover.iter().map(|&j| l.s(j)));
    let b1 = |x: Vertex| space.ball(x, 1).clone();
    let with = |mut a: VertexSet, xs: &[Vertex]| {
        for &x in xs {
            a.insert(x);
        }
        a
    };
    let kind = |x: Vertex| -> char {
        if x < n {
            'v'
        } else if x < n + m {
            's'
        } else if x < n + 2 * m + 1 {
            'u'
        } else if x < n + 3 * m + 1 {
            'w'
        } else {
            'x'
        }
    };
    let top = l.top();
    let rule = |x: Vertex, r: u32| -> Option<VertexSet> {
        if r == 0 {
            return Some(VertexSet::singleton(total, x));
        }
        let k = kind(x);
        match (flavor, r) {
            (Flavor::Split, 1) => Some(match k {
                'v' => b1(x).intersection(&s_all),
                's' | 'w' => VertexSet::from_iter(total, [x, top]),
                _ => chosen.union(&b1(x).intersection(&w_all)),
            }),
            (Flavor::Cobipartite, 1) => {
                let vs = l.extra();
                Some(match k {
                    'x' => VertexSet::from_iter(total, [vs, top]),
                    'v' => with(u_all.union(&b1(x).intersection(&s_all)), &[vs]),
                    's' => with(b1(x).intersection(&v_all), &[x, top]),
                    'w' => with(s_all.union(&b1(x).intersection(&u_all)), &[vs]),
                    _ => with(
                        chosen.union(&u_low).union(&b1(x).intersection(&w_all)),
                        &[vs],
                    ),
                })
            }
            (Flavor::Bipartite, 1 | 2) => {
                let z = l.extra();
                let one = r == 1;
                match k {
                    'v' => Some(with(
                        b1(x).intersection(&s_all),
                        &[if one { x } else { l.w(0) }],
                    )),
                    'x' => one.then(|| with(s_all.clone(), &[z])),
                    's' => Some(with(
                        b1(x).intersection(&v_all),
                        &[if one { x } else { top }, z],
                    )),
                    'w' => {
                        let base = with(b1(x).intersection(&u_low), &[x]);
                        Some(if one { base } else { with(base, &[z]) })
                    }
                    _ => Some(if one {
                        with(b1(x).intersection(&w_all), &[x])
                    } else {
                        chosen.union(&b1(x).intersection(&w_all))
                    }),
                }
            }
            _ => None,
        }
    };
    map_from_rule(&space, rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::{balls_as_concept_class, verify};

    fn inst(n: usize, sets: &[&[usize]], t: usize) -> SetCoverInstance {
        SetCoverInstance::new(n, sets.iter().map(|s| s.to_vec()).collect(), t).unwrap()
    }

    #[test]
    fn parse_round_trip() {
        let text = "3 3 2\n1 2\n2 3\n-\n";
        let i = SetCoverInstance::parse(text).unwrap();
        assert_eq!(i.sets, vec![vec![0, 1], vec![1, 2], vec![]]);
        assert_eq!(SetCoverInstance::parse(&i.to_text()).unwrap(), i);
        assert!(SetCoverInstance::parse("2 1 1\n1\n").is_err());
        assert!(SetCoverInstance::parse("2 1 1\n1 3\n").is_err());
        assert!(SetCoverInstance::parse("0 0 1\n").is_err());
    }

    #[test]
    fn preprocessing() {
        // element 1 in all sets, element 2 in m - 1 sets
        let i = inst(3, &[&[0, 1], &[0, 2], &[0, 1]], 2);
        let p = preprocess_setcover(&i, false).unwrap();
        assert_eq!(p.steps[0], PreprocessStep::RemovedElement(0));
        assert_eq!(p.instance.n, 2);
        assert!(p.steps.contains(&PreprocessStep::DuplicatedSet {
            source: 1,
            index: 3
        }));
        let m = p.instance.m();
        assert!(p.instance.frequencies().iter().all(|&f| f + 2 <= m));
        assert_eq!(
            p.instance.min_cover().unwrap().len(),
            i.min_cover().unwrap().len()
        );
        let ok = inst(2, &[&[0], &[1], &[0], &[1]], 1);
        let q = preprocess_setcover(&ok, false).unwrap();
        assert!(q.steps.is_empty());
        assert_eq!(q.instance, ok);
        let r = preprocess_setcover(&ok, true).unwrap();
        assert_eq!(r.instance.m(), 4);
        let big = preprocess_setcover(&inst(3, &[&[0], &[1], &[2]], 1), true).unwrap();
        assert_eq!(big.instance.m(), 4);
        assert_eq!(big.project_cover(&[3, 1]), vec![0, 1]);
    }

    #[test]
    fn split_shape() {
        let i = inst(2, &[&[0], &[1], &[]], 1);
        let out = setcover_to_gadget(&i, Flavor::Split).unwrap();
        assert_eq!(out.graph.n(), 12);
        assert_eq!(out.k, 4);
        let top = 2 + 3 + 3;
        assert_eq!(out.roles[top], Role::U(3));
        assert_eq!(out.graph.degree(top), 11);
        // 1 ∈ S_1, so v_1 s_1 is absent
        assert!(!out.graph.has_edge(0, 2));
        assert!(out.graph.has_edge(0, 3));
    }

    #[test]
    fn rejects_unprocessed() {
        let i = inst(2, &[&[0, 1], &[0]], 1);
        assert!(setcover_to_gadget(&i, Flavor::Split).is_err());
        let j = inst(3, &[&[0], &[1], &[2]], 1);
        assert!(setcover_to_gadget(&j, Flavor::Bipartite).is_err());
        assert!(setcover_to_gadget(&j, Flavor::Split).is_ok());
    }

    #[test]
    fn forward_maps_verify() {
        // m = n + 1 exactly for the second instance
        for (i, cover) in [
            (inst(2, &[&[0], &[1], &[], &[0]], 2), vec![0, 1]),
            (inst(2, &[&[0], &[1], &[]], 2), vec![0, 1]),
            (inst(3, &[&[0, 1], &[2], &[1], &[0]], 2), vec![0, 1]),
        ] {
            forward_all(&i, &cover);
        }
        let i = inst(2, &[&[0], &[1], &[], &[0]], 2);
        assert!(setcover_forward_map(&i, &[0], Flavor::Split).is_err());
        assert!(setcover_forward_map(&i, &[0, 1, 3], Flavor::Split).is_err());
    }

    fn forward_all(i: &SetCoverInstance, cover: &[usize]) {
        for flavor in [Flavor::Split, Flavor::Cobipartite, Flavor::Bipartite] {
            let out = setcover_to_gadget(i, flavor).unwrap();
            let cc = balls_as_concept_class(&BallSpace::new(out.graph.clone()).unwrap().family);
            let tm = setcover_forward_map(i, cover, flavor).unwrap();
            let rep = verify(&cc, &tm, true).unwrap();
            assert!(
                rep.ok,
                "{flavor}: {:?}",
                &rep.violations[..rep.violations.len().min(3)]
            );
            assert!(rep.size <= out.k, "{flavor}: {} > {}", rep.size, out.k);
        }
    }

    #[test]
    fn bipartite_witnesses() {
        let i = inst(2, &[&[0], &[1], &[], &[0]], 2);
        let out = setcover_to_gadget(&i, Flavor::Bipartite).unwrap();
        let space = BallSpace::new(out.graph.clone()).unwrap();
        let tm = setcover_forward_map(&i, &[0, 1], Flavor::Bipartite).unwrap();
        let z = out.vertex_of(Role::Z).unwrap();
        let t = &tm.get(space.family.class_of(z, 1)).pos;
        let mut want: Vec<Vertex> = (2..6).collect();
        want.push(z);
        assert_eq!(t.to_vec(), want);
        let split = setcover_to_gadget(&i, Flavor::Split).unwrap();
        let sp = BallSpace::new(split.graph.clone()).unwrap();
        let tm = setcover_forward_map(&i, &[0, 1], Flavor::Split).unwrap();
        let top = split.vertex_of(Role::U(4)).unwrap();
        let w0 = split.vertex_of(Role::W(0)).unwrap();
        assert_eq!(
            tm.get(sp.family.class_of(w0, 1)).pos.to_vec(),
            vec![top, w0]
        );
    }
}
