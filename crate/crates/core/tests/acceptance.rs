//! Acceptance run: one PASS/FAIL line per criterion, with wall time against
//! its limit. Exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nctb_core::analysis::vc_dimension_of_balls;
use nctb_core::concept::{balls_as_concept_class, verify, verify_approx, ConceptClass};
use nctb_core::constructors::{
    cactus_nctm, cycle_nctm, diam2_nctm, hyperbolic_approx_nctm_plus, interval_nctm_plus,
    tree_nctm_plus,
};
use nctb_core::generators::{
    cycle, edgeless, octahedron, path, random_cactus, random_connected, random_interval,
    random_tree,
};
use nctb_core::kernel::{kernel_bound, kernelize};
use nctb_core::metric::{ball, hausdorff_distance, BallFamily, BallSpace};
use nctb_core::reductions::{
    p3sat_extract_assignment, p3sat_forward_map, p3sat_to_gadget, preprocess_setcover,
    setcover_forward_map, setcover_to_gadget, Flavor, Partitioned3SatInstance, SetCoverInstance,
};
use nctb_core::solver::{nctd_decision, nctd_exact, Answer, Status};
use nctb_core::structure::{check_cover, CoverMode};
use nctb_core::Graph;

type Outcome = Result<String, String>;

/// Id, name, time limit in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn balls(g: &Graph) -> ConceptClass {
    balls_as_concept_class(&BallFamily::enumerate_by_component(g))
}

fn decide(
    cc: &ConceptClass,
    k: usize,
    positive: bool,
    budget: u64,
) -> Result<Option<bool>, String> {
    Ok(match ok(nctd_decision(cc, k, positive, budget))?.answer {
        Answer::Yes(_) => Some(true),
        Answer::No => Some(false),
        Answer::BudgetExceeded => None,
    })
}

fn c1_cycle_nctd() -> Outcome {
    let mut notes = Vec::new();
    for n in [6, 7, 8] {
        let t = Instant::now();
        let res = ok(nctd_exact(&balls(&ok(cycle(n))?), false, n, 10_000_000))?;
        let el = t.elapsed();
        ensure!(
            res.status == Status::Optimal && res.k == 2,
            "C{n}: status {:?}, k {}",
            res.status,
            res.k
        );
        ensure!(el < Duration::from_secs(30), "C{n} took {el:?}");
        notes.push(format!(
            "C{n}=2 ({} nodes, {:.2}s)",
            res.nodes,
            el.as_secs_f64()
        ));
    }
    Ok(notes.join(", "))
}

fn c2_cycle_positive_lower_bound() -> Outcome {
    let mut notes = Vec::new();
    for (n, k) in [(4, 1), (6, 2)] {
        let t = Instant::now();
        let ans = decide(&balls(&ok(cycle(n))?), k, true, 10_000_000)?;
        let el = t.elapsed();
        ensure!(ans == Some(false), "C{n} at k={k}: {ans:?}");
        ensure!(el < Duration::from_secs(60), "C{n} took {el:?}");
        notes.push(format!("C{n} k={k} NO"));
    }
    Ok(notes.join(", "))
}

fn c3_edgeless() -> Outcome {
    let yes = decide(&balls(&ok(edgeless(3))?), 1, true, 1_000_000)?;
    let no = decide(&balls(&ok(path(2))?), 1, true, 1_000_000)?;
    ensure!(yes == Some(true), "edgeless(3): {yes:?}");
    ensure!(no == Some(false), "K2: {no:?}");
    Ok("edgeless(3) YES, K2 NO".into())
}

fn check_map(
    space: &BallSpace,
    tm: &nctb_core::concept::TeachingMap,
    positive: bool,
    max: usize,
    what: &str,
) -> Result<(), String> {
    let rep = ok(verify(&balls_as_concept_class(&space.family), tm, positive))?;
    ensure!(rep.ok, "{what}: {} violations", rep.violations.len());
    ensure!(rep.size <= max, "{what}: size {} > {max}", rep.size);
    Ok(())
}

fn c4_constructors() -> Outcome {
    for i in 0..200u64 {
        let space = ok(BallSpace::new(ok(random_tree(
            1 + (i as usize * 13) % 60,
            i,
        ))?))?;
        check_map(
            &space,
            &ok(tree_nctm_plus(&space))?,
            true,
            2,
            &format!("tree seed {i}"),
        )?;
    }
    for i in 0..100u64 {
        let (g, rep) = ok(random_interval(1 + (i as usize * 11) % 40, i))?;
        let space = ok(BallSpace::new(g))?;
        check_map(
            &space,
            &ok(interval_nctm_plus(&space, &rep))?,
            true,
            2,
            &format!("interval seed {i}"),
        )?;
    }
    for n in 3..=30 {
        let (space, tm) = ok(cycle_nctm(n))?;
        check_map(&space, &tm, false, 2, &format!("C{n}"))?;
    }
    for i in 0..100u64 {
        let space = ok(BallSpace::new(ok(random_cactus(
            1 + (i as usize * 7) % 40,
            i,
        ))?))?;
        check_map(
            &space,
            &ok(cactus_nctm(&space))?,
            false,
            4,
            &format!("cactus seed {i}"),
        )?;
    }
    Ok("200 trees, 100 interval graphs, C3..C30, 100 cacti".into())
}

fn c5_vc_dimension() -> Outcome {
    let vc = |g: &Graph| vc_dimension_of_balls(&BallFamily::enumerate_by_component(g), 5);
    for i in 0..200u64 {
        let d = vc(&ok(random_tree(1 + (i as usize * 13) % 60, i))?);
        ensure!(d.dim <= 2, "tree seed {i}: {}", d.dim);
    }
    for i in 0..100u64 {
        let d = vc(&ok(random_interval(1 + (i as usize * 11) % 40, i))?.0);
        ensure!(d.dim <= 2, "interval seed {i}: {}", d.dim);
    }
    for n in [6, 7] {
        let d = vc(&ok(cycle(n))?);
        ensure!(d.dim == 3 && !d.possibly_larger, "C{n}: {d:?}");
    }
    for i in 0..100u64 {
        let d = vc(&ok(random_cactus(1 + (i as usize * 7) % 40, i))?);
        ensure!(d.dim <= 3, "cactus seed {i}: {}", d.dim);
    }
    Ok("trees/intervals <= 2, C6=C7=3, cacti <= 3".into())
}

fn c6_octahedron() -> Outcome {
    let space = ok(BallSpace::new(ok(octahedron(3))?))?;
    let rep = ok(verify(
        &balls_as_concept_class(&space.family),
        &ok(diam2_nctm(&space))?,
        false,
    ))?;
    ensure!(
        rep.ok && rep.size == 2,
        "signed map: ok={} size={}",
        rep.ok,
        rep.size
    );
    let d = ok(nctd_decision(
        &balls_as_concept_class(&space.family),
        5,
        true,
        50_000_000,
    ))?;
    ensure!(d.answer == Answer::No, "positive k=5: {:?}", d.answer);
    Ok(format!(
        "signed size 2, positive k=5 NO ({} nodes)",
        d.nodes
    ))
}

/// Every multiset of m ≤ 3 subsets of [n], n ≤ 2, that covers [n].
fn small_setcover_instances() -> Vec<(usize, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    for n in 0..=2usize {
        let subsets = 1usize << n;
        for m in 1..=3usize {
            let mut pick = vec![0usize; m];
            loop {
                let union = pick.iter().fold(0, |a, &s| a | s);
                if union == subsets - 1 {
                    let sets = pick
                        .iter()
                        .map(|&s| (0..n).filter(|i| s >> i & 1 == 1).collect())
                        .collect();
                    out.push((n, sets));
                }
                // next non-decreasing tuple
                let Some(i) = (0..m).rev().find(|&i| pick[i] + 1 < subsets) else {
                    break;
                };
                let v = pick[i] + 1;
                for p in &mut pick[i..] {
                    *p = v;
                }
            }
        }
    }
    out
}

fn c7_setcover() -> Outcome {
    let mut count = 0;
    let mut yes = 0;
    for (n, sets) in small_setcover_instances() {
        for t in [1, 2] {
            let inst = ok(SetCoverInstance::new(n, sets.clone(), t))?;
            let pre = ok(preprocess_setcover(&inst, false))?;
            let out = ok(setcover_to_gadget(&pre.instance, Flavor::Split))?;
            let k = ok(Flavor::Split.setcover_budget(pre.instance.m(), t))?;
            ensure!(out.k == k, "budget mismatch");
            let coverable = inst.min_cover().is_some_and(|c| c.len() <= t);
            let ans = decide(&balls(&out.graph), k, true, 10_000_000)?;
            ensure!(
                ans == Some(coverable),
                "n={n} sets={sets:?} t={t}: cover {coverable}, solver {ans:?}"
            );
            count += 1;
            yes += coverable as usize;
        }
    }
    // forward maps on a fixture, all flavors
    let fixture = ok(SetCoverInstance::new(
        3,
        vec![vec![0, 1], vec![1, 2], vec![0], vec![2]],
        2,
    ))?;
    let cover = fixture.min_cover().ok_or("fixture has no cover")?;
    for flavor in [Flavor::Split, Flavor::Cobipartite, Flavor::Bipartite] {
        let pre = ok(preprocess_setcover(&fixture, flavor != Flavor::Split))?;
        let out = ok(setcover_to_gadget(&pre.instance, flavor))?;
        let lifted = ok(pre.lift_cover(&cover))?;
        let tm = ok(setcover_forward_map(&pre.instance, &lifted, flavor))?;
        let space = ok(BallSpace::new(out.graph))?;
        check_map(&space, &tm, true, out.k, flavor.name())?;
    }
    Ok(format!(
        "{count} instances ({yes} YES), fixture maps verify for 3 flavors"
    ))
}

/// Cover {a, b} (or a star centre) with oversized false-twin classes hung off it.
fn planted_twin_graph(rng: &mut ChaCha8Rng) -> Graph {
    if rng.gen_bool(0.3) {
        let leaves = rng.gen_range(4..=10);
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        return Graph::from_edges(leaves + 1, &edges).unwrap();
    }
    let both = rng.gen_range(6..=10);
    let (only_a, only_b) = match rng.gen_range(0..3) {
        0 => (0, 0),
        1 => (1, 0),
        _ => (0, 1),
    };
    let mut edges = Vec::new();
    let mut next = 2;
    for _ in 0..both {
        edges.extend([(0, next), (1, next)]);
        next += 1;
    }
    for (c, cnt) in [(0, only_a), (1, only_b)] {
        for _ in 0..cnt {
            edges.push((c, next));
            next += 1;
        }
    }
    if rng.gen_bool(0.5) {
        edges.push((0, 1));
    }
    Graph::from_edges(next, &edges).unwrap()
}

fn c8_rr1_safety() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut deleted = 0;
    for i in 0..50 {
        let g = planted_twin_graph(&mut rng);
        let tr = ok(kernelize(&g, CoverMode::Exact))?;
        ensure!(!tr.deletions.is_empty(), "graph {i}: nothing deleted");
        ensure!(
            tr.kernel.n() <= 8,
            "graph {i}: kernel has {} vertices",
            tr.kernel.n()
        );
        let bound = kernel_bound(tr.cover.len()).ok_or("bound overflow")?;
        ensure!(
            tr.kernel.n() <= bound,
            "graph {i}: {} > bound {bound}",
            tr.kernel.n()
        );
        let before = ok(nctd_exact(&balls(&g), true, g.n(), 10_000_000))?;
        let after = ok(nctd_exact(
            &balls(&tr.kernel),
            true,
            tr.kernel.n(),
            10_000_000,
        ))?;
        ensure!(
            before.status == Status::Optimal && after.status == Status::Optimal,
            "graph {i}: {:?} / {:?}",
            before.status,
            after.status
        );
        ensure!(
            before.k == after.k,
            "graph {i}: {} before, {} after",
            before.k,
            after.k
        );
        deleted += tr.deletions.len();
    }
    Ok(format!("50 graphs, {deleted} deletions, NCTD+ unchanged"))
}

const P3SAT_FIXTURE: &str = "5 6
a:1:+ b:2:- c:3:+
a:2:- b:1:+
a:3:+ c:1:-
b:4:+ c:5:-
a:5:- b:3:+ c:2:+
a:4:+ c:4:+
";

fn c9_p3sat() -> Outcome {
    let inst = ok(Partitioned3SatInstance::parse(P3SAT_FIXTURE))?;
    let out = ok(p3sat_to_gadget(&inst))?;
    let space = ok(BallSpace::new(out.graph.clone()))?;
    ensure!(
        space.dist.diameter() == 3,
        "diameter {}",
        space.dist.diameter()
    );
    let cover = out.cover.clone().ok_or("no recorded cover")?;
    ok(check_cover(&out.graph, &cover))?;
    ensure!(out.k == 33, "k = {}", out.k);
    let pi = inst.brute_force().ok_or("fixture unsatisfiable")?;
    let tm = ok(p3sat_forward_map(&inst, &pi))?;
    check_map(&space, &tm, true, 33, "forward map")?;
    let back = ok(p3sat_extract_assignment(&tm, &out))?;
    ensure!(
        inst.satisfied_by(&back),
        "extracted assignment does not satisfy"
    );
    Ok(format!(
        "{} vertices, cover {}, map size {}",
        out.graph.n(),
        cover.len(),
        tm.size()
    ))
}

fn c10_hyperbolic() -> Outcome {
    let mut worst = 0;
    for i in 0..50u64 {
        let n = 2 + (i as usize * 9) % 24;
        let space = ok(BallSpace::new(ok(random_connected(
            n,
            0.12 + (i % 5) as f64 * 0.08,
            i,
        ))?))?;
        let (tm, delta) = ok(hyperbolic_approx_nctm_plus(&space))?;
        let rep = ok(verify_approx(&space.family, &tm, delta.twice, &space.dist))?;
        ensure!(
            rep.ok && rep.size <= 2,
            "seed {i}: ok={} size={}",
            rep.ok,
            rep.size
        );
        worst = worst.max(delta.twice);
    }
    for i in 0..50u64 {
        let space = ok(BallSpace::new(ok(random_tree(1 + i as usize % 30, i))?))?;
        let (tm, delta) = ok(hyperbolic_approx_nctm_plus(&space))?;
        ensure!(delta.twice == 0, "tree seed {i}: 2δ = {}", delta.twice);
        check_map(&space, &tm, true, 2, &format!("tree seed {i}"))?;
    }
    Ok(format!("50 graphs (max 2δ = {worst}), 50 trees at ρ = 0"))
}

fn c11_hausdorff() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checks = 0;
    for i in 0..500u64 {
        let g = match i % 4 {
            0 => ok(random_tree(rng.gen_range(2..30), i))?,
            1 => ok(random_cactus(rng.gen_range(3..30), i))?,
            2 => ok(random_interval(rng.gen_range(2..25), i))?.0,
            _ => ok(random_connected(rng.gen_range(3..20), 0.25, i))?,
        };
        let space = ok(BallSpace::new(g))?;
        let d = &space.dist;
        let n = space.n();
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let r1 = rng.gen_range(0..=d.eccentricity(x));
        let r2 = rng.gen_range(0..=d.eccentricity(y));
        let (b1, b2) = (ok(ball(d, x, r1))?, ok(ball(d, y, r2))?);
        let h = hausdorff_distance(&b1, &b2, d);
        for rho in 0..=d.diameter() {
            let incl = b1.members.is_subset(&ok(ball(d, y, r2 + rho))?.members)
                && b2.members.is_subset(&ok(ball(d, x, r1 + rho))?.members);
            ensure!(
                (h <= rho) == incl,
                "pair {i}: d_H={h}, rho={rho}, inclusion {incl}"
            );
            checks += 1;
        }
    }
    Ok(format!("500 pairs, {checks} (pair, ρ) checks"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "cycle NCTD = 2 on C6, C7, C8", 90, c1_cycle_nctd),
        (
            2,
            "cycle NCTD+ lower bounds",
            120,
            c2_cycle_positive_lower_bound,
        ),
        (3, "edgeless characterization", 1, c3_edgeless),
        (4, "constructor soundness suite", 300, c4_constructors),
        (5, "VC-dimension cross-checks", 120, c5_vc_dimension),
        (6, "octahedron gap", 300, c6_octahedron),
        (7, "Set Cover equivalence", 1800, c7_setcover),
        (8, "RR1 safety", 600, c8_rr1_safety),
        (9, "P3SAT gadget end-to-end", 300, c9_p3sat),
        (10, "hyperbolic approximate maps", 300, c10_hyperbolic),
        (11, "Hausdorff characterization", 60, c11_hausdorff),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let el = t.elapsed();
        let res = match res {
            Ok(_) if el > Duration::from_secs(limit) => Err(format!("over time limit {limit}s")),
            r => r,
        };
        match res {
            Ok(note) => println!("PASS  [{id:>2}] {name}: {note} ({:.2}s)", el.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL  [{id:>2}] {name}: {why} ({:.2}s)", el.as_secs_f64());
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
