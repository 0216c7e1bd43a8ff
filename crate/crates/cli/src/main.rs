//! `nctb`: generate graphs, build and check teaching maps, solve, kernelize
//! and reduce. The last stdout line is always a `RESULT key=value ...`
//! summary (a JSON object with `--json`), written as a `#` comment when a
//! graph or map went to stdout before it.
//!
//! Exit codes: 0 success, 1 verification failure or NO, 2 usage or input
//! error, 3 node budget exhausted.

mod summary;

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use nctb_core::analysis::{hyperbolicity, vc_dimension, vc_dimension_of_balls};
use nctb_core::concept::{
    balls_as_concept_class, verify, verify_approx, ConceptClass, TeachingMap,
};
use nctb_core::constructors::{
    cactus_nctm, cycle_nctm_on, diam2_nctm, hyperbolic_approx_nctm_plus, interval_nctm_plus,
    tree_nctm_plus,
};
use nctb_core::generators;
use nctb_core::interval::IntervalRepresentation;
use nctb_core::kernel::{kernel_bound, kernelize, solve_via_kernel};
use nctb_core::metric::{all_pairs_distances, BallFamily, BallSpace};
use nctb_core::reductions::{
    p3sat_extract_assignment, p3sat_forward_map, p3sat_to_gadget, parse_roles, preprocess_setcover,
    setcover_forward_map, setcover_to_gadget, Flavor, Part, Partitioned3SatInstance,
    PreprocessStep, ReductionOutput, Role, SetCoverInstance,
};
use nctb_core::solver::{nctd_decision, nctd_exact, Answer, SolveResult, Status};
use nctb_core::structure::CoverMode;
use nctb_core::Graph;

use summary::Summary;

#[derive(Parser)]
#[command(
    name = "nctb",
    version,
    about = "Non-clashing teaching maps for balls in graphs"
)]
struct Cli {
    /// Seed for randomized generators.
    #[arg(long, global = true, env = "NCTB_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print the summary as a JSON object instead of a RESULT line.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Edgeless,
    Star,
    CompleteBipartite,
    Octahedron,
    Tree,
    Cactus,
    Interval,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Tree,
    Interval,
    Cycle,
    Cactus,
    Hyperbolic,
    Diam2,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Mode {
    Nctd,
    #[value(name = "nctd+")]
    NctdPlus,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverArg {
    Approx2,
    Exact,
}

impl From<CoverArg> for CoverMode {
    fn from(c: CoverArg) -> Self {
        match c {
            CoverArg::Approx2 => CoverMode::Approx2,
            CoverArg::Exact => CoverMode::Exact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum FlavorArg {
    Split,
    Cobipartite,
    Bipartite,
    P3sat,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Split => Flavor::Split,
            FlavorArg::Cobipartite => Flavor::Cobipartite,
            FlavorArg::Bipartite => Flavor::Bipartite,
            FlavorArg::P3sat => Flavor::P3sat,
        }
    }
}

/// Where the concepts come from: a graph (its balls) or a concept file.
#[derive(clap::Args)]
struct Source {
    /// Graph file (`-` for stdin).
    #[arg(long, short, conflicts_with = "concepts")]
    input: Option<PathBuf>,
    /// Concept class file.
    #[arg(long)]
    concepts: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, short)]
        n: usize,
        /// Second side for complete-bipartite.
        #[arg(long)]
        b: Option<usize>,
        /// Edge probability for random.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Interval representation output for the interval family.
        #[arg(long)]
        intervals_out: Option<PathBuf>,
    },
    /// List the distinct balls as a concept class file.
    Balls {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build a teaching map with a class-specific constructor.
    Construct {
        #[arg(long, value_enum)]
        class: Class,
        #[arg(long, short)]
        input: PathBuf,
        /// Interval representation (interval class only).
        #[arg(long)]
        intervals: Option<PathBuf>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check a teaching map. Exit 0 iff it is valid.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Teaching map file; stdin when omitted.
        #[arg(long, short)]
        map: Option<PathBuf>,
        /// Require positive-only samples.
        #[arg(long)]
        positive: bool,
        /// Allow clashes between balls at Hausdorff distance at most rho.
        #[arg(long)]
        rho: Option<u32>,
    },
    /// Exact NCTD / NCTD⁺.
    Solve {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "nctd+")]
        mode: Mode,
        /// Largest size tried.
        #[arg(long)]
        kmax: Option<usize>,
        /// Decide a single size instead of minimizing.
        #[arg(long, conflicts_with = "kmax")]
        k: Option<usize>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Witness map output (stdout when omitted).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Exhaustive false-twin reduction. Prints the kernel with the trace as comments.
    Kernelize {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "approx2")]
        cover: CoverArg,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Kernelize, then solve NCTD⁺ on the kernel.
    SolveVc {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "approx2")]
        cover: CoverArg,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Build a hardness gadget from a Set Cover or 3-Partitioned-3-SAT instance.
    Reduce {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long, short)]
        input: PathBuf,
        /// Gadget graph output (stdout when omitted).
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Roles sidecar output.
        #[arg(long)]
        roles: Option<PathBuf>,
        /// Preprocessed Set Cover instance output.
        #[arg(long)]
        processed: Option<PathBuf>,
    },
    /// Witness teaching map for a gadget from a cover or an assignment.
    Witness {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long, short)]
        input: PathBuf,
        /// 1-based set ids of the original instance, comma separated.
        /// A minimum cover is used when omitted.
        #[arg(long, value_delimiter = ',')]
        cover: Option<Vec<usize>>,
        /// `T`/`F` per variable, parts a, b, c in order. Found by search when omitted.
        #[arg(long)]
        assignment: Option<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Read an assignment off a teaching map on a p3sat gadget.
    Extract {
        /// Gadget graph.
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        roles: PathBuf,
        #[arg(long, short)]
        map: PathBuf,
        /// Instance to check the assignment against.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// VC dimension of the balls (or of a concept class).
    Vcdim {
        #[command(flatten)]
        source: Source,
        /// Stop searching above this size.
        #[arg(long, default_value_t = 8)]
        dmax: usize,
    },
    /// Gromov hyperbolicity by the four-point condition.
    Hyperbolicity {
        #[arg(long, short)]
        input: PathBuf,
    },
}

static PAYLOAD_ON_STDOUT: AtomicBool = AtomicBool::new(false);

/// How a successful run ends.
enum Outcome {
    Ok,
    Fail,
    Budget,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut sum = Summary::default();
    match run(&cli, &mut sum) {
        Ok(outcome) => {
            let line = if cli.json { sum.json() } else { sum.line() };
            // keep piped graph/map output parseable
            if PAYLOAD_ON_STDOUT.load(Ordering::Relaxed) {
                println!("# {line}");
            } else {
                println!("{line}");
            }
            ExitCode::from(match outcome {
                Outcome::Ok => 0,
                Outcome::Fail => 1,
                Outcome::Budget => 3,
            })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            PAYLOAD_ON_STDOUT.store(true, Ordering::Relaxed);
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&read(path)?).with_context(|| path.display().to_string())
}

fn load_space(path: &Path) -> Result<BallSpace> {
    BallSpace::new(load_graph(path)?).with_context(|| path.display().to_string())
}

/// Concepts from a graph (componentwise balls) or a concept file.
fn load_concepts(src: &Source) -> Result<(ConceptClass, Option<Graph>)> {
    match (&src.input, &src.concepts) {
        (Some(p), None) => {
            let g = load_graph(p)?;
            let cc = balls_as_concept_class(&BallFamily::enumerate_by_component(&g));
            Ok((cc, Some(g)))
        }
        (None, Some(p)) => {
            let cc = ConceptClass::parse(&read(p)?).with_context(|| p.display().to_string())?;
            Ok((cc, None))
        }
        _ => bail!("give exactly one of --input or --concepts"),
    }
}

fn run(cli: &Cli, sum: &mut Summary) -> Result<Outcome> {
    match &cli.cmd {
        Cmd::Gen {
            family,
            n,
            b,
            p,
            out,
            intervals_out,
        } => {
            let seed = cli.seed;
            let g = match family {
                Family::Path => generators::path(*n)?,
                Family::Cycle => generators::cycle(*n)?,
                Family::Edgeless => generators::edgeless(*n)?,
                Family::Star => generators::complete_bipartite(1, n.saturating_sub(1))?,
                Family::CompleteBipartite => generators::complete_bipartite(
                    *n,
                    b.ok_or_else(|| anyhow!("--b is required"))?,
                )?,
                Family::Octahedron => generators::octahedron(*n)?,
                Family::Tree => generators::random_tree(*n, seed)?,
                Family::Cactus => generators::random_cactus(*n, seed)?,
                Family::Random => generators::random_connected(*n, *p, seed)?,
                Family::Interval => {
                    let (g, rep) = generators::random_interval(*n, seed)?;
                    if let Some(path) = intervals_out {
                        emit(Some(path), &rep.to_text())?;
                    }
                    g
                }
            };
            emit(out.as_deref(), &g.to_text())?;
            sum.push("n", g.n()).push("m", g.m()).push("seed", seed);
            Ok(Outcome::Ok)
        }
        Cmd::Balls { input, out } => {
            let g = load_graph(input)?;
            let fam = BallFamily::enumerate_by_component(&g);
            emit(out.as_deref(), &balls_as_concept_class(&fam).to_text())?;
            sum.push("balls", fam.len()).push("n", g.n());
            Ok(Outcome::Ok)
        }
        Cmd::Construct {
            class,
            input,
            intervals,
            out,
        } => {
            let space = load_space(input)?;
            let tm = match class {
                Class::Tree => tree_nctm_plus(&space)?,
                Class::Interval => {
                    let path = intervals
                        .as_ref()
                        .ok_or_else(|| anyhow!("--intervals is required"))?;
                    let rep = IntervalRepresentation::parse(&read(path)?, space.n())
                        .with_context(|| path.display().to_string())?;
                    interval_nctm_plus(&space, &rep)?
                }
                Class::Cycle => cycle_nctm_on(&space)?,
                Class::Cactus => cactus_nctm(&space)?,
                Class::Diam2 => diam2_nctm(&space)?,
                Class::Hyperbolic => {
                    let (tm, delta) = hyperbolic_approx_nctm_plus(&space)?;
                    sum.push("delta", delta).push("rho", delta.twice);
                    tm
                }
            };
            emit(out.as_deref(), &tm.to_text())?;
            sum.push("concepts", tm.len())
                .push("size", tm.size())
                .push("positive", tm.is_positive_only());
            Ok(Outcome::Ok)
        }
        Cmd::Verify {
            source,
            map,
            positive,
            rho,
        } => {
            let (cc, g) = load_concepts(source)?;
            let text = read(map.as_deref().unwrap_or(Path::new("-")))?;
            let tm =
                TeachingMap::parse(&text, cc.ground_size(), cc.len()).context("teaching map")?;
            let report = match rho {
                None => verify(&cc, &tm, *positive)?,
                Some(rho) => {
                    let g = g.ok_or_else(|| anyhow!("--rho needs a graph --input"))?;
                    let d = all_pairs_distances(&g)?;
                    verify_approx(&BallFamily::enumerate(&d), &tm, *rho, &d)?
                }
            };
            for v in report.violations.iter().take(20) {
                println!("violation {} {} {:?}", v.a, v.b, v.kind);
            }
            sum.push("ok", report.ok)
                .push("size", report.size)
                .push("violations", report.violations.len())
                .push("positive", report.positive_only);
            if let Some(r) = rho {
                sum.push("rho", r);
            }
            Ok(if report.ok {
                Outcome::Ok
            } else {
                Outcome::Fail
            })
        }
        Cmd::Solve {
            source,
            mode,
            kmax,
            k,
            budget,
            out,
        } => {
            let (cc, _) = load_concepts(source)?;
            let positive = *mode == Mode::NctdPlus;
            sum.push("mode", if positive { "nctd+" } else { "nctd" });
            if let Some(k) = k {
                let d = nctd_decision(&cc, *k, positive, *budget)?;
                sum.push("nodes", d.nodes);
                return Ok(match d.answer {
                    Answer::Yes(w) => {
                        emit(out.as_deref(), &w.to_text())?;
                        sum.push("answer", "YES").push("k", k);
                        Outcome::Ok
                    }
                    Answer::No => {
                        sum.push("answer", "NO").push("k", k);
                        Outcome::Fail
                    }
                    Answer::BudgetExceeded => {
                        sum.push("answer", "BUDGET").push("k", k);
                        Outcome::Budget
                    }
                });
            }
            let kmax = kmax.unwrap_or(cc.ground_size());
            let res = nctd_exact(&cc, positive, kmax, *budget)?;
            report_solve(&res, out.as_deref(), sum)
        }
        Cmd::Kernelize { input, cover, out } => {
            let g = load_graph(input)?;
            let trace = kernelize(&g, (*cover).into())?;
            let mut text = trace.kernel.to_text();
            text.push_str(&format!("# cover {}\n", join(trace.cover.iter())));
            for d in &trace.deletions {
                text.push_str(&format!(
                    "# deleted {} twins {}\n",
                    d.vertex,
                    join(d.twins.iter().copied())
                ));
            }
            let kept: Vec<String> = trace
                .vertex_map
                .iter()
                .enumerate()
                .filter_map(|(o, k)| k.map(|k| format!("{o}->{k}")))
                .collect();
            text.push_str(&format!("# map {}\n", kept.join(" ")));
            emit(out.as_deref(), &text)?;
            sum.push("n", g.n())
                .push("kernel_n", trace.kernel.n())
                .push("cover", trace.cover.len())
                .push("deletions", trace.deletions.len());
            match kernel_bound(trace.cover.len()) {
                Some(b) => sum.push("bound", b),
                None => sum.push("bound", "overflow"),
            };
            sum.push("within_bound", trace.within_bound());
            Ok(Outcome::Ok)
        }
        Cmd::SolveVc {
            input,
            cover,
            kmax,
            budget,
        } => {
            let g = load_graph(input)?;
            let kmax = kmax.unwrap_or(g.n());
            let (trace, res) = solve_via_kernel(&g, true, kmax, *budget, (*cover).into())?;
            sum.push("mode", "nctd+")
                .push("kernel_n", trace.kernel.n())
                .push("cover", trace.cover.len());
            report_solve(&res, None, sum)
        }
        Cmd::Reduce {
            flavor,
            input,
            out,
            roles,
            processed,
        } => {
            let text = read(input)?;
            let flavor: Flavor = (*flavor).into();
            let gadget = if flavor == Flavor::P3sat {
                let inst = Partitioned3SatInstance::parse(&text)
                    .with_context(|| input.display().to_string())?;
                let out = p3sat_to_gadget(&inst)?;
                sum.push("N", inst.n_vars).push("M", inst.m());
                out
            } else {
                let inst =
                    SetCoverInstance::parse(&text).with_context(|| input.display().to_string())?;
                let pre = preprocess_setcover(&inst, flavor != Flavor::Split)?;
                for step in &pre.steps {
                    match step {
                        PreprocessStep::RemovedElement(e) => {
                            eprintln!("note: removed element {}", e + 1)
                        }
                        PreprocessStep::DuplicatedSet { source, index } => {
                            eprintln!("note: set {} duplicated as set {}", source + 1, index + 1)
                        }
                    }
                }
                if let Some(p) = processed {
                    emit(Some(p), &pre.instance.to_text())?;
                }
                sum.push("n", pre.instance.n)
                    .push("m", pre.instance.m())
                    .push("t", inst.t);
                setcover_to_gadget(&pre.instance, flavor)?
            };
            emit(out.as_deref(), &gadget.graph.to_text())?;
            if let Some(p) = roles {
                emit(Some(p), &gadget.roles_text())?;
            }
            sum.push("flavor", flavor)
                .push("vertices", gadget.graph.n())
                .push("edges", gadget.graph.m());
            if let Some(c) = &gadget.cover {
                sum.push("cover", c.len());
            }
            sum.push("k", gadget.k);
            Ok(Outcome::Ok)
        }
        Cmd::Witness {
            flavor,
            input,
            cover,
            assignment,
            out,
        } => {
            let text = read(input)?;
            let flavor: Flavor = (*flavor).into();
            let (tm, k) = if flavor == Flavor::P3sat {
                let inst = Partitioned3SatInstance::parse(&text)
                    .with_context(|| input.display().to_string())?;
                let pi = match assignment {
                    Some(s) => parse_assignment(s, inst.n_vars)?,
                    None => inst
                        .brute_force()
                        .ok_or_else(|| anyhow!("no satisfying assignment found (or 3N > 24)"))?,
                };
                sum.push("assignment", format_assignment(&pi, inst.n_vars));
                (
                    p3sat_forward_map(&inst, &pi)?,
                    3 * inst.n_vars + 3 * inst.m(),
                )
            } else {
                let inst =
                    SetCoverInstance::parse(&text).with_context(|| input.display().to_string())?;
                let pre = preprocess_setcover(&inst, flavor != Flavor::Split)?;
                let chosen = match cover {
                    Some(ids) => {
                        if ids.contains(&0) {
                            bail!("set ids are 1-based");
                        }
                        pre.lift_cover(&ids.iter().map(|j| j - 1).collect::<Vec<_>>())?
                    }
                    None => inst
                        .min_cover()
                        .ok_or_else(|| anyhow!("too many sets for exhaustive search"))?,
                };
                sum.push("cover", join(chosen.iter().map(|j| j + 1)));
                let k = flavor.setcover_budget(pre.instance.m(), pre.instance.t)?;
                (setcover_forward_map(&pre.instance, &chosen, flavor)?, k)
            };
            emit(out.as_deref(), &tm.to_text())?;
            sum.push("flavor", flavor)
                .push("concepts", tm.len())
                .push("size", tm.size())
                .push("k", k);
            Ok(Outcome::Ok)
        }
        Cmd::Extract {
            input,
            roles,
            map,
            instance,
        } => {
            let g = load_graph(input)?;
            let roles = parse_roles(&read(roles)?, g.n()).context("roles")?;
            let literals = roles
                .iter()
                .filter(|r| matches!(r, Role::True(..) | Role::False(..)))
                .count();
            let ws = roles.iter().filter(|r| matches!(r, Role::W(_))).count();
            let count = BallSpace::new(g.clone())?.family.len();
            let tm = TeachingMap::parse(&read(map)?, g.n(), count).context("teaching map")?;
            let gadget = ReductionOutput {
                graph: g,
                k: literals / 2 + ws,
                roles,
                flavor: Flavor::P3sat,
                cover: None,
            };
            let pi = p3sat_extract_assignment(&tm, &gadget)?;
            let n = pi.len() / 3;
            println!("assignment {}", format_assignment(&pi, n));
            sum.push("assignment", format_assignment(&pi, n));
            match instance {
                Some(p) => {
                    let inst = Partitioned3SatInstance::parse(&read(p)?)
                        .with_context(|| p.display().to_string())?;
                    let ok = inst.satisfied_by(&pi);
                    sum.push("satisfied", ok);
                    Ok(if ok { Outcome::Ok } else { Outcome::Fail })
                }
                None => {
                    sum.push("satisfied", "unchecked");
                    Ok(Outcome::Ok)
                }
            }
        }
        Cmd::Vcdim { source, dmax } => {
            let vc = match (&source.input, &source.concepts) {
                (Some(p), None) => vc_dimension_of_balls(
                    &BallFamily::enumerate_by_component(&load_graph(p)?),
                    *dmax,
                ),
                _ => {
                    let (cc, _) = load_concepts(source)?;
                    vc_dimension(cc.concepts(), cc.ground_size(), *dmax)
                }
            };
            sum.push("vcdim", vc.dim)
                .push("witness", join(vc.witness.iter().copied()))
                .push("possibly_larger", vc.possibly_larger);
            Ok(Outcome::Ok)
        }
        Cmd::Hyperbolicity { input } => {
            let g = load_graph(input)?;
            let d = all_pairs_distances(&g)?;
            let delta = hyperbolicity(&d);
            sum.push("delta", delta)
                .push("twice", delta.twice)
                .push("diameter", d.diameter());
            Ok(Outcome::Ok)
        }
    }
}

fn report_solve(res: &SolveResult, out: Option<&Path>, sum: &mut Summary) -> Result<Outcome> {
    sum.push("nodes", res.nodes)
        .push("lower_bound", res.lower_bound);
    Ok(match res.status {
        Status::Optimal => {
            let w = res
                .witness
                .as_ref()
                .expect("optimal results carry a witness");
            emit(out, &w.to_text())?;
            sum.push("answer", "YES").push("k", res.k);
            Outcome::Ok
        }
        Status::Refuted => {
            sum.push("answer", "NO").push("k", res.k);
            Outcome::Fail
        }
        Status::BudgetExceeded => {
            sum.push("answer", "BUDGET").push("k", res.k);
            Outcome::Budget
        }
    })
}

fn join(it: impl Iterator<Item = usize>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `TFFTT...`, parts a, b, c in order; whitespace and commas ignored.
fn parse_assignment(s: &str, n: usize) -> Result<Vec<bool>> {
    let vals: Vec<bool> = s
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c {
            'T' | 't' | '1' => Ok(true),
            'F' | 'f' | '0' => Ok(false),
            _ => Err(anyhow!("assignment characters must be T or F, got `{c}`")),
        })
        .collect::<Result<_>>()?;
    if vals.len() != 3 * n {
        bail!(
            "assignment has {} values, expected 3N = {}",
            vals.len(),
            3 * n
        );
    }
    Ok(vals)
}

fn format_assignment(pi: &[bool], n: usize) -> String {
    Part::ALL
        .iter()
        .map(|d| {
            pi[d.index() * n..(d.index() + 1) * n]
                .iter()
                .map(|&b| if b { 'T' } else { 'F' })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join(",")
}
