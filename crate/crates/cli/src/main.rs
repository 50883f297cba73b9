//! `pdskit`: exact, approximate and constructive maximum-PDS solvers, the
//! independent-set reductions, instance generation and scaling benchmarks.
//!
//! Exit codes: 0 success, 1 computed negative answer, 2 usage or input
//! error, 3 failed re-verification of an emitted solution.

mod input;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pdskit::approx::{approx_ratio_bound, half_pds};
use pdskit::bench::{run_suite, BenchOptions, Suite};
use pdskit::exact::{max_pds_exact, pds_extension, ExactOptions, DEFAULT_CAP};
use pdskit::generators::{fixture, random_connected, CATALOG};
use pdskit::hamiltonian::{
    all_cubic_cycles, cycle_presentation, random_cubic_cycle, random_without_good_shift,
    solve_hamiltonian_cubic, CubicCycleGraph, ExceptionGraph, LrType, SolveOutcome,
};
use pdskit::pds::{is_inclusionwise_maximal, pds_size_upper_bound};
use pdskit::reductions::{
    beta_construct, beta_extract_is, beta_forward, sigma_construct, sigma_extract_is,
    sigma_forward, ReductionCertificate, ReductionKind,
};
use pdskit::{check_pds, Error, Graph, VertexSet};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{digest, load};

#[derive(Parser)]
#[command(
    name = "pdskit",
    version,
    about = "Maximum proportionally dense subgraph toolkit"
)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a vertex set induces a PDS.
    Verify {
        /// Fixture name, edge-list or cycle-form file, or `-` for stdin.
        graph: String,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        /// Also decide whether no strict superset is a PDS (exhaustive).
        #[arg(long)]
        maximal: bool,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Maximum PDS by exhaustive enumeration.
    Exact {
        graph: String,
        /// Only connected sets count.
        #[arg(long)]
        connected: bool,
        /// List every optimal set.
        #[arg(long)]
        all_optima: bool,
        /// Largest instance to enumerate; defaults to PDSKIT_CAP or 24.
        #[arg(long)]
        cap: Option<usize>,
        /// Instead, look for a PDS strictly containing these vertices.
        #[arg(long, value_delimiter = ',')]
        extend: Option<Vec<usize>>,
    },
    /// PDS of size ⌈n/2⌉ or ⌈n/2⌉+1 by local moves.
    Approx {
        graph: String,
        /// Random initial set; the default starts from {0, …, ⌈n/2⌉−1}.
        #[arg(long)]
        seed: Option<u64>,
        /// Print the move sequence as JSON lines before the report.
        #[arg(long)]
        trace: bool,
        /// Keep the largest result over this many runs with consecutive seeds.
        #[arg(long, default_value_t = 1)]
        restarts: u64,
    },
    /// Connected PDS of size ⌊(2n+1)/3⌋ on a Hamiltonian cubic graph.
    Cubic {
        /// Cycle-form input, or a cubic edge list with at most 24 vertices
        /// (its Hamiltonian cycle is searched for).
        graph: Option<String>,
        /// Solve every chord matching on 8 vertices and cross-check exceptions.
        #[arg(long, conflicts_with_all = ["graph", "random"])]
        sweep8: bool,
        /// Solve a random instance with this many vertices.
        #[arg(long, conflicts_with = "graph")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip re-verification of the result.
        #[arg(long)]
        no_verify: bool,
    },
    /// Build the split (sigma) or bipartite (beta) instance of a source graph.
    Reduce {
        graph: String,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Threshold parameter, required for beta.
        #[arg(long)]
        k: Option<usize>,
        /// Map this independent set of the source to a PDS of the target.
        #[arg(long = "is", value_delimiter = ',', conflicts_with = "pds")]
        independent_set: Option<Vec<usize>>,
        /// Map this PDS of the target back to an independent set.
        #[arg(long, value_delimiter = ',')]
        pds: Option<Vec<usize>>,
        /// Write the resulting correspondence as a certificate file.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Check a reduction certificate written by `reduce --certificate`.
    Certify { file: PathBuf },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Run a timing suite and print CSV.
    Bench {
        /// approx-scaling or cubic-scaling.
        suite: String,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Minimum accumulated time per size.
        #[arg(long, default_value_t = 50)]
        min_time_ms: u64,
        /// Re-verify cubic solutions inside the timed region.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// List the fixture names.
    List,
    /// Print a fixture.
    Fixture { name: String },
    /// Random connected graph: a random spanning tree plus extra edges.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random Hamiltonian cubic graph in cycle form.
    Cubic {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random Hamiltonian cubic graph without a good shift, in cycle form.
    NoGoodShift {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        pattern: Pattern,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Sigma,
    Beta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pattern {
    Rlrl,
    Rrll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Verification {
    Passed,
    Skipped,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Ok,
    Negative,
}

struct Outcome {
    result: Value,
    text: String,
    status: Status,
    verification: Verification,
    digest: Option<String>,
    elapsed: Duration,
}

impl Outcome {
    fn new(result: Value, text: String) -> Self {
        Self {
            result,
            text,
            status: Status::Ok,
            verification: Verification::NotApplicable,
            digest: None,
            elapsed: Duration::ZERO,
        }
    }

    fn negative(mut self) -> Self {
        self.status = Status::Negative;
        self
    }

    fn verified(mut self, v: Verification) -> Self {
        self.verification = v;
        self
    }

    fn digest(mut self, d: String) -> Self {
        self.digest = Some(d);
        self
    }

    fn took(mut self, d: Duration) -> Self {
        self.elapsed = d;
        self
    }
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a [String],
    input_digest: Option<&'a str>,
    status: Status,
    result: &'a Value,
    timing_ms: f64,
    verification: Verification,
}

fn cap_from(flag: Option<usize>) -> Result<usize> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("PDSKIT_CAP") {
        Ok(v) => v
            .parse()
            .with_context(|| format!("PDSKIT_CAP must be an integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

/// Independent check of an emitted solution.
fn reverify(g: &Graph, s: &VertexSet, connected: bool) -> Result<()> {
    let verdict = check_pds(g, s)?;
    if !verdict.holds {
        return Err(Error::VerificationFailed(format!(
            "vertex {} is unsatisfied",
            verdict.unsatisfied[0].vertex
        ))
        .into());
    }
    if connected && !g.induced_connected(s) {
        return Err(Error::VerificationFailed("emitted set is not connected".into()).into());
    }
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn list(s: &VertexSet) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Verify {
            graph,
            set,
            maximal,
            cap,
        } => verify(graph, set, *maximal, *cap),
        Command::Exact {
            graph,
            connected,
            all_optima,
            cap,
            extend,
        } => exact(
            graph,
            *connected,
            *all_optima,
            cap_from(*cap)?,
            extend.as_deref(),
        ),
        Command::Approx {
            graph,
            seed,
            trace,
            restarts,
        } => approx(graph, *seed, *trace, *restarts),
        Command::Cubic {
            graph,
            sweep8,
            random,
            seed,
            no_verify,
        } => {
            if *sweep8 {
                run_sweep8()
            } else {
                cubic(graph.as_deref(), *random, *seed, !no_verify)
            }
        }
        Command::Reduce {
            graph,
            kind,
            k,
            independent_set,
            pds,
            certificate,
            cap,
        } => reduce(
            graph,
            *kind,
            *k,
            independent_set.as_deref(),
            pds.as_deref(),
            certificate.as_ref(),
            cap_from(*cap)?,
        ),
        Command::Certify { file } => certify(file),
        Command::Gen { what } => generate(what),
        Command::Bench {
            suite,
            sizes,
            seed,
            min_time_ms,
            verify,
        } => bench(suite, sizes.clone(), *seed, *min_time_ms, *verify),
    }
}

fn verify(graph: &str, set: &[usize], maximal: bool, cap: Option<usize>) -> Result<Outcome> {
    let input = load(graph)?;
    let g = &input.graph;
    let s = VertexSet::from_vertices(g.n(), set.iter().copied())?;
    let start = Instant::now();
    let verdict = check_pds(g, &s)?;
    let is_maximal = if maximal && verdict.holds {
        Some(is_inclusionwise_maximal(g, &s, cap_from(cap)?)?)
    } else {
        None
    };
    let elapsed = start.elapsed();
    let connected = g.induced_connected(&s);
    let mut text = format!(
        "pds: {}\nsize: {}\nconnected: {}\n",
        yes(verdict.holds),
        s.len(),
        yes(connected)
    );
    for w in &verdict.unsatisfied {
        text.push_str(&format!(
            "unsatisfied {}: {} inside, {} outside\n",
            w.vertex, w.inside, w.outside
        ));
    }
    if let Some(m) = is_maximal {
        text.push_str(&format!("maximal: {}\n", yes(m)));
    }
    let result = json!({
        "holds": verdict.holds,
        "size": s.len(),
        "connected": connected,
        "unsatisfied": verdict.unsatisfied,
        "maximal": is_maximal,
    });
    let out = Outcome::new(result, text)
        .digest(input.digest)
        .took(elapsed);
    Ok(if verdict.holds && is_maximal != Some(false) {
        out
    } else {
        out.negative()
    })
}

fn exact(
    graph: &str,
    connected: bool,
    all_optima: bool,
    cap: usize,
    extend: Option<&[usize]>,
) -> Result<Outcome> {
    let input = load(graph)?;
    let g = &input.graph;
    let start = Instant::now();
    if let Some(base) = extend {
        let u = VertexSet::from_vertices(g.n(), base.iter().copied())?;
        let found = pds_extension(g, &u, cap)?;
        let elapsed = start.elapsed();
        return Ok(match found {
            Some(s) => {
                reverify(g, &s, false)?;
                let text = format!("extends: yes\nsize: {}\nset: {}\n", s.len(), list(&s));
                Outcome::new(json!({ "extends": true, "size": s.len(), "set": s }), text)
                    .verified(Verification::Passed)
            }
            None => Outcome::new(json!({ "extends": false }), "extends: no\n".into()).negative(),
        }
        .digest(input.digest)
        .took(elapsed));
    }
    let opts = ExactOptions {
        connected_only: connected,
        all_optima,
        cap,
    };
    let res = match max_pds_exact(g, opts) {
        Ok(r) => r,
        Err(Error::NoPds) => {
            let text = "no PDS exists\n".to_string();
            return Ok(Outcome::new(json!({ "size": null }), text)
                .negative()
                .digest(input.digest)
                .took(start.elapsed()));
        }
        Err(e) => return Err(e.into()),
    };
    let elapsed = start.elapsed();
    reverify(g, &res.witness, connected)?;
    if let Some(all) = &res.all_optima {
        for s in all {
            reverify(g, s, connected)?;
        }
    }
    let is_connected = g.induced_connected(&res.witness);
    let mut text = format!(
        "size: {}\nset: {}\nconnected: {}\nupper bound: {}\nsubsets examined: {}\n",
        res.size,
        list(&res.witness),
        yes(is_connected),
        pds_size_upper_bound(g),
        res.subsets_examined
    );
    if let Some(all) = &res.all_optima {
        text.push_str(&format!("optima: {}\n", all.len()));
        for s in all {
            text.push_str(&format!("  {}\n", list(s)));
        }
    }
    let result = json!({
        "size": res.size,
        "set": res.witness,
        "connected": is_connected,
        "upper_bound": pds_size_upper_bound(g),
        "subsets_examined": res.subsets_examined,
        "all_optima": res.all_optima,
    });
    Ok(Outcome::new(result, text)
        .verified(Verification::Passed)
        .digest(input.digest)
        .took(elapsed))
}

fn approx(graph: &str, seed: Option<u64>, trace: bool, restarts: u64) -> Result<Outcome> {
    let input = load(graph)?;
    let g = &input.graph;
    if restarts == 0 {
        bail!(Error::InvalidInstance(
            "--restarts must be at least 1".into()
        ));
    }
    let start = Instant::now();
    let mut best: Option<(Option<u64>, VertexSet, pdskit::approx::ApproxTrace)> = None;
    for i in 0..restarts {
        let run_seed = match seed {
            Some(s) => Some(s.wrapping_add(i)),
            None => (i > 0).then_some(i),
        };
        let (s, t) = half_pds(g, None, run_seed)?;
        if best.as_ref().is_none_or(|b| s.len() > b.1.len()) {
            best = Some((run_seed, s, t));
        }
    }
    let elapsed = start.elapsed();
    let (used, s, t) = best.expect("at least one run");
    reverify(g, &s, false)?;
    if trace {
        emit(&t.to_json_lines());
    }
    let ratio = approx_ratio_bound(g);
    let connected = g.induced_connected(&s);
    let text = format!(
        "size: {}\nset: {}\nconnected: {}\nmoves: {}\nratio bound: {}\n",
        s.len(),
        list(&s),
        yes(connected),
        t.moves.len(),
        ratio
    );
    let result = json!({
        "size": s.len(),
        "set": s,
        "connected": connected,
        "moves": t.moves.len(),
        "seed": used,
        "ratio_bound": ratio.to_string(),
    });
    Ok(Outcome::new(result, text)
        .verified(Verification::Passed)
        .digest(input.digest)
        .took(elapsed))
}

fn cubic(graph: Option<&str>, random: Option<usize>, seed: u64, verify: bool) -> Result<Outcome> {
    // `order[i]` is the caller's label of cycle position `i`, when relabelled.
    let (c, original, order, input_digest): (
        CubicCycleGraph,
        Option<Graph>,
        Option<Vec<usize>>,
        String,
    ) = match (graph, random) {
        (_, Some(n)) => {
            if n < 4 || n % 2 == 1 {
                bail!(Error::InvalidInstance(format!(
                    "--random needs an even n >= 4, got {n}"
                )));
            }
            let c = random_cubic_cycle(n, seed);
            let d = digest(c.to_text().as_bytes());
            (c, None, None, d)
        }
        (Some(arg), None) => {
            let input = load(arg)?;
            match input.cycle {
                Some(c) => (c, None, None, input.digest),
                None => {
                    let (c, order) = cycle_presentation(&input.graph)?.ok_or_else(|| {
                        Error::InvalidInstance("graph has no Hamiltonian cycle".into())
                    })?;
                    (c, Some(input.graph), Some(order), input.digest)
                }
            }
        }
        (None, None) => bail!(Error::InvalidInstance(
            "give a graph, --random <n> or --sweep8".into()
        )),
    };
    let n = c.n();
    let start = Instant::now();
    let outcome = solve_hamiltonian_cubic(&c, verify)?;
    let elapsed = start.elapsed();
    let out = match outcome {
        SolveOutcome::Exception { graph } => {
            let text = format!(
                "exception: {graph:?}\nno connected PDS of size {} exists\n",
                (2 * n + 1) / 3
            );
            Outcome::new(json!({ "n": n, "exception": graph }), text).negative()
        }
        SolveOutcome::Pds { set, construction } => {
            let set = match &order {
                Some(order) => VertexSet::from_vertices(n, set.iter().map(|i| order[i]))?,
                None => set,
            };
            let verification = if verify {
                let g = original.clone().unwrap_or_else(|| c.to_graph());
                reverify(&g, &set, true)?;
                Verification::Passed
            } else {
                Verification::Skipped
            };
            let text = format!(
                "n: {n}\nsize: {}\nconstruction: {}\n",
                set.len(),
                serde_json::to_value(&construction)?["method"]
                    .as_str()
                    .unwrap_or("?")
            );
            let result = json!({
                "n": n,
                "size": set.len(),
                "set": set,
                "construction": construction,
            });
            Outcome::new(result, text).verified(verification)
        }
    };
    Ok(out.digest(input_digest).took(elapsed))
}

fn run_sweep8() -> Result<Outcome> {
    let h1 = fixture("h1")?.cycle.expect("cycle fixture");
    let h2 = fixture("h2")?.cycle.expect("cycle fixture");
    let start = Instant::now();
    let (mut solved, mut as_h1, mut as_h2) = (0, 0, 0);
    let mut consistent = true;
    let instances = all_cubic_cycles(8)?;
    for c in &instances {
        let g = c.to_graph();
        let opt = max_pds_exact(
            &g,
            ExactOptions {
                connected_only: true,
                ..Default::default()
            },
        )?
        .size;
        match solve_hamiltonian_cubic(c, true)? {
            SolveOutcome::Pds { set, .. } => {
                reverify(&g, &set, true)?;
                solved += 1;
                consistent &= opt == 5;
            }
            SolveOutcome::Exception { graph } => {
                let reference = if graph == ExceptionGraph::H1 {
                    &h1
                } else {
                    &h2
                };
                consistent &= opt < 5 && c.is_dihedral_image_of(reference);
                if graph == ExceptionGraph::H1 {
                    as_h1 += 1;
                } else {
                    as_h2 += 1;
                }
            }
        }
    }
    if !consistent {
        bail!(Error::VerificationFailed(
            "sweep disagrees with the exact solver".into()
        ));
    }
    let text = format!(
        "instances: {}\nsolved: {solved}\nexceptions: {} H1, {} H2\nexceptions match the exact solver: yes\n",
        instances.len(),
        as_h1,
        as_h2
    );
    let result = json!({
        "instances": instances.len(),
        "solved": solved,
        "exceptions": { "H1": as_h1, "H2": as_h2 },
        "consistent_with_exact": consistent,
    });
    Ok(Outcome::new(result, text)
        .verified(Verification::Passed)
        .took(start.elapsed()))
}

#[allow(clippy::too_many_arguments)]
fn reduce(
    graph: &str,
    kind: Kind,
    k: Option<usize>,
    independent_set: Option<&[usize]>,
    pds: Option<&[usize]>,
    certificate: Option<&PathBuf>,
    cap: usize,
) -> Result<Outcome> {
    let input = load(graph)?;
    let g = &input.graph;
    let start = Instant::now();
    let source_set = independent_set
        .map(|v| VertexSet::from_vertices(g.n(), v.iter().copied()))
        .transpose()?;
    let (kind, target, roles, mut result) = match kind {
        Kind::Sigma => {
            let inst = sigma_construct(g)?;
            let mut r = json!({});
            if let Some(r_set) = &source_set {
                let s = sigma_forward(&inst, r_set)?;
                reverify(&inst.target, &s, false)?;
                r["forward"] = json!({ "independent_set": r_set, "pds": s, "size": s.len() });
            }
            if let Some(p) = pds {
                let s = VertexSet::from_vertices(inst.target.n(), p.iter().copied())?;
                let back = sigma_extract_is(&inst, &s)?;
                r["backward"] = json!({ "pds": s, "independent_set": back, "size": back.len() });
            }
            r["core_size"] = json!(inst.core().len());
            (
                ReductionKind::Sigma,
                inst.target.clone(),
                serde_json::to_value(inst.roles())?,
                r,
            )
        }
        Kind::Beta => {
            let k = k.ok_or_else(|| Error::InvalidInstance("--kind beta needs --k".into()))?;
            let inst = beta_construct(g, k)?;
            let mut r = json!({
                "padding": inst.padding(),
                "threshold": inst.threshold(),
                "size_identity_holds": inst.size_identity_holds(),
                "core_is_pds_predicted": inst.core_is_pds_predicted(),
                "core_size": inst.core().len(),
            });
            if let Some(r_set) = &source_set {
                let s = beta_forward(&inst, r_set)?;
                reverify(&inst.target, &s, true)?;
                r["forward"] = json!({ "independent_set": r_set, "pds": s, "size": s.len() });
            }
            if let Some(p) = pds {
                let s = VertexSet::from_vertices(inst.target.n(), p.iter().copied())?;
                let back = beta_extract_is(&inst, &s)?;
                r["backward"] = json!({ "pds": s, "independent_set": back, "size": back.len() });
            }
            (
                ReductionKind::Beta,
                inst.target.clone(),
                serde_json::to_value(inst.roles())?,
                r,
            )
        }
    };
    let elapsed = start.elapsed();
    if target.n() > cap {
        eprintln!(
            "warning: target has {} vertices, above the exact-solver cap {cap}",
            target.n()
        );
    }
    if let Some(path) = certificate {
        let cert = match (&source_set, pds) {
            (Some(r_set), _) => ReductionCertificate::forward(kind, g, k, r_set)?,
            (None, Some(p)) => {
                let s = VertexSet::from_vertices(target.n(), p.iter().copied())?;
                ReductionCertificate::backward(kind, g, k, &s)?
            }
            (None, None) => bail!(Error::InvalidInstance(
                "--certificate needs --is or --pds".into()
            )),
        };
        fs::write(path, serde_json::to_string_pretty(&cert)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let mut text = format!("target: {} vertices, {} edges\n", target.n(), target.m());
    if let Some(l) = result.get("padding") {
        text.push_str(&format!("padding |L|: {l}\n"));
    }
    for dir in ["forward", "backward"] {
        if let Some(d) = result.get(dir) {
            text.push_str(&format!(
                "{dir}: {} -> {}\n",
                d["independent_set"]["set"], d["pds"]["set"]
            ));
        }
    }
    text.push_str(&target.to_edge_list());
    result["kind"] = json!(kind);
    result["k"] = json!(k);
    result["target"] = serde_json::to_value(target.to_document())?;
    result["roles"] = roles;
    let verification = if source_set.is_some() {
        Verification::Passed
    } else {
        Verification::NotApplicable
    };
    Ok(Outcome::new(result, text)
        .verified(verification)
        .digest(input.digest)
        .took(elapsed))
}

fn certify(file: &PathBuf) -> Result<Outcome> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let cert: ReductionCertificate = serde_json::from_str(&text).context("parsing certificate")?;
    let start = Instant::now();
    let report = cert.verify()?;
    let elapsed = start.elapsed();
    let summary = format!(
        "valid: {}\nindependent: {}\npds: {}\nsize identity: {}\nreproduced: {}\n",
        yes(report.valid()),
        yes(report.independent),
        yes(report.pds_holds),
        yes(report.size_identity),
        yes(report.reproduced)
    );
    let mut result = serde_json::to_value(&report)?;
    result["valid"] = json!(report.valid());
    let out = Outcome::new(result, summary)
        .verified(Verification::Passed)
        .digest(digest(text.as_bytes()))
        .took(elapsed);
    Ok(if report.valid() { out } else { out.negative() })
}

fn generate(what: &Gen) -> Result<Outcome> {
    let (text, graph): (String, Option<Graph>) = match what {
        Gen::List => {
            let names = CATALOG.join("\n") + "\n";
            return Ok(Outcome::new(json!({ "fixtures": CATALOG }), names));
        }
        Gen::Fixture { name } => {
            let fx = fixture(name)?;
            match &fx.cycle {
                Some(c) => (c.to_text(), Some(fx.graph)),
                None => (fx.graph.to_edge_list(), Some(fx.graph)),
            }
        }
        Gen::Random { n, m, seed } => {
            let g = random_connected(*n, *m, *seed)?;
            (g.to_edge_list(), Some(g))
        }
        Gen::Cubic { n, seed } => {
            if *n < 4 || n % 2 == 1 {
                bail!(Error::InvalidInstance(format!(
                    "cubic instances need an even n >= 4, got {n}"
                )));
            }
            let c = random_cubic_cycle(*n, *seed);
            (c.to_text(), Some(c.to_graph()))
        }
        Gen::NoGoodShift { n, pattern, seed } => {
            let ty = match pattern {
                Pattern::Rlrl => LrType::Rlrl,
                Pattern::Rrll => LrType::Rrll,
            };
            let c = random_without_good_shift(*n, ty, *seed)?;
            (c.to_text(), Some(c.to_graph()))
        }
    };
    let result = json!({
        "text": text,
        "graph": graph.map(|g| g.to_document()),
    });
    Ok(Outcome::new(result, text))
}

fn bench(
    suite: &str,
    sizes: Option<Vec<usize>>,
    seed: u64,
    min_time_ms: u64,
    verify: bool,
) -> Result<Outcome> {
    let suite: Suite = suite.parse()?;
    let opts = BenchOptions {
        sizes,
        seed,
        min_time: Duration::from_millis(min_time_ms),
        verify,
        ..Default::default()
    };
    let start = Instant::now();
    let report = run_suite(suite, &opts)?;
    let elapsed = start.elapsed();
    for f in &report.fits {
        eprintln!(
            "{}: log-log slope {:.3}, r^2 {:.4}",
            f.family, f.fit.slope, f.fit.r_squared
        );
    }
    let verification = if verify && suite == Suite::CubicScaling {
        Verification::Passed
    } else {
        Verification::Skipped
    };
    Ok(
        Outcome::new(serde_json::to_value(&report)?, report.to_csv())
            .verified(verification)
            .took(elapsed),
    )
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn is_verification_failure(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        matches!(
            c.downcast_ref::<Error>(),
            Some(Error::VerificationFailed(_))
        )
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().collect();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                let report = RunReport {
                    command: &argv[1..],
                    input_digest: out.digest.as_deref(),
                    status: out.status,
                    result: &out.result,
                    timing_ms: out.elapsed.as_secs_f64() * 1e3,
                    verification: out.verification,
                };
                emit(&(serde_json::to_string(&report).expect("report serialises") + "\n"));
            } else {
                emit(&out.text);
            }
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Negative => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_verification_failure(&e) {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
