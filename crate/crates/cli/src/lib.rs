//! Command-line front end: argument parsing, command dispatch and report
//! emission. `run` is the whole program minus process exit.

use std::time::Instant;

use charvar::arith::chain_bounds;
use charvar::bending::{bending_constancy_with, SplittingRep, CHAR_TOL};
use charvar::mat2core::CMat;
use charvar::polyring::ROOT_CLUSTER_RADIUS;
use charvar::trianglegrp::{euclidean_epi_search, hyperbolic_scan, RELATION_TOL, SCENARIO_TOL};
use charvar::twobridge::{
    alexander, character_poly, cs_degree_seeded, dihedral_census_with, longitude_word, TwoBridgeKnot, LONGITUDE_TOL,
    RILEY_RESIDUAL_TOL,
};
use charvar::word::Word;
use charvar::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
/// Default ceiling on `--p-max` for sweeps.
pub const SWEEP_P_CAP: u64 = 30;

#[derive(Parser, Debug)]
#[command(name = "charvar", version, about = "Character varieties of two-generator knot groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Emit the full JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every sampling-based check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Relative tolerance for comparing characters.
    #[arg(long, global = true, default_value_t = CHAR_TOL)]
    pub tol_rel: f64,
    /// Radius within which numeric roots count as one.
    #[arg(long, global = true, default_value_t = ROOT_CLUSTER_RADIUS)]
    pub tol_root_cluster: f64,
    /// Record wall time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Two-bridge knot invariants.
    Twobridge {
        #[command(subcommand)]
        op: TwoBridgeOp,
    },
    /// Epimorphisms from twist-knot groups onto triangle groups.
    Twist {
        #[command(subcommand)]
        op: TwistOp,
    },
    /// Bending deformations.
    Bend {
        #[command(subcommand)]
        op: BendOp,
    },
    /// Domination and minimality bounds for a two-bridge exterior.
    Bounds(KnotArgs),
    /// Run a two-bridge command over all knots with p ≤ p-max.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct KnotArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: i64,
}

#[derive(Subcommand, Debug)]
pub enum TwoBridgeOp {
    /// Presentation, longitude and torus-knot test.
    Info(KnotArgs),
    /// Alexander polynomial and |Δ(−1)|.
    Alexander(KnotArgs),
    /// Nonabelian character polynomial Φ(x, z).
    Charpoly(KnotArgs),
    /// Dihedral characters: roots of Φ(0, z).
    Dihedral(KnotArgs),
    /// Degree of f_w = tr²(w) − 4 on the curve.
    Csdegree {
        #[command(flatten)]
        knot: KnotArgs,
        /// Word over a, b (A, B for inverses).
        #[arg(long, default_value = "a")]
        word: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum TwistOp {
    /// Search for epimorphisms onto Δ(2,3,6) or hyperbolic triangle groups.
    EpiSearch(EpiSearchArgs),
}

#[derive(Args, Debug)]
pub struct EpiSearchArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = -10)]
    pub n_min: i64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 10)]
    pub n_max: i64,
    /// Exact search in the Euclidean group Δ(2,3,6) (default).
    #[arg(long, conflicts_with = "hyperbolic")]
    pub euclidean: bool,
    /// Scan the hyperbolic normal forms.
    #[arg(long)]
    pub hyperbolic: bool,
    #[arg(long, default_value_t = 12)]
    pub max_order: u32,
}

#[derive(Subcommand, Debug)]
pub enum BendOp {
    /// Decide whether bending changes the character of a splitting.
    Check {
        /// rep.json file.
        #[arg(long)]
        input: std::path::PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepCommand {
    Info,
    Alexander,
    Charpoly,
    Dihedral,
    Csdegree,
    Bounds,
}

impl SweepCommand {
    fn name(self) -> &'static str {
        match self {
            SweepCommand::Info => "info",
            SweepCommand::Alexander => "alexander",
            SweepCommand::Charpoly => "charpoly",
            SweepCommand::Dihedral => "dihedral",
            SweepCommand::Csdegree => "csdegree",
            SweepCommand::Bounds => "bounds",
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            SweepCommand::Info => &["q_inverse", "torus_knot", "sigma", "relator"],
            SweepCommand::Alexander => &["alexander", "abs_at_minus_one"],
            SweepCommand::Charpoly => {
                &["deg_z", "squarefree", "provenance", "component_bound", "dihedral_count", "phi_text"]
            }
            SweepCommand::Dihedral => &["dihedral_count", "expected", "squarefree"],
            SweepCommand::Csdegree => &["word", "cs_degree"],
            SweepCommand::Bounds => {
                &["strict_epi_bound", "dom_bound", "dom_bound_chain", "deg1_bound", "minimality", "prime_power"]
            }
        }
    }
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub p_max: u64,
    #[arg(long, value_enum)]
    pub command: SweepCommand,
    /// Emit CSV (the default unless --json is given).
    #[arg(long)]
    pub csv: bool,
    /// Largest accepted --p-max.
    #[arg(long, default_value_t = SWEEP_P_CAP)]
    pub p_cap: u64,
    /// One row per normalized q instead of one per knot type up to mirror image.
    #[arg(long)]
    pub all_q: bool,
}

/// Output of every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub version: String,
    pub tolerances: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ReportError>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportError {
    pub kind: String,
    pub message: String,
}

/// Shortest round-trip decimal.
pub fn num(x: f64) -> Value {
    let a = x.abs();
    let s = if x == 0.0 || (1e-5..1e16).contains(&a) { format!("{x}") } else { format!("{x:e}") };
    Value::String(s)
}

fn cnum(z: Complex64) -> Value {
    json!([num(z.re), num(z.im)])
}

fn cmat(m: &CMat) -> Value {
    json!([[cnum(m.a), cnum(m.b)], [cnum(m.c), cnum(m.d)]])
}

fn knot(a: KnotArgs) -> charvar::Result<TwoBridgeKnot> {
    TwoBridgeKnot::new(a.p, a.q)
}

fn knot_inputs(a: KnotArgs) -> Value {
    json!({ "p": a.p.to_string(), "q": a.q.to_string() })
}

fn twobridge_info(k: &TwoBridgeKnot) -> charvar::Result<Value> {
    let pres = k.presentation();
    let (lambda, check) = longitude_word(k)?;
    Ok(json!({
        "p": k.p().to_string(),
        "q": k.q().to_string(),
        "q_inverse": k.q_inverse().to_string(),
        "torus_knot": k.is_torus(),
        "epsilon": pres.eps.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "sigma": pres.sigma().to_string(),
        "w": pres.w.to_string(),
        "relator": pres.relator().to_string(),
        "longitude": {
            "word": lambda.to_string(),
            "samples": check.samples.to_string(),
            "max_commutator": num(check.max_commutator),
            "min_distance_from_identity": num(check.min_distance_from_identity),
        },
    }))
}

fn twobridge_alexander(k: &TwoBridgeKnot) -> charvar::Result<Value> {
    let d = alexander(k);
    let at = d.eval_int(-1).ok_or_else(|| Error::Numerical("Δ(−1) undefined".into()))?;
    let coeffs: Vec<Value> = d.terms().map(|(e, c)| json!([e.to_string(), c.to_string()])).collect();
    Ok(json!({
        "p": k.p().to_string(),
        "q": k.q().to_string(),
        "alexander": d.to_string(),
        "terms": coeffs,
        "symmetric": d.is_symmetric(),
        "at_minus_one": at.to_string(),
        "abs_at_minus_one": at.magnitude().to_string(),
    }))
}

fn twobridge_charpoly(k: &TwoBridgeKnot, g: &GlobalOpts) -> charvar::Result<Value> {
    let c = character_poly(k)?;
    let census = dihedral_census_with(&c, g.tol_root_cluster)?;
    Ok(json!({
        "p": k.p().to_string(),
        "q": k.q().to_string(),
        "torus_knot": k.is_torus(),
        "phi": c.phi.to_json_value(),
        "phi_text": c.phi.to_string(),
        "deg_z": c.deg_z.to_string(),
        "squarefree": c.squarefree,
        "provenance": c.provenance.name(),
        "component_bound": c.component_bound.to_string(),
        "dihedral_count": census.distinct.to_string(),
    }))
}

fn twobridge_dihedral(k: &TwoBridgeKnot, g: &GlobalOpts) -> charvar::Result<Value> {
    let c = character_poly(k)?;
    let census = dihedral_census_with(&c, g.tol_root_cluster)?;
    Ok(json!({
        "p": k.p().to_string(),
        "q": k.q().to_string(),
        "dihedral_count": census.distinct.to_string(),
        "expected": census.expected.to_string(),
        "squarefree": census.squarefree,
        "z_values": census.z_values.iter().map(|&z| cnum(z)).collect::<Vec<_>>(),
    }))
}

fn twobridge_csdegree(k: &TwoBridgeKnot, word: &str, g: &GlobalOpts) -> charvar::Result<Value> {
    let w = Word::parse_in(word, 2)?;
    let c = character_poly(k)?;
    let d = cs_degree_seeded(&c, &w, g.seed)?;
    Ok(json!({
        "p": k.p().to_string(),
        "q": k.q().to_string(),
        "word": w.to_string(),
        "cs_degree": d.to_string(),
        "meridian_degree": ((k.p() - 1) / 2).to_string(),
    }))
}

fn bounds(k: &TwoBridgeKnot) -> Value {
    let r = chain_bounds(k);
    json!({
        "p": r.p.to_string(),
        "q": r.q.to_string(),
        "q_representative": r.q_representative.to_string(),
        "strict_epi_bound": r.strict_epi_bound.to_string(),
        "strict_epi_bound_is_strict": r.strict_epi_bound_is_strict,
        "dom_bound": r.dom_bound.to_string(),
        "dom_bound_chain": r.dom_bound_chain.to_string(),
        "deg1_bound": r.deg1_bound.to_string(),
        "minimality": r.minimality.name(),
        "prime_power": r.prime_power,
    })
}

fn epi_search(a: &EpiSearchArgs) -> charvar::Result<Value> {
    if a.n_min > a.n_max {
        return Err(Error::InvalidInput(format!("empty range [{}, {}]", a.n_min, a.n_max)));
    }
    if !a.hyperbolic {
        let sols = euclidean_epi_search(a.n_min, a.n_max);
        return Ok(json!({
            "geometry": "euclidean",
            "group": "(2,3,6)",
            "solutions": sols.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
        }));
    }
    if a.max_order < 3 {
        return Err(Error::InvalidInput(format!("--max-order {} is below 3", a.max_order)));
    }
    let reports = hyperbolic_scan(a.n_min, a.n_max, a.max_order)?;
    let satisfied: Vec<Value> = reports
        .iter()
        .filter(|r| r.satisfied)
        .map(|r| {
            json!({
                "n": r.n.to_string(),
                "scenario": r.params.scenario.name(),
                "q": r.params.q.to_string(),
                "r": r.params.r.to_string(),
                "s": r.params.s.to_string(),
                "convention": r.params.convention.name(),
                "residual": num(r.residual),
            })
        })
        .collect();
    let mut ns: Vec<i64> = reports.iter().filter(|r| r.satisfied).map(|r| r.n).collect();
    ns.dedup();
    let min_unsat = reports.iter().filter(|r| !r.satisfied).map(|r| r.residual).fold(f64::INFINITY, f64::min);
    Ok(json!({
        "geometry": "hyperbolic",
        "instances_checked": reports.len().to_string(),
        "solutions": ns.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
        "satisfied": satisfied,
        "min_unsatisfied_residual": if min_unsat.is_finite() { num(min_unsat) } else { Value::Null },
    }))
}

fn bend_check(path: &std::path::Path, g: &GlobalOpts) -> charvar::Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let rep = SplittingRep::from_json(&text)?;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let r = bending_constancy_with(&rep, &mut rng, g.tol_rel)?;
    let witness = r.witness.as_ref().map(|w| {
        json!({
            "word": w.word.to_string(),
            "bend": cmat(&w.bend),
            "trace_before": cnum(w.before),
            "trace_after": cnum(w.after),
            "gap": num(w.gap),
        })
    });
    Ok(json!({
        "variant": if rep.is_amalgam() { "amalgam" } else { "hnn" },
        "verdict": if r.constant { "constant" } else { "nonconstant" },
        "case": serde_json::to_value(r.case).expect("plain enum"),
        "centralizer": serde_json::to_value(r.centralizer).expect("plain enum"),
        "samples": r.samples.to_string(),
        "words": r.words.to_string(),
        "max_discrepancy": num(r.max_discrepancy),
        "witness": witness,
    }))
}

fn sweep_one(k: &TwoBridgeKnot, cmd: SweepCommand, g: &GlobalOpts) -> charvar::Result<Value> {
    match cmd {
        SweepCommand::Info => twobridge_info(k),
        SweepCommand::Alexander => twobridge_alexander(k),
        SweepCommand::Charpoly => twobridge_charpoly(k, g),
        SweepCommand::Dihedral => twobridge_dihedral(k, g),
        SweepCommand::Csdegree => twobridge_csdegree(k, "a", g),
        SweepCommand::Bounds => Ok(bounds(k)),
    }
}

fn scalar_text(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

/// One row per knot in (p, q) order; failures go into the last column.
fn sweep_rows(a: &SweepArgs, g: &GlobalOpts) -> charvar::Result<Vec<Value>> {
    if a.p_max > a.p_cap {
        return Err(Error::InvalidInput(format!("--p-max {} exceeds the cap {}", a.p_max, a.p_cap)));
    }
    let knots = if a.all_q { TwoBridgeKnot::enumerate(3, a.p_max) } else { TwoBridgeKnot::enumerate_types(3, a.p_max) };
    Ok(knots
        .par_iter()
        .map(|k| {
            let mut row = Map::new();
            row.insert("p".into(), k.p().to_string().into());
            row.insert("q".into(), k.q().to_string().into());
            let res = sweep_one(k, a.command, g);
            for &c in a.command.columns() {
                let v = res.as_ref().ok().and_then(|r| r.get(c)).cloned().unwrap_or(Value::Null);
                row.insert(c.into(), v);
            }
            row.insert("failure".into(), res.err().map_or(Value::Null, |e| e.to_string().into()));
            Value::Object(row)
        })
        .collect())
}

pub fn sweep_csv(cmd: SweepCommand, rows: &[Value]) -> String {
    let mut header = vec!["p", "q"];
    header.extend(cmd.columns());
    header.push("failure");
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for r in rows {
        w.write_record(header.iter().map(|h| scalar_text(r.get(*h)))).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 fields")
}

fn tolerances(g: &GlobalOpts) -> Value {
    json!({
        "rel": num(g.tol_rel),
        "root_cluster": num(g.tol_root_cluster),
        "riley_residual": num(RILEY_RESIDUAL_TOL),
        "longitude": num(LONGITUDE_TOL),
        "triangle_relation": num(RELATION_TOL),
        "scenario_residual": num(SCENARIO_TOL),
    })
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Twobridge { op } => format!(
            "twobridge {}",
            match op {
                TwoBridgeOp::Info(_) => "info",
                TwoBridgeOp::Alexander(_) => "alexander",
                TwoBridgeOp::Charpoly(_) => "charpoly",
                TwoBridgeOp::Dihedral(_) => "dihedral",
                TwoBridgeOp::Csdegree { .. } => "csdegree",
            }
        ),
        Command::Twist { .. } => "twist epi-search".into(),
        Command::Bend { .. } => "bend check".into(),
        Command::Bounds(_) => "bounds".into(),
        Command::Sweep(_) => "sweep".into(),
    }
}

fn inputs(c: &Command, g: &GlobalOpts) -> Value {
    let mut v = match c {
        Command::Twobridge { op } => match op {
            TwoBridgeOp::Info(k) | TwoBridgeOp::Alexander(k) | TwoBridgeOp::Charpoly(k) | TwoBridgeOp::Dihedral(k) => {
                knot_inputs(*k)
            }
            TwoBridgeOp::Csdegree { knot, word } => {
                let mut v = knot_inputs(*knot);
                v["word"] = word.clone().into();
                v
            }
        },
        Command::Twist { op: TwistOp::EpiSearch(a) } => json!({
            "n_min": a.n_min.to_string(),
            "n_max": a.n_max.to_string(),
            "geometry": if a.hyperbolic { "hyperbolic" } else { "euclidean" },
            "max_order": a.max_order.to_string(),
        }),
        Command::Bend { op: BendOp::Check { input } } => json!({ "input": input.display().to_string() }),
        Command::Bounds(k) => knot_inputs(*k),
        Command::Sweep(a) => json!({ "p_max": a.p_max.to_string(), "command": a.command.name(), "all_q": a.all_q }),
    };
    v["seed"] = g.seed.to_string().into();
    v
}

fn execute(c: &Command, g: &GlobalOpts) -> charvar::Result<Value> {
    match c {
        Command::Twobridge { op } => match op {
            TwoBridgeOp::Info(k) => twobridge_info(&knot(*k)?),
            TwoBridgeOp::Alexander(k) => twobridge_alexander(&knot(*k)?),
            TwoBridgeOp::Charpoly(k) => twobridge_charpoly(&knot(*k)?, g),
            TwoBridgeOp::Dihedral(k) => twobridge_dihedral(&knot(*k)?, g),
            TwoBridgeOp::Csdegree { knot: k, word } => twobridge_csdegree(&knot(*k)?, word, g),
        },
        Command::Twist { op: TwistOp::EpiSearch(a) } => epi_search(a),
        Command::Bend { op: BendOp::Check { input } } => bend_check(input, g),
        Command::Bounds(k) => Ok(bounds(&knot(*k)?)),
        Command::Sweep(a) => Ok(json!({ "rows": sweep_rows(a, g)? })),
    }
}

/// Runs a parsed command, returning the exit code and the report.
pub fn run_cli(cli: &Cli) -> (i32, Report) {
    let g = &cli.global;
    let start = Instant::now();
    let outcome = if g.tol_rel > 0.0 && g.tol_root_cluster > 0.0 {
        execute(&cli.command, g)
    } else {
        Err(Error::InvalidInput("tolerances must be positive".into()))
    };
    let (code, results, error) = match outcome {
        Ok(v) => (EXIT_OK, v, None),
        Err(e) => (
            if e.is_input_error() { EXIT_INPUT } else { EXIT_INTERNAL },
            Value::Null,
            Some(ReportError { kind: e.kind().into(), message: e.to_string() }),
        ),
    };
    let report = Report {
        command: command_name(&cli.command),
        inputs: inputs(&cli.command, g),
        results,
        version: env!("CARGO_PKG_VERSION").into(),
        tolerances: tolerances(g),
        error,
        wall_time_s: g.timing.then(|| num(start.elapsed().as_secs_f64()).as_str().unwrap_or_default().to_string()),
    };
    (code, report)
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    if r.error.is_some() {
        return out;
    }
    if let Value::Object(m) = &r.results {
        for (k, v) in m {
            out.push_str(&format!("{k}: {}\n", scalar_text(Some(v))));
        }
    }
    if let Some(t) = &r.wall_time_s {
        out.push_str(&format!("wall_time_s: {t}\n"));
    }
    out
}

/// The whole program: parses `argv`, runs the command and renders stdout
/// and stderr text.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() { (code, String::new(), text) } else { (code, text, String::new()) };
        }
    };
    let (code, report) = run_cli(&cli);
    let stdout = match &cli.command {
        Command::Sweep(a) if !cli.global.json && report.error.is_none() => {
            let rows = report.results["rows"].as_array().cloned().unwrap_or_default();
            sweep_csv(a.command, &rows)
        }
        _ if cli.global.json => serde_json::to_string_pretty(&report).expect("plain data") + "\n",
        _ => render_text(&report),
    };
    let stderr = match &report.error {
        Some(e) if !cli.global.json => format!("charvar: {} ({})\n", e.message, e.kind),
        _ => String::new(),
    };
    (code, stdout, stderr)
}
