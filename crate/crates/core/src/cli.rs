//! Command-line front end; the `tetraflow` binary only calls [`run`].
//!
//! The result document of every command goes to `--output` when given and to
//! standard output otherwise. Exit codes: 0 success, 1 a requested assertion
//! failed, 2 usage, parse or input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::analysis::{
    find_ratios, perturb_probe, probe_instance, random_balance_suite, reproduce_tables,
};
use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::graphflow::{
    evaluate_kgraph, gamma1, gamma2, FlowResult, KGraph, GAMMA1, GAMMA2, SKEW_VANISHING, WEDGE,
};
use crate::multivector::{is_poisson, jacobiator, schouten, MultiVector};
use crate::polyring::Rational;
use crate::sampling::DEFAULT_SEED;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "tetraflow",
    version,
    about = "Exact Poisson bi-vectors and tetrahedral flows"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Seed for randomized runs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the result document here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a Poisson bi-vector.
    Gen(GenArgs),
    /// Apply a tetrahedral flow to a bi-vector.
    Flow(FlowArgs),
    /// Schouten bracket of two bi-vectors.
    Bracket {
        p: PathBuf,
        q: PathBuf,
        #[arg(long)]
        assert_zero: bool,
    },
    /// Jacobiator of a bi-vector.
    Jacobi {
        p: PathBuf,
        #[arg(long)]
        assert_zero: bool,
    },
    /// Linear relations among brackets with a Poisson bi-vector.
    Ratios {
        p: PathBuf,
        #[arg(required = true)]
        basis: Vec<PathBuf>,
    },
    /// Epsilon-graded brackets of a perturbed bi-vector.
    Probe {
        /// Poisson bi-vector; the built-in instance is used when omitted.
        #[arg(requires = "delta")]
        p: Option<PathBuf>,
        delta: Option<PathBuf>,
    },
    /// Recompute the reference compatibility grid.
    Tables {
        /// Also check the balanced flow on this many random 3D samples.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Graph utilities.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum GraphAction {
    /// Evaluate an encoded graph on a bi-vector.
    Eval {
        graph: String,
        p: PathBuf,
        #[arg(long)]
        raw: bool,
    },
    /// Print the built-in graph encodings.
    List,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// JSON generator spec file.
    #[arg(long, conflicts_with_all = ["det", "vanhaecke"])]
    pub spec: Option<PathBuf>,
    /// Jacobian determinant bracket with dim-2 arguments.
    #[arg(long, conflicts_with = "vanhaecke")]
    pub det: bool,
    /// Hyperelliptic family on R^(2d).
    #[arg(long)]
    pub vanhaecke: bool,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Determinant argument; repeat once per function.
    #[arg(long = "arg")]
    pub args: Vec<String>,
    /// Function multiplying the determinant bracket.
    #[arg(long)]
    pub prefactor: Option<String>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Polynomial in x and y.
    #[arg(long)]
    pub phi: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Gamma1,
    Gamma2,
    Balanced,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    /// Bi-vector file (text or JSON).
    pub p: PathBuf,
    #[arg(long, value_enum, default_value = "balanced")]
    pub which: Which,
    /// Weight of gamma1 in the balanced combination.
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    pub a: Rational,
    /// Weight of gamma2.
    #[arg(long, default_value = "6", value_parser = parse_rational)]
    pub b: Rational,
    /// Include the matrix before skew-symmetrization.
    #[arg(long)]
    pub raw: bool,
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("not a rational number: `{s}`"))
}

/// Result of a command: the document plus a verdict for `--assert-*`.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
    /// Short line printed to stdout when the document goes to a file.
    summary: Option<String>,
}

impl Outcome {
    fn new(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            ok: true,
            summary: None,
        }
    }
}

fn read_bivector(path: &Path) -> Result<MultiVector> {
    let mv = MultiVector::from_json_str(&fs::read_to_string(path)?)?;
    mv.expect_degree(2)?;
    Ok(mv)
}

fn gen_spec(a: &GenArgs) -> Result<GeneratorSpec> {
    if let Some(path) = &a.spec {
        return Ok(serde_json::from_str(&fs::read_to_string(path)?)?);
    }
    if a.vanhaecke {
        let d =
            a.d.ok_or_else(|| Error::InvalidSpec("--vanhaecke needs --d".into()))?;
        let phi = a.phi.as_deref().unwrap_or("1");
        let mut spec = GeneratorSpec::vanhaecke(d, phi)?;
        if let Some(dim) = a.dim {
            spec.dim = dim;
        }
        return Ok(spec);
    }
    if a.det {
        let dim = a
            .dim
            .ok_or_else(|| Error::InvalidSpec("--det needs --dim".into()))?;
        let args: Vec<&str> = a.args.iter().map(String::as_str).collect();
        return Ok(GeneratorSpec::det(dim, &args, a.prefactor.as_deref()));
    }
    Err(Error::InvalidSpec(
        "choose one of --det, --vanhaecke, --spec".into(),
    ))
}

fn cmd_gen(a: &GenArgs) -> Result<Outcome> {
    let spec = gen_spec(a)?;
    let p = spec.build()?;
    let poisson = is_poisson(&p)?;
    if !poisson {
        return Err(Error::NotPoisson);
    }
    let aliases = spec.aliases();
    let mut text = format!("spec: {spec}\n");
    if !aliases.is_empty() {
        let parts: Vec<String> = aliases.iter().map(|(a, x)| format!("{a}={x}")).collect();
        text.push_str(&format!("aliases: {}\n", parts.join(", ")));
    }
    text.push_str(&p.to_string());
    text.push_str("verdict: Poisson\n");
    let mut doc = p.to_json();
    doc["poisson"] = Value::Bool(poisson);
    if !aliases.is_empty() {
        let m: Map<String, Value> = aliases
            .into_iter()
            .map(|(a, x)| (a, Value::String(x)))
            .collect();
        doc["aliases"] = Value::Object(m);
    }
    let mut out = Outcome::new(text, doc);
    out.summary = Some("verdict: Poisson".into());
    Ok(out)
}

fn flow_outcome(res: &FlowResult, raw: bool) -> Outcome {
    let mut text = res.skew.to_string();
    let mut doc = res.skew.to_json();
    if raw {
        text.push_str("raw:\n");
        text.push_str(&res.raw.to_string());
        doc["raw"] = res.raw.to_json();
    }
    Outcome::new(text, doc)
}

fn cmd_flow(a: &FlowArgs) -> Result<Outcome> {
    let p = read_bivector(&a.p)?;
    let res = match a.which {
        Which::Gamma1 => gamma1(&p)?,
        Which::Gamma2 => gamma2(&p)?,
        Which::Balanced => {
            let (g1, g2) = (gamma1(&p)?, gamma2(&p)?);
            let mut raw = crate::multivector::RawMatrix::zero(p.ctx());
            for i in 0..p.dim() {
                for j in 0..p.dim() {
                    let v = &g1.raw.get(i, j).scale(&a.a) + &g2.raw.get(i, j).scale(&a.b);
                    raw.set(i, j, v);
                }
            }
            FlowResult::from_raw(raw)
        }
    };
    Ok(flow_outcome(&res, a.raw))
}

fn trivector_outcome(t: &MultiVector, label: &str, assert_zero: bool) -> Outcome {
    let zero = t.is_zero();
    let verdict = if zero { "zero" } else { "nonzero" };
    let mut doc = t.to_json();
    doc["zero"] = Value::Bool(zero);
    let mut out = Outcome::new(format!("{t}{label}: {verdict}\n"), doc);
    out.ok = !assert_zero || zero;
    out.summary = Some(format!("{label}: {verdict}"));
    out
}

fn cmd_jacobi(p: &Path, assert_zero: bool) -> Result<Outcome> {
    let p = read_bivector(p)?;
    let j = jacobiator(&p)?;
    let mut out = trivector_outcome(&j, "jacobiator", assert_zero);
    let verdict = if j.is_zero() {
        "Poisson"
    } else {
        "not Poisson"
    };
    out.text.push_str(&format!("verdict: {verdict}\n"));
    out.json["poisson"] = Value::Bool(j.is_zero());
    Ok(out)
}

fn cmd_ratios(p: &Path, basis: &[PathBuf]) -> Result<Outcome> {
    let p = read_bivector(p)?;
    let basis = basis
        .iter()
        .map(|b| read_bivector(b))
        .collect::<Result<Vec<_>>>()?;
    let sol = find_ratios(&p, &basis)?;
    let mut out = Outcome::new(format!("{sol}\n"), sol.to_json());
    out.summary = Some(sol.to_string());
    Ok(out)
}

fn cmd_probe(files: Option<(&Path, &Path)>) -> Result<Outcome> {
    let (p, delta) = match files {
        Some((p, d)) => (
            read_bivector(p)?.lift_epsilon(),
            read_bivector(d)?.lift_epsilon(),
        ),
        None => probe_instance()?,
    };
    let res = perturb_probe(&p, &delta)?;
    let mut text = String::new();
    for (k, (j, q)) in &res.orders {
        text.push_str(&format!("eps^{k} [[P~,P~]]:\n{j}"));
        text.push_str(&format!("eps^{k} [[P~,Q(P~)]]:\n{q}"));
    }
    Ok(Outcome::new(text, res.to_json()))
}

fn cmd_tables(seed: u64, random: usize, max_degree: u32) -> Result<Outcome> {
    let report = reproduce_tables()?;
    let mut text = report.render_text();
    let mut doc = report.to_json();
    let mut ok = report.all_match();
    if random > 0 {
        let suite = random_balance_suite(seed, random, max_degree)?;
        text.push_str(&format!(
            "random balance check (seed {seed}): {}/{} samples satisfy [[P,Q]] = 0\n",
            suite.samples - suite.failures.len(),
            suite.samples
        ));
        doc["random"] = suite.to_json();
        ok &= suite.passed();
    }
    let mut out = Outcome::new(text, doc);
    out.ok = ok;
    out.summary = Some(format!(
        "{}/{} rows match",
        report.matching(),
        report.rows.len()
    ));
    Ok(out)
}

fn cmd_graph(action: &GraphAction) -> Result<Outcome> {
    match action {
        GraphAction::Eval { graph, p, raw } => {
            let g: KGraph = graph.parse()?;
            let p = read_bivector(p)?;
            Ok(flow_outcome(&evaluate_kgraph(&g, &p)?, *raw))
        }
        GraphAction::List => {
            let items = [
                ("wedge", WEDGE),
                ("gamma1", GAMMA1),
                ("gamma2", GAMMA2),
                ("skew-vanishing", SKEW_VANISHING),
            ];
            let text = items.iter().map(|(n, g)| format!("{n}: {g}\n")).collect();
            let doc: Map<String, Value> = items
                .iter()
                .map(|(n, g)| (n.to_string(), json!(g)))
                .collect();
            Ok(Outcome::new(text, Value::Object(doc)))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Flow(a) => cmd_flow(a),
        Command::Bracket { p, q, assert_zero } => {
            let t = schouten(&read_bivector(p)?, &read_bivector(q)?)?;
            Ok(trivector_outcome(&t, "bracket", *assert_zero))
        }
        Command::Jacobi { p, assert_zero } => cmd_jacobi(p, *assert_zero),
        Command::Ratios { p, basis } => cmd_ratios(p, basis),
        Command::Probe { p, delta } => match (p, delta) {
            (Some(p), Some(d)) => cmd_probe(Some((p, d))),
            (None, None) => cmd_probe(None),
            _ => Err(Error::InvalidSpec(
                "probe takes both P and Delta or neither".into(),
            )),
        },
        Command::Tables { random, max_degree } => {
            cmd_tables(cli.seed.unwrap_or(DEFAULT_SEED), *random, *max_degree)
        }
        Command::Graph { action } => cmd_graph(action),
    }
}

fn emit(cli: &Cli, out: &Outcome, stdout: &mut dyn Write) -> Result<()> {
    let body = match cli.format {
        Format::Text => out.text.clone(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json)?),
    };
    match &cli.output {
        Some(path) => {
            fs::write(path, body)?;
            if let Some(s) = &out.summary {
                writeln!(stdout, "{s}")?;
            }
        }
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

/// Runs the parsed command line and returns the process exit code.
pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let res = dispatch(cli).and_then(|out| {
        emit(cli, &out, stdout)?;
        Ok(out.ok)
    });
    match res {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// Parses `args` (program name first) and runs; usage errors exit with 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    execute(
        &cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("tetraflow").chain(args.iter().copied())).unwrap()
    }

    fn run_text(args: &[&str]) -> (i32, String) {
        let cli = parse(args);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = execute(&cli, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn gen_constant_bracket() {
        let (code, out) = run_text(&["gen", "--det", "--dim", "3", "--arg", "x3"]);
        assert_eq!(code, 0);
        assert!(out.contains("(1,2): 1\n"), "{out}");
        assert!(out.ends_with("verdict: Poisson\n"));
    }

    #[test]
    fn gen_vanhaecke_prints_aliases() {
        let (code, out) = run_text(&["gen", "--vanhaecke", "--d", "2", "--phi", "x^2*y^2"]);
        assert_eq!(code, 0);
        assert!(out.contains("aliases: u1=x1, u2=x2, v1=x3, v2=x4"), "{out}");
    }

    #[test]
    fn bad_inputs_exit_with_two() {
        assert_eq!(
            run_text(&["gen", "--det", "--dim", "4", "--arg", "x1"]).0,
            2
        );
        assert_eq!(
            run_text(&["gen", "--det", "--dim", "3", "--arg", "x9"]).0,
            2
        );
        assert_eq!(
            run_text(&["graph", "eval", "1; (S1,S1)", "/nonexistent"]).0,
            2
        );
    }

    #[test]
    fn graph_list_json() {
        let (code, out) = run_text(&["--format", "json", "graph", "list"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["gamma1"], GAMMA1);
    }

    #[test]
    fn flow_defaults_to_the_balanced_ratio() {
        let cli = parse(&["flow", "p.json"]);
        let Command::Flow(a) = cli.command else {
            panic!()
        };
        assert_eq!((a.which, a.a, a.b), (Which::Balanced, rat(1), rat(6)));
    }
}
