//! Command-line front end.

mod config;

pub use config::{FunctionSpec, JobConfig, Mode, OrbitalSpec, OutputFormat, RadialJob, RadialRequest, RadialSource, System};

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::{HalfInt, PiScaled, SqrtRational};
use crate::matel::{assemble_v, he_element, li_element, nuclear_exch, one_body_nuclear, two_electron_element, Channel, MatElError, MatElResult, RadialProvider, Term};
use crate::recoupling::{library_graph, parse_graph, published_graph, write_graph, LIBRARY};
use crate::verify::{self, Suite};
use crate::wigner::{clebsch_gordan, gaunt, nine_j, six_j, square_nine_j, three_j, triple_y, NineJArgs};

#[derive(Parser, Debug)]
#[command(name = "recouple", version, about = "Exact recoupling coefficients and electron-atom potential matrix elements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a Clebsch-Gordan, 3-j, 6-j, 9-j, square 9-j, Gaunt or triple-Y symbol.
    Wigner(WignerArgs),
    /// Inspect and evaluate recoupling graphs.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Matrix elements for every channel pair of a JSON job file.
    Matel(MatelArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Radial integrals requested by a JSON job file.
    Radial(RadialArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SymbolKind {
    Cg,
    #[value(name = "3j")]
    ThreeJ,
    #[value(name = "6j")]
    SixJ,
    #[value(name = "9j")]
    NineJ,
    Sq9j,
    Gaunt,
    TripleY,
}

impl SymbolKind {
    fn arity(self) -> usize {
        match self {
            SymbolKind::NineJ | SymbolKind::Sq9j => 9,
            SymbolKind::TripleY => 3,
            _ => 6,
        }
    }
}

#[derive(Args, Debug)]
pub struct WignerArgs {
    pub kind: SymbolKind,
    /// Arguments as `j` or `j/2`; with `--twice`, as doubled integers.
    #[arg(allow_hyphen_values = true, num_args = 1..)]
    pub args: Vec<String>,
    /// Read every argument as twice its value.
    #[arg(long)]
    pub twice: bool,
    /// Print the exact value (the default).
    #[arg(long)]
    pub exact: bool,
    /// Print the value as a float.
    #[arg(long)]
    pub float: bool,
}

#[derive(Subcommand, Debug)]
pub enum GraphCommand {
    /// List the bundled graphs.
    List,
    /// Print a bundled graph in the text format.
    Show {
        name: String,
        /// Show the as-published transcription instead.
        #[arg(long)]
        published: bool,
    },
    /// Evaluate a graph file (or bundled graph name) at an assignment.
    Eval {
        graph: String,
        /// Label assignment `label=value`, value as `j` or `j/2`.
        #[arg(long = "set", value_name = "LABEL=VALUE")]
        set: Vec<String>,
        /// Use the as-published transcription of a bundled graph.
        #[arg(long)]
        published: bool,
        /// Print the per-term breakdown as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
pub struct MatelArgs {
    pub config: PathBuf,
    /// Worker threads; output is identical for every value.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// One of wigner, recoupling, he, li, radial, all.
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RadialArgs {
    pub config: PathBuf,
}

/// Failure of a subcommand with its exit code: 2 for bad input, 1 otherwise.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    /// A reader closing the pipe early (`| head`) is not an error.
    fn write(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            Self { code: 0, message: String::new() }
        } else {
            Self::runtime(e.to_string())
        }
    }
}

/// Parses `std::env::args`, runs the command and returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(f) => {
            let _ = out.flush();
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            f.code
        }
    }
}

/// Runs one command, writing results to `out`; returns the exit code on success.
pub fn run(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let io = Failure::write;
    match command {
        Command::Wigner(a) => {
            let text = wigner(&a)?;
            writeln!(out, "{text}").map_err(io)?;
            Ok(0)
        }
        Command::Graph(g) => {
            write!(out, "{}", graph(g)?).map_err(io)?;
            Ok(0)
        }
        Command::Matel(a) => {
            let text = matel_file(&a.config, a.threads)?;
            emit(&text, a.out.as_deref(), out)?;
            Ok(0)
        }
        Command::Verify(a) => {
            let suite = Suite::from_str(&a.suite).map_err(Failure::usage)?;
            let report = with_threads(a.threads, || verify::run(suite))?;
            let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::runtime(e.to_string()))? + "\n";
            emit(&text, a.out.as_deref(), out)?;
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Radial(a) => {
            let text = std::fs::read_to_string(&a.config).map_err(|e| Failure::usage(format!("{}: {e}", a.config.display())))?;
            let job: RadialJob = serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", a.config.display())))?;
            let rows = job.run(base_dir(&a.config)).map_err(Failure::runtime)?;
            for r in rows {
                writeln!(out, "{}", serde_json::to_string(&r).unwrap()).map_err(io)?;
            }
            Ok(0)
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::runtime(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(Failure::write),
    }
}

fn base_dir(p: &Path) -> &Path {
    p.parent().unwrap_or(Path::new("."))
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| Failure::runtime(e.to_string()))?;
    Ok(pool.install(f))
}

fn parse_half(s: &str, twice: bool) -> Result<HalfInt, Failure> {
    if twice {
        s.trim().parse::<i32>().map(HalfInt::from_twice).map_err(|_| Failure::usage(format!("not a doubled integer: {s:?}")))
    } else {
        HalfInt::from_str(s).map_err(|e| Failure::usage(e.to_string()))
    }
}

fn show(v: &SqrtRational, a: &WignerArgs) -> String {
    let f = || v.to_f64().map(|x| x.to_string()).unwrap_or_else(|e| e.to_string());
    match (a.float, a.exact) {
        (true, true) => format!("{v}\t{}", f()),
        (true, false) => f(),
        _ => v.to_string(),
    }
}

fn show_pi(v: &PiScaled, a: &WignerArgs) -> String {
    let f = || v.to_f64().map(|x| x.to_string()).unwrap_or_else(|e| e.to_string());
    match (a.float, a.exact) {
        (true, true) => format!("{v}\t{}", f()),
        (true, false) => f(),
        _ => v.to_string(),
    }
}

pub fn wigner(a: &WignerArgs) -> Result<String, Failure> {
    if a.args.len() != a.kind.arity() {
        return Err(Failure::usage(format!("{:?} takes {} arguments, got {}", a.kind, a.kind.arity(), a.args.len())));
    }
    let j: Vec<HalfInt> = a.args.iter().map(|s| parse_half(s, a.twice)).collect::<Result<_, _>>()?;
    let usage = |e: crate::wigner::WignerError| Failure::usage(e.to_string());
    Ok(match a.kind {
        SymbolKind::Cg => show(&clebsch_gordan(j[0], j[1], j[2], j[3], j[4], j[5]), a),
        SymbolKind::ThreeJ => show(&three_j(j[0], j[1], j[2], j[3], j[4], j[5]), a),
        SymbolKind::SixJ => show(&six_j(j[0], j[1], j[2], j[3], j[4], j[5]), a),
        SymbolKind::NineJ => show(&nine_j(&NineJArgs::new([[j[0], j[1], j[2]], [j[3], j[4], j[5]], [j[6], j[7], j[8]]])), a),
        SymbolKind::Sq9j => show(&square_nine_j(&NineJArgs::new([[j[0], j[1], j[2]], [j[3], j[4], j[5]], [j[6], j[7], j[8]]])), a),
        SymbolKind::Gaunt => show_pi(&gaunt(j[0], j[1], j[2], j[3], j[4], j[5]).map_err(usage)?, a),
        SymbolKind::TripleY => show_pi(&triple_y(j[0], j[1], j[2]).map_err(usage)?, a),
    })
}

#[derive(Serialize)]
struct GraphTermOut {
    summed: BTreeMap<String, HalfInt>,
    value: String,
    float: f64,
}

#[derive(Serialize)]
struct GraphOut {
    name: String,
    summation_order: Vec<String>,
    total: String,
    float: f64,
    terms: Vec<GraphTermOut>,
}

fn graph(cmd: GraphCommand) -> Result<String, Failure> {
    match cmd {
        GraphCommand::List => Ok(LIBRARY.iter().map(|(n, _)| format!("{n}\n")).collect()),
        GraphCommand::Show { name, published } => {
            let g = if published { published_graph(&name) } else { library_graph(&name) };
            g.map(|g| write_graph(&g)).ok_or_else(|| Failure::usage(format!("no bundled graph named {name:?}")))
        }
        GraphCommand::Eval { graph, set, published, json } => {
            let g = if Path::new(&graph).is_file() {
                let text = std::fs::read_to_string(&graph).map_err(|e| Failure::usage(format!("{graph}: {e}")))?;
                parse_graph(&text).map_err(|e| Failure::usage(format!("{graph}: {e}")))?
            } else if published {
                published_graph(&graph).ok_or_else(|| Failure::usage(format!("no file or bundled graph {graph:?}")))?
            } else {
                library_graph(&graph).ok_or_else(|| Failure::usage(format!("no file or bundled graph {graph:?}")))?
            };
            let mut a = BTreeMap::new();
            for s in &set {
                let (k, v) = s.split_once('=').ok_or_else(|| Failure::usage(format!("expected LABEL=VALUE, got {s:?}")))?;
                a.insert(k.trim().to_string(), parse_half(v, false)?);
            }
            let v = g.evaluate(&a).map_err(|e| Failure::usage(e.to_string()))?;
            let fl = |p: &PiScaled| p.to_f64().unwrap_or(f64::NAN);
            if json {
                let o = GraphOut {
                    name: g.name.clone(),
                    summation_order: g.summation_order().unwrap_or_default(),
                    total: v.total.to_string(),
                    float: fl(&v.total),
                    terms: v.terms.iter().map(|t| GraphTermOut { summed: t.summed.clone(), value: t.value.to_string(), float: fl(&t.value) }).collect(),
                };
                Ok(serde_json::to_string_pretty(&o).unwrap() + "\n")
            } else {
                Ok(format!("{}\t{}\n", v.total, fl(&v.total)))
            }
        }
    }
}

/// One output row of `matel`.
#[derive(Debug, Serialize)]
pub struct Row {
    pub bra: String,
    pub ket: String,
    pub term: String,
    pub total: f64,
    pub terms: Vec<TermOut>,
}

#[derive(Debug, Serialize)]
pub struct TermOut {
    #[serde(skip_serializing_if = "str::is_empty")]
    pub component: &'static str,
    pub lambda: HalfInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<HalfInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<HalfInt>,
    pub angular: f64,
    pub radial: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

fn compute(cfg: &JobConfig, term: &str, bra: &Channel, ket: &Channel, radial: &dyn RadialProvider) -> Result<MatElResult, MatElError> {
    let n = cfg.system.electrons();
    if cfg.system == System::TwoElectron {
        return two_electron_element(bra, ket, radial);
    }
    match term {
        "one_body_nuclear" => one_body_nuclear(bra, ket, radial),
        "nuclear_exch" => nuclear_exch(bra, ket, radial),
        "v" => assemble_v(bra, ket, radial, cfg.energy, n - 1),
        t => {
            let t = Term::from_str(t).expect("validated term name");
            if n == 3 {
                he_element(t, bra, ket, radial, cfg.energy)
            } else {
                li_element(t, bra, ket, radial, cfg.energy)
            }
        }
    }
}

fn channel_name(c: &Channel) -> String {
    c.id.clone().unwrap_or_else(|| c.label())
}

/// Evaluates every (bra, ket, term) of a validated job in deterministic order.
pub fn matel_rows(cfg: &JobConfig, radial: &dyn RadialProvider) -> Result<Vec<Row>, String> {
    let mut chans: Vec<&Channel> = cfg.channels.iter().collect();
    chans.sort_by_cached_key(|c| c.label());
    let terms = cfg.terms();
    let mut jobs: Vec<(&Channel, &Channel, &str)> = Vec::new();
    for &b in &chans {
        for &k in &chans {
            jobs.extend(terms.iter().map(|t| (b, k, t.as_str())));
        }
    }
    let exact = cfg.mode == Mode::Exact;
    jobs.par_iter()
        .map(|&(bra, ket, term)| {
            let r = compute(cfg, term, bra, ket, radial).map_err(|e| format!("{} / {} / {term}: {e}", channel_name(bra), channel_name(ket)))?;
            Ok(Row {
                bra: channel_name(bra),
                ket: channel_name(ket),
                term: term.to_string(),
                total: r.total,
                terms: r
                    .terms
                    .into_iter()
                    .map(|t| TermOut {
                        component: t.component,
                        lambda: t.term.lambda,
                        q: t.term.q,
                        p: t.term.p,
                        angular: t.angular,
                        radial: t.radial,
                        exact: exact.then(|| t.exact.to_string()),
                    })
                    .collect(),
            })
        })
        .collect()
}

fn half_text(h: HalfInt) -> String {
    h.to_string()
}

/// Renders rows as JSON lines or CSV with a header.
pub fn render(rows: &[Row], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => rows.iter().map(|r| serde_json::to_string(r).unwrap() + "\n").collect(),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["bra", "ket", "term", "total", "breakdown"]).unwrap();
            for r in rows {
                let mut per: BTreeMap<HalfInt, f64> = BTreeMap::new();
                for t in &r.terms {
                    *per.entry(t.lambda).or_insert(0.0) += t.angular * t.radial;
                }
                let breakdown: Vec<String> = per.iter().map(|(l, v)| format!("{}:{v}", half_text(*l))).collect();
                w.write_record([r.bra.clone(), r.ket.clone(), r.term.clone(), r.total.to_string(), breakdown.join(" ")]).unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
    }
}

/// Runs a `matel` job file end to end and returns the rendered table.
pub fn matel_file(path: &Path, threads: usize) -> Result<String, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let cfg: JobConfig = serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    cfg.validate().map_err(Failure::usage)?;
    let radial = cfg.provider(base_dir(path)).map_err(Failure::usage)?;
    let rows = with_threads(threads, || matel_rows(&cfg, radial.as_ref()))?.map_err(Failure::runtime)?;
    Ok(render(&rows, cfg.output))
}
