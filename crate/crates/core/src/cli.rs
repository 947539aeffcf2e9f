//! Command-line front end. [`dispatch`] takes the argument vector and two
//! sinks so it can be driven from tests as well as from the binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{self, LineBundleOnCurve};
use crate::config::{Config, OutputFormat, CAP_ENV};
use crate::filling::{self, Atom, FactFile, Flag, GridBounds};
use crate::graph::{self, StableGraph};
use crate::hurwitz::{self, RamificationProfile};
use crate::rewrite::{self, Preset, Rewriter};
use crate::strata;
use crate::Error;

/// The fact file describing the known cases, shipped with the crate.
pub const DEFAULT_FACTS: &str = include_str!("../data/default_facts.json");

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "strataforge", version, about = "Stable graphs, filling criteria, Hurwitz profiles and graded normal forms")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    /// Upper bound on 3g - 3 + n for graph enumeration.
    #[arg(long, global = true, env = CAP_ENV, value_parser = clap::value_parser!(u32).range(1..))]
    cap: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate stable graphs of genus G with N legs.
    Graphs(GraphsArgs),
    /// Enumerate decorated strata of a given codimension.
    Strata(StrataArgs),
    /// Propagate filling criteria over the (g, n) grid.
    Fill(FillArgs),
    /// Riemann-Hurwitz bookkeeping for covers of the line.
    Rh(RhArgs),
    /// Point-independence bounds.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Normal form of a polynomial expression.
    Reduce(ReduceArgs),
}

#[derive(Debug, Args)]
struct GraphsArgs {
    g: u32,
    n: u32,
    /// Keep only trees.
    #[arg(long)]
    compact_type: bool,
    /// Keep only rational-tails graphs.
    #[arg(long)]
    rational_tails: bool,
    /// Drop graphs with a separating edge.
    #[arg(long)]
    no_separating_edge: bool,
    /// Keep graphs with a vertex of this (genus:valence) type; repeatable.
    #[arg(long = "vertex-type", value_name = "G:N", value_parser = parse_pair)]
    vertex_types: Vec<(u32, u32)>,
    /// Return the largest contraction-closed set passing the filters, searched
    /// from the smooth graph (not subject to the cap).
    #[arg(long)]
    open_interior: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    count_only: bool,
}

#[derive(Debug, Args)]
struct StrataArgs {
    g: u32,
    n: u32,
    #[arg(long)]
    codim: u32,
    #[arg(long)]
    count_only: bool,
}

#[derive(Debug, Args)]
struct FillArgs {
    /// Fact file (defaults to the shipped one).
    #[arg(long)]
    facts: Option<PathBuf>,
    /// Print the derivation of KIND at (G, N).
    #[arg(long, num_args = 3, value_names = ["G", "N", "KIND"])]
    explain: Option<Vec<String>>,
    /// Print the grid.
    #[arg(long)]
    chart: bool,
    #[arg(long, default_value_t = 8)]
    max_g: u32,
    #[arg(long, default_value_t = 16)]
    max_n: u32,
}

#[derive(Debug, Args)]
struct RhArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    g: u32,
    #[arg(long, conflicts_with_all = ["fph", "validate"])]
    simple: bool,
    /// Profile with one point of ramification order A + 2.
    #[arg(long, value_name = "A", conflicts_with = "validate")]
    fph: Option<u32>,
    /// Partitions separated by ';', parts by ','.
    #[arg(long, value_name = "MU1;MU2;...")]
    validate: Option<String>,
}

#[derive(Debug, Subcommand)]
enum BoundCmd {
    /// Plane curves of degree D.
    Plane { d: u32 },
    /// Trigonal curves of genus G.
    Trig { g: u32 },
    /// Tetragonal curves of genus G with splitting type F1.
    Tetra { g: u32, f1: u32 },
    /// A line bundle of degree DEG on a curve of genus G.
    Generic {
        #[arg(allow_negative_numbers = true)]
        deg: i64,
        g: u32,
    },
}

#[derive(Debug, Args)]
struct ReduceArgs {
    /// trig:G, tetra:G or plane:D.
    #[arg(long, value_parser = parse_preset)]
    preset: Preset,
    /// Number of markings.
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Also print the decomposition against the module generators.
    #[arg(long)]
    generators: bool,
    #[arg(allow_hyphen_values = true)]
    expr: String,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected G:N, got {s:?}"))?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse::<Preset>().map_err(|e| e.to_string())
}

/// Runs the command line `args` (including the program name), writing data
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut config = Config::default();
    if let Some(cap) = cli.cap {
        config.cap = cap;
    }
    config.format = match cli.format {
        Format::Text => OutputFormat::Text,
        Format::Json => OutputFormat::Json,
    };
    match run(cli.command, &config, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", e.name());
            EXIT_DOMAIN
        }
    }
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), Error> {
    // a closed pipe is not a domain error
    let _ = writeln!(out, "{text}");
    Ok(())
}

fn run(command: Command, config: &Config, out: &mut dyn Write) -> Result<(), Error> {
    let json = config.format == OutputFormat::Json;
    match command {
        Command::Graphs(a) => run_graphs(a, config, out),
        Command::Strata(a) => {
            let found = strata::enumerate_decorated(a.g, a.n, a.codim, config.cap)?;
            if a.count_only {
                return emit(out, found.len());
            }
            if json {
                let items: Vec<_> = found
                    .iter()
                    .map(|d| json!({"key": d.canonical_key().to_hex(), "codim": d.codimension(), "stratum": d}))
                    .collect();
                return emit(out, serde_json::Value::Array(items));
            }
            for d in &found {
                emit(out, d)?;
            }
            Ok(())
        }
        Command::Fill(a) => run_fill(a, json, out),
        Command::Rh(a) => run_rh(a, json, out),
        Command::Bound(b) => run_bound(b, json, out),
        Command::Reduce(a) => {
            let rw = Rewriter::new(a.preset, a.n)?;
            let p = rewrite::parse_poly(&a.expr)?;
            let nf = rw.normal_form(&p)?;
            if json {
                let mut value = json!({"preset": a.preset.to_string(), "n": a.n, "normal_form": nf});
                if a.generators {
                    value["decomposition"] = serde_json::to_value(rw.decompose(&nf)).expect("serializable");
                }
                return emit(out, value);
            }
            emit(out, &nf)?;
            if a.generators {
                for (zeta, coeff) in rw.decompose(&nf) {
                    emit(out, format!("  [{zeta}] {coeff}"))?;
                }
            }
            Ok(())
        }
    }
}

fn run_graphs(a: GraphsArgs, config: &Config, out: &mut dyn Write) -> Result<(), Error> {
    let keep = |graph: &StableGraph| {
        let class = graph.classify();
        (!a.compact_type || class.compact_type)
            && (!a.rational_tails || class.rational_tails)
            && (!a.no_separating_edge || !class.has_separating_edge)
            && (a.vertex_types.is_empty()
                || (0..graph.num_vertices())
                    .any(|v| a.vertex_types.contains(&(graph.vertex_genus(v), graph.valence(v) as u32))))
    };
    let graphs: Vec<StableGraph> = if a.open_interior {
        graph::open_locus(a.g, a.n, keep)?
    } else {
        graph::enumerate(a.g, a.n, config.cap)?.into_iter().filter(|g| keep(g)).collect()
    };
    if a.count_only {
        return emit(out, graphs.len());
    }
    if a.json || config.format == OutputFormat::Json {
        let items: Vec<_> =
            graphs.iter().map(|g| json!({"key": g.canonical_key().to_hex(), "graph": g})).collect();
        return emit(out, serde_json::Value::Array(items));
    }
    for g in &graphs {
        emit(out, format!("{}  {g}", g.canonical_key()))?;
    }
    Ok(())
}

fn run_fill(a: FillArgs, json: bool, out: &mut dyn Write) -> Result<(), Error> {
    let facts = match &a.facts {
        Some(path) => FactFile::load(path)?,
        None => FactFile::from_json(DEFAULT_FACTS)?,
    };
    let bounds = GridBounds { max_g: a.max_g, max_n: a.max_n };
    let status = filling::propagate(&facts, bounds)?;
    if let Some(spec) = &a.explain {
        let bad = |what: &str| filling::FillError::Malformed(format!("bad --explain {what}: {spec:?}"));
        let g: u32 = spec[0].parse().map_err(|_| bad("genus"))?;
        let n: u32 = spec[1].parse().map_err(|_| bad("marking count"))?;
        let flag: Flag = spec[2].parse()?;
        if !bounds.contains(g, n) {
            return Err(filling::FillError::OutOfGrid { g, n }.into());
        }
        let atom = Atom::new(flag, g, n);
        match status.explain(&atom) {
            Some(lines) if json => {
                emit(out, json!({"atom": atom.to_string(), "holds": true, "derivation": lines}))?;
            }
            Some(lines) => {
                for line in lines {
                    emit(out, line)?;
                }
            }
            None if json => emit(out, json!({"atom": atom.to_string(), "holds": false}))?,
            None => emit(out, format!("{atom} is not derived"))?,
        }
    }
    if a.chart || a.explain.is_none() {
        let chart = status.chart();
        if json {
            emit(out, serde_json::to_string(&chart).expect("serializable"))?;
        } else if a.chart {
            let _ = write!(out, "{}", chart.to_text());
        } else {
            for flag in [Flag::Bar, Flag::Ct, Flag::Rt, Flag::Open] {
                let cells: Vec<String> = chart
                    .heights
                    .get(flag)
                    .iter()
                    .map(|h| h.map_or_else(|| "-".to_string(), |n| n.to_string()))
                    .collect();
                emit(out, format!("{:<5} {}", flag.as_str(), cells.join(",")))?;
            }
        }
    }
    Ok(())
}

fn run_rh(a: RhArgs, json: bool, out: &mut dyn Write) -> Result<(), Error> {
    if let Some(text) = &a.validate {
        let profile = RamificationProfile::parse(a.k, a.g, text)?;
        let report = profile.validate();
        if json {
            return emit(out, json!({"profile": profile, "report": report}));
        }
        emit(out, format!("ok={} deficit={}", report.ok, report.deficit))?;
        for w in &report.warnings {
            emit(out, format!("warning: {w}"))?;
        }
        return Ok(());
    }
    if let Some(a_order) = a.fph {
        let fph = hurwitz::fph_profile(a.k, a.g, a_order)?;
        let report = fph.profile.validate();
        if json {
            return emit(out, json!({"m": fph.m, "N": fph.n_total, "profile": fph.profile, "report": report}));
        }
        emit(out, format!("m={} N={} branch_points={} ok={}", fph.m, fph.n_total, fph.profile.branch_points(), report.ok))?;
        return Ok(());
    }
    let profile = hurwitz::simple_profile(a.k, a.g)?;
    let report = profile.validate();
    if json {
        return emit(out, json!({"m": profile.branch_points(), "profile": profile, "report": report}));
    }
    emit(out, format!("m={} ok={}", profile.branch_points(), report.ok))
}

fn run_bound(b: BoundCmd, json: bool, out: &mut dyn Write) -> Result<(), Error> {
    let value = match b {
        BoundCmd::Plane { d } => {
            let (g, bound) = bounds::plane_bound(d)?;
            json!({"d": d, "g": g, "bound": bound})
        }
        BoundCmd::Trig { g } => {
            let t = bounds::trigonal_bound(g);
            json!({"g": g, "bound": t.bound, "h0": t.h0})
        }
        BoundCmd::Tetra { g, f1 } => json!({"g": g, "f1": f1, "bound": bounds::tetragonal_bound(g, f1)?}),
        BoundCmd::Generic { deg, g } => {
            json!({"g": g, "deg": deg, "bound": bounds::independence_bound(LineBundleOnCurve { genus: g, degree: deg })})
        }
    };
    if json {
        emit(out, value)
    } else {
        emit(out, &value["bound"])
    }
}
