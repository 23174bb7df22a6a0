//! Command-line front end.
//!
//! Exit codes: 0 success, 2 input parse error, 3 validation error,
//! 4 exact-search threshold exceeded, 5 I/O error.

use std::fmt::Write as _;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::generator::generate_system;
use crate::ordering::{segment_counts, total_segments};
use crate::session::{DiagramKind, OptimizerMode, Session, SessionConfig};
use crate::set_model::{zones_from_memberships, MembershipTable, SetSystem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_THRESHOLD: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "hoops",
    version,
    about = "Hoop and Linear diagrams of set intersections"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render a diagram to SVG.
    Render(DiagramArgs),
    /// Print the optimized zone order and its segment counts.
    Optimize(DiagramArgs),
    /// Print segment and size metrics as TSV.
    Metrics(DiagramArgs),
    /// Write a random zones document.
    Generate(GenerateArgs),
    /// Run the HTTP session service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Items,
    Zones,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Hoop,
    Linear,
}

impl From<KindArg> for DiagramKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Hoop => DiagramKind::Hoop,
            KindArg::Linear => DiagramKind::Linear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OptimizerArg {
    Auto,
    None,
    Heuristic,
    Exact,
}

impl From<OptimizerArg> for OptimizerMode {
    fn from(o: OptimizerArg) -> Self {
        match o {
            OptimizerArg::Auto => OptimizerMode::Auto,
            OptimizerArg::None => OptimizerMode::None,
            OptimizerArg::Heuristic => OptimizerMode::Heuristic,
            OptimizerArg::Exact => OptimizerMode::Exact,
        }
    }
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to `zones` for `.json` files and `items` otherwise.
    #[arg(long, value_enum)]
    pub input_format: Option<InputFormat>,
    /// Diagram kind; `metrics` reports both kinds when omitted.
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    #[arg(long, value_enum, default_value = "auto")]
    pub optimizer: OptimizerArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Side of the square hoop canvas in pixels.
    #[arg(long)]
    pub canvas: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub sets: usize,
    #[arg(long)]
    pub zones: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: std::net::IpAddr,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => EXIT_PARSE,
        Error::ThresholdExceeded { .. } => EXIT_THRESHOLD,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_VALIDATION,
    }
}

/// Loads a system from either input format.
pub fn load_system(path: &Path, format: Option<InputFormat>) -> Result<SetSystem> {
    let text = std::fs::read_to_string(path)?;
    let format = format.unwrap_or_else(|| {
        if path.extension().is_some_and(|e| e == "json") {
            InputFormat::Zones
        } else {
            InputFormat::Items
        }
    });
    match format {
        InputFormat::Zones => SetSystem::from_json(&text),
        InputFormat::Items => {
            let derived = zones_from_memberships(&MembershipTable::parse(&text)?)?;
            if derived.skipped > 0 {
                tracing::info!("skipped {} items with no interests", derived.skipped);
            }
            Ok(derived.system)
        }
    }
}

fn session_for(args: &DiagramArgs, system: &SetSystem, kind: DiagramKind) -> Result<Session> {
    let mut config = SessionConfig {
        seed: args.seed,
        ..SessionConfig::default()
    };
    if let Some(c) = args.canvas {
        config.style.canvas_size = c;
    }
    Session::create(system, kind, args.optimizer.into(), config)
}

fn emit(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render(args: &DiagramArgs, stdout: &mut dyn Write) -> Result<()> {
    let system = load_system(&args.input, args.input_format)?;
    let kind = args.kind.map_or(DiagramKind::Hoop, Into::into);
    let svg = session_for(args, &system, kind)?.svg();
    emit(args.output.as_deref(), &svg, stdout)
}

fn optimize(args: &DiagramArgs, stdout: &mut dyn Write) -> Result<()> {
    let system = load_system(&args.input, args.input_format)?;
    let kind = args.kind.map_or(DiagramKind::Hoop, Into::into);
    let session = session_for(args, &system, kind)?;
    let system = session.system();
    let arrangement = session.current_arrangement();
    let stats = segment_counts(system, arrangement)?;
    let mut out = String::new();
    let order: Vec<String> = arrangement
        .zone_order
        .iter()
        .map(ToString::to_string)
        .collect();
    let _ = writeln!(out, "kind\t{}", kind_name(kind));
    let _ = writeln!(out, "zone_order\t{}", order.join(","));
    for (p, &z) in arrangement.zone_order.iter().enumerate() {
        let _ = writeln!(
            out,
            "zone\t{p}\t{}",
            system.zone_labels(system.zones[z]).join(",")
        );
    }
    for (s, runs) in stats.runs_per_set.iter().enumerate() {
        let _ = writeln!(out, "runs\t{}\t{runs}", system.set_names[s]);
    }
    let _ = writeln!(out, "total\t{}", stats.total);
    emit(args.output.as_deref(), &out, stdout)
}

fn kind_name(kind: DiagramKind) -> &'static str {
    match kind {
        DiagramKind::Hoop => "hoop",
        DiagramKind::Linear => "linear",
    }
}

fn metrics(args: &DiagramArgs, stdout: &mut dyn Write) -> Result<()> {
    let system = load_system(&args.input, args.input_format)?;
    let kinds = match args.kind {
        Some(k) => vec![k.into()],
        None => vec![DiagramKind::Hoop, DiagramKind::Linear],
    };
    let mut out = String::from("kind\tmetric\tvalue\n");
    for kind in kinds {
        let session = session_for(args, &system, kind)?;
        let stats = session.segment_stats();
        let name = kind_name(kind);
        let sys = session.system();
        debug_assert_eq!(
            stats.total,
            total_segments(sys, session.current_arrangement())
        );
        let _ = writeln!(out, "{name}\tsets\t{}", sys.num_sets());
        let _ = writeln!(out, "{name}\tzones\t{}", sys.num_zones());
        for (s, runs) in stats.runs_per_set.iter().enumerate() {
            let _ = writeln!(out, "{name}\truns:{}\t{runs}", sys.set_names[s]);
        }
        let _ = writeln!(out, "{name}\ttotal\t{}", stats.total);
        let bbox = session.geometry()?.bbox();
        let _ = writeln!(out, "{name}\twidth\t{}", bbox.width);
        let _ = writeln!(out, "{name}\theight\t{}", bbox.height);
        let _ = writeln!(out, "{name}\taspect_ratio\t{:.4}", bbox.aspect_ratio());
    }
    emit(args.output.as_deref(), &out, stdout)
}

fn generate(args: &GenerateArgs, stdout: &mut dyn Write) -> Result<()> {
    let system = generate_system(args.sets, args.zones, args.seed)?;
    emit(args.output.as_deref(), &system.to_json(), stdout)
}

fn serve(args: &ServeArgs) -> Result<()> {
    let addr = SocketAddr::new(args.host, args.port);
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(crate::api::serve(addr))?;
    Ok(())
}

/// Runs one invocation and returns its exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Render(a) => render(a, stdout),
        Command::Optimize(a) => optimize(a, stdout),
        Command::Metrics(a) => metrics(a, stdout),
        Command::Generate(a) => generate(a, stdout),
        Command::Serve(a) => serve(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
