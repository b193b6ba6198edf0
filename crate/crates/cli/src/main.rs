use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use koszul_bar::homology::{bar_complex, koszul_complex, WeightedComplex};
use koszul_bar::koszul::KoszulBridge;
use koszul_bar_cli::{emit_report, run_suite, ConfigError, Injection, ReportFormat, SuiteConfig};

#[derive(Parser)]
#[command(name = "kbar", version, about = "Exact verification of the Koszul and bar resolutions of S(V*)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Run(RunArgs),
    /// Print the Betti table of a weight-split complex.
    Homology(HomologyArgs),
}

#[derive(Args)]
struct Bounds {
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 3)]
    max_weight: u32,
    #[arg(long, default_value_t = 3)]
    max_bar_length: usize,
}

#[derive(Args)]
struct RunArgs {
    /// relations-K, relations-KV, tensor-closure, bar-equivalence,
    /// mu-morphism, homotopy, phi-theorem, homology, quasi-iso or all
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    bounds: Bounds,
    #[arg(long, default_value_t = 4)]
    max_arity: usize,
    /// Random inputs per sweep when dim > 2.
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    report: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// flip-m21, drop-phi-sign or zero-morphism
    #[arg(long)]
    inject: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Koszul,
    Bar,
}

#[derive(Args)]
struct HomologyArgs {
    #[arg(long, value_enum)]
    complex: Which,
    #[command(flatten)]
    bounds: Bounds,
    /// Write the differentials as sparse triplets.
    #[arg(long)]
    export: Option<PathBuf>,
}

fn output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(args: RunArgs) -> Result<bool, String> {
    let config = SuiteConfig {
        suite: args.suite.parse().map_err(|e: ConfigError| e.to_string())?,
        dim: args.bounds.dim,
        max_weight: args.bounds.max_weight,
        max_arity: args.max_arity,
        max_bar_length: args.bounds.max_bar_length,
        samples: args.samples,
        seed: args.seed,
        format: match args.report {
            Format::Text => ReportFormat::Text,
            Format::Json => ReportFormat::Json,
        },
        inject: args
            .inject
            .as_deref()
            .map(str::parse::<Injection>)
            .transpose()
            .map_err(|e| e.to_string())?,
    };
    let report = run_suite(&config).map_err(|e| e.to_string())?;
    let mut out = output(args.out.as_ref()).map_err(|e| e.to_string())?;
    emit_report(&report, config.format, &mut out)
        .and_then(|()| out.flush())
        .map_err(|e| e.to_string())?;
    Ok(report.passed)
}

fn homology(args: HomologyArgs) -> Result<bool, String> {
    let b = &args.bounds;
    let bridge = KoszulBridge::new(b.dim).map_err(|e| e.to_string())?;
    let complex: WeightedComplex = match args.complex {
        Which::Koszul => koszul_complex(&bridge, b.max_weight),
        Which::Bar => bar_complex(&bridge, b.max_weight, b.max_bar_length),
    }
    .map_err(|e| e.to_string())?;
    let low = match args.complex {
        Which::Koszul => -(b.dim as i32),
        Which::Bar => -(b.max_bar_length as i32),
    };
    let table = complex.betti_table(0..=b.max_weight, low..=0);
    print!("{table}");
    if let Some(path) = &args.export {
        let mut out = output(Some(path)).map_err(|e| e.to_string())?;
        complex
            .export_triplets(&mut out)
            .and_then(|()| out.flush())
            .map_err(|e| e.to_string())?;
    }
    Ok(table.resolves_ground_field())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Homology(args) => homology(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("kbar: {msg}");
            ExitCode::from(2)
        }
    }
}
