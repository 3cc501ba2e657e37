use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chern_core::cech::Variant;
use chern_core::manifest::Manifest;
use chern_core::report::{cocycle_report, compare_report};
use chern_core::verify::{self, VerifyConfig};
use chern_core::Error;

#[derive(Parser)]
#[command(name = "chern", version, about = "Exact Chern character cocycles from local bundle data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Standard,
    Arrow,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble the Chern cocycle of one connection family and check closedness.
    Cocycle {
        manifest: PathBuf,
        #[arg(long, value_enum, default_value = "standard")]
        variant: VariantArg,
        #[arg(long = "connections", value_name = "NAME")]
        connections: String,
        /// Highest Čech degree; defaults to the manifest options.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Transgression between two connection families on the same bundle.
    Compare {
        manifest: PathBuf,
        #[arg(long = "family-a", value_name = "NAME")]
        family_a: String,
        #[arg(long = "family-b", value_name = "NAME")]
        family_b: String,
    },
    /// Run the randomized identity suite.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        charts: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

fn load(path: &PathBuf) -> Result<(Manifest, chern_core::cech::CoverModel), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Manifest(format!("{}: {}", path.display(), e)))?;
    let m = Manifest::from_json(&text)?;
    let model = m.build()?;
    Ok((m, model))
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {}", e);
    ExitCode::from(e.exit_code() as u8)
}

fn init_threads() {
    let Ok(v) = std::env::var("CHERN_THREADS") else { return };
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring CHERN_THREADS={:?}", v),
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match cli.command {
        Command::Cocycle { manifest, variant, connections, depth } => {
            let (m, model) = match load(&manifest) {
                Ok(x) => x,
                Err(e) => return fail(&e),
            };
            let variant = match variant {
                VariantArg::Standard => Variant::Standard,
                VariantArg::Arrow => Variant::Arrow,
            };
            let depth = depth.unwrap_or_else(|| m.depth(&model)).min(model.max_degree());
            match cocycle_report(&model, &connections, variant, depth, m.options.seed) {
                Ok(r) => {
                    print!("{}", r.to_json());
                    if r.closed {
                        ExitCode::SUCCESS
                    } else {
                        eprintln!("error: cocycle is not closed at [{}]", r.first_violation.unwrap_or_default());
                        ExitCode::from(4)
                    }
                }
                Err(e) => fail(&e),
            }
        }
        Command::Compare { manifest, family_a, family_b } => {
            let (m, model) = match load(&manifest) {
                Ok(x) => x,
                Err(e) => return fail(&e),
            };
            match compare_report(&model, &family_a, &family_b, m.depth(&model)) {
                Ok(r) => {
                    print!("{}", r.to_json());
                    if r.verified {
                        ExitCode::SUCCESS
                    } else {
                        eprintln!("error: transgression contract fails at [{}]", r.defect.unwrap_or_default());
                        ExitCode::from(4)
                    }
                }
                Err(e) => fail(&e),
            }
        }
        Command::Verify { seed, rank, charts, depth } => {
            let cfg = VerifyConfig { seed, rank, charts, depth };
            let report = match verify::run(&cfg) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            for c in report.checks.iter() {
                let verdict = if c.passed { "pass" } else { "FAIL" };
                match &c.failure {
                    Some(f) => println!("{}  {} ({} cases): {}", verdict, c.name, c.cases, f),
                    None => println!("{}  {} ({} cases)", verdict, c.name, c.cases),
                }
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            println!("seed {} rank {} charts {} depth {}: {} failed", seed, rank, charts, depth, failed);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
