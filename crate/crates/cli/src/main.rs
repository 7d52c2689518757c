use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ctrad_core::verify::{self, Mode, Selection, VerificationReport};
use ctrad_core::{ClusterCategory, DynkinType, Family, Quiver};
use serde_json::json;

#[derive(Parser)]
#[command(name = "ctrad", version, about = "Radical nilpotency of cluster-tilted algebras of Dynkin type")]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, env = "CTRAD_WORKERS", global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nilpotency index of each selected algebra against the table.
    VerifyB(VerifyArgs),
    /// Invariance under every exchange of each selected tilting object.
    VerifyA(VerifyArgs),
    /// Composites of irreducible maps and sectional paths.
    VerifyC {
        #[command(flatten)]
        args: VerifyArgs,
        /// Longest chain checked (default: the nilpotency index).
        #[arg(long)]
        maxlen: Option<usize>,
    },
    /// Structural properties of the whole construction.
    Props(VerifyArgs),
    /// Mutate a quiver read from JSON and print the result.
    Mutate {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        at: usize,
    },
    /// List all tilting objects of the cluster category.
    EnumerateTilting {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the window of the derived category as JSON.
    Window {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hom dimensions between all objects of the cluster category as CSV.
    Homdims {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    A,
    D,
    E,
}

#[derive(Args)]
struct TypeArgs {
    #[arg(long = "type", value_enum, ignore_case = true)]
    family: FamilyArg,
    #[arg(long)]
    rank: usize,
}

impl TypeArgs {
    fn dynkin(&self) -> ctrad_core::Result<DynkinType> {
        let family = match self.family {
            FamilyArg::A => Family::A,
            FamilyArg::D => Family::D,
            FamilyArg::E => Family::E,
        };
        DynkinType::new(family, self.rank)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    ty: TypeArgs,
    /// Defaults to exhaustive where allowed, sample otherwise.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of sampled tilting objects.
    #[arg(long, default_value_t = 10)]
    walks: usize,
    #[arg(long, default_value_t = 20)]
    walk_len: usize,
    /// Verify at most this many tilting objects.
    #[arg(long)]
    budget: Option<usize>,
    /// JSON file with a single tilting object to verify.
    #[arg(long)]
    tilting: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a per-vertex CSV table.
    #[arg(long)]
    csv: Option<PathBuf>,
}

impl VerifyArgs {
    fn selection(&self, cat: &ClusterCategory, exhaustive_ok: bool) -> Result<Selection, Box<dyn std::error::Error>> {
        let mode = match self.mode {
            Some(ModeArg::Exhaustive) => Mode::Exhaustive,
            Some(ModeArg::Sample) => Mode::Sample,
            None if exhaustive_ok => Mode::Exhaustive,
            None => Mode::Sample,
        };
        let tilting = match &self.tilting {
            Some(path) => Some(cat.tilting_from_json(&fs::read_to_string(path)?)?),
            None => None,
        };
        Ok(Selection {
            mode,
            seed: self.seed,
            walks: self.walks,
            walk_len: self.walk_len,
            budget: self.budget,
            tilting,
        })
    }
}

fn write_output(out: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => r,
        },
    }
}

fn emit(report: &VerificationReport, args: &VerifyArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    write_output(args.out.as_ref(), &report.to_json())?;
    if let Some(path) = &args.csv {
        fs::write(path, report.to_csv())?;
    }
    for f in report.failures() {
        eprintln!("FAIL {} {}: expected {}, got {}", f.name, f.subject, f.expected, f.actual);
    }
    if !report.complete {
        eprintln!("incomplete: budget reached");
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    if let Some(n) = cli.workers {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::VerifyB(args) => {
            let ty = args.ty.dynkin()?;
            let cat = ClusterCategory::new(ty)?;
            let sel = args.selection(&cat, ty.exhaustive_allowed())?;
            emit(&verify::verify_b(&cat, &sel)?, &args)
        }
        Command::VerifyA(args) => {
            let ty = args.ty.dynkin()?;
            let cat = ClusterCategory::new(ty)?;
            let sel = args.selection(&cat, false)?;
            emit(&verify::verify_a(&cat, &sel)?, &args)
        }
        Command::VerifyC { args, maxlen } => {
            let ty = args.ty.dynkin()?;
            let cat = ClusterCategory::new(ty)?;
            let sel = args.selection(&cat, ty.composition_sweep_allowed())?;
            emit(&verify::verify_c(&cat, &sel, maxlen)?, &args)
        }
        Command::Props(args) => {
            let ty = args.ty.dynkin()?;
            let cat = ClusterCategory::new(ty)?;
            let sel = args.selection(&cat, false)?;
            emit(&verify::props(&cat, &sel)?, &args)
        }
        Command::Mutate { quiver, at } => {
            let q = Quiver::from_json_str(&fs::read_to_string(quiver)?)?;
            write_output(None, &serde_json::to_string(&q.mutate(at)?.to_json())?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::EnumerateTilting { ty, budget, out } => {
            let ty = ty.dynkin()?;
            let cat = ClusterCategory::new(ty)?;
            let e = cat.enumerate_tilting(budget)?;
            let list: Vec<_> = e.tilting.iter().map(|t| cat.tilting_to_refs(t)).collect();
            let doc = json!({
                "type": ty.to_string(),
                "count": list.len(),
                "complete": e.complete,
                "tilting": list,
            });
            write_output(out.as_ref(), &serde_json::to_string_pretty(&doc)?)?;
            Ok(if e.complete { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Window { ty, out } => {
            write_output(out.as_ref(), &verify::window_json(ty.dynkin()?)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Homdims { ty, out } => {
            let cat = ClusterCategory::new(ty.dynkin()?)?;
            let csv = cat.orbit().hom_dims_csv();
            write_output(out.as_ref(), csv.trim_end())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
