use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linfty::cli::{fixture_document, FixtureFamily, run_pipeline, AlgebraDocument, Command, DocumentOptions, OutputFormat, RunOptions};
use linfty::mc::FrameMode;

/// Exact L∞ structures, Maurer–Cartan solutions and Kuranishi loci for
/// finite-dimensional DGLAs.
#[derive(Parser)]
#[command(name = "linfty", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Check d² = 0, Leibniz and Jacobi (and the product, if any).
    Check(Run),
    /// Hodge decomposition, cohomology and the homotopy η.
    Hodge(Run),
    /// Print the induced operations μ_n.
    Induce(Run),
    /// Verify the higher Jacobi identities of the induced structure.
    Verify(Run),
    /// Verify the Kuranishi morphism and the correspondence of solutions.
    Kuranishi(Run),
    /// Versal solution of the Maurer–Cartan equation.
    Solve(Run),
    /// Equations of the Kuranishi locus.
    Locus(Run),
    /// Reduction of the L∞ equation to the classical one on the locus.
    Degenerate(Run),
    /// The full chain, ending with the moduli report.
    Report(Run),
    /// Write seeded endomorphism-algebra documents.
    Fixtures(FixtureArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    #[value(name = "0")]
    Zero,
    #[value(name = "Z")]
    Z,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Machine,
    Human,
}

#[derive(Args)]
struct Run {
    /// Algebra document.
    file: PathBuf,
    /// Highest arity checked [default: 5]
    #[arg(long)]
    max_arity: Option<usize>,
    /// Truncation order of series [default: 5]
    #[arg(long)]
    order: Option<usize>,
    /// Parameters for H¹ only (0) or for all of H^* (Z) [default: Z]
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Endomorphism algebras of small complexes, with their product.
    End,
    /// Nilpotent algebras in degrees 1 and 2.
    Nil,
}

#[derive(Args)]
struct FixtureArgs {
    #[arg(long, value_enum, default_value = "end")]
    family: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of consecutive seeds.
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Directory for `<family>-<seed>.alg` files; standard output when absent.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn analyze(command: Command, run: &Run) -> Result<bool, String> {
    let text = std::fs::read_to_string(&run.file).map_err(|e| format!("{}: {e}", run.file.display()))?;
    let doc = AlgebraDocument::parse(&text).map_err(|e| format!("{}:\n{e}", run.file.display()))?;
    let explicit = DocumentOptions {
        max_arity: run.max_arity,
        order: run.order,
        mode: run.mode.map(|m| match m {
            Mode::Zero => FrameMode::Degree1,
            Mode::Z => FrameMode::Full,
        }),
        seed: run.seed,
    };
    let options = RunOptions::resolve(&doc.options, &explicit);
    let report = run_pipeline(&doc, command, options).map_err(|e| e.to_string())?;
    let format = match run.format {
        Format::Machine => OutputFormat::Machine,
        Format::Human => OutputFormat::Human,
    };
    print!("{}", report.render(format));
    Ok(report.passed())
}

fn fixtures(args: &FixtureArgs) -> Result<bool, String> {
    let family = match args.family {
        Family::End => FixtureFamily::Endomorphism,
        Family::Nil => FixtureFamily::Nilpotent,
    };
    for seed in args.seed..args.seed + args.count {
        let name = format!("{}-{seed}", family.prefix());
        let text = format!("# fixture {name}\n{}", fixture_document(family, seed).serialize());
        match &args.out_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
                let path = dir.join(format!("{name}.alg"));
                std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            None => print!("{text}"),
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Sub::Check(r) => analyze(Command::Check, r),
        Sub::Hodge(r) => analyze(Command::Hodge, r),
        Sub::Induce(r) => analyze(Command::Induce, r),
        Sub::Verify(r) => analyze(Command::Verify, r),
        Sub::Kuranishi(r) => analyze(Command::Kuranishi, r),
        Sub::Solve(r) => analyze(Command::Solve, r),
        Sub::Locus(r) => analyze(Command::Locus, r),
        Sub::Degenerate(r) => analyze(Command::Degenerate, r),
        Sub::Report(r) => analyze(Command::Report, r),
        Sub::Fixtures(f) => fixtures(f),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
