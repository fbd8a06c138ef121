use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qedab_cli::{run_all, run_product, CliError, Product, Report, Scenario, DEFAULT_SCENARIO};

#[derive(Debug, Parser)]
#[command(name = "qedab", version, about = "Charge qubit coupled to an annular cavity through the scalar potential")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario JSON; the bundled reference scenario when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file, or `-` for stdout. For `all`, a directory.
    #[arg(long, global = true, default_value = "-")]
    out: String,

    /// Suppress warnings on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Lowest cavity mode: k, frequency, normalization, boundary residuals.
    Mode,
    /// Geometric factor f over the δρ/ρ₁ grid.
    Fig2,
    /// Dressed frequencies over the detuning grid.
    Fig3a,
    /// Resonant vacuum Rabi oscillation from |e,0⟩.
    Fig3b,
    /// Dynamics with the scenario's detuning, initial state and truncation.
    Rabi,
    /// Free-space decay rate and coherence budget.
    Decay,
    /// Every product listed under `output.products`.
    All,
}

impl Command {
    fn product(self) -> Option<Product> {
        match self {
            Command::Mode => Some(Product::Mode),
            Command::Fig2 => Some(Product::Fig2),
            Command::Fig3a => Some(Product::Fig3a),
            Command::Fig3b => Some(Product::Fig3b),
            Command::Rabi => Some(Product::Rabi),
            Command::Decay => Some(Product::Decay),
            Command::All => None,
        }
    }
}

fn emit(out: &str, text: &str) -> io::Result<()> {
    if out == "-" {
        let mut stdout = io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        stdout.flush()
    } else {
        fs::write(out, text)
    }
}

fn warn(cli: &Cli, name: &str, report: &Report) {
    if !cli.quiet {
        for w in &report.warnings {
            eprintln!("warning [{name}]: {w}");
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    let scenario = match &cli.config {
        Some(path) => Scenario::from_path(path)?,
        None => Scenario::from_json_str(DEFAULT_SCENARIO)?,
    };
    match cli.command.product() {
        Some(product) => {
            let report = run_product(&scenario, product)?;
            warn(cli, product.name(), &report);
            emit(&cli.out, &report.text)?;
            Ok(!report.all_rows_failed)
        }
        None => {
            let reports = run_all(&scenario)?;
            let mut ok = true;
            if cli.out == "-" {
                let mut text = String::new();
                for (product, report) in &reports {
                    text.push_str(&format!("# {}\n", product.name()));
                    text.push_str(&report.text);
                }
                emit("-", &text)?;
            } else {
                let dir = Path::new(&cli.out);
                fs::create_dir_all(dir)?;
                for (product, report) in &reports {
                    fs::write(dir.join(format!("{}.csv", product.name())), &report.text)?;
                }
            }
            for (product, report) in &reports {
                warn(cli, product.name(), report);
                ok &= !report.all_rows_failed;
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: every row of the sweep failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
