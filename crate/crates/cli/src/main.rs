use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mixent::states::Family;
use mixent_cli::campaign::run_campaign;
use mixent_cli::dataset::{Dataset, Format, Metadata};
use mixent_cli::input::{parse_matrix, read_state};
use mixent_cli::{analyze, fuzz_bounds, lptps_line, memms_grid, BundleMeasure, CampaignConfig, CliError, Figure, FULL_COLUMNS};

/// Mixedness versus entanglement of two-qubit states.
#[derive(Parser)]
#[command(name = "mixent", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one state given as JSON {"re": 4x4, "im": 4x4}.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Output file (standard output when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a campaign of states and write a dataset.
    Campaign {
        #[arg(long, value_enum, default_value = "none")]
        figure: Figure,
        /// Number of states (defaults to the figure's size).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// random, memms, lptps, product or pure (fixed by the figure unless `none`).
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a quick-look SVG scatter next to the dataset.
        #[arg(long)]
        svg: bool,
    },
    /// Check every bound on random and boundary-biased states.
    Fuzz {
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra matrix files to validate and check.
        #[arg(long)]
        inject: Vec<PathBuf>,
        /// Write the report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// MEMMS surface samples on an n x n grid of marginal spectra.
    MemmsGrid {
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extremal LPTPS at n evenly spaced purity gaps.
    LptpsLine {
        #[arg(long, default_value_t = 11)]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: mixent::Error| e.to_string())
}

fn emit(data: &Dataset, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => data.write_to_path(format, path),
        None => data
            .write(format, BufWriter::new(io::stdout().lock()))
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Analyze { file, format, out } => {
            let rho = read_state(&file)?;
            let record = analyze(&rho, 0, 0, BundleMeasure::Eof);
            let source = file.file_name().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            let meta = Metadata::new("analyze").with("source", source).with("bundle_measure", "eof");
            let mut data = Dataset::new(meta, FULL_COLUMNS.to_vec());
            data.push(record.cells(&FULL_COLUMNS));
            emit(&data, format, out.as_deref())
        }
        Command::Campaign {
            figure,
            n,
            seed,
            family,
            format,
            out,
            svg,
        } => {
            let out = out.ok_or_else(|| CliError::Usage("campaign needs --out".into()))?;
            let n = n.unwrap_or(figure.default_n());
            let config = CampaignConfig::new(n, seed, family, figure, out, format)?.with_svg(svg);
            let (output, written) = run_campaign(&config)?;
            println!("{}", output.summary);
            for p in written {
                println!("wrote {}", p.display());
            }
            Ok(())
        }
        Command::Fuzz { n, seed, inject, out } => {
            let mut report = fuzz_bounds(n, seed);
            for path in &inject {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                let label = path.display().to_string();
                match parse_matrix(&text) {
                    Ok(m) => {
                        report.check_matrix(&label, m);
                    }
                    Err(e) => report.rejected.push((label, e.to_string())),
                }
            }
            println!("{report}");
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&report.to_json()).expect("report serialises") + "\n";
                std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
            }
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Violation(format!("{} bound check(s) failed", report.violations.len())))
            }
        }
        Command::MemmsGrid { n, format, out } => emit(&memms_grid(n)?, format, out.as_deref()),
        Command::LptpsLine { n, format, out } => emit(&lptps_line(n)?, format, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mixent: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
