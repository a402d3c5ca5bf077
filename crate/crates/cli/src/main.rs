use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fellcoact::cli::{self, Options};
use fellcoact::suites::Config;

/// Verification workbench for finite-group Fell bundles, dual coactions and
/// noncommutative Fourier analysis.
#[derive(Parser)]
#[command(name = "fellcoact", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Default tolerance (absolute, scaled by 1 + operand norm where relative).
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random samples per check.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Machine-readable JSON on stdout.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn options(self) -> Options {
        Options {
            config: Config {
                tol: self.tol,
                seed: self.seed,
                samples: self.samples,
            },
            json: self.json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the Fell bundle axioms of a bundle file, fixture or builtin group.
    CheckBundle {
        bundle: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run one suite on a fixture, `gauge-m2`, a builtin group or a JSON file.
    Verify {
        suite: String,
        target: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print a fixture's worked example with its intermediate matrices.
    Demo { fixture: String },
    /// Run every suite on every fixture.
    All {
        /// Directory for one certificate per (suite, target) and index.json.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Write the fixture corpus as JSON documents.
    Export { dir: PathBuf },
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    let code = match args.command {
        Command::CheckBundle { bundle, common } => cli::cmd_check_bundle(&bundle, &common.options(), &mut out, &mut err),
        Command::Verify { suite, target, common } => {
            cli::cmd_verify(&suite, &target, &common.options(), &mut out, &mut err)
        }
        Command::Demo { fixture } => cli::cmd_demo(&fixture, &mut out, &mut err),
        Command::All { report, common } => cli::cmd_all(report.as_deref(), &common.options(), &mut out, &mut err),
        Command::Export { dir } => match cli::export_corpus(&dir) {
            Ok(files) => {
                for f in files {
                    let _ = writeln!(out, "{}", dir.join(f).display());
                }
                cli::EXIT_PASS
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                cli::EXIT_INPUT
            }
        },
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
