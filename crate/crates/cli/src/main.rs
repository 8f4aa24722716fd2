//! `paintcat`: run stroke scripts, check the coherence laws, render canvases.
//!
//! Exit codes: 0 on success, 1 when a law check fails, 2 on usage, I/O,
//! parse or evaluation errors. Standard output only carries JSON or
//! formatted source; diagnostics go to standard error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use paintcat_core::dsl::{self, eval_script, parse_source, pretty_print, EvalOptions, Execution};
use paintcat_core::laws::{run_all, LawCheckConfig};
use paintcat_core::{eval_word, rasterize, write_ppm};

#[derive(Parser, Debug)]
#[command(name = "paintcat", version, about = "Paint as a braided monoidal category")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Sampling {
    /// Seed for law checks that do not set one.
    #[arg(long, env = "PAINTCAT_SEED", default_value_t = 42)]
    seed: u64,
    /// Instances per law.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
}

impl Sampling {
    fn options(self) -> EvalOptions {
        EvalOptions { seed: self.seed, samples: self.samples as usize }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Execute a script, writing every rendered image.
    Run {
        script: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Run the law suite on the built-in three-region pool and print the report.
    Check {
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Execute a script and write its final rendered word to a file.
    Render {
        script: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long, num_args = 2, value_names = ["W", "H"], value_parser = clap::value_parser!(u32).range(1..))]
        size: Option<Vec<u32>>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Print a script in canonical form.
    Fmt { script: PathBuf },
}

enum Outcome {
    Ok,
    LawsFailed,
}

fn read_script(path: &Path) -> Result<dsl::Script> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_source(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

fn execute(path: &Path, sampling: Sampling) -> Result<Execution> {
    let script = read_script(path)?;
    eval_script(&script, &sampling.options()).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

/// Writes to stdout, treating a closed pipe (`paintcat check | head`) as success.
fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn laws_outcome(passed: bool) -> Outcome {
    if passed {
        Outcome::Ok
    } else {
        Outcome::LawsFailed
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Run { script, sampling } => {
            let exec = execute(&script, sampling)?;
            for (_, path, image) in exec.renders() {
                fs::write(path, write_ppm(image)).with_context(|| format!("cannot write {path}"))?;
                eprintln!("wrote {path}");
            }
            emit(&exec.stdout_text())?;
            Ok(laws_outcome(exec.laws_passed()))
        }
        Command::Check { sampling } => {
            let cfg = LawCheckConfig::with_seed(sampling.seed).samples(sampling.samples as usize);
            let report = run_all(&cfg)?;
            emit(&format!("{}\n", report.to_json()))?;
            for entry in report.laws.iter().filter(|e| !e.passed) {
                eprintln!("law `{}` failed", entry.name);
            }
            Ok(laws_outcome(report.passed))
        }
        Command::Render { script, output, size, sampling } => {
            let exec = execute(&script, sampling)?;
            let (word, default_size) = match exec.renders().last() {
                Some((word, _, image)) => (word.to_string(), (image.width(), image.height())),
                None => anyhow::bail!("{}: script has no render statement", script.display()),
            };
            let (w, h) = match size.as_deref() {
                Some([w, h]) => (*w, *h),
                _ => default_size,
            };
            let target = exec.word(&word).expect("rendered word is bound");
            let canvas = eval_word(&target, &exec.regions)?;
            let image = rasterize(&canvas, &exec.regions, w, h)?;
            fs::write(&output, write_ppm(&image)).with_context(|| format!("cannot write {}", output.display()))?;
            eprintln!("wrote {}", output.display());
            Ok(laws_outcome(exec.laws_passed()))
        }
        Command::Fmt { script } => {
            emit(&pretty_print(&read_script(&script)?))?;
            Ok(Outcome::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::LawsFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
