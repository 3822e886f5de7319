mod artifact;
mod commands;
mod error;
mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::artifact::{emit, write_atomic};
use crate::commands::{BuildOptions, Run, TheoremOptions};
use crate::error::CliError;
use crate::input::Source;
use crate::report::ReportTable;

/// Builds tree amalgamations of finite graphs and checks certificates for
/// their asymptotic-dimension bounds.
#[derive(Parser)]
#[command(name = "asdim-forge", version)]
struct Cli {
    /// Worker threads for parallel checks.
    #[arg(long, global = true, env = "ASDIM_FORGE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArg {
    /// Input document, or `shipped:<name>` for a built-in example.
    #[arg(long)]
    spec: String,
}

#[derive(Args)]
struct OutArg {
    /// Directory for certificates and artifacts; printed to stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    /// Truncation depth, overriding the document.
    #[arg(long)]
    depth: Option<u32>,
    /// Seed for spot checks on large truncations.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check all pairs regardless of size.
    #[arg(long)]
    exhaustive: bool,
    /// Also emit the amalgam in DOT format.
    #[arg(long)]
    dot: bool,
}

impl BuildArgs {
    fn options(&self) -> BuildOptions {
        BuildOptions {
            depth: self.depth,
            seed: self.seed,
            exhaustive: self.exhaustive,
            dot: self.dot,
        }
    }
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build the amalgam of a spec and check the construction.
    Build {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        build: BuildArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Greedy (r, n)-witness on a graph.
    Witness {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        cover: CoverArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Exact least D for (r, n) on a small graph.
    Oracle {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        cover: CoverArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Automorphism group of a small graph.
    Aut {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run the dimension certificate on a spec.
    VerifyTheorem {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long = "R")]
        big_r: u32,
        #[arg(long)]
        r: u32,
        /// Truncation depth; defaults to the document's.
        #[arg(long)]
        depth: Option<u32>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build an iterated amalgamation stage by stage.
    Iterate {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        dot: bool,
        /// With --r, also certify every stage.
        #[arg(long = "R", requires = "r")]
        big_r: Option<u32>,
        #[arg(long, requires = "big_r")]
        r: Option<u32>,
        /// Certificate depth; defaults to 2r. Stages build at their own depths.
        #[arg(long, requires = "big_r")]
        depth: Option<u32>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Tabulate every certificate below a directory.
    Report {
        dir: PathBuf,
        /// Write the table as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every shipped example into a directory and tabulate the results.
    Suite {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn stem(label: &str) -> String {
    let base = label.rsplit(['/', ':']).next().unwrap_or(label);
    base.strip_suffix(".json").unwrap_or(base).to_string()
}

fn finish(run: Run, out: Option<&Path>) -> Result<bool, CliError> {
    if let Some(dir) = out {
        for (name, contents) in &run.files {
            write_atomic(&dir.join(name), contents.as_bytes())?;
        }
    }
    emit(&run.certificates, out)?;
    if out.is_some() {
        print!("{}", ReportTable::from_certificates(&run.certificates).to_text());
    }
    Ok(run.passed())
}

fn execute(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Build { spec, build, out } => {
            let src = Source::open(&spec.spec)?;
            finish(commands::build(&src, &build.options())?, out.out.as_deref())
        }
        Command::Witness { spec, cover, out } => {
            let src = Source::open(&spec.spec)?;
            finish(commands::witness(&src, &stem(&src.label), cover.r, cover.n)?, out.out.as_deref())
        }
        Command::Oracle { spec, cover, out } => {
            let src = Source::open(&spec.spec)?;
            let run = commands::oracle(&src, &stem(&src.label), cover.r, cover.n)?;
            println!("D={}", run.certificates[0].measured["D"]);
            if let Some(dir) = out.out.as_deref() {
                emit(&run.certificates, Some(dir))?;
            }
            Ok(run.passed())
        }
        Command::Aut { spec, out } => {
            let src = Source::open(&spec.spec)?;
            finish(commands::aut(&src, &stem(&src.label))?, out.out.as_deref())
        }
        Command::VerifyTheorem {
            spec,
            big_r,
            r,
            depth,
            out,
        } => {
            let src = Source::open(&spec.spec)?;
            let opts = TheoremOptions { big_r, r, depth };
            finish(commands::verify_theorem(&src, &opts)?, out.out.as_deref())
        }
        Command::Iterate {
            spec,
            seed,
            exhaustive,
            dot,
            big_r,
            r,
            depth,
            out,
        } => {
            let src = Source::open(&spec.spec)?;
            let build = BuildOptions {
                depth: None,
                seed,
                exhaustive,
                dot,
            };
            let theorem = big_r.zip(r).map(|(big_r, r)| TheoremOptions { big_r, r, depth });
            finish(commands::iterate(&src, &build, theorem.as_ref())?, out.out.as_deref())
        }
        Command::Report { dir, out } => {
            let table = ReportTable::load(&dir)?;
            print!("{}", table.to_text());
            if let Some(path) = out {
                write_atomic(&path, table.to_json().as_bytes())?;
            }
            Ok(table.passed())
        }
        Command::Suite { out, seed } => {
            let run = commands::suite(seed)?;
            let table = ReportTable::from_certificates(&run.certificates);
            let ok = finish(run, Some(&out))?;
            write_atomic(&out.join("report.json"), table.to_json().as_bytes())?;
            write_atomic(&out.join("report.txt"), table.to_text().as_bytes())?;
            Ok(ok)
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
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stems_drop_directories_and_extensions() {
        assert_eq!(stem("shipped:p10"), "p10");
        assert_eq!(stem("data/graphs/k4.json"), "k4");
        assert_eq!(stem("edges.txt"), "edges.txt");
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
