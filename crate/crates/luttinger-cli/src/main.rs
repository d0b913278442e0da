use clap::{Args, Parser, Subcommand, ValueEnum};
use luttinger::cli::{self, CmdOutput, Format, Options};
use luttinger::fpgroup::Budget;
use luttinger::recipes::ScanDirection;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "luttinger", version, about = "Run and verify surgery recipes on 4-manifold building blocks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    max_cosets: Option<usize>,
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Parameter override, `key=value`; repeatable.
    #[arg(short = 'P', value_parser = cli::parse_param)]
    params: Vec<(String, num_bigint::BigInt)>,
    /// Accepted and ignored: every run is deterministic.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl Common {
    fn options(&self, base: Budget) -> Options {
        let mut budget = base;
        if let Some(c) = self.max_cosets {
            budget.max_cosets = c;
        }
        if let Some(d) = self.max_depth {
            budget.max_depth = d;
        }
        let format = match self.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        };
        Options { budget, format, params: self.params.clone(), seed: self.seed, jobs: self.jobs }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    M,
    L,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a recipe file or a built-in recipe.
    Run {
        source: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run every built-in recipe at its defaults.
    VerifyAll {
        /// Glob on recipe names, e.g. 'free*'.
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the generator, relator and torus tables of a block.
    ShowBlock {
        id: String,
        #[command(flatten)]
        common: Common,
    },
    /// Fill or surger every torus of a block in all combinations.
    Scan {
        block: String,
        /// Surgery coefficients, `LO..HI`; 0 is the fill.
        #[arg(short = 'k', allow_hyphen_values = true, default_value = "-1..1")]
        k: String,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "m,l")]
        dirs: Vec<Dir>,
        #[command(flatten)]
        common: Common,
    },
}

fn emit(out: CmdOutput) -> ExitCode {
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Cmd::Run { source, common } => cli::cmd_run(source, &common.options(Budget::default())),
        Cmd::VerifyAll { filter, common } => cli::cmd_verify_all(filter.as_deref(), &common.options(Budget::default())),
        Cmd::ShowBlock { id, common } => cli::cmd_show_block(id, &common.options(Budget::default())),
        Cmd::Scan { block, k, dirs, common } => match cli::parse_range(k) {
            Ok(ks) => {
                let dirs: Vec<ScanDirection> = dirs
                    .iter()
                    .map(|d| match d {
                        Dir::M => ScanDirection::M,
                        Dir::L => ScanDirection::L,
                    })
                    .collect();
                cli::cmd_scan(block, &ks, &dirs, &common.options(cli::scan_budget()))
            }
            Err(e) => CmdOutput { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
        },
    };
    emit(out)
}
