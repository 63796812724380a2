use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qkz_cli::run::{self, CliError, Format, OracleCmd, TSpec};
use qkz_core::ctengine::Parity;

#[derive(Parser)]
#[command(name = "qkz", version, about = "Exact polynomial solutions of the boundary exchange system and their sum rules")]
struct Cli {
    /// Worker threads for parallel verification.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Subcommand)]
enum Command {
    /// Link patterns.
    Lp {
        #[command(subcommand)]
        action: LpAction,
    },
    /// Components of the solution vector.
    Psi {
        #[arg(long)]
        size: usize,
        /// Also evaluate every component at this rational τ.
        #[arg(long)]
        tau_at: Option<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Pretty)]
        format: FormatArg,
    },
    /// Refined sum rule K(t|τ) and its determinant.
    Sumrule {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        parity: ParityArg,
        /// symbolic, 0, 1, inf, tau or inv-tau.
        #[arg(long, default_value = "symbolic")]
        t: String,
        #[arg(long)]
        tau_at: Option<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Pretty)]
        format: FormatArg,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// tl, basis, lemmas, limits, sumrules, oracle, tilings or all.
        #[arg(long, num_args = 1..)]
        suite: Vec<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Pretty)]
        format: FormatArg,
    },
    /// Independent brute-force oracles.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
        #[arg(long, value_enum, default_value_t = FormatArg::Pretty, global = true)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum LpAction {
    List {
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Pretty)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    /// Vertically symmetric alternating sign matrices of odd size.
    Vsasm {
        #[arg(long)]
        size: usize,
    },
    /// Non-intersecting lattice paths ending at b.
    Nilp {
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<i64>,
    },
    /// Triangular arrays generating T_n.
    Arrays {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        variant: u8,
    },
    /// Polynomial solution of the exchange and boundary equations.
    Qkz {
        #[arg(long)]
        size: usize,
    },
}

fn format(f: FormatArg) -> Format {
    match f {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Pretty => Format::Pretty,
    }
}

fn dispatch(cli: Cli, line: &str) -> run::Outcome {
    match cli.command {
        Command::Lp { action: LpAction::List { size, format: f } } => run::cmd_lp_list(size, format(f), line),
        Command::Psi { size, tau_at, format: f } => run::cmd_psi(size, tau_at.as_deref(), format(f), line),
        Command::Sumrule { n, parity, t, tau_at, format: f } => {
            let parity = match parity {
                ParityArg::Even => Parity::Even,
                ParityArg::Odd => Parity::Odd,
            };
            run::cmd_sumrule(n, parity, TSpec::parse(&t)?, tau_at.as_deref(), format(f), line)
        }
        Command::Verify { max_n, suite, format: f } => run::cmd_verify(max_n, &suite, format(f), line),
        Command::Oracle { action, format: f } => {
            let cmd = match action {
                OracleAction::Vsasm { size } => OracleCmd::Vsasm { size },
                OracleAction::Nilp { b } => OracleCmd::Nilp { b },
                OracleAction::Arrays { n, variant } => OracleCmd::Arrays { n, variant },
                OracleAction::Qkz { size } => OracleCmd::Qkz { size },
            };
            run::cmd_oracle(cmd, format(f), line)
        }
    }
}

/// The command line stored in result tables. The worker count is dropped so
/// output does not depend on it.
fn recorded_command(args: impl Iterator<Item = String>) -> String {
    let mut out = vec!["qkz".to_string()];
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--jobs" {
            skip = true;
        } else if !a.starts_with("--jobs=") {
            out.push(a);
        }
    }
    out.join(" ")
}

fn main() -> ExitCode {
    let line = recorded_command(std::env::args().skip(1));
    let cli = Cli::parse();
    if cli.jobs == 0 {
        eprintln!("{}", CliError::Usage("jobs must be positive".into()));
        return ExitCode::from(2);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
        eprintln!("warning: {e}");
    }
    match dispatch(cli, &line) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
