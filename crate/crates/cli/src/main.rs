use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use oprank::*;
use overpartition_ranks::Method;

#[derive(Parser)]
#[command(name = "oprank", version, about = "Overpartition rank tables, congruences and numerical checks")]
struct Cli {
    /// Quadrature tolerance for numerical checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Series truncation for numerical checks.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank table N̄(m,n), or residue table N̄(r,t,n) with --t.
    Table {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value = "lambert")]
        method: Method,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two rank-table methods entry by entry.
    DiffTables {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value = "lambert")]
        left: Method,
        #[arg(long, default_value = "bruteforce")]
        right: Method,
    },
    /// Verify a built-in identity (1-5) or `all` to the given depth.
    CheckIdentity {
        id: String,
        #[arg(long, default_value_t = 100)]
        depth: usize,
    },
    /// Search progressions An+B, A ≤ a-max, for congruences mod ell^j.
    Scan {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[arg(long)]
        a_max: u64,
        #[arg(long)]
        n_max: usize,
    },
    /// Check N̄(r,t;An+B) ≡ 0 mod ell^j for 0 ≤ n ≤ n-max.
    VerifyClaim {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 1)]
        j: u32,
        /// Residue classes to check; all of 0..t by default.
        #[arg(long, value_delimiter = ',')]
        r: Option<Vec<u32>>,
        #[arg(long)]
        n_max: usize,
    },
    /// One instance of the a/c transformation law.
    CheckTransform {
        #[arg(long)]
        case: u8,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        h: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        w: String,
        #[arg(long, default_value_t = 1e-6)]
        target: f64,
    },
    /// Residual battery for the completed forms at the given points.
    MaassSuite {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        c: i64,
        #[arg(long = "z", default_values = ["i", "0.2+i", "2i"], allow_hyphen_values = true)]
        z: Vec<String>,
    },
}

fn complex(s: &str) -> Result<Complex64> {
    parse_complex(s).map_err(CliError::Usage)
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>)> {
    let cache = Cache::from_env();
    let cfg = || eval_config(cli.tol, cli.trunc);
    let out = match cli.cmd {
        Cmd::Table { max_n, method, t, format, out } => return Ok((cmd_table(max_n, method, t, format, &cache)?, out)),
        Cmd::DiffTables { max_n, left, right } => cmd_diff_tables(max_n, left, right, &cache)?,
        Cmd::CheckIdentity { id, depth } => {
            let id = match id.as_str() {
                "all" => None,
                s => Some(s.parse::<u8>().map_err(|_| CliError::Usage(format!("identity id {s:?}: expected 1-5 or all")))?),
            };
            cmd_check_identity(id, depth, &cache)?
        }
        Cmd::Scan { t, ell, j, a_max, n_max } => cmd_scan(t, ell, j, a_max, n_max, &cache)?,
        Cmd::VerifyClaim { a, b, t, ell, j, r, n_max } => cmd_verify_claim(a, b, t, ell, j, r, n_max, &cache)?,
        Cmd::CheckTransform { case, a, c, h, k, ref w, target } => {
            cmd_check_transform(case, a, c, h, k, complex(w)?, target, &cfg()?)?
        }
        Cmd::MaassSuite { a, c, ref z } => {
            let zs = z.iter().map(|s| complex(s)).collect::<Result<Vec<_>>>()?;
            cmd_maass_suite(a, c, &zs, &cfg()?)?
        }
    };
    Ok((out, None))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::Usage as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok((o, None)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(o.body.as_bytes()).is_err() {
                return ExitCode::from(Exit::Fail as u8);
            }
            ExitCode::from(o.exit as u8)
        }
        Ok((o, Some(path))) => match write_atomic(&path, o.body.as_bytes()) {
            Ok(()) => ExitCode::from(o.exit as u8),
            Err(e) => {
                eprintln!("oprank: writing {}: {e}", path.display());
                ExitCode::from(Exit::Fail as u8)
            }
        },
        Err(e) => {
            eprintln!("oprank: {e}");
            ExitCode::from(e.exit() as u8)
        }
    }
}
