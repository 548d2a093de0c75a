//! Command-line front end. Every command prints JSON on stdout, or a
//! diagnostic on stderr with a nonzero exit code.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 internal inconsistency.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use leibrep::acceptance::{run_all, AcceptanceConfig};
use leibrep::bimodule::{Bimodule, RightModuleShape};
use leibrep::classify::families::ladders;
use leibrep::classify::ladder::enumerate_ladder;
use leibrep::classify::{
    extension_report, is_indecomposable, make_family, quadratic_system, solve_left_linear,
    subbimodules, LadderFamily,
};
use leibrep::decomposition::{canonical_right_form, decompose_right};
use leibrep::Error;

const DEFAULT_MAX_DIM: usize = 60;

#[derive(Parser)]
#[command(name = "leibrep", version, about = "Leibniz bimodules over sl2 in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Case1,
    Case2,
    Sym,
    Antisym,
    Irr,
}

#[derive(Subcommand)]
enum Command {
    /// Build a bimodule and write it as JSON.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Top weight.
        #[arg(long)]
        n: Option<u32>,
        /// Number of ladder components (case1, case2).
        #[arg(long)]
        k: Option<u32>,
        /// Weight of the irreducible right module (irr); defaults to --n.
        #[arg(long)]
        m: Option<u32>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the bimodule relations; exit 0 iff they all hold.
    Verify { file: PathBuf },
    /// Split the right module into irreducibles.
    Decompose { file: PathBuf },
    /// List subbimodules and the antisymmetric layer.
    Subbimodules { file: PathBuf },
    /// Decide indecomposability with a certificate.
    Indecomposable { file: PathBuf },
    /// Solve for the left actions compatible with a right module.
    SolveLeft {
        /// Comma-separated nonincreasing weights, e.g. 4,2.
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<u32>,
    },
    /// All indecomposable bimodules on the ladder (n, n-2, ..., n-2k+2).
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 10)]
        max_n: u32,
    },
}

enum Failure {
    Usage(String),
    /// Carries a diagnostic when no report was printed.
    Verification(Option<String>),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn max_dim() -> Result<usize, Failure> {
    match std::env::var("LEIBREP_MAX_DIM") {
        Ok(v) => v
            .parse()
            .map_err(|_| Failure::Usage(format!("LEIBREP_MAX_DIM must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

fn check_dim(d: usize) -> CmdResult {
    let cap = max_dim()?;
    if d > cap {
        return Err(Failure::Usage(format!(
            "dimension {d} exceeds LEIBREP_MAX_DIM={cap}"
        )));
    }
    Ok(())
}

/// Pretty JSON with object keys sorted.
fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let v = serde_json::to_value(value).map_err(|e| Failure::Internal(e.to_string()))?;
    serde_json::to_string_pretty(&v).map_err(|e| Failure::Internal(e.to_string()))
}

fn emit<T: Serialize>(value: &T) -> CmdResult {
    println!("{}", to_json(value)?);
    Ok(())
}

fn load(path: &Path) -> Result<Bimodule, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let b: Bimodule = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    check_dim(b.dim())?;
    Ok(b)
}

/// Brings a file without a recorded shape into canonical right form.
fn load_canonical(path: &Path) -> Result<Bimodule, Failure> {
    let b = load(path)?;
    if b.shape().is_some() {
        return Ok(b);
    }
    if !b.verify_axioms().pass {
        return Err(Failure::Verification(Some(format!(
            "{} is not a bimodule; run verify for details",
            path.display()
        ))));
    }
    Ok(canonical_right_form(&b)?)
}

fn require(v: Option<u32>, flag: &str, family: &str) -> Result<u32, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--family {family} needs {flag}")))
}

fn construct(family: Family, n: Option<u32>, k: Option<u32>, m: Option<u32>, out: Option<PathBuf>) -> CmdResult {
    let b = match family {
        Family::Case1 | Family::Case2 => {
            let name = if matches!(family, Family::Case1) { "case1" } else { "case2" };
            let n = require(n, "--n", name)?;
            let k = require(k, "--k", name)?;
            let shape = RightModuleShape::ladder(n, k)?;
            check_dim(shape.total_dim())?;
            let fam = if matches!(family, Family::Case1) { LadderFamily::Case1 } else { LadderFamily::Case2 };
            make_family(fam, n, k)?
        }
        Family::Sym | Family::Antisym => {
            let n = require(n, "--n", "sym/antisym")?;
            check_dim(n as usize + 1)?;
            let v = Bimodule::make_right_irreducible(n);
            if matches!(family, Family::Sym) { v.symmetrize()? } else { v.antisymmetrize()? }
        }
        Family::Irr => {
            let m = require(m.or(n), "--m", "irr")?;
            check_dim(m as usize + 1)?;
            Bimodule::make_right_irreducible(m)
        }
    };
    let json = to_json(&b)?;
    match out {
        Some(path) => fs::write(&path, json + "\n")
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SubbimoduleOutput {
    subbimodules: leibrep::classify::SubbimoduleReport,
    extension: leibrep::classify::ExtensionReport,
}

#[derive(Serialize)]
struct SolveLeftOutput {
    solution: leibrep::classify::LeftActionSolution,
    quadratic_system: leibrep::classify::QuadraticSystem,
}

#[derive(Serialize)]
struct SelftestOutput {
    max_n: u32,
    passed: bool,
    criteria: Vec<leibrep::acceptance::CriterionOutcome>,
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Construct { family, n, k, m, out } => construct(family, n, k, m, out),
        Command::Verify { file } => {
            let report = load(&file)?.verify_axioms();
            emit(&report)?;
            if report.pass { Ok(()) } else { Err(Failure::Verification(None)) }
        }
        Command::Decompose { file } => emit(&decompose_right(&load(&file)?)?),
        Command::Subbimodules { file } => {
            let b = load_canonical(&file)?;
            emit(&SubbimoduleOutput {
                subbimodules: subbimodules(&b)?,
                extension: extension_report(&b)?,
            })
        }
        Command::Indecomposable { file } => emit(&is_indecomposable(&load_canonical(&file)?)?),
        Command::SolveLeft { shape } => {
            let shape = RightModuleShape::new(shape)?;
            check_dim(shape.total_dim())?;
            let solution = solve_left_linear(&shape)?;
            let quadratic_system = quadratic_system(&solution);
            emit(&SolveLeftOutput { solution, quadratic_system })
        }
        Command::Enumerate { n, k } => {
            check_dim(RightModuleShape::ladder(n, k)?.total_dim())?;
            emit(&enumerate_ladder(n, k)?)
        }
        Command::Selftest { max_n } => {
            let largest = ladders(max_n, 1)
                .into_iter()
                .filter_map(|(n, k)| RightModuleShape::ladder(n, k).ok())
                .map(|s| s.total_dim())
                .max()
                .unwrap_or(0);
            check_dim(largest)?;
            let criteria = run_all(&AcceptanceConfig { max_n, ..Default::default() })?;
            let passed = criteria.iter().all(|c| c.passed);
            let oracle_ok = criteria
                .iter()
                .filter_map(|c| c.check("brute-force oracle"))
                .all(|c| c.passed);
            emit(&SelftestOutput { max_n, passed, criteria })?;
            match (passed, oracle_ok) {
                (true, _) => Ok(()),
                (false, false) => Err(Failure::Internal(String::new())),
                (false, true) => Err(Failure::Verification(None)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            if let Some(msg) = msg {
                eprintln!("leibrep: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("leibrep: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            if !msg.is_empty() {
                eprintln!("leibrep: internal inconsistency: {msg}");
            }
            ExitCode::from(3)
        }
    }
}
