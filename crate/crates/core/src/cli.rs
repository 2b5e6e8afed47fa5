//! Command-line front end. Exit codes: 0 ok, 1 usage, 2 input parse,
//! 3 semantic (cycle, zero-probability start, mismatching files), 4 internal.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use crate::bayesnet::{BayesNet, Instantiation, NetError};
use crate::circuit::count_elementary;
use crate::generator::{gamma0, write_outputs, write_prerun, GenError, GenParams};
use crate::num::{decimal, rounded};
use crate::text::{check_correspondence, english_qubits, parse_english, parse_picture, TextError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "gibbsqc", version, about = "Quantum Gibbs-sampling circuit generator for Bayesian networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write probsF.txt, probsT.txt, blankets.txt and nits.txt.
    Prerun {
        folder: PathBuf,
        #[arg(long)]
        no_clobber: bool,
    },
    /// Write quibbs_eng.txt, quibbs_pic.txt and quibbs_log.txt.
    Generate(GenerateArgs),
    /// Check that an English and a Picture file agree line by line.
    Validate { english: PathBuf, picture: PathBuf },
    /// Print the number of elementary operations of an English file.
    Count { english: PathBuf },
    /// Print the probability and starting gamma of an instantiation.
    Prob {
        folder: PathBuf,
        #[arg(long)]
        start: String,
    },
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    pub folder: PathBuf,
    /// Number of probe bits (a).
    #[arg(long)]
    pub probe_bits: usize,
    /// Number of phase-estimation steps (c).
    #[arg(long)]
    pub pe_steps: usize,
    /// Maximum number of Grover steps.
    #[arg(long)]
    pub max_grover: usize,
    /// Gamma tolerance in degrees.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma_tol: f64,
    /// AFGA step angle in degrees.
    #[arg(long, allow_negative_numbers = true)]
    pub delta_lambda: f64,
    /// Starting state, e.g. `A=a1,B=b1,C=c1`.
    #[arg(long, conflicts_with = "random_start", required_unless_present = "random_start")]
    pub start: Option<String>,
    /// Draw the starting state uniformly at random.
    #[arg(long)]
    pub random_start: bool,
    /// Seed for --random-start; a time-derived seed is used and logged if absent.
    #[arg(long, requires = "random_start")]
    pub seed: Option<u64>,
    /// Leave out every gate of V.
    #[arg(long)]
    pub omit_v: bool,
    #[arg(long)]
    pub no_clobber: bool,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

impl From<NetError> for Failure {
    fn from(e: NetError) -> Self {
        fail(if e.is_semantic() { EXIT_SEMANTIC } else { EXIT_PARSE }, e.to_string())
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        let code = match &e {
            GenError::ZeroProbability | GenError::BlanketTooLarge { .. } => EXIT_SEMANTIC,
            GenError::Param(_) | GenError::Exists { .. } => EXIT_USAGE,
            GenError::Net(n) => return n.clone().into(),
            GenError::Io { .. } | GenError::Circuit(_) => EXIT_INTERNAL,
        };
        fail(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    let bytes = fs::read(path).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    String::from_utf8(bytes)
        .ok()
        .filter(|s| s.is_ascii())
        .ok_or_else(|| fail(EXIT_PARSE, format!("{}: not an ASCII file", path.display())))
}

fn text_fail(file: &Path, e: TextError) -> Failure {
    fail(EXIT_PARSE, format!("{}: {e}", file.display()))
}

fn check_folder(folder: &Path) -> Result<(), Failure> {
    if folder.is_dir() {
        Ok(())
    } else {
        Err(fail(EXIT_PARSE, format!("{} is not a directory", folder.display())))
    }
}

fn prerun(folder: &Path, no_clobber: bool, out: &mut dyn Write) -> Result<(), Failure> {
    check_folder(folder)?;
    for p in write_prerun(folder, !no_clobber)? {
        let _ = writeln!(out, "{}", p.display());
    }
    Ok(())
}

fn time_seed() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos() as u64).unwrap_or(0)
}

fn generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    check_folder(&args.folder)?;
    let net = BayesNet::load(&args.folder)?;
    let skel = net.skeleton();
    let (start, seed) = match &args.start {
        Some(spec) => (Instantiation::parse(skel, spec)?, None),
        None => {
            let seed = args.seed.unwrap_or_else(time_seed);
            (skel.random_instantiation(seed), Some(seed))
        }
    };
    let params = GenParams {
        probe_bits_a: args.probe_bits,
        pe_steps_c: args.pe_steps,
        max_grover_steps: args.max_grover,
        gamma_tol_degs: args.gamma_tol,
        delta_lambda_degs: args.delta_lambda,
        omit_v: args.omit_v,
        start,
        seed,
    };
    let (d, paths) = write_outputs(&args.folder, &params, &net, !args.no_clobber)?;
    for p in paths {
        let _ = writeln!(out, "{}", p.display());
    }
    let _ = writeln!(out, "starting state: {}", params.start.describe(skel));
    if let Some(seed) = seed {
        let _ = writeln!(out, "seed: {seed}");
    }
    let _ = writeln!(out, "starting gamma (degs): {}", rounded(d.gamma0_degs));
    let _ = writeln!(out, "probability of starting state: {}", decimal(d.p_start));
    let _ = writeln!(out, "number of qubits: {}", d.qubit_count);
    let _ = writeln!(out, "number of elementary operations: {}", d.elementary_op_count);
    let _ = writeln!(out, "number of Grover steps used: {}", d.grover_steps_used);
    Ok(())
}

fn validate(english: &Path, picture: &Path, out: &mut dyn Write) -> Result<(), Failure> {
    let eng = read(english)?;
    let pic = read(picture)?;
    let mismatches = check_correspondence(&eng, &pic);
    if let Some(first) = mismatches.first() {
        return Err(fail(EXIT_SEMANTIC, format!("{} mismatch(es); first: {first}", mismatches.len())));
    }
    let p = parse_picture(&pic).map_err(|e| text_fail(picture, e))?;
    let qubits = if p.qubits > 0 { p.qubits } else { english_qubits(&eng).map_err(|e| text_fail(english, e))? };
    let c = parse_english(&eng, qubits).map_err(|e| text_fail(english, e))?;
    let _ = writeln!(out, "ok: {} lines, {} qubits", c.len(), c.qubits());
    Ok(())
}

fn count(english: &Path, out: &mut dyn Write) -> Result<(), Failure> {
    let eng = read(english)?;
    let qubits = english_qubits(&eng).map_err(|e| text_fail(english, e))?;
    let c = parse_english(&eng, qubits).map_err(|e| text_fail(english, e))?;
    let n = count_elementary(&c).map_err(|e| fail(EXIT_SEMANTIC, e.to_string()))?;
    let _ = writeln!(out, "{n}");
    Ok(())
}

fn prob(folder: &Path, spec: &str, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    check_folder(folder)?;
    let net = BayesNet::load(folder)?;
    let x = Instantiation::parse(net.skeleton(), spec)?;
    let p = net.joint_prob(&x);
    let _ = writeln!(out, "probability of starting state: {}", decimal(p));
    match gamma0(p) {
        Ok(g) => {
            let _ = writeln!(out, "starting gamma (degs): {}", rounded(g));
        }
        Err(_) => {
            let _ = writeln!(err, "warning: starting state has zero probability; the AFGA target is unreachable");
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match &cli.command {
        Command::Prerun { folder, no_clobber } => prerun(folder, *no_clobber, out),
        Command::Generate(args) => generate(args, out),
        Command::Validate { english, picture } => validate(english, picture, out),
        Command::Count { english } => count(english, out),
        Command::Prob { folder, start } => prob(folder, start, out, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("gibbsqc").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors() {
        assert_eq!(exec(&[]).0, EXIT_USAGE);
        assert_eq!(exec(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(exec(&["generate", "x", "--probe-bits", "1"]).0, EXIT_USAGE);
        assert_eq!(exec(&["--help"]).0, EXIT_OK);
        let both = [
            "generate",
            "x",
            "--probe-bits",
            "1",
            "--pe-steps",
            "1",
            "--max-grover",
            "1",
            "--gamma-tol",
            "1",
            "--delta-lambda",
            "1",
            "--start",
            "A=a",
            "--random-start",
        ];
        assert_eq!(exec(&both).0, EXIT_USAGE);
    }

    #[test]
    fn missing_folder() {
        let (code, _, err) = exec(&["prerun", "/nonexistent/folder/xyz"]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("not a directory"));
    }
}
