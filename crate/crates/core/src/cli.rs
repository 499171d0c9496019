//! The `bootperc` command line.
//!
//! Exit codes: 0 success, 1 verification or bound check failed, 2 invalid
//! input or arguments, 3 resource cap exceeded.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::constructions::{
    base_running_time, build_base, build_full, glue, predicted_base_edge, theorem_bounds, ConstructionError,
    SequentialCertificate,
};
use crate::engine::{self, EngineError, EngineKind, DEFAULT_MAX_TUPLES};
use crate::io::{self, ParseError};
use crate::verify::{
    brute_force_max_time_with, check_density, verify_sequential_with, BruteForceError, BruteForceOptions,
    VerifyOptions, DEFAULT_EDGE_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bootperc",
    version,
    about = "Slow K^r_{r+1}-bootstrap percolation: constructions, simulation and verification"
)]
pub struct Cli {
    /// Largest number of live tuple counters in the fast engine.
    #[arg(long, global = true, env = "BOOTPERC_MAX_TUPLES", default_value_t = DEFAULT_MAX_TUPLES)]
    pub max_tuples: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    /// The 3-uniform base construction.
    Base,
    /// The base construction glued once (r = 3).
    Glued,
    /// The complete construction for uniformity r.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Fast,
    Naive,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a construction and write its certificate.
    Build {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Stage::Full)]
        stage: Stage,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the process on a graph document.
    Run {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Fast)]
        engine: EngineArg,
        /// Clique size; defaults to r + 1.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check the three sequentiality properties of a certificate.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Evaluate the running-time bounds for n vertices.
    Bounds {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u64,
    },
    /// Exhaustive maximal running time over all initial graphs.
    Brute {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Largest admissible C(n, r).
        #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
        cap: u64,
        /// Replay every instance with both engines.
        #[arg(long)]
        cross_check: bool,
    },
    /// Check density and the closed-form sequence of the base construction.
    CheckBase {
        #[arg(long)]
        k: u32,
        /// Certificate to check instead of the generated one.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

enum Failure {
    Failed,
    Invalid(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Failed => EXIT_FAILED,
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Cap(_) => EXIT_CAP,
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::CliqueTooSmall { .. } => Failure::Invalid(e.to_string()),
            EngineError::TooLarge { .. } | EngineError::TupleCapExceeded { .. } => Failure::Cap(e.to_string()),
        }
    }
}

impl From<BruteForceError> for Failure {
    fn from(e: BruteForceError) -> Self {
        match e {
            BruteForceError::BadParameters { .. } => Failure::Invalid(e.to_string()),
            BruteForceError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            BruteForceError::EngineMismatch { .. } => Failure::Failed,
            BruteForceError::Engine(e) => e.into(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn parse_failure(path: &Path, e: ParseError) -> Failure {
    Failure::Invalid(format!("{}: {} error: {e}", path.display(), e.code()))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

type Streams<'a> = (&'a mut dyn Write, &'a mut dyn Write);

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Build { r, k, stage, out: path } => build(*r, *k, *stage, path.as_deref(), (out, err)),
        Command::Run { input, engine, m, trace } => {
            run_cmd(input, *engine, *m, trace.as_deref(), cli.max_tuples, (out, err))
        }
        Command::Verify { input } => verify(input, cli.max_tuples, (out, err)),
        Command::Bounds { r, n } => bounds(*r, *n, (out, err)),
        Command::Brute { r, n, jobs, cap, cross_check } => {
            let opts = BruteForceOptions { jobs: *jobs, edge_cap: *cap, cross_check: *cross_check };
            brute(*r, *n, &opts, (out, err))
        }
        Command::CheckBase { k, input } => check_base(*k, input.as_deref(), cli.max_tuples, (out, err)),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            match &failure {
                Failure::Invalid(msg) | Failure::Cap(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                }
                Failure::Failed => {}
            }
            failure.code()
        }
    }
}

fn build(r: usize, k: u32, stage: Stage, path: Option<&Path>, (out, _): Streams) -> Result<(), Failure> {
    let cert = match stage {
        Stage::Base | Stage::Glued if r != 3 => {
            return Err(Failure::Invalid(
                format!("stage {stage:?} is only defined for r = 3, got r = {r}").to_lowercase(),
            ))
        }
        Stage::Base => build_base(k)?,
        Stage::Glued => glue(&build_base(k)?, k)?,
        Stage::Full => build_full(r, k)?,
    };
    if let Some(path) = path {
        write_file(path, io::emit_certificate(&cert).as_bytes())?;
    }
    let _ = writeln!(out, "{}", io::describe(cert.graph()));
    let _ = writeln!(out, "predicted_T={}", cert.predicted_t());
    Ok(())
}

fn run_cmd(
    input: &Path,
    kind: EngineArg,
    m: Option<usize>,
    trace: Option<&Path>,
    max_tuples: usize,
    (out, _): Streams,
) -> Result<(), Failure> {
    let doc = io::parse_graph(&read(input)?).map_err(|e| parse_failure(input, e))?;
    let m = m.unwrap_or(doc.graph.r() + 1);
    let kind = match kind {
        EngineArg::Fast => EngineKind::Fast,
        EngineArg::Naive => EngineKind::Naive,
    };
    let result = engine::run(kind, &doc.graph, m, max_tuples)?;
    if let Some(path) = trace {
        let file = File::create(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
        io::emit_trace(&result, BufWriter::new(file))
            .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    }
    let _ = writeln!(out, "{} m={}", io::describe(&doc.graph), m);
    let _ = writeln!(out, "infected={}", result.trace.infected_count());
    let _ = writeln!(out, "T={}", result.running_time);
    Ok(())
}

fn verify(input: &Path, max_tuples: usize, (out, _): Streams) -> Result<(), Failure> {
    let cert = io::parse_certificate(&read(input)?).map_err(|e| parse_failure(input, e))?;
    let report = verify_sequential_with(&cert, &VerifyOptions { max_tuples, ..Default::default() })?;
    let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
    let _ = writeln!(out, "predicted_T={}", cert.predicted_t());
    let _ = writeln!(out, "property (i): {} (T={})", verdict(report.property_i), report.measured_t_forward);
    let _ = writeln!(out, "property (ii): {}", verdict(report.property_ii));
    let _ = writeln!(out, "property (iii): {} (T={})", verdict(report.property_iii), report.measured_t_reverse);
    match report.engines_agree {
        Some(agree) => {
            let _ = writeln!(out, "engines agree: {agree}");
        }
        None => {
            let _ = writeln!(out, "engines agree: skipped");
        }
    }
    if let Some(div) = &report.first_divergence {
        let _ = writeln!(out, "first divergence: {div}");
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Failed)
    }
}

fn bounds(r: u32, n: u64, (out, err): Streams) -> Result<(), Failure> {
    let b = theorem_bounds(r, n)?;
    if b.below_size_threshold() {
        let _ = writeln!(err, "warning: n < 2r^2 ({n} < {}); the lower bound is not claimed", 2 * r * r);
    }
    let _ = writeln!(out, "r={r} n={n}");
    let _ = writeln!(out, "lower={} = {}", b.lower, b.lower_f64());
    let _ = writeln!(out, "upper_exact={}", b.upper_exact);
    let _ = writeln!(out, "upper_analytic={:.6e}", b.upper_analytic);
    let _ = writeln!(out, "k={}", b.k_of_n);
    Ok(())
}

fn brute(r: usize, n: u32, opts: &BruteForceOptions, (out, _): Streams) -> Result<(), Failure> {
    let res = brute_force_max_time_with(r, n, opts)?;
    let _ = writeln!(out, "r={r} n={n} searched={}", res.searched);
    let _ = writeln!(out, "max_T={}", res.max_t);
    let _ = writeln!(out, "witness_mask={:#x}", res.witness_mask);
    let edges: Vec<String> = res.witness.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "witness: {}", edges.join(" "));
    Ok(())
}

fn check_base(k: u32, input: Option<&Path>, max_tuples: usize, (out, _): Streams) -> Result<(), Failure> {
    let reference = build_base(k)?;
    let cert: SequentialCertificate = match input {
        Some(path) => io::parse_certificate(&read(path)?).map_err(|e| parse_failure(path, e))?,
        None => reference.clone(),
    };
    if cert.r() != 3 {
        return Err(Failure::Invalid(format!("the base construction is 3-uniform, got r = {}", cert.r())));
    }
    let mut ok = true;

    let density = check_density(&cert.without_ignition());
    let dense_ok = density.max_edges <= 2;
    ok &= dense_ok;
    let _ = write!(out, "density: max {} edges per 4-set", density.max_edges);
    match (&density.witness, dense_ok) {
        (Some(w), false) => {
            let _ = writeln!(out, " at {w}: FAIL");
        }
        _ => {
            let _ = writeln!(out, ": pass");
        }
    }

    let expected_t = base_running_time(k);
    let claimed_ok = cert.predicted_t() == expected_t
        && cert
            .sequence()
            .iter()
            .enumerate()
            .all(|(i, e)| i == 0 || predicted_base_edge(k, i as u64).is_ok_and(|p| p == *e))
        && cert.ignition() == reference.ignition();
    ok &= claimed_ok;
    let _ = writeln!(out, "sequence vs closed form: {}", if claimed_ok { "pass" } else { "FAIL" });

    let replay = engine::run_fast_capped(cert.graph(), 4, max_tuples)?;
    let mismatch = (1..=expected_t.max(replay.running_time)).find(|&i| {
        let want = predicted_base_edge(k, i).ok();
        replay.trace.at(i) != want.as_slice()
    });
    ok &= mismatch.is_none();
    match mismatch {
        None => {
            let _ = writeln!(out, "replay vs closed form: pass (T={})", replay.running_time);
        }
        Some(i) => {
            let got: Vec<String> = replay.trace.at(i).iter().map(ToString::to_string).collect();
            let want = predicted_base_edge(k, i).map(|e| e.to_string()).unwrap_or_else(|_| "nothing".into());
            let _ =
                writeln!(out, "replay vs closed form: FAIL at step {i}: expected {want}, got {{{}}}", got.join(" "));
        }
    }

    if ok {
        Ok(())
    } else {
        Err(Failure::Failed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("bootperc").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn build_prints_prediction() {
        let (code, out, _) = call(&["build", "--r", "3", "--k", "2", "--stage", "base"]);
        assert_eq!(code, 0);
        assert!(out.contains("predicted_T=12"));
        assert!(call(&["build", "--r", "4", "--k", "2", "--stage", "full"]).1.contains("predicted_T=124"));
        assert!(call(&["build", "--r", "3", "--k", "2", "--stage", "glued"]).1.contains("predicted_T=40"));
        assert_eq!(call(&["build", "--r", "4", "--k", "2", "--stage", "base"]).0, 2);
        assert_eq!(call(&["build", "--r", "3", "--k", "1"]).0, 2);
    }

    #[test]
    fn bounds_output() {
        let (code, out, err) = call(&["bounds", "--r", "3", "--n", "18"]);
        assert_eq!(code, 0);
        assert!(out.contains("lower=27/8 = 3.375"));
        assert!(out.contains("upper_exact=816"));
        assert!(out.contains("k=2"));
        assert!(err.is_empty());
        let (code, _, err) = call(&["bounds", "--r", "3", "--n", "12"]);
        assert_eq!(code, 0);
        assert!(err.contains("n < 2r^2"));
        assert_eq!(call(&["bounds", "--r", "2", "--n", "10"]).0, 2);
    }

    #[test]
    fn brute_and_caps() {
        let (code, out, _) = call(&["brute", "--r", "3", "--n", "4"]);
        assert_eq!(code, 0);
        assert!(out.contains("max_T=1"));
        assert_eq!(call(&["brute", "--r", "3", "--n", "7"]).0, 3);
        assert_eq!(call(&["brute", "--r", "3", "--n", "3"]).0, 2);
    }

    #[test]
    fn check_base_passes() {
        let (code, out, _) = call(&["check-base", "--k", "2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("density: max 2"));
    }

    #[test]
    fn help_and_usage() {
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["build", "--k", "2"]).0, 2);
    }
}
