//! `planar2` command line.
//!
//! Exit codes: 0 pass or planar, 1 counterexample or not planar, 2 usage,
//! capability or I/O error (one line on stderr).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::gf2r::{Elem, FieldCtx};
use crate::planarity::{
    is_planar_monomial_with, linearized_verdict, MonomialSpec, QuadraticImage, Strategy,
};
use crate::report::{FieldInfo, Format, MonomialCheck, Payload, Report, Timing};
use crate::search::{emit_result, run_search, Mode, SearchOptions};
use crate::theorems::{self, VerifierReport};

/// Environment variable read when `--jobs` is not given.
pub const JOBS_ENV: &str = "PLANAR2_JOBS";

#[derive(Parser, Debug)]
#[command(name = "planar2", version, about = "Planar monomials over GF(2^r)")]
struct Cli {
    /// Worker threads (default: PLANAR2_JOBS, then available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe GF(2^r): modulus, generator, log table.
    Field {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        show_modulus: bool,
    },
    /// Decide planarity of a c^t.
    Check(CheckArgs),
    /// Run an exhaustive verifier.
    #[command(subcommand)]
    Verify(Verify),
    /// Search for planar monomials.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    t: u64,
    /// Coefficient by encoding.
    #[arg(long, conflicts_with = "a_pow", required_unless_present = "a_pow")]
    a_enc: Option<u64>,
    /// Coefficient as a power of the generator.
    #[arg(long)]
    a_pow: Option<u64>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum MethodArg {
    Auto,
    Definition,
    LemmaMono,
    LemmaMono2,
    MatrixRank,
}

#[derive(Subcommand, Debug)]
enum Verify {
    Theorem1 {
        #[arg(long)]
        k: u32,
    },
    Fermat {
        #[arg(long = "Q")]
        q: u64,
    },
    PropOdd {
        #[arg(long)]
        r: u32,
    },
    Identities {
        #[arg(long)]
        m: u32,
    },
    RootD {
        #[arg(long)]
        m: u32,
    },
    Minpoly {
        #[arg(long = "Q")]
        q: u64,
    },
    /// Without --a-enc, every coefficient satisfying the hypothesis is checked.
    NoDe {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        a_enc: Option<u64>,
    },
    Curve {
        #[arg(long)]
        r: u32,
        #[arg(long = "J")]
        j: u32,
        #[arg(long)]
        a_enc: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    r: u32,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    resume: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Quadratic mode up to r = 24.
    #[arg(long)]
    large_memory: bool,
    /// All-degrees mode up to r = 16.
    #[arg(long)]
    long_running: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    All,
    Quadratic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`dispatch`] with explicit output streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            let _ = writeln!(err, "planar2: {}", line.trim_start_matches("error: "));
            return 2;
        }
    };
    let jobs = match resolve_jobs(cli.jobs, std::env::var(JOBS_ENV).ok().as_deref()) {
        Ok(j) => j,
        Err(e) => {
            let _ = writeln!(err, "planar2: {e}");
            return 2;
        }
    };
    let timing = cli.timing;
    let start = std::time::Instant::now();
    let outcome = crate::with_jobs(jobs, || execute(cli.command));
    match outcome.and_then(|(mut report, dest)| {
        if timing {
            report.timing = Some(Timing { elapsed_ms: start.elapsed().as_millis() as u64 });
        }
        write_report(&report, dest, out)?;
        Ok(report.exit_status)
    }) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "planar2: {e}");
            2
        }
    }
}

/// `--jobs` wins over the environment; 0 means available parallelism.
fn resolve_jobs(flag: Option<usize>, env: Option<&str>) -> Result<usize> {
    if let Some(j) = flag {
        return Ok(j);
    }
    match env.map(str::trim).filter(|s| !s.is_empty()) {
        Some(s) => s.parse().map_err(|_| Error::usage(format!("{JOBS_ENV}={s} is not a worker count"))),
        None => Ok(0),
    }
}

enum Destination {
    Stdout(Format),
    File(PathBuf, Format),
}

fn write_report(report: &Report, dest: Destination, out: &mut dyn Write) -> Result<()> {
    match dest {
        Destination::Stdout(format) => out.write_all(&report.to_bytes(format)?)?,
        Destination::File(path, format) => match &report.payload {
            Payload::Search(result) if report.timing.is_none() => emit_result(result, &path, format)?,
            _ => std::fs::write(&path, report.to_bytes(format)?)?,
        },
    }
    Ok(())
}

fn execute(command: Command) -> Result<(Report, Destination)> {
    let json = Destination::Stdout(Format::Json);
    match command {
        Command::Field { r, show_modulus } => {
            let ctx = FieldCtx::build(r)?;
            let info = FieldInfo {
                q: ctx.order(),
                has_log_table: ctx.has_log_table(),
                modulus_poly: show_modulus.then(|| poly_string(ctx.modulus())),
            };
            Ok((Report::new("field", ctx.descriptor(), Payload::Field(info), 0), json))
        }
        Command::Check(args) => {
            let ctx = FieldCtx::build(args.r)?;
            let a = match (args.a_enc, args.a_pow) {
                (Some(enc), _) => ctx.elem(enc)?,
                (None, Some(m)) => ctx.gen_pow(m),
                (None, None) => return Err(Error::usage("one of --a-enc or --a-pow is required")),
            };
            let spec = MonomialSpec::new(&ctx, args.t, a)?;
            let verdict = match args.method {
                MethodArg::Auto => is_planar_monomial_with(&spec, &ctx, Strategy::Auto)?,
                MethodArg::Definition => is_planar_monomial_with(&spec, &ctx, Strategy::Definition)?,
                MethodArg::LemmaMono => is_planar_monomial_with(&spec, &ctx, Strategy::Occupancy)?,
                MethodArg::LemmaMono2 | MethodArg::MatrixRank => {
                    let (i, j) = spec
                        .split
                        .ok_or_else(|| Error::usage(format!("t = {} is not 2^i + 2^j", spec.t)))?;
                    if matches!(args.method, MethodArg::LemmaMono2) {
                        QuadraticImage::new(&ctx, i, j)?.verdict(a)?
                    } else {
                        linearized_verdict(i, j, a, spec.coset_index(&ctx), &ctx)?
                    }
                }
            };
            let code = if verdict.planar { 0 } else { 1 };
            let payload = Payload::Check(MonomialCheck { spec, verdict });
            Ok((Report::new("check", ctx.descriptor(), payload, code), json))
        }
        Command::Verify(v) => {
            let (command, report) = verify(v)?;
            let code = if report.pass { 0 } else { 1 };
            Ok((Report::new(command, report.field, Payload::Verifier(report), code), json))
        }
        Command::Search(args) => {
            let mode = match args.mode {
                ModeArg::All => Mode::AllDegrees,
                ModeArg::Quadratic => Mode::Quadratic,
            };
            let format = match args.format {
                FormatArg::Json => Format::Json,
                FormatArg::Csv => Format::Csv,
            };
            let opts = SearchOptions {
                out: args.out.clone(),
                resume: args.resume,
                large_memory: args.large_memory,
                long_running: args.long_running,
                ..SearchOptions::default()
            };
            let result = run_search(args.r, mode, &opts)?.expect("search without a stop limit completes");
            let report = Report::new("search", result.field, Payload::Search(result), 0);
            let dest = match args.out {
                Some(path) => Destination::File(path, format),
                None => Destination::Stdout(format),
            };
            Ok((report, dest))
        }
    }
}

fn verify(v: Verify) -> Result<(&'static str, VerifierReport)> {
    Ok(match v {
        Verify::Theorem1 { k } => ("verify theorem1", theorems::verify_theorem1(k)?),
        Verify::Fermat { q } => ("verify fermat", theorems::verify_fermat_cubes(q)?),
        Verify::PropOdd { r } => ("verify prop-odd", theorems::verify_prop_odd(r)?),
        Verify::Identities { m } => ("verify identities", theorems::verify_factorization_identities(m)?),
        Verify::RootD { m } => ("verify root-d", theorems::verify_root_d(m)?),
        Verify::Minpoly { q } => ("verify minpoly", theorems::verify_minpoly_structure(q)?),
        Verify::NoDe { k, a_enc: None } => ("verify no-de", theorems::verify_no_de_all(k)?),
        Verify::NoDe { k, a_enc: Some(enc) } => {
            let r = 6 * k;
            if k == 0 || r > theorems::VERIFIER_MAX_DEGREE {
                return Err(Error::usage(format!("k = {k} outside 1..={}", theorems::VERIFIER_MAX_DEGREE / 6)));
            }
            let ctx = FieldCtx::build(r)?;
            let a: Elem = ctx.elem(enc)?;
            ("verify no-de", theorems::verify_no_de_solutions_in(&ctx, k, a)?)
        }
        Verify::Curve { r, j, a_enc } => ("verify curve", theorems::verify_curve(r, j, a_enc)?),
    })
}

/// `x^4 + x + 1` style rendering of a GF(2) polynomial.
fn poly_string(f: u64) -> String {
    let terms: Vec<String> = (0..64)
        .rev()
        .filter(|&k| f >> k & 1 == 1)
        .map(|k| match k {
            0 => "1".to_owned(),
            1 => "x".to_owned(),
            _ => format!("x^{k}"),
        })
        .collect();
    terms.join(" + ")
}
