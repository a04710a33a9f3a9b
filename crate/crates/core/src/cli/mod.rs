//! Command-line front end. Data goes to stdout (or `--output`), logs to
//! stderr. Exit codes: 0 success, 1 verification or computation failure,
//! 2 invalid input.

pub mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::hilbert_scheme::{fuzz, verify, ToricHilbertScheme, VerifyOptions};
use crate::intlinalg::{normalize_gale, GaleLattice, NormalizationLog};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "toric-hilbert", version, about = "Monomial ideals, flips and tangent spaces of a rank-two lattice")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write data here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FanFormat {
    Json,
    Svg,
}

#[derive(Debug, Args)]
pub struct Input {
    /// JSON file `{"name": ..., "basis": [[a, b], ...]}`.
    pub input: PathBuf,
    /// Search radius for standard monomials.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    pub cap: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalized Gale basis and the rewrites that produced it.
    Normalize(Input),
    /// Graver basis as binomials.
    Graver(Input),
    /// Rays and chambers of the Gale diagram.
    Chambers(Input),
    /// Gröbner fan of the lattice ideal.
    Fan {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: FanFormat,
    },
    /// Every monomial ideal with radical, minimal primes and witness.
    Ideals(Input),
    /// Flips of every ideal, or the flip graph in DOT.
    Flips {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dot: bool,
    },
    /// Degree-zero tangent space dimension of every ideal.
    Tangent(Input),
    /// The full verification report.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        degree_bound: Option<i64>,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        margin: Option<i64>,
        /// Seed for the random weights of the Gröbner basis check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random lattices through the verification report.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        cap: Option<i64>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    #[serde(default)]
    name: Option<String>,
    basis: Vec<[i64; 2]>,
}

/// A named, normalized lattice read from JSON.
#[derive(Debug, Clone)]
pub struct ParsedInput {
    pub name: Option<String>,
    pub lattice: GaleLattice,
    pub log: NormalizationLog,
}

pub fn parse_input_str(text: &str) -> Result<ParsedInput> {
    let file: InputFile = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let (lattice, log) = normalize_gale(&file.basis)?;
    Ok(ParsedInput { name: file.name, lattice, log })
}

pub fn parse_input(path: &Path) -> Result<ParsedInput> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    parse_input_str(&text)
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidInput(_)
            | Error::RankDeficient { .. }
            | Error::ZeroVector
            | Error::DegenerateGale
            | Error::DimensionMismatch { .. }
    )
}

/// Output of one subcommand: the data and whether it counts as success.
struct Outcome {
    data: String,
    ok: bool,
}

fn json<T: serde::Serialize>(value: &T) -> String {
    render::to_json_text(&serde_json::to_value(value).expect("serializable"))
}

fn load(input: &Input, err: &mut dyn Write) -> Result<ParsedInput> {
    let parsed = parse_input(&input.input)?;
    if let Some(name) = &parsed.name {
        let _ = writeln!(err, "lattice {name}: n = {}", parsed.lattice.n());
    }
    for step in &parsed.log.steps {
        let _ = writeln!(err, "normalize: {step}");
    }
    Ok(parsed)
}

fn scheme(input: &Input, err: &mut dyn Write) -> Result<ToricHilbertScheme> {
    let parsed = load(input, err)?;
    ToricHilbertScheme::with_cap(parsed.lattice, input.cap)
}

fn execute(command: &Command, err: &mut dyn Write) -> Result<Outcome> {
    let ok = |data| Ok(Outcome { data, ok: true });
    match command {
        Command::Normalize(input) => {
            let p = load(input, err)?;
            ok(json(&render::normalize_json(&p)))
        }
        Command::Graver(input) => {
            let p = load(input, err)?;
            ok(json(&crate::graver::graver_basis(&p.lattice)?))
        }
        Command::Chambers(input) => {
            let p = load(input, err)?;
            ok(json(&render::chambers_json(&crate::geometry2d::chamber_complex(&p.lattice)?)))
        }
        Command::Fan { input, format } => {
            let s = scheme(input, err)?;
            match format {
                FanFormat::Json => ok(json(&s.fan.to_json())),
                FanFormat::Svg => ok(render::fan_svg(&s.fan)),
            }
        }
        Command::Ideals(input) => {
            let s = scheme(input, err)?;
            ok(json(&render::ideals_json(&s)?))
        }
        Command::Flips { input, dot } => {
            let s = scheme(input, err)?;
            if *dot {
                ok(crate::hilbert_scheme::flip_graph(&s)?.to_dot())
            } else {
                ok(json(&render::flips_json(&s)?))
            }
        }
        Command::Tangent(input) => {
            let s = scheme(input, err)?;
            ok(json(&render::tangent_json(&s)?))
        }
        Command::Verify { input, degree_bound, margin, seed } => {
            let p = load(input, err)?;
            let options = VerifyOptions {
                degree_bound: *degree_bound,
                margin: *margin,
                cap: input.cap,
                seed: *seed,
                ..VerifyOptions::default()
            };
            let report = verify(&p.lattice, &options);
            for c in report.failures() {
                let _ = writeln!(err, "check {} failed", c.name);
            }
            Ok(Outcome { data: json(&report), ok: report.overall })
        }
        Command::Fuzz { seed, count, cap } => {
            let options = VerifyOptions { cap: *cap, seed: *seed, ..VerifyOptions::default() };
            let cases = fuzz(*seed, *count as usize, &options);
            let failed = cases.iter().filter(|c| !c.failures.is_empty()).count();
            let _ = writeln!(err, "fuzz: {failed} of {} lattices failed", cases.len());
            Ok(Outcome { data: json(&cases), ok: failed == 0 })
        }
    }
}

/// Runs one parsed command, writing data to `out` unless `--output` is set.
pub fn run_with(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(&config.command, err) {
        Ok(outcome) => {
            let written = match &config.output {
                Some(path) => fs::write(path, outcome.data.as_bytes()),
                None => out.write_all(outcome.data.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_FAILURE;
            }
            if outcome.ok {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_input_error(&e) {
                EXIT_INVALID
            } else {
                EXIT_FAILURE
            }
        }
    }
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run_with(&config, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_on(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["toric-hilbert"];
        full.extend_from_slice(args);
        let code = run_args(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn parse_examples() {
        let p = parse_input_str(r#"{"basis": [[2,0],[0,1],[-2,1],[-2,0]]}"#).unwrap();
        assert_eq!(p.lattice.n(), 4);
        assert!(p.log.is_empty());
        let p = parse_input_str(r#"{"name": "id", "basis": [[1,0],[0,1]]}"#).unwrap();
        assert_eq!(p.name.as_deref(), Some("id"));
        assert!(matches!(parse_input_str(r#"{"basis": [[1,2]]}"#), Err(Error::RankDeficient { .. })));
        assert!(matches!(parse_input_str(r#"{"basis": [[1.5,2]]}"#), Err(Error::InvalidInput(_))));
        assert!(matches!(parse_input_str(r#"{"basis": [[1,2]], "extra": 1}"#), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn invalid_flags() {
        assert_eq!(run_on(&["verify", "x.json", "--margin", "0"]).0, EXIT_INVALID);
        assert_eq!(run_on(&["graver", "x.json", "--bogus"]).0, EXIT_INVALID);
        assert_eq!(run_on(&["graver", "/nonexistent/x.json"]).0, EXIT_INVALID);
    }
}
