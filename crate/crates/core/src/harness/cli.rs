//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure,
//! 3 budget refusal.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use super::channel::{random_message, seeded_rng, ChannelModel, RNG_ALGORITHM};
use super::config::CodeConfigFile;
use super::experiment::{self, DecoderChoice, ExperimentSpec, Mode, DEFAULT_BUDGET};
use super::HarnessError;
use crate::agcode::GoppaCode;
use crate::decoder::{decode_geometric, decode_toeplitz_g0, DecodeResult};
use crate::galois::{Field, FieldElement};
use crate::secantgeom::stratify_all;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "goppa", version, about = "One-point Goppa codes and syndrome geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ConfigArg {
    /// Code configuration (JSON).
    #[arg(long)]
    config: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code or print its parameters.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Encode a message (comma-separated element indices) or a random one.
    Encode {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long)]
        message: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add a random error of fixed weight to a word.
    Corrupt {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long)]
        word: String,
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode one word or a file of words, one per line.
    Decode {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, conflicts_with = "input")]
        word: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "geometric")]
        decoder: DecoderChoice,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Secant-height census of the whole syndrome space.
    Strata {
        #[command(flatten)]
        cfg: ConfigArg,
        /// CSV destination; the JSON summary goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = crate::secantgeom::DEFAULT_STRATA_BUDGET)]
        budget: u64,
    },
    /// Run the full invariant suite.
    Verify {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact minimum distance by exhaustion.
    Distance {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, default_value_t = crate::agcode::DEFAULT_CODEWORD_BUDGET)]
        budget: u64,
    },
    /// Decode-success experiment over an error-weight schedule.
    Simulate {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Error weight; repeat for a schedule.
        #[arg(long, required = true)]
        weight: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Enumerate every error pattern instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value = "both")]
        decoder: DecoderChoice,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CodeAction {
    /// Export generator, parity check, multipliers and parameters as JSON.
    Build {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a parameter table.
    Info {
        #[command(flatten)]
        cfg: ConfigArg,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with_io<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                HarnessError::BudgetExceeded(_) => EXIT_BUDGET,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn load(cfg: &ConfigArg) -> Result<GoppaCode, HarnessError> {
    let file = CodeConfigFile::load(&cfg.config)?;
    Ok(GoppaCode::build(file.to_code_config()?)?)
}

fn parse_word(field: &Field, text: &str) -> Result<Vec<FieldElement>, HarnessError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            let i: u64 = s
                .parse()
                .map_err(|_| HarnessError::Config(format!("not an element index: {s:?}")))?;
            Ok(field.element(i)?)
        })
        .collect()
}

fn format_word(word: &[FieldElement]) -> String {
    word.iter().map(|x| x.index().to_string()).collect::<Vec<_>>().join(",")
}

fn check_len(word: &[FieldElement], expected: usize, what: &str) -> Result<(), HarnessError> {
    if word.len() != expected {
        return Err(HarnessError::Config(format!(
            "{what} has length {}, expected {expected}",
            word.len()
        )));
    }
    Ok(())
}

fn sink(path: &Option<PathBuf>, out: &mut dyn Write, body: &str) -> Result<(), HarnessError> {
    match path {
        Some(p) => std::fs::write(p, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, HarnessError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

#[derive(Serialize)]
struct DecodeLine<'a> {
    word: usize,
    decoder: &'static str,
    status: crate::decoder::DecodeStatus,
    support: &'a [usize],
    values: Vec<u32>,
    h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    codeword: Option<String>,
}

impl<'a> DecodeLine<'a> {
    fn new(word: usize, decoder: &'static str, r: &'a DecodeResult) -> DecodeLine<'a> {
        DecodeLine {
            word,
            decoder,
            status: r.status,
            support: &r.support,
            values: r.values.iter().map(|v| v.index()).collect(),
            h: r.height,
            codeword: r.codeword.as_deref().map(format_word),
        }
    }
}

fn read_words(path: &Path, field: &Field) -> Result<Vec<Vec<FieldElement>>, HarnessError> {
    let reader = BufReader::new(File::open(path)?);
    let mut words = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        words.push(parse_word(field, line)?);
    }
    Ok(words)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, HarnessError> {
    match cmd {
        Command::Code { action: CodeAction::Build { cfg, out: path } } => {
            let code = load(&cfg)?;
            sink(&path, out, &to_json(&code.export())?)?;
        }
        Command::Code { action: CodeAction::Info { cfg } } => {
            let code = load(&cfg)?;
            let p = code.params();
            writeln!(out, "curve          {}", code.curve())?;
            for (name, value) in [
                ("n", p.n as i64),
                ("k", p.k as i64),
                ("k*", p.k_star as i64),
                ("m", p.m as i64),
                ("m*", p.m_star as i64),
                ("genus", p.genus as i64),
                ("d", p.d as i64),
                ("t", p.t as i64),
                ("q", p.q as i64),
            ] {
                writeln!(out, "{name:<14} {value}")?;
            }
            writeln!(out, "{:<14} P^{}", "ambient", p.d + p.genus as usize - 2)?;
        }
        Command::Encode { cfg, message, seed, out: path } => {
            let code = load(&cfg)?;
            let msg = match (message, seed) {
                (Some(m), _) => parse_word(code.field(), &m)?,
                (None, Some(s)) => random_message(&code, &mut seeded_rng(s)),
                (None, None) => {
                    return Err(HarnessError::Config("give --message or --seed".into()));
                }
            };
            check_len(&msg, code.k(), "message")?;
            let cw = code.encode(&msg)?;
            sink(&path, out, &(format_word(&cw) + "\n"))?;
        }
        Command::Corrupt { cfg, word, weight, seed, out: path } => {
            let code = load(&cfg)?;
            let x = parse_word(code.field(), &word)?;
            check_len(&x, code.n(), "word")?;
            if weight > code.n() {
                return Err(HarnessError::Config(format!("weight {weight} exceeds length")));
            }
            let (y, _) = ChannelModel::new(weight).corrupt(code.field(), &x, &mut seeded_rng(seed));
            sink(&path, out, &(format_word(&y) + "\n"))?;
        }
        Command::Decode { cfg, word, input, decoder, out: path } => {
            let code = load(&cfg)?;
            let words = match (word, input) {
                (Some(w), _) => vec![parse_word(code.field(), &w)?],
                (None, Some(p)) => read_words(&p, code.field())?,
                (None, None) => return Err(HarnessError::Config("give --word or --input".into())),
            };
            let mut body = String::new();
            for (i, y) in words.iter().enumerate() {
                check_len(y, code.n(), "word")?;
                if decoder != DecoderChoice::Toeplitz {
                    let r = decode_geometric(&code, y)?;
                    body += &serde_json::to_string(&DecodeLine::new(i, "geometric", &r))?;
                    body.push('\n');
                }
                if decoder != DecoderChoice::Geometric {
                    let r = decode_toeplitz_g0(&code, y)?;
                    body += &serde_json::to_string(&DecodeLine::new(i, "toeplitz", &r))?;
                    body.push('\n');
                }
            }
            sink(&path, out, &body)?;
        }
        Command::Strata { cfg, out: path, budget } => {
            let code = load(&cfg)?;
            let census = stratify_all(&code, budget)?;
            if let Some(p) = &path {
                census.write_csv(BufWriter::new(File::create(p)?))?;
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&census.summary)?)?;
        }
        Command::Verify { cfg, budget, seed, out: path } => {
            let file = CodeConfigFile::load(&cfg.config)?;
            let report = experiment::verify(&file, budget, seed)?;
            for c in &report.checks {
                let tag = match (c.skipped, c.passed) {
                    (true, _) => "SKIP",
                    (false, true) => "PASS",
                    (false, false) => "FAIL",
                };
                writeln!(out, "{tag}  {:<32} {}", c.name, c.detail)?;
            }
            if let Some(p) = &path {
                std::fs::write(p, to_json(&report)?)?;
            }
            if !report.all_passed() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Distance { cfg, budget } => {
            let code = load(&cfg)?;
            let dmin = code.true_min_distance(budget)?;
            writeln!(out, "true minimum distance {dmin} (designed {})", code.d())?;
        }
        Command::Simulate { cfg, weight, trials, seed, exhaustive, decoder, budget, out: path } => {
            let spec = ExperimentSpec {
                code: CodeConfigFile::load(&cfg.config)?,
                weights: weight,
                trials,
                seed,
                mode: if exhaustive { Mode::Exhaustive } else { Mode::Sampled },
                budget,
                decoder,
            };
            let report = experiment::simulate(&spec)?;
            if let Some(p) = &path {
                std::fs::write(p, to_json(&report)?)?;
            }
            writeln!(out, "rng {RNG_ALGORITHM}, seed {:?}", report.seed)?;
            writeln!(out, "{:>6} {:>8} {:>10} {:>8} {:>8} {:>8}", "weight", "cases", "restored", "miscorr", "detected", "rate")?;
            for w in &report.per_weight {
                writeln!(
                    out,
                    "{:>6} {:>8} {:>10} {:>8} {:>8} {:>8.4}",
                    w.weight, w.cases, w.corrected_to_original, w.miscorrected,
                    w.detected_beyond_capacity, w.success_rate
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}
