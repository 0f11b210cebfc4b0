//! Experiment runner and the whole-config verification suite.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::channel::{random_message, seeded_rng, ChannelModel, RNG_ALGORITHM};
use super::config::CodeConfigFile;
use super::HarnessError;
use crate::agcode::{CodeParams, GoppaCode, DEFAULT_CODEWORD_BUDGET};
use crate::curves::CurveFamily;
use crate::decoder::{cross_validate, decode_geometric, decode_toeplitz_g0, DecodeResult, DecodeStatus};
use crate::galois::FieldElement;
use crate::secantgeom::{
    error_pattern_count, error_patterns, secant_height, spannedness_check, syndrome,
    t_ball_injectivity, Stability, DEFAULT_SUBSET_BUDGET,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderChoice {
    Geometric,
    Toeplitz,
    Both,
}

impl std::str::FromStr for DecoderChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "geometric" => Ok(DecoderChoice::Geometric),
            "toeplitz" => Ok(DecoderChoice::Toeplitz),
            "both" => Ok(DecoderChoice::Both),
            other => Err(format!("unknown decoder {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub code: CodeConfigFile,
    pub weights: Vec<usize>,
    /// Words per weight in sampled mode.
    pub trials: usize,
    pub seed: Option<u64>,
    pub mode: Mode,
    pub budget: u64,
    pub decoder: DecoderChoice,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WeightStats {
    pub weight: usize,
    pub cases: u64,
    pub corrected_to_original: u64,
    pub miscorrected: u64,
    pub detected_beyond_capacity: u64,
    pub ambiguous: u64,
    pub failed: u64,
    pub success_rate: f64,
    /// Syndrome heights found by the decoder; `"none"` for heights above `t`.
    pub height_histogram: BTreeMap<String, u64>,
    pub stability_histogram: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decoder_agreements: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decoder_disagreements: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub rng: String,
    pub seed: Option<u64>,
    pub mode: Mode,
    pub decoder: DecoderChoice,
    pub params: CodeParams,
    pub per_weight: Vec<WeightStats>,
}

fn add_words(code: &GoppaCode, x: &[FieldElement], e: &[FieldElement]) -> Vec<FieldElement> {
    let f = code.field();
    x.iter().zip(e).map(|(&a, &b)| f.add(a, b)).collect()
}

/// Runs the experiment. The same spec always produces the same report.
pub fn simulate(spec: &ExperimentSpec) -> Result<SimulationReport, HarnessError> {
    let code = GoppaCode::build(spec.code.to_code_config()?)?;
    if spec.mode == Mode::Sampled && spec.seed.is_none() {
        return Err(HarnessError::Config("sampled mode needs a seed".into()));
    }
    let is_rational = code.curve().family() == CurveFamily::Rational;
    if spec.decoder != DecoderChoice::Geometric && !is_rational {
        return Err(HarnessError::Config("the Toeplitz decoder needs a rational-curve code".into()));
    }
    let (q, n) = (code.field().order(), code.n());
    let mut rng = seeded_rng(spec.seed.unwrap_or(0));

    let mut per_weight = Vec::new();
    for &w in &spec.weights {
        if w > n {
            return Err(HarnessError::Config(format!("weight {w} exceeds code length {n}")));
        }
        // inputs are generated sequentially so the stream is order-stable
        let cases: Vec<(Vec<FieldElement>, Vec<FieldElement>)> = match spec.mode {
            Mode::Exhaustive => {
                let count = error_pattern_count(q, n, w);
                if count > spec.budget as u128 {
                    return Err(HarnessError::BudgetExceeded(format!(
                        "{count} error patterns of weight {w}, budget {}",
                        spec.budget
                    )));
                }
                error_patterns(code.field(), n, w)
                    .map(|e| (code.encode(&random_message(&code, &mut rng)).expect("length k"), e))
                    .collect()
            }
            Mode::Sampled => {
                if spec.trials as u64 > spec.budget {
                    return Err(HarnessError::BudgetExceeded(format!(
                        "{} trials, budget {}",
                        spec.trials, spec.budget
                    )));
                }
                let channel = ChannelModel::new(w);
                (0..spec.trials)
                    .map(|_| {
                        let x = code.encode(&random_message(&code, &mut rng)).expect("length k");
                        let e = channel.error(code.field(), n, &mut rng);
                        (x, e)
                    })
                    .collect()
            }
        };

        let outcomes: Vec<(Option<DecodeResult>, Option<DecodeResult>)> = cases
            .par_iter()
            .map(|(x, e)| {
                let y = add_words(&code, x, e);
                let geo = match spec.decoder {
                    DecoderChoice::Toeplitz => None,
                    _ => Some(decode_geometric(&code, &y)?),
                };
                let toe = match spec.decoder {
                    DecoderChoice::Geometric => None,
                    _ => Some(decode_toeplitz_g0(&code, &y)?),
                };
                Ok((geo, toe))
            })
            .collect::<Result<_, HarnessError>>()?;

        let mut stats = WeightStats { weight: w, cases: cases.len() as u64, ..Default::default() };
        if spec.decoder == DecoderChoice::Both {
            stats.decoder_agreements = Some(0);
            stats.decoder_disagreements = Some(0);
        }
        for ((x, _), (geo, toe)) in cases.iter().zip(&outcomes) {
            let primary = geo.as_ref().or(toe.as_ref()).expect("at least one decoder ran");
            match primary.status {
                DecodeStatus::Corrected if primary.codeword.as_ref() == Some(x) => {
                    stats.corrected_to_original += 1
                }
                DecodeStatus::Corrected => stats.miscorrected += 1,
                DecodeStatus::DetectedBeyondCapacity => stats.detected_beyond_capacity += 1,
                DecodeStatus::Ambiguous => stats.ambiguous += 1,
                DecodeStatus::Fail => stats.failed += 1,
            }
            let h_key = primary.height.map_or("none".to_string(), |h| h.to_string());
            *stats.height_histogram.entry(h_key).or_default() += 1;
            let st_key = primary.height.map_or("beyond_capacity".to_string(), |h| {
                crate::secantgeom::classify_stability(2 * h as i64 - code.d() as i64).to_string()
            });
            *stats.stability_histogram.entry(st_key).or_default() += 1;
            if let (Some(g), Some(t)) = (geo, toe) {
                let agree = g.status == t.status && g.support == t.support && g.values == t.values;
                let slot = if agree { &mut stats.decoder_agreements } else { &mut stats.decoder_disagreements };
                *slot.as_mut().expect("initialized for both") += 1;
            }
        }
        stats.success_rate = if stats.cases == 0 {
            0.0
        } else {
            stats.corrected_to_original as f64 / stats.cases as f64
        };
        per_weight.push(stats);
    }

    Ok(SimulationReport {
        rng: RNG_ALGORITHM.to_string(),
        seed: spec.seed,
        mode: spec.mode,
        decoder: spec.decoder,
        params: *code.params(),
        per_weight,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub skipped: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Check {
        Check { name: name.into(), passed, skipped: false, detail }
    }

    fn skipped(name: &str, detail: String) -> Check {
        Check { name: name.into(), passed: true, skipped: true, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub rng: String,
    pub seed: u64,
    pub params: CodeParams,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs the invariant suite on one code configuration.
///
/// Exhaustive checks above `budget` make the whole run refuse, except the
/// minimum-distance check, which is reported as skipped.
pub fn verify(config: &CodeConfigFile, budget: u64, seed: u64) -> Result<VerifyReport, HarnessError> {
    let code = GoppaCode::build(config.to_code_config()?)?;
    let p = *code.params();
    let f = code.field().clone();
    let mut checks = Vec::new();

    let g = p.genus as usize;
    checks.push(Check::new(
        "riemann_roch_dimensions",
        code.primal_basis().len() == p.m as usize + 1 - g
            && code.dual_basis().len() == p.m_star as usize + 1 - g
            && code.generator().rank() == p.k,
        format!("|L(m)| = {}, |L(m*)| = {}, rank G = {}", code.primal_basis().len(),
            code.dual_basis().len(), code.generator().rank()),
    ));
    checks.push(Check::new(
        "parity_rank",
        code.parity().rank() == p.k_star,
        format!("rank H = {}, k* = {}", code.parity().rank(), p.k_star),
    ));
    let product = code.generator().mul(&code.parity().transpose()).expect("same field");
    checks.push(Check::new("orthogonality", product.is_zero(), "G·Hᵀ = 0".into()));
    checks.push(Check::new(
        "multipliers_nonzero",
        code.multipliers().iter().all(|v| !v.is_zero()),
        format!("{} multipliers", code.multipliers().len()),
    ));

    let span = spannedness_check(&code, budget)?;
    checks.push(Check::new(
        "spannedness",
        span.passed(),
        format!("{} subsets of size {}, first failure {:?}", span.subsets_checked, span.subset_size,
            span.first_failure),
    ));

    let inj = t_ball_injectivity(&code, p.t, budget)?;
    checks.push(Check::new(
        "t_ball_injectivity",
        inj.collisions == 0,
        format!("{} errors, {} collisions", inj.errors_checked, inj.collisions),
    ));

    // height exactness, stability labels and round trip over every error of
    // weight <= t
    let errors: Vec<Vec<FieldElement>> =
        (0..=p.t).flat_map(|w| error_patterns(&f, p.n, w).collect::<Vec<_>>()).collect();
    let mut rng = seeded_rng(seed);
    let codewords: Vec<Vec<FieldElement>> = errors
        .iter()
        .map(|_| code.encode(&random_message(&code, &mut rng)).expect("length k"))
        .collect();
    let per_error: Vec<(bool, bool, bool)> = errors
        .par_iter()
        .zip(&codewords)
        .map(|(e, x)| {
            let support: Vec<usize> = (0..p.n).filter(|&i| !e[i].is_zero()).collect();
            let label = secant_height(&code, &syndrome(&code, e).expect("length n"), p.t);
            let exact = label.h == Some(support.len()) && label.witnesses == vec![support.clone()];
            let h = support.len() as i64;
            let stable_ok = label.s == Some(2 * h - p.d as i64)
                && label.stability == Some(Stability::Unstable);
            let y = add_words(&code, x, e);
            let round_trip = decode_geometric(&code, &y)
                .map(|r| r.is_corrected() && r.codeword.as_ref() == Some(x))
                .unwrap_or(false);
            (exact, stable_ok, round_trip)
        })
        .collect();
    let count = |sel: fn(&(bool, bool, bool)) -> bool| per_error.iter().filter(|r| !sel(r)).count();
    let (bad_h, bad_s, bad_rt) = (count(|r| r.0), count(|r| r.1), count(|r| r.2));
    checks.push(Check::new(
        "height_exactness",
        bad_h == 0,
        format!("{} errors of weight <= {}, {bad_h} exceptions", errors.len(), p.t),
    ));
    checks.push(Check::new(
        "correctable_syndromes_unstable",
        bad_s == 0,
        format!("{} syndromes, {bad_s} not unstable with s = 2h - d", errors.len()),
    ));
    checks.push(Check::new(
        "round_trip",
        bad_rt == 0,
        format!("{} words, {bad_rt} not restored", errors.len()),
    ));

    if code.curve().family() == CurveFamily::Rational {
        let words: Vec<Vec<FieldElement>> =
            errors.iter().zip(&codewords).map(|(e, x)| add_words(&code, x, e)).collect();
        let report = cross_validate(&code, &words)?;
        checks.push(Check::new(
            "decoder_agreement",
            report.agrees(),
            format!("{} words, {} disagreements", report.cases, report.disagreements.len()),
        ));
    }

    let distance_budget = budget.min(DEFAULT_CODEWORD_BUDGET);
    match code.true_min_distance(distance_budget) {
        Ok(dmin) => checks.push(Check::new(
            "designed_distance",
            dmin >= p.d,
            format!("true minimum distance {dmin}, designed {}", p.d),
        )),
        Err(e) => checks.push(Check::skipped("designed_distance", e.to_string())),
    }

    Ok(VerifyReport { rng: RNG_ALGORITHM.into(), seed, params: p, checks })
}

/// Default budget for CLI runs.
pub const DEFAULT_BUDGET: u64 = DEFAULT_SUBSET_BUDGET;
