//! Syndromes as points of the ambient projective space, and their secant
//! stratification.
//!
//! Column `i` of the parity matrix is the embedded image of the point `P_i`.
//! The secant height `h(P)` of a syndrome `P` is the least `h` for which some
//! `h` columns span a subspace containing `P`. Heights are searched over
//! reduced divisors supported on `D` only: for `h ≤ t` this is the true
//! height and the witness is unique, above `t` it is an upper bound.
//!
//! The rank-two extension attached to `P` has `s`-invariant `2h - d`, which
//! decides its stability class.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::Write;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agcode::GoppaCode;
use crate::galois::{Field, FieldElement};
use crate::linalg::Matrix;

/// Default cap on `q^{k*}` for [`stratify_all`].
pub const DEFAULT_STRATA_BUDGET: u64 = 1_000_000;

/// Default cap on the number of column subsets for [`spannedness_check`]
/// and error patterns for [`t_ball_injectivity`].
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("expected length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("secant height unknown within the search bound")]
    HeightUnknown,
    #[error("exhaustion needs {required} steps, budget is {budget}")]
    TooLargeToExhaust { required: u128, budget: u64 },
    #[error("census output failed: {0}")]
    Output(String),
}

/// A vector of `F_q^{k*}`; nonzero vectors are read projectively.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SyndromePoint {
    vector: Vec<FieldElement>,
}

impl SyndromePoint {
    pub fn new(vector: Vec<FieldElement>) -> SyndromePoint {
        SyndromePoint { vector }
    }

    /// Point with the given index: digits base q, coordinate 0 least
    /// significant.
    pub fn from_index(field: &Field, len: usize, mut index: u64) -> SyndromePoint {
        let q = field.order() as u64;
        let vector = (0..len)
            .map(|_| {
                let d = index % q;
                index /= q;
                field.element(d).expect("digit below q")
            })
            .collect();
        SyndromePoint { vector }
    }

    pub fn index(&self, q: usize) -> u64 {
        self.vector.iter().rev().fold(0u64, |acc, x| acc * q as u64 + x.index() as u64)
    }

    pub fn vector(&self) -> &[FieldElement] {
        &self.vector
    }

    pub fn len(&self) -> usize {
        self.vector.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vector.is_empty()
    }

    /// The split extension.
    pub fn is_zero(&self) -> bool {
        self.vector.iter().all(|x| x.is_zero())
    }

    pub fn scaled(&self, field: &Field, c: FieldElement) -> SyndromePoint {
        SyndromePoint { vector: self.vector.iter().map(|&x| field.mul(c, x)).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Unstable,
    Semistable,
    Stable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Unstable => "unstable",
            Stability::Semistable => "semistable",
            Stability::Stable => "stable",
        })
    }
}

/// Secant height of a syndrome with the derived invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumLabel {
    /// `None` when no witness exists within the search bound.
    pub h: Option<usize>,
    pub s: Option<i64>,
    pub stability: Option<Stability>,
    /// Every column subset of size `h` whose span contains the point.
    pub witnesses: Vec<Vec<usize>>,
}

impl StratumLabel {
    fn known(h: usize, d: usize, witnesses: Vec<Vec<usize>>) -> StratumLabel {
        let s = 2 * h as i64 - d as i64;
        StratumLabel { h: Some(h), s: Some(s), stability: Some(classify_stability(s)), witnesses }
    }

    fn unknown() -> StratumLabel {
        StratumLabel { h: None, s: None, stability: None, witnesses: Vec::new() }
    }
}

/// `parity · y`.
pub fn syndrome(code: &GoppaCode, y: &[FieldElement]) -> Result<SyndromePoint, GeomError> {
    if y.len() != code.n() {
        return Err(GeomError::LengthMismatch { expected: code.n(), got: y.len() });
    }
    let v = code.parity().mul_vec(y).expect("length checked");
    Ok(SyndromePoint::new(v))
}

/// Whether `p` lies in the span of the parity columns indexed by `subset`.
///
/// Panics if an index is out of range or `p` has the wrong length.
pub fn span_contains(code: &GoppaCode, subset: &[usize], p: &SyndromePoint) -> bool {
    columns_span_contains(code.parity(), subset, p.vector())
}

fn columns_span_contains(matrix: &Matrix, subset: &[usize], v: &[FieldElement]) -> bool {
    if subset.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let cols = matrix.column_submatrix(subset).expect("subset within column range");
    let aug = cols.with_column(v).expect("point length matches column length");
    cols.rank() == aug.rank()
}

/// Least `h ≤ bound` such that some `h` columns span `p`, with all witnesses
/// of that size.
pub fn secant_height(code: &GoppaCode, p: &SyndromePoint, bound: usize) -> StratumLabel {
    let d = code.d();
    if p.is_zero() {
        return StratumLabel::known(0, d, vec![Vec::new()]);
    }
    for h in 1..=bound.min(code.n()) {
        let witnesses: Vec<Vec<usize>> = (0..code.n())
            .combinations(h)
            .filter(|s| span_contains(code, s, p))
            .collect();
        if !witnesses.is_empty() {
            return StratumLabel::known(h, d, witnesses);
        }
    }
    StratumLabel::unknown()
}

/// `s = 2h - d`.
pub fn s_invariant(label: &StratumLabel, d: usize) -> Result<i64, GeomError> {
    label.h.map(|h| 2 * h as i64 - d as i64).ok_or(GeomError::HeightUnknown)
}

/// Stable for `s > 0`, semistable for `s = 0`, unstable for `s < 0`.
pub fn classify_stability(s: i64) -> Stability {
    match s.signum() {
        -1 => Stability::Unstable,
        0 => Stability::Semistable,
        _ => Stability::Stable,
    }
}

/// True when the minimal-height witness is unique.
pub fn uniqueness_check(label: &StratumLabel) -> Result<bool, GeomError> {
    match label.h {
        Some(_) => Ok(label.witnesses.len() == 1),
        None => Err(GeomError::HeightUnknown),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpannednessReport {
    pub subset_size: usize,
    pub subsets_checked: u64,
    /// First dependent subset in lexicographic order.
    pub first_failure: Option<Vec<usize>>,
}

impl SpannednessReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Checks that every `size` columns of `matrix` are linearly independent.
pub fn columns_independent(
    matrix: &Matrix,
    size: usize,
    budget: u64,
) -> Result<SpannednessReport, GeomError> {
    let required = binomial(matrix.cols(), size);
    if required > budget as u128 {
        return Err(GeomError::TooLargeToExhaust { required, budget });
    }
    let first_failure = (0..matrix.cols())
        .combinations(size)
        .find(|s| matrix.column_submatrix(s).expect("in range").rank() != size);
    Ok(SpannednessReport { subset_size: size, subsets_checked: required as u64, first_failure })
}

/// Every `d - 1` parity columns are independent, i.e. the embedded curve is
/// `(d-2)`-spanned.
pub fn spannedness_check(code: &GoppaCode, budget: u64) -> Result<SpannednessReport, GeomError> {
    columns_independent(code.parity(), code.d() - 1, budget)
}

/// Number of error vectors of length `n` and exact weight `w` over GF(q).
pub fn error_pattern_count(q: usize, n: usize, w: usize) -> u128 {
    binomial(n, w) * ((q - 1) as u128).pow(w as u32)
}

/// All error vectors of exact weight `w`: supports in lexicographic order,
/// then nonzero values in index order.
pub fn error_patterns(
    field: &Field,
    n: usize,
    w: usize,
) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    (0..n).combinations(w).flat_map(move |support| {
        let values = (0..w).map(|_| field.nonzero()).multi_cartesian_product();
        // multi_cartesian_product of zero iterators yields nothing; weight 0
        // still has the single zero vector.
        let values: Box<dyn Iterator<Item = Vec<FieldElement>>> =
            if w == 0 { Box::new(std::iter::once(Vec::new())) } else { Box::new(values) };
        values.map(move |vals| {
            let mut e = vec![field.zero(); n];
            for (&i, &v) in support.iter().zip(&vals) {
                e[i] = v;
            }
            e
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub max_weight: usize,
    pub errors_checked: u64,
    pub collisions: u64,
}

/// Distinct errors of weight at most `max_weight` have distinct syndromes.
pub fn t_ball_injectivity(
    code: &GoppaCode,
    max_weight: usize,
    budget: u64,
) -> Result<InjectivityReport, GeomError> {
    let (q, n) = (code.field().order(), code.n());
    let required: u128 = (0..=max_weight).map(|w| error_pattern_count(q, n, w)).sum();
    if required > budget as u128 {
        return Err(GeomError::TooLargeToExhaust { required, budget });
    }
    let mut seen = HashSet::new();
    let mut collisions = 0;
    for w in 0..=max_weight {
        for e in error_patterns(code.field(), n, w) {
            if !seen.insert(syndrome(code, &e)?) {
                collisions += 1;
            }
        }
    }
    Ok(InjectivityReport { max_weight, errors_checked: required as u64, collisions })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub syndrome_index: u64,
    pub h: Option<usize>,
    pub s: Option<i64>,
    pub stability: Option<Stability>,
    pub witness_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCount {
    /// Height over reduced divisors on `D`.
    pub h_d: Option<usize>,
    pub s: Option<i64>,
    pub stability: Option<Stability>,
    pub count: u64,
    /// Members with more than one minimal witness.
    pub multi_witness: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub q: usize,
    pub k_star: usize,
    pub d: usize,
    pub t: usize,
    pub total: u64,
    pub strata: Vec<StratumCount>,
    pub above_capacity: u64,
    pub fraction_above_capacity: f64,
    pub unstable: u64,
    pub semistable: u64,
    pub stable: u64,
    /// Nonzero vectors `v`, `c·v` with different heights. Always zero for a
    /// correct build.
    pub scalar_invariance_violations: u64,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub rows: Vec<CensusRow>,
    pub summary: CensusSummary,
}

impl Census {
    pub fn stratum_size(&self, h: usize) -> u64 {
        self.summary.strata.iter().find(|s| s.h_d == Some(h)).map_or(0, |s| s.count)
    }

    /// CSV with header `syndrome_index,h,s,stability,witness_count`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), GeomError> {
        let mut w = csv::Writer::from_writer(out);
        let err = |e: csv::Error| GeomError::Output(e.to_string());
        w.write_record(["syndrome_index", "h", "s", "stability", "witness_count"]).map_err(err)?;
        for r in &self.rows {
            w.write_record([
                r.syndrome_index.to_string(),
                r.h.map_or("unknown".into(), |h| h.to_string()),
                r.s.map_or("unknown".into(), |s| s.to_string()),
                r.stability.map_or("unknown".into(), |s| s.to_string()),
                r.witness_count.to_string(),
            ])
            .map_err(err)?;
        }
        w.flush().map_err(|e| GeomError::Output(e.to_string()))
    }
}

/// Heights, `s`-values and stability for every vector of `F_q^{k*}`.
pub fn stratify_all(code: &GoppaCode, budget: u64) -> Result<Census, GeomError> {
    let f = code.field();
    let q = f.order();
    let k_star = code.k_star();
    let total = (q as u128).checked_pow(k_star as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(GeomError::TooLargeToExhaust { required: total, budget });
    }
    let total = total as u64;
    let n = code.n();

    // par_iter over an indexed range keeps output order deterministic
    let rows: Vec<CensusRow> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let p = SyndromePoint::from_index(f, k_star, idx);
            let label = secant_height(code, &p, n);
            CensusRow {
                syndrome_index: idx,
                h: label.h,
                s: label.s,
                stability: label.stability,
                witness_count: label.witnesses.len(),
            }
        })
        .collect();

    let scalar_invariance_violations = (1..total)
        .into_par_iter()
        .map(|idx| {
            let p = SyndromePoint::from_index(f, k_star, idx);
            f.nonzero()
                .skip(1)
                .filter(|&c| rows[p.scaled(f, c).index(q) as usize].h != rows[idx as usize].h)
                .count() as u64
        })
        .sum();

    let mut strata: HashMap<Option<usize>, StratumCount> = HashMap::new();
    for r in &rows {
        let entry = strata.entry(r.h).or_insert(StratumCount {
            h_d: r.h,
            s: r.s,
            stability: r.stability,
            count: 0,
            multi_witness: 0,
        });
        entry.count += 1;
        if r.witness_count > 1 {
            entry.multi_witness += 1;
        }
    }
    let mut strata: Vec<StratumCount> = strata.into_values().collect();
    strata.sort_by_key(|s| s.h_d.map_or(usize::MAX, |h| h));

    let t = code.t();
    let above_capacity = rows.iter().filter(|r| r.h.is_none_or(|h| h > t)).count() as u64;
    let count_of = |s: Stability| rows.iter().filter(|r| r.stability == Some(s)).count() as u64;
    let summary = CensusSummary {
        q,
        k_star,
        d: code.d(),
        t,
        total,
        strata,
        above_capacity,
        fraction_above_capacity: above_capacity as f64 / total as f64,
        unstable: count_of(Stability::Unstable),
        semistable: count_of(Stability::Semistable),
        stable: count_of(Stability::Stable),
        scalar_invariance_violations,
    };
    Ok(Census { rows, summary })
}
