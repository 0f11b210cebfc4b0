//! Syndrome decoders.
//!
//! [`decode_geometric`] locates errors by the minimal secant span containing
//! the syndrome, searched up to the designed capacity `t`. It works for any
//! curve but is a brute-force search over column subsets.
//!
//! [`decode_toeplitz_g0`] is the classical genus-0 procedure: assume `w = t`
//! errors, solve the structured linear system for the elementary symmetric
//! functions of the error locators, and step down to `w - 1` whenever the
//! assumption yields no consistent solution.
//!
//! Both decoders recover error values by the same linear solve against the
//! located parity columns.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agcode::GoppaCode;
use crate::curves::CurveFamily;
use crate::galois::FieldElement;
use crate::linalg::Matrix;
use crate::secantgeom::{secant_height, syndrome, SyndromePoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("designed capacity t is zero; nothing can be corrected")]
    CapacityZero,
    #[error("received word has length {got}, code length is {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("the Toeplitz decoder needs a genus-0 code, got the {0} family")]
    UnsupportedFamily(CurveFamily),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeStatus {
    Corrected,
    DetectedBeyondCapacity,
    Ambiguous,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    /// Error positions, ascending.
    pub support: Vec<usize>,
    pub values: Vec<FieldElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codeword: Option<Vec<FieldElement>>,
    pub height: Option<usize>,
}

impl DecodeResult {
    fn uncorrected(status: DecodeStatus, height: Option<usize>) -> DecodeResult {
        DecodeResult { status, support: Vec::new(), values: Vec::new(), codeword: None, height }
    }

    pub fn is_corrected(&self) -> bool {
        self.status == DecodeStatus::Corrected
    }

    /// The full error vector implied by `support` and `values`.
    pub fn error_vector(&self, n: usize) -> Vec<FieldElement> {
        let mut e = vec![FieldElement::ZERO; n];
        for (&i, &v) in self.support.iter().zip(&self.values) {
            e[i] = v;
        }
        e
    }
}

fn check_input(code: &GoppaCode, y: &[FieldElement]) -> Result<(), DecodeError> {
    if code.t() == 0 {
        return Err(DecodeError::CapacityZero);
    }
    if y.len() != code.n() {
        return Err(DecodeError::LengthMismatch { expected: code.n(), got: y.len() });
    }
    Ok(())
}

/// Solves `parity[:, support] · e = syndrome`. `None` if inconsistent.
pub fn recover_values(
    code: &GoppaCode,
    support: &[usize],
    syn: &SyndromePoint,
) -> Option<Vec<FieldElement>> {
    let cols = code.parity().column_submatrix(support).ok()?;
    cols.solve(syn.vector()).ok().flatten()
}

fn corrected(
    code: &GoppaCode,
    y: &[FieldElement],
    support: Vec<usize>,
    values: Vec<FieldElement>,
) -> DecodeResult {
    let f = code.field();
    let mut codeword = y.to_vec();
    for (&i, &v) in support.iter().zip(&values) {
        codeword[i] = f.sub(codeword[i], v);
    }
    let height = Some(support.len());
    DecodeResult { status: DecodeStatus::Corrected, support, values, codeword: Some(codeword), height }
}

/// Error location by the minimal secant span of the syndrome.
pub fn decode_geometric(code: &GoppaCode, y: &[FieldElement]) -> Result<DecodeResult, DecodeError> {
    check_input(code, y)?;
    let syn = syndrome(code, y).expect("length checked");
    let label = secant_height(code, &syn, code.t());
    let Some(h) = label.h else {
        return Ok(DecodeResult::uncorrected(DecodeStatus::DetectedBeyondCapacity, None));
    };
    if label.witnesses.len() > 1 {
        return Ok(DecodeResult::uncorrected(DecodeStatus::Ambiguous, Some(h)));
    }
    let support = label.witnesses.into_iter().next().expect("at least one witness");
    match recover_values(code, &support, &syn) {
        Some(values) if values.iter().all(|v| !v.is_zero()) => {
            Ok(corrected(code, y, support, values))
        }
        _ => Ok(DecodeResult::uncorrected(DecodeStatus::Fail, Some(h))),
    }
}

/// The `w × w` system for the locator `σ(z) = z^w + c_{w-1} z^{w-1} + … + c_0`
/// whose roots are the error locators, given power sums
/// `S_j = Σ ε_i x_i^j`:
///
/// `Σ_l S_{j+l} c_l = -S_{j+w}` for `j = 0..w`.
///
/// The coefficient matrix is constant along anti-diagonals and therefore
/// symmetric; reversing its column order gives the Toeplitz form.
fn locator_system(code: &GoppaCode, power_sums: &[FieldElement], w: usize) -> (Matrix, Vec<FieldElement>) {
    let f = code.field();
    let mut a = Matrix::zeros(f, w, w);
    for j in 0..w {
        for l in 0..w {
            a.set(j, l, power_sums[j + l]);
        }
    }
    let rhs = (0..w).map(|j| f.neg(power_sums[j + w])).collect();
    (a, rhs)
}

/// Genus-0 decoder descending from `w = t` errors.
///
/// With dual basis `1, x, …, x^{k*-1}` and multipliers `v_i`, the syndrome
/// entries are the power sums `S_j = Σ_i (e_i v_i) x_i^j`; the multipliers
/// are absorbed into the weights `e_i v_i` and removed again by the final
/// value solve against the parity columns.
pub fn decode_toeplitz_g0(code: &GoppaCode, y: &[FieldElement]) -> Result<DecodeResult, DecodeError> {
    if code.curve().family() != CurveFamily::Rational {
        return Err(DecodeError::UnsupportedFamily(code.curve().family()));
    }
    check_input(code, y)?;
    let f = code.field();
    let syn = syndrome(code, y).expect("length checked");
    if syn.is_zero() {
        return Ok(corrected(code, y, Vec::new(), Vec::new()));
    }
    let xs: Vec<FieldElement> =
        code.points().iter().map(|p| p.x().expect("code points are affine")).collect();
    let power_sums = syn.vector();

    for w in (1..=code.t()).rev() {
        let (a, rhs) = locator_system(code, power_sums, w);
        let Some(coeffs) = a.solve(&rhs).expect("square system") else {
            continue;
        };
        // σ(x) by Horner, leading coefficient 1
        let locator = |x: FieldElement| {
            coeffs.iter().rev().fold(f.one(), |acc, &c| f.add(f.mul(acc, x), c))
        };
        let support: Vec<usize> = (0..xs.len()).filter(|&i| locator(xs[i]).is_zero()).collect();
        if support.len() != w {
            continue;
        }
        let Some(values) = recover_values(code, &support, &syn) else {
            continue;
        };
        if values.iter().any(|v| v.is_zero()) {
            continue;
        }
        let mut e = vec![f.zero(); code.n()];
        for (&i, &v) in support.iter().zip(&values) {
            e[i] = v;
        }
        if syndrome(code, &e).expect("length n") != syn {
            continue;
        }
        return Ok(corrected(code, y, support, values));
    }
    Ok(DecodeResult::uncorrected(DecodeStatus::DetectedBeyondCapacity, None))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub case: usize,
    pub geometric: DecodeResult,
    pub toeplitz: DecodeResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidationReport {
    pub cases: usize,
    pub both_corrected: usize,
    pub both_uncorrected: usize,
    pub disagreements: Vec<Disagreement>,
}

impl CrossValidationReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

fn same_outcome(a: &DecodeResult, b: &DecodeResult) -> bool {
    a.status == b.status && a.support == b.support && a.values == b.values
}

/// Runs both decoders on every word and reports any difference in status,
/// support or values.
pub fn cross_validate(
    code: &GoppaCode,
    words: &[Vec<FieldElement>],
) -> Result<CrossValidationReport, DecodeError> {
    let outcomes: Vec<(DecodeResult, DecodeResult)> = words
        .par_iter()
        .map(|y| Ok((decode_geometric(code, y)?, decode_toeplitz_g0(code, y)?)))
        .collect::<Result<_, DecodeError>>()?;
    let mut report = CrossValidationReport {
        cases: words.len(),
        both_corrected: 0,
        both_uncorrected: 0,
        disagreements: Vec::new(),
    };
    for (case, (g, t)) in outcomes.into_iter().enumerate() {
        if !same_outcome(&g, &t) {
            report.disagreements.push(Disagreement { case, geometric: g, toeplitz: t });
        } else if g.is_corrected() {
            report.both_corrected += 1;
        } else {
            report.both_uncorrected += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agcode::CodeConfig;
    use crate::curves::Curve;
    use crate::galois::Field;

    fn rs(p: u32, m: u32) -> GoppaCode {
        GoppaCode::build(CodeConfig::all_points(Curve::rational(&Field::prime(p).unwrap()), m))
            .unwrap()
    }

    fn add(code: &GoppaCode, x: &[FieldElement], e: &[FieldElement]) -> Vec<FieldElement> {
        x.iter().zip(e).map(|(&a, &b)| code.field().add(a, b)).collect()
    }

    #[test]
    fn codeword_decodes_to_itself() {
        let c = rs(7, 3);
        let x = c.encode(&c.message_from_index(42)).unwrap();
        for r in [decode_geometric(&c, &x).unwrap(), decode_toeplitz_g0(&c, &x).unwrap()] {
            assert_eq!(r.status, DecodeStatus::Corrected);
            assert!(r.support.is_empty());
            assert_eq!(r.height, Some(0));
            assert_eq!(r.codeword.as_deref(), Some(&x[..]));
        }
    }

    #[test]
    fn single_error_gf7() {
        let c = rs(7, 3);
        let f = c.field().clone();
        let x = c.encode(&c.message_from_index(1000)).unwrap();
        let mut e = vec![f.zero(); 7];
        e[2] = f.from_int(3);
        let y = add(&c, &x, &e);
        let r = decode_geometric(&c, &y).unwrap();
        assert_eq!(r.status, DecodeStatus::Corrected);
        assert_eq!(r.support, vec![2]);
        assert_eq!(r.values, vec![f.from_int(3)]);
        assert_eq!(r.codeword, Some(x));
        assert_eq!(r.error_vector(7), e);
    }

    #[test]
    fn double_error_gf11() {
        let c = rs(11, 6);
        assert_eq!((c.d(), c.t()), (5, 2));
        let f = c.field().clone();
        let x = c.encode(&c.message_from_index(987_654)).unwrap();
        let mut e = vec![f.zero(); 11];
        e[2] = f.from_int(3);
        e[5] = f.from_int(7);
        let y = add(&c, &x, &e);
        let g = decode_geometric(&c, &y).unwrap();
        let t = decode_toeplitz_g0(&c, &y).unwrap();
        for r in [&g, &t] {
            assert_eq!(r.status, DecodeStatus::Corrected);
            assert_eq!(r.support, vec![2, 5]);
            assert_eq!(r.values, vec![f.from_int(3), f.from_int(7)]);
            assert_eq!(r.codeword.as_ref(), Some(&x));
        }
    }

    #[test]
    fn weight_two_on_gf7_is_detected() {
        let c = rs(7, 3);
        let f = c.field().clone();
        let mut e = vec![f.zero(); 7];
        e[0] = f.from_int(1);
        e[4] = f.from_int(5);
        for r in [decode_geometric(&c, &e).unwrap(), decode_toeplitz_g0(&c, &e).unwrap()] {
            assert_eq!(r.status, DecodeStatus::DetectedBeyondCapacity);
            assert!(r.codeword.is_none());
        }
    }

    #[test]
    fn input_errors() {
        let c = rs(7, 3);
        let f = c.field().clone();
        assert!(matches!(
            decode_geometric(&c, &[f.zero(); 6]),
            Err(DecodeError::LengthMismatch { expected: 7, got: 6 })
        ));
        let low = rs(7, 5);
        assert_eq!(decode_geometric(&low, &[f.zero(); 7]), Err(DecodeError::CapacityZero));
        assert_eq!(decode_toeplitz_g0(&low, &[f.zero(); 7]), Err(DecodeError::CapacityZero));

        let gf4 = Field::new(2, 2, &[1, 1, 1]).unwrap();
        let h = GoppaCode::build(CodeConfig::all_points(Curve::hermitian(&gf4).unwrap(), 4)).unwrap();
        assert_eq!(
            decode_toeplitz_g0(&h, &[gf4.zero(); 8]),
            Err(DecodeError::UnsupportedFamily(CurveFamily::Hermitian))
        );
    }

    #[test]
    fn locator_system_is_symmetric() {
        let c = rs(11, 6);
        let f = c.field().clone();
        let sums: Vec<_> = (1..=4).map(|i| f.from_int(i)).collect();
        let (a, _) = locator_system(&c, &sums, 2);
        assert_eq!(a, a.transpose());
    }
}
