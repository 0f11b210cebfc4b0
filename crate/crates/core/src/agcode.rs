//! One-point Goppa codes `C(D, m·P∞)`.
//!
//! The generator matrix evaluates the basis of `L(m·P∞)` at the points of
//! `D`. The parity-check matrix evaluates the basis of `L(m*·P∞)`, with
//! `m* = n + 2g - 2 - m`, and scales column `i` by a nonzero multiplier
//! `v_i`. The multipliers are found as a kernel vector of the bilinear
//! constraints `Σ_i f(P_i)·h(P_i)·v_i = 0`, so every column of the parity
//! matrix is the image of `P_i` under the embedding by `L(m*·P∞)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{Curve, CurveError, CurveFamily, Monomial, Point};
use crate::galois::{Field, FieldDescriptor, FieldElement};
use crate::linalg::{LinalgError, Matrix, MatrixRecord};

/// Default cap on the number of codewords `true_min_distance` will visit.
pub const DEFAULT_CODEWORD_BUDGET: u64 = 10_000_000;

/// Largest kernel (as `q^dim`) searched for an all-nonzero multiplier vector.
const MULTIPLIER_SEARCH_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("not a strongly algebraic-geometric code: need 2g-2 < m < n, got g={genus}, m={m}, n={n}")]
    NotSag { genus: u32, m: u32, n: usize },
    #[error("point {0} appears more than once in D")]
    DuplicatePoints(Point),
    #[error("D must consist of affine points")]
    PointAtInfinity,
    #[error("no all-nonzero column multipliers exist (kernel dimension {kernel_dim})")]
    MultiplierNotFound { kernel_dim: usize },
    #[error("expected length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("exhaustion needs {required} steps, budget is {budget}")]
    TooLargeToExhaust { required: u128, budget: u64 },
    #[error("code invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Curve, evaluation points `D` and the degree `m` of `G = m·P∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeConfig {
    pub curve: Curve,
    pub points: Vec<Point>,
    pub m: u32,
}

impl CodeConfig {
    pub fn new(curve: Curve, points: Vec<Point>, m: u32) -> CodeConfig {
        CodeConfig { curve, points, m }
    }

    /// `D` = every affine rational point of the curve.
    pub fn all_points(curve: Curve, m: u32) -> CodeConfig {
        let points = curve.rational_points();
        CodeConfig { curve, points, m }
    }

    pub fn field(&self) -> &Field {
        self.curve.field()
    }

    /// Degree of `G* = K + D - G`, placed at infinity.
    pub fn dual_degree(&self) -> i64 {
        self.points.len() as i64 + 2 * self.curve.genus() as i64 - 2 - self.m as i64
    }

    fn validate(&self) -> Result<(), CodeError> {
        let n = self.points.len();
        let g = self.curve.genus() as i64;
        let m = self.m as i64;
        if !(2 * g - 2 < m && m < n as i64) {
            return Err(CodeError::NotSag { genus: self.curve.genus(), m: self.m, n });
        }
        let mut sorted = self.points.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(CodeError::DuplicatePoints(w[0]));
        }
        for p in &self.points {
            if *p == Point::Infinity {
                return Err(CodeError::PointAtInfinity);
            }
            if !self.curve.contains(p) {
                return Err(CurveError::PointNotOnCurve(*p).into());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub k_star: usize,
    pub m: u32,
    pub m_star: u32,
    pub genus: u32,
    /// Designed minimum distance `n - m`.
    pub d: usize,
    /// Designed correcting capacity `⌊(d-1)/2⌋`.
    pub t: usize,
    pub q: usize,
}

#[derive(Clone, Debug)]
pub struct GoppaCode {
    config: CodeConfig,
    params: CodeParams,
    primal_basis: Vec<Monomial>,
    dual_basis: Vec<Monomial>,
    generator: Matrix,
    parity: Matrix,
    multipliers: Vec<FieldElement>,
}

/// Rows `f(P_1) .. f(P_n)` for each basis function `f`.
pub fn evaluation_matrix(
    curve: &Curve,
    basis: &[Monomial],
    points: &[Point],
) -> Result<Matrix, CodeError> {
    let rows = basis
        .iter()
        .map(|b| points.iter().map(|p| curve.evaluate(b, p)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(curve.field(), points.len(), &rows)?)
}

/// Column multipliers `v` with `Σ_i f(P_i)·h(P_i)·v_i = 0` for all `f` in
/// `L(m·P∞)` and `h` in `L(m*·P∞)`, every `v_i ≠ 0`, normalized to `v_0 = 1`.
pub fn dual_multipliers(config: &CodeConfig) -> Result<Vec<FieldElement>, CodeError> {
    config.validate()?;
    let curve = &config.curve;
    let f = curve.field();
    let primal = evaluation_matrix(curve, &curve.rr_basis(config.m), &config.points)?;
    let dual =
        evaluation_matrix(curve, &curve.rr_basis(config.dual_degree() as u32), &config.points)?;
    let n = config.points.len();

    let mut constraints = Vec::with_capacity(primal.rows() * dual.rows());
    for a in 0..primal.rows() {
        for b in 0..dual.rows() {
            let row: Vec<FieldElement> =
                (0..n).map(|i| f.mul(primal.get(a, i), dual.get(b, i))).collect();
            constraints.push(row);
        }
    }
    let system = Matrix::from_rows(f, n, &constraints)?;
    let kernel = system.kernel();
    let v = all_nonzero_combination(f, &kernel)
        .ok_or(CodeError::MultiplierNotFound { kernel_dim: kernel.len() })?;
    let scale = f.inv(v[0]).expect("entries are nonzero");
    Ok(v.into_iter().map(|x| f.mul(scale, x)).collect())
}

/// First linear combination of `basis` (coefficients in index order) with
/// no zero entry.
fn all_nonzero_combination(f: &Field, basis: &[Vec<FieldElement>]) -> Option<Vec<FieldElement>> {
    if basis.is_empty() {
        return None;
    }
    if let Some(v) = basis.iter().find(|v| v.iter().all(|x| !x.is_zero())) {
        return Some(v.clone());
    }
    let q = f.order() as u64;
    let total = q.checked_pow(basis.len() as u32).filter(|&t| t <= MULTIPLIER_SEARCH_LIMIT)?;
    let n = basis[0].len();
    (1..total).find_map(|mut idx| {
        let mut v = vec![f.zero(); n];
        for b in basis {
            let c = f.element(idx % q).ok()?;
            idx /= q;
            for (vi, &bi) in v.iter_mut().zip(b) {
                *vi = f.add(*vi, f.mul(c, bi));
            }
        }
        v.iter().all(|x| !x.is_zero()).then_some(v)
    })
}

impl GoppaCode {
    pub fn build(config: CodeConfig) -> Result<GoppaCode, CodeError> {
        config.validate()?;
        let curve = &config.curve;
        let f = curve.field().clone();
        let n = config.points.len();
        let g = curve.genus();
        let m = config.m;
        let m_star = config.dual_degree() as u32;
        let k = (m + 1 - g) as usize;
        let k_star = n - k;
        let d = n - m as usize;

        let primal_basis = curve.rr_basis(m);
        let dual_basis = curve.rr_basis(m_star);
        if primal_basis.len() != k || dual_basis.len() != k_star {
            return Err(CodeError::InvariantViolation(format!(
                "basis sizes {} and {} do not match k={k}, k*={k_star}",
                primal_basis.len(),
                dual_basis.len()
            )));
        }
        let generator = evaluation_matrix(curve, &primal_basis, &config.points)?;
        let multipliers = dual_multipliers(&config)?;
        let mut parity = evaluation_matrix(curve, &dual_basis, &config.points)?;
        for j in 0..parity.rows() {
            for (i, &v) in multipliers.iter().enumerate() {
                parity.set(j, i, f.mul(parity.get(j, i), v));
            }
        }

        if generator.rank() != k {
            return Err(CodeError::InvariantViolation(format!("generator rank is not {k}")));
        }
        if parity.rank() != k_star {
            return Err(CodeError::InvariantViolation(format!("parity rank is not {k_star}")));
        }
        if !generator.mul(&parity.transpose())?.is_zero() {
            return Err(CodeError::InvariantViolation("generator·parityᵀ ≠ 0".into()));
        }

        let params = CodeParams {
            n,
            k,
            k_star,
            m,
            m_star,
            genus: g,
            d,
            t: (d - 1) / 2,
            q: f.order(),
        };
        Ok(GoppaCode { config, params, primal_basis, dual_basis, generator, parity, multipliers })
    }

    pub fn config(&self) -> &CodeConfig {
        &self.config
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn field(&self) -> &Field {
        self.config.curve.field()
    }

    pub fn curve(&self) -> &Curve {
        &self.config.curve
    }

    pub fn points(&self) -> &[Point] {
        &self.config.points
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn k_star(&self) -> usize {
        self.params.k_star
    }

    pub fn d(&self) -> usize {
        self.params.d
    }

    pub fn t(&self) -> usize {
        self.params.t
    }

    pub fn primal_basis(&self) -> &[Monomial] {
        &self.primal_basis
    }

    pub fn dual_basis(&self) -> &[Monomial] {
        &self.dual_basis
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity(&self) -> &Matrix {
        &self.parity
    }

    pub fn multipliers(&self) -> &[FieldElement] {
        &self.multipliers
    }

    /// `messageᵀ · generator`.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>, CodeError> {
        if message.len() != self.k() {
            return Err(CodeError::LengthMismatch { expected: self.k(), got: message.len() });
        }
        Ok(self.generator.vec_mul(message)?)
    }

    pub fn is_codeword(&self, word: &[FieldElement]) -> Result<bool, CodeError> {
        if word.len() != self.n() {
            return Err(CodeError::LengthMismatch { expected: self.n(), got: word.len() });
        }
        Ok(self.parity.mul_vec(word)?.iter().all(|x| x.is_zero()))
    }

    /// Message with the given index, digits base q, first coordinate least
    /// significant.
    pub fn message_from_index(&self, mut index: u128) -> Vec<FieldElement> {
        let q = self.params.q as u128;
        (0..self.k())
            .map(|_| {
                let d = (index % q) as u32;
                index /= q;
                self.field().element(d as u64).expect("digit below q")
            })
            .collect()
    }

    /// Exact minimum weight over all nonzero codewords, by exhaustion.
    pub fn true_min_distance(&self, budget: u64) -> Result<usize, CodeError> {
        let total = (self.params.q as u128).checked_pow(self.k() as u32).unwrap_or(u128::MAX);
        if total > budget as u128 {
            return Err(CodeError::TooLargeToExhaust { required: total, budget });
        }
        let min = (1..total as u64)
            .into_par_iter()
            .map(|idx| {
                let msg = self.message_from_index(idx as u128);
                let cw = self.generator.vec_mul(&msg).expect("message length k");
                cw.iter().filter(|x| !x.is_zero()).count()
            })
            .min()
            .unwrap_or(self.n());
        Ok(min)
    }

    pub fn export(&self) -> CodeExport {
        CodeExport {
            field: self.field().descriptor(),
            family: self.curve().family(),
            q0: self.curve().q0(),
            points: self.points().iter().filter_map(point_indices).collect(),
            params: self.params,
            primal_basis: self.primal_basis.clone(),
            dual_basis: self.dual_basis.clone(),
            generator: self.generator.to_record(),
            parity: self.parity.to_record(),
            multipliers: self.multipliers.iter().map(|x| x.index()).collect(),
        }
    }
}

fn point_indices(p: &Point) -> Option<[u32; 2]> {
    match p {
        Point::Affine { x, y } => Some([x.index(), y.index()]),
        Point::Infinity => None,
    }
}

/// Serialized form of a built code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeExport {
    pub field: FieldDescriptor,
    pub family: CurveFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q0: Option<u32>,
    pub points: Vec<[u32; 2]>,
    pub params: CodeParams,
    pub primal_basis: Vec<Monomial>,
    pub dual_basis: Vec<Monomial>,
    pub generator: MatrixRecord,
    pub parity: MatrixRecord,
    pub multipliers: Vec<u32>,
}
