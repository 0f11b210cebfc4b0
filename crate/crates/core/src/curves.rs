//! Curve families with explicit one-point Riemann-Roch bases.
//!
//! Two families are supported:
//!
//! * the projective line (genus 0), affine coordinate `x`;
//! * the Hermitian curve `y^q0 + y = x^(q0+1)` over GF(q0²), genus
//!   `q0(q0-1)/2`, with `q0³` affine rational points.
//!
//! Both have a single point at infinity `P∞`, and `L(m·P∞)` has a monomial
//! basis: `x^a` with pole order `a` on the line, `x^a·y^b` (`b < q0`) with
//! pole order `a·q0 + b·(q0+1)` on the Hermitian curve.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{Field, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("cannot evaluate a function at the point at infinity")]
    EvalAtInfinity,
    #[error("the Hermitian curve needs a field of square order, got GF({p}^{e})")]
    NotSquareField { p: u32, e: u32 },
    #[error("point {0} does not lie on the curve")]
    PointNotOnCurve(Point),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveFamily {
    Rational,
    Hermitian,
}

impl fmt::Display for CurveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveFamily::Rational => f.write_str("rational"),
            CurveFamily::Hermitian => f.write_str("hermitian"),
        }
    }
}

/// A rational point. On the projective line `y` is unused and stored as 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Point {
    Affine { x: FieldElement, y: FieldElement },
    Infinity,
}

impl Point {
    pub fn affine(x: FieldElement, y: FieldElement) -> Point {
        Point::Affine { x, y }
    }

    pub fn x(&self) -> Option<FieldElement> {
        match self {
            Point::Affine { x, .. } => Some(*x),
            Point::Infinity => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
            Point::Infinity => f.write_str("∞"),
        }
    }
}

/// Formal integer combination of points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    support: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn point(p: Point, mult: i64) -> Divisor {
        let mut d = Divisor::zero();
        d.add_point(p, mult);
        d
    }

    /// Sum of the given points, each with multiplicity one.
    pub fn reduced<I: IntoIterator<Item = Point>>(points: I) -> Divisor {
        let mut d = Divisor::zero();
        for p in points {
            d.add_point(p, 1);
        }
        d
    }

    pub fn add_point(&mut self, p: Point, mult: i64) {
        let entry = self.support.entry(p).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.support.remove(&p);
        }
    }

    pub fn plus(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (&p, &m) in &other.support {
            d.add_point(p, m);
        }
        d
    }

    pub fn minus(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (&p, &m) in &other.support {
            d.add_point(p, -m);
        }
        d
    }

    pub fn degree(&self) -> i64 {
        self.support.values().sum()
    }

    pub fn multiplicity(&self, p: &Point) -> i64 {
        self.support.get(p).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (&Point, &i64)> {
        self.support.iter()
    }

    pub fn is_effective(&self) -> bool {
        self.support.values().all(|&m| m >= 0)
    }

    pub fn disjoint_from(&self, other: &Divisor) -> bool {
        self.support.keys().all(|p| !other.support.contains_key(p))
    }
}

/// The monomial `x^x_exp · y^y_exp`, an element of some `L(m·P∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub x_exp: u32,
    pub y_exp: u32,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x_exp, self.y_exp) {
            (0, 0) => f.write_str("1"),
            (a, 0) => write!(f, "x^{a}"),
            (0, b) => write!(f, "y^{b}"),
            (a, b) => write!(f, "x^{a}y^{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    family: CurveFamily,
    field: Field,
    /// Square root of the field order for the Hermitian curve, 1 otherwise.
    q0: u32,
}

impl Curve {
    pub fn rational(field: &Field) -> Curve {
        Curve { family: CurveFamily::Rational, field: field.clone(), q0: 1 }
    }

    /// `y^q0 + y = x^(q0+1)` over GF(q0²).
    pub fn hermitian(field: &Field) -> Result<Curve, CurveError> {
        let (p, e) = (field.characteristic(), field.degree());
        if e % 2 != 0 {
            return Err(CurveError::NotSquareField { p, e });
        }
        Ok(Curve { family: CurveFamily::Hermitian, field: field.clone(), q0: p.pow(e / 2) })
    }

    pub fn family(&self) -> CurveFamily {
        self.family
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q0(&self) -> Option<u32> {
        match self.family {
            CurveFamily::Rational => None,
            CurveFamily::Hermitian => Some(self.q0),
        }
    }

    pub fn genus(&self) -> u32 {
        match self.family {
            CurveFamily::Rational => 0,
            CurveFamily::Hermitian => self.q0 * (self.q0 - 1) / 2,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self.family, p) {
            (_, Point::Infinity) => true,
            (CurveFamily::Rational, Point::Affine { x, y }) => {
                (x.index() as usize) < self.field.order() && y.is_zero()
            }
            (CurveFamily::Hermitian, Point::Affine { x, y }) => {
                let f = &self.field;
                let lhs = f.add(f.pow(*y, self.q0 as u64), *y);
                lhs == f.pow(*x, self.q0 as u64 + 1)
            }
        }
    }

    /// All affine rational points, ordered by `x` then `y`.
    pub fn rational_points(&self) -> Vec<Point> {
        let f = &self.field;
        match self.family {
            CurveFamily::Rational => f.enumerate().map(|x| Point::affine(x, f.zero())).collect(),
            CurveFamily::Hermitian => f
                .enumerate()
                .flat_map(|x| f.enumerate().map(move |y| Point::affine(x, y)))
                .filter(|p| self.contains(p))
                .collect(),
        }
    }

    pub fn pole_order(&self, mono: &Monomial) -> u32 {
        match self.family {
            CurveFamily::Rational => mono.x_exp,
            CurveFamily::Hermitian => mono.x_exp * self.q0 + mono.y_exp * (self.q0 + 1),
        }
    }

    /// Monomial basis of `L(m·P∞)`, ordered by pole order then exponents.
    pub fn rr_basis(&self, m: u32) -> Vec<Monomial> {
        let mut basis: Vec<Monomial> = match self.family {
            CurveFamily::Rational => (0..=m).map(|a| Monomial { x_exp: a, y_exp: 0 }).collect(),
            CurveFamily::Hermitian => {
                let q0 = self.q0;
                (0..q0)
                    .filter(|b| b * (q0 + 1) <= m)
                    .flat_map(|b| {
                        let rest = m - b * (q0 + 1);
                        (0..=rest / q0).map(move |a| Monomial { x_exp: a, y_exp: b })
                    })
                    .collect()
            }
        };
        basis.sort_by_key(|mono| (self.pole_order(mono), *mono));
        basis
    }

    pub fn evaluate(&self, mono: &Monomial, p: &Point) -> Result<FieldElement, CurveError> {
        match p {
            Point::Infinity => Err(CurveError::EvalAtInfinity),
            Point::Affine { x, y } => {
                let f = &self.field;
                Ok(f.mul(f.pow(*x, mono.x_exp as u64), f.pow(*y, mono.y_exp as u64)))
            }
        }
    }

    /// The one-point divisor `m·P∞`.
    pub fn divisor_at_infinity(&self, m: i64) -> Divisor {
        Divisor::point(Point::Infinity, m)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            CurveFamily::Rational => write!(f, "projective line over GF({})", self.field.order()),
            CurveFamily::Hermitian => write!(
                f,
                "Hermitian curve y^{q} + y = x^{q1} over GF({})",
                self.field.order(),
                q = self.q0,
                q1 = self.q0 + 1
            ),
        }
    }
}
