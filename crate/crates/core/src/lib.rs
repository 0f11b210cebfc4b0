//! One-point algebraic-geometric (Goppa) codes and the geometry of their
//! syndromes.
//!
//! The crate builds codes `C(D, m·P∞)` on the projective line and on
//! Hermitian curves, reads the columns of the parity-check matrix as points
//! of the embedded curve, and classifies every syndrome by its secant height
//! `h` (the fewest curve points whose span contains it). The height fixes the
//! `s`-invariant `s = 2h - d` of the associated rank-two extension, and with
//! it the stability class. Syndromes of correctable errors always have
//! `h ≤ t` and so are unstable; the geometric decoder locates errors by
//! finding that minimal span.
//!
//! Module map:
//!
//! * [`galois`]: finite fields GF(p^e)
//! * [`linalg`]: dense exact linear algebra
//! * [`curves`]: curve families, rational points, Riemann-Roch bases
//! * [`agcode`]: code construction, parity multipliers, minimum distance
//! * [`secantgeom`]: syndromes, secant heights, stability, strata census
//! * [`decoder`]: geometric decoder and the genus-0 Toeplitz decoder
//! * [`harness`]: config files, channel model, experiments, CLI

pub mod agcode;
pub mod curves;
pub mod decoder;
pub mod galois;
pub mod harness;
pub mod linalg;
pub mod secantgeom;

pub use agcode::{CodeConfig, CodeError, CodeParams, GoppaCode};
pub use curves::{Curve, CurveFamily, Divisor, Monomial, Point};
pub use decoder::{decode_geometric, decode_toeplitz_g0, DecodeResult, DecodeStatus};
pub use galois::{Field, FieldElement};
pub use linalg::Matrix;
pub use secantgeom::{secant_height, syndrome, Stability, StratumLabel, SyndromePoint};
