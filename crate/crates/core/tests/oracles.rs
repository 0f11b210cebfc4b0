//! Cross-checks against oracles that do not share code paths with the
//! library: hand-written field arithmetic, Lagrange residues, and span
//! enumeration by explicit linear combinations instead of rank tests.

use std::collections::HashMap;

use goppa::agcode::{dual_multipliers, CodeConfig, GoppaCode};
use goppa::curves::Monomial;
use goppa::galois::FieldElement;
use goppa::secantgeom::{
    secant_height, stratify_all, uniqueness_check, SyndromePoint, DEFAULT_STRATA_BUDGET,
};
use goppa::{Curve, Field, Point};
use itertools::Itertools;

/// GF(4) = GF(2)[w]/(w²+w+1), elements as 2-bit integers `c0 + 2·c1`.
fn gf4_mul(a: u32, b: u32) -> u32 {
    let mut r = 0;
    for i in 0..2 {
        if (b >> i) & 1 == 1 {
            r ^= a << i;
        }
    }
    if r & 4 != 0 {
        r ^= 0b111;
    }
    r
}

fn gf4_pow(a: u32, e: u32) -> u32 {
    (0..e).fold(1, |acc, _| gf4_mul(acc, a))
}

/// GF(9) = GF(3)[i]/(i²+1), elements as `c0 + 3·c1`.
fn gf9_mul(a: u32, b: u32) -> u32 {
    let (a0, a1, b0, b1) = (a % 3, a / 3, b % 3, b / 3);
    let re = (a0 * b0 + 2 * a1 * b1) % 3;
    let im = (a0 * b1 + a1 * b0) % 3;
    re + 3 * im
}

fn gf9_add(a: u32, b: u32) -> u32 {
    (a % 3 + b % 3) % 3 + 3 * ((a / 3 + b / 3) % 3)
}

fn gf9_pow(a: u32, e: u32) -> u32 {
    (0..e).fold(1, |acc, _| gf9_mul(acc, a))
}

fn gf4() -> Field {
    Field::new(2, 2, &[1, 1, 1]).unwrap()
}

#[test]
fn hermitian_points_match_hand_arithmetic() {
    let mut oracle = Vec::new();
    for x in 0..4 {
        for y in 0..4 {
            if gf4_mul(y, y) ^ y == gf4_pow(x, 3) {
                oracle.push((x, y));
            }
        }
    }
    assert_eq!(oracle.len(), 8);
    let curve = Curve::hermitian(&gf4()).unwrap();
    let pts: Vec<(u32, u32)> = curve
        .rational_points()
        .iter()
        .map(|p| match p {
            Point::Affine { x, y } => (x.index(), y.index()),
            Point::Infinity => unreachable!(),
        })
        .collect();
    assert_eq!(pts, oracle);

    let mut count9 = 0;
    for x in 0..9 {
        for y in 0..9 {
            if gf9_add(gf9_pow(y, 3), y) == gf9_pow(x, 4) {
                count9 += 1;
            }
        }
    }
    assert_eq!(count9, 27);
    let f9 = Field::new(3, 2, &[1, 0, 1]).unwrap();
    assert_eq!(Curve::hermitian(&f9).unwrap().rational_points().len(), count9);
}

fn inv_mod(a: i64, p: i64) -> i64 {
    let mut r = 1;
    for _ in 0..p - 2 {
        r = r * a % p;
    }
    r
}

/// `v_i = 1 / Π_{j≠i}(x_i - x_j)`, rescaled so that `v_0 = 1`.
fn lagrange_multipliers(xs: &[i64], p: i64) -> Vec<i64> {
    let raw: Vec<i64> = xs
        .iter()
        .map(|&xi| {
            let prod = xs
                .iter()
                .filter(|&&xj| xj != xi)
                .fold(1, |acc, &xj| acc * (xi - xj).rem_euclid(p) % p);
            inv_mod(prod, p)
        })
        .collect();
    let scale = inv_mod(raw[0], p);
    raw.iter().map(|v| v * scale % p).collect()
}

#[test]
fn rational_multipliers_are_lagrange_residues() {
    for (p, xs, m) in [
        (7i64, (0..7).collect::<Vec<i64>>(), 3u32),
        (11, (0..11).collect(), 6),
        (13, (1..=10).collect(), 4),
        (13, vec![0, 2, 3, 7, 11, 12], 2),
    ] {
        let f = Field::prime(p as u32).unwrap();
        let points = xs.iter().map(|&x| Point::affine(f.from_int(x), f.zero())).collect();
        let cfg = CodeConfig::new(Curve::rational(&f), points, m);
        let v: Vec<i64> = dual_multipliers(&cfg).unwrap().iter().map(|x| x.index() as i64).collect();
        assert_eq!(v, lagrange_multipliers(&xs, p), "p={p} xs={xs:?}");
    }
}

#[test]
fn hermitian_all_ones_satisfies_bilinear_constraints() {
    // evaluate every product f·h with f, h in {1, x, y, x²} directly
    let pts: Vec<(u32, u32)> = (0..4)
        .flat_map(|x| (0..4).map(move |y| (x, y)))
        .filter(|&(x, y)| gf4_mul(y, y) ^ y == gf4_pow(x, 3))
        .collect();
    let basis = [(0, 0), (1, 0), (0, 1), (2, 0)];
    for &(a1, b1) in &basis {
        for &(a2, b2) in &basis {
            let total = pts.iter().fold(0, |acc, &(x, y)| {
                acc ^ gf4_mul(gf4_pow(x, a1 + a2), gf4_pow(y, b1 + b2))
            });
            assert_eq!(total, 0, "x^{}y^{}", a1 + a2, b1 + b2);
        }
    }
    let code = GoppaCode::build(CodeConfig::all_points(Curve::hermitian(&gf4()).unwrap(), 4)).unwrap();
    assert!(code.multipliers().iter().all(|&v| v == FieldElement::ONE));
}

#[test]
fn minimum_distances_by_direct_evaluation() {
    // GF(7), polynomials of degree <= 3 evaluated at all of GF(7)
    let mut best = usize::MAX;
    for coeffs in (0..4).map(|_| 0..7i64).multi_cartesian_product() {
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let w = (0..7i64)
            .filter(|&x| coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % 7) != 0)
            .count();
        best = best.min(w);
    }
    assert_eq!(best, 4);
    let rs = GoppaCode::build(CodeConfig::all_points(Curve::rational(&Field::prime(7).unwrap()), 3)).unwrap();
    assert_eq!(rs.true_min_distance(10_000_000).unwrap(), best);

    // Hermitian over GF(4), L(4P∞) = <1, x, y, x²>
    let pts: Vec<(u32, u32)> = (0..4)
        .flat_map(|x| (0..4).map(move |y| (x, y)))
        .filter(|&(x, y)| gf4_mul(y, y) ^ y == gf4_pow(x, 3))
        .collect();
    let basis = [(0, 0), (1, 0), (0, 1), (2, 0)];
    let mut best = usize::MAX;
    for coeffs in (0..4).map(|_| 0..4u32).multi_cartesian_product() {
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let w = pts
            .iter()
            .filter(|&&(x, y)| {
                basis
                    .iter()
                    .zip(&coeffs)
                    .fold(0, |acc, (&(a, b), &c)| acc ^ gf4_mul(c, gf4_mul(gf4_pow(x, a), gf4_pow(y, b))))
                    != 0
            })
            .count();
        best = best.min(w);
    }
    assert_eq!(best, 4);
    let h = GoppaCode::build(CodeConfig::all_points(Curve::hermitian(&gf4()).unwrap(), 4)).unwrap();
    assert_eq!(h.true_min_distance(10_000_000).unwrap(), best);
    assert_eq!(
        h.primal_basis(),
        &basis.map(|(a, b)| Monomial { x_exp: a, y_exp: b })[..]
    );
}

/// Height of every vector by enumerating `Σ c_i·col_i` over subsets and
/// nonzero coefficients, smallest subsets first.
fn heights_by_combination(code: &GoppaCode) -> HashMap<Vec<FieldElement>, usize> {
    let f = code.field();
    let parity = code.parity();
    let mut heights = HashMap::new();
    heights.insert(vec![f.zero(); code.k_star()], 0);
    for h in 1..=code.n() {
        for subset in (0..code.n()).combinations(h) {
            for coeffs in (0..h).map(|_| f.nonzero()).multi_cartesian_product() {
                let mut v = vec![f.zero(); code.k_star()];
                for (&i, &c) in subset.iter().zip(&coeffs) {
                    for (r, slot) in v.iter_mut().enumerate() {
                        *slot = f.add(*slot, f.mul(c, parity.get(r, i)));
                    }
                }
                heights.entry(v).or_insert(h);
            }
        }
        if heights.len() == f.order().pow(code.k_star() as u32) {
            break;
        }
    }
    heights
}

fn census_matches_oracle(code: &GoppaCode, frozen: &[(usize, u64)]) {
    let oracle = heights_by_combination(code);
    let census = stratify_all(code, DEFAULT_STRATA_BUDGET).unwrap();
    for row in &census.rows {
        let p = SyndromePoint::from_index(code.field(), code.k_star(), row.syndrome_index);
        assert_eq!(row.h, oracle.get(p.vector()).copied(), "syndrome {}", row.syndrome_index);
    }
    let sizes: Vec<(usize, u64)> =
        census.summary.strata.iter().map(|s| (s.h_d.unwrap(), s.count)).collect();
    assert_eq!(sizes, frozen);
    assert_eq!(census.summary.scalar_invariance_violations, 0);
}

#[test]
fn census_rs7_m3() {
    let code = GoppaCode::build(CodeConfig::all_points(Curve::rational(&Field::prime(7).unwrap()), 3)).unwrap();
    census_matches_oracle(&code, &[(0, 1), (1, 42), (2, 294), (3, 6)]);
}

#[test]
fn census_rs7_m2() {
    let code = GoppaCode::build(CodeConfig::all_points(Curve::rational(&Field::prime(7).unwrap()), 2)).unwrap();
    census_matches_oracle(&code, &[(0, 1), (1, 42), (2, 756), (3, 1596), (4, 6)]);
}

#[test]
fn census_hermitian_gf4() {
    let code = GoppaCode::build(CodeConfig::all_points(Curve::hermitian(&gf4()).unwrap(), 4)).unwrap();
    census_matches_oracle(&code, &[(0, 1), (1, 24), (2, 207), (3, 24)]);
}

#[test]
fn witnesses_above_capacity_need_not_be_unique() {
    let code = GoppaCode::build(CodeConfig::all_points(Curve::rational(&Field::prime(7).unwrap()), 3)).unwrap();
    let f = code.field().clone();
    let mut e = vec![f.zero(); 7];
    e[1] = f.one();
    e[4] = f.one();
    let p = SyndromePoint::new(code.parity().mul_vec(&e).unwrap());
    let label = secant_height(&code, &p, 7);
    assert_eq!(label.h, Some(2));
    assert!(label.witnesses.len() > 1);
    assert!(label.witnesses.contains(&vec![1, 4]));
    assert!(!uniqueness_check(&label).unwrap());
}
