use goppa::agcode::{CodeConfig, GoppaCode};
use goppa::decoder::{decode_geometric, decode_toeplitz_g0, DecodeStatus};
use goppa::galois::FieldElement;
use goppa::secantgeom::{secant_height, syndrome, SyndromePoint};
use goppa::{Curve, Field, Matrix};
use itertools::Itertools;
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    vec![
        Field::prime(2).unwrap(),
        Field::prime(3).unwrap(),
        Field::prime(7).unwrap(),
        Field::with_default_modulus(2, 3).unwrap(),
        Field::with_default_modulus(3, 2).unwrap(),
    ]
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (0usize..fields().len(), 1usize..5, 1usize..6).prop_flat_map(|(fi, r, c)| {
        let f = fields().swap_remove(fi);
        let q = f.order() as u64;
        proptest::collection::vec(0..q, r * c).prop_map(move |idx| {
            let data = idx.iter().map(|&i| f.element(i).unwrap()).collect();
            Matrix::from_vec(&f, r, c, data).unwrap()
        })
    })
}

fn rs11() -> GoppaCode {
    GoppaCode::build(CodeConfig::all_points(Curve::rational(&Field::prime(11).unwrap()), 6)).unwrap()
}

fn brute_force_solutions(a: &Matrix, b: &[FieldElement]) -> usize {
    let f = a.field();
    (0..a.cols())
        .map(|_| f.enumerate())
        .multi_cartesian_product()
        .filter(|x| a.mul_vec(x).unwrap() == b)
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(fi in 0usize..5, a in 0u64..9, b in 0u64..9, c in 0u64..9) {
        let f = fields().swap_remove(fi);
        let q = f.order() as u64;
        let (a, b, c) = (f.element(a % q).unwrap(), f.element(b % q).unwrap(), f.element(c % q).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
        prop_assert_eq!(f.pow(a, q), a);
    }

    #[test]
    fn rank_and_kernel(m in small_matrix()) {
        let r = m.rank();
        prop_assert!(r <= m.rows().min(m.cols()));
        prop_assert_eq!(m.transpose().rank(), r);
        let (red, pivots) = m.rref();
        prop_assert_eq!(red.rank(), r);
        prop_assert_eq!(pivots.len(), r);
        let ker = m.kernel();
        prop_assert_eq!(ker.len(), m.cols() - r);
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
        if !ker.is_empty() {
            let basis = Matrix::from_rows(m.field(), m.cols(), &ker).unwrap();
            prop_assert_eq!(basis.rank(), ker.len());
        }
    }

    #[test]
    fn solve_agrees_with_enumeration(m in small_matrix(), seed in any::<u64>()) {
        prop_assume!(m.field().order().pow(m.cols() as u32) <= 4096);
        let f = m.field().clone();
        let q = f.order() as u64;
        let b: Vec<FieldElement> = (0..m.rows() as u64)
            .map(|i| f.element(seed.wrapping_mul(i + 1).wrapping_add(i) % q).unwrap())
            .collect();
        let count = brute_force_solutions(&m, &b);
        match m.solve(&b).unwrap() {
            Some(x) => {
                prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
                prop_assert!(count > 0);
            }
            None => prop_assert_eq!(count, 0),
        }
    }

    #[test]
    fn syndrome_is_linear(
        a in proptest::collection::vec(0u64..11, 11),
        b in proptest::collection::vec(0u64..11, 11),
        c in 1u64..11,
    ) {
        let code = rs11();
        let f = code.field().clone();
        let a: Vec<_> = a.iter().map(|&i| f.element(i).unwrap()).collect();
        let b: Vec<_> = b.iter().map(|&i| f.element(i).unwrap()).collect();
        let c = f.element(c).unwrap();
        let combo: Vec<_> = a.iter().zip(&b).map(|(&x, &y)| f.add(f.mul(c, x), y)).collect();
        let sa = syndrome(&code, &a).unwrap();
        let sb = syndrome(&code, &b).unwrap();
        let expected: Vec<_> = sa.vector().iter().zip(sb.vector())
            .map(|(&x, &y)| f.add(f.mul(c, x), y)).collect();
        prop_assert_eq!(syndrome(&code, &combo).unwrap(), SyndromePoint::new(expected));
    }

    #[test]
    fn decoding_round_trip(
        msg in proptest::collection::vec(0u64..11, 7),
        support in proptest::sample::subsequence((0..11usize).collect::<Vec<_>>(), 0..=2),
        values in proptest::collection::vec(1u64..11, 2),
    ) {
        let code = rs11();
        let f = code.field().clone();
        let msg: Vec<_> = msg.iter().map(|&i| f.element(i).unwrap()).collect();
        let x = code.encode(&msg).unwrap();
        prop_assert!(code.is_codeword(&x).unwrap());
        let mut y = x.clone();
        for (&i, &v) in support.iter().zip(&values) {
            y[i] = f.add(y[i], f.element(v).unwrap());
        }
        for r in [decode_geometric(&code, &y).unwrap(), decode_toeplitz_g0(&code, &y).unwrap()] {
            prop_assert_eq!(r.status, DecodeStatus::Corrected);
            prop_assert_eq!(&r.support, &support);
            prop_assert_eq!(r.codeword.as_ref(), Some(&x));
        }
    }

    #[test]
    fn height_bounded_by_support(
        e in proptest::collection::vec(0u64..7, 7),
        c in 1u64..7,
    ) {
        let code = GoppaCode::build(CodeConfig::all_points(Curve::rational(&Field::prime(7).unwrap()), 2)).unwrap();
        let f = code.field().clone();
        let e: Vec<_> = e.iter().map(|&i| f.element(i).unwrap()).collect();
        let wt = e.iter().filter(|x| !x.is_zero()).count();
        let p = syndrome(&code, &e).unwrap();
        let label = secant_height(&code, &p, code.n());
        let h = label.h.unwrap();
        prop_assert!(h <= wt);
        let scaled = secant_height(&code, &p.scaled(&f, f.element(c).unwrap()), code.n());
        prop_assert_eq!(scaled.h, Some(h));
        prop_assert_eq!(scaled.witnesses, label.witnesses);
    }
}
