mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rtp_core::poly::{poly_det_bareiss, poly_gcd, poly_is_reduced, SparsePolynomial};
use rtp_core::verify::cofactor_det;

const NVARS: usize = 3;

fn poly() -> impl Strategy<Value = SparsePolynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, NVARS), -6i64..=6), 0..5).prop_map(|terms| {
        SparsePolynomial::from_terms(NVARS, terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    })
}

fn nonconstant() -> impl Strategy<Value = SparsePolynomial> {
    poly().prop_filter("nonconstant", |p| !p.is_constant())
}

fn linear() -> impl Strategy<Value = SparsePolynomial> {
    prop::collection::vec(-3i64..=3, NVARS + 1).prop_map(|c| {
        let mut terms: Vec<(Vec<u32>, BigInt)> = (0..NVARS)
            .map(|i| {
                let mut e = vec![0; NVARS];
                e[i] = 1;
                (e, BigInt::from(c[i]))
            })
            .collect();
        terms.push((vec![0; NVARS], BigInt::from(c[NVARS])));
        SparsePolynomial::from_terms(NVARS, terms)
    })
}

fn square_matrix() -> impl Strategy<Value = Vec<Vec<SparsePolynomial>>> {
    (1usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(linear(), n), n))
}

#[test]
fn ring_axioms() {
    common::runner(256, 1)
        .run(&(poly(), poly(), poly()), |(a, b, c)| {
            let zero = SparsePolynomial::zero(NVARS);
            let one = SparsePolynomial::one(NVARS);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &zero, a.clone());
            prop_assert_eq!(&a * &one, a.clone());
            prop_assert!((&a + &(-&a)).is_zero());
            Ok(())
        })
        .unwrap();
}

#[test]
fn display_parse_round_trip() {
    common::runner(256, 2)
        .run(&poly(), |p| {
            let back = SparsePolynomial::parse_with_nvars(&p.to_string(), NVARS).unwrap();
            prop_assert_eq!(back, p);
            Ok(())
        })
        .unwrap();
}

#[test]
fn bareiss_matches_cofactor() {
    common::runner(96, 3)
        .run(&square_matrix(), |m| {
            prop_assert_eq!(poly_det_bareiss(&m, 12).unwrap(), cofactor_det(&m, NVARS));
            Ok(())
        })
        .unwrap();
}

#[test]
fn gcd_divides_and_is_maximal() {
    common::runner(128, 4)
        .run(&(poly(), poly(), nonconstant()), |(a, b, d)| {
            let (x, y) = (&a * &d, &b * &d);
            let g = poly_gcd(&x, &y);
            if !g.is_zero() {
                prop_assert!(x.div_exact(&g).is_ok());
                prop_assert!(y.div_exact(&g).is_ok());
                prop_assert!(g.div_exact(&d.primitive_part()).is_ok(), "common factor {} lost from {}", d, g);
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn squares_are_not_reduced() {
    common::runner(128, 5)
        .run(&(nonconstant(), poly()), |(d, e)| {
            let p = &(&d * &d) * &e;
            if !p.is_zero() {
                prop_assert_eq!(poly_is_reduced(&p), Ok(false));
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn distinct_linear_forms_are_reduced() {
    common::runner(64, 6)
        .run(&prop::sample::subsequence(vec![0usize, 1, 2], 1..=3), |vars| {
            let p = vars
                .iter()
                .fold(SparsePolynomial::one(NVARS), |acc, &i| &acc * &SparsePolynomial::var(NVARS, i));
            prop_assert_eq!(poly_is_reduced(&p), Ok(true));
            Ok(())
        })
        .unwrap();
}
