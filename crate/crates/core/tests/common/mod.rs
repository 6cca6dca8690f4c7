//! Proptest strategies shared by the property suites.
#![allow(dead_code)]

use proptest::prelude::*;

use unitri_core::{scalar, Polynomial, Scalar, TriangularAutomorphism, UniDerivation};

/// Small nonzero rational, denominators kept tiny so products stay readable.
pub fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (1i64..=4, 1i64..=3, any::<bool>())
        .prop_map(|(a, b, neg)| scalar(if neg { -a } else { a }, b))
}

/// Exponent vector over the first `support` variables, each exponent at
/// most `degree`.
pub fn arb_exponents(support: usize, degree: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=degree, support)
}

/// Sparse polynomial in the first `support` of `n` variables.
pub fn arb_poly(
    n: usize,
    support: usize,
    degree: u32,
    max_terms: usize,
) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((arb_exponents(support, degree), arb_scalar()), 0..=max_terms).prop_map(
        move |terms| {
            let mut acc = Polynomial::zero(n);
            for (alpha, c) in terms {
                let term = Polynomial::monomial(n, &alpha, c).unwrap();
                acc = acc.add(&term).unwrap();
            }
            acc
        },
    )
}

/// Derivation with slot `j` drawing from the first `j - 1` variables.
pub fn arb_derivation(
    n: usize,
    degree: u32,
    max_terms: usize,
) -> impl Strategy<Value = UniDerivation> {
    let slots: Vec<_> = (1..=n)
        .map(|j| arb_poly(n, j - 1, degree, max_terms).boxed())
        .collect();
    slots.prop_map(move |coeffs| UniDerivation::new(n, coeffs).unwrap())
}

/// Derivation whose first nonzero coefficient sits exactly in slot `i`.
pub fn arb_derivation_in_ideal(
    n: usize,
    i: usize,
    degree: u32,
    max_terms: usize,
) -> impl Strategy<Value = UniDerivation> {
    assert!((1..=n).contains(&i));
    let lead = (arb_poly(n, i - 1, degree, max_terms), arb_scalar()).prop_map(move |(p, c)| {
        if p.is_zero() {
            Polynomial::constant(n, c)
        } else {
            p
        }
    });
    let rest: Vec<_> = ((i + 1)..=n)
        .map(|j| arb_poly(n, j - 1, degree, max_terms).boxed())
        .collect();
    (lead, rest).prop_map(move |(lead, rest)| {
        let mut coeffs = vec![Polynomial::zero(n); n];
        coeffs[i - 1] = lead;
        for (offset, p) in rest.into_iter().enumerate() {
            coeffs[i + offset] = p;
        }
        UniDerivation::new(n, coeffs).unwrap()
    })
}

/// Scaled triangular automorphism with constant-free tails.
pub fn arb_automorphism(
    n: usize,
    tail_degree: u32,
    max_terms: usize,
) -> impl Strategy<Value = TriangularAutomorphism> {
    let scales = prop::collection::vec(arb_scalar(), n);
    let tails: Vec<_> = (1..=n)
        .map(|j| arb_poly(n, j - 1, tail_degree, max_terms).boxed())
        .collect();
    (scales, tails).prop_map(move |(scales, tails)| {
        let tails = tails
            .into_iter()
            .map(|p| {
                let constant = Polynomial::constant(n, p.constant_term());
                p.sub(&constant).unwrap()
            })
            .collect();
        TriangularAutomorphism::new(n, scales, tails).unwrap()
    })
}
