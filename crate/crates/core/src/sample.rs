//! Random objects with small exact coefficients, for fuzzing and demos.
//!
//! Every generator takes the RNG by argument so callers control seeding
//! and reproducibility. Coefficients are kept small (|numerator| <= 4,
//! denominator <= 3) so bracket towers stay readable and fast while still
//! exercising non-integer arithmetic.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automorphism::TriangularAutomorphism;
use crate::derivation::UniDerivation;
use crate::polynomial::{scalar, Polynomial, Scalar};

/// Small nonzero rational.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let numer = rng.random_range(1..=4i64) * if rng.random_bool(0.5) { 1 } else { -1 };
    let denom = rng.random_range(1..=3i64);
    scalar(numer, denom)
}

/// Exponent vector over the first `support` of `n` variables with total
/// degree at most `degree`; variables are visited in random order so the
/// degree budget is not biased toward low indices.
fn random_exponents<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    support: usize,
    degree: u32,
) -> Vec<u32> {
    let mut alpha = vec![0u32; n];
    if support == 0 || degree == 0 {
        return alpha;
    }
    let mut order: Vec<usize> = (0..support).collect();
    order.shuffle(rng);
    let mut budget = degree;
    for k in order {
        if budget == 0 {
            break;
        }
        let e = rng.random_range(0..=budget);
        alpha[k] = e;
        budget -= e;
    }
    alpha
}

/// Polynomial in the first `support` of `n` variables: up to `max_terms`
/// monomials of total degree at most `degree`. May be zero.
pub fn random_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    support: usize,
    degree: u32,
    max_terms: usize,
) -> Polynomial {
    let count = rng.random_range(0..=max_terms);
    let mut acc = Polynomial::zero(n);
    for _ in 0..count {
        let alpha = random_exponents(rng, n, support, degree);
        let term = Polynomial::monomial(n, &alpha, random_scalar(rng))
            .expect("exponents fit the ambient ring");
        acc = acc.add(&term).expect("same ambient ring");
    }
    acc
}

/// Derivation with every coefficient drawn independently; slot `j` uses
/// only the first `j - 1` variables, so the result always satisfies the
/// triangularity invariant.
pub fn random_derivation<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    degree: u32,
    max_terms: usize,
) -> UniDerivation {
    let coeffs = (1..=n)
        .map(|j| random_polynomial(rng, n, j - 1, degree, max_terms))
        .collect();
    UniDerivation::new(n, coeffs).expect("coefficients respect triangularity by construction")
}

/// Derivation whose first nonzero coefficient sits exactly in slot `i`.
pub fn random_derivation_in_ideal<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    i: usize,
    degree: u32,
    max_terms: usize,
) -> UniDerivation {
    assert!(
        (1..=n).contains(&i),
        "ideal index {i} must lie in 1..={n}"
    );
    let mut coeffs = vec![Polynomial::zero(n); n];
    for j in (i + 1)..=n {
        coeffs[j - 1] = random_polynomial(rng, n, j - 1, degree, max_terms);
    }
    let mut lead = random_polynomial(rng, n, i - 1, degree, max_terms);
    if lead.is_zero() {
        lead = Polynomial::constant(n, random_scalar(rng));
    }
    coeffs[i - 1] = lead;
    UniDerivation::new(n, coeffs).expect("coefficients respect triangularity by construction")
}

/// Scaled triangular automorphism with random nonzero scales and random
/// constant-free tails of total degree at most `tail_degree`.
pub fn random_automorphism<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    tail_degree: u32,
    max_tail_terms: usize,
) -> TriangularAutomorphism {
    let scales = (0..n).map(|_| random_scalar(rng)).collect();
    let tails = (1..=n)
        .map(|j| {
            let p = random_polynomial(rng, n, j - 1, tail_degree, max_tail_terms);
            let constant = Polynomial::constant(n, p.constant_term());
            p.sub(&constant).expect("same ambient ring")
        })
        .collect();
    TriangularAutomorphism::new(n, scales, tails)
        .expect("scales are nonzero and tails are constant-free by construction")
}
