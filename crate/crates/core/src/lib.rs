//! Exact symbolic computation in the Lie algebra of unitriangular polynomial
//! derivations over the rationals.
//!
//! The library provides sparse rational polynomials, the Lie algebra of
//! derivations whose j-th coefficient depends only on the first j-1
//! variables, the group of scaled triangular polynomial automorphisms acting
//! on it by conjugation, the finite-dimensional filtration spaces carved out
//! by adjoint nilpotency, and a verification pipeline that takes a truncated
//! Lie-algebra endomorphism, normalizes it by a constructed triangular
//! automorphism, and certifies level by level that it is an automorphism.

pub mod automorphism;
pub mod derivation;
pub mod endomorphism;
pub mod error;
pub mod filtration;
pub mod linalg;
pub mod parse;
pub mod polynomial;
pub mod sample;
pub mod verifier;

pub use automorphism::TriangularAutomorphism;
pub use endomorphism::{
    check_homomorphism, check_injectivity, check_pairwise_commuting, endo_from_automorphism,
    endo_from_exp_ad, extract_generators, image_rank, GeneratorDecomposition,
    HomomorphismViolation,
};
pub use verifier::{
    construct_sigma, default_report_budget, normalize, verify_theorem, LevelRank,
    RejectionReason, VerificationReport, Verdict,
};
pub use derivation::{IdealIndex, UniDerivation, DEFAULT_NILPOTENCY_CAP};
pub use error::{Error, Result};
pub use filtration::{
    derivation_row, derived_length, derived_span, dimension, rank_of, row_to_derivation,
    BasisIndex, FiltrationBasis, SpannedSubalgebra, TruncatedLieMap,
};
pub use linalg::{RowBasis, SparseRow};
pub use parse::{
    parse_automorphism, parse_derivation, parse_endomorphism, parse_polynomial, parse_spanners,
    scan_max_index, write_endomorphism,
};
pub use polynomial::{scalar, Monomial, Polynomial, Scalar};
pub use sample::{
    random_automorphism, random_derivation, random_derivation_in_ideal, random_polynomial,
    random_scalar,
};
