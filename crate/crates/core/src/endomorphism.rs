//! Constructing and screening truncated Lie endomorphisms.
//!
//! A [`TruncatedLieMap`] records where each basis element of the level-`d`
//! filtration space goes. The functions here build such maps from a
//! triangular automorphism or an exponential of an adjoint operator, test
//! the bracket-compatibility and injectivity properties a genuine
//! automorphism must satisfy, and pull out the scalar/tail decomposition of
//! the images of the coordinate derivations.

use std::fmt;

use num::Zero;

use crate::automorphism::TriangularAutomorphism;
use crate::derivation::UniDerivation;
use crate::error::{Error, Result};
use crate::filtration::{derivation_row, BasisIndex, FiltrationBasis, TruncatedLieMap};
use crate::linalg::RowBasis;
use crate::polynomial::Scalar;

/// Image of a coordinate derivation split as `lambda * d_i + tail`.
///
/// Invariant: `tail` has ideal index at least `i + 1`, so the scalar part
/// really is the leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorDecomposition {
    pub index: usize,
    pub lambda: Scalar,
    pub tail: UniDerivation,
}

/// First basis pair on which a map fails to respect brackets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomomorphismViolation {
    pub left: BasisIndex,
    pub right: BasisIndex,
    /// Image of the bracket of the two basis elements.
    pub expected: UniDerivation,
    /// Bracket of the two images.
    pub actual: UniDerivation,
}

impl fmt::Display for HomomorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bracket mismatch on ({}, {}): image of bracket is {}, bracket of images is {}",
            self.left, self.right, self.expected, self.actual
        )
    }
}

/// Restricts the conjugation action of `sigma` to the level-`d` space.
///
/// The image of each basis derivation is computed exactly; conjugation by a
/// triangular automorphism preserves each filtration level, so the result
/// is a legitimate endomorphism of the truncated space.
pub fn endo_from_automorphism(
    sigma: &TriangularAutomorphism,
    level: u32,
) -> Result<TruncatedLieMap> {
    let domain = FiltrationBasis::enumerate(sigma.ambient_n(), level)?;
    let mut images = Vec::with_capacity(domain.len());
    for idx in domain.elements() {
        let b = idx.to_derivation(sigma.ambient_n())?;
        images.push(sigma.act_on_derivation(&b)?);
    }
    TruncatedLieMap::new(domain, images)
}

/// Restricts `exp(ad g)` to the level-`d` space.
///
/// Each basis image is the exponential series applied to the basis element;
/// the series is finite because `ad g` is locally nilpotent, with `cap`
/// bounding the number of terms tried before giving up.
pub fn endo_from_exp_ad(g: &UniDerivation, level: u32, cap: usize) -> Result<TruncatedLieMap> {
    let domain = FiltrationBasis::enumerate(g.ambient_n(), level)?;
    let mut images = Vec::with_capacity(domain.len());
    for idx in domain.elements() {
        let b = idx.to_derivation(g.ambient_n())?;
        images.push(g.exp_ad(&b, cap)?);
    }
    TruncatedLieMap::new(domain, images)
}

/// Checks bracket compatibility on every basis pair whose membership levels
/// sum to at most the domain level, returning the first failure in basis
/// order.
///
/// The level restriction keeps the bracket of the pair inside the domain,
/// so "image of the bracket" is well defined for exactly the pairs tested.
pub fn check_homomorphism(m: &TruncatedLieMap) -> Result<Option<HomomorphismViolation>> {
    let elements = m.domain().elements();
    let level = m.level();
    for (a_pos, a) in elements.iter().enumerate() {
        if a.level() > level {
            continue;
        }
        let a_der = a.to_derivation(m.ambient_n())?;
        for (b_pos, b) in elements.iter().enumerate().skip(a_pos + 1) {
            if a.level() + b.level() > level {
                continue;
            }
            let b_der = b.to_derivation(m.ambient_n())?;
            let bracket = a_der.bracket(&b_der)?;
            let expected = m.apply_to(&bracket)?;
            let actual = m.image_at(a_pos).bracket(m.image_at(b_pos))?;
            if expected != actual {
                return Ok(Some(HomomorphismViolation {
                    left: a.clone(),
                    right: b.clone(),
                    expected,
                    actual,
                }));
            }
        }
    }
    Ok(None)
}

/// Rank of the image of the level-`sublevel` subspace.
///
/// Images are allowed to escape the filtration level; the rank is taken in
/// the full derivation space.
pub fn image_rank(m: &TruncatedLieMap, sublevel: u32) -> Result<usize> {
    if sublevel > m.level() {
        return Err(Error::SublevelExceedsDomain {
            sublevel,
            level: m.level(),
        });
    }
    let mut basis = RowBasis::new();
    for idx in m.domain().elements() {
        if idx.level() > sublevel {
            continue;
        }
        let image = m
            .image_of_index(idx)
            .expect("sub-basis element is in the domain");
        basis.insert(derivation_row(image));
    }
    Ok(basis.rank())
}

/// Whether the map is injective on the level-`sublevel` subspace.
pub fn check_injectivity(m: &TruncatedLieMap, sublevel: u32) -> Result<bool> {
    let dim = FiltrationBasis::enumerate(m.ambient_n(), sublevel)?.len();
    Ok(image_rank(m, sublevel)? == dim)
}

/// Decomposes the image of each coordinate derivation as
/// `lambda_i * d_i + tail_i`.
///
/// Errors reproduce, in order of detection, the three ways a map can fail
/// to look like conjugation on the coordinate derivations: the image of
/// `d_i` leaves the `i`-th ideal of the derived-series ladder, its leading
/// coefficient is non-constant, or the leading scalar vanishes (which would
/// collapse the derived length of the image subalgebra by one).
pub fn extract_generators(m: &TruncatedLieMap) -> Result<Vec<GeneratorDecomposition>> {
    let n = m.ambient_n();
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let image = m.image_of_partial(i)?;
        if image.ideal_index().get() < i {
            return Err(Error::DerivedSeriesInclusion { index: i });
        }
        let leading = image.coeff(i);
        if leading.max_support_index() != 0 {
            return Err(Error::NonScalarLeading { index: i });
        }
        let lambda = leading.constant_term();
        if lambda.is_zero() {
            return Err(Error::ZeroLeadingScalar { index: i });
        }
        let tail = image.sub(&UniDerivation::partial(n, i)?.scale(&lambda))?;
        out.push(GeneratorDecomposition {
            index: i,
            lambda,
            tail,
        });
    }
    Ok(out)
}

/// First pair of non-commuting derivations in the slice, as 1-based
/// positions, or `None` when all pairs commute.
pub fn check_pairwise_commuting(targets: &[UniDerivation]) -> Result<Option<(usize, usize)>> {
    for (i, a) in targets.iter().enumerate() {
        for (j, b) in targets.iter().enumerate().skip(i + 1) {
            if !a.bracket(b)?.is_zero() {
                return Ok(Some((i + 1, j + 1)));
            }
        }
    }
    Ok(None)
}
