use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{One, Zero};

use crate::derivation::UniDerivation;
use crate::error::{Error, Result};
use crate::linalg::{RowBasis, SparseRow};
use crate::polynomial::{Monomial, Polynomial, Scalar};

/// Index of the basis element x^alpha ∂_slot; alpha has length slot-1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisIndex {
    slot: usize,
    alpha: Monomial,
}

impl BasisIndex {
    pub fn new(slot: usize, alpha: Monomial) -> Self {
        debug_assert_eq!(alpha.len(), slot - 1);
        BasisIndex { slot, alpha }
    }

    pub fn slot(&self) -> usize {
        self.slot
    }

    pub fn alpha(&self) -> &Monomial {
        &self.alpha
    }

    /// Smallest filtration level containing this element.
    pub fn level(&self) -> u32 {
        self.alpha.max_exponent()
    }

    pub fn to_derivation(&self, n: usize) -> Result<UniDerivation> {
        UniDerivation::monomial_term(n, self.slot, self.alpha.exponents(), Scalar::one())
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.slot)?;
        for (k, e) in self.alpha.exponents().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        Ok(())
    }
}

/// The ordered monomial basis of the space of derivations killed by the
/// (d+1)-st power of every ad(∂_j): all x^alpha ∂_j with every exponent
/// at most d.
#[derive(Clone, Debug)]
pub struct FiltrationBasis {
    n: usize,
    level: u32,
    elements: Vec<BasisIndex>,
    positions: HashMap<BasisIndex, usize>,
}

impl PartialEq for FiltrationBasis {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.level == other.level
    }
}
impl Eq for FiltrationBasis {}

fn exponent_tuples(vars: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for _ in 0..vars {
        let mut next = Vec::with_capacity(out.len() * (d as usize + 1));
        for stem in &out {
            for e in 0..=d {
                let mut v = stem.clone();
                v.push(e);
                next.push(v);
            }
        }
        out = next;
    }
    let mut monos: Vec<Monomial> = out.into_iter().map(Monomial::new).collect();
    monos.sort();
    monos
}

impl FiltrationBasis {
    pub fn enumerate(n: usize, d: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::AmbientTooSmall { n });
        }
        let mut elements = Vec::new();
        for slot in 1..=n {
            for alpha in exponent_tuples(slot - 1, d) {
                elements.push(BasisIndex { slot, alpha });
            }
        }
        let positions = elements
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        Ok(FiltrationBasis {
            n,
            level: d,
            elements,
            positions,
        })
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisIndex] {
        &self.elements
    }

    pub fn position(&self, idx: &BasisIndex) -> Option<usize> {
        self.positions.get(idx).copied()
    }

    /// Exact coordinates of a derivation in this basis. Errors when some
    /// monomial exceeds the level.
    pub fn coords(&self, d: &UniDerivation) -> Result<Vec<Scalar>> {
        if d.ambient_n() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: d.ambient_n(),
            });
        }
        let mut v = vec![Scalar::zero(); self.elements.len()];
        for (k, f) in d.coeffs().iter().enumerate() {
            let slot = k + 1;
            for (mono, c) in f.terms() {
                let idx = BasisIndex {
                    slot,
                    alpha: mono.truncated(slot - 1),
                };
                if idx.level() > self.level {
                    return Err(Error::OutsideFiltrationLevel {
                        level: self.level,
                        witness: idx.to_string(),
                    });
                }
                let pos = self.positions[&idx];
                v[pos] = c.clone();
            }
        }
        Ok(v)
    }
}

/// Sparse row encoding of a derivation, keyed by basis index. Level-free:
/// any unitriangular derivation has one.
pub fn derivation_row(d: &UniDerivation) -> SparseRow<BasisIndex> {
    let mut row = BTreeMap::new();
    for (k, f) in d.coeffs().iter().enumerate() {
        let slot = k + 1;
        for (mono, c) in f.terms() {
            row.insert(
                BasisIndex {
                    slot,
                    alpha: mono.truncated(slot - 1),
                },
                c.clone(),
            );
        }
    }
    row
}

pub fn row_to_derivation(n: usize, row: &SparseRow<BasisIndex>) -> Result<UniDerivation> {
    let mut coeff_terms: Vec<BTreeMap<Monomial, Scalar>> = vec![BTreeMap::new(); n];
    for (idx, c) in row {
        if idx.slot > n {
            return Err(Error::IndexOutOfRange { index: idx.slot, n });
        }
        coeff_terms[idx.slot - 1].insert(idx.alpha.padded(n), c.clone());
    }
    let coeffs = coeff_terms
        .into_iter()
        .map(|t| Polynomial::from_terms(n, t))
        .collect();
    UniDerivation::new(n, coeffs)
}

/// A linear map given by exact images of every basis element of a
/// filtration level; its action extends linearly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLieMap {
    domain: FiltrationBasis,
    images: Vec<UniDerivation>,
}

impl TruncatedLieMap {
    pub fn new(domain: FiltrationBasis, images: Vec<UniDerivation>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::AmbientMismatch {
                left: domain.len(),
                right: images.len(),
            });
        }
        for img in &images {
            if img.ambient_n() != domain.ambient_n() {
                return Err(Error::AmbientMismatch {
                    left: domain.ambient_n(),
                    right: img.ambient_n(),
                });
            }
        }
        Ok(TruncatedLieMap { domain, images })
    }

    pub fn identity(n: usize, d: u32) -> Result<Self> {
        let domain = FiltrationBasis::enumerate(n, d)?;
        let images = domain
            .elements()
            .iter()
            .map(|b| b.to_derivation(n))
            .collect::<Result<_>>()?;
        Ok(TruncatedLieMap { domain, images })
    }

    pub fn domain(&self) -> &FiltrationBasis {
        &self.domain
    }

    pub fn ambient_n(&self) -> usize {
        self.domain.ambient_n()
    }

    pub fn level(&self) -> u32 {
        self.domain.level()
    }

    pub fn images(&self) -> &[UniDerivation] {
        &self.images
    }

    pub fn image_at(&self, pos: usize) -> &UniDerivation {
        &self.images[pos]
    }

    pub fn image_of_index(&self, idx: &BasisIndex) -> Option<&UniDerivation> {
        self.domain.position(idx).map(|p| &self.images[p])
    }

    /// Image of ∂_i, 1-based.
    pub fn image_of_partial(&self, i: usize) -> Result<&UniDerivation> {
        let idx = BasisIndex {
            slot: i,
            alpha: Monomial::unit(i - 1),
        };
        self.image_of_index(&idx)
            .ok_or(Error::IndexOutOfRange {
                index: i,
                n: self.ambient_n(),
            })
    }

    /// Linear extension to an arbitrary element of the domain span.
    pub fn apply_to(&self, d: &UniDerivation) -> Result<UniDerivation> {
        let cs = self.domain.coords(d)?;
        let mut acc = UniDerivation::zero(self.ambient_n());
        for (c, img) in cs.iter().zip(&self.images) {
            if !c.is_zero() {
                acc = acc.add(&img.scale(c))?;
            }
        }
        Ok(acc)
    }
}

/// A subspace presented by a finite spanning set of derivations.
#[derive(Clone, Debug)]
pub struct SpannedSubalgebra {
    n: usize,
    spanners: Vec<UniDerivation>,
}

impl SpannedSubalgebra {
    pub fn new(n: usize, spanners: Vec<UniDerivation>) -> Result<Self> {
        for s in &spanners {
            if s.ambient_n() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: s.ambient_n(),
                });
            }
        }
        Ok(SpannedSubalgebra { n, spanners })
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn spanners(&self) -> &[UniDerivation] {
        &self.spanners
    }
}

fn bracket_span(n: usize, spanners: &[UniDerivation]) -> Result<Vec<UniDerivation>> {
    let mut basis = RowBasis::new();
    for (i, s) in spanners.iter().enumerate() {
        for t in &spanners[i + 1..] {
            let b = s.bracket(t)?;
            if !b.is_zero() {
                basis.insert(derivation_row(&b));
            }
        }
    }
    basis
        .rows()
        .iter()
        .map(|r| row_to_derivation(n, r))
        .collect()
}

/// Row-reduced basis of the span of all brackets of pairs of spanners.
/// Outputs live within twice the budget level.
pub fn derived_span(s: &SpannedSubalgebra, budget_level: u32) -> Result<Vec<UniDerivation>> {
    for (k, sp) in s.spanners.iter().enumerate() {
        if sp.membership_level() > budget_level {
            return Err(Error::OutsideFiltrationLevel {
                level: budget_level,
                witness: format!("spanner {}", k + 1),
            });
        }
    }
    bracket_span(s.n, &s.spanners)
}

/// Number of nonzero terms of the derived series of the span of the
/// spanning set, iterating bracket spans until they vanish. A lower bound
/// for the derived length of the full subalgebra the spanners generate.
pub fn derived_length(s: &SpannedSubalgebra, budget_level: u32) -> Result<u32> {
    for (k, sp) in s.spanners.iter().enumerate() {
        if sp.membership_level() > budget_level {
            return Err(Error::OutsideFiltrationLevel {
                level: budget_level,
                witness: format!("spanner {}", k + 1),
            });
        }
    }
    if s.spanners.iter().all(UniDerivation::is_zero) {
        return Ok(0);
    }
    let mut count = 1;
    let mut current = s.spanners.clone();
    loop {
        current = bracket_span(s.n, &current)?;
        if current.is_empty() {
            return Ok(count);
        }
        count += 1;
    }
}

/// Exact rank of the restriction of the map to the sublevel basis, checking
/// on the way that every image stays within the sublevel.
pub fn rank_of(m: &TruncatedLieMap, sublevel: u32) -> Result<usize> {
    if sublevel > m.level() {
        return Err(Error::SublevelExceedsDomain {
            sublevel,
            level: m.level(),
        });
    }
    let sub = FiltrationBasis::enumerate(m.ambient_n(), sublevel)?;
    let mut basis = RowBasis::new();
    for idx in sub.elements() {
        let img = m
            .image_of_index(idx)
            .expect("sublevel basis is contained in the domain basis");
        if img.membership_level() > sublevel {
            return Err(Error::FiltrationNotPreserved {
                level: sublevel,
                witness: idx.to_string(),
            });
        }
        if !img.is_zero() {
            basis.insert(derivation_row(img));
        }
    }
    Ok(basis.rank())
}

/// Closed-form dimension of the level-`d` space: sum over slots `j` of the
/// `(d+1)^(j-1)` exponent vectors available to the slot's coefficient.
pub fn dimension(n: usize, d: u32) -> Result<num::BigUint> {
    if n < 2 {
        return Err(Error::AmbientTooSmall { n });
    }
    let base = num::BigUint::from(u64::from(d) + 1);
    let mut acc = num::BigUint::zero();
    let mut power = num::BigUint::one();
    for _ in 0..n {
        acc += &power;
        power *= &base;
    }
    Ok(acc)
}
