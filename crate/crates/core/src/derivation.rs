use std::fmt;

use num::{BigInt, One, Signed};

use crate::error::{Error, Result};
use crate::polynomial::{Polynomial, Scalar};

/// Iteration ceiling for the adjoint exponential series.
pub const DEFAULT_NILPOTENCY_CAP: usize = 64;

/// Position of a derivation in the descending chain of ideals: the largest i
/// such that every coefficient below slot i vanishes. Value n+1 marks the
/// zero derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdealIndex(usize);

impl IdealIndex {
    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for IdealIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A derivation Σ_j f_j ∂_j with f_j depending only on x1..x_{j-1}; in
/// particular f_1 is constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniDerivation {
    n: usize,
    coeffs: Vec<Polynomial>,
}

impl UniDerivation {
    pub fn new(n: usize, coeffs: Vec<Polynomial>) -> Result<Self> {
        if coeffs.len() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: coeffs.len(),
            });
        }
        for (k, f) in coeffs.iter().enumerate() {
            if f.ambient_n() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: f.ambient_n(),
                });
            }
            let support = f.max_support_index();
            if support > k {
                return Err(Error::NotUnitriangular {
                    slot: k + 1,
                    support,
                });
            }
        }
        Ok(UniDerivation { n, coeffs })
    }

    pub fn zero(n: usize) -> Self {
        UniDerivation {
            n,
            coeffs: vec![Polynomial::zero(n); n],
        }
    }

    /// The coordinate derivation ∂_j, 1-based.
    pub fn partial(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        let mut coeffs = vec![Polynomial::zero(n); n];
        coeffs[j - 1] = Polynomial::one(n);
        Ok(UniDerivation { n, coeffs })
    }

    /// The single-term derivation c·x^alpha·∂_slot. `alpha` may be shorter
    /// than n; it must involve only x1..x_{slot-1}.
    pub fn monomial_term(n: usize, slot: usize, alpha: &[u32], coeff: Scalar) -> Result<Self> {
        if slot == 0 || slot > n {
            return Err(Error::IndexOutOfRange { index: slot, n });
        }
        let mut coeffs = vec![Polynomial::zero(n); n];
        coeffs[slot - 1] = Polynomial::monomial(n, alpha, coeff)?;
        Self::new(n, coeffs)
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Coefficient of ∂_j, 1-based.
    pub fn coeff(&self, j: usize) -> &Polynomial {
        &self.coeffs[j - 1]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(UniDerivation { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniDerivation {
            n: self.n,
            coeffs: self.coeffs.iter().map(Polynomial::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        UniDerivation {
            n: self.n,
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Apply the derivation to a polynomial: Σ_j f_j·∂_j(p).
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ambient_n() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: p.ambient_n(),
            });
        }
        let mut acc = Polynomial::zero(self.n);
        for (k, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let dp = p.partial_derivative(k + 1)?;
            if dp.is_zero() {
                continue;
            }
            acc = acc.add(&f.mul(&dp)?)?;
        }
        Ok(acc)
    }

    /// Lie bracket [D,E] = Σ_j (D(g_j) - E(f_j))·∂_j.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut coeffs = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let dg = self.apply(&other.coeffs[j])?;
            let ef = other.apply(&self.coeffs[j])?;
            coeffs.push(dg.sub(&ef)?);
        }
        Self::new(self.n, coeffs)
    }

    /// Largest i such that all coefficients below slot i vanish; n+1 for the
    /// zero derivation.
    pub fn ideal_index(&self) -> IdealIndex {
        IdealIndex(
            self.coeffs
                .iter()
                .position(|f| !f.is_zero())
                .map_or(self.n + 1, |k| k + 1),
        )
    }

    /// Smallest d such that every exponent in every coefficient is at most d.
    pub fn membership_level(&self) -> u32 {
        self.coeffs
            .iter()
            .map(Polynomial::max_exponent)
            .max()
            .unwrap_or(0)
    }

    /// Iterated bracket ad(self)^k applied to `target`.
    pub fn ad_power(&self, target: &Self, k: usize) -> Result<Self> {
        self.check_same_n(target)?;
        let mut acc = target.clone();
        for _ in 0..k {
            acc = self.bracket(&acc)?;
        }
        Ok(acc)
    }

    /// Adjoint exponential Σ_i ad(self)^i(target)/i!, summed until the next
    /// bracket vanishes. Errors if that does not happen within `cap` terms.
    pub fn exp_ad(&self, target: &Self, cap: usize) -> Result<Self> {
        self.check_same_n(target)?;
        let mut acc = target.clone();
        let mut term = target.clone();
        let mut factorial = BigInt::one();
        for i in 1..=cap {
            term = self.bracket(&term)?;
            if term.is_zero() {
                return Ok(acc);
            }
            factorial *= BigInt::from(i);
            let c = Scalar::new(BigInt::one(), factorial.clone());
            acc = acc.add(&term.scale(&c))?;
        }
        Err(Error::NilpotencyCapExceeded { cap })
    }
}

impl fmt::Display for UniDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, fj) in self.coeffs.iter().enumerate() {
            for (mono, coeff) in fj.terms().rev() {
                let neg = coeff.is_negative();
                let mag = coeff.abs();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                    first = false;
                } else {
                    write!(f, " {} ", if neg { "-" } else { "+" })?;
                }
                if !mag.is_one() {
                    write!(f, "{} ", mag)?;
                }
                for (v, &e) in mono.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    write!(f, "x{}", v + 1)?;
                    if e > 1 {
                        write!(f, "^{}", e)?;
                    }
                    write!(f, " ")?;
                }
                write!(f, "d{}", k + 1)?;
            }
        }
        Ok(())
    }
}
