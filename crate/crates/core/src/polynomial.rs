use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient field.
pub type Scalar = BigRational;

/// Convenience constructor for small rational constants.
pub fn scalar(numer: i64, denom: i64) -> Scalar {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub(crate) fn scalar_pow(c: &Scalar, e: u32) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..e {
        acc *= c;
    }
    acc
}

/// Exponent vector. Ordered by total degree, ties broken lexicographically
/// with earlier variables weighing more.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn unit(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent at 0-based position `k`; positions past the end count as 0.
    pub fn exponent(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// 1-based index of the last variable actually present; 0 when none.
    pub fn max_support(&self) -> usize {
        self.0.iter().rposition(|&e| e != 0).map_or(0, |k| k + 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn truncated(&self, len: usize) -> Self {
        debug_assert!(self.0[len..].iter().all(|&e| e == 0));
        Monomial(self.0[..len].to_vec())
    }

    pub fn padded(&self, len: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(len, 0);
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals in a fixed number of
/// variables. No zero coefficients are stored; equality is structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(n), c);
        }
        Polynomial { n, terms }
    }

    /// The variable x_j, 1-based.
    pub fn variable(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        let mut exps = vec![0; n];
        exps[j - 1] = 1;
        Ok(Polynomial {
            n,
            terms: BTreeMap::from([(Monomial(exps), Scalar::one())]),
        })
    }

    /// Single term c·x^e. `exponents` may be shorter than `n`; missing
    /// entries are zero.
    pub fn monomial(n: usize, exponents: &[u32], coeff: Scalar) -> Result<Self> {
        if exponents.len() > n {
            return Err(Error::AmbientMismatch {
                left: exponents.len(),
                right: n,
            });
        }
        let mut exps = exponents.to_vec();
        exps.resize(n, 0);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Monomial(exps), coeff);
        }
        Ok(Polynomial { n, terms })
    }

    pub(crate) fn from_terms(n: usize, terms: BTreeMap<Monomial, Scalar>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { n, terms }
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::unit(self.n))
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::max_exponent)
            .max()
            .unwrap_or(0)
    }

    /// Smallest j such that the polynomial involves only x1..xj; 0 for
    /// constants.
    pub fn max_support_index(&self) -> usize {
        self.terms
            .keys()
            .map(Monomial::max_support)
            .max()
            .unwrap_or(0)
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

    pub(crate) fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (m, c) in &other.terms {
            match self.terms.get_mut(m) {
                Some(e) => {
                    *e += c;
                    if e.is_zero() {
                        self.terms.remove(m);
                    }
                }
                None => {
                    self.terms.insert(m.clone(), c.clone());
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.get_mut(&m) {
                    Some(e) => {
                        *e += c;
                        if e.is_zero() {
                            terms.remove(&m);
                        }
                    }
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        Ok(Polynomial { n: self.n, terms })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ambient");
        }
        acc
    }

    /// Formal partial derivative with respect to x_j, 1-based.
    pub fn partial_derivative(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange { index: j, n: self.n });
        }
        let k = j - 1;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[k] = e - 1;
            terms.insert(Monomial(exps), c * Scalar::from_integer(BigInt::from(e)));
        }
        Ok(Polynomial { n: self.n, terms })
    }

    /// Formal antiderivative in x_j with zero constant of integration.
    pub fn antiderivative(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange { index: j, n: self.n });
        }
        let k = j - 1;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps[k] += 1;
            let denom = Scalar::from_integer(BigInt::from(exps[k]));
            terms.insert(Monomial(exps), c / denom);
        }
        Ok(Polynomial { n: self.n, terms })
    }

    /// Evaluate with x_j replaced by images[j-1]. The result lives in the
    /// images' common ambient ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: images.len(),
            });
        }
        if self.n == 0 {
            return Ok(self.clone());
        }
        let m = images[0].n;
        for img in images {
            if img.n != m {
                return Err(Error::AmbientMismatch {
                    left: m,
                    right: img.n,
                });
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(m)]; self.n];
        let mut acc = Polynomial::zero(m);
        for (mono, c) in &self.terms {
            let mut t = Polynomial::constant(m, c.clone());
            for (k, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap().mul(&images[k])?;
                    powers[k].push(next);
                }
                t = t.mul(&powers[k][e as usize])?;
            }
            acc.add_assign(&t);
        }
        Ok(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms.iter().rev() {
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
            let show_coeff = !mag.is_one() || mono.is_unit();
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            let mut need_space = show_coeff;
            for (k, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if need_space {
                    write!(f, " ")?;
                }
                write!(f, "x{}", k + 1)?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                need_space = true;
            }
        }
        Ok(())
    }
}
