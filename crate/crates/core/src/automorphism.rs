use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::derivation::UniDerivation;
use crate::error::{Error, Result};
use crate::polynomial::{scalar_pow, Monomial, Polynomial, Scalar};

/// A polynomial automorphism x_j -> c_j x_j + a_j where c_j is a nonzero
/// scalar and a_j depends only on x1..x_{j-1} and vanishes at the origin.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriangularAutomorphism {
    n: usize,
    scales: Vec<Scalar>,
    tails: Vec<Polynomial>,
}

impl TriangularAutomorphism {
    pub fn new(n: usize, scales: Vec<Scalar>, tails: Vec<Polynomial>) -> Result<Self> {
        if scales.len() != n || tails.len() != n {
            return Err(Error::NotTriangular {
                detail: format!(
                    "expected {} scales and tails, got {} and {}",
                    n,
                    scales.len(),
                    tails.len()
                ),
            });
        }
        for (k, c) in scales.iter().enumerate() {
            if c.is_zero() {
                return Err(Error::NotTriangular {
                    detail: format!("scale of x{} is zero", k + 1),
                });
            }
        }
        for (k, a) in tails.iter().enumerate() {
            let j = k + 1;
            if a.ambient_n() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: a.ambient_n(),
                });
            }
            let support = a.max_support_index();
            if support >= j {
                return Err(Error::NotTriangular {
                    detail: format!("tail of x{} depends on x{}", j, support),
                });
            }
            if !a.constant_term().is_zero() {
                return Err(Error::NotTriangular {
                    detail: format!("tail of x{} has a constant term", j),
                });
            }
        }
        Ok(TriangularAutomorphism { n, scales, tails })
    }

    pub fn identity(n: usize) -> Self {
        TriangularAutomorphism {
            n,
            scales: vec![Scalar::one(); n],
            tails: vec![Polynomial::zero(n); n],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.scales.iter().all(One::is_one) && self.tails.iter().all(Polynomial::is_zero)
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    /// Scale of x_j, 1-based.
    pub fn scale(&self, j: usize) -> &Scalar {
        &self.scales[j - 1]
    }

    /// Tail of x_j, 1-based.
    pub fn tail(&self, j: usize) -> &Polynomial {
        &self.tails[j - 1]
    }

    /// The image polynomial c_j x_j + a_j, 1-based.
    pub fn image_of_var(&self, j: usize) -> Polynomial {
        assert!(j >= 1 && j <= self.n, "variable index out of range");
        Polynomial::variable(self.n, j)
            .expect("index in range")
            .scale(&self.scales[j - 1])
            .add(&self.tails[j - 1])
            .expect("same ambient")
    }

    pub fn images(&self) -> Vec<Polynomial> {
        (1..=self.n).map(|j| self.image_of_var(j)).collect()
    }

    pub fn apply_to_poly(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ambient_n() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: p.ambient_n(),
            });
        }
        p.substitute(&self.images())
    }

    /// Group law: (self ∘ other)(x_j) = self(other(x_j)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut scales = Vec::with_capacity(self.n);
        let mut tails = Vec::with_capacity(self.n);
        for j in 1..=self.n {
            let img = self.apply_to_poly(&other.image_of_var(j))?;
            let mut exps = vec![0u32; self.n];
            exps[j - 1] = 1;
            let c = img.coefficient(&Monomial::new(exps.clone()));
            let tail = img.sub(&Polynomial::monomial(self.n, &exps, c.clone())?)?;
            scales.push(c);
            tails.push(tail);
        }
        Self::new(self.n, scales, tails)
    }

    /// Exact inverse by back-substitution: the preimage of x_j is
    /// (x_j - a_j(preimages of x1..x_{j-1})) / c_j.
    pub fn invert(&self) -> Self {
        let n = self.n;
        let mut inv_images: Vec<Polynomial> = Vec::with_capacity(n);
        for j in 0..n {
            let mut t = Polynomial::variable(n, j + 1).expect("index in range");
            if !self.tails[j].is_zero() {
                let mut subs = inv_images.clone();
                for k in j..n {
                    subs.push(Polynomial::variable(n, k + 1).expect("index in range"));
                }
                let shifted = self.tails[j].substitute(&subs).expect("same ambient");
                t = t.sub(&shifted).expect("same ambient");
            }
            inv_images.push(t.scale(&self.scales[j].recip()));
        }
        let mut scales = Vec::with_capacity(n);
        let mut tails = Vec::with_capacity(n);
        for j in 0..n {
            let c = self.scales[j].recip();
            let cx = Polynomial::variable(n, j + 1)
                .expect("index in range")
                .scale(&c);
            tails.push(inv_images[j].sub(&cx).expect("same ambient"));
            scales.push(c);
        }
        Self::new(n, scales, tails).expect("inverse of a triangular map is triangular")
    }

    /// Solve sigma(r) = q for r without materializing the inverse map.
    ///
    /// Under the ordering that weighs later variables most, sigma maps x^g to
    /// c^g x^g plus strictly smaller terms, so repeatedly peeling the largest
    /// residual monomial terminates and emits one result term per step.
    pub fn preimage_poly(&self, q: &Polynomial) -> Result<Polynomial> {
        if q.ambient_n() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: q.ambient_n(),
            });
        }
        let n = self.n;
        let rev = |m: &Monomial| -> Vec<u32> { m.exponents().iter().rev().copied().collect() };
        let mut residual: BTreeMap<Vec<u32>, Scalar> =
            q.terms().map(|(m, c)| (rev(m), c.clone())).collect();
        let mut result: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        let images = self.images();
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(n)]; n];
        while let Some((rev_gamma, coeff)) = residual.pop_last() {
            debug_assert!(!coeff.is_zero());
            let gamma: Vec<u32> = rev_gamma.iter().rev().copied().collect();
            let mut c_gamma = Scalar::one();
            for (j, &e) in gamma.iter().enumerate() {
                if e > 0 {
                    c_gamma *= scalar_pow(&self.scales[j], e);
                }
            }
            let u = coeff / c_gamma;
            let mut image = Polynomial::one(n);
            for (j, &e) in gamma.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().mul(&images[j])?;
                    powers[j].push(next);
                }
                image = image.mul(&powers[j][e as usize])?;
            }
            for (m, c) in image.terms() {
                let key = rev(m);
                if key == rev_gamma {
                    // leading term c_gamma x^gamma cancels the popped entry exactly
                    continue;
                }
                let delta = &u * c;
                match residual.get_mut(&key) {
                    Some(e) => {
                        *e -= delta;
                        if e.is_zero() {
                            residual.remove(&key);
                        }
                    }
                    None => {
                        residual.insert(key, -delta);
                    }
                }
            }
            result.insert(Monomial::new(gamma), u);
        }
        Ok(Polynomial::from_terms(n, result))
    }

    /// Conjugation action sigma·D = sigma ∘ D ∘ sigma^{-1}, computed by the
    /// triangular solve c_m g_m = sigma(f_m) - Σ_{k<m} g_k ∂_k(a_m); no
    /// inverse images are needed.
    pub fn act_on_derivation(&self, d: &UniDerivation) -> Result<UniDerivation> {
        if d.ambient_n() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: d.ambient_n(),
            });
        }
        let n = self.n;
        let mut gs: Vec<Polynomial> = Vec::with_capacity(n);
        for m in 0..n {
            let mut rhs = self.apply_to_poly(d.coeff(m + 1))?;
            let a = &self.tails[m];
            if !a.is_zero() {
                for (k, g) in gs.iter().enumerate() {
                    if g.is_zero() {
                        continue;
                    }
                    let da = a.partial_derivative(k + 1)?;
                    if da.is_zero() {
                        continue;
                    }
                    rhs = rhs.sub(&g.mul(&da)?)?;
                }
            }
            gs.push(rhs.scale(&self.scales[m].recip()));
        }
        UniDerivation::new(n, gs)
    }

    /// The inverse action sigma^{-1}·D = sigma^{-1} ∘ D ∘ sigma: the m-th
    /// coefficient is the sigma-preimage of c_m f_m + D(a_m).
    pub fn act_by_inverse(&self, d: &UniDerivation) -> Result<UniDerivation> {
        if d.ambient_n() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: d.ambient_n(),
            });
        }
        let n = self.n;
        let mut es = Vec::with_capacity(n);
        for m in 0..n {
            let mut q = d.coeff(m + 1).scale(&self.scales[m]);
            let a = &self.tails[m];
            if !a.is_zero() {
                q = q.add(&d.apply(a)?)?;
            }
            es.push(self.preimage_poly(&q)?);
        }
        UniDerivation::new(n, es)
    }
}

impl fmt::Display for TriangularAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 1..=self.n {
            writeln!(f, "x{} -> {}", j, self.image_of_var(j))?;
        }
        Ok(())
    }
}
