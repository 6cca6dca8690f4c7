//! Normalizing solver and end-to-end certification pipeline.
//!
//! Given the images of the coordinate derivations under a candidate
//! monomorphism, [`construct_sigma`] builds the unique scaled triangular
//! automorphism whose conjugation action reproduces them. [`normalize`]
//! composes a truncated map with that inverse conjugation so every
//! coordinate derivation is fixed, and [`verify_theorem`] chains the
//! screening checks, the normalization, and per-level rank certification
//! into a single structured report.

use std::fmt;

use num::Zero;
use serde_json::{json, Value};

use crate::automorphism::TriangularAutomorphism;
use crate::derivation::UniDerivation;
use crate::endomorphism::{
    check_homomorphism, check_pairwise_commuting, extract_generators, image_rank,
    HomomorphismViolation,
};
use crate::error::{Error, Result};
use crate::filtration::{rank_of, FiltrationBasis, TruncatedLieMap};
use crate::polynomial::{Polynomial, Scalar};

/// Largest level whose bracket relations are fully covered by the
/// homomorphism check on a level-`d` domain: pairs are tested when their
/// membership levels sum to at most `d`.
pub fn default_report_budget(level: u32) -> u32 {
    level / 2
}

/// Why a candidate map failed certification, in pipeline order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectionReason {
    NotHomomorphism,
    NotMonomorphism {
        level: u32,
        rank: usize,
        dim: usize,
    },
    DerivedSeriesInclusion {
        index: usize,
    },
    NonScalarLeading {
        index: usize,
    },
    /// A vanishing leading scalar collapses the derived length of the image
    /// by one step, so the map cannot be injective.
    ZeroLeadingScalar {
        index: usize,
        subalgebra_length: u32,
        ideal_length: u32,
    },
    NonCommutingTargets {
        i: usize,
        j: usize,
    },
    SigmaSolver {
        detail: String,
    },
    FiltrationNotPreserved {
        level: u32,
        witness: String,
    },
    RankDeficient {
        level: u32,
        rank: usize,
        dim: usize,
    },
}

impl RejectionReason {
    /// Stable machine-readable tag for serialized reports.
    pub fn kind(&self) -> &'static str {
        match self {
            RejectionReason::NotHomomorphism => "not-homomorphism",
            RejectionReason::NotMonomorphism { .. } => "not-monomorphism",
            RejectionReason::DerivedSeriesInclusion { .. } => "derived-series-inclusion",
            RejectionReason::NonScalarLeading { .. } => "non-scalar-leading",
            RejectionReason::ZeroLeadingScalar { .. } => "zero-leading-scalar",
            RejectionReason::NonCommutingTargets { .. } => "non-commuting-targets",
            RejectionReason::SigmaSolver { .. } => "sigma-solver",
            RejectionReason::FiltrationNotPreserved { .. } => "filtration-not-preserved",
            RejectionReason::RankDeficient { .. } => "rank-deficient",
        }
    }
}

impl fmt::Display for RejectionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectionReason::NotHomomorphism => write!(f, "not a homomorphism"),
            RejectionReason::NotMonomorphism { level, rank, dim } => write!(
                f,
                "not a monomorphism: image rank {rank} < {dim} on the level-{level} space"
            ),
            RejectionReason::DerivedSeriesInclusion { index } => write!(
                f,
                "derived-series inclusion violated: image of d{index} has components below d{index}"
            ),
            RejectionReason::NonScalarLeading { index } => write!(
                f,
                "leading coefficient of the image of d{index} is not a scalar"
            ),
            RejectionReason::ZeroLeadingScalar {
                index,
                subalgebra_length,
                ideal_length,
            } => write!(
                f,
                "zero leading scalar at index {index}: not injective \
                 (an injective image would have derived length {subalgebra_length}, \
                 but it lies in an ideal of derived length {ideal_length})"
            ),
            RejectionReason::NonCommutingTargets { i, j } => write!(
                f,
                "integrability failure: targets {i} and {j} do not commute"
            ),
            RejectionReason::SigmaSolver { detail } => write!(f, "{detail}"),
            RejectionReason::FiltrationNotPreserved { level, witness } => write!(
                f,
                "filtration not preserved at level {level}: image of {witness} escapes"
            ),
            RejectionReason::RankDeficient { level, rank, dim } => write!(
                f,
                "rank deficient at level {level}: rank {rank} < dim {dim}"
            ),
        }
    }
}

/// Outcome of the certification pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Automorphism of the level-`level` space, rank-certified on every
    /// sublevel up to `budget`.
    Certified { level: u32, budget: u32 },
    Rejected(RejectionReason),
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified { .. })
    }
}

/// One row of the per-level rank table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRank {
    pub level: u32,
    pub rank: usize,
    pub dim: usize,
}

/// Full result of [`verify_theorem`]: the verdict plus whatever evidence
/// the pipeline produced before it stopped.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub verdict: Verdict,
    /// Leading scalars of the images of the coordinate derivations, filled
    /// once extraction succeeds.
    pub lambdas: Vec<Scalar>,
    /// Normalizing automorphism, filled once the solver succeeds.
    pub sigma: Option<TriangularAutomorphism>,
    /// Rank of the normalized map on each certified sublevel.
    pub level_ranks: Vec<LevelRank>,
    /// Witness pair, filled when the homomorphism check fails.
    pub violation: Option<HomomorphismViolation>,
}

impl VerificationReport {
    pub fn is_certified(&self) -> bool {
        self.verdict.is_certified()
    }

    /// Machine-readable form: verdict, scalars as exact rational strings,
    /// the automorphism in its line format, and the rank table.
    pub fn to_json(&self) -> Value {
        let verdict = match &self.verdict {
            Verdict::Certified { level, budget } => json!({
                "status": "certified",
                "level": level,
                "budget": budget,
            }),
            Verdict::Rejected(reason) => json!({
                "status": "rejected",
                "reason": reason.kind(),
                "detail": reason.to_string(),
            }),
        };
        json!({
            "verdict": verdict,
            "lambdas": self.lambdas.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "sigma": self.sigma.as_ref().map(|s| {
                s.to_string().lines().map(str::to_owned).collect::<Vec<_>>()
            }),
            "level_ranks": self
                .level_ranks
                .iter()
                .map(|r| json!({"level": r.level, "rank": r.rank, "dim": r.dim}))
                .collect::<Vec<_>>(),
            "violation": self.violation.as_ref().map(|v| json!({
                "left": v.left.to_string(),
                "right": v.right.to_string(),
                "expected": v.expected.to_string(),
                "actual": v.actual.to_string(),
            })),
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Certified { level, budget } => writeln!(
                f,
                "verdict: certified automorphism at level {level} (rank-certified through level {budget})"
            )?,
            Verdict::Rejected(reason) => writeln!(f, "verdict: rejected ({reason})")?,
        }
        if let Some(v) = &self.violation {
            writeln!(f, "witness: {v}")?;
        }
        if !self.lambdas.is_empty() {
            let joined: Vec<String> = self.lambdas.iter().map(ToString::to_string).collect();
            writeln!(f, "lambdas: {}", joined.join(", "))?;
        }
        if let Some(sigma) = &self.sigma {
            writeln!(f, "sigma:")?;
            for line in sigma.to_string().lines() {
                writeln!(f, "  {line}")?;
            }
        }
        if !self.level_ranks.is_empty() {
            writeln!(f, "level ranks:")?;
            for r in &self.level_ranks {
                writeln!(f, "  level {}: rank {} / dim {}", r.level, r.rank, r.dim)?;
            }
        }
        Ok(())
    }
}

/// Builds the unique scaled triangular automorphism `sigma` with
/// `sigma . d_i = targets[i-1]` for every `i`.
///
/// Writing the `i`-th target as `lambda_i d_i + sum_k w_k^(i) d_k`, the
/// defining condition applied to `x_j` is linear in the tail `a_j`:
///
/// ```text
/// lambda_i d_i(a_j) + sum_{i<k<j} w_k^(i) d_k(a_j) + c_j w_j^(i) = 0
/// ```
///
/// with `c_j = 1/lambda_j`. For fixed `j` the solver walks `i` from `j - 1`
/// down to `1`: at step `i` every `d_k(a_j)` with `k > i` is already final
/// (later corrections depend only on earlier variables), so the equation
/// prescribes `d_i(a_j)` outright and one exact antiderivative in `x_i`
/// updates the tail. Pairwise commutation of the targets makes the
/// prescription integrable; the residual staying inside the first `i`
/// variables is checked at every step anyway, and the finished automorphism
/// is re-verified against all targets, so a bug cannot certify.
pub fn construct_sigma(targets: &[UniDerivation]) -> Result<TriangularAutomorphism> {
    let n = targets.len();
    for t in targets {
        if t.ambient_n() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: t.ambient_n(),
            });
        }
    }
    if let Some((i, j)) = check_pairwise_commuting(targets)? {
        return Err(Error::NonCommutingTargets { i, j });
    }

    let mut lambdas = Vec::with_capacity(n);
    for (pos, t) in targets.iter().enumerate() {
        let i = pos + 1;
        if t.ideal_index().get() < i {
            return Err(Error::NotRealizable {
                index: i,
                detail: format!("nonzero component below d{i}"),
            });
        }
        let leading = t.coeff(i);
        if leading.max_support_index() != 0 {
            return Err(Error::NotRealizable {
                index: i,
                detail: "leading coefficient is not a scalar".into(),
            });
        }
        let lambda = leading.constant_term();
        if lambda.is_zero() {
            return Err(Error::NotRealizable {
                index: i,
                detail: "leading scalar is zero".into(),
            });
        }
        lambdas.push(lambda);
    }

    let scales: Vec<Scalar> = lambdas.iter().map(Scalar::recip).collect();
    let mut tails = vec![Polynomial::zero(n); n];
    for j in 2..=n {
        let mut a = Polynomial::zero(n);
        for i in (1..j).rev() {
            let t = &targets[i - 1];
            let mut rhs = t.coeff(j).scale(&scales[j - 1]).neg();
            for k in (i + 1)..j {
                let w_k = t.coeff(k);
                if w_k.is_zero() {
                    continue;
                }
                let d_k_a = a.partial_derivative(k)?;
                if d_k_a.is_zero() {
                    continue;
                }
                rhs = rhs.sub(&w_k.mul(&d_k_a)?)?;
            }
            rhs = rhs.sub(&a.partial_derivative(i)?.scale(&lambdas[i - 1]))?;
            let residual = rhs.scale(&scales[i - 1]);
            let support = residual.max_support_index();
            if support > i {
                return Err(Error::SolverConsistency {
                    detail: format!(
                        "residual for the x{i}-dependence of tail {j} involves x{support}"
                    ),
                });
            }
            a = a.add(&residual.antiderivative(i)?)?;
        }
        tails[j - 1] = a;
    }

    let sigma = TriangularAutomorphism::new(n, scales, tails)?;
    for (pos, t) in targets.iter().enumerate() {
        let i = pos + 1;
        let conjugate = sigma.act_on_derivation(&UniDerivation::partial(n, i)?)?;
        if conjugate != *t {
            return Err(Error::SolverConsistency {
                detail: format!("conjugate of d{i} disagrees with its target"),
            });
        }
    }
    Ok(sigma)
}

/// Splits a candidate map into a normalizing automorphism and a residual
/// map fixing every coordinate derivation.
///
/// Returns `(sigma, psi)` where `sigma . d_i` equals the image of `d_i`
/// under the input and `psi` is the input composed with the inverse
/// conjugation, its images kept exact (composition can raise degree, so
/// they are deliberately not re-truncated to the domain level).
pub fn normalize(
    phi: &TruncatedLieMap,
) -> Result<(TriangularAutomorphism, TruncatedLieMap)> {
    let n = phi.ambient_n();
    extract_generators(phi)?;
    let mut targets = Vec::with_capacity(n);
    for i in 1..=n {
        targets.push(phi.image_of_partial(i)?.clone());
    }
    let sigma = construct_sigma(&targets)?;
    let mut images = Vec::with_capacity(phi.images().len());
    for img in phi.images() {
        images.push(sigma.act_by_inverse(img)?);
    }
    let psi = TruncatedLieMap::new(phi.domain().clone(), images)?;
    for i in 1..=n {
        if *psi.image_of_partial(i)? != UniDerivation::partial(n, i)? {
            return Err(Error::SolverConsistency {
                detail: format!("normalized map moves d{i}"),
            });
        }
    }
    Ok((sigma, psi))
}

fn rejection_of(n: usize, e: Error) -> RejectionReason {
    match e {
        Error::DerivedSeriesInclusion { index } => {
            RejectionReason::DerivedSeriesInclusion { index }
        }
        Error::NonScalarLeading { index } => RejectionReason::NonScalarLeading { index },
        Error::ZeroLeadingScalar { index } => RejectionReason::ZeroLeadingScalar {
            index,
            subalgebra_length: (n - index + 1) as u32,
            ideal_length: (n - index) as u32,
        },
        Error::NonCommutingTargets { i, j } => RejectionReason::NonCommutingTargets { i, j },
        other => RejectionReason::SigmaSolver {
            detail: other.to_string(),
        },
    }
}

/// Runs the whole certification pipeline on a candidate map.
///
/// Stages, in order: bracket compatibility on every in-budget basis pair;
/// injectivity at the top level; scalar/tail extraction of the coordinate
/// images; construction of the normalizing automorphism and the residual
/// map; and a per-level rank check of the residual map up to the report
/// budget. Every failure becomes a structured verdict rather than an
/// error, carrying whatever evidence earlier stages produced.
///
/// `budget` overrides the default of [`default_report_budget`] applied to
/// the domain level; either way it is clamped to the domain level.
pub fn verify_theorem(phi: &TruncatedLieMap, budget: Option<u32>) -> VerificationReport {
    let n = phi.ambient_n();
    let d = phi.level();
    let budget = budget.unwrap_or_else(|| default_report_budget(d)).min(d);
    let mut report = VerificationReport {
        verdict: Verdict::Certified { level: d, budget },
        lambdas: Vec::new(),
        sigma: None,
        level_ranks: Vec::new(),
        violation: None,
    };

    match check_homomorphism(phi).expect("basis pairs of a well-formed map stay in its domain") {
        Some(v) => {
            report.violation = Some(v);
            report.verdict = Verdict::Rejected(RejectionReason::NotHomomorphism);
            return report;
        }
        None => {}
    }

    let dim_top = phi.domain().len();
    let rank_top = image_rank(phi, d).expect("top level never exceeds the domain level");
    if rank_top != dim_top {
        report.verdict = Verdict::Rejected(RejectionReason::NotMonomorphism {
            level: d,
            rank: rank_top,
            dim: dim_top,
        });
        return report;
    }

    match extract_generators(phi) {
        Ok(gens) => {
            report.lambdas = gens.into_iter().map(|g| g.lambda).collect();
        }
        Err(e) => {
            report.verdict = Verdict::Rejected(rejection_of(n, e));
            return report;
        }
    }

    let psi = match normalize(phi) {
        Ok((sigma, psi)) => {
            report.sigma = Some(sigma);
            psi
        }
        Err(e) => {
            report.verdict = Verdict::Rejected(rejection_of(n, e));
            return report;
        }
    };

    for i in 0..=budget {
        let dim = FiltrationBasis::enumerate(n, i)
            .expect("domain ambient is large enough")
            .len();
        match rank_of(&psi, i) {
            Ok(rank) => {
                report.level_ranks.push(LevelRank { level: i, rank, dim });
                if rank != dim {
                    report.verdict =
                        Verdict::Rejected(RejectionReason::RankDeficient { level: i, rank, dim });
                    return report;
                }
            }
            Err(Error::FiltrationNotPreserved { level, witness }) => {
                report.verdict = Verdict::Rejected(RejectionReason::FiltrationNotPreserved {
                    level,
                    witness,
                });
                return report;
            }
            Err(e) => {
                report.verdict = Verdict::Rejected(RejectionReason::SigmaSolver {
                    detail: e.to_string(),
                });
                return report;
            }
        }
    }

    report.verdict = Verdict::Certified { level: d, budget };
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endomorphism::{endo_from_automorphism, endo_from_exp_ad};
    use crate::polynomial::scalar;

    fn partial(n: usize, i: usize) -> UniDerivation {
        UniDerivation::partial(n, i).unwrap()
    }

    #[test]
    fn shear_targets_solve_to_shear() {
        // targets (d1 - 2 x1 d2, d2) come from conjugating by x2 -> x2 + x1^2
        let t1 = partial(2, 1)
            .add(&UniDerivation::monomial_term(2, 2, &[1], scalar(-2, 1)).unwrap())
            .unwrap();
        let t2 = partial(2, 2);
        let sigma = construct_sigma(&[t1.clone(), t2]).unwrap();
        assert_eq!(sigma.scale(1), &scalar(1, 1));
        assert_eq!(sigma.scale(2), &scalar(1, 1));
        assert!(sigma.tail(1).is_zero());
        assert_eq!(
            sigma.tail(2),
            &Polynomial::monomial(2, &[2], scalar(1, 1)).unwrap()
        );
        assert_eq!(sigma.act_on_derivation(&partial(2, 1)).unwrap(), t1);
    }

    #[test]
    fn coordinate_targets_solve_to_identity() {
        let targets = vec![partial(3, 1), partial(3, 2), partial(3, 3)];
        let sigma = construct_sigma(&targets).unwrap();
        assert!(sigma.is_identity());
    }

    #[test]
    fn torus_targets_solve_to_scaling() {
        let targets = vec![partial(2, 1).scale(&scalar(2, 1)), partial(2, 2)];
        let sigma = construct_sigma(&targets).unwrap();
        assert_eq!(sigma.scale(1), &scalar(1, 2));
        assert_eq!(sigma.scale(2), &scalar(1, 1));
        assert!(sigma.tail(2).is_zero());
        assert_eq!(
            sigma.act_on_derivation(&partial(2, 1)).unwrap(),
            partial(2, 1).scale(&scalar(2, 1))
        );
    }

    #[test]
    fn non_commuting_targets_rejected() {
        let t1 = partial(2, 1);
        let t2 = UniDerivation::monomial_term(2, 2, &[1], scalar(1, 1)).unwrap();
        assert_eq!(
            construct_sigma(&[t1, t2]).unwrap_err(),
            Error::NonCommutingTargets { i: 1, j: 2 }
        );
    }

    #[test]
    fn zero_leading_scalar_not_realizable() {
        let err = construct_sigma(&[partial(2, 1), UniDerivation::zero(2)]).unwrap_err();
        assert!(matches!(err, Error::NotRealizable { index: 2, .. }));
    }

    #[test]
    fn normalize_recovers_automorphism() {
        let sigma0 = TriangularAutomorphism::new(
            2,
            vec![scalar(1, 1), scalar(1, 1)],
            vec![
                Polynomial::zero(2),
                Polynomial::monomial(2, &[2], scalar(1, 1)).unwrap(),
            ],
        )
        .unwrap();
        let phi = endo_from_automorphism(&sigma0, 2).unwrap();
        let (sigma, psi) = normalize(&phi).unwrap();
        assert_eq!(sigma, sigma0);
        for i in 1..=2 {
            assert_eq!(*psi.image_of_partial(i).unwrap(), partial(2, i));
        }
    }

    #[test]
    fn normalize_identity_is_identity() {
        let phi = TruncatedLieMap::identity(2, 2).unwrap();
        let (sigma, psi) = normalize(&phi).unwrap();
        assert!(sigma.is_identity());
        assert_eq!(psi, phi);
    }

    #[test]
    fn normalize_exp_ad_linear_shear() {
        // exp(ad(x1 d2)) sends d1 to d1 - d2, so the normalizer is
        // x2 -> x2 + x1.
        let g = UniDerivation::monomial_term(2, 2, &[1], scalar(1, 1)).unwrap();
        let phi = endo_from_exp_ad(&g, 2, 16).unwrap();
        let (sigma, psi) = normalize(&phi).unwrap();
        assert_eq!(
            sigma.tail(2),
            &Polynomial::variable(2, 1).unwrap()
        );
        assert_eq!(sigma.scale(1), &scalar(1, 1));
        for i in 1..=2 {
            assert_eq!(*psi.image_of_partial(i).unwrap(), partial(2, i));
        }
    }

    #[test]
    fn verify_certifies_shear() {
        let sigma0 = TriangularAutomorphism::new(
            2,
            vec![scalar(1, 1), scalar(1, 1)],
            vec![
                Polynomial::zero(2),
                Polynomial::monomial(2, &[2], scalar(1, 1)).unwrap(),
            ],
        )
        .unwrap();
        let phi = endo_from_automorphism(&sigma0, 2).unwrap();
        let report = verify_theorem(&phi, None);
        assert_eq!(report.verdict, Verdict::Certified { level: 2, budget: 1 });
        assert_eq!(report.lambdas, vec![scalar(1, 1), scalar(1, 1)]);
        assert_eq!(report.sigma, Some(sigma0));
        assert_eq!(
            report.level_ranks,
            vec![
                LevelRank { level: 0, rank: 2, dim: 2 },
                LevelRank { level: 1, rank: 3, dim: 3 },
            ]
        );
        assert!(report.is_certified());
    }

    #[test]
    fn verify_rejects_zero_map() {
        let domain = FiltrationBasis::enumerate(2, 1).unwrap();
        let images = vec![UniDerivation::zero(2); 3];
        let phi = TruncatedLieMap::new(domain, images).unwrap();
        let report = verify_theorem(&phi, None);
        assert_eq!(
            report.verdict,
            Verdict::Rejected(RejectionReason::NotMonomorphism {
                level: 1,
                rank: 0,
                dim: 3,
            })
        );
    }

    #[test]
    fn verify_rejects_zero_leading_scalar_with_lengths() {
        let domain = FiltrationBasis::enumerate(3, 0).unwrap();
        let images = vec![
            partial(3, 1),
            partial(3, 3),
            UniDerivation::monomial_term(3, 3, &[0, 1], scalar(1, 1)).unwrap(),
        ];
        let phi = TruncatedLieMap::new(domain, images).unwrap();
        let report = verify_theorem(&phi, None);
        assert_eq!(
            report.verdict,
            Verdict::Rejected(RejectionReason::ZeroLeadingScalar {
                index: 2,
                subalgebra_length: 2,
                ideal_length: 1,
            })
        );
    }

    #[test]
    fn verify_rejects_non_homomorphism_with_witness() {
        let domain = FiltrationBasis::enumerate(2, 1).unwrap();
        let images = vec![partial(2, 1), partial(2, 2), UniDerivation::zero(2)];
        let phi = TruncatedLieMap::new(domain, images).unwrap();
        let report = verify_theorem(&phi, None);
        assert_eq!(
            report.verdict,
            Verdict::Rejected(RejectionReason::NotHomomorphism)
        );
        assert!(report.violation.is_some());
    }

    #[test]
    fn verify_idempotent_after_normalization() {
        let g = UniDerivation::monomial_term(3, 3, &[1, 1], scalar(1, 1)).unwrap();
        let phi = endo_from_exp_ad(&g, 2, 16).unwrap();
        let (_, psi) = normalize(&phi).unwrap();
        let report = verify_theorem(&psi, None);
        assert!(report.is_certified());
        assert!(report.sigma.unwrap().is_identity());
    }

    #[test]
    fn budget_is_clamped_to_domain_level() {
        let phi = TruncatedLieMap::identity(2, 1).unwrap();
        let report = verify_theorem(&phi, Some(9));
        assert_eq!(report.verdict, Verdict::Certified { level: 1, budget: 1 });
        assert_eq!(report.level_ranks.len(), 2);
    }

    #[test]
    fn report_serializes_both_shapes() {
        let phi = TruncatedLieMap::identity(2, 2).unwrap();
        let report = verify_theorem(&phi, None);
        let v = report.to_json();
        assert_eq!(v["verdict"]["status"], "certified");
        assert_eq!(v["lambdas"][0], "1");
        assert!(v["sigma"].is_array());
        assert_eq!(v["level_ranks"][0]["dim"], 2);

        let domain = FiltrationBasis::enumerate(2, 1).unwrap();
        let images = vec![partial(2, 1), partial(2, 2), UniDerivation::zero(2)];
        let bad = TruncatedLieMap::new(domain, images).unwrap();
        let w = verify_theorem(&bad, None).to_json();
        assert_eq!(w["verdict"]["status"], "rejected");
        assert_eq!(w["verdict"]["reason"], "not-homomorphism");
        assert!(w["violation"]["left"].is_string());
        let text = verify_theorem(&bad, None).to_string();
        assert!(text.contains("rejected"));
        assert!(text.contains("witness"));
    }
}
