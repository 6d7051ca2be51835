//! κ-dependent scalar data of Weyl modules: top L₀ eigenvalue, the candidate
//! singular pairs `(μ, n)` solving `|μ|² + 2(λ, μ) = 2κn`, the constant
//! `C = min_μ |μ|² + 2(λ, μ)`, membership in `X_λ` and `Y_λ`, the δ length
//! bound and the irreducibility certificate.
//!
//! Throughout, λ is the (real rational) infinitesimal-character parameter; for
//! `M = L(ν)` it is `ν + ρ`.

use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_rep::length_of;
use crate::graded_sym::weyl_level_decompositions;
use crate::rational::{q, ComplexRational, Rational};
use crate::root_system::{enumerate_root_lattice_ball, floor_rational, RootVector, Weight};

/// A solution `(μ, n)` of `|μ|² + 2(λ, μ) = 2κn`, with the L₀ eigenvalue
/// `ξ = (|λ|² − |ρ|²)/2κ + n` of the level it lives on.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidatePair {
    pub mu: RootVector,
    pub n: u64,
    pub xi: ComplexRational,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    CertifiedIrreducible,
    Inconclusive,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictReason {
    /// `Re κ < C/2` with `C < 0`.
    KostantBound,
    /// No pair `(μ, n)` with `n > 0` exists.
    OutsideXLambda,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IrreducibilityVerdict {
    pub status: VerdictStatus,
    pub reason: Option<VerdictReason>,
    /// Pairs with `n > 0`; empty when certified.
    pub candidates: Vec<CandidatePair>,
    pub bound_c: Rational,
    pub lambda: Weight,
}

impl IrreducibilityVerdict {
    pub fn is_certified(&self) -> bool {
        self.status == VerdictStatus::CertifiedIrreducible
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaBound {
    pub value: u64,
    /// `true` when every level admitting a pair lies within the scanned range.
    pub complete: bool,
    /// `(n, length of M ⊗ S(ad)^n)` for each matched level.
    pub levels: Vec<(u64, u64)>,
}

fn reject_nonnegative_real(kappa: &ComplexRational) -> Result<()> {
    if kappa.is_nonnegative_real() {
        Err(Error::NonNegativeRealKappa(kappa.to_string()))
    } else {
        Ok(())
    }
}

/// λ = ν + ρ for `M = L(ν)`.
pub fn shifted_parameter(m_hw: &Weight) -> Weight {
    m_hw.add(&m_hw.algebra.rho()).expect("same algebra")
}

/// `a / 2κ`, the L₀ eigenvalue on the top level.
pub fn top_l0_eigenvalue(a: &Rational, kappa: &ComplexRational) -> Result<ComplexRational> {
    if kappa.is_zero() {
        return Err(Error::CriticalLevel);
    }
    let two_kappa = kappa.scale(&q(2));
    Ok(&ComplexRational::real(a.clone()) / &two_kappa)
}

/// `|μ|² + 2(λ, μ)`.
pub fn pair_value(lambda: &Weight, mu: &RootVector) -> Rational {
    mu.norm_sq() + q(2) * lambda.algebra.form_weight_root(&lambda.coords, &mu.coords)
}

/// `C = min_{μ ∈ Q} |μ|² + 2(λ, μ)`. The minimum is attained in the
/// sublevel set `{≤ 0}` since μ = 0 gives 0.
pub fn kostant_bound_c(lambda: &Weight) -> Rational {
    enumerate_root_lattice_ball(&lambda.algebra, &Rational::zero(), lambda)
        .iter()
        .map(|mu| pair_value(lambda, mu))
        .min()
        .expect("μ = 0 always lies in the sublevel set")
}

/// Largest `n` for which a pair `(μ, n)` can exist.
pub fn exhaustive_level_bound(lambda: &Weight, kappa: &ComplexRational) -> Result<u64> {
    reject_nonnegative_real(kappa)?;
    if !kappa.is_real() {
        return Ok(0);
    }
    // |μ|² + 2(λ,μ) = 2κn ≥ C  ⇒  n ≤ C / 2κ
    let c = kostant_bound_c(lambda);
    let bound = c / (q(2) * &kappa.re);
    Ok(floor_rational(&bound).max(0) as u64)
}

/// Every pair `(μ, n)` with `0 ≤ n ≤ n_max`, sorted by `n` then `μ`.
pub fn candidate_pairs(lambda: &Weight, kappa: &ComplexRational, n_max: u64) -> Result<Vec<CandidatePair>> {
    reject_nonnegative_real(kappa)?;
    let alg = &lambda.algebra;
    let two_kappa = kappa.scale(&q(2));
    let top = (&ComplexRational::real(lambda.norm_sq() - alg.rho_norm_sq())) / &two_kappa;
    let mut out = Vec::new();
    // every pair has Re(2κn) ≤ 0 and value 2κn real, so it lies in {value ≤ 0}
    for mu in enumerate_root_lattice_ball(alg, &Rational::zero(), lambda) {
        let v = pair_value(lambda, &mu);
        let n = if v.is_zero() {
            Some(0u64)
        } else if kappa.is_real() {
            let n = &v / (q(2) * &kappa.re);
            (n.is_integer() && !n.is_negative()).then(|| n.to_integer().to_u64().unwrap())
        } else {
            None
        };
        if let Some(n) = n.filter(|&n| n <= n_max) {
            let xi = &top + &ComplexRational::from_int(n as i64);
            out.push(CandidatePair { mu, n, xi });
        }
    }
    out.sort_by(|a, b| a.n.cmp(&b.n).then_with(|| a.mu.coords.cmp(&b.mu.coords)));
    Ok(out)
}

/// Whether κ lies in `X_λ = {(|μ|² + 2(λ, μ))/2n : μ ∈ Q, n > 0}`.
pub fn in_x_lambda(kappa: &ComplexRational, lambda: &Weight) -> Result<bool> {
    reject_nonnegative_real(kappa)?;
    if !kappa.is_real() {
        return Ok(false);
    }
    let bound = exhaustive_level_bound(lambda, kappa)?;
    Ok(candidate_pairs(lambda, kappa, bound)?.iter().any(|p| p.n > 0))
}

/// Whether κ lies in `Y_λ = ℚ + Σ ℚ(λ, α_i)`. For rational λ this is ℚ, so
/// the answer is "κ is real" (κ is rational by construction).
pub fn in_y_lambda(kappa: &ComplexRational, _lambda: &Weight) -> bool {
    kappa.is_real()
}

/// Sum of `l(M ⊗ S(ad)^n)` over the distinct levels `n ≤ n_max` that admit a
/// pair; `complete` certifies that no level beyond `n_max` admits one.
pub fn delta_upper_bound(m_hw: &Weight, kappa: &ComplexRational, n_max: u64) -> Result<DeltaBound> {
    m_hw.as_dominant_integral()?;
    let lambda = shifted_parameter(m_hw);
    let pairs = candidate_pairs(&lambda, kappa, n_max)?;
    let levels: BTreeSet<u64> = pairs.iter().map(|p| p.n).chain([0]).collect();
    let top = *levels.iter().max().unwrap();
    let decomps = weyl_level_decompositions(m_hw, top as usize)?;
    let levels: Vec<(u64, u64)> = levels.into_iter().map(|n| (n, length_of(&decomps[n as usize]))).collect();
    let complete = exhaustive_level_bound(&lambda, kappa)? <= n_max;
    Ok(DeltaBound { value: levels.iter().map(|l| l.1).sum(), complete, levels })
}

/// Irreducibility test for `Ind(L(ν))_κ`.
///
/// The Kostant-bound reason is reported when `C < 0` and `Re κ < C/2`. When
/// `C = 0` the values `|μ|² + 2(λ, μ)` are all non-negative, so `X_λ ⊆ ℝ≥0`
/// already excludes every admissible κ and the reason is `OutsideXLambda`.
pub fn irreducibility_certificate(m_hw: &Weight, kappa: &ComplexRational) -> Result<IrreducibilityVerdict> {
    m_hw.as_dominant_integral()?;
    reject_nonnegative_real(kappa)?;
    let lambda = shifted_parameter(m_hw);
    let c = kostant_bound_c(&lambda);
    let certified = |reason| IrreducibilityVerdict {
        status: VerdictStatus::CertifiedIrreducible,
        reason: Some(reason),
        candidates: Vec::new(),
        bound_c: c.clone(),
        lambda: lambda.clone(),
    };
    if c.is_negative() && kappa.re < &c / q(2) {
        return Ok(certified(VerdictReason::KostantBound));
    }
    if !in_x_lambda(kappa, &lambda)? {
        return Ok(certified(VerdictReason::OutsideXLambda));
    }
    let bound = exhaustive_level_bound(&lambda, kappa)?;
    let candidates = candidate_pairs(&lambda, kappa, bound)?.into_iter().filter(|p| p.n > 0).collect();
    Ok(IrreducibilityVerdict {
        status: VerdictStatus::Inconclusive,
        reason: None,
        candidates,
        bound_c: c,
        lambda,
    })
}

impl std::fmt::Display for CandidatePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(mu = {:?}, n = {}, xi = {})", self.mu.coords, self.n, self.xi)
    }
}

/// `|λ + μ|² − |ρ|²` over `2κ`, the L₀ eigenvalue attached to μ.
pub fn kostant_eigenvalue(lambda: &Weight, mu: &RootVector, kappa: &ComplexRational) -> Result<ComplexRational> {
    let shifted = lambda.add_root(mu);
    top_l0_eigenvalue(&(shifted.norm_sq() - lambda.algebra.rho_norm_sq()), kappa)
}
