//! Asymmetric hypothesis testing.
//!
//! Solves
//!
//! ```text
//! β_η(ρ, σ) = min { tr(Qσ) : 0 ⪯ Q ⪯ I, tr(Qρ) ≥ 1 - η }
//! ```
//!
//! through its Lagrange dual
//!
//! ```text
//! g(μ) = μ(1 - η) - tr(μρ - σ)_+ ,   β_η = max_{μ ≥ 0} g(μ).
//! ```
//!
//! `h(μ) = tr(μρ - σ)_+` is convex with (sub)gradient
//! `a(μ) = tr(Π_{>0}(μρ - σ) ρ)`, so the acceptance probability of the
//! likelihood-ratio projector is non-decreasing in `μ`. The optimal
//! multiplier is the point where `a` crosses `1 - η`. We bracket it by
//! doubling, bisect to machine precision and mix the two bracketing
//! projectors so that the constraint is met with equality. At a kink the
//! projectors differ by the kernel of `μρ - σ`, which gives the quantum
//! Neyman-Pearson form `Π_> + x Π_0`.
//!
//! Every solve reports `g` at the final multiplier as an optimality
//! certificate.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, inv_sqrt_on_support, positive_part_trace, support_projector, ComplexMatrix};
use crate::quantum::{check_dims, DensityOperator};
use crate::tol;

use super::{support_overlap, LogBase, TestOperator};

const MAX_BISECTIONS: usize = 200;
const MAX_DOUBLINGS: usize = 64;
/// Predicate slack when comparing acceptance probabilities with `1 - η`.
const ACCEPT_SLACK: f64 = 1e-13;

/// Optimal asymmetric test with its dual certificate.
#[derive(Debug, Clone)]
pub struct AsymmetricTestResult {
    /// Optimal type-II error `β_η`, clipped into `[0, 1]`.
    pub beta: f64,
    /// `-log_base β_η`; `+∞` when `β_η = 0`.
    pub d_eta: f64,
    /// The minimizing effect `M_1 = Q`.
    pub optimal_test: TestOperator,
    /// `g(μ)` for the reported multiplier; never above `beta` in exact arithmetic.
    pub dual_value: f64,
    /// `max(0, beta - dual_value)`.
    pub dual_gap: f64,
    /// Lagrange multiplier `μ` of the acceptance constraint. The likelihood
    /// threshold on `ρ - tσ` is `t = 1/μ`.
    pub multiplier: f64,
    /// Weight `x` put on the kernel part of the test.
    pub mixing_weight: f64,
    /// `tr(Qρ)` of the returned test.
    pub acceptance: f64,
}

impl AsymmetricTestResult {
    pub fn threshold(&self) -> f64 {
        if self.multiplier == 0.0 {
            f64::INFINITY
        } else {
            1.0 / self.multiplier
        }
    }
}

/// `d_eta` field of [`neyman_pearson`].
pub fn d_eta(rho: &DensityOperator, sigma: &DensityOperator, eta: f64, base: LogBase) -> Result<f64> {
    Ok(neyman_pearson(rho, sigma, eta, base)?.d_eta)
}

pub fn neyman_pearson(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    eta: f64,
    base: LogBase,
) -> Result<AsymmetricTestResult> {
    check_dims(rho.dim(), sigma.dim())?;
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::OutOfRange {
            name: "eta",
            value: eta,
            range: "[0, 1]",
        });
    }
    let solution = if eta == 1.0 {
        Solution {
            test: ComplexMatrix::zeros(rho.dim()),
            beta: Some(0.0),
            multiplier: 0.0,
            mixing_weight: 0.0,
            dual_value: 0.0,
        }
    } else if eta == 0.0 {
        solve_exact_acceptance(rho, sigma)?
    } else if let Some(s) = solve_outside_support(rho, sigma, eta)? {
        s
    } else {
        solve_by_bisection(rho, sigma, eta)?
    };
    finish(rho, sigma, eta, base, solution)
}

struct Solution {
    test: ComplexMatrix,
    /// Exact value when known structurally; otherwise `tr(Qσ)` is used.
    beta: Option<f64>,
    multiplier: f64,
    mixing_weight: f64,
    dual_value: f64,
}

fn finish(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    eta: f64,
    base: LogBase,
    s: Solution,
) -> Result<AsymmetricTestResult> {
    let acceptance = s.test.expectation(rho.matrix());
    let violation = (1.0 - eta) - acceptance;
    if violation > tol::CONSTRAINT {
        return Err(Error::InfeasibleTolerance { violation });
    }
    let raw_beta = s.beta.unwrap_or_else(|| s.test.expectation(sigma.matrix()));
    let beta = clip_probability(raw_beta);
    let d_eta = if beta == 0.0 {
        f64::INFINITY
    } else {
        (-base.log(beta)).max(0.0)
    };
    Ok(AsymmetricTestResult {
        beta,
        d_eta,
        optimal_test: TestOperator::from_trusted(s.test),
        dual_value: s.dual_value,
        dual_gap: (beta - s.dual_value).max(0.0),
        multiplier: s.multiplier,
        mixing_weight: s.mixing_weight,
        acceptance,
    })
}

fn clip_probability(p: f64) -> f64 {
    if p < tol::PROBABILITY_SLACK && p > -tol::PROBABILITY_SLACK {
        0.0
    } else {
        p.clamp(0.0, 1.0)
    }
}

/// `μ(1 - η) - tr(μρ - σ)_+`.
fn dual_objective(rho: &DensityOperator, sigma: &DensityOperator, eta: f64, mu: f64) -> Result<f64> {
    let x = rho.matrix().scale(mu).add_scaled(-1.0, sigma.matrix());
    Ok(mu * (1.0 - eta) - positive_part_trace(&x)?)
}

/// Likelihood-ratio projector `Π_{>0}(μρ - σ)` and its acceptance `tr(Πρ)`.
fn ratio_projector(rho: &DensityOperator, sigma: &DensityOperator, mu: f64) -> Result<(ComplexMatrix, f64)> {
    let x = rho.matrix().scale(mu).add_scaled(-1.0, sigma.matrix());
    let eig = hermitian_eig(&x)?;
    let cutoff = 1e-14 * x.frobenius_norm().max(f64::MIN_POSITIVE);
    let weights = eig.diagonal_of(rho.matrix());
    let acceptance = eig
        .eigenvalues
        .iter()
        .zip(&weights)
        .filter(|(&l, _)| l > cutoff)
        .map(|(_, &w)| w)
        .sum();
    Ok((eig.spectral_projector(|l| l > cutoff), acceptance))
}

/// `η = 0`: the test must act as the identity on `supp ρ`, so `Q = Π_ρ` and
/// `β_0 = tr(Π_ρ σ)`.
fn solve_exact_acceptance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<Solution> {
    let support = support_projector(rho.matrix(), tol::RANK)?;
    let overlap = support_overlap(rho, sigma)?;
    let beta = if overlap <= tol::RANK { 0.0 } else { overlap };
    let full_rank = support.frobenius_distance(&ComplexMatrix::identity(rho.dim())) < 1e-9;

    let (multiplier, dual_value) = if beta == 0.0 {
        (0.0, 0.0)
    } else if full_rank {
        // μρ - σ ⪰ 0 exactly from μ* = λ_max(ρ^{-1/2} σ ρ^{-1/2}) on, where g(μ*) = 1.
        let b = inv_sqrt_on_support(rho.matrix(), tol::RANK)?;
        let mu = hermitian_eig(&b.matmul(sigma.matrix()).matmul(&b))?.max_eigenvalue();
        (mu, dual_objective(rho, sigma, 0.0, mu)?)
    } else {
        // The supremum is approached only as μ → ∞; report the best of a
        // geometric scan using g(μ) = 1 - tr(μρ - σ)_-.
        let mut best = (0.0, 0.0);
        for k in 0..=8 {
            let mu = 10f64.powi(k);
            let x = sigma.matrix().add_scaled(-mu, rho.matrix());
            let g = 1.0 - positive_part_trace(&x)?;
            if g > best.1 {
                best = (mu, g);
            }
        }
        best
    };
    Ok(Solution {
        test: support,
        beta: Some(beta),
        multiplier,
        mixing_weight: 0.0,
        dual_value,
    })
}

/// `β = 0` sector: enough of `ρ` lives in `ker σ` to meet the constraint
/// there, which corresponds to `μ = 0`.
fn solve_outside_support(rho: &DensityOperator, sigma: &DensityOperator, eta: f64) -> Result<Option<Solution>> {
    let target = 1.0 - eta;
    let kernel = ComplexMatrix::identity(rho.dim())
        .add_scaled(-1.0, &support_projector(sigma.matrix(), tol::RANK)?);
    let available = kernel.expectation(rho.matrix());
    if available < target - ACCEPT_SLACK {
        return Ok(None);
    }
    let x = (target / available).min(1.0);
    Ok(Some(Solution {
        test: kernel.scale(x),
        beta: Some(0.0),
        multiplier: 0.0,
        mixing_weight: x,
        dual_value: 0.0,
    }))
}

fn solve_by_bisection(rho: &DensityOperator, sigma: &DensityOperator, eta: f64) -> Result<Solution> {
    let target = 1.0 - eta;
    let accepts = |a: f64| a >= target - ACCEPT_SLACK;

    let mut lo = 0.0;
    let (mut lo_proj, mut lo_acc) = (ComplexMatrix::zeros(rho.dim()), 0.0);
    let mut hi = 1.0;
    let (mut hi_proj, mut hi_acc) = ratio_projector(rho, sigma, hi)?;
    let mut doublings = 0;
    while !accepts(hi_acc) {
        if doublings == MAX_DOUBLINGS {
            // Only reachable for η within rounding of 0 on a singular ρ:
            // close the bracket with the support projector, which accepts fully.
            hi_proj = support_projector(rho.matrix(), tol::RANK)?;
            hi_acc = hi_proj.expectation(rho.matrix());
            break;
        }
        lo = hi;
        lo_proj = hi_proj;
        lo_acc = hi_acc;
        hi *= 2.0;
        (hi_proj, hi_acc) = ratio_projector(rho, sigma, hi)?;
        doublings += 1;
    }

    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-15 * hi {
            break;
        }
        let (proj, acc) = ratio_projector(rho, sigma, mid)?;
        if accepts(acc) {
            hi = mid;
            hi_proj = proj;
            hi_acc = acc;
        } else {
            lo = mid;
            lo_proj = proj;
            lo_acc = acc;
        }
    }

    let weight = if hi_acc > lo_acc {
        ((target - lo_acc) / (hi_acc - lo_acc)).clamp(0.0, 1.0)
    } else {
        1.0
    };
    let test = lo_proj.scale(1.0 - weight).add_scaled(weight, &hi_proj);
    let dual_lo = dual_objective(rho, sigma, eta, lo)?;
    let dual_hi = dual_objective(rho, sigma, eta, hi)?;
    let (multiplier, dual_value) = if dual_hi >= dual_lo {
        (hi, dual_hi)
    } else {
        (lo, dual_lo)
    };
    Ok(Solution {
        test,
        beta: None,
        multiplier,
        mixing_weight: weight,
        dual_value,
    })
}
