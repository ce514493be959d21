//! Distinguishability measures between density operators.
//!
//! Extended reals are plain `f64` values where `f64::INFINITY` is a genuine
//! result (disjoint supports), never a sentinel.

mod neyman_pearson;

pub use neyman_pearson::{d_eta, neyman_pearson, AsymmetricTestResult};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, inv_sqrt_on_support, positive_part_trace, support_projector, trace_norm,
    ComplexMatrix,
};
use crate::quantum::{check_dims, DensityOperator, PriorPair};
use crate::tol;

/// Logarithm base used by one computation for every divergence, entropy and
/// exponential.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    Two,
    #[default]
    Natural,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::Natural => x.ln(),
        }
    }

    /// `base^x`.
    pub fn pow(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.exp2(),
            LogBase::Natural => x.exp(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LogBase::Two => "two",
            LogBase::Natural => "natural",
        }
    }
}

impl std::fmt::Display for LogBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for LogBase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "two" | "2" => Ok(LogBase::Two),
            "natural" | "e" => Ok(LogBase::Natural),
            other => Err(format!("unknown log base `{other}` (expected `two` or `natural`)")),
        }
    }
}

/// Hermitian effect `0 ⪯ Q ⪯ I`.
#[derive(Debug, Clone, PartialEq)]
pub struct TestOperator {
    matrix: ComplexMatrix,
}

impl TestOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eig(&matrix)?;
        if eig.min_eigenvalue() < -tol::TEST_SPECTRUM {
            return Err(Error::OutOfRange {
                name: "test eigenvalue",
                value: eig.min_eigenvalue(),
                range: "[0, 1]",
            });
        }
        if eig.max_eigenvalue() > 1.0 + tol::TEST_SPECTRUM {
            return Err(Error::OutOfRange {
                name: "test eigenvalue",
                value: eig.max_eigenvalue(),
                range: "[0, 1]",
            });
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
        })
    }

    /// For operators that are effects by construction.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `tr(Q ρ)`.
    pub fn probability(&self, rho: &DensityOperator) -> f64 {
        self.matrix.expectation(rho.matrix())
    }

    /// `I - Q`.
    pub fn complement(&self) -> Self {
        Self {
            matrix: ComplexMatrix::identity(self.matrix.dim()).add_scaled(-1.0, &self.matrix),
        }
    }
}

/// `½ |ρ - σ|_1`.
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    check_dims(rho.dim(), sigma.dim())?;
    let t = 0.5 * trace_norm(&(rho.matrix() - sigma.matrix()))?;
    Ok(t.clamp(0.0, 1.0))
}

/// Outcome of symmetric (Bayesian) discrimination.
#[derive(Debug, Clone)]
pub struct SymmetricTestResult {
    /// Minimal prior-weighted error `½(1 - |p_ρ ρ - p_σ σ|_1)`.
    pub p_err: f64,
    /// Error of blind guessing, `½(1 - |p_ρ - p_σ|)`.
    pub p_max: f64,
    /// Projector onto the positive eigenspace of `p_ρ ρ - p_σ σ`; outcome
    /// `Λ` means "guess ρ".
    pub optimal_test: TestOperator,
    /// `p_ρ tr((I - Λ) ρ) + p_σ tr(Λ σ)` for the constructed test.
    pub achieved_error: f64,
}

/// Optimal symmetric test and its error.
pub fn helstrom(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    priors: PriorPair,
) -> Result<SymmetricTestResult> {
    check_dims(rho.dim(), sigma.dim())?;
    let (p_rho, p_sigma) = (priors.p_rho(), priors.p_sigma());
    let diff = rho.matrix().scale(p_rho).add_scaled(-p_sigma, sigma.matrix());
    let eig = hermitian_eig(&diff)?;
    let norm: f64 = eig.eigenvalues.iter().map(|l| l.abs()).sum();
    let p_err = (0.5 * (1.0 - norm)).clamp(0.0, 1.0);
    let optimal_test = TestOperator::from_trusted(eig.spectral_projector(|l| l > 0.0));
    let achieved_error = p_rho * (1.0 - optimal_test.probability(rho))
        + p_sigma * optimal_test.probability(sigma);
    Ok(SymmetricTestResult {
        p_err,
        p_max: priors.p_max(),
        optimal_test,
        achieved_error,
    })
}

/// `tr(ρ Π_ker σ)`, the weight of `ρ` outside the support of `σ`.
fn weight_outside_support(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    let support = support_projector(sigma.matrix(), tol::RANK)?;
    Ok((1.0 - support.expectation(rho.matrix())).max(0.0))
}

/// Umegaki relative entropy `tr(ρ (log ρ - log σ))`; `+∞` when `ρ` has weight
/// outside the support of `σ`.
pub fn relative_entropy(rho: &DensityOperator, sigma: &DensityOperator, base: LogBase) -> Result<f64> {
    check_dims(rho.dim(), sigma.dim())?;
    if weight_outside_support(rho, sigma)? > tol::RANK {
        return Ok(f64::INFINITY);
    }
    let rho_eig = rho.eigen();
    let neg_entropy: f64 = rho_eig
        .eigenvalues
        .iter()
        .filter(|&&r| r > 0.0)
        .map(|&r| r * r.ln())
        .sum();

    let sigma_eig = sigma.eigen();
    let cutoff = tol::RANK * sigma_eig.max_eigenvalue();
    let weights = sigma_eig.diagonal_of(rho.matrix());
    let cross: f64 = sigma_eig
        .eigenvalues
        .iter()
        .zip(&weights)
        .filter(|(&s, _)| s > cutoff)
        .map(|(&s, &w)| w * s.ln())
        .sum();

    let nats = (neg_entropy - cross).max(0.0);
    Ok(match base {
        LogBase::Natural => nats,
        LogBase::Two => nats / std::f64::consts::LN_2,
    })
}

/// `-υ log υ - (1-υ) log(1-υ)` with `0 log 0 = 0`.
pub fn binary_entropy(upsilon: f64, base: LogBase) -> Result<f64> {
    if !(0.0..=1.0).contains(&upsilon) {
        return Err(Error::OutOfRange {
            name: "upsilon",
            value: upsilon,
            range: "[0, 1]",
        });
    }
    let term = |x: f64| if x > 0.0 { -x * base.log(x) } else { 0.0 };
    Ok(term(upsilon) + term(1.0 - upsilon))
}

/// Max-relative entropy `log λ_max(σ^{-1/2} ρ σ^{-1/2})`; `+∞` when `ρ` is not
/// supported inside `σ`.
pub fn d_max(rho: &DensityOperator, sigma: &DensityOperator, base: LogBase) -> Result<f64> {
    check_dims(rho.dim(), sigma.dim())?;
    if weight_outside_support(rho, sigma)? > tol::RANK {
        return Ok(f64::INFINITY);
    }
    let b = inv_sqrt_on_support(sigma.matrix(), tol::RANK)?;
    let sandwiched = b.matmul(rho.matrix()).matmul(&b);
    let lambda = hermitian_eig(&sandwiched)?.max_eigenvalue();
    Ok(base.log(lambda).max(0.0))
}

/// `-log tr(Π_ρ σ)` with `Π_ρ` the support projector of `ρ`.
pub fn d_zero(rho: &DensityOperator, sigma: &DensityOperator, base: LogBase) -> Result<f64> {
    check_dims(rho.dim(), sigma.dim())?;
    let overlap = support_overlap(rho, sigma)?;
    if overlap <= tol::RANK {
        return Ok(f64::INFINITY);
    }
    Ok((-base.log(overlap)).max(0.0))
}

/// `tr(Π_ρ σ)` clipped to `[0, 1]`.
pub(crate) fn support_overlap(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    let support = support_projector(rho.matrix(), tol::RANK)?;
    Ok(support.expectation(sigma.matrix()).clamp(0.0, 1.0))
}

/// Hockey-stick divergence `tr(ρ - γσ)_+ = sup_{0⪯M⪯I} tr(M(ρ - γσ))`.
///
/// `γ = +∞` returns the limit `tr(ρ Π_ker σ)`.
pub fn hockey_stick(rho: &DensityOperator, sigma: &DensityOperator, gamma: f64) -> Result<f64> {
    check_dims(rho.dim(), sigma.dim())?;
    if gamma.is_nan() || gamma < 0.0 {
        return Err(Error::OutOfRange {
            name: "gamma",
            value: gamma,
            range: "[0, inf]",
        });
    }
    if gamma.is_infinite() {
        return weight_outside_support(rho, sigma);
    }
    positive_part_trace(&rho.matrix().add_scaled(-gamma, sigma.matrix()))
}
