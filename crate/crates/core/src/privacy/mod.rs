//! Privacy against hypothesis-testing adversaries and quantum differential
//! privacy: neighbourhood relations, audits, bound calculators and parameter
//! translations.

mod audit;
mod bounds;
mod search;

pub use audit::{audit_dp, audit_ht, check_monotone_relaxation};
pub use bounds::{
    depolarizing_dp_delta, depolarizing_ht_epsilon, dp_to_ht, gamma_bound, ht_to_dp, omega_bound, theta_bound,
};
pub use search::{falsify_search, Objective, SearchOutcome};

use serde::{Deserialize, Serialize};

use crate::divergences::LogBase;
use crate::error::{Error, Result};
use crate::quantum::{check_dims, DensityOperator};

/// `ρ ∼ σ`. Explicit lists are closed under swapping and include every
/// self-pair, so the relation is reflexive and symmetric.
#[derive(Debug, Clone, PartialEq)]
pub enum NeighborhoodRelation {
    /// `ρ ∼ σ` iff `T(ρ, σ) ≤ d`.
    TraceDistance { d: f64 },
    ExplicitPairs(Vec<NeighborPair>),
}

/// One ordered pair of an explicit relation.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborPair {
    pub rho: DensityOperator,
    pub sigma: DensityOperator,
    pub origin: PairOrigin,
}

/// Where an explicit pair came from, relative to the user's list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairOrigin {
    Given { index: usize },
    Swapped { index: usize },
    SelfPair,
}

const SAME_STATE: f64 = 1e-12;

impl NeighborhoodRelation {
    pub fn trace_distance(d: f64) -> Result<Self> {
        if !(d > 0.0 && d <= 1.0) {
            return Err(Error::OutOfRange {
                name: "d",
                value: d,
                range: "(0, 1]",
            });
        }
        Ok(Self::TraceDistance { d })
    }

    /// Closes `pairs` under swapping and adds `(ρ, ρ)` for every state that
    /// appears. Given pairs come first, in order.
    pub fn explicit(pairs: Vec<(DensityOperator, DensityOperator)>) -> Result<Self> {
        let first = pairs.first().ok_or(Error::EmptyRelation)?;
        let dim = first.0.dim();
        for (rho, sigma) in &pairs {
            check_dims(dim, rho.dim())?;
            check_dims(dim, sigma.dim())?;
        }

        let mut closed: Vec<NeighborPair> = Vec::new();
        let mut push = |rho: &DensityOperator, sigma: &DensityOperator, origin| {
            let seen = closed.iter().any(|p| same(&p.rho, rho) && same(&p.sigma, sigma));
            if !seen {
                closed.push(NeighborPair {
                    rho: rho.clone(),
                    sigma: sigma.clone(),
                    origin,
                });
            }
        };
        for (index, (rho, sigma)) in pairs.iter().enumerate() {
            push(rho, sigma, PairOrigin::Given { index });
        }
        for (index, (rho, sigma)) in pairs.iter().enumerate() {
            push(sigma, rho, PairOrigin::Swapped { index });
        }
        for (rho, sigma) in &pairs {
            push(rho, rho, PairOrigin::SelfPair);
            push(sigma, sigma, PairOrigin::SelfPair);
        }
        Ok(Self::ExplicitPairs(closed))
    }

    pub fn is_neighbor(&self, rho: &DensityOperator, sigma: &DensityOperator) -> Result<bool> {
        match self {
            Self::TraceDistance { d } => {
                Ok(crate::divergences::trace_distance(rho, sigma)? <= d + crate::tol::BUDGET)
            }
            Self::ExplicitPairs(pairs) => Ok(pairs
                .iter()
                .any(|p| same(&p.rho, rho) && same(&p.sigma, sigma))),
        }
    }
}

fn same(a: &DensityOperator, b: &DensityOperator) -> bool {
    a.dim() == b.dim() && a.matrix().max_abs_diff(b.matrix()) <= SAME_STATE
}

/// `(ε, η)`: every neighbouring pair satisfies `D^η(E(ρ) ‖ E(σ)) ≤ ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HtPrivacyParams {
    epsilon: f64,
    eta: f64,
}

impl HtPrivacyParams {
    pub fn new(epsilon: f64, eta: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        check_unit("eta", eta)?;
        Ok(Self { epsilon, eta })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

/// `(ε, δ)`: `tr(M E(ρ)) ≤ base^ε tr(M E(σ)) + δ` for every effect `M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DpParams {
    epsilon: f64,
    delta: f64,
}

impl DpParams {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        check_unit("delta", delta)?;
        Ok(Self { epsilon, delta })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// A hypothesis-testing guarantee that holds at the same `ε` for every `η`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformHtPrivacy {
    pub epsilon: f64,
}

impl UniformHtPrivacy {
    pub fn at(&self, eta: f64) -> Result<HtPrivacyParams> {
        HtPrivacyParams::new(self.epsilon, eta)
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon >= 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "epsilon",
            value: epsilon,
            range: "[0, inf)",
        })
    }
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            range: "[0, 1]",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditMode {
    Ht,
    Dp,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AuditParams {
    Ht(HtPrivacyParams),
    Dp(DpParams),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AuditStatus {
    CertifiedClosedForm,
    SatisfiedOnPairs,
    Falsified,
}

/// Value of the audited quantity on one examined pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairValue {
    pub index: usize,
    pub value: f64,
    /// Neyman-Pearson duality gap; `None` for the differential-privacy audit,
    /// whose value is exact.
    pub dual_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorstPair {
    pub index: usize,
    pub rho: DensityOperator,
    pub sigma: DensityOperator,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub mode: AuditMode,
    pub params: AuditParams,
    pub base: LogBase,
    pub per_pair: Vec<PairValue>,
    /// Largest `D^η` (ht) or `δ` (dp) seen; `+∞` is possible for ht.
    pub worst_value: f64,
    pub worst_pair: WorstPair,
    pub status: AuditStatus,
    pub pairs_examined: usize,
    pub seed: u64,
    pub notes: Vec<String>,
}

impl AuditReport {
    /// `ε` for ht audits, `δ` for dp audits.
    pub fn budget(&self) -> f64 {
        match self.params {
            AuditParams::Ht(p) => p.epsilon(),
            AuditParams::Dp(p) => p.delta(),
        }
    }

    pub fn max_dual_gap(&self) -> f64 {
        self.per_pair
            .iter()
            .filter_map(|p| p.dual_gap)
            .fold(0.0, f64::max)
    }
}
