use crate::divergences::LogBase;
use crate::error::{Error, Result};
use crate::quantum::{DepolarizingParams, PriorPair};

use super::{DpParams, HtPrivacyParams, UniformHtPrivacy};

/// Lower bound on the symmetric error of an `(ε, η)`-private channel,
/// `max{p_max - ε min(p_ρ, p_σ)(1 - η) / (2η), 0}` with `ε` in nats.
/// At `η = 0` the bound is taken to be vacuous and 0 is returned.
pub fn gamma_bound(params: HtPrivacyParams, priors: PriorPair) -> f64 {
    let eta = params.eta();
    if eta == 0.0 {
        return 0.0;
    }
    let p_min = priors.p_rho().min(priors.p_sigma());
    (priors.p_max() - params.epsilon() * p_min * (1.0 - eta) / (2.0 * eta)).max(0.0)
}

/// Lower bound on `β_η` under `(ε, δ)`-DP: `base^{-ε}(1 - η - δ)`, floored at 0.
pub fn omega_bound(params: DpParams, eta: f64, base: LogBase) -> f64 {
    (base.pow(-params.epsilon()) * (1.0 - eta - params.delta())).max(0.0)
}

/// Lower bound on the symmetric error under `(ε, δ)`-DP:
/// `max{p_max + max(p_ρ, p_σ)(1 - base^ε - δ), 0}`.
pub fn theta_bound(params: DpParams, priors: PriorPair, base: LogBase) -> f64 {
    let p_big = priors.p_rho().max(priors.p_sigma());
    (priors.p_max() + p_big * (1.0 - base.pow(params.epsilon()) - params.delta())).max(0.0)
}

/// `(ε, η)`-privacy to `(ε, min(√(2η), 1))`-DP.
pub fn ht_to_dp(params: HtPrivacyParams) -> DpParams {
    let delta = (2.0 * params.eta()).sqrt().min(1.0);
    DpParams::new(params.epsilon(), delta).expect("epsilon already validated, delta clamped")
}

/// `(ε, 0)`-DP to `(ε, η)`-privacy for every `η`.
pub fn dp_to_ht(params: DpParams) -> Result<UniformHtPrivacy> {
    if params.delta() != 0.0 {
        return Err(Error::DeltaNotZero {
            delta: params.delta(),
        });
    }
    Ok(UniformHtPrivacy {
        epsilon: params.epsilon(),
    })
}

/// `δ = max{0, (1 - base^ε) p / D + (1 - p) d}` for the depolarizing channel
/// on the neighbourhood `T(ρ, σ) ≤ d`.
pub fn depolarizing_dp_delta(params: &DepolarizingParams, d: f64, epsilon: f64, base: LogBase) -> Result<f64> {
    check_radius(d)?;
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::OutOfRange {
            name: "epsilon",
            value: epsilon,
            range: "[0, inf)",
        });
    }
    let p = params.p();
    let dim = params.dim() as f64;
    Ok(((1.0 - base.pow(epsilon)) * p / dim + (1.0 - p) * d).max(0.0))
}

/// `ε = log_base(1 + (1 - p) D d / p)`, the budget at which
/// [`depolarizing_dp_delta`] vanishes.
pub fn depolarizing_ht_epsilon(params: &DepolarizingParams, d: f64, base: LogBase) -> Result<UniformHtPrivacy> {
    check_radius(d)?;
    let p = params.p();
    if p == 0.0 {
        return Err(Error::ZeroMixing);
    }
    let epsilon = base.log(1.0 + (1.0 - p) * params.dim() as f64 * d / p);
    Ok(UniformHtPrivacy { epsilon })
}

fn check_radius(d: f64) -> Result<()> {
    if d > 0.0 && d <= 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "d",
            value: d,
            range: "(0, 1]",
        })
    }
}
