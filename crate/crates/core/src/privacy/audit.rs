use rayon::prelude::*;

use crate::divergences::LogBase;
use crate::error::{Error, Result};
use crate::quantum::{check_dims, Channel};
use crate::tol;

use super::bounds::{depolarizing_dp_delta, depolarizing_ht_epsilon};
use super::search::{search_samples, worst, Objective, SearchOutcome};
use super::{
    AuditMode, AuditParams, AuditReport, AuditStatus, DpParams, HtPrivacyParams, NeighborhoodRelation, PairValue,
    WorstPair,
};

/// Audits `D^η(E(ρ) ‖ E(σ)) ≤ ε` over the relation.
///
/// Explicit relations are evaluated exhaustively. Trace-distance relations
/// are searched with `search_budget` refined samples. A depolarizing channel
/// on a trace-distance relation is certified when the budget covers the
/// closed-form `ε` plus `log(1/(1 - η))`, the price of the type-I allowance
/// that every pair, including `ρ ∼ ρ`, pays.
pub fn audit_ht(
    channel: &Channel,
    rel: &NeighborhoodRelation,
    eta: f64,
    epsilon_budget: f64,
    base: LogBase,
    search_budget: usize,
    seed: u64,
) -> Result<AuditReport> {
    let params = HtPrivacyParams::new(epsilon_budget, eta)?;
    let objective = Objective::DEta { eta, base };
    let mut report = run(channel, rel, objective, AuditParams::Ht(params), base, search_budget, seed)?;

    if let (Some(dep), NeighborhoodRelation::TraceDistance { d }) = (channel.depolarizing(), rel) {
        if dep.p() > 0.0 && eta < 1.0 {
            let closed = depolarizing_ht_epsilon(dep, *d, base)?.epsilon;
            let needed = closed - base.log(1.0 - eta);
            report.notes.push(format!(
                "closed form: D^eta <= {closed:.9} + log(1/(1-eta)) = {needed:.9} ({} base, kappa = d = {d})",
                base.name()
            ));
            if report.status != AuditStatus::Falsified && epsilon_budget >= needed - tol::PROBABILITY_SLACK {
                report.status = AuditStatus::CertifiedClosedForm;
            }
        }
    }
    Ok(report)
}

/// Audits `(ε, δ)`-differential privacy. Each pair contributes the exact
/// `δ_pair = tr(E(ρ) - base^ε E(σ))_+`, the supremum over all effects.
pub fn audit_dp(
    channel: &Channel,
    rel: &NeighborhoodRelation,
    params: DpParams,
    base: LogBase,
    search_budget: usize,
    seed: u64,
) -> Result<AuditReport> {
    let objective = Objective::HockeyStick {
        epsilon: params.epsilon(),
        base,
    };
    let mut report = run(channel, rel, objective, AuditParams::Dp(params), base, search_budget, seed)?;

    if let (Some(dep), NeighborhoodRelation::TraceDistance { d }) = (channel.depolarizing(), rel) {
        let closed = depolarizing_dp_delta(dep, *d, params.epsilon(), base)?;
        report.notes.push(format!(
            "closed form: delta = {closed:.9} ({} base, kappa = d = {d})",
            base.name()
        ));
        if report.status != AuditStatus::Falsified && closed <= params.delta() + tol::PROBABILITY_SLACK {
            report.status = AuditStatus::CertifiedClosedForm;
        }
    }
    Ok(report)
}

/// Whether an `(ε, η)` result implies `(ε', η')` without recomputation:
/// `ε' ≥ ε` and `η' ≥ η`.
pub fn check_monotone_relaxation(report: &AuditReport, params2: HtPrivacyParams) -> Result<bool> {
    let AuditParams::Ht(params) = report.params else {
        return Err(Error::WrongMode { expected: "ht" });
    };
    Ok(params2.eta() >= params.eta() && params2.epsilon() >= params.epsilon())
}

fn run(
    channel: &Channel,
    rel: &NeighborhoodRelation,
    objective: Objective,
    params: AuditParams,
    base: LogBase,
    search_budget: usize,
    seed: u64,
) -> Result<AuditReport> {
    let outcomes = match rel {
        NeighborhoodRelation::TraceDistance { d } => search_samples(channel, *d, objective, search_budget, seed)?,
        NeighborhoodRelation::ExplicitPairs(pairs) => {
            if pairs.is_empty() {
                return Err(Error::EmptyRelation);
            }
            for pair in pairs {
                check_dims(channel.dim(), pair.rho.dim())?;
            }
            pairs
                .par_iter()
                .enumerate()
                .map(|(index, pair)| {
                    let (value, dual_gap) = objective.evaluate(channel, &pair.rho, &pair.sigma)?;
                    Ok(SearchOutcome {
                        index,
                        rho: pair.rho.clone(),
                        sigma: pair.sigma.clone(),
                        value,
                        dual_gap,
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
    };

    let per_pair = outcomes
        .iter()
        .map(|o| PairValue {
            index: o.index,
            value: o.value,
            dual_gap: o.dual_gap,
        })
        .collect();
    let pairs_examined = outcomes.len();
    let worst = worst(outcomes.into_iter()).ok_or(Error::EmptyRelation)?;

    let (mode, budget) = match params {
        AuditParams::Ht(p) => (AuditMode::Ht, p.epsilon()),
        AuditParams::Dp(p) => (AuditMode::Dp, p.delta()),
    };
    let status = if worst.value > budget + tol::BUDGET {
        AuditStatus::Falsified
    } else {
        AuditStatus::SatisfiedOnPairs
    };
    Ok(AuditReport {
        mode,
        params,
        base,
        per_pair,
        worst_value: worst.value,
        worst_pair: WorstPair {
            index: worst.index,
            rho: worst.rho,
            sigma: worst.sigma,
        },
        status,
        pairs_examined,
        seed,
        notes: Vec::new(),
    })
}
