use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::divergences::{hockey_stick, neyman_pearson, trace_distance, LogBase};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::quantum::{random_density_with, Channel, DensityOperator};

const ASCENT_STEPS: usize = 20;

/// Quantity maximized over neighbouring pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Objective {
    /// `D^η(E(ρ) ‖ E(σ))`.
    DEta { eta: f64, base: LogBase },
    /// `tr(E(ρ) - base^ε E(σ))_+`.
    HockeyStick { epsilon: f64, base: LogBase },
}

impl Objective {
    /// Value on the channel outputs, plus the duality gap when an
    /// optimization was involved.
    pub fn evaluate(&self, channel: &Channel, rho: &DensityOperator, sigma: &DensityOperator) -> Result<(f64, Option<f64>)> {
        let out_rho = channel.apply(rho)?;
        let out_sigma = channel.apply(sigma)?;
        match *self {
            Objective::DEta { eta, base } => {
                let r = neyman_pearson(&out_rho, &out_sigma, eta, base)?;
                Ok((r.d_eta, Some(r.dual_gap)))
            }
            Objective::HockeyStick { epsilon, base } => {
                Ok((hockey_stick(&out_rho, &out_sigma, base.pow(epsilon))?, None))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub index: usize,
    pub rho: DensityOperator,
    pub sigma: DensityOperator,
    pub value: f64,
    pub dual_gap: Option<f64>,
}

/// Best-effort maximization of `objective` over pairs with `T(ρ, σ) ≤ d`.
/// Returns the worst pair found; ties go to the lowest sample index.
pub fn falsify_search(
    channel: &Channel,
    d: f64,
    objective: Objective,
    budget: usize,
    seed: u64,
) -> Result<SearchOutcome> {
    let samples = search_samples(channel, d, objective, budget, seed)?;
    Ok(worst(samples.into_iter()).expect("budget is at least one"))
}

/// Every refined sample, in index order.
pub(crate) fn search_samples(
    channel: &Channel,
    d: f64,
    objective: Objective,
    budget: usize,
    seed: u64,
) -> Result<Vec<SearchOutcome>> {
    if budget == 0 {
        return Err(Error::OutOfRange {
            name: "search_budget",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    if !(d > 0.0 && d <= 1.0) {
        return Err(Error::OutOfRange {
            name: "d",
            value: d,
            range: "(0, 1]",
        });
    }
    (0..budget)
        .into_par_iter()
        .map(|index| refine_sample(channel, d, objective, seed, index))
        .collect()
}

/// Max by value, ties broken by lowest index.
pub(crate) fn worst(outcomes: impl Iterator<Item = SearchOutcome>) -> Option<SearchOutcome> {
    outcomes.fold(None, |best: Option<SearchOutcome>, o| match best {
        Some(b) if b.value > o.value || (b.value == o.value && b.index <= o.index) => Some(b),
        _ => Some(o),
    })
}

fn refine_sample(channel: &Channel, d: f64, objective: Objective, seed: u64, index: usize) -> Result<SearchOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let dim = channel.dim();

    let rank = rng.random_range(1..=dim);
    let mut rho = random_density_with(&mut rng, dim, rank)?;
    let reach = d * (1.0 + 3.0 * rng.random::<f64>());
    let mut sigma = shrink_towards(&rho, &project_to_state(&perturb(&mut rng, &rho, reach))?, d)?;
    let (mut value, mut dual_gap) = objective.evaluate(channel, &rho, &sigma)?;

    let mut step = 1.0;
    for _ in 0..ASCENT_STEPS {
        if value == f64::INFINITY {
            break;
        }
        let cand_rho = project_to_state(&perturb(&mut rng, &rho, step * d))?;
        let cand_far = project_to_state(&perturb(&mut rng, &sigma, step * d))?;
        let cand_sigma = shrink_towards(&cand_rho, &cand_far, d)?;
        let (v, gap) = objective.evaluate(channel, &cand_rho, &cand_sigma)?;
        if v > value {
            rho = cand_rho;
            sigma = cand_sigma;
            value = v;
            dual_gap = gap;
        } else {
            step *= 0.5;
        }
    }
    Ok(SearchOutcome {
        index,
        rho,
        sigma,
        value,
        dual_gap,
    })
}

/// `ρ + s H` for a random traceless Hermitian `H` with unit Frobenius norm.
fn perturb(rng: &mut impl Rng, rho: &DensityOperator, s: f64) -> ComplexMatrix {
    let dim = rho.dim();
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let h = g.hermitian_part();
    let shift = h.trace().re / dim as f64;
    let h = h.add_scaled(-shift, &ComplexMatrix::identity(dim));
    let norm = h.frobenius_norm();
    if norm == 0.0 {
        return rho.matrix().clone();
    }
    rho.matrix().add_scaled(s / norm, &h)
}

/// Frobenius-nearest density operator: eigenvalues projected onto the simplex.
fn project_to_state(a: &ComplexMatrix) -> Result<DensityOperator> {
    let eig = hermitian_eig(&a.hermitian_part())?;
    let projected = simplex_projection(&eig.eigenvalues);
    DensityOperator::from_computed(eig.weighted_sum(|k, _| projected[k]))
}

fn simplex_projection(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut shift = 0.0;
    for (k, &x) in sorted.iter().enumerate() {
        cumulative += x;
        let t = (cumulative - 1.0) / (k + 1) as f64;
        if x - t > 0.0 {
            shift = t;
        }
    }
    v.iter().map(|&x| (x - shift).max(0.0)).collect()
}

/// Moves `far` towards `rho` along the segment until `T(ρ, σ) ≤ d`.
fn shrink_towards(rho: &DensityOperator, far: &DensityOperator, d: f64) -> Result<DensityOperator> {
    let t = trace_distance(rho, far)?;
    if t <= d {
        return Ok(far.clone());
    }
    rho.mix(far, d / t * (1.0 - 1e-12))
}
