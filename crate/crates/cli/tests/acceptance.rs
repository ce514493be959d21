//! Acceptance suite. Every criterion runs at its stated tolerance and prints
//! one PASS or FAIL line.
//!
//! Criteria 7 and 8 contain inequalities that do not hold for the
//! hypothesis-testing divergence (see README, "Known failing criteria").
//! They are evaluated as stated and reported as FAIL; the process exits
//! non-zero only when some other criterion fails.

use std::f64::consts::LN_2;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qhtp::divergences::{
    binary_entropy, d_zero, helstrom, hockey_stick, neyman_pearson, relative_entropy, trace_distance, LogBase,
};
use qhtp::linalg::{trace_norm, ComplexMatrix};
use qhtp::privacy::{
    audit_dp, audit_ht, depolarizing_dp_delta, depolarizing_ht_epsilon, gamma_bound, omega_bound, theta_bound,
    DpParams, HtPrivacyParams, NeighborhoodRelation,
};
use qhtp::quantum::{
    random_channel_with, random_density_with, tensor_channel, tensor_state, Channel, DensityOperator,
    DepolarizingParams, KrausChannel, PriorPair,
};

const KNOWN_UNATTAINABLE: [u32; 2] = [7, 8];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn any_rank(rng: &mut ChaCha8Rng, dim: usize) -> DensityOperator {
    let rank = rng.random_range(1..=dim);
    random_density_with(rng, dim, rank).unwrap()
}

fn any_channel(rng: &mut ChaCha8Rng, dim: usize) -> KrausChannel {
    let rank = rng.random_range(1..=dim * dim);
    random_channel_with(rng, dim, rank).unwrap()
}

fn sci(x: f64) -> String {
    format!("{x:.2e}")
}

fn criterion_1() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let etas = [0.0, 0.1, 0.25, 0.5, 0.9];
    let (mut max_gap, mut max_mismatch): (f64, f64) = (0.0, 0.0);
    for k in 0..500 {
        let dim = rng.random_range(2..=4);
        let rho = any_rank(&mut rng, dim);
        let sigma = any_rank(&mut rng, dim);
        let base = if k % 2 == 0 { LogBase::Natural } else { LogBase::Two };
        for &eta in &etas {
            let r = neyman_pearson(&rho, &sigma, eta, base).unwrap();
            max_gap = max_gap.max(r.dual_gap);
            let implied = base.pow(-r.d_eta);
            max_mismatch = max_mismatch.max((implied - r.beta).abs());
        }
    }
    let mut max_self: f64 = 0.0;
    for _ in 0..100 {
        let dim = rng.random_range(2..=4);
        let rho = any_rank(&mut rng, dim);
        for &eta in &etas {
            let r = neyman_pearson(&rho, &rho, eta, LogBase::Natural).unwrap();
            max_self = max_self.max((r.beta - (1.0 - eta)).abs());
        }
    }
    verdict(
        max_gap <= 1e-7 && max_mismatch <= 1e-9 && max_self <= 1e-9,
        format!(
            "solver exactness: max dual gap {}, max |beta - base^-D| {}, max |beta(rho,rho) - (1-eta)| {}",
            sci(max_gap),
            sci(max_mismatch),
            sci(max_self)
        ),
    )
}

/// `min Σ q_i s_i` over `0 ≤ q ≤ 1`, `Σ q_i r_i ≥ target`, by enumerating
/// every vertex: a 0/1 vector with at most one fractional coordinate.
fn diagonal_lp(r: &[f64], s: &[f64], target: f64) -> f64 {
    let n = r.len();
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << n) {
        let chosen = |i: usize| mask & (1 << i) != 0;
        let acc: f64 = (0..n).filter(|&i| chosen(i)).map(|i| r[i]).sum();
        let cost: f64 = (0..n).filter(|&i| chosen(i)).map(|i| s[i]).sum();
        if acc >= target - 1e-12 {
            best = best.min(cost);
        }
        for j in (0..n).filter(|&j| !chosen(j) && r[j] > 0.0) {
            let q = (target - acc) / r[j];
            if (0.0..=1.0 + 1e-12).contains(&q) {
                best = best.min(cost + q.min(1.0) * s[j]);
            }
        }
    }
    best
}

fn random_probabilities(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut p: Vec<f64> = (0..n)
        .map(|_| if rng.random::<f64>() < 0.2 { 0.0 } else { rng.random::<f64>() })
        .collect();
    if p.iter().all(|&x| x == 0.0) {
        p[0] = 1.0;
    }
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= total);
    p
}

fn criterion_2() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut max_err: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.random_range(2..=6);
        let r = random_probabilities(&mut rng, n);
        let s = random_probabilities(&mut rng, n);
        let eta = [0.0, 0.1, 0.25, 0.5, 0.9][rng.random_range(0..5)];
        let rho = DensityOperator::from_probabilities(&r).unwrap();
        let sigma = DensityOperator::from_probabilities(&s).unwrap();
        let solver = neyman_pearson(&rho, &sigma, eta, LogBase::Natural).unwrap().beta;
        let oracle = diagonal_lp(&r, &s, 1.0 - eta);
        max_err = max_err.max((solver - oracle).abs());
    }
    verdict(max_err <= 1e-8, format!("commuting-state LP oracle: max |beta - oracle| {}", sci(max_err)))
}

fn error_of(test: &ComplexMatrix, rho: &DensityOperator, sigma: &DensityOperator, priors: PriorPair) -> f64 {
    priors.p_rho() * (1.0 - test.expectation(rho.matrix())) + priors.p_sigma() * test.expectation(sigma.matrix())
}

fn random_effect(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let u = random_channel_with(rng, dim, 1).unwrap().operators()[0].clone();
    let projective = rng.random::<f64>() < 0.3;
    let spectrum: Vec<f64> = (0..dim)
        .map(|_| {
            let x = rng.random::<f64>();
            if projective {
                x.round()
            } else {
                x
            }
        })
        .collect();
    ComplexMatrix::from_real_diagonal(&spectrum).conjugate_by(&u)
}

fn criterion_3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst_beat, mut worst_achieve): (f64, f64) = (f64::NEG_INFINITY, 0.0);
    for _ in 0..100 {
        let dim = rng.random_range(2..=4);
        let rho = any_rank(&mut rng, dim);
        let sigma = any_rank(&mut rng, dim);
        let tests: Vec<ComplexMatrix> = (0..10_000).map(|_| random_effect(&mut rng, dim)).collect();
        for &p in &[0.3, 0.5, 0.7] {
            let priors = PriorPair::new(p).unwrap();
            let h = helstrom(&rho, &sigma, priors).unwrap();
            let achieved = error_of(h.optimal_test.matrix(), &rho, &sigma, priors);
            worst_achieve = worst_achieve.max((achieved - h.p_err).abs());
            for t in &tests {
                worst_beat = worst_beat.max(h.p_err - error_of(t, &rho, &sigma, priors));
            }
        }
    }
    verdict(
        worst_beat <= 1e-9 && worst_achieve <= 1e-9,
        format!(
            "Helstrom optimality: best sampled improvement {}, |error(optimal test) - p_err| {}",
            sci(worst_beat),
            sci(worst_achieve)
        ),
    )
}

fn criterion_4() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let dim = rng.random_range(2..=4);
        let rho = any_rank(&mut rng, dim);
        let sigma = any_rank(&mut rng, dim);
        let priors = PriorPair::new(rng.random::<f64>()).unwrap();
        let x = rho.matrix().scale(priors.p_rho()).add_scaled(-priors.p_sigma(), sigma.matrix());
        let half_norm = 0.5 * trace_norm(&x).unwrap();
        let best = helstrom(&rho, &sigma, priors).unwrap().optimal_test.matrix().expectation(&x);
        let residual = half_norm - best - (priors.p_sigma() - priors.p_rho()) / 2.0;
        worst = worst.max(residual.abs());
    }
    verdict(worst <= 1e-9, format!("trace-norm lemma identity: max residual {}", sci(worst)))
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = f64::NEG_INFINITY;
    for _ in 0..500 {
        let dim = rng.random_range(2..=4);
        let rho = any_rank(&mut rng, dim);
        let sigma = any_rank(&mut rng, dim);
        let channel = any_channel(&mut rng, dim);
        let (a, b) = (channel.apply(&rho).unwrap(), channel.apply(&sigma).unwrap());
        for &eta in &[0.0, 0.25, 0.5] {
            let before = neyman_pearson(&rho, &sigma, eta, LogBase::Natural).unwrap().d_eta;
            let after = neyman_pearson(&a, &b, eta, LogBase::Natural).unwrap().d_eta;
            if before.is_finite() {
                worst = worst.max(after - before);
            }
        }
    }
    verdict(worst <= 1e-7, format!("data processing: max increase {}", sci(worst)))
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    let mut nontrivial = 0;
    for _ in 0..100 {
        let (k1, k2) = (rng.random_range(1..=2), rng.random_range(1..=2));
        let e1 = random_channel_with(&mut rng, 2, k1).unwrap();
        let e2 = random_channel_with(&mut rng, 2, k2).unwrap();
        let (r1, s1, r2, s2) = (any_rank(&mut rng, 2), any_rank(&mut rng, 2), any_rank(&mut rng, 2), any_rank(&mut rng, 2));
        let joint = tensor_channel(&e1, &e2).unwrap();
        let lhs = d_zero(
            &joint.apply(&tensor_state(&r1, &r2).unwrap()).unwrap(),
            &joint.apply(&tensor_state(&s1, &s2).unwrap()).unwrap(),
            LogBase::Natural,
        )
        .unwrap();
        let rhs = d_zero(&e1.apply(&r1).unwrap(), &e1.apply(&s1).unwrap(), LogBase::Natural).unwrap()
            + d_zero(&e2.apply(&r2).unwrap(), &e2.apply(&s2).unwrap(), LogBase::Natural).unwrap();
        if rhs > 0.0 {
            nontrivial += 1;
        }
        let diff = if lhs == rhs { 0.0 } else { (lhs - rhs).abs() };
        worst = worst.max(diff);
    }
    verdict(
        worst <= 1e-8,
        format!("composition at eta = 0: max |D0(product) - sum| {} ({nontrivial}/100 instances with D0 > 0)", sci(worst)),
    )
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut first = (0, 0, f64::NEG_INFINITY);
    let mut second = (0, 0, f64::NEG_INFINITY);
    for _ in 0..200 {
        let dim = rng.random_range(2..=4);
        let rho = any_rank(&mut rng, dim);
        let sigma = any_rank(&mut rng, dim);
        let channel = any_channel(&mut rng, dim);
        let (a, b) = (channel.apply(&rho).unwrap(), channel.apply(&sigma).unwrap());

        for &eta in &[0.02, 0.125, 0.5] {
            let d = neyman_pearson(&a, &b, eta, LogBase::Natural).unwrap().d_eta;
            let delta = hockey_stick(&a, &b, d.exp()).unwrap();
            let excess = delta - (2.0 * eta).sqrt();
            first.0 += 1;
            if excess > 1e-7 {
                first.1 += 1;
            }
            first.2 = f64::max(first.2, excess);
        }

        // Smallest ε with tr(E(ρ) - e^ε E(σ))_+ = 0 is D_max.
        let epsilon = qhtp::divergences::d_max(&a, &b, LogBase::Natural).unwrap();
        if epsilon.is_finite() && hockey_stick(&a, &b, epsilon.exp()).unwrap() <= 1e-12 {
            for &eta in &[0.0, 0.25, 0.5] {
                let d = neyman_pearson(&a, &b, eta, LogBase::Natural).unwrap().d_eta;
                let excess = d - epsilon;
                second.0 += 1;
                if excess > 1e-7 {
                    second.1 += 1;
                }
                second.2 = f64::max(second.2, excess);
            }
        }
    }
    verdict(
        first.1 == 0 && second.1 == 0,
        format!(
            "HT-to-DP translation: (i) {}/{} checks exceed sqrt(2 eta) (max excess {}); (ii) {}/{} checks exceed epsilon (max excess {})",
            first.1,
            first.0,
            sci(first.2),
            second.1,
            second.0,
            sci(second.2)
        ),
    )
}

fn criterion_8() -> Verdict {
    let channel: Channel = DepolarizingParams::new(0.5, 2).unwrap().into();
    let rel = NeighborhoodRelation::trace_distance(0.5).unwrap();
    let dp = audit_dp(&channel, &rel, DpParams::new(LN_2, 0.0).unwrap(), LogBase::Natural, 200, 8).unwrap();
    let mut pass = dp.worst_value <= 1e-7;
    let mut detail = format!("depolarizing closed forms: dp worst delta {}", sci(dp.worst_value));
    for &eta in &[0.1, 0.5] {
        let ht = audit_ht(&channel, &rel, eta, LN_2, LogBase::Natural, 200, 8).unwrap();
        pass &= ht.worst_value <= LN_2 + 1e-7;
        detail.push_str(&format!("; ht eta={eta} worst D^eta {:.6} vs ln 2 = {:.6}", ht.worst_value, LN_2));
    }
    verdict(pass, detail)
}

/// Neighbour of `rho` at trace distance at most `d`, usually on the boundary.
fn neighbour(rng: &mut ChaCha8Rng, rho: &DensityOperator, d: f64) -> DensityOperator {
    let tau = any_rank(rng, rho.dim());
    let t = trace_distance(rho, &tau).unwrap();
    if t <= d {
        tau
    } else {
        rho.mix(&tau, d / t * (1.0 - 1e-12)).unwrap()
    }
}

fn criterion_9() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let base = LogBase::Natural;
    let (mut omega_worst, mut theta_worst, mut gamma_worst) =
        (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut checks = 0usize;
    for &p in &[0.3, 0.5, 0.8] {
        for dim in [2usize, 3] {
            for &d in &[0.25, 0.5] {
                let params = DepolarizingParams::new(p, dim).unwrap();
                let certified = depolarizing_ht_epsilon(&params, d, base).unwrap().epsilon;
                let epsilons = [0.0, 0.25, 0.5, 1.0, certified];
                for _ in 0..200 {
                    let rho = any_rank(&mut rng, dim);
                    let sigma = neighbour(&mut rng, &rho, d);
                    let (a, b) = (params.apply(&rho).unwrap(), params.apply(&sigma).unwrap());
                    for &eta in &[0.1, 0.5] {
                        let beta = neyman_pearson(&a, &b, eta, base).unwrap().beta;
                        for &eps in &epsilons {
                            let delta = depolarizing_dp_delta(&params, d, eps, base).unwrap();
                            let omega = omega_bound(DpParams::new(eps, delta).unwrap(), eta, base);
                            omega_worst = omega_worst.max(omega - beta);
                            checks += 1;
                        }
                    }
                    for &prior in &[0.3, 0.5, 0.7] {
                        let priors = PriorPair::new(prior).unwrap();
                        let p_err = helstrom(&a, &b, priors).unwrap().p_err;
                        for &eps in &epsilons {
                            let delta = depolarizing_dp_delta(&params, d, eps, base).unwrap();
                            let theta = theta_bound(DpParams::new(eps, delta).unwrap(), priors, base);
                            theta_worst = theta_worst.max(theta - p_err);
                            checks += 1;
                        }
                        for &eta in &[0.1, 0.5] {
                            let gamma = gamma_bound(HtPrivacyParams::new(certified, eta).unwrap(), priors);
                            gamma_worst = gamma_worst.max(gamma - p_err);
                            checks += 1;
                        }
                    }
                }
            }
        }
    }
    verdict(
        omega_worst <= 1e-7 && theta_worst <= 1e-7 && gamma_worst <= 1e-7,
        format!(
            "bound suites over {checks} checks: max violation omega {}, theta {}, gamma {}",
            sci(omega_worst),
            sci(theta_worst),
            sci(gamma_worst)
        ),
    )
}

fn run_csv(args: &[&str]) -> (Vec<String>, Vec<Vec<f64>>) {
    let out = Command::new(env!("CARGO_BIN_EXE_qprivacy")).args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn monotone(rows: &[Vec<f64>]) -> bool {
    rows.windows(2)
        .all(|w| w[0][0] < w[1][0] && w[0][1..].iter().zip(&w[1][1..]).all(|(a, b)| b <= a))
}

fn criterion_10() -> Verdict {
    let (gh, gamma) = run_csv(&["bounds", "gamma", "--p-rho", "0.5", "--eps", "0:3:121"]);
    let (_, gamma_half) = run_csv(&["bounds", "gamma", "--p-rho", "0.5", "--eta", "0.5", "--eps", "0:3:121"]);
    let (_, omega) = run_csv(&["bounds", "omega", "--eta", "0", "--delta", "0", "--eps", "0:3:121"]);
    let (_, omega_fig) = run_csv(&["bounds", "omega", "--eps", "0:3:121"]);
    let (_, theta) = run_csv(&["bounds", "theta", "--p-rho", "0.5", "--eps", "0:3:121"]);

    let gamma_zero = gamma[0][1..].iter().all(|&g| g == 0.5);
    let at_04 = gamma_half.iter().find(|r| (r[0] - 0.4).abs() < 1e-12).map(|r| r[1]);
    let gamma_04 = at_04.is_some_and(|g| (g - 0.4).abs() <= 1e-12);
    let omega_00 = omega[0][1] == 1.0;
    let theta_00 = theta[0][1] == 0.5;
    let curves_monotone = [&gamma, &gamma_half, &omega, &omega_fig, &theta].iter().all(|c| monotone(c));
    verdict(
        gamma_zero && gamma_04 && omega_00 && theta_00 && curves_monotone && gh.len() == 6,
        format!(
            "figure curves: Gamma(0, eta) = 0.5 {gamma_zero}, Gamma(0.4, 0.5) = {:?}, Omega(0,0,0) = {}, Theta(0,0) = {}, monotone {curves_monotone}",
            at_04, omega[0][1], theta[0][1]
        ),
    )
}

fn criterion_11() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut lower, mut upper) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for _ in 0..200 {
        let dim = rng.random_range(2..=4);
        let rho = random_density_with(&mut rng, dim, dim).unwrap();
        let sigma = random_density_with(&mut rng, dim, dim).unwrap();
        let norm = 2.0 * trace_distance(&rho, &sigma).unwrap();
        let s = relative_entropy(&rho, &sigma, LogBase::Natural).unwrap();
        for &eta in &[0.1, 0.5] {
            let d = neyman_pearson(&rho, &sigma, eta, LogBase::Natural).unwrap().d_eta;
            lower = lower.max(eta / (1.0 - eta) * norm - d);
            let hb = binary_entropy(eta, LogBase::Natural).unwrap();
            upper = upper.max(d - (s + hb) / (1.0 - eta));
        }
    }
    verdict(
        lower <= 1e-7 && upper <= 1e-7,
        format!("sandwich bounds: max lower violation {}, max upper violation {}", sci(lower), sci(upper)),
    )
}

fn criterion_12() -> Verdict {
    let dir = std::env::temp_dir().join(format!("qprivacy-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let identity = "[[[1,0],[0,0]],[[0,0],[1,0]]]";
    let ket0 = "[[[1,0],[0,0]],[[0,0],[0,0]]]";
    let ket1 = "[[[0,0],[0,0]],[[0,0],[1,0]]]";
    let mixed = "[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]";
    let doc = |sigma: &str| {
        format!(
            r#"{{"dim": 2, "channel": {{"kind": "kraus", "operators": [{identity}]}}, "pairs": [{{"rho": {ket0}, "sigma": {sigma}}}]}}"#
        )
    };
    let pair_doc = dir.join("doc.json");
    let orth_doc = dir.join("identity-orthogonal.json");
    std::fs::write(&pair_doc, doc(mixed)).unwrap();
    std::fs::write(&orth_doc, doc(ket1)).unwrap();
    let csv = dir.join("g.csv");
    let bin = env!("CARGO_BIN_EXE_qprivacy");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let div = run(&["divergence", "--input", pair_doc.to_str().unwrap(), "--eta", "0.5", "--json"]);
    let report: serde_json::Value = serde_json::from_slice(&div.stdout).unwrap();
    let beta = report["pairs"][0]["beta"].as_f64().unwrap();
    let gap = report["pairs"][0]["dual_gap"].as_f64().unwrap();
    let ok1 = div.status.code() == Some(0) && (beta - 0.25).abs() <= 1e-9 && gap <= 1e-9;

    let audit_args = ["audit", "ht", "--input", orth_doc.to_str().unwrap(), "--eta", "0", "--epsilon", "1", "--json"];
    let audit = run(&audit_args);
    let report: serde_json::Value = serde_json::from_slice(&audit.stdout).unwrap();
    let ok2 = audit.status.code() == Some(1) && report["status"] == "FALSIFIED" && report["worst_value"] == "inf";

    let bounds_args = ["bounds", "gamma", "--p-rho", "0.5", "--eta", "0.5", "--eps", "0:3:121", "--out", csv.to_str().unwrap()];
    let bounds = run(&bounds_args);
    let text = std::fs::read_to_string(&csv).unwrap();
    let ok3 = bounds.status.code() == Some(0) && text.lines().any(|l| l == "0.4,0.4");

    let dep_doc = dir.join("dep.json");
    std::fs::write(
        &dep_doc,
        r#"{"dim": 2, "channel": {"kind": "depolarizing", "p": 0.5}, "neighborhood": {"kind": "trace_distance", "d": 0.5}}"#,
    )
    .unwrap();
    let seeded = ["audit", "ht", "--input", dep_doc.to_str().unwrap(), "--eta", "0.25", "--epsilon", "0.7", "--budget", "50", "--seed", "12", "--json"];
    let identical = run(&seeded).stdout == run(&seeded).stdout
        && run(&audit_args).stdout == audit.stdout
        && {
            let again = dir.join("g2.csv");
            let mut args = bounds_args;
            args[9] = again.to_str().unwrap();
            run(&args);
            std::fs::read(&again).unwrap() == text.as_bytes()
        };
    let _ = std::fs::remove_dir_all(&dir);
    verdict(
        ok1 && ok2 && ok3 && identical,
        format!(
            "CLI contract: divergence beta={beta} exit {:?}; audit exit {:?}; bounds row 0.4,0.4 {ok3}; byte-identical reruns {identical}",
            div.status.code(),
            audit.status.code()
        ),
    )
}

fn main() {
    let criteria: [(u32, fn() -> Verdict); 12] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (id, check) in criteria {
        let v = check();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {tag}  {}", v.detail);
        if v.pass {
            passed += 1;
        } else if !KNOWN_UNATTAINABLE.contains(&id) {
            unexpected.push(id);
        }
    }
    println!("acceptance: {passed}/12 pass");
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
