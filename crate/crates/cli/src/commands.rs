use std::fs::File;
use std::io::{BufWriter, Write};

use serde_json::{json, Map, Value};

use qhtp::divergences::{
    d_max, d_zero, helstrom, hockey_stick, neyman_pearson, relative_entropy, trace_distance,
};
use qhtp::privacy::{
    audit_dp, audit_ht, depolarizing_dp_delta, depolarizing_ht_epsilon, dp_to_ht, ht_to_dp, AuditParams, AuditReport,
    AuditStatus, DpParams, HtPrivacyParams, NeighborhoodRelation,
};
use qhtp::quantum::{tensor_channel, tensor_state, Channel, PriorPair};
use qhtp::tol;

use crate::input::{matrix_spec, read_input, Validated};
use crate::output::{emit_curve, fmt_g9, num, Bound, CurveSpec};
use crate::{
    AuditCommand, AuditDpArgs, AuditHtArgs, BoundsCommand, CliError, Command, Common, ComposeArgs, CurveCommon,
    DepolarizingArgs, DivergenceArgs, TranslateCommand, EXIT_FALSIFIED, EXIT_NUMERICAL, EXIT_OK,
};

type Outcome = Result<i32, CliError>;

pub(crate) fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Divergence(args) => divergence(args, out),
        Command::Audit(AuditCommand::Ht(args)) => audit_ht_command(args, out),
        Command::Audit(AuditCommand::Dp(args)) => audit_dp_command(args, out),
        Command::Bounds(cmd) => bounds(cmd, out),
        Command::Compose(args) => compose(args, out),
        Command::Translate(cmd) => translate(cmd, out),
    }
}

fn load(path: &std::path::Path, common: &Common) -> Result<Validated, CliError> {
    let mut v = read_input(path)?.validate()?;
    if let Some(base) = common.base {
        v.base = base;
    }
    if let Some(seed) = common.seed {
        v.seed = seed;
    }
    Ok(v)
}

fn unit_flag(name: &str, x: f64) -> Result<(), CliError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--{name} must lie in [0, 1], got {x}")))
    }
}

fn nonnegative_flag(name: &str, x: f64) -> Result<(), CliError> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--{name} must be >= 0, got {x}")))
    }
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}").map_err(CliError::Sink)
}

fn emit_text(out: &mut dyn Write, lines: &[String]) -> Result<(), CliError> {
    for line in lines {
        writeln!(out, "{line}").map_err(CliError::Sink)?;
    }
    Ok(())
}

fn gap_check(max_gap: f64) -> i32 {
    if max_gap > tol::DUAL_GAP {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    }
}

fn divergence(args: DivergenceArgs, out: &mut dyn Write) -> Outcome {
    let v = load(&args.input, &args.common)?;
    unit_flag("eta", args.eta)?;
    if let Some(eps) = args.epsilon {
        nonnegative_flag("epsilon", eps)?;
    }
    let priors = match args.p_rho {
        Some(p) => PriorPair::new(p)?,
        None => v.priors,
    };
    if v.pairs.is_empty() {
        return Err(CliError::validation("pairs", "present", "divergence needs at least one pair"));
    }

    let mut rows = Vec::new();
    let mut text = Vec::new();
    let mut max_gap: f64 = 0.0;
    for (index, (rho, sigma)) in v.pairs.iter().enumerate() {
        let a = v.channel.apply(rho)?;
        let b = v.channel.apply(sigma)?;
        let np = neyman_pearson(&a, &b, args.eta, v.base)?;
        let hel = helstrom(&a, &b, priors)?;
        max_gap = max_gap.max(np.dual_gap);
        let mut row = Map::new();
        row.insert("index".into(), json!(index));
        row.insert("trace_distance".into(), num(trace_distance(&a, &b)?));
        row.insert("p_err".into(), num(hel.p_err));
        row.insert("p_max".into(), num(hel.p_max));
        row.insert("relative_entropy".into(), num(relative_entropy(&a, &b, v.base)?));
        row.insert("d_max".into(), num(d_max(&a, &b, v.base)?));
        row.insert("d_zero".into(), num(d_zero(&a, &b, v.base)?));
        row.insert("beta".into(), num(np.beta));
        row.insert("d_eta".into(), num(np.d_eta));
        row.insert("dual_value".into(), num(np.dual_value));
        row.insert("dual_gap".into(), num(np.dual_gap));
        row.insert("threshold".into(), num(np.threshold()));
        row.insert("mixing_weight".into(), num(np.mixing_weight));
        if let Some(eps) = args.epsilon {
            row.insert("hockey_stick".into(), num(hockey_stick(&a, &b, v.base.pow(eps))?));
        }
        text.push(format!(
            "pair {index}: beta={} d_eta={} dual_gap={} p_err={} trace_distance={}",
            fmt_g9(np.beta),
            fmt_g9(np.d_eta),
            fmt_g9(np.dual_gap),
            fmt_g9(hel.p_err),
            fmt_g9(trace_distance(&a, &b)?)
        ));
        rows.push(Value::Object(row));
    }

    if args.common.json {
        let mut report = json!({
            "command": "divergence",
            "base": v.base.name(),
            "eta": num(args.eta),
            "p_rho": num(priors.p_rho()),
            "pairs": rows,
            "max_dual_gap": num(max_gap),
        });
        if let Some(eps) = args.epsilon {
            report["epsilon"] = num(eps);
        }
        emit_json(out, &report)?;
    } else {
        emit_text(out, &text)?;
    }
    Ok(gap_check(max_gap))
}

fn audit_ht_command(args: AuditHtArgs, out: &mut dyn Write) -> Outcome {
    let v = load(&args.input, &args.common)?;
    unit_flag("eta", args.eta)?;
    nonnegative_flag("epsilon", args.epsilon)?;
    let rel = v.relation()?;
    let report = audit_ht(&v.channel, &rel, args.eta, args.epsilon, v.base, args.budget, v.seed)?;
    finish_audit(&report, &rel, args.budget, args.common.json, out)
}

fn audit_dp_command(args: AuditDpArgs, out: &mut dyn Write) -> Outcome {
    let v = load(&args.input, &args.common)?;
    nonnegative_flag("epsilon", args.epsilon)?;
    unit_flag("delta", args.delta)?;
    let rel = v.relation()?;
    let params = DpParams::new(args.epsilon, args.delta)?;
    let report = audit_dp(&v.channel, &rel, params, v.base, args.budget, v.seed)?;
    finish_audit(&report, &rel, args.budget, args.common.json, out)
}

fn status_name(status: AuditStatus) -> &'static str {
    match status {
        AuditStatus::CertifiedClosedForm => "CERTIFIED_CLOSED_FORM",
        AuditStatus::SatisfiedOnPairs => "SATISFIED_ON_PAIRS",
        AuditStatus::Falsified => "FALSIFIED",
    }
}

fn audit_json(report: &AuditReport, rel: &NeighborhoodRelation, search_budget: usize) -> Value {
    let origins = match rel {
        NeighborhoodRelation::ExplicitPairs(pairs) => Some(pairs.iter().map(|p| p.origin).collect::<Vec<_>>()),
        NeighborhoodRelation::TraceDistance { .. } => None,
    };
    let per_pair: Vec<Value> = report
        .per_pair
        .iter()
        .map(|p| {
            let mut row = Map::new();
            row.insert("index".into(), json!(p.index));
            row.insert("value".into(), num(p.value));
            if let Some(gap) = p.dual_gap {
                row.insert("dual_gap".into(), num(gap));
            }
            if let Some(origins) = &origins {
                row.insert("origin".into(), json!(origins[p.index]));
            }
            Value::Object(row)
        })
        .collect();
    let relation = match rel {
        NeighborhoodRelation::TraceDistance { d } => json!({"kind": "trace_distance", "d": num(*d)}),
        NeighborhoodRelation::ExplicitPairs(pairs) => json!({"kind": "pairs", "closed_size": pairs.len()}),
    };
    let mut worst = json!({
        "index": report.worst_pair.index,
        "rho": matrix_spec(report.worst_pair.rho.matrix()),
        "sigma": matrix_spec(report.worst_pair.sigma.matrix()),
    });
    if let Some(origins) = &origins {
        worst["origin"] = json!(origins[report.worst_pair.index]);
    }
    json!({
        "command": "audit",
        "mode": report.mode,
        "params": params_json(report.params),
        "base": report.base.name(),
        "seed": report.seed,
        "search_budget": search_budget,
        "relation": relation,
        "status": status_name(report.status),
        "worst_value": num(report.worst_value),
        "worst_pair": worst,
        "pairs_examined": report.pairs_examined,
        "per_pair": per_pair,
        "max_dual_gap": num(report.max_dual_gap()),
        "notes": report.notes,
    })
}

fn params_json(params: AuditParams) -> Value {
    match params {
        AuditParams::Ht(p) => json!({"epsilon": num(p.epsilon()), "eta": num(p.eta())}),
        AuditParams::Dp(p) => json!({"epsilon": num(p.epsilon()), "delta": num(p.delta())}),
    }
}

fn finish_audit(
    report: &AuditReport,
    rel: &NeighborhoodRelation,
    search_budget: usize,
    as_json: bool,
    out: &mut dyn Write,
) -> Outcome {
    if as_json {
        emit_json(out, &audit_json(report, rel, search_budget))?;
    } else {
        let quantity = match report.mode {
            qhtp::privacy::AuditMode::Ht => "D^eta",
            qhtp::privacy::AuditMode::Dp => "delta",
        };
        let mut lines = vec![
            format!("status: {}", status_name(report.status)),
            format!(
                "worst {quantity}: {} (budget {}) at pair {}",
                fmt_g9(report.worst_value),
                fmt_g9(report.budget()),
                report.worst_pair.index
            ),
            format!("pairs examined: {} (seed {})", report.pairs_examined, report.seed),
        ];
        lines.extend(report.notes.iter().cloned());
        emit_text(out, &lines)?;
    }
    if report.max_dual_gap() > tol::DUAL_GAP {
        return Ok(EXIT_NUMERICAL);
    }
    Ok(if report.status == AuditStatus::Falsified {
        EXIT_FALSIFIED
    } else {
        EXIT_OK
    })
}

fn bounds(cmd: BoundsCommand, out: &mut dyn Write) -> Outcome {
    let (bound, columns, priors, omega_eta, curve): (Bound, Vec<f64>, f64, f64, CurveCommon) = match cmd {
        BoundsCommand::Gamma(a) => (Bound::Gamma, a.eta, a.p_rho, 0.0, a.curve),
        BoundsCommand::Omega(a) => (Bound::Omega, a.delta, 0.5, a.eta, a.curve),
        BoundsCommand::Theta(a) => (Bound::Theta, a.delta, a.p_rho, 0.0, a.curve),
    };
    unit_flag("eta", omega_eta)?;
    for &c in &columns {
        unit_flag(bound.column_parameter(), c)?;
    }
    let defaults = columns.is_empty();
    let spec = CurveSpec {
        bound,
        sweep: curve.eps,
        columns: if defaults { bound.default_columns() } else { columns },
        columns_from_defaults: defaults,
        priors: PriorPair::new(priors)?,
        omega_eta,
        base: curve.base,
        seed: curve.seed,
    };
    match curve.out {
        Some(path) => {
            let file = File::create(&path).map_err(CliError::Sink)?;
            let mut w = BufWriter::new(file);
            emit_curve(&spec, &mut w)?;
            w.flush().map_err(CliError::Sink)?;
        }
        None => emit_curve(&spec, out)?,
    }
    Ok(EXIT_OK)
}

fn compose(args: ComposeArgs, out: &mut dyn Write) -> Outcome {
    let [first, second] = &args.input[..] else {
        return Err(CliError::Usage(format!(
            "compose takes exactly two --input documents, got {}",
            args.input.len()
        )));
    };
    let a = load(first, &args.common)?;
    let mut b = load(second, &args.common)?;
    b.base = a.base;
    if let Some(eps) = args.epsilon {
        nonnegative_flag("epsilon", eps)?;
    }
    let rel_a = explicit_only(&a, "first")?;
    let rel_b = explicit_only(&b, "second")?;

    let factor = |v: &Validated, rel: &NeighborhoodRelation| audit_ht(&v.channel, rel, 0.0, 0.0, v.base, 1, v.seed);
    let worst_a = factor(&a, &rel_a)?.worst_value;
    let worst_b = factor(&b, &rel_b)?.worst_value;
    let budget = args.epsilon.unwrap_or(worst_a + worst_b);

    let ea = a.channel.to_kraus();
    let eb = b.channel.to_kraus();
    let product: Channel = tensor_channel(&ea, &eb)?.into();
    let (NeighborhoodRelation::ExplicitPairs(pa), NeighborhoodRelation::ExplicitPairs(pb)) = (&rel_a, &rel_b) else {
        unreachable!("explicit relations");
    };
    let mut pairs = Vec::with_capacity(pa.len() * pb.len());
    let mut residual: f64 = 0.0;
    for x in pa {
        for y in pb {
            let rho = tensor_state(&x.rho, &y.rho)?;
            let sigma = tensor_state(&x.sigma, &y.sigma)?;
            let joint = d_zero(&product.apply(&rho)?, &product.apply(&sigma)?, a.base)?;
            let split = d_zero(&ea.apply(&x.rho)?, &ea.apply(&x.sigma)?, a.base)?
                + d_zero(&eb.apply(&y.rho)?, &eb.apply(&y.sigma)?, a.base)?;
            let diff = if joint == split { 0.0 } else { (joint - split).abs() };
            residual = residual.max(diff);
            pairs.push((rho, sigma));
        }
    }
    let rel = NeighborhoodRelation::explicit(pairs)?;
    let report = audit_ht(&product, &rel, 0.0, budget, a.base, 1, a.seed)?;

    if args.common.json {
        let mut value = audit_json(&report, &rel, 1);
        value["command"] = json!("compose");
        value["factor_worst"] = json!([num(worst_a), num(worst_b)]);
        value["additivity_residual"] = num(residual);
        emit_json(out, &value)?;
    } else {
        emit_text(
            out,
            &[
                format!("status: {}", status_name(report.status)),
                format!(
                    "worst D^0 of product: {} (budget {}; factors {} + {})",
                    fmt_g9(report.worst_value),
                    fmt_g9(budget),
                    fmt_g9(worst_a),
                    fmt_g9(worst_b)
                ),
                format!("additivity residual: {}", fmt_g9(residual)),
            ],
        )?;
    }
    Ok(if report.status == AuditStatus::Falsified {
        EXIT_FALSIFIED
    } else {
        EXIT_OK
    })
}

fn explicit_only(v: &Validated, which: &str) -> Result<NeighborhoodRelation, CliError> {
    if v.trace_distance.is_some() || v.pairs.is_empty() {
        return Err(CliError::validation(
            "pairs",
            "present",
            format!("the {which} compose input needs explicit pairs"),
        ));
    }
    v.relation()
}

fn translate(cmd: TranslateCommand, out: &mut dyn Write) -> Outcome {
    match cmd {
        TranslateCommand::HtToDp(a) => {
            let dp = ht_to_dp(HtPrivacyParams::new(a.epsilon, a.eta)?);
            if a.json {
                emit_json(out, &json!({"command": "translate", "from": "ht", "epsilon": num(dp.epsilon()), "delta": num(dp.delta())}))?;
            } else {
                emit_text(out, &[format!("(epsilon, delta) = ({}, {})", fmt_g9(dp.epsilon()), fmt_g9(dp.delta()))])?;
            }
        }
        TranslateCommand::DpToHt(a) => {
            let ht = dp_to_ht(DpParams::new(a.epsilon, a.delta)?)?;
            if a.json {
                emit_json(out, &json!({"command": "translate", "from": "dp", "epsilon": num(ht.epsilon), "eta": "all"}))?;
            } else {
                emit_text(out, &[format!("(epsilon, eta) = ({}, every eta in [0, 1])", fmt_g9(ht.epsilon))])?;
            }
        }
        TranslateCommand::Depolarizing(a) => depolarizing(a, out)?,
    }
    Ok(EXIT_OK)
}

fn depolarizing(args: DepolarizingArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let v = load(&args.input, &args.common)?;
    let dep = *v.channel.depolarizing().ok_or_else(|| {
        CliError::validation("channel.kind", "depolarizing", "translate depolarizing needs a depolarizing channel")
    })?;
    let d = v.trace_distance.ok_or_else(|| {
        CliError::validation("neighborhood", "trace_distance", "translate depolarizing needs a trace_distance neighborhood")
    })?;
    let epsilon = depolarizing_ht_epsilon(&dep, d, v.base)?.epsilon;
    let delta = match args.epsilon {
        Some(e) => Some(depolarizing_dp_delta(&dep, d, e, v.base)?),
        None => None,
    };
    if args.common.json {
        let mut value = json!({
            "command": "translate",
            "from": "depolarizing",
            "p": num(dep.p()),
            "dim": dep.dim(),
            "d": num(d),
            "base": v.base.name(),
            "ht_epsilon": num(epsilon),
            "eta": "all",
        });
        if let (Some(e), Some(delta)) = (args.epsilon, delta) {
            value["dp"] = json!({"epsilon": num(e), "delta": num(delta)});
        }
        emit_json(out, &value)?;
    } else {
        let mut lines = vec![format!(
            "closed-form epsilon = {} ({} base, kappa = d = {})",
            fmt_g9(epsilon),
            v.base.name(),
            fmt_g9(d)
        )];
        if let (Some(e), Some(delta)) = (args.epsilon, delta) {
            lines.push(format!("delta at epsilon {} = {}", fmt_g9(e), fmt_g9(delta)));
        }
        emit_text(out, &lines)?;
    }
    Ok(())
}
