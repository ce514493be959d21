//! JSON values, number formatting and CSV bound curves.

use std::io::Write;

use serde_json::{json, Value};

use qhtp::divergences::LogBase;
use qhtp::privacy::{gamma_bound, omega_bound, theta_bound, DpParams, HtPrivacyParams};
use qhtp::quantum::PriorPair;

use crate::CliError;

/// JSON number, or the string `"inf"` for `+∞`.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x == f64::INFINITY {
        json!("inf")
    } else if x == f64::NEG_INFINITY {
        json!("-inf")
    } else {
        json!("nan")
    }
}

/// `printf("%.9g")`.
pub fn fmt_g9(x: f64) -> String {
    const DIGITS: i32 = 9;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan" } else if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Gamma,
    Omega,
    Theta,
}

impl Bound {
    pub fn name(self) -> &'static str {
        match self {
            Bound::Gamma => "gamma",
            Bound::Omega => "omega",
            Bound::Theta => "theta",
        }
    }

    /// Name of the parameter fixed per column.
    pub fn column_parameter(self) -> &'static str {
        match self {
            Bound::Gamma => "eta",
            Bound::Omega | Bound::Theta => "delta",
        }
    }

    /// Column values used when none are given on the command line.
    pub fn default_columns(self) -> Vec<f64> {
        match self {
            Bound::Gamma => vec![0.1, 0.3, 0.5, 0.7, 0.9],
            Bound::Omega | Bound::Theta => vec![0.0, 0.05, 0.1, 0.2],
        }
    }
}

/// `MIN:MAX:STEPS`, evaluated at `min + k (max - min) / (steps - 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsSweep {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl EpsSweep {
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let span = self.max - self.min;
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(move |k| if k + 1 == self.steps { self.max } else { self.min + span * k as f64 / last })
    }
}

impl std::str::FromStr for EpsSweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, steps] = parts[..] else {
            return Err(format!("expected MIN:MAX:STEPS, got `{s}`"));
        };
        let min: f64 = min.parse().map_err(|e| format!("MIN: {e}"))?;
        let max: f64 = max.parse().map_err(|e| format!("MAX: {e}"))?;
        let steps: usize = steps.parse().map_err(|e| format!("STEPS: {e}"))?;
        if min.is_nan() || min < 0.0 || max.is_nan() || max < min || !max.is_finite() {
            return Err(format!("need 0 <= MIN <= MAX < inf, got {min}:{max}"));
        }
        if steps < 2 {
            return Err(format!("need STEPS >= 2, got {steps}"));
        }
        Ok(Self { min, max, steps })
    }
}

#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub bound: Bound,
    pub sweep: EpsSweep,
    /// `η` values for gamma, `δ` values for omega and theta.
    pub columns: Vec<f64>,
    pub columns_from_defaults: bool,
    pub priors: PriorPair,
    /// `η` shared by every omega column.
    pub omega_eta: f64,
    pub base: LogBase,
    pub seed: u64,
}

impl CurveSpec {
    pub fn evaluate(&self, epsilon: f64, column: f64) -> Result<f64, CliError> {
        let bad = |e: qhtp::Error| CliError::Usage(e.to_string());
        Ok(match self.bound {
            Bound::Gamma => gamma_bound(HtPrivacyParams::new(epsilon, column).map_err(bad)?, self.priors),
            Bound::Omega => omega_bound(DpParams::new(epsilon, column).map_err(bad)?, self.omega_eta, self.base),
            Bound::Theta => theta_bound(DpParams::new(epsilon, column).map_err(bad)?, self.priors, self.base),
        })
    }
}

/// Writes `#` provenance lines, the header `epsilon,<param>=v,...` and one
/// row per sweep point.
pub fn emit_curve(spec: &CurveSpec, sink: &mut dyn Write) -> Result<(), CliError> {
    let param = spec.bound.column_parameter();
    let mut head = vec![
        format!("# bound={}", spec.bound.name()),
        format!("# base={}", spec.base.name()),
        format!("# seed={}", spec.seed),
    ];
    match spec.bound {
        Bound::Gamma => {
            head.push(format!("# p_rho={}", fmt_g9(spec.priors.p_rho())));
            head.push("# epsilon in nats".to_string());
        }
        Bound::Omega => head.push(format!("# eta={}", fmt_g9(spec.omega_eta))),
        Bound::Theta => head.push(format!("# p_rho={}", fmt_g9(spec.priors.p_rho()))),
    }
    let provenance = if spec.columns_from_defaults { "artifact defaults" } else { "command line" };
    head.push(format!("# {param} values: {provenance}"));
    for line in head {
        sink.write_all(line.as_bytes()).and_then(|_| sink.write_all(b"\n")).map_err(CliError::Sink)?;
    }

    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    let mut header = vec!["epsilon".to_string()];
    header.extend(spec.columns.iter().map(|v| format!("{param}={}", fmt_g9(*v))));
    writer.write_record(&header).map_err(sink_error)?;
    for epsilon in spec.sweep.points() {
        let mut row = vec![fmt_g9(epsilon)];
        for &column in &spec.columns {
            row.push(fmt_g9(spec.evaluate(epsilon, column)?));
        }
        writer.write_record(&row).map_err(sink_error)?;
    }
    writer.flush().map_err(CliError::Sink)
}

fn sink_error(e: csv::Error) -> CliError {
    CliError::Sink(std::io::Error::other(e))
}
