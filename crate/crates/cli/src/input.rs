//! Input documents: JSON schema types and validation into library objects.

use std::path::Path;

use serde::{Deserialize, Serialize};

use qhtp::divergences::LogBase;
use qhtp::linalg::ComplexMatrix;
use qhtp::privacy::NeighborhoodRelation;
use qhtp::quantum::{Channel, DensityOperator, DepolarizingParams, KrausChannel, PriorPair};
use qhtp::Complex64;

use crate::CliError;

/// Row-major matrix of `[re, im]` entries.
pub type MatrixSpec = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub dim: usize,
    pub channel: ChannelSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<PairSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neighborhood: Option<NeighborhoodSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priors: Option<PriorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<LogBase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelSpec {
    Kraus { operators: Vec<MatrixSpec> },
    Depolarizing { p: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub rho: MatrixSpec,
    pub sigma: MatrixSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NeighborhoodSpec {
    TraceDistance { d: f64 },
    Pairs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PriorSpec {
    pub p_rho: f64,
}

/// A document whose matrices passed every library check.
#[derive(Debug, Clone)]
pub struct Validated {
    pub dim: usize,
    pub channel: Channel,
    pub pairs: Vec<(DensityOperator, DensityOperator)>,
    pub trace_distance: Option<f64>,
    pub priors: PriorPair,
    pub base: LogBase,
    pub seed: u64,
}

impl Validated {
    /// The relation an audit runs over: exactly one of explicit pairs or a
    /// trace-distance neighbourhood.
    pub fn relation(&self) -> Result<NeighborhoodRelation, CliError> {
        match (self.trace_distance, self.pairs.is_empty()) {
            (Some(_), false) => Err(CliError::validation(
                "neighborhood",
                "exclusive",
                "audits take either explicit pairs or a trace_distance neighborhood, not both",
            )),
            (Some(d), true) => NeighborhoodRelation::trace_distance(d)
                .map_err(|e| CliError::validation("neighborhood.d", "range", e)),
            (None, false) => NeighborhoodRelation::explicit(self.pairs.clone())
                .map_err(|e| CliError::validation("pairs", "relation", e)),
            (None, true) => Err(CliError::validation(
                "pairs",
                "present",
                "audits need explicit pairs or a trace_distance neighborhood",
            )),
        }
    }
}

pub fn parse_input(text: &str) -> Result<InputDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn read_input(path: &Path) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}

impl InputDocument {
    pub fn validate(&self) -> Result<Validated, CliError> {
        let dim = self.dim;
        if dim == 0 || dim > qhtp::tol::MAX_DIM {
            return Err(CliError::validation("dim", "range", format!("dim = {dim} is outside [1, 64]")));
        }

        let channel = match &self.channel {
            ChannelSpec::Kraus { operators } => {
                let mut ops = Vec::with_capacity(operators.len());
                for (k, op) in operators.iter().enumerate() {
                    ops.push(matrix(op, dim, &format!("channel.operators[{k}]"))?);
                }
                Channel::from(
                    KrausChannel::new(ops).map_err(|e| CliError::validation("channel.operators", check_name(&e), e))?,
                )
            }
            ChannelSpec::Depolarizing { p } => Channel::from(
                DepolarizingParams::new(*p, dim).map_err(|e| CliError::validation("channel.p", "range", e))?,
            ),
        };

        let mut pairs = Vec::new();
        for (k, pair) in self.pairs.iter().flatten().enumerate() {
            let rho = state(&pair.rho, dim, &format!("pairs[{k}].rho"))?;
            let sigma = state(&pair.sigma, dim, &format!("pairs[{k}].sigma"))?;
            pairs.push((rho, sigma));
        }

        let trace_distance = match &self.neighborhood {
            Some(NeighborhoodSpec::TraceDistance { d }) => {
                if !(*d > 0.0 && *d <= 1.0) {
                    return Err(CliError::validation("neighborhood.d", "range", format!("d = {d} is outside (0, 1]")));
                }
                Some(*d)
            }
            Some(NeighborhoodSpec::Pairs) | None => None,
        };

        let priors = match &self.priors {
            Some(p) => PriorPair::new(p.p_rho).map_err(|e| CliError::validation("priors.p_rho", "range", e))?,
            None => PriorPair::uniform(),
        };

        Ok(Validated {
            dim,
            channel,
            pairs,
            trace_distance,
            priors,
            base: self.base.unwrap_or_default(),
            seed: self.seed.unwrap_or(0),
        })
    }
}

fn matrix(spec: &MatrixSpec, dim: usize, location: &str) -> Result<ComplexMatrix, CliError> {
    if spec.len() != dim || spec.iter().any(|row| row.len() != dim) {
        return Err(CliError::validation(location, "shape", format!("expected a {dim}x{dim} matrix")));
    }
    let entries = spec
        .iter()
        .flatten()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    ComplexMatrix::new(dim, entries).map_err(|e| CliError::validation(location, check_name(&e), e))
}

fn state(spec: &MatrixSpec, dim: usize, location: &str) -> Result<DensityOperator, CliError> {
    let m = matrix(spec, dim, location)?;
    DensityOperator::new(m).map_err(|e| CliError::validation(location, check_name(&e), e))
}

fn check_name(e: &qhtp::Error) -> &'static str {
    use qhtp::Error::*;
    match e {
        NotHermitian { .. } => "hermiticity",
        NotPsd { .. } => "positivity",
        TraceNotOne { .. } => "unit trace",
        NotComplete { .. } => "completeness",
        KrausCount { .. } => "kraus count",
        NonFinite { .. } => "finiteness",
        BadShape { .. } | DimensionMismatch { .. } => "shape",
        _ => "validity",
    }
}

/// JSON encoding of a matrix, the inverse of the input format.
pub fn matrix_spec(m: &ComplexMatrix) -> MatrixSpec {
    m.rows().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect()
}
