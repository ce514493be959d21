//! Density operators, Kraus channels and seeded random instances.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron, ComplexMatrix, HermitianEigenSystem};
use crate::tol;

/// Positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validates Hermiticity, positivity and unit trace (all to `1e-10`).
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let residual = matrix.hermitian_residual();
        if residual > tol::STATE {
            return Err(Error::NotHermitian { residual });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::STATE {
            return Err(Error::TraceNotOne { trace });
        }
        let eig = hermitian_eig(&matrix)?;
        if eig.min_eigenvalue() < -tol::STATE {
            return Err(Error::NotPsd {
                min_eigenvalue: eig.min_eigenvalue(),
            });
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
        })
    }

    /// `|φ><φ|`. Without `normalize`, the vector must already have unit norm
    /// to within `1e-8`.
    pub fn from_pure(amplitudes: &[Complex64], normalize: bool) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        if !normalize && (norm - 1.0).abs() > 1e-8 {
            return Err(Error::NotNormalized { norm });
        }
        let v: Vec<Complex64> = amplitudes.iter().map(|z| z / norm).collect();
        Ok(Self {
            matrix: ComplexMatrix::outer(&v),
        })
    }

    /// Computational basis state `|k><k|`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut diag = vec![0.0; dim];
        diag[k] = 1.0;
        Self {
            matrix: ComplexMatrix::from_real_diagonal(&diag),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// Diagonal state from a probability vector.
    pub fn from_probabilities(probs: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(probs))
    }

    /// Accepts a computed operator that is a state up to rounding: eigenvalues
    /// in `[-1e-9, 0)` are clipped and the trace renormalized.
    pub(crate) fn from_computed(matrix: ComplexMatrix) -> Result<Self> {
        let matrix = matrix.hermitian_part();
        let eig = hermitian_eig(&matrix)?;
        let lambda_min = eig.min_eigenvalue();
        if lambda_min < -tol::OUTPUT_NEGATIVITY {
            return Err(Error::NotPsd {
                min_eigenvalue: lambda_min,
            });
        }
        let matrix = if lambda_min < 0.0 {
            eig.map_spectrum(|l| l.max(0.0))
        } else {
            matrix
        };
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::COMPLETENESS {
            return Err(Error::TraceNotOne { trace });
        }
        Ok(Self {
            matrix: matrix.scale(1.0 / trace),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eigen(&self) -> HermitianEigenSystem {
        hermitian_eig(&self.matrix).expect("density operators are Hermitian")
    }

    pub fn purity(&self) -> f64 {
        self.matrix.expectation(&self.matrix)
    }

    /// `(1 - w) self + w other`; a state for `w` in `[0, 1]`.
    pub fn mix(&self, other: &Self, w: f64) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self {
            matrix: self.matrix.scale(1.0 - w).add_scaled(w, &other.matrix),
        })
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `ρ1 ⊗ ρ2`.
pub fn tensor_state(rho1: &DensityOperator, rho2: &DensityOperator) -> Result<DensityOperator> {
    Ok(DensityOperator {
        matrix: kron(&rho1.matrix, &rho2.matrix)?,
    })
}

/// Channel in Kraus form `ρ ↦ Σ_j E_j ρ E_j^dag` on a fixed square space.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = operators.first() else {
            return Err(Error::KrausCount { count: 0, max: 0 });
        };
        let dim = first.dim();
        if operators.len() > dim * dim {
            return Err(Error::KrausCount {
                count: operators.len(),
                max: dim * dim,
            });
        }
        for op in &operators {
            check_dims(dim, op.dim())?;
        }
        let channel = Self { dim, operators };
        let residual = channel.completeness_residual();
        if residual > tol::COMPLETENESS {
            return Err(Error::NotComplete { residual });
        }
        Ok(channel)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            operators: vec![ComplexMatrix::identity(dim)],
        }
    }

    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        Self::new(vec![u])
    }

    pub fn input_dim(&self) -> usize {
        self.dim
    }

    pub fn output_dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn kraus_rank(&self) -> usize {
        self.operators.len()
    }

    /// `|Σ E_j^dag E_j - I|_F`.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim);
        for op in &self.operators {
            sum = &sum + &op.adjoint().matmul(op);
        }
        sum.frobenius_distance(&ComplexMatrix::identity(self.dim))
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        check_dims(self.dim, rho.dim())?;
        let mut out = ComplexMatrix::zeros(self.dim);
        for op in &self.operators {
            out = &out + &rho.matrix.conjugate_by(op);
        }
        DensityOperator::from_computed(out)
    }
}

/// `E1 ⊗ E2` with Kraus operators `{A_i ⊗ B_j}`.
pub fn tensor_channel(e1: &KrausChannel, e2: &KrausChannel) -> Result<KrausChannel> {
    let mut operators = Vec::with_capacity(e1.kraus_rank() * e2.kraus_rank());
    for a in &e1.operators {
        for b in &e2.operators {
            operators.push(kron(a, b)?);
        }
    }
    Ok(KrausChannel {
        dim: e1.dim * e2.dim,
        operators,
    })
}

/// Depolarizing channel `ρ ↦ (p/D) I + (1 - p) ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepolarizingParams {
    p: f64,
    dim: usize,
}

impl DepolarizingParams {
    pub fn new(p: f64, dim: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange {
                name: "p",
                value: p,
                range: "[0, 1]",
            });
        }
        if !(2..=tol::MAX_DIM).contains(&dim) {
            return Err(Error::OutOfRange {
                name: "dim",
                value: dim as f64,
                range: "[2, 64]",
            });
        }
        Ok(Self { p, dim })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Applies the affine formula directly.
    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        check_dims(self.dim, rho.dim())?;
        let mixed = ComplexMatrix::identity(self.dim).scale(self.p / self.dim as f64);
        Ok(DensityOperator {
            matrix: mixed.add_scaled(1.0 - self.p, &rho.matrix),
        })
    }

    /// Kraus form built from the `D^2` discrete Weyl operators `X^a Z^b`:
    /// `sqrt(1 - p + p/D^2) I` plus `sqrt(p/D^2) W_ab` for `(a, b) != (0, 0)`.
    pub fn kraus(&self) -> KrausChannel {
        let d = self.dim;
        let weight = self.p / (d * d) as f64;
        let mut operators = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let scale = if a == 0 && b == 0 {
                    (1.0 - self.p + weight).sqrt()
                } else {
                    weight.sqrt()
                };
                operators.push(weyl(d, a, b).scale(scale));
            }
        }
        KrausChannel { dim: d, operators }
    }
}

/// `X^a Z^b` with `X|j> = |j+1>` and `Z|j> = ω^j |j>`.
fn weyl(d: usize, a: usize, b: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d);
    for j in 0..d {
        let angle = 2.0 * PI * (b * j % d) as f64 / d as f64;
        m[((j + a) % d, j)] = Complex64::from_polar(1.0, angle);
    }
    m
}

/// Any channel the auditors understand. Depolarizing channels keep their
/// parameters so closed-form certificates stay available.
#[derive(Debug, Clone, PartialEq)]
pub enum Channel {
    Kraus(KrausChannel),
    Depolarizing(DepolarizingParams),
}

impl Channel {
    pub fn dim(&self) -> usize {
        match self {
            Channel::Kraus(k) => k.input_dim(),
            Channel::Depolarizing(d) => d.dim(),
        }
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        match self {
            Channel::Kraus(k) => k.apply(rho),
            Channel::Depolarizing(d) => d.apply(rho),
        }
    }

    pub fn to_kraus(&self) -> KrausChannel {
        match self {
            Channel::Kraus(k) => k.clone(),
            Channel::Depolarizing(d) => d.kraus(),
        }
    }

    pub fn depolarizing(&self) -> Option<&DepolarizingParams> {
        match self {
            Channel::Depolarizing(d) => Some(d),
            Channel::Kraus(_) => None,
        }
    }
}

impl From<KrausChannel> for Channel {
    fn from(k: KrausChannel) -> Self {
        Channel::Kraus(k)
    }
}

impl From<DepolarizingParams> for Channel {
    fn from(d: DepolarizingParams) -> Self {
        Channel::Depolarizing(d)
    }
}

/// Prior probabilities of the null state (`p_rho`) and the alternative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorPair {
    p_rho: f64,
}

impl PriorPair {
    pub fn new(p_rho: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_rho) {
            return Err(Error::OutOfRange {
                name: "p_rho",
                value: p_rho,
                range: "[0, 1]",
            });
        }
        Ok(Self { p_rho })
    }

    pub fn uniform() -> Self {
        Self { p_rho: 0.5 }
    }

    pub fn p_rho(&self) -> f64 {
        self.p_rho
    }

    pub fn p_sigma(&self) -> f64 {
        1.0 - self.p_rho
    }

    /// Error of the best guess made without any measurement, `½(1 - |p_ρ - p_σ|)`.
    pub fn p_max(&self) -> f64 {
        0.5 * (1.0 - (self.p_rho - self.p_sigma()).abs())
    }
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `ρ = G G^dag / tr(G G^dag)` with `G` a `dim x rank` complex Gaussian matrix.
pub fn random_density_with(rng: &mut impl Rng, dim: usize, rank: usize) -> Result<DensityOperator> {
    if dim == 0 || dim > tol::MAX_DIM {
        return Err(Error::OutOfRange {
            name: "dim",
            value: dim as f64,
            range: "[1, 64]",
        });
    }
    if rank == 0 || rank > dim {
        return Err(Error::OutOfRange {
            name: "rank",
            value: rank as f64,
            range: "[1, dim]",
        });
    }
    let g: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..rank).map(|_| gaussian(rng)).collect())
        .collect();
    let mut m = ComplexMatrix::from_fn(dim, |i, j| {
        (0..rank).map(|k| g[i][k] * g[j][k].conj()).sum()
    });
    let trace = m.trace().re;
    m = m.scale(1.0 / trace);
    Ok(DensityOperator {
        matrix: m.hermitian_part(),
    })
}

pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityOperator> {
    random_density_with(&mut ChaCha8Rng::seed_from_u64(seed), dim, rank)
}

/// Stinespring construction: orthonormalize the columns of a
/// `(dim * kraus_rank) x dim` Gaussian matrix and slice it into blocks.
pub fn random_channel_with(
    rng: &mut impl Rng,
    dim: usize,
    kraus_rank: usize,
) -> Result<KrausChannel> {
    if dim == 0 || dim > tol::MAX_DIM {
        return Err(Error::OutOfRange {
            name: "dim",
            value: dim as f64,
            range: "[1, 64]",
        });
    }
    if kraus_rank == 0 || kraus_rank > dim * dim {
        return Err(Error::OutOfRange {
            name: "kraus_rank",
            value: kraus_rank as f64,
            range: "[1, dim^2]",
        });
    }
    let rows = dim * kraus_rank;
    let mut columns: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..rows).map(|_| gaussian(rng)).collect())
        .collect();
    orthonormalize(&mut columns);
    let operators = (0..kraus_rank)
        .map(|k| ComplexMatrix::from_fn(dim, |i, j| columns[j][k * dim + i]))
        .collect();
    Ok(KrausChannel { dim, operators })
}

pub fn random_channel(dim: usize, kraus_rank: usize, seed: u64) -> Result<KrausChannel> {
    random_channel_with(&mut ChaCha8Rng::seed_from_u64(seed), dim, kraus_rank)
}

/// Modified Gram-Schmidt, run twice.
fn orthonormalize(columns: &mut [Vec<Complex64>]) {
    for _ in 0..2 {
        for j in 0..columns.len() {
            for i in 0..j {
                let (head, tail) = columns.split_at_mut(j);
                let overlap: Complex64 = head[i]
                    .iter()
                    .zip(tail[0].iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                for (a, b) in tail[0].iter_mut().zip(head[i].iter()) {
                    *a -= overlap * b;
                }
            }
            let norm = columns[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in columns[j].iter_mut() {
                *z /= norm;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn plus() -> DensityOperator {
        let h = 0.5_f64.sqrt();
        DensityOperator::from_pure(&[c(h, 0.0), c(h, 0.0)], false).unwrap()
    }

    #[test]
    fn pure_state_examples() {
        let zero = DensityOperator::from_pure(&[c(1.0, 0.0), c(0.0, 0.0)], false).unwrap();
        assert_eq!(zero.matrix(), &ComplexMatrix::from_real_diagonal(&[1.0, 0.0]));

        for z in plus().matrix().entries() {
            assert!((z - c(0.5, 0.0)).norm() < 1e-15);
        }

        let h = 0.5_f64.sqrt();
        let y = DensityOperator::from_pure(&[c(h, 0.0), c(0.0, h)], false).unwrap();
        let expected =
            ComplexMatrix::from_rows(&[vec![c(0.5, 0.0), c(0.0, -0.5)], vec![c(0.0, 0.5), c(0.5, 0.0)]])
                .unwrap();
        assert!(y.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn pure_state_errors() {
        assert_eq!(
            DensityOperator::from_pure(&[c(0.0, 0.0); 2], true),
            Err(Error::ZeroVector)
        );
        assert!(matches!(
            DensityOperator::from_pure(&[c(2.0, 0.0), c(0.0, 0.0)], false),
            Err(Error::NotNormalized { .. })
        ));
        let rescaled = DensityOperator::from_pure(&[c(2.0, 0.0), c(0.0, 0.0)], true).unwrap();
        assert_eq!(rescaled, DensityOperator::basis(2, 0));
    }

    #[test]
    fn state_validation() {
        assert!(matches!(
            DensityOperator::from_probabilities(&[0.6, 0.6]),
            Err(Error::TraceNotOne { .. })
        ));
        assert!(matches!(
            DensityOperator::from_probabilities(&[1.2, -0.2]),
            Err(Error::NotPsd { .. })
        ));
        let skew = ComplexMatrix::from_rows(&[vec![c(0.5, 0.0), c(0.1, 0.0)], vec![c(0.0, 0.0), c(0.5, 0.0)]])
            .unwrap();
        assert!(matches!(DensityOperator::new(skew), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn channel_examples() {
        let rho = random_density(3, 2, 1).unwrap();
        let out = KrausChannel::identity(3).apply(&rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);

        let flip = KrausChannel::unitary(pauli_x()).unwrap();
        assert_eq!(flip.apply(&DensityOperator::basis(2, 0)).unwrap(), DensityOperator::basis(2, 1));

        let measure = KrausChannel::new(vec![
            ComplexMatrix::from_real_diagonal(&[1.0, 0.0]),
            ComplexMatrix::from_real_diagonal(&[0.0, 1.0]),
        ])
        .unwrap();
        let out = measure.apply(&plus()).unwrap();
        assert!(out.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);

        assert!(matches!(
            flip.apply(&DensityOperator::maximally_mixed(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn channel_validation() {
        let doubled = KrausChannel::new(vec![ComplexMatrix::identity(2), ComplexMatrix::identity(2)]);
        assert!(matches!(doubled, Err(Error::NotComplete { .. })));
        let too_many = KrausChannel::new(vec![ComplexMatrix::identity(2).scale(0.5); 5]);
        assert!(matches!(too_many, Err(Error::KrausCount { .. })));
        assert!(matches!(KrausChannel::new(vec![]), Err(Error::KrausCount { .. })));
    }

    #[test]
    fn depolarizing_examples() {
        let rho = random_density(2, 2, 4).unwrap();
        let full = DepolarizingParams::new(1.0, 2).unwrap().apply(&rho).unwrap();
        assert!(full.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
        let none = DepolarizingParams::new(0.0, 2).unwrap().apply(&rho).unwrap();
        assert!(none.matrix().max_abs_diff(rho.matrix()) < 1e-15);
        let half = DepolarizingParams::new(0.5, 2)
            .unwrap()
            .apply(&DensityOperator::basis(2, 0))
            .unwrap();
        assert!(half.matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.75, 0.25])) < 1e-15);

        assert!(DepolarizingParams::new(1.5, 2).is_err());
        assert!(DepolarizingParams::new(0.5, 1).is_err());
    }

    #[test]
    fn depolarizing_commutes_with_unitaries() {
        let params = DepolarizingParams::new(0.3, 3).unwrap();
        let u = random_channel(3, 1, 9).unwrap().operators()[0].clone();
        let rho = random_density(3, 3, 10).unwrap();
        let rotated = DensityOperator::new(rho.matrix().conjugate_by(&u)).unwrap();
        let lhs = params.apply(&rotated).unwrap();
        let rhs = params.apply(&rho).unwrap().matrix().conjugate_by(&u);
        assert!(lhs.matrix().max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn depolarizing_kraus_matches_affine_map() {
        for &p in &[0.0, 0.3, 0.7, 1.0] {
            for dim in 2..=4 {
                let params = DepolarizingParams::new(p, dim).unwrap();
                let kraus = params.kraus();
                assert!(kraus.completeness_residual() <= 1e-9);
                for seed in 0..5 {
                    let rho = random_density(dim, 1 + seed as usize % dim, seed).unwrap();
                    let a = params.apply(&rho).unwrap();
                    let b = kraus.apply(&rho).unwrap();
                    assert!(a.matrix().max_abs_diff(b.matrix()) <= 1e-9, "p={p} dim={dim}");
                }
            }
        }
    }

    #[test]
    fn tensor_state_examples() {
        let zero = DensityOperator::basis(2, 0);
        let t = tensor_state(&zero, &zero).unwrap();
        assert_eq!(t.matrix(), &ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]));
        let mixed = DensityOperator::maximally_mixed(2);
        let t = tensor_state(&mixed, &mixed).unwrap();
        assert!(t.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale(0.25)) < 1e-15);
    }

    #[test]
    fn tensor_state_spectrum() {
        let rho = random_density(2, 2, 31).unwrap();
        let sigma = random_density(3, 3, 32).unwrap();
        let mut expected: Vec<f64> = rho
            .eigen()
            .eigenvalues
            .iter()
            .flat_map(|a| sigma.eigen().eigenvalues.into_iter().map(move |b| a * b))
            .collect();
        expected.sort_by(f64::total_cmp);
        let got = tensor_state(&rho, &sigma).unwrap().eigen().eigenvalues;
        for (x, y) in got.iter().zip(&expected) {
            assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn tensor_channel_examples() {
        let id = tensor_channel(&KrausChannel::identity(2), &KrausChannel::identity(2)).unwrap();
        assert_eq!(id, KrausChannel::identity(4));

        let dep = DepolarizingParams::new(1.0, 2).unwrap().kraus();
        let prod = tensor_channel(&dep, &KrausChannel::identity(2)).unwrap();
        let zero = DensityOperator::basis(2, 0);
        let out = prod.apply(&tensor_state(&zero, &zero).unwrap()).unwrap();
        let expected = kron(&ComplexMatrix::identity(2).scale(0.5), zero.matrix()).unwrap();
        assert!(out.matrix().max_abs_diff(&expected) <= 1e-12);
    }

    #[test]
    fn tensor_channel_defining_identity() {
        for seed in 0..20u64 {
            let e1 = random_channel(2, 1 + (seed as usize % 4), seed).unwrap();
            let e2 = random_channel(3, 1 + (seed as usize % 9), seed + 100).unwrap();
            let r1 = random_density(2, 1 + (seed as usize % 2), seed + 200).unwrap();
            let r2 = random_density(3, 1 + (seed as usize % 3), seed + 300).unwrap();
            let lhs = tensor_channel(&e1, &e2)
                .unwrap()
                .apply(&tensor_state(&r1, &r2).unwrap())
                .unwrap();
            let rhs = tensor_state(&e1.apply(&r1).unwrap(), &e2.apply(&r2).unwrap()).unwrap();
            assert!(lhs.matrix().max_abs_diff(rhs.matrix()) <= 1e-9);
        }
    }

    #[test]
    fn random_state_contracts() {
        let pure = random_density(2, 1, 42).unwrap();
        assert!((pure.purity() - 1.0).abs() <= 1e-10);
        let full = random_density(4, 4, 42).unwrap();
        assert!((full.matrix().trace().re - 1.0).abs() <= 1e-12);
        assert_eq!(random_density(4, 3, 5).unwrap(), random_density(4, 3, 5).unwrap());
        assert!(random_density(2, 3, 0).is_err());
        // generated states pass full validation
        DensityOperator::new(random_density(5, 2, 8).unwrap().into_matrix()).unwrap();
    }

    #[test]
    fn random_channel_contracts() {
        let unitary = random_channel(3, 1, 1).unwrap();
        let u = &unitary.operators()[0];
        assert!(u.matmul(&u.adjoint()).frobenius_distance(&ComplexMatrix::identity(3)) <= 1e-9);
        for (dim, rank) in [(2, 1), (2, 4), (3, 5), (4, 16)] {
            let ch = random_channel(dim, rank, 77).unwrap();
            assert!(ch.completeness_residual() <= 1e-9);
            assert_eq!(ch.kraus_rank(), rank);
        }
        assert_eq!(random_channel(3, 4, 6).unwrap(), random_channel(3, 4, 6).unwrap());
        assert!(random_channel(2, 5, 0).is_err());
    }

    #[test]
    fn channels_preserve_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..1000 {
            let dim = rng.random_range(2..=4);
            let rank = rng.random_range(1..=dim * dim);
            let ch = random_channel_with(&mut rng, dim, rank).unwrap();
            let r = rng.random_range(1..=dim);
            let rho = random_density_with(&mut rng, dim, r).unwrap();
            let out = ch.apply(&rho).unwrap();
            assert!((out.matrix().trace().re - 1.0).abs() <= 1e-9);
            assert!(out.eigen().min_eigenvalue() >= -1e-9);
        }
    }

    #[test]
    fn priors() {
        let p = PriorPair::new(0.7).unwrap();
        assert!((p.p_sigma() - 0.3).abs() < 1e-15);
        assert!((p.p_max() - 0.3).abs() < 1e-15);
        assert_eq!(PriorPair::uniform().p_max(), 0.5);
        assert!(PriorPair::new(-0.1).is_err());
    }
}
