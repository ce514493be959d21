//! Dense complex Hermitian linear algebra for dimensions up to 64.

mod eigen;
mod matrix;

pub use eigen::{hermitian_eig, HermitianEigenSystem};
pub use matrix::ComplexMatrix;

use crate::error::{Error, Result};
use crate::tol;

/// `Σ_{λ_i > 0} λ_i`, the trace of the positive part of `a`.
pub fn positive_part_trace(a: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eig(a)?;
    Ok(eig.eigenvalues.iter().filter(|&&l| l > 0.0).sum())
}

/// Schatten 1-norm. Hermitian input uses `Σ |λ_i|`; anything else falls back
/// to the singular values `sqrt(eig(A^dag A))`.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    if a.dim() > tol::MAX_DIM {
        return Err(Error::DimensionOverflow {
            dim: a.dim(),
            max: tol::MAX_DIM,
        });
    }
    if a.is_hermitian() {
        let eig = hermitian_eig(a)?;
        return Ok(eig.eigenvalues.iter().map(|l| l.abs()).sum());
    }
    let gram = a.adjoint().matmul(a);
    let eig = hermitian_eig(&gram)?;
    Ok(eig.eigenvalues.iter().map(|l| l.max(0.0).sqrt()).sum())
}

fn psd_eig(a: &ComplexMatrix, rank_tol: f64) -> Result<(HermitianEigenSystem, f64)> {
    let eig = hermitian_eig(a)?;
    let lambda_max = eig.max_eigenvalue();
    let lambda_min = eig.min_eigenvalue();
    if lambda_min < -rank_tol * lambda_max.max(1.0) {
        return Err(Error::NotPsd {
            min_eigenvalue: lambda_min,
        });
    }
    let cutoff = rank_tol * lambda_max.max(0.0);
    Ok((eig, cutoff))
}

/// Projector onto the eigenvectors of a PSD matrix whose eigenvalue exceeds
/// `rank_tol * λ_max`.
pub fn support_projector(a: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    let (eig, cutoff) = psd_eig(a, rank_tol)?;
    if eig.max_eigenvalue() <= 0.0 {
        return Ok(ComplexMatrix::zeros(a.dim()));
    }
    Ok(eig.spectral_projector(|l| l > cutoff))
}

/// Pseudo-inverse square root `Σ_{λ_i > cutoff} λ_i^{-1/2} |i><i|`.
pub fn inv_sqrt_on_support(a: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    let (eig, cutoff) = psd_eig(a, rank_tol)?;
    if eig.max_eigenvalue() <= 0.0 {
        return Ok(ComplexMatrix::zeros(a.dim()));
    }
    Ok(eig.map_spectrum(|l| if l > cutoff { 1.0 / l.sqrt() } else { 0.0 }))
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (m, n) = (a.dim(), b.dim());
    let dim = m * n;
    if dim > tol::MAX_DIM {
        return Err(Error::DimensionOverflow {
            dim,
            max: tol::MAX_DIM,
        });
    }
    Ok(ComplexMatrix::from_fn(dim, |i, j| {
        a[(i / n, j / n)] * b[(i % n, j % n)]
    }))
}
