//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation annihilates one off-diagonal pair `(p, q)`. The complex
//! phase of `a_pq` is first absorbed into a diagonal unitary so the 2x2
//! sub-problem becomes real symmetric, then the classical Jacobi angle is
//! applied. The combined rotation is
//!
//! ```text
//! G = [[c, s e^{iφ}], [-s e^{-iφ}, c]]   (rows/cols p, q)
//! ```
//!
//! and the iteration is `A <- G^dag A G`, `V <- V G`.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tol;

/// Eigen-decomposition `A = V diag(λ) V^dag` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct HermitianEigenSystem {
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    /// `Σ w_k |v_k><v_k|`.
    pub fn weighted_sum(&self, weights: impl Fn(usize, f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = weights(k, lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = self.eigenvectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vi * self.eigenvectors[(j, k)].conj();
                }
            }
        }
        out
    }

    /// Applies `f` to the spectrum: `V f(Λ) V^dag`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        self.weighted_sum(|_, lambda| f(lambda))
    }

    /// Projector onto the span of eigenvectors whose eigenvalue satisfies `keep`.
    pub fn spectral_projector(&self, keep: impl Fn(f64) -> bool) -> ComplexMatrix {
        self.weighted_sum(|_, lambda| if keep(lambda) { 1.0 } else { 0.0 })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|lambda| lambda)
    }

    /// `<v_k| X |v_k>` for every eigenvector.
    pub fn diagonal_of(&self, x: &ComplexMatrix) -> Vec<f64> {
        (0..self.dim())
            .map(|k| {
                let v = self.eigenvector(k);
                let xv = x.apply(&v);
                v.iter().zip(&xv).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
            })
            .collect()
    }
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// Input must be Hermitian to `1e-10 * max(1, |A|_F)`; the anti-Hermitian
/// residue is discarded. Deterministic for identical input.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEigenSystem> {
    let n = a.dim();
    if n > tol::MAX_DIM {
        return Err(Error::DimensionOverflow {
            dim: n,
            max: tol::MAX_DIM,
        });
    }
    let norm = a.frobenius_norm();
    let residual = a.hermitian_residual();
    if residual > tol::HERMITIAN * norm.max(1.0) {
        return Err(Error::NotHermitian { residual });
    }

    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol::JACOBI_OFF_DIAGONAL * norm;

    let mut converged = false;
    for _ in 0..tol::JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > threshold {
        return Err(Error::NoConvergence {
            sweeps: tol::JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let eigenvalues = order.iter().map(|&k| m[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let n = m.dim();
    let phase = apq / magnitude;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;

    let tau = (aqq - app) / (2.0 * magnitude);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let s_phase = phase * s;
    let s_phase_conj = s_phase.conj();

    // M <- M G
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * c - mkq * s_phase_conj;
        m[(k, q)] = mkp * s_phase + mkq * c;
    }
    // M <- G^dag M
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = mpk * c - mqk * s_phase;
        m[(q, k)] = mpk * s_phase_conj + mqk * c;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

    // V <- V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s_phase_conj;
        v[(k, q)] = vkp * s_phase + vkq * c;
    }
}
