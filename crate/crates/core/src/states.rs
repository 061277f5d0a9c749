//! Gaussian states: Wigner density, covariance-level action of symplectic
//! maps, purity, and a seeded generator of valid covariance matrices.

use std::f64::consts::PI;

use nalgebra::{Cholesky, Dyn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::check::DEFAULT_TOL;
use crate::error::{Error, Result};
use crate::linalg::{symmetrize, Matrix, Vector};
use crate::phase_space::{is_orthosymplectic, is_symplectic, ModeFrame, ModePartition};
use crate::spectral::{quantum_condition_check, CovarianceMatrix};

/// A Gaussian state `(Σ, m)`. The Cholesky factor of `Σ` is computed once
/// and reused by every density evaluation.
#[derive(Debug, Clone)]
pub struct GaussianState {
    cov: CovarianceMatrix,
    mean: Vector,
    chol: Cholesky<f64, Dyn>,
    log_det: f64,
}

impl GaussianState {
    pub fn new(cov: CovarianceMatrix, mean: Vector) -> Result<Self> {
        if mean.len() != cov.partition().dim() {
            return Err(Error::DimensionMismatch {
                expected: cov.partition().dim(),
                found: mean.len(),
            });
        }
        if mean.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let check = quantum_condition_check(&cov, DEFAULT_TOL);
        if !check.pass {
            return Err(Error::QuantumConditionViolated {
                nu_min: check.residual("nu_min").unwrap_or(f64::NAN),
                bound: cov.hbar() / 2.0,
            });
        }
        let chol = cov.cholesky();
        let log_det = 2.0 * chol.l().diagonal().iter().map(|d| d.ln()).sum::<f64>();
        Ok(GaussianState {
            cov,
            mean,
            chol,
            log_det,
        })
    }

    pub fn centered(cov: CovarianceMatrix) -> Result<Self> {
        let d = cov.partition().dim();
        Self::new(cov, Vector::zeros(d))
    }

    pub fn cov(&self) -> &CovarianceMatrix {
        &self.cov
    }

    pub fn mean(&self) -> &Vector {
        &self.mean
    }

    /// `(2π)^{−n} (det Σ)^{−1/2} exp(−½ (z−m)ᵀ Σ⁻¹ (z−m))`.
    pub fn wigner_eval(&self, z: &Vector) -> Result<f64> {
        if z.len() != self.mean.len() {
            return Err(Error::DimensionMismatch {
                expected: self.mean.len(),
                found: z.len(),
            });
        }
        if z.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let d = z - &self.mean;
        let y = self
            .chol
            .l()
            .solve_lower_triangular(&d)
            .expect("Cholesky factor is nonsingular");
        let n = self.cov.modes() as f64;
        let log_rho = -n * (2.0 * PI).ln() - 0.5 * self.log_det - 0.5 * y.norm_squared();
        Ok(log_rho.exp())
    }

    /// Gaussian purity `(ħ/2)ⁿ (det Σ)^{−1/2}`, capped at one.
    pub fn purity(&self) -> f64 {
        let n = self.cov.modes() as f64;
        (n * (self.cov.hbar() / 2.0).ln() - 0.5 * self.log_det)
            .exp()
            .min(1.0)
    }

    fn transformed(&self, s: &Matrix) -> Result<Self> {
        let sigma = symmetrize(&(s * self.cov.sigma() * s.transpose()));
        Self::new(self.cov.replace_sigma(sigma)?, s * &self.mean)
    }
}

/// Wigner density of `state` at `z`.
pub fn wigner_eval(state: &GaussianState, z: &Vector) -> Result<f64> {
    state.wigner_eval(z)
}

/// Action of a symplectic rotation: `Σ → UΣUᵀ`, `m → Um`, so that the new
/// density is `z ↦ ρ(Uᵀz)`.
pub fn rotate_state(state: &GaussianState, u: &Matrix, tol: f64) -> Result<GaussianState> {
    let report = is_orthosymplectic(u, tol);
    if !report.pass {
        return Err(Error::NotOrthosymplectic {
            residual: -report.margin,
        });
    }
    state.transformed(u)
}

/// Covariance-level pushforward by a general symplectic matrix.
pub fn push_symplectic(state: &GaussianState, s: &Matrix, tol: f64) -> Result<GaussianState> {
    let report = is_symplectic(s, tol);
    if !report.pass {
        return Err(Error::NotSymplectic {
            residual: -report.margin,
        });
    }
    state.transformed(s)
}

pub fn purity(state: &GaussianState) -> f64 {
    state.purity()
}

fn gaussian_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vector {
    Vector::from_iterator(len, (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)))
}

/// Random symplectic rotation: Gram-Schmidt on Gaussian vectors, each
/// accepted `v` completed by its partner `Jᵀv`.
pub fn random_orthosymplectic_with<R: Rng + ?Sized>(modes: usize, rng: &mut R) -> Matrix {
    let mut frame = ModeFrame::default();
    while frame.len() < 2 * modes {
        let g = gaussian_vector(2 * modes, rng);
        // a near-dependent draw is simply redrawn
        let _ = frame.push_symplectic_pair(&g, 1e-6);
    }
    frame.to_matrix()
}

pub fn random_orthosymplectic(modes: usize, seed: u64) -> Matrix {
    random_orthosymplectic_with(modes, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn random_squeeze<R: Rng + ?Sized>(modes: usize, squeeze_max: f64, rng: &mut R) -> Matrix {
    let mut diag = Vec::with_capacity(2 * modes);
    for _ in 0..modes {
        let r = if squeeze_max > 0.0 {
            rng.random_range(-squeeze_max..=squeeze_max)
        } else {
            0.0
        };
        diag.push(r.exp());
        diag.push((-r).exp());
    }
    Matrix::from_diagonal(&Vector::from_vec(diag))
}

/// `O₁ Z₁ O₂ Z₂ O₃`: rotations alternating with single-mode squeezes, each
/// squeezing parameter uniform in `[−squeeze_max, squeeze_max]`.
pub fn random_symplectic_with<R: Rng + ?Sized>(
    modes: usize,
    squeeze_max: f64,
    rng: &mut R,
) -> Matrix {
    let mut s = random_orthosymplectic_with(modes, rng);
    for _ in 0..2 {
        s *= random_squeeze(modes, squeeze_max, rng);
        s *= random_orthosymplectic_with(modes, rng);
    }
    s
}

pub fn random_symplectic(modes: usize, squeeze_max: f64, seed: u64) -> Matrix {
    random_symplectic_with(modes, squeeze_max, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Seeded random covariance matrix `Σ = S·D·Sᵀ` with symplectic eigenvalues
/// uniform in `[ħ/2, (ħ/2)(1 + mix_max)]` and a random symplectic `S`.
/// Deterministic for a given seed.
pub fn random_covariance(
    partition: ModePartition,
    hbar: f64,
    seed: u64,
    squeeze_max: f64,
    mix_max: f64,
) -> Result<CovarianceMatrix> {
    if !(squeeze_max >= 0.0 && squeeze_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "squeeze_max = {squeeze_max}"
        )));
    }
    if !(mix_max >= 0.0 && mix_max.is_finite()) {
        return Err(Error::InvalidParameter(format!("mix_max = {mix_max}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modes = partition.modes();
    let half = hbar / 2.0;
    let mut diag = Vec::with_capacity(2 * modes);
    for _ in 0..modes {
        let nu = if mix_max > 0.0 {
            rng.random_range(half..=half * (1.0 + mix_max))
        } else {
            half
        };
        diag.push(nu);
        diag.push(nu);
    }
    let d = Matrix::from_diagonal(&Vector::from_vec(diag));
    let s = random_symplectic_with(modes, squeeze_max, &mut rng);
    CovarianceMatrix::new(symmetrize(&(&s * d * s.transpose())), hbar, partition)
}
