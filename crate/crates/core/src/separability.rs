//! Werner-Wolf separability certificates, the partial-transpose test, and the
//! disentangling pipeline.
//!
//! The pipeline takes the Williamson `S` of `Σ`, splits it as `S = P·R`,
//! diagonalizes `P = Uᵀ·Δ·U` with a symplectic rotation `U`, and returns
//! `Σ_U = U·Σ·Uᵀ` together with the witness `Σ_A = (ħ/2)Δ_A²`,
//! `Σ_B = (ħ/2)Δ_B²`. Since `Σ_U ⪰ (ħ/2)Δ²`, the rotated state is separable.

use std::fmt;

use crate::check::CheckReport;
use crate::decomp::{delta_blocks, ortho_diagonalize, symplectic_polar, PolarForm};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_min_eigenvalue, min_eigenvalue, symmetrize, Matrix, Vector};
use crate::phase_space::{direct_sum, symplectic_form, ModePartition};
use crate::spectral::{
    admissible_s, quantum_condition_check, verify, AdmissibleSymplectic, CovarianceMatrix,
};

/// Partial covariance matrices `(Σ_A, Σ_B)` offered as a Werner-Wolf
/// certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityWitness {
    pub sigma_a: Matrix,
    pub sigma_b: Matrix,
    pub hbar: f64,
}

impl SeparabilityWitness {
    /// `Σ_A = (ħ/2)Δ_A²`, `Σ_B = (ħ/2)Δ_B²`, one block
    /// `(ħ/2)·diag(λ², λ⁻²)` per mode.
    pub fn from_lambdas(lambdas: &[f64], partition: ModePartition, hbar: f64) -> Result<Self> {
        let (da, db) = delta_blocks(lambdas, partition)?;
        Ok(SeparabilityWitness {
            sigma_a: &da * &da * (hbar / 2.0),
            sigma_b: &db * &db * (hbar / 2.0),
            hbar,
        })
    }

    /// `Σ_A ⊕ Σ_B`.
    pub fn joined(&self) -> Matrix {
        direct_sum(&self.sigma_a, &self.sigma_b)
    }
}

/// Checks `Σ_A + (iħ/2)J_A ⪰ 0`, `Σ_B + (iħ/2)J_B ⪰ 0` and
/// `Σ − (Σ_A ⊕ Σ_B) ⪰ 0`. The margin is the smallest of the three minimum
/// eigenvalues, judged against `tol·‖Σ‖`.
pub fn werner_wolf_check(
    cov: &CovarianceMatrix,
    witness: &SeparabilityWitness,
    tol: f64,
) -> Result<CheckReport> {
    let partition = cov.partition();
    for (block, modes) in [
        (&witness.sigma_a, partition.n_a()),
        (&witness.sigma_b, partition.n_b()),
    ] {
        if block.nrows() != 2 * modes || block.ncols() != 2 * modes {
            return Err(Error::DimensionMismatch {
                expected: 2 * modes,
                found: block.nrows().max(block.ncols()),
            });
        }
    }
    if (witness.hbar - cov.hbar()).abs() > 1e-12 * cov.hbar() {
        return Err(Error::HbarMismatch {
            left: cov.hbar(),
            right: witness.hbar,
        });
    }
    let half = cov.hbar() / 2.0;
    let partial_a =
        hermitian_min_eigenvalue(&witness.sigma_a, &(symplectic_form(partition.n_a()) * half));
    let partial_b =
        hermitian_min_eigenvalue(&witness.sigma_b, &(symplectic_form(partition.n_b()) * half));
    let dominance = min_eigenvalue(&(cov.sigma() - witness.joined()));
    let margin = partial_a.min(partial_b).min(dominance);
    let mut report = CheckReport::from_margin(margin, cov.norm(), tol)
        .with_residual("partial_a_min_eigenvalue", partial_a)
        .with_residual("partial_b_min_eigenvalue", partial_b)
        .with_residual("dominance_min_eigenvalue", dominance);
    if [partial_a, partial_b, dominance].iter().any(|x| x.is_nan()) {
        report.pass = false;
    }
    if report.pass && report.on_boundary() {
        report = report.with_note("certificate holds with equality in at least one condition");
    }
    Ok(report)
}

/// Everything produced by [`disentangle`].
#[derive(Debug, Clone)]
pub struct DisentangleResult {
    /// Symplectic rotation with `U·Σ·Uᵀ` separable.
    pub u: Matrix,
    pub sigma_u: CovarianceMatrix,
    pub witness: SeparabilityWitness,
    /// `λ_k` of `Δ`, descending; the first `n_A` belong to subsystem A.
    pub lambdas: Vec<f64>,
    pub admissible: AdmissibleSymplectic,
    pub polar: PolarForm,
    pub quantum: CheckReport,
    pub werner_wolf: CheckReport,
    pub residuals: Vec<(String, f64)>,
}

impl DisentangleResult {
    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
    }

    pub fn nu(&self) -> &[f64] {
        &self.admissible.form.nu
    }
}

/// Constructs a symplectic rotation `U` that makes the state separable, with
/// the certificate for `U·Σ·Uᵀ`. Every stage is verified against `tol`; a
/// failing stage is reported as [`Error::Verification`].
pub fn disentangle(cov: &CovarianceMatrix, tol: f64) -> Result<DisentangleResult> {
    let quantum = quantum_condition_check(cov, tol);
    if !quantum.pass {
        return Err(Error::QuantumConditionViolated {
            nu_min: quantum.residual("nu_min").unwrap_or(f64::NAN),
            bound: cov.hbar() / 2.0,
        });
    }
    let admissible = admissible_s(cov, tol)?;
    let polar = symplectic_polar(admissible.s(), tol)?;
    let rotation = ortho_diagonalize(&polar.p, tol)?;
    let u = rotation.u.clone();
    let sigma_u = cov.replace_sigma(symmetrize(&(&u * cov.sigma() * u.transpose())))?;
    let witness =
        SeparabilityWitness::from_lambdas(&rotation.lambdas, cov.partition(), cov.hbar())?;

    let scale = cov.norm();
    let lower_bound = rotation.delta() * rotation.delta() * (cov.hbar() / 2.0);
    let inequality_margin = min_eigenvalue(&(sigma_u.sigma() - &lower_bound));
    verify(
        "disentangle",
        "negated margin of sigma_U - (hbar/2) Delta^2",
        -inequality_margin,
        tol * scale,
    )?;

    let werner_wolf = werner_wolf_check(&sigma_u, &witness, tol)?;
    verify(
        "disentangle",
        "negated Werner-Wolf margin",
        -werner_wolf.margin,
        tol * scale,
    )?;

    let mut residuals = vec![
        ("quantum_margin".to_string(), quantum.margin),
        (
            "williamson_reconstruction".to_string(),
            admissible.form.reconstruction_residual,
        ),
        (
            "williamson_symplectic".to_string(),
            admissible.form.symplectic_residual,
        ),
        (
            "ball_inclusion_ratio".to_string(),
            admissible.inclusion_ratio,
        ),
    ];
    residuals.extend(
        polar
            .residuals
            .iter()
            .map(|(k, v)| (format!("polar_{k}"), *v)),
    );
    residuals.extend(
        rotation
            .residuals
            .iter()
            .map(|(k, v)| (format!("rotation_{k}"), *v)),
    );
    residuals.push(("delta_inequality_margin".to_string(), inequality_margin));
    residuals.push(("werner_wolf_margin".to_string(), werner_wolf.margin));

    Ok(DisentangleResult {
        u,
        sigma_u,
        witness,
        lambdas: rotation.lambdas,
        admissible,
        polar,
        quantum,
        werner_wolf,
        residuals,
    })
}

/// Outcome of the partial-transpose test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PptVerdict {
    /// `ΛΣΛ` violates the quantum condition.
    Entangled,
    /// Consistent with separability; conclusive only for `1 × N` partitions.
    PptConsistent { conclusive: bool },
}

impl fmt::Display for PptVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PptVerdict::Entangled => f.write_str("entangled"),
            PptVerdict::PptConsistent { conclusive: true } => {
                f.write_str("PPT (conclusive for this 1xN partition: separable)")
            }
            PptVerdict::PptConsistent { conclusive: false } => {
                f.write_str("PPT (undetermined in general)")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct PptReport {
    pub verdict: PptVerdict,
    pub check: CheckReport,
    /// Smallest symplectic eigenvalue of `ΛΣΛ`.
    pub min_nu: f64,
}

/// `ΛΣΛ` with `Λ` flipping the momentum of every B mode.
pub fn partial_transpose(cov: &CovarianceMatrix) -> CovarianceMatrix {
    let p = cov.partition();
    let flip: Vec<f64> = (0..p.modes())
        .flat_map(|k| if k < p.n_a() { [1.0, 1.0] } else { [1.0, -1.0] })
        .collect();
    let lambda = Matrix::from_diagonal(&Vector::from_vec(flip));
    cov.replace_sigma(&lambda * cov.sigma() * &lambda)
        .expect("congruence by a signature matrix keeps Σ positive definite")
}

/// Partial-transpose criterion. A failing quantum condition on `ΛΣΛ`
/// certifies entanglement; a pass is only reported as PPT-consistent.
pub fn ppt_test(cov: &CovarianceMatrix, tol: f64) -> PptReport {
    let transposed = partial_transpose(cov);
    let mut check = quantum_condition_check(&transposed, tol);
    let min_nu = check.residual("nu_min").unwrap_or(f64::NAN);
    let p = cov.partition();
    let verdict = if check.pass {
        PptVerdict::PptConsistent {
            conclusive: p.n_a() == 1 || p.n_b() == 1,
        }
    } else {
        PptVerdict::Entangled
    };
    check = check.with_note(verdict.to_string());
    PptReport {
        verdict,
        check,
        min_nu,
    }
}
