//! Quantum condition, symplectic spectrum and Williamson normal form.

use nalgebra::Cholesky;

use crate::check::{CheckReport, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::linalg::{
    asymmetry, canonical_sign, frobenius, hermitian_min_eigenvalue, sym_eigen_desc, sym_function,
    symmetrize, Matrix, Vector,
};
use crate::phase_space::{
    convert_ordering, symplectic_form, symplectic_residual, ModeFrame, ModePartition, Ordering,
};

/// Largest relative asymmetry accepted when building a covariance matrix.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Relative gap below which two squared symplectic eigenvalues are treated as
/// one degenerate class.
const GROUPING_TOL: f64 = 1e-8;

/// Routes whose symplectic-eigenvalue margin is larger than this must agree
/// with the Hermitian test.
const ROUTE_AGREEMENT_BAND: f64 = 1e-9;

/// Symmetric positive-definite `2n×2n` matrix together with `ħ` and the
/// bipartition. Stored in interleaved ordering; `source_ordering` records how
/// the data was supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    sigma: Matrix,
    hbar: f64,
    partition: ModePartition,
    source_ordering: Ordering,
}

impl CovarianceMatrix {
    pub fn new(sigma: Matrix, hbar: f64, partition: ModePartition) -> Result<Self> {
        Self::with_ordering(sigma, hbar, partition, Ordering::Interleaved)
    }

    /// Builds a covariance matrix from data given in `ordering`.
    pub fn with_ordering(
        sigma: Matrix,
        hbar: f64,
        partition: ModePartition,
        ordering: Ordering,
    ) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "hbar must be positive, got {hbar}"
            )));
        }
        if sigma.nrows() != sigma.ncols() {
            return Err(Error::BadShape {
                rows: sigma.nrows(),
                cols: sigma.ncols(),
            });
        }
        if sigma.nrows() != partition.dim() {
            return Err(Error::DimensionMismatch {
                expected: partition.dim(),
                found: sigma.nrows(),
            });
        }
        if sigma.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let residual = asymmetry(&sigma);
        if residual > SYMMETRY_TOL {
            return Err(Error::NotSymmetric { residual });
        }
        let sigma = convert_ordering(&symmetrize(&sigma), ordering, Ordering::Interleaved)?;
        if Cholesky::new(sigma.clone()).is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(CovarianceMatrix {
            sigma,
            hbar,
            partition,
            source_ordering: ordering,
        })
    }

    /// `(ħ/2)·I`, the vacuum.
    pub fn vacuum(partition: ModePartition, hbar: f64) -> Result<Self> {
        let d = partition.dim();
        Self::new(Matrix::identity(d, d) * (hbar / 2.0), hbar, partition)
    }

    /// Same partition, `ħ` and source ordering, new interleaved matrix.
    pub fn replace_sigma(&self, sigma: Matrix) -> Result<Self> {
        let mut out = Self::new(sigma, self.hbar, self.partition)?;
        out.source_ordering = self.source_ordering;
        Ok(out)
    }

    /// Interleaved covariance matrix.
    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    /// Covariance matrix in the requested ordering.
    pub fn sigma_in(&self, ordering: Ordering) -> Matrix {
        convert_ordering(&self.sigma, Ordering::Interleaved, ordering)
            .expect("covariance matrices always have even dimension")
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn partition(&self) -> ModePartition {
        self.partition
    }

    pub fn source_ordering(&self) -> Ordering {
        self.source_ordering
    }

    pub fn modes(&self) -> usize {
        self.partition.modes()
    }

    pub fn norm(&self) -> f64 {
        frobenius(&self.sigma)
    }

    pub(crate) fn cholesky(&self) -> Cholesky<f64, nalgebra::Dyn> {
        Cholesky::new(self.sigma.clone()).expect("validated at construction")
    }
}

/// Williamson normal form `Σ = S·D·Sᵀ`, `D = ⊕ₖ ν_k I₂`, with its verification
/// residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct WilliamsonForm {
    pub s: Matrix,
    /// Symplectic spectrum, descending.
    pub nu: Vec<f64>,
    /// ‖S·D·Sᵀ − Σ‖ / ‖Σ‖
    pub reconstruction_residual: f64,
    /// ‖SᵀJS − J‖ / max(1, ‖S‖²)
    pub symplectic_residual: f64,
}

impl WilliamsonForm {
    pub fn d(&self) -> Matrix {
        let diag: Vec<f64> = self.nu.iter().flat_map(|&v| [v, v]).collect();
        Matrix::from_diagonal(&Vector::from_vec(diag))
    }
}

/// Williamson data plus the ball-inclusion ratio `(ħ/2)·λ_max(SᵀΣ⁻¹S)`; the
/// inclusion `S·B(√ħ) ⊆ Ω_Σ` holds iff the ratio is at most one.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleSymplectic {
    pub form: WilliamsonForm,
    pub inclusion_ratio: f64,
}

impl AdmissibleSymplectic {
    pub fn s(&self) -> &Matrix {
        &self.form.s
    }
}

/// Decides `Σ + (iħ/2)J ⪰ 0`.
///
/// The margin is the smallest eigenvalue of the Hermitian matrix, computed on
/// its real symmetric embedding. As a second route the smallest symplectic
/// eigenvalue is compared with `ħ/2`; both verdicts are recorded and must
/// agree away from the boundary.
pub fn quantum_condition_check(cov: &CovarianceMatrix, tol: f64) -> CheckReport {
    let sigma = cov.sigma();
    let half_hbar = cov.hbar() / 2.0;
    let j = symplectic_form(cov.modes());
    let herm_min = hermitian_min_eigenvalue(sigma, &(j * half_hbar));
    let scale = cov.norm();
    let mut report = CheckReport::from_margin(herm_min, scale, tol)
        .with_residual("hermitian_min_eigenvalue", herm_min);

    match symplectic_eigenvalues(cov) {
        Ok(nu) => {
            let nu_min = nu.last().copied().unwrap_or(f64::NAN);
            let gap = nu_min - half_hbar;
            let route_pass = nu_min >= half_hbar - tol * scale;
            report = report
                .with_residual("nu_min", nu_min)
                .with_residual("nu_min_minus_half_hbar", gap);
            if route_pass != report.pass && gap.abs() > ROUTE_AGREEMENT_BAND {
                report.pass = false;
                report = report.with_note(format!(
                    "routes disagree: hermitian margin {herm_min:e}, nu_min - hbar/2 = {gap:e}"
                ));
            }
        }
        Err(e) => {
            report = report.with_note(format!("symplectic spectrum unavailable: {e}"));
        }
    }
    if report.pass && report.on_boundary() {
        report = report.with_note("quantum condition saturated (minimum-uncertainty direction)");
    }
    report
}

/// `K = Σ^{1/2} J Σ^{1/2}`, antisymmetrized.
fn normalized_form(cov: &CovarianceMatrix) -> (Matrix, Matrix) {
    let root = sym_function(cov.sigma(), f64::sqrt);
    let j = symplectic_form(cov.modes());
    let k = &root * j * &root;
    let k = (&k - k.transpose()) * 0.5;
    (root, k)
}

/// Orthogonal `Q` with `QᵀKQ = ⊕ₖ ν_k [[0, 1], [−1, 0]]`, `ν_k > 0`
/// descending, for antisymmetric nonsingular `K`.
///
/// This is the real Schur form of the normal matrix `K`. The invariant planes
/// come from the eigenspaces of the symmetric `KᵀK = −K²` (eigenvalues `ν²`,
/// each twice); inside each plane the pair `(v, −Kv/‖Kv‖)` already has the
/// canonical sign.
pub(crate) fn antisymmetric_canonical_form(k: &Matrix) -> Result<(Matrix, Vec<f64>)> {
    let d = k.nrows();
    if !d.is_multiple_of(2) {
        return Err(Error::BadShape { rows: d, cols: d });
    }
    let (mu, vecs) = sym_eigen_desc(&(k.transpose() * k));
    let mut frame = ModeFrame::default();
    let mut modes: Vec<(f64, Vector, Vector)> = Vec::with_capacity(d / 2);

    for group in group_descending(&mu, GROUPING_TOL) {
        if group.len() % 2 != 0 {
            return Err(Error::Canonicalization(format!(
                "eigenvalue class of odd size {} near nu^2 = {}",
                group.len(),
                mu[group[0]]
            )));
        }
        let mut remaining: Vec<Vector> =
            group.iter().map(|&i| vecs.column(i).into_owned()).collect();
        for _ in 0..group.len() / 2 {
            let (pos, residual) = pivot(&frame, &remaining);
            if residual.norm() < 0.1 {
                return Err(Error::Canonicalization(
                    "degenerate invariant subspace collapsed during orthogonalization".into(),
                ));
            }
            remaining.swap_remove(pos);
            let v = canonical_sign(residual.normalize());
            let kv = k * &v;
            if kv.norm().is_nan() || kv.norm() == 0.0 {
                return Err(Error::Canonicalization(
                    "singular antisymmetric form".into(),
                ));
            }
            let w = -kv;
            let (v, w) = frame
                .push_pair(&v, &w, 1e-3)
                .ok_or_else(|| Error::Canonicalization("companion vector collapsed".into()))?;
            let nu = v.dot(&(k * &w));
            if nu.is_nan() || nu <= 0.0 {
                return Err(Error::Canonicalization(format!(
                    "non-positive block entry {nu}"
                )));
            }
            modes.push((nu, v, w));
        }
    }

    modes.sort_by(|a, b| b.0.total_cmp(&a.0));
    let columns: Vec<Vector> = modes
        .iter()
        .flat_map(|(_, v, w)| [v.clone(), w.clone()])
        .collect();
    let nu = modes.iter().map(|m| m.0).collect();
    Ok((Matrix::from_columns(&columns), nu))
}

/// Picks the candidate with the largest component outside the frame.
pub(crate) fn pivot(frame: &ModeFrame, candidates: &[Vector]) -> (usize, Vector) {
    candidates
        .iter()
        .map(|c| frame.project_out(c))
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("pivot over an empty candidate set")
}

/// Splits indices of a descending sequence into runs whose consecutive
/// relative gaps are at most `tol`.
pub(crate) fn group_descending(values: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match groups.last_mut() {
            Some(g) => {
                let prev = values[*g.last().unwrap()];
                if prev - v <= tol * prev.abs().max(f64::MIN_POSITIVE) {
                    g.push(i);
                } else {
                    groups.push(vec![i]);
                }
            }
            None => groups.push(vec![i]),
        }
    }
    groups
}

/// Symplectic spectrum `ν₁ ≥ … ≥ ν_n`: the moduli of the eigenvalues of `JΣ`,
/// one per mode.
pub fn symplectic_eigenvalues(cov: &CovarianceMatrix) -> Result<Vec<f64>> {
    let (_, k) = normalized_form(cov);
    antisymmetric_canonical_form(&k).map(|(_, nu)| nu)
}

/// Williamson normal form, verified at [`DEFAULT_TOL`].
pub fn williamson(cov: &CovarianceMatrix) -> Result<WilliamsonForm> {
    williamson_with_tol(cov, DEFAULT_TOL)
}

/// Williamson normal form: `S = Σ^{1/2} Q D^{−1/2}` where `Q` brings
/// `K = Σ^{1/2} J Σ^{1/2}` to canonical block form. Both invariants are
/// re-checked against `tol`.
pub fn williamson_with_tol(cov: &CovarianceMatrix, tol: f64) -> Result<WilliamsonForm> {
    let (root, k) = normalized_form(cov);
    let (q, nu) = antisymmetric_canonical_form(&k)?;
    let mut s = root * q;
    for (mode, &v) in nu.iter().enumerate() {
        let scale = v.sqrt().recip();
        s.column_mut(2 * mode).scale_mut(scale);
        s.column_mut(2 * mode + 1).scale_mut(scale);
    }
    let mut form = WilliamsonForm {
        s,
        nu,
        reconstruction_residual: 0.0,
        symplectic_residual: 0.0,
    };
    let sigma = cov.sigma();
    form.reconstruction_residual =
        (&form.s * form.d() * form.s.transpose() - sigma).norm() / sigma.norm();
    form.symplectic_residual = symplectic_residual(&form.s);

    verify(
        "williamson",
        "reconstruction residual",
        form.reconstruction_residual,
        tol,
    )?;
    verify(
        "williamson",
        "symplectic residual",
        form.symplectic_residual,
        tol,
    )?;
    Ok(form)
}

pub(crate) fn verify(
    stage: &'static str,
    quantity: &'static str,
    value: f64,
    limit: f64,
) -> Result<()> {
    if value <= limit {
        Ok(())
    } else {
        Err(Error::Verification {
            stage,
            quantity,
            value,
            limit,
        })
    }
}

/// `(ħ/2)·λ_max(SᵀΣ⁻¹S)`; at most one iff `S·B(√ħ) ⊆ Ω_Σ`.
pub fn ball_inclusion_ratio(cov: &CovarianceMatrix, s: &Matrix) -> f64 {
    let chol = cov.cholesky();
    let x = chol
        .l()
        .solve_lower_triangular(s)
        .expect("Cholesky factor is nonsingular");
    let gram = x.transpose() * x;
    let (vals, _) = sym_eigen_desc(&gram);
    cov.hbar() / 2.0 * vals[0]
}

/// A symplectic `S` realizing `S·B(√ħ) ⊆ Ω_Σ`, which exists iff the quantum
/// condition holds. The Williamson `S` is used.
pub fn admissible_s(cov: &CovarianceMatrix, tol: f64) -> Result<AdmissibleSymplectic> {
    let check = quantum_condition_check(cov, tol);
    if !check.pass {
        return Err(Error::QuantumConditionViolated {
            nu_min: check.residual("nu_min").unwrap_or(f64::NAN),
            bound: cov.hbar() / 2.0,
        });
    }
    let form = williamson_with_tol(cov, tol)?;
    let inclusion_ratio = ball_inclusion_ratio(cov, &form.s);
    verify(
        "admissible_s",
        "ball inclusion ratio - 1",
        inclusion_ratio - 1.0,
        tol,
    )?;
    Ok(AdmissibleSymplectic {
        form,
        inclusion_ratio,
    })
}
