//! Symplectic polar decomposition `S = P·R` and diagonalization of the
//! positive factor by a symplectic rotation, `P = Uᵀ·Δ·U`.

use crate::error::{Error, Result};
use crate::linalg::{
    asymmetry, canonical_sign, ensure_square_even, sym_eigen_desc, sym_function, Matrix, Vector,
};
use crate::phase_space::{
    is_orthosymplectic, is_symplectic, orthogonality_residual, symplectic_residual, ModeFrame,
    ModePartition,
};
use crate::spectral::{group_descending, pivot, verify};

/// Relative tolerance for grouping eigenvalues of `P` into `{λ, λ⁻¹}` classes.
pub const PAIRING_TOL: f64 = 1e-8;

/// `S = P·R` with `P` symmetric positive-definite symplectic and `R`
/// orthosymplectic.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarForm {
    pub p: Matrix,
    pub r: Matrix,
    pub residuals: Vec<(String, f64)>,
}

/// `P = Uᵀ·Δ·U` with `U` orthosymplectic and
/// `Δ = ⊕ₖ diag(λ_k, λ_k⁻¹)`, `λ₁ ≥ … ≥ λ_n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationDiagonalization {
    pub u: Matrix,
    pub lambdas: Vec<f64>,
    pub residuals: Vec<(String, f64)>,
}

impl RotationDiagonalization {
    pub fn delta(&self) -> Matrix {
        delta_matrix(&self.lambdas)
    }
}

/// Left polar decomposition: `P = (S·Sᵀ)^{1/2}`, `R = P⁻¹·S`.
pub fn symplectic_polar(s: &Matrix, tol: f64) -> Result<PolarForm> {
    ensure_square_even(s)?;
    let check = is_symplectic(s, tol);
    if !check.pass {
        return Err(Error::NotSymplectic {
            residual: -check.margin,
        });
    }
    let gram = s * s.transpose();
    let p = sym_function(&gram, f64::sqrt);
    let p_inv = sym_function(&gram, |x| x.sqrt().recip());
    let r = p_inv * s;

    let reconstruction = (&p * &r - s).norm() / s.norm();
    let r_orth = orthogonality_residual(&r);
    let r_symp = symplectic_residual(&r);
    let p_symp = symplectic_residual(&p);
    verify("polar", "reconstruction residual", reconstruction, tol)?;
    verify("polar", "orthogonality of R", r_orth, tol)?;
    verify("polar", "symplectic residual of R", r_symp, tol)?;
    // P is a positive power of the symplectic S·Sᵀ; its residual is looser
    verify("polar", "symplectic residual of P", p_symp, 10.0 * tol)?;
    Ok(PolarForm {
        p,
        r,
        residuals: vec![
            ("input_symplectic".into(), -check.margin),
            ("reconstruction".into(), reconstruction),
            ("r_orthogonal".into(), r_orth),
            ("r_symplectic".into(), r_symp),
            ("p_symplectic".into(), p_symp),
        ],
    })
}

/// Orthosymplectic diagonalization of a symmetric positive-definite
/// symplectic `P`.
///
/// Eigenvalues are grouped into classes. For a class with `λ > 1` the
/// eigenvectors `v` are completed by `Jᵀv`, which are eigenvectors for `λ⁻¹`
/// because `PJ = JP⁻¹`. For the `λ = 1` class the pairs `(v, Jᵀv)` are built
/// inside the eigenspace by restricted Gram-Schmidt. The columns
/// `(v₁, Jᵀv₁, v₂, Jᵀv₂, …)` form `Uᵀ`.
pub fn ortho_diagonalize(p: &Matrix, tol: f64) -> Result<RotationDiagonalization> {
    ensure_square_even(p)?;
    let sym = asymmetry(p);
    if sym > tol {
        return Err(Error::NotSymmetric { residual: sym });
    }
    let symp = is_symplectic(p, 10.0 * tol);
    if !symp.pass {
        return Err(Error::NotSymplectic {
            residual: -symp.margin,
        });
    }
    let (values, vectors) = sym_eigen_desc(p);
    let d = values.len();
    if values[d - 1] <= 0.0 {
        return Err(Error::NotPositiveDefinite);
    }
    for i in 0..d / 2 {
        let product = values[i] * values[d - 1 - i];
        if (product - 1.0).abs() > PAIRING_TOL.sqrt() {
            return Err(Error::Pairing(format!(
                "eigenvalues {} and {} are not reciprocal",
                values[i],
                values[d - 1 - i]
            )));
        }
    }

    let mut frame = ModeFrame::default();
    let mut modes: Vec<(f64, Vector, Vector)> = Vec::with_capacity(d / 2);
    for group in group_descending(&values, PAIRING_TOL) {
        let lead = values[group[0]];
        let tail = values[*group.last().unwrap()];
        let unit_class = (lead - 1.0).abs() <= PAIRING_TOL || (tail - 1.0).abs() <= PAIRING_TOL;
        let picks = if unit_class {
            if group.len() % 2 != 0 {
                return Err(Error::Pairing(format!(
                    "unit eigenvalue class has odd dimension {}",
                    group.len()
                )));
            }
            group.len() / 2
        } else if tail > 1.0 {
            group.len()
        } else {
            // λ < 1: spanned by the Jᵀv partners already in the frame
            continue;
        };
        let mut remaining: Vec<Vector> = group
            .iter()
            .map(|&i| vectors.column(i).into_owned())
            .collect();
        for _ in 0..picks {
            let (pos, residual) = pivot(&frame, &remaining);
            remaining.swap_remove(pos);
            let (v, w) = frame
                .push_symplectic_pair(&canonical_sign(residual), 0.1)
                .ok_or_else(|| {
                    Error::Pairing(format!(
                        "eigenspace near {lead} has no room left for a symplectic pair"
                    ))
                })?;
            let lambda = if unit_class { 1.0 } else { v.dot(&(p * &v)) };
            modes.push((lambda, v, w));
        }
    }
    if modes.len() != d / 2 {
        return Err(Error::Pairing(format!(
            "found {} modes, expected {}",
            modes.len(),
            d / 2
        )));
    }

    modes.sort_by(|a, b| b.0.total_cmp(&a.0));
    let columns: Vec<Vector> = modes
        .iter()
        .flat_map(|(_, v, w)| [v.clone(), w.clone()])
        .collect();
    let u = Matrix::from_columns(&columns).transpose();
    let lambdas: Vec<f64> = modes.iter().map(|m| m.0).collect();

    let reconstruction = (reconstruct(&u, &lambdas) - p).norm() / p.norm();
    let rot = is_orthosymplectic(&u, tol);
    verify(
        "ortho_diagonalize",
        "reconstruction residual",
        reconstruction,
        tol,
    )?;
    verify(
        "ortho_diagonalize",
        "orthosymplectic residual of U",
        -rot.margin,
        tol,
    )?;
    Ok(RotationDiagonalization {
        u,
        lambdas,
        residuals: vec![
            ("input_symplectic".into(), -symp.margin),
            ("reconstruction".into(), reconstruction),
            (
                "u_orthogonal".into(),
                rot.residual("orthogonal").unwrap_or(f64::NAN),
            ),
            (
                "u_symplectic".into(),
                rot.residual("symplectic").unwrap_or(f64::NAN),
            ),
        ],
    })
}

/// `Δ = ⊕ₖ diag(λ_k, λ_k⁻¹)`.
pub fn delta_matrix(lambdas: &[f64]) -> Matrix {
    let diag: Vec<f64> = lambdas.iter().flat_map(|&l| [l, l.recip()]).collect();
    Matrix::from_diagonal(&Vector::from_vec(diag))
}

/// `Uᵀ·Δ·U`.
pub fn reconstruct(u: &Matrix, lambdas: &[f64]) -> Matrix {
    u.transpose() * delta_matrix(lambdas) * u
}

/// Splits `Δ` into `(Δ_A, Δ_B)`: the first `n_A` mode blocks and the rest.
pub fn delta_blocks(lambdas: &[f64], partition: ModePartition) -> Result<(Matrix, Matrix)> {
    if lambdas.len() != partition.modes() {
        return Err(Error::DimensionMismatch {
            expected: partition.modes(),
            found: lambdas.len(),
        });
    }
    let (a, b) = lambdas.split_at(partition.n_a());
    Ok((delta_matrix(a), delta_matrix(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::{direct_sum, symplectic_form};
    use crate::states::{random_orthosymplectic, random_symplectic};
    use proptest::prelude::*;

    const TOL: f64 = 1e-10;

    fn mat(rows: usize, data: &[f64]) -> Matrix {
        Matrix::from_row_slice(rows, data.len() / rows, data)
    }

    fn golden() -> f64 {
        (1.0 + 5f64.sqrt()) / 2.0
    }

    #[test]
    fn polar_of_positive_matrix() {
        let s = mat(2, &[2.0, 0.0, 0.0, 0.5]);
        let polar = symplectic_polar(&s, TOL).unwrap();
        assert!((&polar.p - &s).norm() < 1e-15);
        assert!((&polar.r - Matrix::identity(2, 2)).norm() < 1e-15);
    }

    #[test]
    fn polar_of_rotation() {
        let (sn, c) = 1.1f64.sin_cos();
        let s = mat(2, &[c, -sn, sn, c]);
        let polar = symplectic_polar(&s, TOL).unwrap();
        assert!((&polar.p - Matrix::identity(2, 2)).norm() < 1e-14);
        assert!((&polar.r - &s).norm() < 1e-14);
    }

    #[test]
    fn polar_of_shear() {
        // M = S·Sᵀ = [[2,1],[1,1]], det 1, tr 3: √M = (M + I)/√5
        let s = mat(2, &[1.0, 1.0, 0.0, 1.0]);
        let polar = symplectic_polar(&s, TOL).unwrap();
        let root5 = 5f64.sqrt();
        let p_expected = mat(2, &[3.0, 1.0, 1.0, 2.0]) / root5;
        // R = P⁻¹S with P⁻¹ = [[2,−1],[−1,3]]/√5
        let r_expected = mat(2, &[2.0, 1.0, -1.0, 2.0]) / root5;
        assert!((&polar.p - &p_expected).norm() < 1e-14);
        assert!((&polar.r - &r_expected).norm() < 1e-14);
        assert!((polar.p[(0, 0)] - 1.3416).abs() < 1e-4);
        assert!((polar.r[(0, 1)] - 0.4472).abs() < 1e-4);
        // the right-polar reading (SᵀS)^{-1/2}·S is not orthogonal here
        let right = sym_function(&(s.transpose() * &s), |x| x.sqrt().recip()) * &s;
        assert!(orthogonality_residual(&right) > 0.1);
    }

    #[test]
    fn polar_rejects_non_symplectic() {
        let s = mat(2, &[2.0, 0.0, 0.0, 2.0]);
        assert!(matches!(
            symplectic_polar(&s, TOL),
            Err(Error::NotSymplectic { .. })
        ));
    }

    #[test]
    fn diagonal_input() {
        let d = ortho_diagonalize(&mat(2, &[4.0, 0.0, 0.0, 0.25]), TOL).unwrap();
        assert_eq!(d.lambdas, vec![4.0]);
        assert!((d.u.abs() - Matrix::identity(2, 2)).norm() < 1e-15);
        // fixed sign: U is a rotation, so the diagonal must be +1
        assert!((&d.u - Matrix::identity(2, 2)).norm() < 1e-15);
    }

    #[test]
    fn identity_input() {
        let d = ortho_diagonalize(&Matrix::identity(6, 6), TOL).unwrap();
        assert_eq!(d.lambdas, vec![1.0; 3]);
        assert!(is_orthosymplectic(&d.u, TOL).pass);
        assert!((reconstruct(&d.u, &d.lambdas) - Matrix::identity(6, 6)).norm() < 1e-14);
    }

    #[test]
    fn shear_polar_factor() {
        let p = mat(2, &[3.0, 1.0, 1.0, 2.0]) / 5f64.sqrt();
        let d = ortho_diagonalize(&p, TOL).unwrap();
        assert!((d.lambdas[0] - golden()).abs() < 1e-14);
        assert!((d.lambdas[0] - 1.6180).abs() < 1e-4);
        // first row of U is the unit eigenvector of P for φ: ∝ (φ, 1)
        let v = Vector::from_vec(vec![golden(), 1.0]).normalize();
        let row = d.u.row(0).transpose();
        assert!((row.dot(&v).abs() - 1.0).abs() < 1e-14);
        assert!(is_orthosymplectic(&d.u, TOL).pass);
    }

    #[test]
    fn rejects_non_symplectic_input() {
        let p = mat(2, &[2.0, 0.0, 0.0, 2.0]);
        assert!(matches!(
            ortho_diagonalize(&p, TOL),
            Err(Error::NotSymplectic { .. })
        ));
        let asym = mat(2, &[1.0, 0.5, 0.0, 1.0]);
        assert!(matches!(
            ortho_diagonalize(&asym, TOL),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn reconstruct_and_split() {
        let r = reconstruct(&Matrix::identity(2, 2), &[2.0]);
        assert_eq!(r, mat(2, &[2.0, 0.0, 0.0, 0.5]));
        let e = std::f64::consts::E;
        let p = ModePartition::new(1, 1).unwrap();
        let (a, b) = delta_blocks(&[e, e], p).unwrap();
        let expected = mat(2, &[e, 0.0, 0.0, e.recip()]);
        assert_eq!(a, expected);
        assert_eq!(b, expected);
        assert!(is_symplectic(&a, 1e-15).pass);
        assert!(delta_blocks(&[e], p).is_err());
        assert_eq!(direct_sum(&a, &b), delta_matrix(&[e, e]));
    }

    #[test]
    fn degenerate_squeezing_classes() {
        // two modes squeezed by the same amount, mixed by a rotation
        let u = random_orthosymplectic(3, 11);
        let p = u.transpose() * delta_matrix(&[3.0, 3.0, 1.0]) * &u;
        let d = ortho_diagonalize(&crate::linalg::symmetrize(&p), TOL).unwrap();
        assert!((d.lambdas[0] - 3.0).abs() < 1e-12);
        assert!((d.lambdas[1] - 3.0).abs() < 1e-12);
        assert_eq!(d.lambdas[2], 1.0);
        assert!(d.residuals.iter().all(|(_, v)| *v <= TOL));
    }

    fn random_positive_symplectic(modes: usize, seed: u64) -> Matrix {
        let t = random_symplectic(modes, 0.6, seed);
        crate::linalg::symmetrize(&(t.transpose() * &t))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn polar_invariants(seed in any::<u64>(), modes in 1usize..=10) {
            let s = random_symplectic(modes, 0.6, seed);
            let polar = symplectic_polar(&s, TOL).unwrap();
            let id = Matrix::identity(2 * modes, 2 * modes);
            let j = symplectic_form(modes);
            prop_assert!((polar.r.transpose() * &polar.r - &id).norm() <= 1e-10);
            prop_assert!(symplectic_residual(&polar.r) <= 1e-10);
            prop_assert!((&polar.p * &polar.r - &s).norm() / s.norm() <= 1e-10);
            let pn = polar.p.norm();
            prop_assert!((&polar.p * &j * &polar.p - &j).norm() <= 1e-9 * (pn * pn).max(1.0));
        }

        #[test]
        fn spectrum_is_reciprocal(seed in any::<u64>(), modes in 1usize..=6) {
            let p = random_positive_symplectic(modes, seed);
            let (vals, _) = sym_eigen_desc(&p);
            let d = vals.len();
            for i in 0..d {
                prop_assert!((vals[i] * vals[d - 1 - i] - 1.0).abs() <= 1e-9);
            }
        }

        #[test]
        fn diagonalization_round_trip(seed in any::<u64>(), modes in 1usize..=10) {
            let p = random_positive_symplectic(modes, seed);
            let d = ortho_diagonalize(&p, TOL).unwrap();
            prop_assert!(is_orthosymplectic(&d.u, 1e-10).pass);
            prop_assert!(d.lambdas.iter().all(|&l| l >= 1.0 - 1e-12));
            prop_assert!(d.lambdas.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!((reconstruct(&d.u, &d.lambdas) - &p).norm() / p.norm() <= 1e-10);
        }
    }
}
