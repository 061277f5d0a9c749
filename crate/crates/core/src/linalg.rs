//! Dense helpers shared by the decomposition modules.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

pub fn frobenius(m: &Matrix) -> f64 {
    m.norm()
}

pub fn is_square_even(m: &Matrix) -> bool {
    m.nrows() == m.ncols() && m.nrows().is_multiple_of(2) && m.nrows() > 0
}

pub fn ensure_square_even(m: &Matrix) -> Result<()> {
    if is_square_even(m) {
        Ok(())
    } else {
        Err(Error::BadShape {
            rows: m.nrows(),
            cols: m.ncols(),
        })
    }
}

pub fn symmetrize(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

/// Relative asymmetry ‖M − Mᵀ‖ / ‖M‖ (zero for the zero matrix).
pub fn asymmetry(m: &Matrix) -> f64 {
    let norm = m.norm();
    if norm == 0.0 {
        return 0.0;
    }
    (m - m.transpose()).norm() / norm
}

/// Symmetric eigendecomposition with eigenvalues sorted in descending order.
/// The input is symmetrized first.
pub fn sym_eigen_desc(m: &Matrix) -> (Vec<f64>, Matrix) {
    let eig = SymmetricEigen::new(symmetrize(m));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = Matrix::zeros(m.nrows(), m.ncols());
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Flips `v` so that its largest-magnitude entry is positive.
pub fn canonical_sign(v: Vector) -> Vector {
    let lead = v
        .iter()
        .copied()
        .fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
    if lead < 0.0 {
        -v
    } else {
        v
    }
}

pub fn min_eigenvalue(m: &Matrix) -> f64 {
    SymmetricEigen::new(symmetrize(m))
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Applies `f` to the spectrum of a symmetric matrix: V f(Λ) Vᵀ.
pub fn sym_function(m: &Matrix, f: impl Fn(f64) -> f64) -> Matrix {
    let eig = SymmetricEigen::new(symmetrize(m));
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        let fj = f(lambda);
        scaled.column_mut(j).scale_mut(fj);
    }
    symmetrize(&(scaled * v.transpose()))
}

/// Principal square root of a symmetric positive-definite matrix.
pub fn sym_sqrt(m: &Matrix) -> Result<Matrix> {
    if min_eigenvalue(m) <= 0.0 {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(sym_function(m, f64::sqrt))
}

/// Smallest eigenvalue of the Hermitian matrix A + iB (A symmetric, B
/// antisymmetric), computed on the real symmetric embedding [[A, −B], [B, A]].
/// The embedding has the same spectrum as A + iB with every eigenvalue doubled.
pub fn hermitian_min_eigenvalue(a: &Matrix, b: &Matrix) -> f64 {
    let d = a.nrows();
    let mut emb = Matrix::zeros(2 * d, 2 * d);
    emb.view_mut((0, 0), (d, d)).copy_from(a);
    emb.view_mut((d, d), (d, d)).copy_from(a);
    emb.view_mut((0, d), (d, d)).copy_from(&(-b));
    emb.view_mut((d, 0), (d, d)).copy_from(b);
    min_eigenvalue(&emb)
}
