//! Bipartite phase-space geometry.
//!
//! Internally every matrix uses the interleaved ordering
//! `(x₁, p₁, …, x_n, p_n)` with subsystem A occupying the first `2·n_A`
//! coordinates. The blocked ordering `(x₁, …, x_n, p₁, …, p_n)` is only
//! meant for I/O.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::linalg::{is_square_even, Matrix, Vector};

/// Split of `n = n_A + n_B` modes into two subsystems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModePartition {
    n_a: usize,
    n_b: usize,
}

impl ModePartition {
    pub fn new(n_a: usize, n_b: usize) -> Result<Self> {
        if n_a == 0 || n_b == 0 {
            return Err(Error::InvalidPartition { n_a, n_b });
        }
        Ok(ModePartition { n_a, n_b })
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    /// Total number of modes.
    pub fn modes(&self) -> usize {
        self.n_a + self.n_b
    }

    /// Phase-space dimension `2n`.
    pub fn dim(&self) -> usize {
        2 * self.modes()
    }
}

impl fmt::Display for ModePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n_a, self.n_b)
    }
}

/// Phase-space variable ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Ordering {
    /// `(x₁, p₁, …, x_n, p_n)`.
    #[default]
    Interleaved,
    /// `(x₁, …, x_n, p₁, …, p_n)`.
    Blocked,
}

impl Ordering {
    pub fn as_str(&self) -> &'static str {
        match self {
            Ordering::Interleaved => "interleaved",
            Ordering::Blocked => "blocked",
        }
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Ordering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "interleaved" => Ok(Ordering::Interleaved),
            "blocked" => Ok(Ordering::Blocked),
            other => Err(Error::InvalidParameter(format!(
                "unknown ordering `{other}`"
            ))),
        }
    }
}

/// The standard symplectic form `J`, with `Jᵀ = −J` and `J² = −I`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm(Matrix);

impl SymplecticForm {
    pub fn into_inner(self) -> Matrix {
        self.0
    }
}

impl Deref for SymplecticForm {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.0
    }
}

/// Interleaved `J = ⊕ₖ [[0, 1], [−1, 0]]` on `modes` modes.
pub fn symplectic_form(modes: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        j[(2 * k, 2 * k + 1)] = 1.0;
        j[(2 * k + 1, 2 * k)] = -1.0;
    }
    j
}

/// `J = J_A ⊕ J_B` in the requested ordering.
pub fn build_j(partition: ModePartition, ordering: Ordering) -> SymplecticForm {
    let j = direct_sum(
        &symplectic_form(partition.n_a()),
        &symplectic_form(partition.n_b()),
    );
    match ordering {
        Ordering::Interleaved => SymplecticForm(j),
        Ordering::Blocked => SymplecticForm(permute(&j, Ordering::Interleaved, Ordering::Blocked)),
    }
}

/// Interleaved index → blocked index, for `modes` modes.
pub fn ordering_permutation(modes: usize) -> Vec<usize> {
    (0..2 * modes)
        .map(|i| if i % 2 == 0 { i / 2 } else { modes + i / 2 })
        .collect()
}

fn permute(m: &Matrix, from: Ordering, to: Ordering) -> Matrix {
    if from == to {
        return m.clone();
    }
    let perm = ordering_permutation(m.nrows() / 2);
    let d = m.nrows();
    let mut out = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            match to {
                Ordering::Blocked => out[(perm[i], perm[j])] = m[(i, j)],
                Ordering::Interleaved => out[(i, j)] = m[(perm[i], perm[j])],
            }
        }
    }
    out
}

/// Re-expresses a `2n×2n` matrix in another variable ordering. Pure
/// permutation of entries, so round trips are bit-exact.
pub fn convert_ordering(m: &Matrix, from: Ordering, to: Ordering) -> Result<Matrix> {
    if !is_square_even(m) {
        return Err(Error::BadShape {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(permute(m, from, to))
}

/// Vector counterpart of [`convert_ordering`].
pub fn convert_vector_ordering(v: &Vector, from: Ordering, to: Ordering) -> Result<Vector> {
    if !v.len().is_multiple_of(2) || v.is_empty() {
        return Err(Error::BadShape {
            rows: v.len(),
            cols: 1,
        });
    }
    if from == to {
        return Ok(v.clone());
    }
    let perm = ordering_permutation(v.len() / 2);
    let mut out = Vector::zeros(v.len());
    for i in 0..v.len() {
        match to {
            Ordering::Blocked => out[perm[i]] = v[i],
            Ordering::Interleaved => out[i] = v[perm[i]],
        }
    }
    Ok(out)
}

/// Block-diagonal embedding `A ⊕ B`, with `A` in the leading rows/columns.
pub fn direct_sum(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = Matrix::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

/// Reports `‖SᵀJS − J‖ / max(1, ‖S‖²)` against `tol`.
pub fn is_symplectic(s: &Matrix, tol: f64) -> CheckReport {
    if !is_square_even(s) {
        return CheckReport::from_residual("symplectic", f64::INFINITY, tol).with_note(format!(
            "shape {}x{} is not square of even dimension",
            s.nrows(),
            s.ncols()
        ));
    }
    CheckReport::from_residual("symplectic", symplectic_residual(s), tol)
}

pub(crate) fn symplectic_residual(s: &Matrix) -> f64 {
    let j = symplectic_form(s.nrows() / 2);
    let norm = s.norm();
    (s.transpose() * &j * s - &j).norm() / (norm * norm).max(1.0)
}

pub(crate) fn orthogonality_residual(u: &Matrix) -> f64 {
    let n = u.nrows();
    (u.transpose() * u - Matrix::identity(n, n)).norm()
}

/// Symplectic and orthogonal (`‖UᵀU − I‖`) at once; passes iff both pass.
pub fn is_orthosymplectic(u: &Matrix, tol: f64) -> CheckReport {
    if !is_square_even(u) {
        return is_symplectic(u, tol).with_residual("orthogonal", f64::INFINITY);
    }
    let symp = symplectic_residual(u);
    let orth = orthogonality_residual(u);
    let worst = symp.max(orth);
    let mut report = CheckReport::from_margin(-worst, 1.0, tol)
        .with_residual("symplectic", symp)
        .with_residual("orthogonal", orth);
    if worst.is_nan() {
        report.pass = false;
    }
    report
}

/// `Jᵀv` for an interleaved vector: each `(x, p)` pair maps to `(−p, x)`.
pub(crate) fn j_transpose_apply(v: &Vector) -> Vector {
    let mut out = Vector::zeros(v.len());
    for k in 0..v.len() / 2 {
        out[2 * k] = -v[2 * k + 1];
        out[2 * k + 1] = v[2 * k];
    }
    out
}

/// Orthonormal frame grown one mode at a time. Columns are stored in pairs
/// `(v_k, w_k)`; when every `w_k = Jᵀv_k`, the assembled matrix is
/// orthosymplectic.
#[derive(Debug, Clone, Default)]
pub(crate) struct ModeFrame {
    columns: Vec<Vector>,
}

impl ModeFrame {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    /// Removes the components of `x` along the frame (two Gram-Schmidt passes).
    pub fn project_out(&self, x: &Vector) -> Vector {
        let mut r = x.clone();
        for _ in 0..2 {
            for c in &self.columns {
                let coeff = c.dot(&r);
                r.axpy(-coeff, c, 1.0);
            }
        }
        r
    }

    /// Orthonormalizes `v` and `w` against the frame (and `w` against `v`),
    /// then appends them. Returns `None` if either collapses below `floor`.
    pub fn push_pair(&mut self, v: &Vector, w: &Vector, floor: f64) -> Option<(Vector, Vector)> {
        let v = self.project_out(v);
        let vn = v.norm();
        if vn.is_nan() || vn <= floor {
            return None;
        }
        let v = v / vn;
        let mut w = self.project_out(w);
        for _ in 0..2 {
            let coeff = v.dot(&w);
            w.axpy(-coeff, &v, 1.0);
        }
        let wn = w.norm();
        if wn.is_nan() || wn <= floor {
            return None;
        }
        let w = w / wn;
        self.columns.push(v.clone());
        self.columns.push(w.clone());
        Some((v, w))
    }

    /// Appends the symplectic pair `(v, Jᵀv)` built from the candidate `v`.
    pub fn push_symplectic_pair(&mut self, v: &Vector, floor: f64) -> Option<(Vector, Vector)> {
        let v = self.project_out(v);
        let vn = v.norm();
        if vn.is_nan() || vn <= floor {
            return None;
        }
        let v = v / vn;
        let w = j_transpose_apply(&v);
        self.push_pair(&v, &w, floor)
    }

    /// Matrix whose columns are the frame vectors in insertion order.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.columns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: usize, data: &[f64]) -> Matrix {
        Matrix::from_row_slice(rows, data.len() / rows, data)
    }

    #[test]
    fn partition_requires_both_sides() {
        assert_eq!(
            ModePartition::new(1, 0),
            Err(Error::InvalidPartition { n_a: 1, n_b: 0 })
        );
        assert!(ModePartition::new(0, 3).is_err());
        let p = ModePartition::new(2, 3).unwrap();
        assert_eq!((p.modes(), p.dim()), (5, 10));
    }

    #[test]
    fn single_mode_block() {
        assert_eq!(symplectic_form(1), mat(2, &[0.0, 1.0, -1.0, 0.0]));
    }

    #[test]
    fn two_mode_j_is_block_diagonal() {
        let j = build_j(ModePartition::new(1, 1).unwrap(), Ordering::Interleaved);
        let expected = mat(
            4,
            &[
                0.0, 1.0, 0.0, 0.0, //
                -1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, -1.0, 0.0,
            ],
        );
        assert_eq!(*j, expected);
    }

    #[test]
    fn j_identities_are_exact() {
        for (a, b) in [(1, 1), (1, 2), (2, 3), (4, 1)] {
            let p = ModePartition::new(a, b).unwrap();
            for ord in [Ordering::Interleaved, Ordering::Blocked] {
                let j = build_j(p, ord).into_inner();
                let id = Matrix::identity(p.dim(), p.dim());
                assert_eq!(&j * &j, -&id);
                assert_eq!(j.transpose(), -&j);
            }
        }
    }

    #[test]
    fn permutation_for_two_modes() {
        assert_eq!(ordering_permutation(2), vec![0, 2, 1, 3]);
    }

    #[test]
    fn identity_survives_conversion() {
        let id = Matrix::identity(6, 6);
        assert_eq!(
            convert_ordering(&id, Ordering::Interleaved, Ordering::Blocked).unwrap(),
            id
        );
    }

    #[test]
    fn j_in_blocked_ordering() {
        // Permuting rows and columns of the interleaved 4×4 J by (0,2,1,3)
        // moves the +1 entries to (0,2),(1,3) and the −1 entries to (2,0),(3,1).
        let j = symplectic_form(2);
        let blocked = convert_ordering(&j, Ordering::Interleaved, Ordering::Blocked).unwrap();
        let expected = mat(
            4,
            &[
                0.0, 0.0, 1.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                -1.0, 0.0, 0.0, 0.0, //
                0.0, -1.0, 0.0, 0.0,
            ],
        );
        assert_eq!(blocked, expected);
        let p = ModePartition::new(1, 1).unwrap();
        assert_eq!(*build_j(p, Ordering::Blocked), expected);
    }

    #[test]
    fn odd_dimension_rejected() {
        let m = Matrix::identity(3, 3);
        assert!(matches!(
            convert_ordering(&m, Ordering::Interleaved, Ordering::Blocked),
            Err(Error::BadShape { .. })
        ));
    }

    #[test]
    fn direct_sum_examples() {
        let i2 = Matrix::identity(2, 2);
        assert_eq!(direct_sum(&i2, &i2), Matrix::identity(4, 4));
        let p = ModePartition::new(2, 1).unwrap();
        assert_eq!(
            direct_sum(&symplectic_form(2), &symplectic_form(1)),
            build_j(p, Ordering::Interleaved).into_inner()
        );
        let a = Matrix::from_diagonal(&Vector::from_vec(vec![2.0, 0.5]));
        let b = Matrix::from_diagonal(&Vector::from_vec(vec![3.0, 1.0 / 3.0]));
        let expected = Matrix::from_diagonal(&Vector::from_vec(vec![2.0, 0.5, 3.0, 1.0 / 3.0]));
        assert_eq!(direct_sum(&a, &b), expected);
    }

    #[test]
    fn symplectic_examples() {
        let id = Matrix::identity(2, 2);
        let r = is_symplectic(&id, 1e-10);
        assert!(r.pass);
        assert_eq!(r.residual("symplectic"), Some(0.0));
        assert!(is_symplectic(&mat(2, &[2.0, 0.0, 0.0, 0.5]), 1e-10).pass);
        assert!(!is_symplectic(&mat(2, &[2.0, 0.0, 0.0, 2.0]), 1e-10).pass);
        assert!(!is_symplectic(&Matrix::identity(3, 3), 1e-10).pass);
    }

    #[test]
    fn orthosymplectic_examples() {
        assert!(is_orthosymplectic(&Matrix::identity(4, 4), 1e-10).pass);
        let (s, c) = 0.3f64.sin_cos();
        assert!(is_orthosymplectic(&mat(2, &[c, -s, s, c]), 1e-10).pass);
        let squeeze = mat(2, &[2.0, 0.0, 0.0, 0.5]);
        let report = is_orthosymplectic(&squeeze, 1e-10);
        assert!(!report.pass);
        assert_eq!(report.residual("symplectic"), Some(0.0));
        assert!(report.residual("orthogonal").unwrap() > 1.0);
    }

    fn even_square(max_modes: usize) -> impl Strategy<Value = Matrix> {
        (1..=max_modes).prop_flat_map(|n| {
            prop::collection::vec(-10.0f64..10.0, 4 * n * n)
                .prop_map(move |v| Matrix::from_vec(2 * n, 2 * n, v))
        })
    }

    proptest! {
        #[test]
        fn conversion_round_trip_is_exact(m in even_square(4)) {
            let b = convert_ordering(&m, Ordering::Interleaved, Ordering::Blocked).unwrap();
            let back = convert_ordering(&b, Ordering::Blocked, Ordering::Interleaved).unwrap();
            prop_assert_eq!(back, m);
        }

        #[test]
        fn direct_sum_spectrum_is_union(a in even_square(2), b in even_square(2)) {
            let sa = crate::linalg::symmetrize(&a);
            let sb = crate::linalg::symmetrize(&b);
            let (mut expected, _) = crate::linalg::sym_eigen_desc(&sa);
            expected.extend(crate::linalg::sym_eigen_desc(&sb).0);
            expected.sort_by(|x, y| y.total_cmp(x));
            let (got, _) = crate::linalg::sym_eigen_desc(&direct_sum(&sa, &sb));
            for (g, e) in got.iter().zip(&expected) {
                prop_assert!((g - e).abs() <= 1e-10 * (1.0 + e.abs()));
            }
        }

        #[test]
        fn symplectic_verdict_survives_inversion(
            m in even_square(3),
            seed in any::<u64>(),
            symplectic in any::<bool>(),
        ) {
            let tol = 1e-10;
            let s = if symplectic {
                let n = m.nrows() / 2;
                crate::states::random_symplectic(n, 1.0, seed)
            } else {
                m
            };
            if let Some(inv) = s.clone().try_inverse() {
                let forward = is_symplectic(&s, tol);
                let backward = is_symplectic(&inv, tol);
                let r1 = forward.residual("symplectic").unwrap();
                let r2 = backward.residual("symplectic").unwrap();
                // verdicts agree unless a residual lies within 10·tol of the gate
                if (r1 - tol).abs() > 10.0 * tol && (r2 - tol).abs() > 10.0 * tol {
                    prop_assert_eq!(forward.pass, backward.pass);
                }
            }
        }
    }
}
