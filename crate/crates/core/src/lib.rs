//! Disentangling Gaussian states with symplectic rotations.
//!
//! Given the covariance matrix `Σ` of a bipartite Gaussian state, the
//! [`disentangle`] pipeline builds a symplectic rotation `U` (an element of
//! `Sp(n) ∩ O(2n)`) such that `U·Σ·Uᵀ` is separable, and hands back an
//! explicit Werner-Wolf certificate `(Σ_A, Σ_B)` for the rotated state.
//! Every intermediate factorization is re-verified and its residuals are
//! reported.
//!
//! Matrices use the interleaved ordering `(x₁, p₁, …, x_n, p_n)` with
//! `J = ⊕ₖ [[0, 1], [−1, 0]]`; see [`phase_space`] for conversions.

pub mod check;
pub mod decomp;
pub mod error;
pub mod linalg;
pub mod phase_space;
pub mod separability;
pub mod spectral;
pub mod states;

pub use check::{CheckReport, DEFAULT_TOL};
pub use decomp::{
    delta_blocks, delta_matrix, ortho_diagonalize, reconstruct, symplectic_polar, PolarForm,
    RotationDiagonalization,
};
pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use phase_space::{
    build_j, convert_ordering, convert_vector_ordering, direct_sum, is_orthosymplectic,
    is_symplectic, symplectic_form, ModePartition, Ordering, SymplecticForm,
};
pub use separability::{
    disentangle, partial_transpose, ppt_test, werner_wolf_check, DisentangleResult, PptReport,
    PptVerdict, SeparabilityWitness,
};
pub use spectral::{
    admissible_s, ball_inclusion_ratio, quantum_condition_check, symplectic_eigenvalues,
    williamson, williamson_with_tol, AdmissibleSymplectic, CovarianceMatrix, WilliamsonForm,
};
pub use states::{
    purity, push_symplectic, random_covariance, random_orthosymplectic, random_symplectic,
    rotate_state, wigner_eval, GaussianState,
};
