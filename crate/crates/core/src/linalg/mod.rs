//! Dense linear algebra used by both walk engines.

mod circulant;
mod eigen;
mod matrix;

pub use circulant::{
    circulant_eigenvalues, circulant_matrix, fourier_matrix, primary_permutation, root_of_unity,
};
pub use eigen::{expm_action, hermitian_eigendecomposition, SpectralDecomposition, HERMITIAN_TOL};
pub use matrix::{kron, kron_sum, kron_vec, ComplexMatrix};

/// Euclidean norm of a complex vector.
pub fn norm2(v: &[num_complex::Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
