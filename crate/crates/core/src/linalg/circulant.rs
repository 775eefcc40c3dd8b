//! Fourier matrix, cyclic shift and circulant spectra.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::{Error, Result};

/// `ω^k` with `ω = e^{2πi/n}`; the exponent is reduced mod `n` first so large
/// products `j*k` stay exact.
pub fn root_of_unity(n: usize, k: usize) -> Complex64 {
    let k = k % n;
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

/// Unitary Fourier matrix `F[j][k] = ω^{jk} / √n`.
pub fn fourier_matrix(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension(
            "Fourier matrix needs n >= 1".into(),
        ));
    }
    let norm = 1.0 / (n as f64).sqrt();
    Ok(ComplexMatrix::from_fn(n, |j, k| {
        root_of_unity(n, j * k) * norm
    }))
}

/// Cyclic shift with `P[j][(j+1) mod n] = 1`.
pub fn primary_permutation(n: usize) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!(
            "primary permutation needs n >= 2, got {n}"
        )));
    }
    Ok(ComplexMatrix::from_fn(n, |j, k| {
        Complex64::new(if k == (j + 1) % n { 1.0 } else { 0.0 }, 0.0)
    }))
}

/// `Σ_k coeffs[k] P^k`, i.e. entry `(j, l)` is `coeffs[(l - j) mod n]`.
pub fn circulant_matrix(coeffs: &[f64]) -> Result<ComplexMatrix> {
    let n = coeffs.len();
    if n == 0 {
        return Err(Error::InvalidDimension(
            "circulant needs at least one coefficient".into(),
        ));
    }
    Ok(ComplexMatrix::from_fn(n, |j, l| {
        Complex64::new(coeffs[(l + n - j) % n], 0.0)
    }))
}

/// `λ_k = Σ_j coeffs[j] ω^{jk}` for `k = 0..n-1`.
pub fn circulant_eigenvalues(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len();
    if n == 0 {
        return Err(Error::InvalidDimension(
            "circulant needs at least one coefficient".into(),
        ));
    }
    Ok((0..n)
        .map(|k| {
            coeffs
                .iter()
                .enumerate()
                .map(|(j, &a)| a * root_of_unity(n, j * k))
                .sum()
        })
        .collect())
}
