//! Reference computations that share no code with the library's spectral
//! engine: a scaled truncated Taylor series for the matrix exponential and a
//! trapezoid time average built on top of it.

#![allow(dead_code, clippy::needless_range_loop)]

use cayleywalk::{Complex64, ComplexMatrix};
use rand::Rng;

pub type Mat = Vec<Vec<Complex64>>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn from_library(m: &ComplexMatrix) -> Mat {
    (0..m.dim()).map(|i| m.row(i).to_vec()).collect()
}

pub fn to_library(m: &Mat) -> ComplexMatrix {
    ComplexMatrix::from_row_major(m.iter().flatten().copied().collect()).unwrap()
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| c(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn matvec(a: &Mat, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn one_norm(a: &Mat) -> f64 {
    let n = a.len();
    (0..n)
        .map(|j| (0..n).map(|i| a[i][j].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(scale * h)` by scaling to norm <= 1/2, a 30-term Taylor series, and
/// repeated squaring.
pub fn taylor_expm(h: &Mat, scale: Complex64) -> Mat {
    let n = h.len();
    let scaled: Mat = h
        .iter()
        .map(|row| row.iter().map(|x| x * scale).collect())
        .collect();
    let norm = one_norm(&scaled);
    let mut squarings = 0;
    while norm / 2f64.powi(squarings) > 0.5 {
        squarings += 1;
    }
    let factor = 1.0 / 2f64.powi(squarings);
    let a: Mat = scaled
        .iter()
        .map(|row| row.iter().map(|x| x * factor).collect())
        .collect();
    let mut sum = identity(n);
    let mut term = identity(n);
    for k in 1..=30 {
        term = matmul(&term, &a);
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x /= k as f64;
            }
        }
        for i in 0..n {
            for j in 0..n {
                sum[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        sum = matmul(&sum, &sum);
    }
    sum
}

/// Random Hermitian matrix with entries of magnitude at most `spread`.
pub fn random_hermitian(rng: &mut impl Rng, n: usize, spread: f64) -> Mat {
    let mut m = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        m[i][i] = c(rng.random_range(-spread..spread), 0.0);
        for j in i + 1..n {
            let z = c(
                rng.random_range(-spread..spread),
                rng.random_range(-spread..spread),
            );
            m[i][j] = z;
            m[j][i] = z.conj();
        }
    }
    m
}

/// Unit vector with random complex entries.
pub fn random_state(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Trapezoid estimate of `(1/T) ∫_0^T |<j|e^{-iht}psi0>|^2 dt`, stepping with
/// the Taylor propagator for `dt`.
pub fn quadrature_average(h: &Mat, psi0: &[Complex64], horizon: f64, dt: f64) -> Vec<f64> {
    let steps = (horizon / dt).round() as usize;
    let step = taylor_expm(h, c(0.0, -dt));
    let mut psi = psi0.to_vec();
    let mut acc: Vec<f64> = psi.iter().map(|z| 0.5 * z.norm_sqr()).collect();
    for k in 1..=steps {
        psi = matvec(&step, &psi);
        let weight = if k == steps { 0.5 } else { 1.0 };
        for (a, z) in acc.iter_mut().zip(&psi) {
            *a += weight * z.norm_sqr();
        }
    }
    acc.into_iter().map(|a| a / steps as f64).collect()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
