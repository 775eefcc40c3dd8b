//! Hermitian eigendecomposition.
//!
//! Real symmetric input is reduced to tridiagonal form by Householder
//! reflections and diagonalized by the implicit QL method with Wilkinson-style
//! shifts.
//!
//! Complex Hermitian input uses cyclic Jacobi rotations. Each rotation
//! annihilates one off-diagonal pair `(p, q)`: for `a_pq = |a_pq| e^{iφ}` it is
//! the unitary `U = D R`, where `D = diag(1, e^{-iφ})` on the `(p, q)` plane
//! makes the pair real and `R` is the classical real Jacobi rotation. Sweeps
//! continue until the off-diagonal Frobenius mass drops below
//! `1e-12 * max(1, ||M||_F)`.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::{Error, Result};

/// Input is accepted when `|m_ij - conj(m_ji)| <= HERMITIAN_TOL`.
pub const HERMITIAN_TOL: f64 = 1e-10;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;
const MAX_QL_ITERATIONS: usize = 60;

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// stored as the columns of a unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose `k`-th column is the eigenvector of `eigenvalues()[k]`.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_function(|l| Complex64::new(l, 0.0))
    }

    /// `V diag(f(λ)) V†`.
    pub fn apply_function(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let weights: Vec<Complex64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * weights[k] * v[(j, k)].conj())
                .sum()
        })
    }

    /// Coefficients `V† x` of `x` in the eigenbasis.
    pub fn coefficients(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: x.len(),
            });
        }
        let v = &self.eigenvectors;
        Ok((0..n)
            .map(|k| (0..n).map(|i| v[(i, k)].conj() * x[i]).sum())
            .collect())
    }

    /// Synthesises `Σ_k c_k |z_k>` from eigenbasis coefficients.
    pub fn synthesize(&self, coefficients: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let v = &self.eigenvectors;
        (0..n)
            .map(|i| v.row(i).iter().zip(coefficients).map(|(a, c)| a * c).sum())
            .collect()
    }

    /// `V diag(e^{scale·λ}) V† v`.
    pub fn expm_action(&self, scale: Complex64, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut c = self.coefficients(v)?;
        for (ck, &l) in c.iter_mut().zip(&self.eigenvalues) {
            *ck *= (scale * l).exp();
        }
        Ok(self.synthesize(&c))
    }

    /// Groups eigenvalue indices whose consecutive gaps are at most `tol`.
    /// Relies on the ascending order.
    pub fn degeneracy_groups(&self, tol: f64) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (k, &l) in self.eigenvalues.iter().enumerate() {
            match groups.last_mut() {
                Some(g) if (l - self.eigenvalues[*g.last().unwrap()]).abs() <= tol => g.push(k),
                _ => groups.push(vec![k]),
            }
        }
        groups
    }
}

/// Free-function form of [`SpectralDecomposition::expm_action`].
pub fn expm_action(
    decomp: &SpectralDecomposition,
    scale: Complex64,
    v: &[Complex64],
) -> Result<Vec<Complex64>> {
    decomp.expm_action(scale, v)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`] when the input departs from Hermitian by
/// more than [`HERMITIAN_TOL`]. The input is symmetrised before iterating.
pub fn hermitian_eigendecomposition(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let asymmetry = m.hermitian_defect();
    if asymmetry > HERMITIAN_TOL {
        return Err(Error::NotHermitian { asymmetry });
    }
    let n = m.dim();
    if n == 0 {
        return Err(Error::InvalidDimension("empty matrix".into()));
    }
    let scale = m.frobenius_norm().max(1.0);

    let (values, vectors) = if m.is_real(0.0) {
        let (values, vectors) = tridiagonal_ql(m)?;
        let vectors = ComplexMatrix::from_fn(n, |i, j| Complex64::new(vectors[i * n + j], 0.0));
        (values, vectors)
    } else {
        jacobi_complex(m, scale)?
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let eigenvalues = order.iter().map(|&k| values[k]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| vectors[(i, order[j])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Rotation `(t, c, s)` zeroing a real symmetric 2x2 block with diagonal
/// `(app, aqq)` and off-diagonal `apq != 0`.
fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64, f64) {
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    (t, c, t * c)
}

/// Householder reduction of the symmetric `n x n` matrix held row-major in
/// `v`. On return `v` holds the accumulated orthogonal transform, `d` the
/// diagonal and `e[1..]` the sub-diagonal.
fn householder_tridiagonalize(v: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    let idx = |i: usize, j: usize| i * n + j;
    d.copy_from_slice(&v[idx(n - 1, 0)..idx(n - 1, 0) + n]);
    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[idx(i - 1, j)];
                v[idx(i, j)] = 0.0;
                v[idx(j, i)] = 0.0;
            }
        } else {
            for x in d[..i].iter_mut() {
                *x /= scale;
                h += *x * *x;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);
            for j in 0..i {
                let f = d[j];
                v[idx(j, i)] = f;
                let mut g = e[j] + v[idx(j, j)] * f;
                for k in j + 1..i {
                    g += v[idx(k, j)] * d[k];
                    e[k] += v[idx(k, j)] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[idx(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[idx(i - 1, j)];
                v[idx(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n - 1 {
        v[idx(n - 1, i)] = v[idx(i, i)];
        v[idx(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[idx(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[idx(k, i + 1)] * v[idx(k, j)];
                }
                for k in 0..=i {
                    v[idx(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[idx(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[idx(n - 1, j)];
        v[idx(n - 1, j)] = 0.0;
    }
    v[idx(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit QL on the tridiagonal `(d, e)`, rotating the rows of `vt`
/// (the transposed eigenvector matrix) alongside.
fn tridiagonal_ql_iterate(d: &mut [f64], e: &mut [f64], vt: &mut [f64], n: usize) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > f64::EPSILON * tst1 {
            m += 1;
        }
        if m > l {
            let mut iterations = 0;
            loop {
                iterations += 1;
                if iterations > MAX_QL_ITERATIONS {
                    return Err(Error::NoConvergence {
                        sweeps: iterations,
                        off_diagonal: e[l].abs(),
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for x in d[l + 2..].iter_mut() {
                    *x -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (head, tail) = vt.split_at_mut((i + 1) * n);
                    let row_i = &mut head[i * n..];
                    let row_next = &mut tail[..n];
                    for k in 0..n {
                        let h = row_next[k];
                        row_next[k] = s * row_i[k] + c * h;
                        row_i[k] = c * row_i[k] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= f64::EPSILON * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Real symmetric path: returns eigenvalues (unsorted) and the row-major
/// eigenvector matrix whose columns are the eigenvectors.
fn tridiagonal_ql(m: &ComplexMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = m.dim();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            v[i * n + j] = 0.5 * (m[(i, j)].re + m[(j, i)].re);
        }
    }
    if n == 1 {
        return Ok((vec![v[0]], vec![1.0]));
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    householder_tridiagonalize(&mut v, n, &mut d, &mut e);
    let mut vt = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            vt[j * n + i] = v[i * n + j];
        }
    }
    tridiagonal_ql_iterate(&mut d, &mut e, &mut vt, n)?;
    for i in 0..n {
        for j in 0..n {
            v[i * n + j] = vt[j * n + i];
        }
    }
    Ok((d, v))
}

fn jacobi_complex(m: &ComplexMatrix, scale: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.dim();
    let mut a = ComplexMatrix::from_fn(n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
    let mut v = ComplexMatrix::identity(n);

    let off = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off_diagonal = off(&a);
        if off_diagonal < OFF_DIAGONAL_TOL * scale {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let magnitude = apq.norm();
                if magnitude == 0.0 {
                    continue;
                }
                let phase = apq / magnitude; // e^{iφ}
                let (t, c, s) = rotation(a[(p, p)].re, a[(q, q)].re, magnitude);
                if t == 0.0 {
                    continue;
                }
                // U = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on the (p, q) plane.
                let u_qp = -s * phase.conj();
                let u_qq = c * phase.conj();
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp + u_qp * akq;
                    a[(k, q)] = s * akp + u_qq * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk + u_qp.conj() * aqk;
                    a[(q, k)] = s * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp + u_qp * vkq;
                    v[(k, q)] = s * vkp + u_qq * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[(i, i)].re).collect();
    Ok((values, v))
}
