//! Analytic walk solutions for cycles, complete graphs, charter graphs and
//! hypercubes, together with their direct products.
//!
//! Classical families evolve under the factorwise normalized Laplacian
//! `Σ_i I ⊗ … ⊗ (A_i/κ_i - I) ⊗ … ⊗ I`; quantum families use the averaged
//! Hamiltonian `(1/d) Σ_i I ⊗ … ⊗ A_i/κ_i ⊗ … ⊗ I`, so every factor runs at
//! time `t/d`. All walks start at vertex 0.
//!
//! Charter vertex `k` ranges over `0..2n`; `k < n` is the `K_2` vertex 0 block.
//! Hypercube quantum walks are uniform at `t = (2k-1) n π / 4`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::graphs::GraphSpec;
use crate::linalg::root_of_unity;
use crate::{Error, Result};

fn check_time(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

fn check_vertex(k: usize, order: usize) -> Result<()> {
    if k >= order {
        return Err(Error::VertexOutOfRange { vertex: k, order });
    }
    Ok(())
}

fn check_min(name: &str, n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!(
            "{name} requires n >= {min}, got {n}"
        )));
    }
    Ok(())
}

/// `P_k(t) = (1/n) Σ_j e^{t(cos(2πj/n) - 1)} cos(2πjk/n)` on `C_n`.
///
/// `n = 2` is accepted and reduces to the `K_2` solution.
pub fn cycle_classical(n: usize, k: usize, t: f64) -> Result<f64> {
    check_min("cycle", n, 2)?;
    check_vertex(k, n)?;
    check_time(t)?;
    let nf = n as f64;
    let sum: f64 = (0..n)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / nf;
            (t * (theta.cos() - 1.0)).exp() * (theta * k as f64).cos()
        })
        .sum();
    Ok(sum / nf)
}

/// `1/n + ((n-1)/n) e^{-nt/(n-1)}` at `k = 0`, `(1/n)(1 - e^{-nt/(n-1)})` elsewhere.
pub fn complete_classical(n: usize, k: usize, t: f64) -> Result<f64> {
    check_min("complete", n, 2)?;
    check_vertex(k, n)?;
    check_time(t)?;
    let nf = n as f64;
    let decay = (-nf * t / (nf - 1.0)).exp();
    Ok(if k == 0 {
        (1.0 + (nf - 1.0) * decay) / nf
    } else {
        (1.0 - decay) / nf
    })
}

/// `(1/2)(1 ± e^{-2t})` on `K_2` under `σ_x - I`.
pub fn k2_classical(k: usize, t: f64) -> Result<f64> {
    complete_classical(2, k, t)
}

/// `Π_i P^{(i)}(k_i)`: the product recipe over single-factor distributions.
pub fn product_position_probability(
    factor_distributions: &[Vec<f64>],
    label: &[usize],
) -> Result<f64> {
    if factor_distributions.len() != label.len() {
        return Err(Error::InvalidArgument(format!(
            "label has {} coordinates for {} factors",
            label.len(),
            factor_distributions.len()
        )));
    }
    factor_distributions
        .iter()
        .zip(label)
        .try_fold(1.0, |acc, (dist, &k)| {
            check_vertex(k, dist.len())?;
            Ok(acc * dist[k])
        })
}

/// `(P_{s,0})^k (P_{s,j})^{d-k}` on `K_n^{⊗d}` with `k` zero coordinates.
pub fn complete_product_classical(n: usize, zeros: usize, d: usize, t: f64) -> Result<f64> {
    if zeros > d {
        return Err(Error::InvalidArgument(format!(
            "{zeros} zeros in {d} coordinates"
        )));
    }
    let at_origin = complete_classical(n, 0, t)?;
    let elsewhere = complete_classical(n, 1, t)?;
    Ok(at_origin.powi(zeros as i32) * elsewhere.powi((d - zeros) as i32))
}

/// Charter `K_2 x C_n`: the `K_2` block factor times the cycle factor.
pub fn charter_classical(n: usize, k: usize, t: f64) -> Result<f64> {
    check_min("charter", n, 2)?;
    check_vertex(k, 2 * n)?;
    check_time(t)?;
    Ok(k2_classical(k / n, t)? * cycle_classical(n, k % n, t)?)
}

/// `((1+e^{-2t})/2)^{n-w} ((1-e^{-2t})/2)^w` for Hamming weight `w`.
pub fn hypercube_classical(n: usize, weight: usize, t: f64) -> Result<f64> {
    check_min("hypercube", n, 1)?;
    if weight > n {
        return Err(Error::InvalidArgument(format!(
            "weight {weight} exceeds n = {n}"
        )));
    }
    Ok(k2_classical(0, t)?.powi((n - weight) as i32) * k2_classical(1, t)?.powi(weight as i32))
}

/// `<k|psi_t> = (1/n) Σ_j e^{-i (t/d) cos(2πj/n)} ω^{jk}` on `C_n` under `A/2`,
/// as one factor of a `d`-fold averaged product.
pub fn cycle_quantum(n: usize, k: usize, t: f64, d: usize) -> Result<Complex64> {
    check_min("cycle", n, 2)?;
    check_vertex(k, n)?;
    check_min("divisor", d, 1)?;
    let local_t = t / d as f64;
    let sum: Complex64 = (0..n)
        .map(|j| {
            let lambda = (2.0 * PI * j as f64 / n as f64).cos();
            Complex64::from_polar(1.0, -local_t * lambda) * root_of_unity(n, j * k)
        })
        .sum();
    Ok(sum / n as f64)
}

/// Factor amplitudes `(at vertex 0, at any other vertex)` on `K_n` under
/// `A/(n-1)` after time `t/d`.
pub fn complete_quantum_factor(n: usize, t: f64, d: usize) -> Result<(Complex64, Complex64)> {
    check_min("complete", n, 2)?;
    check_min("divisor", d, 1)?;
    let nf = n as f64;
    let local_t = t / d as f64;
    let top = Complex64::from_polar(1.0, -local_t);
    let rest = Complex64::from_polar(1.0, local_t / (nf - 1.0));
    Ok(((top + (nf - 1.0) * rest) / nf, (top - rest) / nf))
}

/// Amplitude on `K_n^{⊗d}` at a vertex with `zeros` zero coordinates.
pub fn complete_quantum(n: usize, zeros: usize, d: usize, t: f64) -> Result<Complex64> {
    if zeros > d {
        return Err(Error::InvalidArgument(format!(
            "{zeros} zeros in {d} coordinates"
        )));
    }
    let (at_origin, elsewhere) = complete_quantum_factor(n, t, d)?;
    Ok(at_origin.powu(zeros as u32) * elsewhere.powu((d - zeros) as u32))
}

/// `e^{-iσ_x t/2}|0>` component times the cycle factor at `t/2`.
pub fn charter_quantum_amplitude(n: usize, k: usize, t: f64) -> Result<Complex64> {
    check_min("charter", n, 2)?;
    check_vertex(k, 2 * n)?;
    let half = t / 2.0;
    let block = if k < n {
        Complex64::new(half.cos(), 0.0)
    } else {
        Complex64::new(0.0, -half.sin())
    };
    Ok(block * cycle_quantum(n, k % n, t, 2)?)
}

/// `(1/n^2) cos^2(t/2) |Σ_j e^{-it cos(2πj/n)/2} ω^{jk}|^2` for `k < n`, with
/// `sin^2` for the second block.
pub fn charter_quantum(n: usize, k: usize, t: f64) -> Result<f64> {
    Ok(charter_quantum_amplitude(n, k, t)?.norm_sqr())
}

/// `(cos(t/n))^{n-w} (-i sin(t/n))^w` for Hamming weight `w`.
pub fn hypercube_quantum(n: usize, weight: usize, t: f64) -> Result<Complex64> {
    check_min("hypercube", n, 1)?;
    if weight > n {
        return Err(Error::InvalidArgument(format!(
            "weight {weight} exceeds n = {n}"
        )));
    }
    let local_t = t / n as f64;
    let stay = Complex64::new(local_t.cos(), 0.0);
    let flip = Complex64::new(0.0, -local_t.sin());
    Ok(stay.powu((n - weight) as u32) * flip.powu(weight as u32))
}

/// A worked family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosedFormFamily {
    /// `C_n^{⊗d}`, `n >= 3`.
    CycleClassical {
        n: usize,
        d: usize,
    },
    /// `K_n^{⊗d}`, `n >= 2`.
    CompleteClassical {
        n: usize,
        d: usize,
    },
    /// `K_2 x C_n`, `n >= 2`.
    CharterClassical {
        n: usize,
    },
    /// `K_2^{⊗n}`, `n >= 1`.
    HypercubeClassical {
        n: usize,
    },
    CycleQuantum {
        n: usize,
        d: usize,
    },
    CompleteQuantum {
        n: usize,
        d: usize,
    },
    CharterQuantum {
        n: usize,
    },
    HypercubeQuantum {
        n: usize,
    },
}

impl ClosedFormFamily {
    pub fn is_quantum(&self) -> bool {
        matches!(
            self,
            Self::CycleQuantum { .. }
                | Self::CompleteQuantum { .. }
                | Self::CharterQuantum { .. }
                | Self::HypercubeQuantum { .. }
        )
    }

    pub fn name(&self) -> String {
        match *self {
            Self::CycleClassical { n, d } => format!("cycle-classical n={n} d={d}"),
            Self::CompleteClassical { n, d } => format!("complete-classical n={n} d={d}"),
            Self::CharterClassical { n } => format!("charter-classical n={n}"),
            Self::HypercubeClassical { n } => format!("hypercube-classical n={n}"),
            Self::CycleQuantum { n, d } => format!("cycle-quantum n={n} d={d}"),
            Self::CompleteQuantum { n, d } => format!("complete-quantum n={n} d={d}"),
            Self::CharterQuantum { n } => format!("charter-quantum n={n}"),
            Self::HypercubeQuantum { n } => format!("hypercube-quantum n={n}"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::CycleClassical { n, d } | Self::CycleQuantum { n, d } => {
                check_min("cycle", n, 3)?;
                check_min("factor count", d, 1)
            }
            Self::CompleteClassical { n, d } | Self::CompleteQuantum { n, d } => {
                check_min("complete", n, 2)?;
                check_min("factor count", d, 1)
            }
            Self::CharterClassical { n } | Self::CharterQuantum { n } => check_min("charter", n, 2),
            Self::HypercubeClassical { n } | Self::HypercubeQuantum { n } => {
                check_min("hypercube", n, 1)
            }
        }
    }

    /// The graph the family lives on.
    pub fn graph_spec(&self) -> GraphSpec {
        let power = |atom: GraphSpec, d: usize| {
            if d == 1 {
                atom
            } else {
                GraphSpec::product(vec![atom; d])
            }
        };
        match *self {
            Self::CycleClassical { n, d } | Self::CycleQuantum { n, d } => {
                power(GraphSpec::cycle(n), d)
            }
            Self::CompleteClassical { n, d } | Self::CompleteQuantum { n, d } => {
                power(GraphSpec::complete(n), d)
            }
            Self::CharterClassical { n } | Self::CharterQuantum { n } => GraphSpec::charter(n),
            Self::HypercubeClassical { n } | Self::HypercubeQuantum { n } => {
                GraphSpec::hypercube(n)
            }
        }
    }

    /// Factor orders in product order.
    fn factor_dims(&self) -> Vec<usize> {
        match *self {
            Self::CycleClassical { n, d }
            | Self::CycleQuantum { n, d }
            | Self::CompleteClassical { n, d }
            | Self::CompleteQuantum { n, d } => vec![n; d],
            Self::CharterClassical { n } | Self::CharterQuantum { n } => vec![2, n],
            Self::HypercubeClassical { n } | Self::HypercubeQuantum { n } => vec![2; n],
        }
    }

    fn labels(&self) -> Vec<Vec<usize>> {
        let dims = self.factor_dims();
        let total: usize = dims.iter().product();
        (0..total)
            .map(|mut v| {
                let mut label = vec![0; dims.len()];
                for (slot, &dim) in label.iter_mut().zip(&dims).rev() {
                    *slot = v % dim;
                    v /= dim;
                }
                label
            })
            .collect()
    }

    /// Amplitudes over all vertices (quantum families only).
    pub fn amplitudes(&self, t: f64) -> Result<Vec<Complex64>> {
        self.validate()?;
        let labels = self.labels();
        match *self {
            Self::CycleQuantum { n, d } => {
                let factor = (0..n)
                    .map(|k| cycle_quantum(n, k, t, d))
                    .collect::<Result<Vec<_>>>()?;
                Ok(labels
                    .iter()
                    .map(|l| l.iter().map(|&k| factor[k]).product())
                    .collect())
            }
            Self::CompleteQuantum { n, d } => labels
                .iter()
                .map(|l| complete_quantum(n, l.iter().filter(|&&k| k == 0).count(), d, t))
                .collect(),
            Self::CharterQuantum { n } => (0..2 * n)
                .map(|k| charter_quantum_amplitude(n, k, t))
                .collect(),
            Self::HypercubeQuantum { n } => (0..1usize << n)
                .map(|v| hypercube_quantum(n, v.count_ones() as usize, t))
                .collect(),
            _ => Err(Error::InvalidArgument(format!(
                "{} has no amplitudes",
                self.name()
            ))),
        }
    }

    /// Probabilities over all vertices in mixed-radix order.
    pub fn distribution(&self, t: f64) -> Result<Vec<f64>> {
        self.validate()?;
        if self.is_quantum() {
            return Ok(self
                .amplitudes(t)?
                .iter()
                .map(Complex64::norm_sqr)
                .collect());
        }
        check_time(t)?;
        let labels = self.labels();
        match *self {
            Self::CycleClassical { n, d } => {
                let factor = (0..n)
                    .map(|k| cycle_classical(n, k, t))
                    .collect::<Result<Vec<_>>>()?;
                let factors = vec![factor; d];
                labels
                    .iter()
                    .map(|l| product_position_probability(&factors, l))
                    .collect()
            }
            Self::CompleteClassical { n, d } => labels
                .iter()
                .map(|l| complete_product_classical(n, l.iter().filter(|&&k| k == 0).count(), d, t))
                .collect(),
            Self::CharterClassical { n } => {
                (0..2 * n).map(|k| charter_classical(n, k, t)).collect()
            }
            Self::HypercubeClassical { n } => (0..1usize << n)
                .map(|v| hypercube_classical(n, v.count_ones() as usize, t))
                .collect(),
            _ => unreachable!("quantum handled above"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_classical_initial_and_k2() {
        for n in 2..9 {
            assert!((cycle_classical(n, 0, 0.0).unwrap() - 1.0).abs() < 1e-15);
            for k in 1..n {
                assert!(cycle_classical(n, k, 0.0).unwrap().abs() < 1e-15);
            }
        }
        for &t in &[0.3f64, 1.0, 4.0] {
            let e = (-2.0 * t).exp();
            assert!((cycle_classical(2, 0, t).unwrap() - (1.0 + e) / 2.0).abs() < 1e-15);
            assert!((cycle_classical(2, 1, t).unwrap() - (1.0 - e) / 2.0).abs() < 1e-15);
        }
        assert!(cycle_classical(4, 4, 1.0).is_err());
        assert!(cycle_classical(4, 0, -1.0).is_err());
    }

    #[test]
    fn complete_classical_limits() {
        assert_eq!(complete_classical(4, 0, 0.0).unwrap(), 1.0);
        assert_eq!(complete_classical(4, 2, 0.0).unwrap(), 0.0);
        for k in 0..5 {
            assert!((complete_classical(5, k, 200.0).unwrap() - 0.2).abs() < 1e-15);
        }
        // K_2 consistency with the hypercube factor
        for &t in &[0.0, 0.7, 2.0] {
            for k in 0..2 {
                assert_eq!(
                    complete_classical(2, k, t).unwrap(),
                    hypercube_classical(1, k, t).unwrap()
                );
            }
        }
    }

    #[test]
    fn product_probability() {
        let dist = vec![0.2, 0.3, 0.5];
        assert_eq!(
            product_position_probability(std::slice::from_ref(&dist), &[2]).unwrap(),
            0.5
        );
        let t: f64 = 1.0;
        let e = (-2.0 * t).exp();
        let k2: Vec<f64> = vec![(1.0 + e) / 2.0, (1.0 - e) / 2.0];
        let p = product_position_probability(&[k2.clone(), k2.clone(), k2.clone()], &[0, 1, 1])
            .unwrap();
        assert!((p - k2[0] * k2[1] * k2[1]).abs() < 1e-16);
        assert!((p - hypercube_classical(3, 2, t).unwrap()).abs() < 1e-16);
        assert!(product_position_probability(&[dist], &[0, 1]).is_err());
    }

    #[test]
    fn charter_classical_block_marginal() {
        let n = 5;
        for &t in &[0.0, 0.4, 1.7, 6.0] {
            let upper: f64 = (0..n).map(|k| charter_classical(n, k, t).unwrap()).sum();
            assert!((upper - (1.0 + (-2.0 * t).exp()) / 2.0).abs() < 1e-14);
        }
        assert_eq!(charter_classical(3, 0, 0.0).unwrap(), 1.0);
        assert!(charter_classical(3, 6, 1.0).is_err());
    }

    #[test]
    fn quantum_initial_states() {
        assert!((cycle_quantum(5, 0, 0.0, 1).unwrap() - 1.0).norm() < 1e-15);
        assert!(cycle_quantum(5, 3, 0.0, 1).unwrap().norm() < 1e-15);
        assert!((complete_quantum(4, 2, 2, 0.0).unwrap() - 1.0).norm() < 1e-15);
        assert!(complete_quantum(4, 1, 2, 0.0).unwrap().norm() < 1e-15);
        assert!((hypercube_quantum(3, 0, 0.0).unwrap() - 1.0).norm() < 1e-15);
        assert!((charter_quantum(3, 0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(charter_quantum(3, 4, 0.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn complete_quantum_k2_is_cosine() {
        for &t in &[0.0, 0.5, 1.2, 3.0] {
            let p0 = complete_quantum(2, 1, 1, t).unwrap().norm_sqr();
            assert!((p0 - t.cos().powi(2)).abs() < 1e-15);
        }
    }

    #[test]
    fn hypercube_uniform_instants() {
        for n in 1..=4 {
            let t = n as f64 * PI / 4.0;
            for w in 0..=n {
                let p = hypercube_quantum(n, w, t).unwrap().norm_sqr();
                assert!((p - 0.5f64.powi(n as i32)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn distributions_are_normalized() {
        let families = [
            ClosedFormFamily::CycleClassical { n: 5, d: 2 },
            ClosedFormFamily::CompleteClassical { n: 3, d: 3 },
            ClosedFormFamily::CharterClassical { n: 4 },
            ClosedFormFamily::HypercubeClassical { n: 3 },
            ClosedFormFamily::CycleQuantum { n: 4, d: 2 },
            ClosedFormFamily::CompleteQuantum { n: 5, d: 2 },
            ClosedFormFamily::CharterQuantum { n: 5 },
            ClosedFormFamily::HypercubeQuantum { n: 4 },
        ];
        for f in families {
            for &t in &[0.0, 0.9, 7.5] {
                let p = f.distribution(t).unwrap();
                assert_eq!(p.len(), f.graph_spec().order());
                let mass: f64 = p.iter().sum();
                assert!((mass - 1.0).abs() < 1e-10, "{} at {t}: {mass}", f.name());
                assert!(p.iter().all(|&x| (-1e-15..=1.0 + 1e-15).contains(&x)));
            }
        }
        assert!(ClosedFormFamily::CycleClassical { n: 2, d: 1 }
            .validate()
            .is_err());
        assert!(ClosedFormFamily::CycleClassical { n: 3, d: 1 }
            .amplitudes(1.0)
            .is_err());
    }
}
