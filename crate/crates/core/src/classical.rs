//! Continuous-time classical walks `dP/dt = H P`, solved as `P(t) = e^{tH} P(0)`.
//!
//! Generators are real symmetric with zero column sums, so `e^{tH}` is
//! column-stochastic and the spectral route through
//! [`SpectralDecomposition::expm_action`] applies directly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::graphs::{is_regular, Graph};
use crate::linalg::{hermitian_eigendecomposition, kron_vec, ComplexMatrix, SpectralDecomposition};
use crate::mixing::total_variation;
use crate::{Error, Result};

/// Accepted deviation of `Σ p` from one.
pub const MASS_TOL: f64 = 1e-12;
/// Entries at or above `-CLAMP_TOL` are accepted and clamped to zero.
pub const CLAMP_TOL: f64 = 1e-14;

/// Laplacian-type generator conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorConvention {
    /// `A/κ - I` on a `κ`-regular graph.
    NormalizedLaplacian,
    /// `A - D`.
    CombinatorialLaplacian,
}

/// A distribution over vertices: nonnegative entries summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    /// Validates `entries`; tiny negative round-off is clamped to zero.
    pub fn new(mut entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidProbability("empty vector".into()));
        }
        if let Some(bad) = entries.iter().find(|p| !p.is_finite() || **p < -CLAMP_TOL) {
            return Err(Error::InvalidProbability(format!(
                "entry {bad} is negative"
            )));
        }
        let mass: f64 = entries.iter().sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidProbability(format!(
                "total mass {mass} is not 1"
            )));
        }
        for p in &mut entries {
            *p = p.max(0.0);
        }
        Ok(Self(entries))
    }

    /// Clamps negative entries to zero and rescales to unit mass.
    pub fn normalized(mut entries: Vec<f64>) -> Result<Self> {
        for p in &mut entries {
            if !p.is_finite() {
                return Err(Error::InvalidProbability(format!(
                    "entry {p} is not finite"
                )));
            }
            *p = p.max(0.0);
        }
        let mass: f64 = entries.iter().sum();
        if mass <= 0.0 {
            return Err(Error::InvalidProbability("no positive mass".into()));
        }
        for p in &mut entries {
            *p /= mass;
        }
        Ok(Self(entries))
    }

    pub fn point_mass(n: usize, vertex: usize) -> Result<Self> {
        if vertex >= n {
            return Err(Error::VertexOutOfRange { vertex, order: n });
        }
        let mut entries = vec![0.0; n];
        entries[vertex] = 1.0;
        Ok(Self(entries))
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution on an empty set");
        Self(vec![1.0 / n as f64; n])
    }

    /// `self ⊗ other` with the leftmost factor most significant.
    pub fn tensor(&self, other: &Self) -> Self {
        Self(kron_vec(&self.0, &other.0))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for ProbabilityVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

fn regular_degree(g: &Graph, convention: &'static str) -> Result<usize> {
    is_regular(g).ok_or(Error::IrregularGraph { convention })
}

/// Walk generator of `g`. An edgeless regular graph yields the zero matrix
/// under [`GeneratorConvention::NormalizedLaplacian`].
pub fn generator(g: &Graph, conv: GeneratorConvention) -> Result<ComplexMatrix> {
    let a = g.adjacency();
    match conv {
        GeneratorConvention::NormalizedLaplacian => {
            let kappa = regular_degree(g, "normalized Laplacian")?;
            if kappa == 0 {
                return Ok(ComplexMatrix::zeros(a.dim()));
            }
            Ok(a.scale_real(1.0 / kappa as f64).add_diagonal(-1.0))
        }
        GeneratorConvention::CombinatorialLaplacian => {
            let mut h = a.clone();
            for (i, d) in a.real_row_sums().into_iter().enumerate() {
                h[(i, i)] -= d;
            }
            Ok(h)
        }
    }
}

/// Sum of the factor generators `Σ_i I ⊗ … ⊗ H_i ⊗ … ⊗ I`, each factor using
/// `conv` on its own. This is the generator the product recipe factorizes.
pub fn factorwise_generator(g: &Graph, conv: GeneratorConvention) -> Result<ComplexMatrix> {
    let terms = g
        .factors()
        .iter()
        .map(|f| generator(f, conv))
        .collect::<Result<Vec<_>>>()?;
    crate::linalg::kron_sum(&terms)
}

/// A generator together with its spectral decomposition, reusable across
/// many evaluation times.
#[derive(Debug, Clone)]
pub struct ClassicalWalk {
    generator: ComplexMatrix,
    spectrum: SpectralDecomposition,
}

impl ClassicalWalk {
    pub fn new(generator: ComplexMatrix) -> Result<Self> {
        let spectrum = hermitian_eigendecomposition(&generator)?;
        Ok(Self {
            generator,
            spectrum,
        })
    }

    pub fn dim(&self) -> usize {
        self.generator.dim()
    }

    pub fn generator(&self) -> &ComplexMatrix {
        &self.generator
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    /// `e^{tH} p0` before clamping and renormalisation.
    pub fn evolve_raw(&self, p0: &ProbabilityVector, t: f64) -> Result<Vec<f64>> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        if p0.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: p0.len(),
            });
        }
        if t == 0.0 {
            return Ok(p0.as_slice().to_vec());
        }
        let v: Vec<Complex64> = p0.as_slice().iter().map(|&p| p.into()).collect();
        let out = self.spectrum.expm_action(Complex64::new(t, 0.0), &v)?;
        Ok(out.into_iter().map(|z| z.re).collect())
    }

    pub fn evolve(&self, p0: &ProbabilityVector, t: f64) -> Result<ProbabilityVector> {
        ProbabilityVector::normalized(self.evolve_raw(p0, t)?)
    }
}

/// `P(t) = e^{tH} P(0)`.
pub fn evolve(h: &ComplexMatrix, p0: &ProbabilityVector, t: f64) -> Result<ProbabilityVector> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    ClassicalWalk::new(h.clone())?.evolve(p0, t)
}

/// Evolves every factor on its own and returns `⊗_i P_i(t)`.
pub fn evolve_product(
    factors: &[(ComplexMatrix, ProbabilityVector)],
    t: f64,
) -> Result<ProbabilityVector> {
    let mut parts = factors.iter().map(|(h, p)| evolve(h, p, t));
    let first = parts.next().ok_or(Error::EmptyFactors)??;
    parts.try_fold(first, |acc, p| Ok(acc.tensor(&p?)))
}

/// `W_d = A/κ` on a `κ`-regular graph.
pub fn simple_walk_matrix(g: &Graph) -> Result<ComplexMatrix> {
    let kappa = regular_degree(g, "simple walk")?;
    if kappa == 0 {
        return Err(Error::IrregularGraph {
            convention: "simple walk (positive degree)",
        });
    }
    Ok(g.adjacency().scale_real(1.0 / kappa as f64))
}

/// `W_l = I/2 + W_d/2`.
pub fn lazy_walk_matrix(g: &Graph) -> Result<ComplexMatrix> {
    Ok(simple_walk_matrix(g)?.scale_real(0.5).add_diagonal(0.5))
}

/// Applies the transition matrix `w` to `p` for `steps` discrete steps.
pub fn discrete_evolve(
    w: &ComplexMatrix,
    p: &ProbabilityVector,
    steps: usize,
) -> Result<ProbabilityVector> {
    let mut v: Vec<Complex64> = p.as_slice().iter().map(|&x| x.into()).collect();
    for _ in 0..steps {
        v = w.mul_vec(&v)?;
    }
    ProbabilityVector::normalized(v.into_iter().map(|z| z.re).collect())
}

/// Total-variation distance (plain L1 sum) from `evolve(h, p0, t)` to uniform.
pub fn stationarity_gap(h: &ComplexMatrix, p0: &ProbabilityVector, t: f64) -> Result<f64> {
    let p = evolve(h, p0, t)?;
    total_variation(&p, &ProbabilityVector::uniform(p.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build, GraphSpec};
    use std::f64::consts::PI;

    fn graph(spec: GraphSpec) -> Graph {
        build(&spec).unwrap()
    }

    #[test]
    fn k2_normalized_generator() {
        let h = generator(
            &graph(GraphSpec::complete(2)),
            GeneratorConvention::NormalizedLaplacian,
        )
        .unwrap();
        assert_eq!(h.real_rows(), vec![vec![-1.0, 1.0], vec![1.0, -1.0]]);
    }

    #[test]
    fn complete_generator_spectrum() {
        for n in 2..7 {
            let h = generator(
                &graph(GraphSpec::complete(n)),
                GeneratorConvention::NormalizedLaplacian,
            )
            .unwrap();
            let d = hermitian_eigendecomposition(&h).unwrap();
            let expected = -(n as f64) / (n as f64 - 1.0);
            for &l in &d.eigenvalues()[..n - 1] {
                assert!((l - expected).abs() < 1e-12);
            }
            assert!(d.eigenvalues()[n - 1].abs() < 1e-12);
        }
    }

    #[test]
    fn cycle_generator_spectrum() {
        for n in 3..9 {
            let h = generator(
                &graph(GraphSpec::cycle(n)),
                GeneratorConvention::NormalizedLaplacian,
            )
            .unwrap();
            let d = hermitian_eigendecomposition(&h).unwrap();
            let mut expected: Vec<f64> = (0..n)
                .map(|j| (2.0 * PI * j as f64 / n as f64).cos() - 1.0)
                .collect();
            expected.sort_by(f64::total_cmp);
            for (l, e) in d.eigenvalues().iter().zip(expected) {
                assert!((l - e).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn generators_conserve_mass() {
        for spec in [
            GraphSpec::charter(4),
            GraphSpec::hypercube(3),
            GraphSpec::Explicit {
                adjacency: vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]],
            },
        ] {
            let g = graph(spec);
            let h = generator(&g, GeneratorConvention::CombinatorialLaplacian).unwrap();
            assert!(h.real_column_sums().iter().all(|s| s.abs() < 1e-15));
            assert!(h.is_symmetric_real(0.0));
        }
    }

    #[test]
    fn normalized_rejects_irregular() {
        let path = graph(GraphSpec::Explicit {
            adjacency: vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]],
        });
        assert!(matches!(
            generator(&path, GeneratorConvention::NormalizedLaplacian),
            Err(Error::IrregularGraph { .. })
        ));
        assert!(simple_walk_matrix(&path).is_err());
    }

    #[test]
    fn k2_closed_form() {
        let h = generator(
            &graph(GraphSpec::complete(2)),
            GeneratorConvention::NormalizedLaplacian,
        )
        .unwrap();
        let p0 = ProbabilityVector::point_mass(2, 0).unwrap();
        for &t in &[0.0, 0.1, 0.5, 1.0, 3.0, 10.0] {
            let p = evolve(&h, &p0, t).unwrap();
            let e = (-2.0 * t).exp();
            assert!((p[0] - (1.0 + e) / 2.0).abs() < 1e-14);
            assert!((p[1] - (1.0 - e) / 2.0).abs() < 1e-14);
        }
        assert_eq!(evolve(&h, &p0, 0.0).unwrap(), p0);
        assert!(matches!(evolve(&h, &p0, -1.0), Err(Error::NegativeTime(_))));
        assert!(evolve(&h, &ProbabilityVector::uniform(3), 1.0).is_err());
    }

    #[test]
    fn product_of_two_k2() {
        let k2 = graph(GraphSpec::complete(2));
        let h = generator(&k2, GeneratorConvention::NormalizedLaplacian).unwrap();
        let p0 = ProbabilityVector::point_mass(2, 0).unwrap();
        let p = evolve_product(&[(h.clone(), p0.clone()), (h, p0)], 1.0).unwrap();
        let e = (-2.0f64).exp();
        let single = [(1.0 + e) / 2.0, (1.0 - e) / 2.0];
        for i in 0..2 {
            for j in 0..2 {
                assert!((p[2 * i + j] - single[i] * single[j]).abs() < 1e-14);
            }
        }
        assert!(matches!(evolve_product(&[], 1.0), Err(Error::EmptyFactors)));
    }

    #[test]
    fn walk_matrices() {
        let k2 = graph(GraphSpec::complete(2));
        assert_eq!(
            simple_walk_matrix(&k2).unwrap().real_rows(),
            vec![vec![0.0, 1.0], vec![1.0, 0.0]]
        );
        assert_eq!(
            lazy_walk_matrix(&k2).unwrap().real_rows(),
            vec![vec![0.5, 0.5], vec![0.5, 0.5]]
        );
        let c4 = simple_walk_matrix(&graph(GraphSpec::cycle(4))).unwrap();
        assert_eq!(c4.real_rows()[0], vec![0.0, 0.5, 0.0, 0.5]);
        for w in [c4, lazy_walk_matrix(&graph(GraphSpec::charter(3))).unwrap()] {
            assert!(w.real_column_sums().iter().all(|s| (s - 1.0).abs() < 1e-15));
        }
    }

    #[test]
    fn lazy_walk_mixes_on_k5() {
        let w = lazy_walk_matrix(&graph(GraphSpec::complete(5))).unwrap();
        let p = discrete_evolve(&w, &ProbabilityVector::point_mass(5, 0).unwrap(), 50).unwrap();
        let tv = total_variation(&p, &ProbabilityVector::uniform(5)).unwrap();
        assert!(tv <= 1e-9, "{tv}");
    }

    #[test]
    fn stationarity_gap_values() {
        let h = generator(
            &graph(GraphSpec::complete(2)),
            GeneratorConvention::NormalizedLaplacian,
        )
        .unwrap();
        let gap = stationarity_gap(&h, &ProbabilityVector::point_mass(2, 0).unwrap(), 1.0).unwrap();
        assert!((gap - (-2.0f64).exp()).abs() < 1e-14);
        assert!(stationarity_gap(&h, &ProbabilityVector::uniform(2), 4.2).unwrap() < 1e-12);

        let h6 = generator(
            &graph(GraphSpec::cycle(6)),
            GeneratorConvention::NormalizedLaplacian,
        )
        .unwrap();
        let p0 = ProbabilityVector::point_mass(6, 0).unwrap();
        let gaps: Vec<f64> = (0..60)
            .map(|i| stationarity_gap(&h6, &p0, 0.25 * i as f64).unwrap())
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    }

    #[test]
    fn probability_vector_validation() {
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![1.1, -0.1]).is_err());
        assert!(ProbabilityVector::new(vec![]).is_err());
        let p = ProbabilityVector::new(vec![1.0 + 1e-15, -1e-15]).unwrap();
        assert_eq!(p[1], 0.0);
        assert!(ProbabilityVector::point_mass(3, 3).is_err());
        assert!(ProbabilityVector::normalized(vec![0.0, 0.0]).is_err());
    }
}
