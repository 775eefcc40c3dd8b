//! Continuous-time quantum walks `|psi_t> = e^{-iHt} |psi_0>` (ħ = 1).
//!
//! The propagator sign is `e^{-iHt}` throughout. For real symmetric `H` and
//! a real start vector the measured probabilities are even in `t`, so the
//! opposite sign convention yields the same distributions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classical::ProbabilityVector;
use crate::graphs::{is_regular, Graph};
use crate::linalg::{
    hermitian_eigendecomposition, kron_sum, kron_vec, norm2, ComplexMatrix, SpectralDecomposition,
};
use crate::{Error, Result};

/// Accepted deviation of `||psi||_2` from one for caller-supplied states.
pub const NORM_TOL: f64 = 1e-12;
/// Eigenvalues closer than this share a degeneracy group in
/// [`average_distribution`].
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HamiltonianConvention {
    /// `H = A`.
    Adjacency,
    /// `H = A/κ` on a `κ`-regular graph.
    NormalizedAdjacency,
    /// `H = (1/d) Σ_i I ⊗ … ⊗ A_i/κ_i ⊗ … ⊗ I` over the `d` atomic factors.
    ProductAveraged,
}

/// A unit-norm complex amplitude per vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AmplitudeVector(Vec<Complex64>);

impl AmplitudeVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidAmplitude("empty vector".into()));
        }
        let norm = norm2(&entries);
        if norm.is_nan() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidAmplitude(format!("norm {norm} is not 1")));
        }
        Ok(Self(entries))
    }

    /// Rescales `entries` to unit norm.
    pub fn normalized(entries: Vec<Complex64>) -> Result<Self> {
        let norm = norm2(&entries);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidAmplitude(format!(
                "cannot normalize norm {norm}"
            )));
        }
        Ok(Self(entries.into_iter().map(|z| z / norm).collect()))
    }

    /// The vertex state `|v>`.
    pub fn basis(n: usize, vertex: usize) -> Result<Self> {
        if vertex >= n {
            return Err(Error::VertexOutOfRange { vertex, order: n });
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); n];
        entries[vertex] = Complex64::new(1.0, 0.0);
        Ok(Self(entries))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self(kron_vec(&self.0, &other.0))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.0)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for AmplitudeVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

fn normalized_adjacency(g: &Graph) -> Result<ComplexMatrix> {
    let kappa = is_regular(g).ok_or(Error::IrregularGraph {
        convention: "normalized adjacency",
    })?;
    if kappa == 0 {
        return Ok(ComplexMatrix::zeros(g.vertex_count()));
    }
    Ok(g.adjacency().scale_real(1.0 / kappa as f64))
}

/// Hamiltonian of `g` under `conv`.
pub fn hamiltonian(g: &Graph, conv: HamiltonianConvention) -> Result<ComplexMatrix> {
    match conv {
        HamiltonianConvention::Adjacency => Ok(g.adjacency().clone()),
        HamiltonianConvention::NormalizedAdjacency => normalized_adjacency(g),
        HamiltonianConvention::ProductAveraged => {
            let terms = g
                .factors()
                .iter()
                .map(normalized_adjacency)
                .collect::<Result<Vec<_>>>()?;
            let d = terms.len() as f64;
            Ok(kron_sum(&terms)?.scale_real(1.0 / d))
        }
    }
}

/// A Hamiltonian with its spectral decomposition, reusable across times.
#[derive(Debug, Clone)]
pub struct QuantumWalk {
    hamiltonian: ComplexMatrix,
    spectrum: SpectralDecomposition,
}

impl QuantumWalk {
    pub fn new(hamiltonian: ComplexMatrix) -> Result<Self> {
        let spectrum = hermitian_eigendecomposition(&hamiltonian)?;
        Ok(Self {
            hamiltonian,
            spectrum,
        })
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn evolve(&self, psi0: &AmplitudeVector, t: f64) -> Result<AmplitudeVector> {
        if !t.is_finite() {
            return Err(Error::InvalidArgument(format!("time {t} is not finite")));
        }
        if psi0.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: psi0.len(),
            });
        }
        if t == 0.0 {
            return Ok(psi0.clone());
        }
        let out = self
            .spectrum
            .expm_action(Complex64::new(0.0, -t), psi0.as_slice())?;
        Ok(AmplitudeVector(out))
    }

    pub fn probabilities(&self, psi0: &AmplitudeVector, t: f64) -> Result<ProbabilityVector> {
        Ok(measure(&self.evolve(psi0, t)?))
    }

    /// Time-averaged distribution; see [`average_distribution`].
    pub fn average_distribution(&self, psi0: &AmplitudeVector) -> Result<ProbabilityVector> {
        let coeffs = self.spectrum.coefficients(psi0.as_slice())?;
        let v = self.spectrum.eigenvectors();
        let n = self.dim();
        let mut avg = vec![0.0; n];
        for group in self.spectrum.degeneracy_groups(DEGENERACY_TOL) {
            for (j, slot) in avg.iter_mut().enumerate() {
                let amp: Complex64 = group.iter().map(|&k| v[(j, k)] * coeffs[k]).sum();
                *slot += amp.norm_sqr();
            }
        }
        ProbabilityVector::normalized(avg)
    }
}

/// `e^{-iHt} psi0`; `t` may be negative.
pub fn evolve(h: &ComplexMatrix, psi0: &AmplitudeVector, t: f64) -> Result<AmplitudeVector> {
    QuantumWalk::new(h.clone())?.evolve(psi0, t)
}

/// `P(j) = |<j|psi>|^2`.
pub fn measure(psi: &AmplitudeVector) -> ProbabilityVector {
    ProbabilityVector::normalized(psi.as_slice().iter().map(Complex64::norm_sqr).collect())
        .expect("unit-norm amplitudes have positive mass")
}

/// `⊗_i e^{-iH_i t'} psi0_i`, with `t' = t/d` when `averaged` (matching
/// [`HamiltonianConvention::ProductAveraged`]) and `t' = t` otherwise.
pub fn evolve_product(
    factors: &[(ComplexMatrix, AmplitudeVector)],
    t: f64,
    averaged: bool,
) -> Result<AmplitudeVector> {
    if factors.is_empty() {
        return Err(Error::EmptyFactors);
    }
    let local_t = if averaged {
        t / factors.len() as f64
    } else {
        t
    };
    let mut parts = factors.iter().map(|(h, psi)| evolve(h, psi, local_t));
    let first = parts.next().expect("non-empty")?;
    parts.try_fold(first, |acc, p| Ok(acc.tensor(&p?)))
}

/// Exact Cesàro average `lim (1/T) ∫_0^T |<j|psi_t>|^2 dt`.
///
/// With eigenvalues grouped into degeneracy classes `G`, this is
/// `Σ_G |Σ_{k∈G} <j|z_k><z_k|psi0>|^2`; cross terms between distinct
/// eigenvalues average out.
pub fn average_distribution(
    h: &ComplexMatrix,
    psi0: &AmplitudeVector,
) -> Result<ProbabilityVector> {
    QuantumWalk::new(h.clone())?.average_distribution(psi0)
}
