//! Continuous-time classical and quantum random walks on direct products of
//! Cayley graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] dense complex matrices, a Jacobi Hermitian eigensolver,
//!   Fourier/circulant helpers and the spectral exponential action.
//! * [`graphs`] adjacency matrices for cycles, complete graphs, hypercubes,
//!   circulants, charter graphs (`K_2 x C_n`) and their direct products.
//! * [`classical`] the Kolmogorov walk `P(t) = e^{tH} P(0)`.
//! * [`quantum`] the Schrödinger walk `|psi_t> = e^{-iHt} |psi_0>`.
//! * [`closedforms`] analytic solutions for the worked graph families.
//! * [`mixing`] total-variation analysis and uniform-mixing searches.
//! * [`verify`] closed-form and factorization consistency suites.
//!
//! Vertices of a product graph are labelled in mixed radix over the factor
//! orders with the leftmost factor most significant, matching the
//! [`linalg::kron`] index convention.

pub mod classical;
pub mod closedforms;
mod error;
pub mod graphs;
pub mod linalg;
pub mod mixing;
pub mod quantum;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use classical::{GeneratorConvention, ProbabilityVector};
pub use graphs::{Graph, GraphSpec};
pub use linalg::{ComplexMatrix, SpectralDecomposition};
pub use mixing::MixingReport;
pub use quantum::{AmplitudeVector, HamiltonianConvention};
