//! Consistency suites comparing the analytic solutions, the product recipe and
//! the dense engines. Every check is deterministic.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::classical::{
    self, factorwise_generator, generator, ClassicalWalk, GeneratorConvention, ProbabilityVector,
};
use crate::closedforms::{complete_classical, hypercube_classical, ClosedFormFamily};
use crate::graphs::{build, Graph, GraphSpec};
use crate::linalg::ComplexMatrix;
use crate::mixing::tv_to_uniform;
use crate::quantum::{self, hamiltonian, AmplitudeVector, HamiltonianConvention, QuantumWalk};
use crate::{Error, Result};

/// Closed forms and factorization agree with the engines to this accuracy.
pub const AGREEMENT_TOL: f64 = 1e-9;
pub const NORM_TOL: f64 = 1e-10;
pub const MASS_TOL: f64 = 1e-10;
pub const NEGATIVITY_TOL: f64 = 1e-12;
pub const SEMIGROUP_TOL: f64 = 1e-9;
pub const PHASE_SHIFT_TOL: f64 = 1e-12;
pub const PARITY_TOL: f64 = 1e-10;
pub const RESCALE_TOL: f64 = 1e-9;
pub const AVERAGE_TOL: f64 = 1e-10;
pub const STATIONARY_TOL: f64 = 1e-8;
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// Grid used by the closed-form suite: 50 points on `[0, 20]`.
pub fn closed_form_grid() -> Vec<f64> {
    (0..50).map(|k| 20.0 * k as f64 / 49.0).collect()
}

/// Times used by the factorization suite.
pub const FACTORIZATION_TIMES: [f64; 4] = [0.1, 1.0, 5.0, 20.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ClosedForms,
    Factorization,
    Hygiene,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::ClosedForms, Suite::Factorization, Suite::Hygiene];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::ClosedForms => "closedforms",
            Suite::Factorization => "factorization",
            Suite::Hygiene => "hygiene",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closedforms" | "closed-forms" => Ok(Suite::ClosedForms),
            "factorization" => Ok(Suite::Factorization),
            "hygiene" => Ok(Suite::Hygiene),
            other => Err(Error::InvalidArgument(format!(
                "unknown suite '{other}' (expected closedforms, factorization or hygiene)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyCheck {
    pub suite: Suite,
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Run a single suite instead of all three.
    pub only: Option<Suite>,
    /// Replaces every per-check tolerance when set.
    pub tolerance: Option<f64>,
    /// Largest family parameter `n` in the closed-form suite.
    pub max_n: usize,
    /// Largest factor count `d` in the closed-form suite.
    pub max_d: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            only: None,
            tolerance: None,
            max_n: 6,
            max_d: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifyCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn max_error(&self) -> f64 {
        self.checks.iter().map(|c| c.max_error).fold(0.0, f64::max)
    }
}

struct Recorder<'a> {
    suite: Suite,
    options: &'a VerifyOptions,
    checks: Vec<VerifyCheck>,
}

impl Recorder<'_> {
    fn record(&mut self, name: String, max_error: f64, tolerance: f64) {
        let tolerance = self.options.tolerance.unwrap_or(tolerance);
        self.checks.push(VerifyCheck {
            suite: self.suite,
            name,
            max_error,
            tolerance,
            passed: max_error <= tolerance,
        });
    }
}

/// Runs the selected suites.
pub fn run(options: &VerifyOptions) -> Result<VerifyReport> {
    if options.max_n < 3 || options.max_d < 1 {
        return Err(Error::InvalidArgument(format!(
            "verify needs max_n >= 3 and max_d >= 1, got {} and {}",
            options.max_n, options.max_d
        )));
    }
    if let Some(tol) = options.tolerance {
        if tol.is_nan() || tol < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be non-negative, got {tol}"
            )));
        }
    }
    let mut checks = Vec::new();
    for suite in Suite::ALL {
        if options.only.is_some_and(|only| only != suite) {
            continue;
        }
        let mut rec = Recorder {
            suite,
            options,
            checks: Vec::new(),
        };
        match suite {
            Suite::ClosedForms => closed_form_suite(&mut rec)?,
            Suite::Factorization => factorization_suite(&mut rec)?,
            Suite::Hygiene => hygiene_suite(&mut rec)?,
        }
        checks.append(&mut rec.checks);
    }
    Ok(VerifyReport { checks })
}

/// Every closed-form family with `n <= max_n` and `d <= max_d`.
pub fn closed_form_families(max_n: usize, max_d: usize) -> Vec<ClosedFormFamily> {
    use ClosedFormFamily::*;
    let mut out = Vec::new();
    for d in 1..=max_d {
        for n in 3..=max_n {
            out.push(CycleClassical { n, d });
            out.push(CycleQuantum { n, d });
        }
        for n in 2..=max_n {
            out.push(CompleteClassical { n, d });
            out.push(CompleteQuantum { n, d });
        }
    }
    for n in 2..=max_n {
        out.push(CharterClassical { n });
        out.push(CharterQuantum { n });
    }
    for n in 1..=max_n {
        out.push(HypercubeClassical { n });
        out.push(HypercubeQuantum { n });
    }
    out
}

/// Largest deviation of a family's closed form from the dense engine over `times`.
pub fn closed_form_error(family: ClosedFormFamily, times: &[f64]) -> Result<f64> {
    let g = build(&family.graph_spec())?;
    let n = g.vertex_count();
    let mut worst: f64 = 0.0;
    if family.is_quantum() {
        let walk = QuantumWalk::new(hamiltonian(&g, HamiltonianConvention::ProductAveraged)?)?;
        let psi0 = AmplitudeVector::basis(n, 0)?;
        for &t in times {
            let engine = walk.evolve(&psi0, t)?;
            let analytic = family.amplitudes(t)?;
            for (a, b) in analytic.iter().zip(engine.as_slice()) {
                worst = worst.max((a - b).norm());
            }
        }
    } else {
        let walk = ClassicalWalk::new(factorwise_generator(
            &g,
            GeneratorConvention::NormalizedLaplacian,
        )?)?;
        let p0 = ProbabilityVector::point_mass(n, 0)?;
        for &t in times {
            let engine = walk.evolve_raw(&p0, t)?;
            let analytic = family.distribution(t)?;
            for (a, b) in analytic.iter().zip(&engine) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    Ok(worst)
}

fn closed_form_suite(rec: &mut Recorder) -> Result<()> {
    let grid = closed_form_grid();
    for family in closed_form_families(rec.options.max_n, rec.options.max_d) {
        let err = closed_form_error(family, &grid)?;
        rec.record(family.name(), err, AGREEMENT_TOL);
    }
    let mut k2 = 0.0f64;
    for &t in &grid {
        for k in 0..2 {
            k2 = k2.max((complete_classical(2, k, t)? - hypercube_classical(1, k, t)?).abs());
        }
    }
    rec.record("K_2 complete equals hypercube factor".into(), k2, 0.0);
    Ok(())
}

/// Fixed factor combinations drawn from `C_3..C_6` and `K_2..K_5`, each of
/// total order at most 128.
pub fn factorization_cases() -> Vec<Vec<GraphSpec>> {
    let c = GraphSpec::cycle;
    let k = GraphSpec::complete;
    vec![
        vec![c(3), k(2)],
        vec![k(3), c(4)],
        vec![c(5), k(4)],
        vec![c(6), c(3)],
        vec![k(5), k(2), c(3)],
        vec![c(4), c(4)],
        vec![k(2), k(2), k(2)],
        vec![c(3), k(3), c(4)],
        vec![k(4), c(5), k(2)],
        vec![c(6), k(5)],
        vec![c(3), c(3), c(3), k(2)],
        vec![k(2), c(4), k(3), c(3)],
        vec![c(6), c(4), k(5)],
    ]
}

fn case_name(factors: &[GraphSpec]) -> String {
    factors
        .iter()
        .map(|f| match f {
            GraphSpec::Cycle { n } => format!("C{n}"),
            GraphSpec::Complete { n } => format!("K{n}"),
            other => format!("G{}", other.order()),
        })
        .collect::<Vec<_>>()
        .join("x")
}

/// Maximum deviations `(classical, quantum averaged, quantum adjacency)` of the
/// product recipe from full-matrix evolution, starting at label
/// `(0, 1, 2, ...)` reduced modulo each factor order.
pub fn factorization_errors(factors: &[GraphSpec], times: &[f64]) -> Result<(f64, f64, f64)> {
    let graphs = factors.iter().map(build).collect::<Result<Vec<_>>>()?;
    let full = build(&GraphSpec::product(factors.to_vec()))?;
    let start: Vec<usize> = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| i % g.vertex_count())
        .collect();
    let v0 = full.vertex_index(&start);
    let n = full.vertex_count();

    let classical_factors = graphs
        .iter()
        .zip(&start)
        .map(|(g, &s)| {
            Ok((
                generator(g, GeneratorConvention::NormalizedLaplacian)?,
                ProbabilityVector::point_mass(g.vertex_count(), s)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let classical_full = ClassicalWalk::new(factorwise_generator(
        &full,
        GeneratorConvention::NormalizedLaplacian,
    )?)?;
    let p0 = ProbabilityVector::point_mass(n, v0)?;

    let quantum_factors =
        |conv: HamiltonianConvention| -> Result<Vec<(ComplexMatrix, AmplitudeVector)>> {
            graphs
                .iter()
                .zip(&start)
                .map(|(g, &s)| {
                    Ok((
                        hamiltonian(g, conv)?,
                        AmplitudeVector::basis(g.vertex_count(), s)?,
                    ))
                })
                .collect()
        };
    let averaged_factors = quantum_factors(HamiltonianConvention::NormalizedAdjacency)?;
    let adjacency_factors = quantum_factors(HamiltonianConvention::Adjacency)?;
    let averaged_full =
        QuantumWalk::new(hamiltonian(&full, HamiltonianConvention::ProductAveraged)?)?;
    let adjacency_full = QuantumWalk::new(hamiltonian(&full, HamiltonianConvention::Adjacency)?)?;
    let psi0 = AmplitudeVector::basis(n, v0)?;

    let (mut ec, mut ea, mut eq) = (0.0f64, 0.0f64, 0.0f64);
    for &t in times {
        let product = classical::evolve_product(&classical_factors, t)?;
        ec = ec.max(product.max_abs_diff(&classical_full.evolve(&p0, t)?));
        let product = quantum::evolve_product(&averaged_factors, t, true)?;
        ea = ea.max(product.max_abs_diff(&averaged_full.evolve(&psi0, t)?));
        let product = quantum::evolve_product(&adjacency_factors, t, false)?;
        eq = eq.max(product.max_abs_diff(&adjacency_full.evolve(&psi0, t)?));
    }
    Ok((ec, ea, eq))
}

fn factorization_suite(rec: &mut Recorder) -> Result<()> {
    for factors in factorization_cases() {
        let name = case_name(&factors);
        let (ec, ea, eq) = factorization_errors(&factors, &FACTORIZATION_TIMES)?;
        rec.record(format!("classical {name}"), ec, AGREEMENT_TOL);
        rec.record(format!("quantum averaged {name}"), ea, AGREEMENT_TOL);
        rec.record(format!("quantum adjacency {name}"), eq, AGREEMENT_TOL);
    }
    Ok(())
}

/// The example families the hygiene suite sweeps.
pub fn hygiene_families() -> Vec<GraphSpec> {
    let mut out = Vec::new();
    out.extend((3..=8).map(GraphSpec::cycle));
    out.extend((2..=5).map(GraphSpec::complete));
    out.extend((3..=5).map(GraphSpec::charter));
    out.extend((1..=4).map(GraphSpec::hypercube));
    out.push(GraphSpec::product(vec![
        GraphSpec::complete(3),
        GraphSpec::cycle(4),
    ]));
    out
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
        .collect()
}

fn spec_name(spec: &GraphSpec) -> String {
    match spec {
        GraphSpec::Cycle { n } => format!("C{n}"),
        GraphSpec::Complete { n } => format!("K{n}"),
        GraphSpec::Charter { n } => format!("charter{n}"),
        GraphSpec::Hypercube { n } => format!("Q{n}"),
        GraphSpec::Product { factors } => case_name(factors),
        other => format!("G{}", other.order()),
    }
}

/// `max |P_H(t) - P_{H+cI}(t)|` over a few shifts and times.
pub fn phase_shift_error(h: &ComplexMatrix, psi0: &AmplitudeVector) -> Result<f64> {
    let walk = QuantumWalk::new(h.clone())?;
    let mut worst: f64 = 0.0;
    for c in [-2.5, 1.7] {
        let shifted = QuantumWalk::new(h.add_diagonal(c))?;
        for t in [0.5, 2.0, 7.0] {
            let p = walk.probabilities(psi0, t)?;
            worst = worst.max(p.max_abs_diff(&shifted.probabilities(psi0, t)?));
        }
    }
    Ok(worst)
}

fn hygiene_for(rec: &mut Recorder, g: &Graph, name: &str) -> Result<()> {
    let n = g.vertex_count();
    let kappa = g.is_regular().unwrap_or(0) as f64;

    // eigensolver
    let h = hamiltonian(g, HamiltonianConvention::Adjacency)?;
    let walk = QuantumWalk::new(h.clone())?;
    let spectrum = walk.spectrum();
    rec.record(
        format!("reconstruction {name}"),
        spectrum.reconstruct().max_abs_diff(&h) / n as f64,
        AGREEMENT_TOL,
    );
    let v = spectrum.eigenvectors();
    let gram = v.adjoint().matmul(v)?;
    rec.record(
        format!("orthonormality {name}"),
        gram.max_abs_diff(&ComplexMatrix::identity(n)),
        ORTHONORMAL_TOL,
    );

    // quantum
    let psi0 = AmplitudeVector::basis(n, 0)?;
    let mut norm_err: f64 = 0.0;
    let mut parity_err: f64 = 0.0;
    for t in linspace(-50.0, 50.0, 21) {
        let psi = walk.evolve(&psi0, t)?;
        norm_err = norm_err.max((psi.norm() - 1.0).abs());
        let back = walk.probabilities(&psi0, -t)?;
        parity_err = parity_err.max(quantum::measure(&psi).max_abs_diff(&back));
    }
    rec.record(format!("unitarity {name}"), norm_err, NORM_TOL);
    rec.record(format!("time parity {name}"), parity_err, PARITY_TOL);

    let mut semigroup: f64 = 0.0;
    for (s, t) in [(0.3, 1.1), (2.0, 5.0), (7.5, 0.25)] {
        let split = walk.evolve(&walk.evolve(&psi0, s)?, t)?;
        semigroup = semigroup.max(split.max_abs_diff(&walk.evolve(&psi0, s + t)?));
    }
    rec.record(
        format!("quantum semigroup {name}"),
        semigroup,
        SEMIGROUP_TOL,
    );
    rec.record(
        format!("phase shift {name}"),
        phase_shift_error(&h, &psi0)?,
        PHASE_SHIFT_TOL,
    );

    let average = walk.average_distribution(&psi0)?;
    let shifted = walk.average_distribution(&walk.evolve(&psi0, 3.7)?)?;
    rec.record(
        format!("average shift invariance {name}"),
        average.max_abs_diff(&shifted),
        AVERAGE_TOL,
    );

    // classical
    let normalized = ClassicalWalk::new(generator(g, GeneratorConvention::NormalizedLaplacian)?)?;
    let p0 = ProbabilityVector::point_mass(n, 0)?;
    let mut mass: f64 = 0.0;
    let mut negativity: f64 = 0.0;
    for t in linspace(0.0, 100.0, 21) {
        let raw = normalized.evolve_raw(&p0, t)?;
        mass = mass.max((raw.iter().sum::<f64>() - 1.0).abs());
        negativity = negativity.max(raw.iter().fold(0.0, |m, &x| m.max(-x)));
    }
    rec.record(format!("mass conservation {name}"), mass, MASS_TOL);
    rec.record(format!("nonnegativity {name}"), negativity, NEGATIVITY_TOL);

    let mut semigroup: f64 = 0.0;
    for (s, t) in [(0.3, 1.1), (2.0, 5.0), (7.5, 0.25)] {
        let split = normalized.evolve(&normalized.evolve(&p0, s)?, t)?;
        semigroup = semigroup.max(split.max_abs_diff(&normalized.evolve(&p0, s + t)?));
    }
    rec.record(
        format!("classical semigroup {name}"),
        semigroup,
        SEMIGROUP_TOL,
    );

    let combinatorial =
        ClassicalWalk::new(generator(g, GeneratorConvention::CombinatorialLaplacian)?)?;
    let mut rescale: f64 = 0.0;
    for t in [0.1, 0.8, 3.0] {
        let a = combinatorial.evolve(&p0, t)?;
        rescale = rescale.max(a.max_abs_diff(&normalized.evolve(&p0, kappa * t)?));
    }
    rec.record(format!("laplacian rescale {name}"), rescale, RESCALE_TOL);

    let stationary = tv_to_uniform(normalized.evolve(&p0, 200.0)?.as_slice());
    rec.record(format!("stationarity {name}"), stationary, STATIONARY_TOL);
    Ok(())
}

fn hygiene_suite(rec: &mut Recorder) -> Result<()> {
    for spec in hygiene_families() {
        let g = build(&spec)?;
        hygiene_for(rec, &g, &spec_name(&spec))?;
    }
    Ok(())
}
