//! Total-variation mixing analysis.
//!
//! Total variation here is the plain L1 distance `Σ_x |p(x) - q(x)|`, which
//! ranges over `[0, 2]`. Halve it to compare against the more common
//! `max_A |p(A) - q(A)|` convention.

use num_complex::Complex64;
use serde::Serialize;

use crate::classical::{ClassicalWalk, ProbabilityVector};
use crate::graphs::{build, GraphSpec};
use crate::linalg::ComplexMatrix;
use crate::quantum::{hamiltonian, AmplitudeVector, HamiltonianConvention, QuantumWalk};
use crate::{Error, Result};

/// Width at which golden-section refinement stops.
pub const REFINE_TOL: f64 = 1e-8;
/// Number of coarse local minima that get refined.
pub const REFINED_BRACKETS: usize = 8;
/// An average distribution within this TV of uniform counts as uniform.
pub const AVERAGE_UNIFORM_TOL: f64 = 1e-6;
/// Probabilities closer than this share a group in [`balanced_property_check`].
pub const BALANCE_TOL: f64 = 1e-8;

/// Horizon used by [`exact_mixing_claims`].
pub const CLAIM_HORIZON: f64 = 200.0;
/// Coarse grid used by [`exact_mixing_claims`].
pub const CLAIM_GRID: usize = 20_000;
/// Target for families expected to mix exactly.
pub const CLAIM_EXACT_EPSILON: f64 = 1e-6;
/// Target the non-mixing families must fail to reach.
pub const CLAIM_NEGATIVE_EPSILON: f64 = 1e-3;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// `Σ_x |p(x) - q(x)|`.
pub fn total_variation(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            actual: q.len(),
        });
    }
    Ok(tv_slices(p.as_slice(), q.as_slice()))
}

fn tv_slices(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum()
}

/// `Σ_x |p(x) - 1/n|`.
pub fn tv_to_uniform(p: &[f64]) -> f64 {
    let u = 1.0 / p.len() as f64;
    p.iter().map(|x| (x - u).abs()).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixingReport {
    pub best_time: f64,
    pub best_tv: f64,
    pub epsilon_target: f64,
    pub achieved: bool,
    /// Every `(t, tv)` evaluated: the coarse grid followed by refinement probes.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tv_trace: Vec<(f64, f64)>,
}

impl MixingReport {
    pub fn without_trace(mut self) -> Self {
        self.tv_trace = Vec::new();
        self
    }
}

fn golden_section(
    f: &mut impl FnMut(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    trace: &mut Vec<(f64, f64)>,
) -> Result<()> {
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    trace.push((c, fc));
    trace.push((d, fd));
    while b - a > REFINE_TOL {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c)?;
            trace.push((c, fc));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d)?;
            trace.push((d, fd));
        }
    }
    Ok(())
}

/// Minimizes `tv(t)` over `(0, t_max]`: a uniform grid of `grid_points`
/// samples, then golden-section refinement of the best local minima.
pub fn minimize_tv(
    mut tv: impl FnMut(f64) -> Result<f64>,
    t_max: f64,
    grid_points: usize,
    epsilon: f64,
) -> Result<MixingReport> {
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    if grid_points < 16 {
        return Err(Error::InvalidArgument(format!(
            "grid_points must be at least 16, got {grid_points}"
        )));
    }
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be non-negative, got {epsilon}"
        )));
    }
    let step = t_max / grid_points as f64;
    let mut trace = Vec::with_capacity(grid_points + 64 * REFINED_BRACKETS);
    for i in 1..=grid_points {
        let t = step * i as f64;
        trace.push((t, tv(t)?));
    }
    let mut minima: Vec<usize> = (0..grid_points)
        .filter(|&i| {
            let left = i == 0 || trace[i].1 <= trace[i - 1].1;
            let right = i + 1 == grid_points || trace[i].1 <= trace[i + 1].1;
            left && right
        })
        .collect();
    minima.sort_by(|&a, &b| trace[a].1.total_cmp(&trace[b].1));
    minima.truncate(REFINED_BRACKETS);
    for i in minima {
        let lo = if i == 0 { step * 0.5 } else { trace[i - 1].0 };
        let hi = if i + 1 == grid_points {
            t_max
        } else {
            trace[i + 1].0
        };
        golden_section(&mut tv, lo, hi, &mut trace)?;
    }
    let (best_time, best_tv) = trace
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("grid is non-empty");
    Ok(MixingReport {
        best_time,
        best_tv,
        epsilon_target: epsilon,
        achieved: best_tv <= epsilon,
        tv_trace: trace,
    })
}

/// Smallest TV to uniform of the quantum walk `e^{-iHt} psi0` over `(0, t_max]`.
pub fn instantaneous_mixing_search(
    h: &ComplexMatrix,
    psi0: &AmplitudeVector,
    t_max: f64,
    grid_points: usize,
    epsilon: f64,
) -> Result<MixingReport> {
    let walk = QuantumWalk::new(h.clone())?;
    quantum_search(&walk, psi0, t_max, grid_points, epsilon)
}

fn quantum_search(
    walk: &QuantumWalk,
    psi0: &AmplitudeVector,
    t_max: f64,
    grid_points: usize,
    epsilon: f64,
) -> Result<MixingReport> {
    let spectrum = walk.spectrum();
    let coeffs = spectrum.coefficients(psi0.as_slice())?;
    let lambda = spectrum.eigenvalues().to_vec();
    let mut phased = vec![Complex64::new(0.0, 0.0); coeffs.len()];
    let tv = |t: f64| -> Result<f64> {
        for ((slot, &c), &l) in phased.iter_mut().zip(&coeffs).zip(&lambda) {
            *slot = c * Complex64::from_polar(1.0, -l * t);
        }
        let psi = spectrum.synthesize(&phased);
        let p: Vec<f64> = psi.iter().map(Complex64::norm_sqr).collect();
        Ok(tv_to_uniform(&p))
    };
    minimize_tv(tv, t_max, grid_points, epsilon)
}

/// Smallest TV to uniform of the classical walk `e^{tH} p0` over `(0, t_max]`.
pub fn classical_mixing_search(
    h: &ComplexMatrix,
    p0: &ProbabilityVector,
    t_max: f64,
    grid_points: usize,
    epsilon: f64,
) -> Result<MixingReport> {
    let walk = ClassicalWalk::new(h.clone())?;
    minimize_tv(
        |t| Ok(tv_to_uniform(walk.evolve(p0, t)?.as_slice())),
        t_max,
        grid_points,
        epsilon,
    )
}

/// One family of the exact-mixing survey.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixingClaim {
    pub claim: String,
    pub graph: GraphSpec,
    pub convention: HamiltonianConvention,
    pub expect_mixing: bool,
    pub report: MixingReport,
    /// The search outcome matches `expect_mixing`.
    pub verified: bool,
}

/// Graphs surveyed by [`exact_mixing_claims`] with their expected outcome.
pub fn claim_families() -> Vec<(GraphSpec, HamiltonianConvention, bool)> {
    use HamiltonianConvention::{NormalizedAdjacency, ProductAveraged};
    vec![
        (GraphSpec::cycle(3), NormalizedAdjacency, true),
        (GraphSpec::cycle(4), NormalizedAdjacency, true),
        (GraphSpec::complete(2), NormalizedAdjacency, true),
        (GraphSpec::complete(3), NormalizedAdjacency, true),
        (GraphSpec::complete(4), NormalizedAdjacency, true),
        (GraphSpec::cycle(5), NormalizedAdjacency, false),
        (GraphSpec::cycle(6), NormalizedAdjacency, false),
        (GraphSpec::complete(5), NormalizedAdjacency, false),
        (GraphSpec::charter(3), ProductAveraged, false),
        (GraphSpec::charter(4), ProductAveraged, false),
        (GraphSpec::charter(5), ProductAveraged, false),
    ]
}

fn family_name(spec: &GraphSpec) -> String {
    match spec {
        GraphSpec::Cycle { n } => format!("C_{n}"),
        GraphSpec::Complete { n } => format!("K_{n}"),
        GraphSpec::Charter { n } => format!("charter(n={n})"),
        GraphSpec::Hypercube { n } => format!("Q_{n}"),
        other => format!("{} vertices", other.order()),
    }
}

/// Runs the instantaneous mixing search from vertex 0 for every entry of
/// [`claim_families`] over `t ∈ (0, 200]`.
///
/// A negative outcome only says the target was not reached on this horizon.
pub fn exact_mixing_claims() -> Result<Vec<MixingClaim>> {
    claim_families()
        .into_iter()
        .map(|(spec, convention, expect_mixing)| {
            let g = build(&spec)?;
            let h = hamiltonian(&g, convention)?;
            let psi0 = AmplitudeVector::basis(g.vertex_count(), 0)?;
            let epsilon = if expect_mixing {
                CLAIM_EXACT_EPSILON
            } else {
                CLAIM_NEGATIVE_EPSILON
            };
            let report =
                instantaneous_mixing_search(&h, &psi0, CLAIM_HORIZON, CLAIM_GRID, epsilon)?
                    .without_trace();
            let claim = if expect_mixing {
                format!("{} mixes exactly (TV <= {epsilon:e})", family_name(&spec))
            } else {
                format!(
                    "{} does not reach TV <= {epsilon:e} on (0, {CLAIM_HORIZON}]",
                    family_name(&spec)
                )
            };
            Ok(MixingClaim {
                claim,
                graph: spec,
                convention,
                expect_mixing,
                verified: report.achieved == expect_mixing,
                report,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AverageMixing {
    pub distribution: ProbabilityVector,
    pub tv_to_uniform: f64,
    #[serde(rename = "uniform")]
    pub is_uniform: bool,
}

/// Compares the exact time-averaged distribution with uniform.
pub fn average_mixing_check(h: &ComplexMatrix, psi0: &AmplitudeVector) -> Result<AverageMixing> {
    let distribution = QuantumWalk::new(h.clone())?.average_distribution(psi0)?;
    let tv = tv_to_uniform(distribution.as_slice());
    Ok(AverageMixing {
        distribution,
        tv_to_uniform: tv,
        is_uniform: tv <= AVERAGE_UNIFORM_TOL,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalancedGroups {
    pub time: f64,
    /// Vertex sets sharing one probability, largest value first.
    pub groups: Vec<Vec<usize>>,
    pub values: Vec<f64>,
}

impl BalancedGroups {
    pub fn sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    /// Two groups of `n` vertices each.
    pub fn is_balanced(&self, n: usize) -> bool {
        self.sizes() == [n, n]
    }
}

/// Groups equal entries of `p` (chained at [`BALANCE_TOL`]).
pub fn probability_groups(p: &[f64]) -> (Vec<Vec<usize>>, Vec<f64>) {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| p[b].total_cmp(&p[a]).then(a.cmp(&b)));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match groups.last_mut() {
            Some(g) if (p[*g.last().expect("non-empty")] - p[v]).abs() <= BALANCE_TOL => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let values = groups
        .iter_mut()
        .map(|g| {
            let mean = g.iter().map(|&v| p[v]).sum::<f64>() / g.len() as f64;
            g.sort_unstable();
            mean
        })
        .collect();
    (groups, values)
}

fn charter_walk(n: usize) -> Result<(QuantumWalk, AmplitudeVector)> {
    let g = build(&GraphSpec::charter(n))?;
    let walk = QuantumWalk::new(hamiltonian(&g, HamiltonianConvention::ProductAveraged)?)?;
    let psi0 = AmplitudeVector::basis(g.vertex_count(), 0)?;
    Ok((walk, psi0))
}

/// Partitions the charter `K_2 x C_n` quantum distribution at time `t`
/// (averaged Hamiltonian, start at vertex 0) into equal-probability groups.
pub fn balanced_property_check(n: usize, t: f64) -> Result<BalancedGroups> {
    let (walk, psi0) = charter_walk(n)?;
    let p = walk.probabilities(&psi0, t)?;
    let (groups, values) = probability_groups(p.as_slice());
    Ok(BalancedGroups {
        time: t,
        groups,
        values,
    })
}

/// Earliest time in `(0, t_max]` at which the charter distribution splits
/// into two groups of `n` equal probabilities, if the grid finds one.
pub fn find_balanced_time(n: usize, t_max: f64, grid_points: usize) -> Result<Option<f64>> {
    let (walk, psi0) = charter_walk(n)?;
    let spread = |t: f64| -> Result<f64> {
        let mut p = walk.probabilities(&psi0, t)?.into_vec();
        p.sort_by(f64::total_cmp);
        Ok((p[n - 1] - p[0]) + (p[2 * n - 1] - p[n]))
    };
    let report = minimize_tv(spread, t_max, grid_points, BALANCE_TOL)?;
    let mut candidates: Vec<(f64, f64)> = report
        .tv_trace
        .into_iter()
        .filter(|&(_, s)| s <= BALANCE_TOL)
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (t, _) in candidates {
        if balanced_property_check(n, t)?.is_balanced(n) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
