use cayleywalk::classical::{generator, ClassicalWalk};
use cayleywalk::mixing::tv_to_uniform;
use cayleywalk::quantum::{hamiltonian, QuantumWalk};
use cayleywalk::{
    AmplitudeVector, Error, GeneratorConvention, Graph, HamiltonianConvention, ProbabilityVector,
    Result,
};
use serde::Serialize;

/// `steps` times from `t_min` to `t_max`, both included.
pub fn time_grid(t_min: f64, t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !t_min.is_finite() || !t_max.is_finite() {
        return Err(Error::InvalidArgument("time bounds must be finite".into()));
    }
    if t_min > t_max {
        return Err(Error::InvalidArgument(format!(
            "t_min ({t_min}) must not exceed t_max ({t_max})"
        )));
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    if steps == 1 {
        return Ok(vec![t_min]);
    }
    let last = steps - 1;
    Ok((0..steps)
        .map(|k| {
            if k == last {
                t_max
            } else {
                t_min + (t_max - t_min) * k as f64 / last as f64
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub t: f64,
    pub probabilities: Vec<f64>,
    pub tv_to_uniform: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<(f64, f64)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sweep {
    pub vertices: usize,
    pub start: usize,
    pub rows: Vec<Row>,
}

pub fn classical(
    g: &Graph,
    convention: GeneratorConvention,
    start: usize,
    times: &[f64],
) -> Result<Sweep> {
    let n = g.vertex_count();
    let p0 = ProbabilityVector::point_mass(n, start)?;
    let walk = ClassicalWalk::new(generator(g, convention)?)?;
    let rows = times
        .iter()
        .map(|&t| {
            let p = walk.evolve(&p0, t)?.into_vec();
            Ok(Row {
                t,
                tv_to_uniform: tv_to_uniform(&p),
                probabilities: p,
                amplitudes: None,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Sweep {
        vertices: n,
        start,
        rows,
    })
}

pub fn quantum(
    g: &Graph,
    convention: HamiltonianConvention,
    start: usize,
    times: &[f64],
    with_amplitudes: bool,
) -> Result<Sweep> {
    let n = g.vertex_count();
    let psi0 = AmplitudeVector::basis(n, start)?;
    let walk = QuantumWalk::new(hamiltonian(g, convention)?)?;
    let rows = times
        .iter()
        .map(|&t| {
            let psi = walk.evolve(&psi0, t)?;
            let p = cayleywalk::quantum::measure(&psi).into_vec();
            Ok(Row {
                t,
                tv_to_uniform: tv_to_uniform(&p),
                probabilities: p,
                amplitudes: with_amplitudes
                    .then(|| psi.as_slice().iter().map(|z| (z.re, z.im)).collect()),
            })
        })
        .collect::<Result<_>>()?;
    Ok(Sweep {
        vertices: n,
        start,
        rows,
    })
}
