//! Graph families and their direct products.
//!
//! A [`GraphSpec`] is the declarative, serialisable description; [`build`]
//! validates it and assembles the adjacency matrix. Composite families
//! (hypercube, charter, explicit products) are expanded into their atomic
//! factors and combined with the Kronecker sum, so every graph remembers the
//! orders of its factors.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{circulant_matrix, kron_sum, ComplexMatrix};
use crate::{Error, Result};

/// Largest vertex count accepted by [`build`]; dense storage beyond this is
/// impractical.
pub const MAX_ORDER: usize = 4096;

/// Declarative graph description. Serialises as
/// `{"family": "cycle", "n": 5}`, `{"family": "product", "factors": [...]}`,
/// `{"family": "explicit", "adjacency": [[0,1],[1,0]]}` and so on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum GraphSpec {
    /// `C_n`, `n >= 3`.
    Cycle { n: usize },
    /// `K_n`, `n >= 2`.
    Complete { n: usize },
    /// `n`-fold product of `K_2`, `n >= 1`.
    Hypercube { n: usize },
    /// Circulant with 0/1 coefficients, `a_0 = 0` and `a_k = a_{n-k}`.
    Circulant { n: usize, coeffs: Vec<u8> },
    /// `K_2 x C_n`, `n >= 2`. At `n = 2` this is the square `K_2 x K_2`.
    Charter { n: usize },
    /// Symmetric 0/1 adjacency with zero diagonal.
    Explicit { adjacency: Vec<Vec<u8>> },
    /// Direct product of the listed graphs, leftmost factor most significant.
    Product { factors: Vec<GraphSpec> },
}

impl GraphSpec {
    pub fn cycle(n: usize) -> Self {
        Self::Cycle { n }
    }

    pub fn complete(n: usize) -> Self {
        Self::Complete { n }
    }

    pub fn hypercube(n: usize) -> Self {
        Self::Hypercube { n }
    }

    pub fn charter(n: usize) -> Self {
        Self::Charter { n }
    }

    pub fn product(factors: Vec<GraphSpec>) -> Self {
        Self::Product { factors }
    }

    /// Checks the family constraints, naming the first one violated.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Spec(msg));
        match self {
            Self::Cycle { n } if *n < 3 => fail(format!("cycle requires n >= 3, got n = {n}")),
            Self::Complete { n } if *n < 2 => {
                fail(format!("complete requires n >= 2, got n = {n}"))
            }
            Self::Hypercube { n } if *n < 1 => {
                fail(format!("hypercube requires n >= 1, got n = {n}"))
            }
            Self::Charter { n } if *n < 2 => fail(format!("charter requires n >= 2, got n = {n}")),
            Self::Circulant { n, coeffs } => {
                if *n < 1 {
                    return fail("circulant requires n >= 1".into());
                }
                if coeffs.len() != *n {
                    return fail(format!(
                        "circulant coeffs length {} does not match n = {n}",
                        coeffs.len()
                    ));
                }
                if let Some(bad) = coeffs.iter().find(|&&a| a > 1) {
                    return fail(format!("circulant coeffs must be 0 or 1, found {bad}"));
                }
                if coeffs[0] != 0 {
                    return fail("circulant requires a_0 = 0 (no self-loops)".into());
                }
                if let Some(k) = (1..*n).find(|&k| coeffs[k] != coeffs[n - k]) {
                    return fail(format!(
                        "circulant coeffs must be symmetric: a_{k} != a_{}",
                        n - k
                    ));
                }
                Ok(())
            }
            Self::Explicit { adjacency } => validate_explicit(adjacency),
            Self::Product { factors } => {
                if factors.is_empty() {
                    return fail("product requires at least one factor".into());
                }
                factors.iter().try_for_each(GraphSpec::validate)
            }
            _ => Ok(()),
        }?;
        let order = self.order();
        if order > MAX_ORDER {
            return fail(format!(
                "graph order {order} exceeds the dense limit {MAX_ORDER}"
            ));
        }
        Ok(())
    }

    /// Vertex count implied by the spec (saturating for absurd sizes).
    pub fn order(&self) -> usize {
        match self {
            Self::Cycle { n } | Self::Complete { n } | Self::Circulant { n, .. } => *n,
            Self::Hypercube { n } => 1usize.checked_shl(*n as u32).unwrap_or(usize::MAX),
            Self::Charter { n } => n.saturating_mul(2),
            Self::Explicit { adjacency } => adjacency.len(),
            Self::Product { factors } => factors
                .iter()
                .fold(1usize, |acc, f| acc.saturating_mul(f.order())),
        }
    }

    /// Atomic factors in product order. Hypercube and charter graphs are
    /// expanded; cycles, complete graphs, circulants and explicit graphs are
    /// their own single factor.
    pub fn atoms(&self) -> Vec<GraphSpec> {
        match self {
            Self::Hypercube { n } => vec![Self::Complete { n: 2 }; *n],
            // The 2-cycle collapses to K_2 as a simple graph.
            Self::Charter { n: 2 } => vec![Self::Complete { n: 2 }, Self::Complete { n: 2 }],
            Self::Charter { n } => vec![Self::Complete { n: 2 }, Self::Cycle { n: *n }],
            Self::Product { factors } => factors.iter().flat_map(GraphSpec::atoms).collect(),
            atomic => vec![atomic.clone()],
        }
    }
}

fn validate_explicit(adjacency: &[Vec<u8>]) -> Result<()> {
    let n = adjacency.len();
    let fail = |msg: String| Err(Error::Spec(msg));
    if n == 0 {
        return fail("explicit adjacency must be non-empty".into());
    }
    for (i, row) in adjacency.iter().enumerate() {
        if row.len() != n {
            return fail(format!(
                "explicit adjacency row {i} has length {}, expected {n}",
                row.len()
            ));
        }
        if row[i] != 0 {
            return fail(format!("explicit adjacency has a self-loop at vertex {i}"));
        }
        for (j, &a) in row.iter().enumerate() {
            if a > 1 {
                return fail(format!(
                    "explicit adjacency entry ({i},{j}) = {a} is not 0/1"
                ));
            }
            if a != adjacency[j][i] {
                return fail(format!("explicit adjacency is not symmetric at ({i},{j})"));
            }
        }
    }
    Ok(())
}

/// A validated graph with its adjacency matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    spec: GraphSpec,
    adjacency: ComplexMatrix,
    factor_dims: Vec<usize>,
}

impl Graph {
    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn adjacency(&self) -> &ComplexMatrix {
        &self.adjacency
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.dim()
    }

    /// Orders of the atomic factors; a singleton for atomic graphs.
    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    /// The atomic factor graphs in product order.
    pub fn factors(&self) -> Vec<Graph> {
        let atoms = self.spec.atoms();
        if atoms.len() == 1 {
            return vec![self.clone()];
        }
        atoms
            .iter()
            .map(|a| build(a).expect("atoms of a valid spec are valid"))
            .collect()
    }

    /// Mixed-radix label `(i_1, ..., i_d)` of vertex `v` over the factor orders.
    pub fn vertex_label(&self, v: usize) -> Vec<usize> {
        let mut label = vec![0; self.factor_dims.len()];
        let mut rest = v;
        for (slot, &dim) in label.iter_mut().zip(&self.factor_dims).rev() {
            *slot = rest % dim;
            rest /= dim;
        }
        label
    }

    /// Inverse of [`Graph::vertex_label`].
    pub fn vertex_index(&self, label: &[usize]) -> usize {
        label
            .iter()
            .zip(&self.factor_dims)
            .fold(0, |acc, (&i, &dim)| acc * dim + i)
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        degree(self, v)
    }

    pub fn is_regular(&self) -> Option<usize> {
        is_regular(self)
    }
}

/// Validates `spec` and assembles its adjacency matrix.
pub fn build(spec: &GraphSpec) -> Result<Graph> {
    spec.validate()?;
    let one = |on: bool| Complex64::new(if on { 1.0 } else { 0.0 }, 0.0);
    let adjacency = match spec {
        GraphSpec::Cycle { n } => {
            let mut coeffs = vec![0.0; *n];
            coeffs[1] = 1.0;
            coeffs[n - 1] = 1.0;
            circulant_matrix(&coeffs)?
        }
        GraphSpec::Complete { n } => ComplexMatrix::from_fn(*n, |i, j| one(i != j)),
        GraphSpec::Circulant { coeffs, .. } => {
            let coeffs: Vec<f64> = coeffs.iter().map(|&a| f64::from(a)).collect();
            circulant_matrix(&coeffs)?
        }
        GraphSpec::Explicit { adjacency } => {
            ComplexMatrix::from_fn(adjacency.len(), |i, j| one(adjacency[i][j] == 1))
        }
        composite => {
            let factors = composite
                .atoms()
                .iter()
                .map(build)
                .collect::<Result<Vec<_>>>()?;
            let mut g = direct_product(&factors)?;
            g.spec = composite.clone();
            return Ok(g);
        }
    };
    Ok(Graph {
        factor_dims: vec![adjacency.dim()],
        spec: spec.clone(),
        adjacency,
    })
}

/// Direct product: adjacency `Σ_j I ⊗ … ⊗ A_j ⊗ … ⊗ I`.
pub fn direct_product(factors: &[Graph]) -> Result<Graph> {
    match factors {
        [] => Err(Error::EmptyFactors),
        [single] => Ok(single.clone()),
        _ => {
            let adjacencies: Vec<ComplexMatrix> =
                factors.iter().map(|g| g.adjacency.clone()).collect();
            let order = factors
                .iter()
                .fold(1usize, |acc, g| acc.saturating_mul(g.vertex_count()));
            if order > MAX_ORDER {
                return Err(Error::Spec(format!(
                    "graph order {order} exceeds the dense limit {MAX_ORDER}"
                )));
            }
            Ok(Graph {
                spec: GraphSpec::Product {
                    factors: factors.iter().map(|g| g.spec.clone()).collect(),
                },
                adjacency: kron_sum(&adjacencies)?,
                factor_dims: factors
                    .iter()
                    .flat_map(|g| g.factor_dims.iter().copied())
                    .collect(),
            })
        }
    }
}

/// Number of neighbours of `v`.
pub fn degree(g: &Graph, v: usize) -> Result<usize> {
    let order = g.vertex_count();
    if v >= order {
        return Err(Error::VertexOutOfRange { vertex: v, order });
    }
    Ok(g.adjacency.row(v).iter().filter(|z| z.re != 0.0).count())
}

/// The common degree when every vertex has the same degree.
pub fn is_regular(g: &Graph) -> Option<usize> {
    let first = degree(g, 0).ok()?;
    (1..g.vertex_count())
        .all(|v| degree(g, v).ok() == Some(first))
        .then_some(first)
}
