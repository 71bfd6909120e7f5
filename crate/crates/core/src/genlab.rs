//! Synthetic graph generators.
//!
//! * Erdős–Rényi `G(n, p)` for oracle-checked random instances.
//! * Noise-free Kronecker powers of a seed graph. The triangle count
//!   has a closed form, `n_T(A^⊗k) = 6^(k-1) · n_T(A)^k`, because
//!   `trace(A³) = 6·n_T` and trace is multiplicative under `⊗`.
//! * Stochastic Kronecker (R-MAT) edge sampling for load generation.
//!
//! Randomness comes from ChaCha8, a counter-based stream cipher RNG.
//! [`rng_for`] derives one independent stream per `(seed, stream)` pair, so
//! a given [`GenSpec`] always produces the same graph regardless of what
//! else runs in the process.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{CsrGraph, GraphError, SparsePattern, VertexId};

/// Largest number of stored adjacency entries a Kronecker power may have.
pub const KRON_ENTRY_BUDGET: usize = 1 << 31;

const ER_STREAM: u64 = 1;
const STOCHASTIC_KRON_STREAM: u64 = 2;

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("Kronecker power must be at least 1")]
    InvalidPower,
    #[error("initiator probabilities sum to {0}, expected 1")]
    InitiatorSum(f64),
    #[error("initiator entry {0} is outside [0, 1]")]
    InitiatorEntry(f64),
    #[error("generated graph too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Independent, reproducible random stream.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Row-major 2×2 quadrant probabilities `[[a, b], [c, d]]`.
pub type Initiator = [[f64; 2]; 2];

/// Initiator used by the Graph500 reference generator.
pub const GRAPH500_INITIATOR: Initiator = [[0.57, 0.19], [0.19, 0.05]];

pub const UNIFORM_INITIATOR: Initiator = [[0.25, 0.25], [0.25, 0.25]];

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    KronPower {
        seed_graph: CsrGraph,
        k: u32,
    },
    StochasticKron {
        initiator: Initiator,
        scale: u32,
        edge_factor: u64,
    },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Self::ErdosRenyi { .. } => "erdos_renyi",
            Self::KronPower { .. } => "kron_power",
            Self::StochasticKron { .. } => "stochastic_kron",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub model: Model,
    pub rng_seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<CsrGraph, GenError> {
        match &self.model {
            Model::ErdosRenyi { n, p } => gen_erdos_renyi(*n, *p, self.rng_seed),
            Model::KronPower { seed_graph, k } => gen_kron_power(seed_graph, *k),
            Model::StochasticKron {
                initiator,
                scale,
                edge_factor,
            } => gen_stochastic_kron(initiator, *scale, *edge_factor, self.rng_seed),
        }
    }

    /// Short identifier such as `er-n64-p0.25-s7`, usable as a graph id.
    pub fn label(&self) -> String {
        match &self.model {
            Model::ErdosRenyi { n, p } => format!("er-n{n}-p{p}-s{}", self.rng_seed),
            Model::KronPower { seed_graph, k } => format!(
                "kron-v{}-e{}-k{k}",
                seed_graph.n_vertices(),
                seed_graph.n_edges()
            ),
            Model::StochasticKron {
                initiator,
                scale,
                edge_factor,
            } => {
                let [[a, b], [c, d]] = initiator;
                format!(
                    "skron-{a}-{b}-{c}-{d}-s{scale}-f{edge_factor}-r{}",
                    self.rng_seed
                )
            }
        }
    }

    pub fn metadata(&self, graph: &CsrGraph) -> GenMetadata {
        let parameters = match &self.model {
            Model::ErdosRenyi { n, p } => serde_json::json!({ "n": n, "p": p }),
            Model::KronPower { seed_graph, k } => serde_json::json!({
                "k": k,
                "seed_n_vertices": seed_graph.n_vertices(),
                "seed_edges": seed_graph.upper_edges().collect::<Vec<_>>(),
            }),
            Model::StochasticKron {
                initiator,
                scale,
                edge_factor,
            } => serde_json::json!({
                "initiator": initiator,
                "scale": scale,
                "edge_factor": edge_factor,
            }),
        };
        GenMetadata {
            model: self.model.name().to_string(),
            parameters,
            rng_seed: self.rng_seed,
            n_edges: graph.n_edges(),
            n_vertices: graph.n_vertices() as u64,
        }
    }
}

/// Sidecar record describing how a graph file was generated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenMetadata {
    pub model: String,
    pub parameters: serde_json::Value,
    pub rng_seed: u64,
    pub n_edges: u64,
    pub n_vertices: u64,
}

/// `G(n, p)`: every unordered pair independently with probability `p`.
///
/// Uses geometric skipping between successive accepted pairs, so the cost
/// is proportional to the number of edges rather than `n²`.
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<CsrGraph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::InvalidProbability(p));
    }
    if n > VertexId::MAX as usize {
        return Err(GenError::TooLarge(format!("{n} vertices")));
    }
    if p == 0.0 || n < 2 {
        return Ok(CsrGraph::empty(n));
    }
    if p == 1.0 {
        let n32 = n as VertexId;
        return Ok(CsrGraph::from_index_pairs(
            n,
            (0..n32).flat_map(|i| (i + 1..n32).map(move |j| (i, j))),
        )?);
    }
    let mut rng = rng_for(seed, ER_STREAM);
    let log_q = (1.0 - p).ln();
    let mut pairs = Vec::new();
    // Walk the strictly lower triangle row by row; (v, w) with w < v.
    let (mut v, mut w) = (1usize, -1i64);
    while v < n {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor();
        w += 1 + if skip.is_finite() {
            skip as i64
        } else {
            i64::MAX / 2
        };
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            pairs.push((v as VertexId, w as VertexId));
        }
    }
    Ok(CsrGraph::from_index_pairs(n, pairs)?)
}

/// Adjacency of `left ⊗ right`. Both inputs canonical, so the product is
/// symmetric with a zero diagonal and rows come out sorted.
fn kron_product(left: &CsrGraph, right: &CsrGraph) -> Result<CsrGraph, GenError> {
    let nb = right.n_vertices();
    let n = left
        .n_vertices()
        .checked_mul(nb)
        .filter(|&n| n <= VertexId::MAX as usize)
        .ok_or_else(|| GenError::TooLarge("vertex count overflows 32-bit indices".into()))?;
    let nnz = left.adjacency().nnz() * right.adjacency().nnz();
    let mut row_offsets = Vec::with_capacity(n + 1);
    let mut column_indices = Vec::with_capacity(nnz);
    row_offsets.push(0);
    for a in 0..left.n_vertices() {
        for b in 0..nb {
            for &c in left.neighbors(a) {
                let base = c as usize * nb;
                column_indices.extend(
                    right
                        .neighbors(b)
                        .iter()
                        .map(|&d| (base + d as usize) as VertexId),
                );
            }
            row_offsets.push(column_indices.len());
        }
    }
    Ok(CsrGraph::from_pattern_unchecked(SparsePattern::from_parts(
        row_offsets,
        column_indices,
        n,
    )?))
}

/// k-fold Kronecker power of `seed_graph`'s adjacency matrix. Isolated
/// vertices of the product are kept.
pub fn gen_kron_power(seed_graph: &CsrGraph, k: u32) -> Result<CsrGraph, GenError> {
    if k == 0 {
        return Err(GenError::InvalidPower);
    }
    let n = seed_graph.n_vertices();
    let nnz = seed_graph.adjacency().nnz();
    match n.checked_pow(k) {
        Some(total) if total <= VertexId::MAX as usize => {}
        _ => return Err(GenError::TooLarge(format!("{n}^{k} vertices"))),
    }
    match nnz.checked_pow(k) {
        Some(total) if total <= KRON_ENTRY_BUDGET => {}
        _ => {
            return Err(GenError::TooLarge(format!(
                "{nnz}^{k} adjacency entries exceed the budget of {KRON_ENTRY_BUDGET}"
            )))
        }
    }
    let mut power = seed_graph.clone();
    for _ in 1..k {
        power = kron_product(&power, seed_graph)?;
    }
    Ok(power)
}

/// Checks that an initiator is a probability distribution over quadrants.
pub fn validate_initiator(initiator: &Initiator) -> Result<(), GenError> {
    let mut sum = 0.0;
    for &q in initiator.iter().flatten() {
        if !(0.0..=1.0).contains(&q) {
            return Err(GenError::InitiatorEntry(q));
        }
        sum += q;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(GenError::InitiatorSum(sum));
    }
    Ok(())
}

/// R-MAT sampling: `edge_factor · 2^scale` directed picks, each descending
/// `scale` levels of quadrants chosen by `initiator`, then reduced to the
/// canonical undirected simple graph on `2^scale` vertices.
pub fn gen_stochastic_kron(
    initiator: &Initiator,
    scale: u32,
    edge_factor: u64,
    seed: u64,
) -> Result<CsrGraph, GenError> {
    validate_initiator(initiator)?;
    if scale > 31 {
        return Err(GenError::TooLarge(format!("scale {scale} exceeds 31")));
    }
    let n = 1usize << scale;
    let picks = edge_factor
        .checked_mul(n as u64)
        .filter(|&p| p <= KRON_ENTRY_BUDGET as u64)
        .ok_or_else(|| GenError::TooLarge(format!("{edge_factor} x 2^{scale} edge picks")))?;
    let [[a, b], [c, _]] = *initiator;
    let (ab, abc) = (a + b, a + b + c);
    let mut rng = rng_for(seed, STOCHASTIC_KRON_STREAM);
    let mut pairs = Vec::with_capacity(picks as usize);
    for _ in 0..picks {
        let (mut row, mut col) = (0 as VertexId, 0 as VertexId);
        for _ in 0..scale {
            let r: f64 = rng.random();
            let (dr, dc) = if r < a {
                (0, 0)
            } else if r < ab {
                (0, 1)
            } else if r < abc {
                (1, 0)
            } else {
                (1, 1)
            };
            row = (row << 1) | dr;
            col = (col << 1) | dc;
        }
        pairs.push((row, col));
    }
    Ok(CsrGraph::from_index_pairs(n, pairs)?)
}
