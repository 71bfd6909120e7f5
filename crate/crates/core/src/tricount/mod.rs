//! Exact triangle counting.
//!
//! Three sparse linear-algebra formulations plus a dense brute-force
//! oracle:
//!
//! | tag         | formulation             | aggregate        |
//! |-------------|-------------------------|------------------|
//! | `adj2`      | `Σ (A² ∘ A)`            | `6·n_T`          |
//! | `lu`        | `Σ (A ∘ LU)`            | `2·n_T`          |
//! | `incidence` | `nnz(AE)`               | `3·n_T`          |
//! | `brute`     | triples of a dense map  | `n_T`            |
//!
//! The sparse kernels split work across the current rayon pool and reduce
//! with integer addition, so results do not depend on the worker count.

mod intersect;
mod kernels;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{
    build_incidence, split_lower_upper, CsrGraph, GraphError, IncidenceMatrix, TriangularSplit,
};

pub use intersect::{
    intersect_count, intersect_with_pivot, merge_count, probe_count, RowMarker, SKEW_RATIO,
};
pub use kernels::{count_adj2, count_brute, count_incidence, count_lu, DEFAULT_ORACLE_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Adj2,
    Lu,
    Incidence,
    Brute,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Self::Adj2, Self::Lu, Self::Incidence, Self::Brute];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Adj2 => "adj2",
            Self::Lu => "lu",
            Self::Incidence => "incidence",
            Self::Brute => "brute",
        }
    }

    /// How many times each triangle appears in the kernel's aggregate.
    pub fn divisor(self) -> u64 {
        match self {
            Self::Adj2 => 6,
            Self::Lu => 2,
            Self::Incidence => 3,
            Self::Brute => 1,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = CountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| CountError::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CountError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has {n_vertices} vertices, above the brute-force oracle limit of {limit}")]
    OracleLimit { n_vertices: usize, limit: usize },
    #[error("{algorithm} aggregate {aggregate} is not divisible by {}", algorithm.divisor())]
    Indivisible {
        algorithm: Algorithm,
        aggregate: u64,
    },
    #[error("unknown algorithm `{0}` (expected adj2, lu, incidence or brute)")]
    UnknownAlgorithm(String),
    #[error("could not start worker pool: {0}")]
    Workers(String),
}

/// Triangle count together with the pre-division aggregate it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleCount {
    pub count: u64,
    pub algorithm: Algorithm,
    /// `Σ C` for adj2/lu, `nnz(C)` for incidence, `n_T` for brute.
    pub aggregate: u64,
}

impl TriangleCount {
    pub fn from_aggregate(algorithm: Algorithm, aggregate: u64) -> Result<Self, CountError> {
        let d = algorithm.divisor();
        if !aggregate.is_multiple_of(d) {
            return Err(CountError::Indivisible {
                algorithm,
                aggregate,
            });
        }
        Ok(Self {
            count: aggregate / d,
            algorithm,
            aggregate,
        })
    }
}

/// A graph plus whatever auxiliary structures the requested kernels need,
/// built up front so that counting itself can be timed in isolation.
#[derive(Debug)]
pub struct KernelInputs<'g> {
    graph: &'g CsrGraph,
    split: Option<TriangularSplit>,
    incidence: Option<IncidenceMatrix>,
    oracle_limit: usize,
}

impl<'g> KernelInputs<'g> {
    pub fn prepare(graph: &'g CsrGraph, algorithms: &[Algorithm]) -> Self {
        Self {
            graph,
            split: algorithms
                .contains(&Algorithm::Lu)
                .then(|| split_lower_upper(graph)),
            incidence: algorithms
                .contains(&Algorithm::Incidence)
                .then(|| build_incidence(graph)),
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        }
    }

    pub fn with_oracle_limit(mut self, limit: usize) -> Self {
        self.oracle_limit = limit;
        self
    }

    pub fn graph(&self) -> &CsrGraph {
        self.graph
    }

    /// Runs one kernel on the current thread pool. Structures not
    /// prepared up front are built on demand.
    pub fn count(&self, algorithm: Algorithm) -> Result<TriangleCount, CountError> {
        match algorithm {
            Algorithm::Adj2 => count_adj2(self.graph),
            Algorithm::Lu => match &self.split {
                Some(split) => count_lu(self.graph, split),
                None => count_lu(self.graph, &split_lower_upper(self.graph)),
            },
            Algorithm::Incidence => match &self.incidence {
                Some(inc) => count_incidence(self.graph, inc),
                None => count_incidence(self.graph, &build_incidence(self.graph)),
            },
            Algorithm::Brute => count_brute(self.graph, self.oracle_limit),
        }
    }
}

/// Counts with a single kernel, building what it needs.
pub fn count(graph: &CsrGraph, algorithm: Algorithm) -> Result<TriangleCount, CountError> {
    KernelInputs::prepare(graph, &[algorithm]).count(algorithm)
}

/// Runs `f` inside a dedicated pool of `workers` threads; `0` means the
/// rayon default.
pub fn with_workers<R, F>(workers: usize, f: F) -> Result<R, CountError>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CountError::Workers(e.to_string()))?;
    Ok(pool.install(f))
}
