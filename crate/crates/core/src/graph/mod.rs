//! Graph ingestion and the sparse structures the counting kernels consume.
//!
//! Input edge lists are reduced to a canonical undirected simple graph
//! ([`CsrGraph`]): symmetric, zero diagonal, deduplicated, rows sorted.
//! From it we derive the `(L, U)` triangular split and the vertex-by-edge
//! incidence matrix. All structures are immutable once built.

mod csr;
mod edgelist;
mod structure;

pub use csr::{CsrGraph, SparsePattern};
pub use edgelist::{
    canonicalize, parse_edge_list, to_tsv_string, write_tsv, EdgeList, Label, LabelMap,
    ParseOptions,
};
pub use structure::{
    build_incidence, permute_vertices, split_lower_upper, IncidenceMatrix, TriangularSplit,
};

/// Vertex index. Counts (vertices, edges, triangles) are 64-bit.
pub type VertexId = u32;

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no edges in input")]
    NoEdges,
    #[error("vertex {vertex} is outside 0..{n_vertices}")]
    VertexOutOfRange { vertex: u64, n_vertices: usize },
    #[error("{0} vertices exceed the 32-bit vertex index space")]
    TooManyVertices(u64),
    #[error("malformed CSR structure: {0}")]
    Malformed(String),
    #[error("structure does not match graph: {0}")]
    Inconsistent(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Small named graphs with known triangle counts.
pub mod fixtures {
    use super::CsrGraph;

    /// Four vertices `a, b, c, d` labelled 1..4 with edges
    /// ab, ac, bc, bd, cd: two triangles, {a,b,c} and {b,c,d}.
    pub const TWO_TRIANGLES_TSV: &str = "1\t2\n1\t3\n2\t3\n2\t4\n3\t4\n";

    pub fn two_triangles() -> CsrGraph {
        CsrGraph::from_index_pairs(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
            .expect("fixture is valid")
    }

    /// `K_n`.
    pub fn complete(n: usize) -> CsrGraph {
        let n32 = n as u32;
        CsrGraph::from_index_pairs(n, (0..n32).flat_map(|i| (i + 1..n32).map(move |j| (i, j))))
            .expect("fixture is valid")
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> CsrGraph {
        let n32 = n as u32;
        CsrGraph::from_index_pairs(n, (1..n32).map(|i| (i - 1, i))).expect("fixture is valid")
    }

    /// Star on `n` vertices: center 0 joined to `1..n`.
    pub fn star(n: usize) -> CsrGraph {
        CsrGraph::from_index_pairs(n, (1..n as u32).map(|i| (0, i))).expect("fixture is valid")
    }
}
