//! Exact triangle counting on sparse graphs, with a benchmark harness and
//! a power-law performance model `T_tri = (Nₑ/N₁)^β` for the timings.
//!
//! * [`graph`]: edge-list ingestion, canonical CSR adjacency, `(L, U)`
//!   split, incidence matrix.
//! * [`tricount`]: `A²∘A`, `A∘LU` and incidence-product kernels plus a
//!   brute-force oracle.
//! * [`genlab`]: Erdős–Rényi, Kronecker power and stochastic Kronecker
//!   generators.
//! * [`bench`]: median wall-clock timing of a kernel and the records CSV.
//! * [`modelfit`]: log-log fits, β snapping and state-of-the-art lines.

pub mod bench;
pub mod genlab;
pub mod graph;
pub mod modelfit;
pub mod tricount;

pub use graph::{CsrGraph, EdgeList, GraphError, IncidenceMatrix, TriangularSplit};
pub use tricount::{Algorithm, CountError, TriangleCount};
