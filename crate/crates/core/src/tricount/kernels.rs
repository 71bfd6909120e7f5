use rayon::prelude::*;

use super::intersect::{intersect_with_pivot, RowMarker};
use super::{Algorithm, CountError, TriangleCount};
use crate::graph::{CsrGraph, IncidenceMatrix, TriangularSplit};

/// Oracle refuses graphs with more vertices than this unless overridden.
pub const DEFAULT_ORACLE_LIMIT: usize = 2_000;

/// `Σᵢⱼ (A² ∘ A)ᵢⱼ / 6`.
///
/// `(A²)ᵢⱼ = |N(i) ∩ N(j)|` is evaluated only where `Aᵢⱼ = 1`. The masked
/// product is symmetric, so each edge is evaluated once, from the endpoint
/// with the larger `(degree, index)`, and counted for both stored
/// orientations. That endpoint's row is the marked pivot, which keeps
/// skewed intersections proportional to the shorter list.
pub fn count_adj2(graph: &CsrGraph) -> Result<TriangleCount, CountError> {
    let n = graph.n_vertices();
    let rank = |v: usize| (graph.degree(v), v);
    let half: u64 = (0..n)
        .into_par_iter()
        .map_init(
            || RowMarker::new(n),
            |marker, h| {
                let row = graph.neighbors(h);
                let mut marked = false;
                let mut sum = 0;
                for &l in row {
                    let l = l as usize;
                    if rank(l) >= rank(h) {
                        continue;
                    }
                    if !marked {
                        marker.mark(row);
                        marked = true;
                    }
                    sum += intersect_with_pivot(row, marker, graph.neighbors(l));
                }
                if marked {
                    marker.unmark(row);
                }
                sum
            },
        )
        .sum();
    TriangleCount::from_aggregate(Algorithm::Adj2, 2 * half)
}

/// `Σᵢⱼ (A ∘ LU)ᵢⱼ / 2`.
///
/// `(LU)ᵢⱼ = Σₖ L(i,k)·U(k,j)` counts common neighbors `k` below both `i`
/// and `j`; since `U = Lᵀ` that is `|L(i,:) ∩ L(j,:)|`. Evaluated at every
/// stored position of `A`.
pub fn count_lu(graph: &CsrGraph, split: &TriangularSplit) -> Result<TriangleCount, CountError> {
    split.check_matches(graph)?;
    let n = graph.n_vertices();
    let lower = split.lower();
    let aggregate: u64 = (0..n)
        .into_par_iter()
        .map_init(
            || RowMarker::new(n),
            |marker, i| {
                let li = lower.row(i);
                if li.is_empty() {
                    return 0;
                }
                marker.mark(li);
                let sum = graph
                    .neighbors(i)
                    .iter()
                    .map(|&j| intersect_with_pivot(li, marker, lower.row(j as usize)))
                    .sum::<u64>();
                marker.unmark(li);
                sum
            },
        )
        .sum();
    TriangleCount::from_aggregate(Algorithm::Lu, aggregate)
}

/// `nnz(AE) / 3` under the overloaded product: `C(i, j)` is nonzero when
/// vertex `i` is adjacent to both endpoints of edge column `j`. Work is
/// partitioned by edge column; consecutive columns sharing their first
/// endpoint share one marked pivot row.
pub fn count_incidence(
    graph: &CsrGraph,
    incidence: &IncidenceMatrix,
) -> Result<TriangleCount, CountError> {
    incidence.check_matches(graph)?;
    let n = graph.n_vertices();
    let nnz: u64 = incidence
        .edge_endpoints()
        .par_chunk_by(|a, b| a.0 == b.0)
        .map_init(
            || RowMarker::new(n),
            |marker, columns| {
                let pivot = graph.neighbors(columns[0].0 as usize);
                marker.mark(pivot);
                let sum = columns
                    .iter()
                    .map(|&(_, y)| intersect_with_pivot(pivot, marker, graph.neighbors(y as usize)))
                    .sum::<u64>();
                marker.unmark(pivot);
                sum
            },
        )
        .sum();
    TriangleCount::from_aggregate(Algorithm::Incidence, nnz)
}

/// Direct test of every vertex triple against a dense adjacency bitmap.
/// Shares no code with the sparse kernels.
pub fn count_brute(graph: &CsrGraph, limit: usize) -> Result<TriangleCount, CountError> {
    let n = graph.n_vertices();
    if n > limit {
        return Err(CountError::OracleLimit {
            n_vertices: n,
            limit,
        });
    }
    let words = n.div_ceil(64);
    let mut bits = vec![0u64; n * words];
    for (u, v) in graph.adjacency().entries() {
        let (u, v) = (u as usize, v as usize);
        bits[u * words + v / 64] |= 1 << (v % 64);
    }
    let adjacent = |a: usize, b: usize| bits[a * words + b / 64] >> (b % 64) & 1 == 1;
    let mut triangles = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if !adjacent(i, j) {
                continue;
            }
            for k in j + 1..n {
                if adjacent(i, k) && adjacent(j, k) {
                    triangles += 1;
                }
            }
        }
    }
    TriangleCount::from_aggregate(Algorithm::Brute, triangles)
}
