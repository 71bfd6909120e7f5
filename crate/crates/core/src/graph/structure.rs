use super::{CsrGraph, GraphError, SparsePattern, VertexId};

/// Strictly lower (`L`, column < row) and strictly upper (`U`, column > row)
/// halves of a symmetric adjacency matrix. Each stores every edge once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularSplit {
    lower: SparsePattern,
    upper: SparsePattern,
}

impl TriangularSplit {
    pub fn lower(&self) -> &SparsePattern {
        &self.lower
    }

    pub fn upper(&self) -> &SparsePattern {
        &self.upper
    }

    /// Recombines `L + U` into the adjacency graph.
    pub fn merge(&self) -> CsrGraph {
        let n = self.lower.n_rows();
        let mut row_offsets = Vec::with_capacity(n + 1);
        let mut column_indices = Vec::with_capacity(self.lower.nnz() + self.upper.nnz());
        row_offsets.push(0);
        for i in 0..n {
            column_indices.extend_from_slice(self.lower.row(i));
            column_indices.extend_from_slice(self.upper.row(i));
            row_offsets.push(column_indices.len());
        }
        CsrGraph::from_pattern_unchecked(
            SparsePattern::from_parts(row_offsets, column_indices, n)
                .expect("lower then upper keeps rows sorted"),
        )
    }

    /// Verifies that this split was derived from `graph`.
    pub fn check_matches(&self, graph: &CsrGraph) -> Result<(), GraphError> {
        let n = graph.n_vertices();
        if self.lower.n_rows() != n || self.upper.n_rows() != n {
            return Err(GraphError::Inconsistent(format!(
                "split has {}/{} rows, graph has {n} vertices",
                self.lower.n_rows(),
                self.upper.n_rows()
            )));
        }
        let m = graph.n_edges() as usize;
        if self.lower.nnz() != m || self.upper.nnz() != m {
            return Err(GraphError::Inconsistent(format!(
                "split stores {}/{} entries, graph has {m} edges",
                self.lower.nnz(),
                self.upper.nnz()
            )));
        }
        for i in 0..n {
            let row = graph.neighbors(i);
            let (lo, hi) = row.split_at(self.lower.row(i).len());
            if lo != self.lower.row(i) || hi != self.upper.row(i) {
                return Err(GraphError::Inconsistent(format!(
                    "row {i} of the split differs from the graph"
                )));
            }
        }
        Ok(())
    }
}

/// Splits the adjacency matrix into `(L, U)`.
pub fn split_lower_upper(graph: &CsrGraph) -> TriangularSplit {
    let n = graph.n_vertices();
    let m = graph.n_edges() as usize;
    let mut lower_offsets = Vec::with_capacity(n + 1);
    let mut upper_offsets = Vec::with_capacity(n + 1);
    let mut lower_cols = Vec::with_capacity(m);
    let mut upper_cols = Vec::with_capacity(m);
    lower_offsets.push(0);
    upper_offsets.push(0);
    for i in 0..n {
        let row = graph.neighbors(i);
        let cut = row.partition_point(|&j| (j as usize) < i);
        lower_cols.extend_from_slice(&row[..cut]);
        upper_cols.extend_from_slice(&row[cut..]);
        lower_offsets.push(lower_cols.len());
        upper_offsets.push(upper_cols.len());
    }
    TriangularSplit {
        lower: SparsePattern::from_parts(lower_offsets, lower_cols, n).expect("sorted sub-rows"),
        upper: SparsePattern::from_parts(upper_offsets, upper_cols, n).expect("sorted sub-rows"),
    }
}

/// Vertex-by-edge incidence structure: one column per undirected edge,
/// stored as its two endpoints `(u, v)`, `u < v`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    n_vertices: usize,
    edge_endpoints: Vec<(VertexId, VertexId)>,
}

impl IncidenceMatrix {
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> u64 {
        self.edge_endpoints.len() as u64
    }

    pub fn edge_endpoints(&self) -> &[(VertexId, VertexId)] {
        &self.edge_endpoints
    }

    /// Verifies that the columns are exactly the edges of `graph`.
    pub fn check_matches(&self, graph: &CsrGraph) -> Result<(), GraphError> {
        if self.n_vertices != graph.n_vertices() || self.n_edges() != graph.n_edges() {
            return Err(GraphError::Inconsistent(format!(
                "incidence is {}x{}, graph has {} vertices and {} edges",
                self.n_vertices,
                self.n_edges(),
                graph.n_vertices(),
                graph.n_edges()
            )));
        }
        let mut columns = self.edge_endpoints.iter();
        for edge in graph.upper_edges() {
            if columns.next() != Some(&edge) {
                return Err(GraphError::Inconsistent(format!(
                    "edge {edge:?} has no matching incidence column"
                )));
            }
        }
        Ok(())
    }
}

pub fn build_incidence(graph: &CsrGraph) -> IncidenceMatrix {
    IncidenceMatrix {
        n_vertices: graph.n_vertices(),
        edge_endpoints: graph.upper_edges().collect(),
    }
}

/// Relabels vertex `v` as `perm[v]`.
pub fn permute_vertices(graph: &CsrGraph, perm: &[VertexId]) -> Result<CsrGraph, GraphError> {
    let n = graph.n_vertices();
    if perm.len() != n {
        return Err(GraphError::NotAPermutation(format!(
            "length {} for {n} vertices",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        match seen.get_mut(p as usize) {
            Some(slot) if !*slot => *slot = true,
            Some(_) => return Err(GraphError::NotAPermutation(format!("{p} appears twice"))),
            None => return Err(GraphError::NotAPermutation(format!("{p} is out of range"))),
        }
    }
    CsrGraph::from_index_pairs(
        n,
        graph
            .upper_edges()
            .map(|(u, v)| (perm[u as usize], perm[v as usize])),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    #[test]
    fn k3_split() {
        let s = split_lower_upper(&fixtures::complete(3));
        let lower: Vec<_> = s.lower().entries().collect();
        assert_eq!(lower, vec![(1, 0), (2, 0), (2, 1)]);
        assert_eq!(s.lower().transpose(3), *s.upper());
    }

    #[test]
    fn two_triangles_split_and_incidence_sizes() {
        let g = fixtures::two_triangles();
        let s = split_lower_upper(&g);
        assert_eq!(s.lower().nnz(), 5);
        assert_eq!(s.upper().nnz(), 5);
        assert_eq!(build_incidence(&g).n_edges(), 5);
    }

    #[test]
    fn empty_split() {
        let s = split_lower_upper(&CsrGraph::empty(0));
        assert_eq!(s.lower().nnz() + s.upper().nnz(), 0);
        assert_eq!(s.merge(), CsrGraph::empty(0));
    }

    #[test]
    fn split_mismatch_detected() {
        let s = split_lower_upper(&fixtures::complete(3));
        assert!(s.check_matches(&fixtures::complete(3)).is_ok());
        assert!(matches!(
            s.check_matches(&fixtures::path(3)),
            Err(GraphError::Inconsistent(_))
        ));
        assert!(s.check_matches(&fixtures::complete(4)).is_err());
        // Same size, different edges.
        let other = CsrGraph::from_index_pairs(3, [(0, 1), (1, 2), (0, 2)])
            .unwrap()
            .without_edge(0, 2);
        let bent = CsrGraph::from_index_pairs(3, [(0, 2), (1, 2)]).unwrap();
        assert!(split_lower_upper(&other).check_matches(&bent).is_err());
    }

    #[test]
    fn incidence_columns() {
        let cols = build_incidence(&fixtures::complete(3));
        assert_eq!(cols.edge_endpoints(), &[(0, 1), (0, 2), (1, 2)]);
        let path = build_incidence(&fixtures::path(3));
        assert_eq!(path.edge_endpoints(), &[(0, 1), (1, 2)]);
        assert!(path.check_matches(&fixtures::complete(3)).is_err());
        let bent = CsrGraph::from_index_pairs(3, [(0, 2), (1, 2)]).unwrap();
        assert!(path.check_matches(&bent).is_err());
    }

    #[test]
    fn permutation_validation() {
        let g = fixtures::complete(3);
        assert_eq!(permute_vertices(&g, &[0, 1, 2]).unwrap(), g);
        assert_eq!(permute_vertices(&g, &[2, 0, 1]).unwrap(), g);
        assert!(matches!(
            permute_vertices(&g, &[0, 0, 1]),
            Err(GraphError::NotAPermutation(_))
        ));
        assert!(permute_vertices(&g, &[0, 1, 3]).is_err());
        assert!(permute_vertices(&g, &[0, 1]).is_err());
    }

    #[test]
    fn reversal_relabels_rows() {
        let g = fixtures::path(3);
        let r = permute_vertices(&g, &[2, 1, 0]).unwrap();
        assert_eq!(r, g);
        let star = fixtures::star(4);
        let moved = permute_vertices(&star, &[3, 0, 1, 2]).unwrap();
        assert_eq!(moved.degree(3), 3);
        assert_eq!(moved.n_edges(), 3);
    }
}
