use super::{GraphError, VertexId};

/// Row-compressed sparsity pattern with sorted column indices.
///
/// This is the storage shared by the symmetric adjacency matrix and the
/// strictly lower/upper triangular halves produced by
/// [`split_lower_upper`](super::split_lower_upper). Values are implicit 1s.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePattern {
    row_offsets: Vec<usize>,
    column_indices: Vec<VertexId>,
}

impl SparsePattern {
    /// An `n_rows` pattern with no entries.
    pub fn empty(n_rows: usize) -> Self {
        Self {
            row_offsets: vec![0; n_rows + 1],
            column_indices: Vec::new(),
        }
    }

    /// Wraps raw CSR arrays after checking offsets and per-row ordering.
    pub fn from_parts(
        row_offsets: Vec<usize>,
        column_indices: Vec<VertexId>,
        n_cols: usize,
    ) -> Result<Self, GraphError> {
        if row_offsets.first() != Some(&0) {
            return Err(GraphError::Malformed("row_offsets must start at 0".into()));
        }
        if row_offsets.last() != Some(&column_indices.len()) {
            return Err(GraphError::Malformed(format!(
                "final row offset {} does not match {} stored entries",
                row_offsets.last().copied().unwrap_or_default(),
                column_indices.len()
            )));
        }
        for (row, w) in row_offsets.windows(2).enumerate() {
            if w[0] > w[1] {
                return Err(GraphError::Malformed(format!(
                    "row_offsets decrease at row {row}"
                )));
            }
            let cols = &column_indices[w[0]..w[1]];
            if let Some(&last) = cols.last() {
                if last as usize >= n_cols {
                    return Err(GraphError::Malformed(format!(
                        "row {row} references column {last} outside 0..{n_cols}"
                    )));
                }
            }
            if cols.windows(2).any(|p| p[0] >= p[1]) {
                return Err(GraphError::Malformed(format!(
                    "row {row} columns are not strictly increasing"
                )));
            }
        }
        Ok(Self {
            row_offsets,
            column_indices,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.row_offsets.len() - 1
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.column_indices.len()
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[VertexId] {
        &self.column_indices[self.row_offsets[i]..self.row_offsets[i + 1]]
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn column_indices(&self) -> &[VertexId] {
        &self.column_indices
    }

    /// Iterates `(row, column)` pairs in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n_rows()).flat_map(move |i| self.row(i).iter().map(move |&j| (i as VertexId, j)))
    }

    /// Transposed pattern; rows of the result come out sorted.
    pub fn transpose(&self, n_cols: usize) -> Self {
        let mut counts = vec![0usize; n_cols + 1];
        for &j in &self.column_indices {
            counts[j as usize + 1] += 1;
        }
        for k in 0..n_cols {
            counts[k + 1] += counts[k];
        }
        let row_offsets = counts.clone();
        let mut cursor = counts;
        let mut column_indices = vec![0 as VertexId; self.nnz()];
        // Scanning source rows in ascending order keeps target rows sorted.
        for (i, j) in self.entries() {
            let slot = &mut cursor[j as usize];
            column_indices[*slot] = i;
            *slot += 1;
        }
        Self {
            row_offsets,
            column_indices,
        }
    }
}

/// Canonical undirected simple graph stored as a symmetric CSR adjacency
/// matrix with a zero diagonal. Every undirected edge is stored twice.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CsrGraph {
    adjacency: SparsePattern,
}

impl CsrGraph {
    /// Graph with `n_vertices` isolated vertices.
    pub fn empty(n_vertices: usize) -> Self {
        Self {
            adjacency: SparsePattern::empty(n_vertices),
        }
    }

    /// Builds the canonical graph over `n_vertices` from arbitrary index
    /// pairs. Self-loops are dropped and duplicates in either orientation
    /// merge into one undirected edge.
    pub fn from_index_pairs<I>(n_vertices: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let pairs = pairs.into_iter();
        let mut keys: Vec<u64> = Vec::with_capacity(pairs.size_hint().0);
        for (a, b) in pairs {
            let hi = a.max(b);
            if hi as usize >= n_vertices {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u64::from(hi),
                    n_vertices,
                });
            }
            if a != b {
                keys.push(pack(a.min(b), hi));
            }
        }
        keys.sort_unstable();
        keys.dedup();
        Ok(Self::from_sorted_upper_keys(n_vertices, &keys))
    }

    /// `keys` must be sorted, deduplicated packed `(u, v)` with `u < v`.
    fn from_sorted_upper_keys(n_vertices: usize, keys: &[u64]) -> Self {
        let mut degree = vec![0usize; n_vertices + 1];
        for &key in keys {
            let (u, v) = unpack(key);
            degree[u as usize + 1] += 1;
            degree[v as usize + 1] += 1;
        }
        for k in 0..n_vertices {
            degree[k + 1] += degree[k];
        }
        let row_offsets = degree.clone();
        let mut cursor = degree;
        let mut column_indices = vec![0 as VertexId; 2 * keys.len()];
        // For row i, every (j, i) with j < i precedes every (i, k) in key
        // order, and each group arrives ascending, so rows fill sorted.
        for &key in keys {
            let (u, v) = unpack(key);
            column_indices[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            column_indices[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        Self {
            adjacency: SparsePattern {
                row_offsets,
                column_indices,
            },
        }
    }

    /// Wraps raw CSR arrays, rejecting anything that is not a canonical
    /// symmetric zero-diagonal pattern.
    pub fn from_csr_parts(
        row_offsets: Vec<usize>,
        column_indices: Vec<VertexId>,
    ) -> Result<Self, GraphError> {
        if row_offsets.is_empty() {
            return Err(GraphError::Malformed(
                "row_offsets must be non-empty".into(),
            ));
        }
        let n = row_offsets.len() - 1;
        let graph = Self {
            adjacency: SparsePattern::from_parts(row_offsets, column_indices, n)?,
        };
        graph.check_invariants()?;
        Ok(graph)
    }

    pub(crate) fn from_pattern_unchecked(adjacency: SparsePattern) -> Self {
        debug_assert!(Self {
            adjacency: adjacency.clone()
        }
        .check_invariants()
        .is_ok());
        Self { adjacency }
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.n_rows()
    }

    /// Number of undirected edges (Nₑ).
    pub fn n_edges(&self) -> u64 {
        (self.adjacency.nnz() / 2) as u64
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[VertexId] {
        self.adjacency.row(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n_vertices() && self.neighbors(u).binary_search(&(v as VertexId)).is_ok()
    }

    pub fn adjacency(&self) -> &SparsePattern {
        &self.adjacency
    }

    pub fn row_offsets(&self) -> &[usize] {
        self.adjacency.row_offsets()
    }

    pub fn column_indices(&self) -> &[VertexId] {
        self.adjacency.column_indices()
    }

    /// Each undirected edge once as `(u, v)` with `u < v`, lexicographic.
    pub fn upper_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.entries().filter(|&(u, v)| u < v)
    }

    /// Full scan of the canonical-form invariants: monotone offsets,
    /// strictly increasing rows, zero diagonal, symmetry.
    pub fn check_invariants(&self) -> Result<(), GraphError> {
        let n = self.n_vertices();
        let offsets = self.row_offsets();
        if offsets[0] != 0 || offsets[n] != self.adjacency.nnz() {
            return Err(GraphError::Malformed(
                "row offsets do not span storage".into(),
            ));
        }
        if !self.adjacency.nnz().is_multiple_of(2) {
            return Err(GraphError::Malformed(
                "odd number of stored entries in a symmetric pattern".into(),
            ));
        }
        for i in 0..n {
            if offsets[i] > offsets[i + 1] {
                return Err(GraphError::Malformed(format!(
                    "row_offsets decrease at row {i}"
                )));
            }
            let row = self.neighbors(i);
            if row.windows(2).any(|p| p[0] >= p[1]) {
                return Err(GraphError::Malformed(format!(
                    "row {i} columns are not strictly increasing"
                )));
            }
            for &j in row {
                let j = j as usize;
                if j >= n {
                    return Err(GraphError::Malformed(format!(
                        "row {i} references vertex {j} outside 0..{n}"
                    )));
                }
                if j == i {
                    return Err(GraphError::Malformed(format!("self-loop at vertex {i}")));
                }
                if self.neighbors(j).binary_search(&(i as VertexId)).is_err() {
                    return Err(GraphError::Malformed(format!(
                        "entry ({i}, {j}) has no mirror ({j}, {i})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Copy of the graph with edge `{u, v}` removed, if present.
    pub fn without_edge(&self, u: VertexId, v: VertexId) -> Self {
        let key = pack(u.min(v), u.max(v));
        let keys: Vec<u64> = self
            .upper_edges()
            .map(|(a, b)| pack(a, b))
            .filter(|&k| k != key)
            .collect();
        Self::from_sorted_upper_keys(self.n_vertices(), &keys)
    }
}

#[inline]
fn pack(u: VertexId, v: VertexId) -> u64 {
    (u64::from(u) << 32) | u64::from(v)
}

#[inline]
fn unpack(key: u64) -> (VertexId, VertexId) {
    ((key >> 32) as VertexId, key as VertexId)
}
