//! Sorted neighbor-list intersection.
//!
//! When the longer list is a pivot row held in a [`RowMarker`], the shorter
//! list is probed against the bitmap, `O(min)`. Two unmarked lists are
//! merged linearly while their lengths are within [`SKEW_RATIO`] of each
//! other, and past that the short one gallops through the long one.

use crate::graph::VertexId;

/// Length ratio above which a merge gives way to galloping search.
pub const SKEW_RATIO: usize = 4;

/// `|a ∩ b|` for strictly increasing slices.
#[inline]
pub fn intersect_count(a: &[VertexId], b: &[VertexId]) -> u64 {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return 0;
    }
    if long.len() > SKEW_RATIO * short.len() {
        probe_count(short, long)
    } else {
        merge_count(short, long)
    }
}

/// Two-pointer merge, `O(|a| + |b|)`.
pub fn merge_count(a: &[VertexId], b: &[VertexId]) -> u64 {
    let (mut i, mut j, mut n) = (0, 0, 0u64);
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        n += u64::from(x == y);
        i += usize::from(x <= y);
        j += usize::from(y <= x);
    }
    n
}

/// Galloping search of each element of `short` in `long`,
/// `O(|short| · log |long|)`.
pub fn probe_count(short: &[VertexId], long: &[VertexId]) -> u64 {
    let mut rest = long;
    let mut n = 0u64;
    for &x in short {
        // Exponential search for the first element >= x.
        let mut hi = 1;
        while hi < rest.len() && rest[hi - 1] < x {
            hi *= 2;
        }
        let hi = hi.min(rest.len());
        let pos = rest[..hi].partition_point(|&y| y < x);
        rest = &rest[pos..];
        match rest.first() {
            None => break,
            Some(&y) if y == x => {
                n += 1;
                rest = &rest[1..];
            }
            Some(_) => {}
        }
    }
    n
}

/// Dense membership bitmap over vertex ids for one pivot row at a time.
#[derive(Debug, Clone)]
pub struct RowMarker {
    words: Vec<u64>,
}

impl RowMarker {
    pub fn new(n_vertices: usize) -> Self {
        Self {
            words: vec![0; n_vertices.div_ceil(64)],
        }
    }

    pub fn mark(&mut self, row: &[VertexId]) {
        for &v in row {
            self.words[v as usize / 64] |= 1 << (v % 64);
        }
    }

    /// Clears exactly the bits set by `mark(row)`.
    pub fn unmark(&mut self, row: &[VertexId]) {
        for &v in row {
            self.words[v as usize / 64] = 0;
        }
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.words[v as usize / 64] >> (v % 64) & 1 == 1
    }

    /// Number of entries of `list` that are marked.
    #[inline]
    pub fn count_marked(&self, list: &[VertexId]) -> u64 {
        list.iter().map(|&v| u64::from(self.contains(v))).sum()
    }
}

/// `|pivot ∩ other|` where `marker` currently holds exactly `pivot`.
#[inline]
pub fn intersect_with_pivot(pivot: &[VertexId], marker: &RowMarker, other: &[VertexId]) -> u64 {
    if other.len() <= pivot.len() {
        marker.count_marked(other)
    } else {
        intersect_count(pivot, other)
    }
}
