//! Per-vertex store of connecting vertices: for `x` in R and a target `y`,
//! up to `2p+1` common neighbors of `x` and `y` that lie in R.
//!
//! Entries are appended when a vertex moves to R and never removed. A key
//! `y` can itself move to R later; such stale keys are tolerated because all
//! consumers re-validate candidates against the current partition and
//! packings.

use rustc_hash::FxHashMap;

use crate::graph::Vertex;
use crate::partition::Partition;

#[derive(Clone, Debug)]
pub struct ViasStore {
    tables: Vec<FxHashMap<Vertex, Vec<Vertex>>>,
    cap: usize,
}

impl ViasStore {
    /// Empty store for `n` vertices with per-list capacity `2p+1`.
    pub fn new(n: usize, p: usize) -> ViasStore {
        ViasStore {
            tables: vec![FxHashMap::default(); n],
            cap: 2 * p + 1,
        }
    }

    pub fn capacity(&self) -> usize {
        self.cap
    }

    /// The stored vias connecting `x` and `y`, in insertion order. Raw list;
    /// callers re-check entries against current state.
    pub fn lookup(&self, x: Vertex, y: Vertex) -> &[Vertex] {
        self.tables[x as usize]
            .get(&y)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Keys stored for `x`, for inspection in checks.
    pub fn keys(&self, x: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.tables[x as usize].keys().copied()
    }

    fn push(&mut self, x: Vertex, y: Vertex, via: Vertex) {
        let list = self.tables[x as usize].entry(y).or_default();
        if list.len() < self.cap {
            list.push(via);
        }
    }

    /// Records the move of `v` from L to R. For every R-neighbor `x` of `v`,
    /// `v` becomes a via between `x` and each L-neighbor of `v`; and `x`
    /// becomes a via between `v` and each L-neighbor of `x`. Lists already
    /// holding `2p+1` entries are left untouched.
    ///
    /// Must be called after the partition marks `v` as R.
    pub fn on_move(&mut self, part: &Partition, v: Vertex) {
        debug_assert!(!part.in_l(v));
        self.tables[v as usize].clear();

        let n_r = part.r_neighbors_sorted(v);
        let n_l = part.l_neighbors_sorted(v);
        for &x in &n_r {
            for &y in &n_l {
                self.push(x, y, v);
            }
            for y in part.l_neighbors_sorted(x) {
                self.push(v, y, x);
            }
        }
    }
}
