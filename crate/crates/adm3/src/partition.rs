//! Mutable L/R partition of the vertex set with O(1) side queries and
//! per-side neighbor access.
//!
//! Every vertex starts in L and can only move L→R. Each adjacency row keeps
//! its L-neighbors in a prefix and its R-neighbors in the suffix; moving a
//! vertex swaps it across the boundary in each neighbor's row, which costs
//! O(deg) overall per move.

use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    L,
    R,
}

#[derive(Clone, Debug)]
pub struct Partition {
    side: Vec<Side>,
    offsets: Vec<usize>,
    adj: Vec<Vertex>,
    /// Absolute index of the first R-neighbor in each row.
    split: Vec<usize>,
    /// mirror[k] is the slot of the reverse edge: if adj[k] = v sits in u's
    /// row, then adj[mirror[k]] = u sits in v's row.
    mirror: Vec<usize>,
    l_count: usize,
}

impl Partition {
    /// Creates the all-L partition of `g`.
    pub fn new(g: &Graph) -> Partition {
        let n = g.n();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        for v in 0..n {
            offsets.push(offsets[v] + g.degree(v as Vertex));
        }
        let mut adj = Vec::with_capacity(offsets[n]);
        for v in g.vertices() {
            adj.extend_from_slice(g.neighbors(v));
        }
        // Mirror slots: for edge copies (u,v) and (v,u), point at each other.
        // Rows are sorted, so the reverse slot is found by binary search.
        let mut mirror = vec![0usize; adj.len()];
        for u in 0..n {
            for k in offsets[u]..offsets[u + 1] {
                let v = adj[k] as usize;
                let back = offsets[v]
                    + adj[offsets[v]..offsets[v + 1]]
                        .binary_search(&(u as Vertex))
                        .unwrap();
                mirror[k] = back;
            }
        }
        let split = offsets[1..].to_vec();
        Partition {
            side: vec![Side::L; n],
            offsets,
            adj,
            split,
            mirror,
            l_count: n,
        }
    }

    pub fn n(&self) -> usize {
        self.side.len()
    }

    pub fn side(&self, v: Vertex) -> Side {
        self.side[v as usize]
    }

    pub fn in_l(&self, v: Vertex) -> bool {
        self.side[v as usize] == Side::L
    }

    pub fn l_size(&self) -> usize {
        self.l_count
    }

    /// Neighbors of `v` currently in L. Unordered.
    pub fn l_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[self.offsets[v as usize]..self.split[v as usize]]
    }

    /// Neighbors of `v` currently in R. Unordered.
    pub fn r_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[self.split[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn l_degree(&self, v: Vertex) -> usize {
        self.split[v as usize] - self.offsets[v as usize]
    }

    pub fn r_degree(&self, v: Vertex) -> usize {
        self.offsets[v as usize + 1] - self.split[v as usize]
    }

    /// L-neighbors of `v`, sorted ascending. Allocates; use where scan order
    /// is contractually first-by-id.
    pub fn l_neighbors_sorted(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = self.l_neighbors(v).to_vec();
        out.sort_unstable();
        out
    }

    /// R-neighbors of `v`, sorted ascending.
    pub fn r_neighbors_sorted(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = self.r_neighbors(v).to_vec();
        out.sort_unstable();
        out
    }

    /// Moves `v` from L to R, updating the neighbor views of all adjacent
    /// vertices. Cost O(deg(v)).
    pub fn move_to_r(&mut self, v: Vertex) {
        assert_eq!(self.side[v as usize], Side::L, "vertex {v} is already in R");
        self.side[v as usize] = Side::R;
        self.l_count -= 1;

        let row = self.offsets[v as usize]..self.offsets[v as usize + 1];
        for k in row {
            let u = self.adj[k] as usize;
            // Position of v inside u's row is the mirror of slot k; swap it
            // to the last L slot and shrink u's L prefix.
            let pos_v = self.mirror[k];
            let last_l = self.split[u] - 1;
            debug_assert!(pos_v < self.split[u], "v should be in u's L prefix");
            self.swap_slots(pos_v, last_l);
            self.split[u] = last_l;
        }
    }

    /// Swaps two slots within one row, fixing up mirror pointers.
    fn swap_slots(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.adj.swap(a, b);
        self.mirror.swap(a, b);
        let ma = self.mirror[a];
        let mb = self.mirror[b];
        self.mirror[ma] = a;
        self.mirror[mb] = b;
    }
}
