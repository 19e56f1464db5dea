//! Immutable simple graphs with sorted adjacency lists, edge-list ingestion
//! and degeneracy orderings.

use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use rustc_hash::FxHashMap;

use crate::error::Error;

/// Vertex handle. Graphs are normalized to ids `0..n-1` at construction.
pub type Vertex = u32;

/// An immutable simple undirected graph in CSR form.
///
/// Neighbor lists are sorted ascending and symmetric: `u ∈ N(v)` iff
/// `v ∈ N(u)`. No self-loops, no parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<Vertex>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Self-loops and
    /// duplicate (or reversed-duplicate) edges are dropped.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
        assert!(n <= u32::MAX as usize, "vertex ids are 32-bit");
        let mut pairs: Vec<(Vertex, Vertex)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            assert!(
                (u as usize) < n && (v as usize) < n,
                "edge endpoint out of range"
            );
            if u == v {
                continue;
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            pairs.push((a, b));
        }
        pairs.sort_unstable();
        pairs.dedup();

        let m = pairs.len();
        let mut deg = vec![0usize; n];
        for &(u, v) in &pairs {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for d in &deg {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0; 2 * m];
        for &(u, v) in &pairs {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph {
            offsets,
            neighbors,
            m,
        }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    /// Neighbors of `v`, sorted ascending.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n()).map(|v| v as Vertex)
    }

    /// All edges as `(u, v)` with `u < v`, lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    /// Path on `n` vertices: 0-1-...-(n-1).
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n as Vertex).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n as Vertex).map(|v| (v - 1, v)).collect();
        edges.push((n as Vertex - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// Star with center 0 and `k` leaves.
    pub fn star(k: usize) -> Graph {
        let edges: Vec<_> = (1..=k as Vertex).map(|v| (0, v)).collect();
        Graph::from_edges(k + 1, &edges)
    }

    /// The Petersen graph (3-regular, 10 vertices).
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
            edges.push((i, 5 + i)); // spokes
        }
        Graph::from_edges(10, &edges)
    }
}

/// A graph together with the original vertex labels from its input file.
/// `labels[v]` is the token that was normalized to id `v`.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl LoadedGraph {
    /// Writes the graph back out as an edge list using the original labels,
    /// one edge per line. Reloading the output reproduces the same graph.
    pub fn write_edge_list<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        for (u, v) in self.graph.edges() {
            writeln!(
                out,
                "{} {}",
                self.labels[u as usize], self.labels[v as usize]
            )?;
        }
        Ok(())
    }
}

/// Parses a whitespace-separated edge list. Lines starting with `#` or `%`
/// are comments. Labels are remapped to dense ids by first appearance;
/// self-loops are dropped and duplicate edges merged. Gzip input is detected
/// by its magic bytes.
pub fn load_edge_list<R: Read>(input: R) -> Result<LoadedGraph, Error> {
    let mut reader = BufReader::new(input);
    let head = reader.fill_buf()?;
    if head.len() >= 2 && head[0] == 0x1f && head[1] == 0x8b {
        parse_edge_list(BufReader::new(MultiGzDecoder::new(reader)))
    } else {
        parse_edge_list(reader)
    }
}

/// Loads an edge list from a file path.
pub fn load_edge_list_path<P: AsRef<Path>>(path: P) -> Result<LoadedGraph, Error> {
    let file = std::fs::File::open(path)?;
    load_edge_list(file)
}

fn parse_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph, Error> {
    let mut ids: FxHashMap<String, Vertex> = FxHashMap::default();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut saw_data = false;

    let intern = |tok: &str, ids: &mut FxHashMap<String, Vertex>, labels: &mut Vec<String>| {
        if let Some(&id) = ids.get(tok) {
            id
        } else {
            let id = labels.len() as Vertex;
            ids.insert(tok.to_string(), id);
            labels.push(tok.to_string());
            id
        }
    };

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    reason: format!("expected two tokens, got {trimmed:?}"),
                });
            }
        };
        saw_data = true;
        let u = intern(a, &mut ids, &mut labels);
        let v = intern(b, &mut ids, &mut labels);
        edges.push((u, v));
    }

    if !saw_data {
        return Err(Error::EmptyInput);
    }
    let graph = Graph::from_edges(labels.len(), &edges);
    Ok(LoadedGraph { graph, labels })
}

/// Computes the degeneracy and a degeneracy ordering by repeated minimum
/// degree removal with bucket queues, in O(n + m) time.
///
/// In the returned ordering every vertex has at most `d` neighbors that
/// appear earlier.
pub fn degeneracy(g: &Graph) -> (usize, Vec<Vertex>) {
    let n = g.n();
    if n == 0 {
        return (0, Vec::new());
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v as Vertex)).collect();
    let max_deg = deg.iter().copied().max().unwrap();

    // Bucket layout: vertices grouped by current degree, with back-pointers
    // so a vertex can be relocated when a neighbor is removed.
    let mut bucket_start = vec![0usize; max_deg + 2];
    for &d in &deg {
        bucket_start[d + 1] += 1;
    }
    for i in 1..bucket_start.len() {
        bucket_start[i] += bucket_start[i - 1];
    }
    let mut order: Vec<Vertex> = vec![0; n];
    let mut pos = vec![0usize; n];
    let mut cursor = bucket_start.clone();
    let mut by_deg: Vec<Vertex> = vec![0; n];
    for v in 0..n {
        let d = deg[v];
        by_deg[cursor[d]] = v as Vertex;
        pos[v] = cursor[d];
        cursor[d] += 1;
    }

    let mut removed = vec![false; n];
    let mut degeneracy = 0usize;
    for i in 0..n {
        // by_deg[i..] stays grouped by current degree, so the vertex at
        // position i has minimum degree among the remaining ones.
        let v = by_deg[i];
        debug_assert!(!removed[v as usize]);
        degeneracy = degeneracy.max(deg[v as usize]);
        removed[v as usize] = true;
        order[n - 1 - i] = v;

        for &u in g.neighbors(v) {
            let u = u as usize;
            if removed[u] {
                continue;
            }
            // Move u one bucket down: swap it to the front of its bucket,
            // then shift the bucket boundary.
            let du = deg[u];
            let front = bucket_start[du].max(i + 1);
            let at_front = by_deg[front];
            by_deg.swap(pos[u], front);
            pos[at_front as usize] = pos[u];
            pos[u] = front;
            bucket_start[du] = front + 1;
            deg[u] = du - 1;
        }
    }
    (degeneracy, order)
}
