//! Rooted packings of vertex-disjoint paths of length at most three, plus
//! the chordless / covering / maximality checkers used by the test suite and
//! instrumented runs.

use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::graph::{Graph, Vertex};
use crate::partition::Partition;

/// A path of one to three edges, stored inline. The first vertex is the
/// packing root, the last is the path's endpoint.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct PackPath {
    verts: [Vertex; 4],
    len: u8,
}

impl PackPath {
    pub fn new(verts: &[Vertex]) -> PackPath {
        assert!((2..=4).contains(&verts.len()), "paths have 1..=3 edges");
        let mut buf = [0; 4];
        buf[..verts.len()].copy_from_slice(verts);
        PackPath {
            verts: buf,
            len: verts.len() as u8,
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts[..self.len as usize]
    }

    pub fn root(&self) -> Vertex {
        self.verts[0]
    }

    pub fn endpoint(&self) -> Vertex {
        self.verts[self.len as usize - 1]
    }

    /// Number of edges.
    pub fn edge_len(&self) -> usize {
        self.len as usize - 1
    }

    /// Vertices strictly between root and endpoint.
    pub fn interior(&self) -> &[Vertex] {
        &self.verts[1..self.len as usize - 1]
    }

    /// The root's neighbor on this path.
    pub fn first_hop(&self) -> Vertex {
        self.verts[1]
    }
}

impl fmt::Debug for PackPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.vertices())
    }
}

/// A rooted packing: paths keyed by endpoint, pairwise vertex-disjoint
/// outside the shared root. Iteration follows ascending endpoint ids.
#[derive(Clone, Debug)]
pub struct Packing {
    root: Vertex,
    paths: BTreeMap<Vertex, PackPath>,
    /// Non-root vertex -> endpoint of the path containing it.
    members: FxHashMap<Vertex, Vertex>,
}

impl Packing {
    pub fn new(root: Vertex) -> Packing {
        Packing {
            root,
            paths: BTreeMap::new(),
            members: FxHashMap::default(),
        }
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// True iff `v` is the root or lies on some path.
    pub fn contains(&self, v: Vertex) -> bool {
        v == self.root || self.members.contains_key(&v)
    }

    pub fn paths(&self) -> impl Iterator<Item = &PackPath> {
        self.paths.values()
    }

    pub fn endpoints(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.paths.keys().copied()
    }

    /// The path whose endpoint is `v`, if any.
    pub fn path_at_endpoint(&self, v: Vertex) -> Option<&PackPath> {
        self.paths.get(&v)
    }

    /// The path containing `v` (as interior vertex or endpoint), if any.
    pub fn path_through(&self, v: Vertex) -> Option<&PackPath> {
        self.members.get(&v).and_then(|e| self.paths.get(e))
    }

    /// Adds `path` to the packing. The path must start at the root and be
    /// vertex-disjoint from all stored paths.
    pub fn add_path(&mut self, path: PackPath) {
        debug_assert_eq!(
            path.root(),
            self.root,
            "path must start at the packing root"
        );
        for &v in &path.vertices()[1..] {
            debug_assert!(
                !self.contains(v),
                "vertex {v} already used in packing at {}",
                self.root
            );
        }
        let endpoint = path.endpoint();
        for &v in &path.vertices()[1..] {
            self.members.insert(v, endpoint);
        }
        self.paths.insert(endpoint, path);
    }

    /// Removes and returns the path containing `v`.
    pub fn remove_path_through(&mut self, v: Vertex) -> PackPath {
        let endpoint = match self.members.get(&v) {
            Some(&e) => e,
            None => {
                debug_assert!(false, "vertex {v} not in packing at {}", self.root);
                panic!("vertex {v} not in packing at {}", self.root);
            }
        };
        let path = self
            .paths
            .remove(&endpoint)
            .expect("member index out of sync");
        for u in &path.vertices()[1..] {
            self.members.remove(u);
        }
        path
    }

    /// Line-based trace: root, then one path per line.
    pub fn trace(&self) -> String {
        use fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.root);
        for path in self.paths.values() {
            let words: Vec<String> = path.vertices().iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", words.join(" "));
        }
        out
    }
}

/// Enumerates every admissible path from `root`: a simple path of at most
/// `r` edges whose interior vertices are in R and whose endpoint is in L.
/// Exhaustive; intended for small graphs and checkers only.
pub fn admissible_paths(g: &Graph, part: &Partition, root: Vertex, r: u32) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut stack = vec![root];
    descend(g, part, r, &mut stack, &mut out);
    out
}

fn descend(
    g: &Graph,
    part: &Partition,
    r: u32,
    stack: &mut Vec<Vertex>,
    out: &mut Vec<Vec<Vertex>>,
) {
    let last = *stack.last().unwrap();
    for &next in g.neighbors(last) {
        if stack.contains(&next) {
            continue;
        }
        if part.in_l(next) {
            let mut path = stack.clone();
            path.push(next);
            out.push(path);
        } else if (stack.len() as u32) < r {
            stack.push(next);
            descend(g, part, r, stack, out);
            stack.pop();
        }
    }
}

/// Target set of `root`: L-vertices reachable by an admissible path of at
/// most `r` edges. Exhaustive.
pub fn exhaustive_targets(g: &Graph, part: &Partition, root: Vertex, r: u32) -> Vec<Vertex> {
    let mut t: Vec<Vertex> = admissible_paths(g, part, root, r)
        .iter()
        .map(|p| *p.last().unwrap())
        .collect();
    t.sort_unstable();
    t.dedup();
    t
}

/// Chordless check: no path may have an edge from the root to any vertex
/// beyond its first hop.
pub fn check_chordless(pk: &Packing, g: &Graph) -> bool {
    pk.paths().all(|path| {
        path.vertices()[2..]
            .iter()
            .all(|&x| !g.has_edge(pk.root(), x))
    })
}

/// Covering check for a (3,L)-packing: every target of the root is either
/// packed directly or some admissible path to it meets the packing away from
/// the root. Runs exhaustive path enumeration; test/instrumented use only.
pub fn check_covering(pk: &Packing, g: &Graph, part: &Partition) -> bool {
    let root = pk.root();
    let paths = admissible_paths(g, part, root, 3);
    let mut reachable: FxHashMap<Vertex, bool> = FxHashMap::default();
    for path in &paths {
        let target = *path.last().unwrap();
        let meets = path[1..].iter().any(|&x| pk.contains(x));
        *reachable.entry(target).or_insert(false) |= meets;
    }
    reachable.into_iter().all(|(target, meets)| {
        let direct = g.has_edge(root, target)
            && pk
                .path_at_endpoint(target)
                .map(|p| p.edge_len() == 1)
                .unwrap_or(false);
        direct || meets
    })
}

/// Maximality check for a (2,L)-packing: no admissible path of length one or
/// two to an unused L-target can be added.
pub fn check_maximal_two(pk: &Packing, g: &Graph, part: &Partition) -> bool {
    let root = pk.root();
    for y in g.vertices() {
        if y == root || !part.in_l(y) || pk.contains(y) {
            continue;
        }
        if g.has_edge(root, y) {
            return false;
        }
        let has_free_via = g
            .neighbors(y)
            .iter()
            .any(|&x| !part.in_l(x) && x != root && !pk.contains(x) && g.has_edge(root, x));
        if has_free_via {
            return false;
        }
    }
    true
}
