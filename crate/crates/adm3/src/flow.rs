//! Packing flow networks with unit vertex capacities.
//!
//! Two variants are built here: the full layered network rooted at a vertex
//! (used by the exact reference oracle) and the small stage-2 subnetwork
//! that preserves augmentability while holding O(p²) vertices. Integral
//! flows on either correspond one-to-one to chordless rooted path packings,
//! so a packing doubles as the flow itself: saturated arcs are exactly the
//! packing edges.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::graph::{Graph, Vertex};
use crate::packing::{PackPath, Packing};
use crate::partition::Partition;
use crate::vias::ViasStore;

/// Directed unit-capacity network over a subset of graph vertices. The
/// source keeps its original vertex id; all other vertices have capacity
/// one.
#[derive(Clone, Debug)]
pub struct FlowNet {
    ids: Vec<Vertex>,
    index: FxHashMap<Vertex, usize>,
    adj: Vec<Vec<usize>>,
    arcs: FxHashSet<(usize, usize)>,
    is_sink: Vec<bool>,
    source: usize,
}

impl FlowNet {
    fn new(source: Vertex) -> FlowNet {
        let mut net = FlowNet {
            ids: Vec::new(),
            index: FxHashMap::default(),
            adj: Vec::new(),
            arcs: FxHashSet::default(),
            is_sink: Vec::new(),
            source: 0,
        };
        net.source = net.ensure(source);
        net
    }

    fn ensure(&mut self, v: Vertex) -> usize {
        if let Some(&i) = self.index.get(&v) {
            return i;
        }
        let i = self.ids.len();
        self.ids.push(v);
        self.index.insert(v, i);
        self.adj.push(Vec::new());
        self.is_sink.push(false);
        i
    }

    fn add_arc(&mut self, from: Vertex, to: Vertex) {
        let a = self.ensure(from);
        let b = self.ensure(to);
        if self.arcs.insert((a, b)) {
            self.adj[a].push(b);
        }
    }

    fn mark_sink(&mut self, v: Vertex) {
        let i = self.ensure(v);
        self.is_sink[i] = true;
    }

    pub fn source(&self) -> Vertex {
        self.ids[self.source]
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index.contains_key(&v)
    }

    pub fn has_arc(&self, from: Vertex, to: Vertex) -> bool {
        match (self.index.get(&from), self.index.get(&to)) {
            (Some(&a), Some(&b)) => self.arcs.contains(&(a, b)),
            _ => false,
        }
    }

    pub fn sinks(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.ids
            .iter()
            .zip(&self.is_sink)
            .filter(|(_, &s)| s)
            .map(|(&v, _)| v)
    }

    /// Arc-list dump for debugging.
    pub fn dump(&self) -> String {
        use std::fmt::Write;
        let mut lines: Vec<String> = self
            .arcs
            .iter()
            .map(|&(a, b)| format!("{} {}", self.ids[a], self.ids[b]))
            .collect();
        lines.sort();
        let mut out = String::new();
        for l in lines {
            let _ = writeln!(out, "{l}");
        }
        out
    }

    /// Finds a shortest augmenting path for `flow` (given as its saturated
    /// source-rooted paths), honoring unit vertex capacities via the
    /// vertex-splitting reduction, or returns None when the flow is maximum.
    ///
    /// The returned path is a vertex sequence from the source to a sink;
    /// consecutive hops traverse either an unsaturated arc forward or a
    /// saturated arc backward.
    pub fn find_augmenting_path(&self, flow: &[Vec<Vertex>]) -> Option<Vec<Vertex>> {
        let n = self.ids.len();
        let mut sat_vertex = vec![false; n];
        let mut sat_arc: FxHashSet<(usize, usize)> = FxHashSet::default();
        let mut sat_in: Vec<Vec<usize>> = vec![Vec::new(); n];
        for path in flow {
            for win in path.windows(2) {
                let a = self.index[&win[0]];
                let b = self.index[&win[1]];
                debug_assert!(
                    self.arcs.contains(&(a, b)),
                    "flow uses arc missing from network"
                );
                sat_arc.insert((a, b));
                sat_in[b].push(a);
                sat_vertex[b] = true;
            }
        }

        // Split nodes: 2i = in-side, 2i+1 = out-side; `goal` is a super sink.
        let goal = 2 * n;
        let start = 2 * self.source + 1;
        let mut parent: Vec<i64> = vec![-1; 2 * n + 1];
        let mut queue = std::collections::VecDeque::new();
        parent[start] = start as i64;
        queue.push_back(start);

        'bfs: while let Some(node) = queue.pop_front() {
            let (i, out_side) = (node / 2, node % 2 == 1);
            let push = |to: usize,
                        parent: &mut Vec<i64>,
                        queue: &mut std::collections::VecDeque<usize>|
             -> bool {
                if parent[to] < 0 {
                    parent[to] = node as i64;
                    if to == goal {
                        return true;
                    }
                    queue.push_back(to);
                }
                false
            };
            if out_side {
                if self.is_sink[i] && push(goal, &mut parent, &mut queue) {
                    break 'bfs;
                }
                for &b in &self.adj[i] {
                    if !sat_arc.contains(&(i, b)) && push(2 * b, &mut parent, &mut queue) {
                        break 'bfs;
                    }
                }
                // Reversed internal arc of a saturated vertex.
                if sat_vertex[i] {
                    push(2 * i, &mut parent, &mut queue);
                }
            } else {
                if !sat_vertex[i] && push(2 * i + 1, &mut parent, &mut queue) {
                    break 'bfs;
                }
                for &a in &sat_in[i] {
                    push(2 * a + 1, &mut parent, &mut queue);
                }
            }
        }

        if parent[goal] < 0 {
            return None;
        }
        let mut nodes = Vec::new();
        let mut cur = parent[goal] as usize;
        loop {
            nodes.push(cur);
            if cur == start {
                break;
            }
            cur = parent[cur] as usize;
        }
        nodes.reverse();
        let mut path: Vec<Vertex> = Vec::with_capacity(nodes.len());
        for node in nodes {
            let v = self.ids[node / 2];
            if path.last() != Some(&v) {
                path.push(v);
            }
        }
        Some(path)
    }

    /// Applies an augmenting path: the new flow is the symmetric difference
    /// of the saturated arcs with the path's arcs, reassembled into
    /// source-rooted paths. The flow value grows by exactly one.
    pub fn augment(&self, flow: &[Vec<Vertex>], path: &[Vertex]) -> Vec<Vec<Vertex>> {
        let mut sat: FxHashSet<(Vertex, Vertex)> = FxHashSet::default();
        for p in flow {
            for win in p.windows(2) {
                sat.insert((win[0], win[1]));
            }
        }
        for win in path.windows(2) {
            let (a, b) = (win[0], win[1]);
            if self.has_arc(a, b) {
                let inserted = sat.insert((a, b));
                assert!(inserted, "augmenting path reuses a saturated arc {a}->{b}");
            } else {
                assert!(
                    self.has_arc(b, a),
                    "augmenting path hop {a}->{b} not in network"
                );
                let removed = sat.remove(&(b, a));
                assert!(
                    removed,
                    "augmenting path reverses an unsaturated arc {b}->{a}"
                );
            }
        }

        // Each vertex except the source carries at most one unit, so the
        // saturated arcs reassemble uniquely into source-rooted paths.
        let source = self.source();
        let mut succ: FxHashMap<Vertex, Vertex> = FxHashMap::default();
        let mut roots: Vec<Vertex> = Vec::new();
        for &(a, b) in &sat {
            if a == source {
                roots.push(b);
            } else {
                let prev = succ.insert(a, b);
                assert!(prev.is_none(), "vertex {a} has two outgoing flow arcs");
            }
        }
        roots.sort_unstable();
        let mut seen: FxHashSet<Vertex> = FxHashSet::default();
        let mut out = Vec::with_capacity(roots.len());
        for w in roots {
            let mut p = vec![source, w];
            assert!(seen.insert(w), "vertex {w} appears on two flow paths");
            let mut cur = w;
            while let Some(&next) = succ.get(&cur) {
                assert!(seen.insert(next), "vertex {next} appears on two flow paths");
                p.push(next);
                cur = next;
            }
            assert!(p.len() <= 4, "flow path exceeds three edges: {p:?}");
            let last = self.index[p.last().unwrap()];
            assert!(self.is_sink[last], "flow path ends at a non-sink");
            out.push(p);
        }
        assert_eq!(
            out.len(),
            flow.len() + 1,
            "augmentation must add exactly one path"
        );
        out
    }

    /// Maximum flow value from a zero flow by repeated augmentation.
    pub fn max_flow_value(&self) -> usize {
        self.max_flow_paths().len()
    }

    /// Maximum integral flow as source-rooted vertex-disjoint paths.
    pub fn max_flow_paths(&self) -> Vec<Vec<Vertex>> {
        let mut flow: Vec<Vec<Vertex>> = Vec::new();
        while let Some(path) = self.find_augmenting_path(&flow) {
            flow = self.augment(&flow, &path);
        }
        flow
    }
}

/// BFS layer of a vertex in the full packing network.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Layer {
    S1,
    S2,
    T1,
    T2,
    T3,
}

/// Builds the full packing flow network rooted at `u ∈ L` for the current
/// partition: a BFS from `u` that stops at L-vertices and after `depth`
/// steps, with R-vertices found in the last step discarded. Arcs run from
/// the root to its neighbors, from S1 to S2 ∪ T2 and from S2 to T2 ∪ T3;
/// sinks are all reached L-vertices.
pub fn build_full_network(g: &Graph, part: &Partition, u: Vertex) -> FlowNet {
    build_network_depth(g, part, u, 3)
}

pub(crate) fn build_network_depth(g: &Graph, part: &Partition, u: Vertex, depth: u32) -> FlowNet {
    debug_assert!(part.in_l(u));
    debug_assert!((2..=3).contains(&depth));
    let mut layer: FxHashMap<Vertex, Layer> = FxHashMap::default();
    let mut s1: Vec<Vertex> = Vec::new();
    let mut s2: Vec<Vertex> = Vec::new();

    for &x in g.neighbors(u) {
        if part.in_l(x) {
            layer.insert(x, Layer::T1);
        } else {
            layer.insert(x, Layer::S1);
            s1.push(x);
        }
    }
    for &x in &s1 {
        for &y in g.neighbors(x) {
            if y == u || layer.contains_key(&y) {
                continue;
            }
            if part.in_l(y) {
                layer.insert(y, Layer::T2);
            } else if depth >= 3 {
                layer.insert(y, Layer::S2);
                s2.push(y);
            }
        }
    }
    for &x in &s2 {
        for &y in g.neighbors(x) {
            if y == u || layer.contains_key(&y) {
                continue;
            }
            if part.in_l(y) {
                // R-vertices at depth three are dropped entirely.
                layer.insert(y, Layer::T3);
            }
        }
    }

    let mut net = FlowNet::new(u);
    for &x in g.neighbors(u) {
        net.add_arc(u, x);
    }
    for &x in &s1 {
        for &y in g.neighbors(x) {
            if matches!(layer.get(&y), Some(Layer::S2) | Some(Layer::T2)) {
                net.add_arc(x, y);
            }
        }
    }
    for &x in &s2 {
        for &y in g.neighbors(x) {
            if matches!(layer.get(&y), Some(Layer::T2) | Some(Layer::T3)) {
                net.add_arc(x, y);
            }
        }
    }
    for (&v, &l) in &layer {
        if matches!(l, Layer::T1 | Layer::T2 | Layer::T3) {
            net.mark_sink(v);
        }
    }
    net
}

/// Builds the stage-2 subnetwork for `u ∈ L` whose packing `pack` is
/// chordless and maximal with `|pack| = p`. `targets23` is the collected
/// target set minus the root's L-neighbors. The result is a subnetwork of
/// the full packing network with O(p²) vertices and arcs on which the
/// packing flow augments iff it augments on the full network.
pub fn build_subnetwork(
    g: &Graph,
    part: &Partition,
    vias: &ViasStore,
    u: Vertex,
    pack: &Packing,
    targets23: &[Vertex],
) -> FlowNet {
    debug_assert!(part.in_l(u));
    let in_pack = |x: Vertex| pack.contains(x);
    let t_set: FxHashSet<Vertex> = targets23.iter().copied().collect();

    // Packing layers: first hops and second hops in R, plus packed targets.
    let mut s1h: Vec<Vertex> = Vec::new();
    let mut s2h: Vec<Vertex> = Vec::new();
    let mut t23h: Vec<Vertex> = Vec::new();
    for path in pack.paths() {
        if path.edge_len() < 2 {
            continue;
        }
        s1h.push(path.first_hop());
        if path.edge_len() == 3 {
            s2h.push(path.vertices()[2]);
        }
        if t_set.contains(&path.endpoint()) {
            t23h.push(path.endpoint());
        }
    }
    s1h.sort_unstable();
    s2h.sort_unstable();
    t23h.sort_unstable();

    let mut net = FlowNet::new(u);

    // Step 1: orient the packing away from the root and add all graph edges
    // between its layers that exist in the full network.
    for path in pack.paths() {
        if path.edge_len() < 2 {
            continue;
        }
        let verts = path.vertices();
        for win in verts.windows(2) {
            net.add_arc(win[0], win[1]);
        }
    }
    for &x in &s1h {
        for &y in s2h.iter().chain(&t23h) {
            if g.has_edge(x, y) {
                net.add_arc(x, y);
            }
        }
    }
    for &x in &s2h {
        for &y in &t23h {
            if g.has_edge(x, y) {
                net.add_arc(x, y);
            }
        }
    }

    let n_r_u = part.r_neighbors_sorted(u);

    // Step 2: one fresh first-hop into each packed interior or target.
    for &y in s2h.iter().chain(&t23h) {
        for &x in &n_r_u {
            if !in_pack(x) && g.has_edge(x, y) {
                net.add_arc(u, x);
                net.add_arc(x, y);
                break;
            }
        }
    }

    // Step 3: one fresh second-hop between each packed first hop and packed
    // target. Vias entries adjacent to the root belong to S1, not S2, and
    // would not be arcs of the full network; skip them.
    for &y in &t23h {
        for &x in &s1h {
            let w = vias
                .lookup(x, y)
                .iter()
                .copied()
                .filter(|&w| !in_pack(w) && !g.has_edge(u, w))
                .min();
            if let Some(w) = w {
                net.add_arc(x, w);
                net.add_arc(w, y);
            }
        }
    }

    // Step 4: one fresh two-hop route from the root to each packed target.
    for &y in &t23h {
        'width: for &w in &n_r_u {
            if in_pack(w) {
                continue;
            }
            let x = vias
                .lookup(w, y)
                .iter()
                .copied()
                .filter(|&x| !in_pack(x) && !g.has_edge(u, x))
                .min();
            if let Some(x) = x {
                net.add_arc(u, w);
                net.add_arc(w, x);
                net.add_arc(x, y);
                break 'width;
            }
        }
    }

    // Steps 5 and 6: one fresh target hanging off every packed interior
    // vertex, at distance one if possible, else through a fresh via for
    // first hops.
    for &w in s1h.iter().chain(&s2h) {
        let mut ys = part.l_neighbors_sorted(w);
        ys.retain(|&y| !in_pack(y) && !g.has_edge(u, y));
        if let Some(&y) = ys.first() {
            net.add_arc(w, y);
            net.mark_sink(y);
            continue;
        }
        if !s1h.contains(&w) {
            continue;
        }
        'step6: for &y in targets23 {
            if in_pack(y) {
                continue;
            }
            let x = vias
                .lookup(w, y)
                .iter()
                .copied()
                .filter(|&x| !in_pack(x) && !g.has_edge(u, x))
                .min();
            if let Some(x) = x {
                net.add_arc(w, x);
                net.add_arc(x, y);
                net.mark_sink(y);
                break 'step6;
            }
        }
    }

    for &y in &t23h {
        net.mark_sink(y);
    }
    net
}

/// Replaces the non-direct part of `pack` by the flow obtained from one
/// augmentation along `path`, yielding a packing one larger.
pub fn augment_packing(net: &FlowNet, pack: &Packing, path: &[Vertex]) -> Packing {
    let flow: Vec<Vec<Vertex>> = pack
        .paths()
        .filter(|p| p.edge_len() >= 2)
        .map(|p| p.vertices().to_vec())
        .collect();
    let new_flow = net.augment(&flow, path);
    let mut out = Packing::new(pack.root());
    for p in pack.paths().filter(|p| p.edge_len() == 1) {
        out.add_path(*p);
    }
    for p in &new_flow {
        out.add_path(PackPath::new(p));
    }
    out
}
