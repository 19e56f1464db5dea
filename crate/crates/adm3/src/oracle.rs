//! The incremental oracle behind the decision procedure.
//!
//! The oracle maintains the L/R split, the candidate set (vertices of L
//! whose packing number is known to be at most p), a rooted path packing
//! per vertex and the vias store. Each query pops the minimum-id candidate,
//! moves it to R and repairs the packings of affected vertices, escalating
//! from cheap replacements to a single flow augmentation only when a packing
//! is stuck exactly at size p.

use std::collections::BTreeSet;

use crate::flow::{augment_packing, build_full_network, build_subnetwork};
use crate::graph::{Graph, Vertex};
use crate::packing::{PackPath, Packing};
use crate::partition::Partition;
use crate::vias::ViasStore;

#[derive(Clone, Copy, Debug, Default)]
pub struct OracleOptions {
    /// On every stage-2 call, also build the full packing network and
    /// verify that it augments exactly when the subnetwork does. Costly;
    /// used by the test suite.
    pub crosscheck_subnetwork: bool,
}

/// Per-query trace record.
#[derive(Clone, Copy, Debug, Default)]
pub struct QueryRecord {
    pub emitted: Option<Vertex>,
    pub cand_size: usize,
    pub simple_updates: u32,
    pub stage1_calls: u32,
    pub stage2_calls: u32,
    pub augmentations: u32,
}

#[derive(Clone, Debug, Default)]
pub struct OracleStats {
    pub queries: u64,
    pub simple_updates: u64,
    pub stage1_calls: u64,
    pub stage2_calls: u64,
    pub augmentations: u64,
    pub max_subnet_vertices: usize,
    pub max_subnet_arcs: usize,
    /// Stage-2 invocations whose subnetwork augmentability disagreed with
    /// the full network (only counted under `crosscheck_subnetwork`).
    pub crosscheck_failures: u64,
    stage1_per_vertex: Vec<u32>,
    stage2_per_vertex: Vec<u32>,
    last: QueryRecord,
}

impl OracleStats {
    pub fn last_record(&self) -> QueryRecord {
        self.last
    }

    pub fn stage1_calls_for(&self, v: Vertex) -> u32 {
        self.stage1_per_vertex[v as usize]
    }

    pub fn stage2_calls_for(&self, v: Vertex) -> u32 {
        self.stage2_per_vertex[v as usize]
    }

    /// Largest per-vertex invocation count of either escalation stage.
    pub fn max_escalations_per_vertex(&self) -> u32 {
        self.stage1_per_vertex
            .iter()
            .chain(&self.stage2_per_vertex)
            .copied()
            .max()
            .unwrap_or(0)
    }
}

pub struct Oracle<'g> {
    g: &'g Graph,
    p: usize,
    part: Partition,
    cand: BTreeSet<Vertex>,
    packs: Vec<Packing>,
    vias: ViasStore,
    emitted: usize,
    opts: OracleOptions,
    stats: OracleStats,
}

impl<'g> Oracle<'g> {
    pub fn new(g: &'g Graph, p: usize) -> Oracle<'g> {
        Oracle::with_options(g, p, OracleOptions::default())
    }

    /// Initialises the oracle: everything in L, candidates are the vertices
    /// of degree at most p, and every vertex starts with the packing of all
    /// its direct edges. O(n + m).
    pub fn with_options(g: &'g Graph, p: usize, opts: OracleOptions) -> Oracle<'g> {
        let n = g.n();
        let cand: BTreeSet<Vertex> = g.vertices().filter(|&v| g.degree(v) <= p).collect();
        let mut packs: Vec<Packing> = Vec::with_capacity(n);
        for v in g.vertices() {
            let mut pk = Packing::new(v);
            for &u in g.neighbors(v) {
                pk.add_path(PackPath::new(&[v, u]));
            }
            packs.push(pk);
        }
        let stats = OracleStats {
            stage1_per_vertex: vec![0; n],
            stage2_per_vertex: vec![0; n],
            ..OracleStats::default()
        };
        Oracle {
            g,
            p,
            part: Partition::new(g),
            cand,
            packs,
            vias: ViasStore::new(n, p),
            emitted: 0,
            opts,
            stats,
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    pub fn partition(&self) -> &Partition {
        &self.part
    }

    pub fn candidates(&self) -> &BTreeSet<Vertex> {
        &self.cand
    }

    pub fn vias(&self) -> &ViasStore {
        &self.vias
    }

    pub fn stats(&self) -> &OracleStats {
        &self.stats
    }

    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// Vertices still in L.
    pub fn remaining(&self) -> usize {
        self.part.l_size()
    }

    pub fn pack(&self, v: Vertex) -> &Packing {
        &self.packs[v as usize]
    }

    /// The packing of `v` as consumers see it: for R-vertices, stale paths
    /// are cleaned up first.
    pub fn pack_view(&self, v: Vertex) -> Packing {
        let mut pk = self.packs[v as usize].clone();
        if !self.part.in_l(v) {
            clean_two_packing(&self.part, &mut pk);
        }
        pk
    }

    /// Lazy hygiene for an R-vertex packing; every access goes through this
    /// first.
    fn clean_r_pack(&mut self, u: Vertex) {
        clean_two_packing(&self.part, &mut self.packs[u as usize]);
    }

    /// Answers one query: the minimum-id vertex v of L with packing number
    /// at most p, or None if no such vertex exists (the graph then has
    /// admissibility above p). All data structures are updated to the new
    /// partition before returning.
    pub fn query(&mut self) -> Option<Vertex> {
        let mut record = QueryRecord::default();
        let v = match self.cand.iter().next() {
            Some(&v) => v,
            None => {
                record.cand_size = 0;
                self.stats.last = record;
                return None;
            }
        };
        self.cand.remove(&v);
        self.stats.queries += 1;

        // Targets are collected against L with v still present; the update
        // loop below relies on this snapshot.
        let targets = self.collect_targets(v);
        self.part.move_to_r(v);
        self.vias.on_move(&self.part, v);
        self.update_two_packings(v, &targets);

        let pending: Vec<Vertex> = targets
            .iter()
            .copied()
            .filter(|u| !self.cand.contains(u))
            .collect();
        for u in pending {
            self.simple_update(u, v, &mut record);
            if self.packs[u as usize].len() == self.p {
                record.stage1_calls += 1;
                self.stats.stage1_calls += 1;
                self.stats.stage1_per_vertex[u as usize] += 1;
                self.stage1_update(u);
            }
            if self.packs[u as usize].len() == self.p {
                record.stage2_calls += 1;
                self.stats.stage2_calls += 1;
                self.stats.stage2_per_vertex[u as usize] += 1;
                self.stage2_update(u, &mut record);
            }
            if self.packs[u as usize].len() == self.p {
                self.cand.insert(u);
            }
        }

        self.emitted += 1;
        record.emitted = Some(v);
        record.cand_size = self.cand.len();
        self.stats.last = record;
        Some(v)
    }

    /// Returns the target set of `v`: all of L reachable from v by an
    /// admissible path of at most three edges. Relies on Pack(v) being
    /// chordless and covering; the union of the L-neighborhoods of the
    /// packing's R-vertices, and of the R-vertices of their own packings
    /// one hop out, is then exactly the target set. O(p² |Pack(v)|).
    pub fn collect_targets(&mut self, v: Vertex) -> Vec<Vertex> {
        let mut t: Vec<Vertex> = Vec::new();
        let mut ws: Vec<Vertex> = self.packs[v as usize]
            .paths()
            .flat_map(|p| p.vertices()[1..].to_vec())
            .filter(|&w| !self.part.in_l(w))
            .collect();
        ws.push(v);
        ws.sort_unstable();
        ws.dedup();

        for &w in &ws {
            t.extend_from_slice(self.part.l_neighbors(w));
            if w == v || !self.g.has_edge(v, w) {
                continue;
            }
            self.clean_r_pack(w);
            let xs: Vec<Vertex> = self.packs[w as usize]
                .paths()
                .flat_map(|p| p.vertices().to_vec())
                .filter(|&x| !self.part.in_l(x))
                .collect();
            for x in xs {
                t.extend_from_slice(self.part.l_neighbors(x));
            }
        }
        t.sort_unstable();
        t.dedup();
        t.retain(|&y| y != v);
        t
    }

    /// Maintains the maximal (2,L)-packings after `v` moved to R: every
    /// R-neighbor loses its direct path to v and tries the replacement
    /// through v, and v itself gets a fresh maximal packing built from its
    /// target snapshot via direct edges and stored vias.
    fn update_two_packings(&mut self, v: Vertex, targets: &[Vertex]) {
        for u in self.part.r_neighbors_sorted(v) {
            let had_direct = match self.packs[u as usize].path_at_endpoint(v) {
                Some(path) => {
                    debug_assert_eq!(
                        path.edge_len(),
                        1,
                        "chordless packs hold v only as a direct endpoint"
                    );
                    self.packs[u as usize].remove_path_through(v);
                    true
                }
                None => false,
            };
            debug_assert!(had_direct, "maximality requires the direct path {u}-{v}");
            self.clean_r_pack(u);
            if had_direct {
                for y in self.part.l_neighbors_sorted(v) {
                    if !self.packs[u as usize].contains(y) {
                        self.packs[u as usize].add_path(PackPath::new(&[u, v, y]));
                        break;
                    }
                }
            }
        }

        let mut pk = Packing::new(v);
        for &y in targets {
            if self.g.has_edge(v, y) {
                pk.add_path(PackPath::new(&[v, y]));
                continue;
            }
            for &x in self.vias.lookup(v, y) {
                if !pk.contains(x) {
                    pk.add_path(PackPath::new(&[v, x, y]));
                    break;
                }
            }
        }
        self.packs[v as usize] = pk;
    }

    /// Repairs Pack(u) after v moved to R, trying replacements in order:
    /// a new leaf under the lost path's first hop, a route through the
    /// first hop's own packing, and for lost three-edge paths a detour
    /// through a via of (v, u). No-op when v was not an endpoint.
    fn simple_update(&mut self, u: Vertex, v: Vertex, record: &mut QueryRecord) {
        if self.packs[u as usize].path_at_endpoint(v).is_none() {
            return;
        }
        record.simple_updates += 1;
        self.stats.simple_updates += 1;

        let lost = self.packs[u as usize].remove_path_through(v);
        let w = lost.first_hop();

        for y in self.part.l_neighbors_sorted(w) {
            if !self.packs[u as usize].contains(y) {
                self.packs[u as usize].add_path(PackPath::new(&[u, w, y]));
                return;
            }
        }

        self.clean_r_pack(w);
        let mut mids: Vec<Vertex> = self.packs[w as usize]
            .paths()
            .filter(|p| p.edge_len() == 2)
            .map(|p| p.first_hop())
            .collect();
        mids.sort_unstable();
        'outer: for x in mids {
            if self.packs[u as usize].contains(x) {
                continue;
            }
            for y in self.part.l_neighbors_sorted(x) {
                if self.packs[u as usize].contains(y) {
                    continue;
                }
                if self.g.has_edge(u, x) {
                    self.packs[u as usize].add_path(PackPath::new(&[u, x, y]));
                    break 'outer;
                } else if !self.packs[u as usize].contains(w) {
                    self.packs[u as usize].add_path(PackPath::new(&[u, w, x, y]));
                    break 'outer;
                } else {
                    // Neither path shape can use this x; no later y helps.
                    break;
                }
            }
        }

        if lost.edge_len() < 3 || self.packs[u as usize].contains(v) {
            return;
        }
        for y in self.part.l_neighbors_sorted(v) {
            if self.packs[u as usize].contains(y) {
                continue;
            }
            for &x in self.vias.lookup(v, u) {
                if self.packs[u as usize].contains(x) {
                    continue;
                }
                self.packs[u as usize].add_path(PackPath::new(&[u, x, v, y]));
                return;
            }
        }
    }

    /// Tries to grow Pack(u) by one disjoint path to an unused target,
    /// scanning fresh first hops and their vias. Leaves the packing
    /// unchanged when no disjoint path exists, in which case it is maximal.
    fn stage1_update(&mut self, u: Vertex) {
        let targets = self.collect_targets(u);
        let t23: Vec<Vertex> = targets
            .into_iter()
            .filter(|&y| !self.g.has_edge(u, y))
            .collect();

        for w in self.part.r_neighbors_sorted(u) {
            if self.packs[u as usize].contains(w) {
                continue;
            }
            for &y in &t23 {
                if self.packs[u as usize].contains(y) {
                    continue;
                }
                if self.g.has_edge(w, y) {
                    self.packs[u as usize].add_path(PackPath::new(&[u, w, y]));
                    return;
                }
                for &x in self.vias.lookup(w, y) {
                    if self.packs[u as usize].contains(x) {
                        continue;
                    }
                    if self.g.has_edge(u, x) {
                        self.packs[u as usize].add_path(PackPath::new(&[u, x, y]));
                    } else {
                        self.packs[u as usize].add_path(PackPath::new(&[u, w, x, y]));
                    }
                    return;
                }
            }
        }
    }

    /// Builds the O(p²) subnetwork for the (now maximal) packing of u and
    /// augments along a shortest path if one exists; otherwise the packing
    /// is maximum and u belongs in the candidate set.
    fn stage2_update(&mut self, u: Vertex, record: &mut QueryRecord) {
        let targets = self.collect_targets(u);
        let t23: Vec<Vertex> = targets
            .into_iter()
            .filter(|&y| !self.g.has_edge(u, y))
            .collect();

        let net = build_subnetwork(
            self.g,
            &self.part,
            &self.vias,
            u,
            &self.packs[u as usize],
            &t23,
        );
        self.stats.max_subnet_vertices = self.stats.max_subnet_vertices.max(net.node_count());
        self.stats.max_subnet_arcs = self.stats.max_subnet_arcs.max(net.arc_count());

        let flow: Vec<Vec<Vertex>> = self.packs[u as usize]
            .paths()
            .filter(|p| p.edge_len() >= 2)
            .map(|p| p.vertices().to_vec())
            .collect();
        let path = net.find_augmenting_path(&flow);

        if self.opts.crosscheck_subnetwork {
            let full = build_full_network(self.g, &self.part, u);
            let full_flow: Vec<Vec<Vertex>> = self.packs[u as usize]
                .paths()
                .map(|p| p.vertices().to_vec())
                .collect();
            let full_augments = full.find_augmenting_path(&full_flow).is_some();
            if full_augments != path.is_some() {
                self.stats.crosscheck_failures += 1;
            }
        }

        if let Some(path) = path {
            let rebuilt = augment_packing(&net, &self.packs[u as usize], &path);
            self.packs[u as usize] = rebuilt;
            record.augmentations += 1;
            self.stats.augmentations += 1;
        }
    }
}

/// Drops every path whose endpoint has left L and re-routes each freed
/// interior vertex to its first unused L-target. Dropping alone would break
/// maximality: the freed interior vertex may be the only connection to some
/// still-unused target. O(p²) worst case per call.
fn clean_two_packing(part: &Partition, pk: &mut Packing) {
    let stale: Vec<Vertex> = pk
        .paths()
        .map(|p| p.endpoint())
        .filter(|&e| !part.in_l(e))
        .collect();
    if stale.is_empty() {
        return;
    }
    let root = pk.root();
    let mut freed_mids: Vec<Vertex> = Vec::new();
    for e in stale {
        let path = pk.remove_path_through(e);
        if path.edge_len() == 2 {
            freed_mids.push(path.first_hop());
        }
    }
    freed_mids.sort_unstable();
    for x in freed_mids {
        for y in part.l_neighbors_sorted(x) {
            if !pk.contains(y) {
                pk.add_path(PackPath::new(&[root, x, y]));
                break;
            }
        }
    }
}

#[cfg(test)]
impl<'g> Oracle<'g> {
    /// Test-only: force a partition state without touching packings.
    fn force_move(&mut self, v: Vertex) {
        self.part.move_to_r(v);
        self.vias.on_move(&self.part, v);
        self.cand.retain(|&c| c != v);
    }

    /// Test-only: overwrite the packing of a vertex.
    fn force_pack(&mut self, root: Vertex, paths: &[&[Vertex]]) {
        let mut pk = Packing::new(root);
        for p in paths {
            pk.add_path(PackPath::new(p));
        }
        self.packs[root as usize] = pk;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::{check_chordless, check_covering, check_maximal_two};
    use crate::reference::exact_pp;

    fn drain(oracle: &mut Oracle) -> Vec<Vertex> {
        let mut order = Vec::new();
        while oracle.remaining() > 0 {
            match oracle.query() {
                Some(v) => order.push(v),
                None => break,
            }
        }
        order
    }

    #[test]
    fn initialise_candidates() {
        let p5 = Graph::path(5);
        let o = Oracle::new(&p5, 1);
        assert_eq!(
            o.candidates().iter().copied().collect::<Vec<_>>(),
            vec![0, 4]
        );

        let k5 = Graph::complete(5);
        assert!(Oracle::new(&k5, 3).candidates().is_empty());

        let star = Graph::star(4);
        assert_eq!(Oracle::new(&star, 4).candidates().len(), 5);
    }

    #[test]
    fn initial_packs_are_direct_edges() {
        let g = Graph::path(3);
        let o = Oracle::new(&g, 1);
        assert_eq!(o.pack(1).len(), 2);
        assert!(o.pack(1).path_at_endpoint(0).is_some());
        assert!(o.pack(1).path_at_endpoint(2).is_some());
    }

    #[test]
    fn p5_trace_is_min_id() {
        // After each emission the freed neighbor immediately becomes a
        // candidate, so the min-id policy drains the path left to right.
        let g = Graph::path(5);
        let mut o = Oracle::new(&g, 1);
        assert_eq!(drain(&mut o), vec![0, 1, 2, 3, 4]);

        let mut o = Oracle::new(&g, 0);
        assert_eq!(o.query(), None);
    }

    #[test]
    fn k5_traces() {
        let g = Graph::complete(5);
        let mut o = Oracle::new(&g, 4);
        assert_eq!(drain(&mut o), vec![0, 1, 2, 3, 4]);

        let mut o = Oracle::new(&g, 3);
        assert_eq!(o.query(), None);
    }

    #[test]
    fn emission_matches_reference_candidates() {
        // Every query must leave Cand = {v in L : pp(v) <= p}.
        for (g, p) in [
            (Graph::path(5), 1),
            (Graph::cycle(6), 2),
            (Graph::petersen(), 3),
        ] {
            let mut o = Oracle::new(&g, p);
            loop {
                let next = o.query();
                for v in g.vertices() {
                    if o.partition().in_l(v) {
                        let pp = exact_pp(&g, o.partition(), v, 3).unwrap();
                        assert_eq!(
                            o.candidates().contains(&v),
                            pp <= p,
                            "cand wrong for {v} (pp={pp}, p={p})"
                        );
                    }
                }
                if next.is_none() {
                    break;
                }
                if o.remaining() == 0 {
                    break;
                }
            }
        }
    }

    #[test]
    fn collect_targets_fix_tgt() {
        // Edges 0-1, 1-2, 2-3, 1-4 with L = {0,3,4}; Pack(0) = {[0,1,4]},
        // Pack(1) covers 3 through 2.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]);
        let mut o = Oracle::new(&g, 1);
        o.force_move(1);
        o.force_move(2);
        o.force_pack(0, &[&[0, 1, 4]]);
        o.force_pack(1, &[&[1, 0], &[1, 4], &[1, 2, 3]]);
        o.force_pack(2, &[&[2, 3]]);
        assert_eq!(o.collect_targets(0), vec![3, 4]);
    }

    #[test]
    fn collect_targets_trivial_cases() {
        let g = Graph::star(3);
        let mut o = Oracle::new(&g, 3);
        // All neighbors still in L: exactly the neighborhood.
        assert_eq!(o.collect_targets(0), vec![1, 2, 3]);

        let lone = Graph::from_edges(2, &[]);
        let mut o = Oracle::new(&lone, 1);
        assert!(o.collect_targets(0).is_empty());
    }

    #[test]
    fn update_two_packings_replacement() {
        // v=2 moves; u=1 in R held the direct path [1,2]; N_L(2) = {3}.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let mut o = Oracle::new(&g, 2);
        o.force_move(1);
        o.force_pack(1, &[&[1, 0], &[1, 2]]);
        let targets = o.collect_targets(2);
        o.force_move(2);
        o.update_two_packings(2, &targets);
        assert!(o
            .pack(1)
            .path_at_endpoint(3)
            .map(|p| p.vertices() == [1, 2, 3])
            .unwrap_or(false));
        assert!(check_maximal_two(&o.pack_view(1), &g, o.partition()));
        assert!(check_maximal_two(&o.pack_view(2), &g, o.partition()));
    }

    #[test]
    fn update_two_packings_no_l_neighbors() {
        // Triangle with only v left in L: the rebuilt packing is empty.
        let g = Graph::complete(3);
        let mut o = Oracle::new(&g, 2);
        o.force_move(1);
        o.force_move(2);
        o.force_pack(1, &[&[1, 0]]);
        o.force_pack(2, &[&[2, 0]]);
        let targets = o.collect_targets(0);
        assert!(targets.is_empty());
        o.force_move(0);
        o.update_two_packings(0, &targets);
        assert!(o.pack(0).is_empty());
    }

    #[test]
    fn star_center_moving_last() {
        // All leaves already in R: the center's rebuilt packing is empty.
        let g = Graph::star(4);
        let mut o = Oracle::new(&g, 1);
        for leaf in [1, 2, 3, 4] {
            o.force_move(leaf);
        }
        let targets = o.collect_targets(0);
        assert!(targets.is_empty());
        o.force_move(0);
        o.update_two_packings(0, &targets);
        assert!(o.pack(0).is_empty());
    }

    #[test]
    fn simple_update_branch_one() {
        // 0-1, 1-2, 1-3 with L = {0,2,3}; Pack(0) = {[0,1,2]}; 2 moves.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]);
        let mut o = Oracle::new(&g, 1);
        o.force_move(1);
        o.force_pack(0, &[&[0, 1, 2]]);
        o.force_pack(1, &[&[1, 0], &[1, 2], &[1, 3]]);
        o.force_move(2);
        o.force_pack(2, &[]);
        let mut rec = QueryRecord::default();
        o.simple_update(0, 2, &mut rec);
        let paths: Vec<_> = o.pack(0).paths().map(|p| p.vertices().to_vec()).collect();
        assert_eq!(paths, vec![vec![0, 1, 3]]);
        assert!(check_chordless(o.pack(0), &g));
        assert!(check_covering(o.pack(0), &g, o.partition()));
    }

    #[test]
    fn simple_update_shrinks_without_replacement() {
        // Leaf path [0,1] lost, nothing to replace it with.
        let g = Graph::path(2);
        let mut o = Oracle::new(&g, 1);
        o.force_move(1);
        o.force_pack(1, &[]);
        let mut rec = QueryRecord::default();
        o.simple_update(0, 1, &mut rec);
        assert!(o.pack(0).is_empty());
        assert!(check_covering(o.pack(0), &g, o.partition()));
    }

    #[test]
    fn simple_update_noop_when_v_not_packed() {
        let g = Graph::path(3);
        let mut o = Oracle::new(&g, 2);
        o.force_pack(0, &[]);
        o.force_move(1);
        let mut rec = QueryRecord::default();
        o.simple_update(0, 1, &mut rec);
        assert_eq!(rec.simple_updates, 0);
    }

    #[test]
    fn simple_update_branch_two_through_hop_packing() {
        // Lost [0,1,2]; the replacement target 5 sits behind the interior
        // vertex 4 of Pack(1). Without the edge 0-4 the detour keeps the
        // first hop: [0,1,4,5]. With it, the shortcut [0,4,5] wins.
        for direct_edge in [false, true] {
            let mut edges = vec![(0, 1), (1, 2), (1, 4), (4, 5)];
            if direct_edge {
                edges.push((0, 4));
            }
            let g = Graph::from_edges(6, &edges);
            let mut o = Oracle::new(&g, 1);
            o.force_move(1);
            o.force_move(4);
            o.force_pack(0, &[&[0, 1, 2]]);
            o.force_pack(1, &[&[1, 0], &[1, 4, 5]]);
            o.force_pack(4, &[&[4, 5]]);
            assert!(check_covering(o.pack(0), &g, o.partition()));
            o.force_move(2);
            o.force_pack(2, &[]);
            let mut rec = QueryRecord::default();
            o.simple_update(0, 2, &mut rec);
            let paths: Vec<_> = o.pack(0).paths().map(|p| p.vertices().to_vec()).collect();
            let expected = if direct_edge {
                vec![0, 4, 5]
            } else {
                vec![0, 1, 4, 5]
            };
            assert_eq!(paths, vec![expected]);
            assert!(check_chordless(o.pack(0), &g));
            assert!(check_covering(o.pack(0), &g, o.partition()));
        }
    }

    #[test]
    fn simple_update_branch_three_via_detour() {
        // Lost the full path [0,1,2,3]; branches one and two have nothing,
        // so the replacement goes through a via of (3,0): [0,4,3,5].
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (0, 4), (3, 4), (3, 5)]);
        let mut o = Oracle::new(&g, 1);
        for v in [1, 2, 4] {
            o.force_move(v);
        }
        o.force_pack(0, &[&[0, 1, 2, 3]]);
        o.force_pack(1, &[&[1, 0]]);
        o.force_pack(2, &[&[2, 3]]);
        o.force_pack(4, &[&[4, 0], &[4, 3]]);
        assert!(check_covering(o.pack(0), &g, o.partition()));
        // 3 moves; its move populates Vias[3][0] = [4].
        let targets = o.collect_targets(3);
        o.force_move(3);
        o.update_two_packings(3, &targets);
        assert_eq!(o.vias().lookup(3, 0), &[4]);
        let mut rec = QueryRecord::default();
        o.simple_update(0, 3, &mut rec);
        let paths: Vec<_> = o.pack(0).paths().map(|p| p.vertices().to_vec()).collect();
        assert_eq!(paths, vec![vec![0, 4, 3, 5]]);
        assert!(check_chordless(o.pack(0), &g));
        assert!(check_covering(o.pack(0), &g, o.partition()));
    }

    #[test]
    fn stage1_adds_disjoint_path() {
        // 0-1, 1-3, 0-2, 2-4, 1-2 with R = {1,2}: Pack(0) = {[0,1,3]} is
        // covering (0-1-2-4 meets it at 1) and stage 1 finds [0,2,4].
        let g = Graph::from_edges(5, &[(0, 1), (1, 3), (0, 2), (2, 4), (1, 2)]);
        let mut o = Oracle::new(&g, 1);
        o.force_move(1);
        o.force_move(2);
        o.force_pack(0, &[&[0, 1, 3]]);
        o.force_pack(1, &[&[1, 0], &[1, 3], &[1, 2, 4]]);
        o.force_pack(2, &[&[2, 0], &[2, 4], &[2, 1, 3]]);
        assert!(check_covering(o.pack(0), &g, o.partition()));
        o.stage1_update(0);
        assert_eq!(o.pack(0).len(), 2);
        assert!(o
            .pack(0)
            .path_at_endpoint(4)
            .map(|p| p.vertices() == [0, 2, 4])
            .unwrap_or(false));
        assert!(check_chordless(o.pack(0), &g));
        assert!(check_covering(o.pack(0), &g, o.partition()));
    }

    #[test]
    fn stage1_noop_without_disjoint_path() {
        // FIX-AUG: the only route to the unused target 4 goes through the
        // packed vertex 1, so stage 1 finds nothing.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4)]);
        let mut o = Oracle::new(&g, 1);
        o.force_move(1);
        o.force_move(2);
        o.force_pack(0, &[&[0, 1, 3]]);
        o.force_pack(1, &[&[1, 3], &[1, 4]]);
        o.force_pack(2, &[&[2, 3]]);
        o.stage1_update(0);
        assert_eq!(o.pack(0).len(), 1);
    }

    #[test]
    fn stage2_augments_fix_aug() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4)]);
        let mut o = Oracle::new(&g, 1);
        o.force_move(1);
        o.force_move(2);
        o.force_pack(0, &[&[0, 1, 3]]);
        o.force_pack(1, &[&[1, 3], &[1, 4]]);
        o.force_pack(2, &[&[2, 3]]);
        let mut rec = QueryRecord::default();
        o.stage2_update(0, &mut rec);
        assert_eq!(rec.augmentations, 1);
        let mut endpoints: Vec<_> = o.pack(0).endpoints().collect();
        endpoints.sort_unstable();
        assert_eq!(endpoints, vec![3, 4]);
        assert!(check_chordless(o.pack(0), &g));
        assert!(check_covering(o.pack(0), &g, o.partition()));
    }

    #[test]
    fn stage2_noop_when_maximum() {
        // FIX-AUG without the edge 1-4: the single path is already maximum.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let mut o = Oracle::new(&g, 1);
        o.force_move(1);
        o.force_move(2);
        o.force_pack(0, &[&[0, 1, 3]]);
        o.force_pack(1, &[&[1, 3]]);
        o.force_pack(2, &[&[2, 3]]);
        let mut rec = QueryRecord::default();
        o.stage2_update(0, &mut rec);
        assert_eq!(rec.augmentations, 0);
        assert_eq!(o.pack(0).len(), 1);
        assert_eq!(exact_pp(&g, o.partition(), 0, 3).unwrap(), 1);
    }
}
