//! Whole-state invariant checks over a live oracle, used by instrumented
//! runs and the acceptance suite. Each check returns human-readable
//! violation descriptions; an empty vector means the invariant holds.
//!
//! These walk the entire graph and are meant for small instances or
//! explicit debugging sessions, not production runs.

use crate::graph::Vertex;
use crate::oracle::Oracle;
use crate::packing::{check_chordless, check_covering, check_maximal_two, Packing};
use crate::reference::exact_pp;

/// Structural invariants: well-formed packings, chordless + covering for
/// maintained L-packings, chordless + maximal + size-bounded for
/// R-packings, vias completeness up to capacity, and the subnetwork size
/// bound observed so far.
pub fn check_structural(o: &Oracle) -> Vec<String> {
    let mut out = Vec::new();
    let g = o.graph();
    let part = o.partition();
    let p = o.p();

    for v in g.vertices() {
        if part.in_l(v) {
            if o.candidates().contains(&v) {
                continue; // packings of candidates are frozen
            }
            let pk = o.pack(v);
            out.extend(
                well_formed(pk, o, 3)
                    .into_iter()
                    .map(|e| format!("L-pack {v}: {e}")),
            );
            if !check_chordless(pk, g) {
                out.push(format!("L-pack {v} has a chord"));
            }
            if !check_covering(pk, g, part) {
                out.push(format!("L-pack {v} is not covering"));
            }
        } else {
            let pk = o.pack_view(v);
            out.extend(
                well_formed(&pk, o, 2)
                    .into_iter()
                    .map(|e| format!("R-pack {v}: {e}")),
            );
            if pk.len() > p {
                out.push(format!("R-pack {v} has size {} > p", pk.len()));
            }
            if !check_chordless(&pk, g) {
                out.push(format!("R-pack {v} has a chord"));
            }
            if !check_maximal_two(&pk, g, part) {
                out.push(format!("R-pack {v} is not maximal"));
            }
        }
    }

    // Vias completeness up to capacity: every pair (x in R, y in L) stores
    // min(2p+1, common R-neighbors) entries, all of them valid.
    let cap = o.vias().capacity();
    for x in g.vertices().filter(|&x| !part.in_l(x)) {
        for y in g.vertices().filter(|&y| part.in_l(y)) {
            let truth: Vec<Vertex> = g
                .neighbors(x)
                .iter()
                .copied()
                .filter(|&w| !part.in_l(w) && g.has_edge(y, w))
                .collect();
            let stored = o.vias().lookup(x, y);
            if stored.len() != truth.len().min(cap) {
                out.push(format!(
                    "vias[{x}][{y}] stores {} of {} (cap {cap})",
                    stored.len(),
                    truth.len()
                ));
            }
            for &w in stored {
                if !truth.contains(&w) {
                    out.push(format!("vias[{x}][{y}] holds invalid via {w}"));
                }
            }
        }
    }

    if p > 0 {
        if o.stats().max_subnet_vertices > 20 * p * p {
            out.push(format!(
                "subnetwork grew to {} vertices, above 20p² = {}",
                o.stats().max_subnet_vertices,
                20 * p * p
            ));
        }
        if o.stats().max_subnet_arcs > 20 * p * p {
            out.push(format!(
                "subnetwork grew to {} arcs, above 20p² = {}",
                o.stats().max_subnet_arcs,
                20 * p * p
            ));
        }
        // Emitted vertices keep pp <= p, so their target sets stay within p³.
        for u in g.vertices().filter(|&u| !part.in_l(u)) {
            let targets = crate::packing::exhaustive_targets(g, part, u, 3).len();
            if targets > p * p * p {
                out.push(format!("R-vertex {u} has {targets} targets, above p³"));
            }
        }
    }
    out
}

/// Candidate exactness against the slow oracle: Cand must equal
/// {v in L : pp³(v) <= p}.
pub fn check_against_reference(o: &Oracle) -> Vec<String> {
    let mut out = Vec::new();
    let g = o.graph();
    let part = o.partition();
    for v in g.vertices().filter(|&v| part.in_l(v)) {
        let pp = exact_pp(g, part, v, 3).unwrap();
        let in_cand = o.candidates().contains(&v);
        if in_cand != (pp <= o.p()) {
            out.push(format!(
                "cand wrong for {v}: pp={pp}, p={}, in_cand={in_cand}",
                o.p()
            ));
        }
    }
    out
}

pub fn check_all(o: &Oracle) -> Vec<String> {
    let mut out = check_structural(o);
    out.extend(check_against_reference(o));
    out
}

fn well_formed(pk: &Packing, o: &Oracle, max_edges: usize) -> Vec<String> {
    let mut out = Vec::new();
    let g = o.graph();
    let part = o.partition();
    for path in pk.paths() {
        let verts = path.vertices();
        if path.edge_len() > max_edges {
            out.push(format!("path {verts:?} too long"));
        }
        for win in verts.windows(2) {
            if !g.has_edge(win[0], win[1]) {
                out.push(format!("path {verts:?} uses a non-edge"));
            }
        }
        if !part.in_l(path.endpoint()) {
            out.push(format!("path {verts:?} ends outside L"));
        }
        if path.interior().iter().any(|&x| part.in_l(x)) {
            out.push(format!("path {verts:?} has an interior vertex in L"));
        }
    }
    out
}
