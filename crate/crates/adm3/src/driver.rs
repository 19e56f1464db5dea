//! Top-level decision procedure and exact-value search.

use std::time::{Duration, Instant};

use crate::graph::{degeneracy, Graph, Vertex};
use crate::oracle::{Oracle, OracleOptions};

#[derive(Clone, Debug)]
pub enum Answer {
    /// The graph is p-admissible; the ordering is a witness (first vertex
    /// first).
    Yes(Vec<Vertex>),
    No,
}

#[derive(Clone, Debug, Default)]
pub struct RunStats {
    pub queries: u64,
    pub simple_updates: u64,
    pub stage1_calls: u64,
    pub stage2_calls: u64,
    pub augmentations: u64,
    pub max_escalations_per_vertex: u32,
    pub max_subnet_vertices: usize,
    pub elapsed: Duration,
    pub peak_mem_bytes: u64,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub answer: Answer,
    pub stats: RunStats,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self.answer, Answer::Yes(_))
    }
}

/// Decides whether the 3-admissibility of `g` is at most `p`.
///
/// Graphs with more than p·n edges are rejected outright; otherwise the
/// oracle peels vertices until L empties (yes, with the emission order
/// reversed as witness) or no candidate remains (no).
pub fn decide(g: &Graph, p: usize) -> Decision {
    decide_with(g, p, OracleOptions::default())
}

pub fn decide_with(g: &Graph, p: usize, opts: OracleOptions) -> Decision {
    let start = Instant::now();
    if (g.m() as u128) > (p as u128) * (g.n() as u128) {
        let stats = RunStats {
            elapsed: start.elapsed(),
            peak_mem_bytes: peak_rss_bytes(),
            ..RunStats::default()
        };
        return Decision {
            answer: Answer::No,
            stats,
        };
    }

    let mut oracle = Oracle::with_options(g, p, opts);
    let mut emissions: Vec<Vertex> = Vec::with_capacity(g.n());
    let mut answer = Answer::No;
    loop {
        if oracle.remaining() == 0 {
            emissions.reverse();
            answer = Answer::Yes(emissions);
            break;
        }
        match oracle.query() {
            Some(v) => emissions.push(v),
            None => break,
        }
    }

    let os = oracle.stats();
    let stats = RunStats {
        queries: os.queries,
        simple_updates: os.simple_updates,
        stage1_calls: os.stage1_calls,
        stage2_calls: os.stage2_calls,
        augmentations: os.augmentations,
        max_escalations_per_vertex: os.max_escalations_per_vertex(),
        max_subnet_vertices: os.max_subnet_vertices,
        elapsed: start.elapsed(),
        peak_mem_bytes: peak_rss_bytes(),
    };
    Decision { answer, stats }
}

/// Computes the exact 3-admissibility and a witness ordering by scanning p
/// upward from max(degeneracy, ⌈m/n⌉). Both bounds are lower bounds of the
/// value, and each decision is exact, so the first yes is the answer.
pub fn compute_value(g: &Graph) -> (usize, Vec<Vertex>) {
    if g.n() == 0 {
        return (0, Vec::new());
    }
    let (degen, _) = degeneracy(g);
    let density = g.m().div_ceil(g.n());
    let mut p = degen.max(density);
    loop {
        if let Answer::Yes(ordering) = decide(g, p).answer {
            return (p, ordering);
        }
        p += 1;
        debug_assert!(p <= g.n(), "admissibility is bounded by the maximum degree");
    }
}

/// Potential of `u` against the oracle's current partition:
/// |T1|·p² + |T2|·p + |T3|, where Ti are the targets of `u` stratified by
/// admissible-path distance. Diagnostic; computed by exhaustive layered
/// search.
pub fn compute_potential(oracle: &Oracle, u: Vertex) -> u64 {
    let g = oracle.graph();
    let part = oracle.partition();
    debug_assert!(part.in_l(u));
    let p = oracle.p() as u64;

    let mut t = [0u64; 3];
    let mut seen = rustc_hash::FxHashSet::default();
    seen.insert(u);
    let mut frontier = vec![u];
    for (layer, slot) in t.iter_mut().enumerate() {
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in g.neighbors(x) {
                if !seen.insert(y) {
                    continue;
                }
                if part.in_l(y) {
                    *slot += 1;
                } else if layer < 2 {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    t[0] * p * p + t[1] * p + t[2]
}

/// Peak resident set size of this process in bytes, best effort (0 when the
/// platform offers no cheap readout).
pub fn peak_rss_bytes() -> u64 {
    #[cfg(target_os = "linux")]
    {
        if let Ok(status) = std::fs::read_to_string("/proc/self/status") {
            for line in status.lines() {
                if let Some(rest) = line.strip_prefix("VmHWM:") {
                    let kb: u64 = rest
                        .trim()
                        .trim_end_matches(" kB")
                        .trim()
                        .parse()
                        .unwrap_or(0);
                    return kb * 1024;
                }
            }
        }
    }
    0
}
