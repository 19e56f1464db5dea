//! Slow exact oracles for r-admissibility, r ∈ {1,2,3}: the maximum rooted
//! packing size via max flow, a fully independent exhaustive enumerator for
//! cross-checking, greedy elimination for the exact admissibility value, and
//! ordering verification.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::flow::build_network_depth;
use crate::graph::{Graph, Vertex};
use crate::packing::admissible_paths;
use crate::partition::Partition;

/// Result of an exact admissibility computation: the value, a witness
/// ordering attaining it, and the packing number of each vertex relative to
/// its prefix.
#[derive(Clone, Debug)]
pub struct ExactResult {
    pub value: usize,
    pub ordering: Vec<Vertex>,
    pub prefix_pp: Vec<usize>,
}

fn check_radius(r: u32) -> Result<(), Error> {
    if (1..=3).contains(&r) {
        Ok(())
    } else {
        Err(Error::UnsupportedRadius(r))
    }
}

/// Maximum size of an (r,L)-admissible packing rooted at `v ∈ L`, where L
/// is the partition's L side. Computed by max flow on the layered packing
/// network; independent of the incremental oracle.
pub fn exact_pp(g: &Graph, part: &Partition, v: Vertex, r: u32) -> Result<usize, Error> {
    check_radius(r)?;
    debug_assert!(part.in_l(v), "pp is defined for vertices in L");
    Ok(pp_flow(g, part, v, r))
}

fn pp_flow(g: &Graph, part: &Partition, v: Vertex, r: u32) -> usize {
    match r {
        1 => part.l_degree(v),
        _ => build_network_depth(g, part, v, r).max_flow_value(),
    }
}

/// Maximum packing size by exhaustive enumeration of disjoint admissible
/// path families, with branch-and-bound over targets. Exponential in the
/// worst case; intended for graphs with at most ~12 vertices and used to
/// de-correlate the flow-based oracle in tests.
pub fn exact_pp_enumerative(
    g: &Graph,
    part: &Partition,
    v: Vertex,
    r: u32,
) -> Result<usize, Error> {
    check_radius(r)?;
    assert!(
        g.n() <= 64,
        "enumerative oracle supports at most 64 vertices"
    );
    debug_assert!(part.in_l(v));

    let paths = admissible_paths(g, part, v, r);
    let mut targets: Vec<Vertex> = paths.iter().map(|p| *p.last().unwrap()).collect();
    targets.sort_unstable();
    targets.dedup();

    // One bitmask per path over the non-root vertices, grouped by endpoint.
    let mut groups: Vec<Vec<u64>> = vec![Vec::new(); targets.len()];
    for p in &paths {
        let t = targets.binary_search(p.last().unwrap()).unwrap();
        let mask = p[1..].iter().fold(0u64, |m, &x| m | (1 << x));
        groups[t].push(mask);
    }
    for g in &mut groups {
        g.sort_by_key(|m| m.count_ones());
    }

    let mut best = 0;
    branch(&groups, 0, 0, 0, &mut best);
    Ok(best)
}

fn branch(groups: &[Vec<u64>], i: usize, used: u64, count: usize, best: &mut usize) {
    *best = (*best).max(count);
    if i == groups.len() || count + (groups.len() - i) <= *best {
        return;
    }
    for &mask in &groups[i] {
        if used & mask == 0 {
            branch(groups, i + 1, used | mask, count + 1, best);
        }
    }
    branch(groups, i + 1, used, count, best);
}

#[derive(Clone, Copy)]
enum Backend {
    Flow,
    Enumerative,
}

/// Exact r-admissibility by greedy elimination: repeatedly remove a vertex
/// of minimum packing number (ties broken by id); the maximum over all
/// steps is the admissibility and the removal order reversed is a witness
/// ordering.
pub fn exact_adm(g: &Graph, r: u32) -> Result<ExactResult, Error> {
    exact_adm_with(g, r, Backend::Flow)
}

/// Same greedy elimination, but every packing number comes from the
/// exhaustive enumerator. Only for small graphs.
pub fn exact_adm_enumerative(g: &Graph, r: u32) -> Result<ExactResult, Error> {
    exact_adm_with(g, r, Backend::Enumerative)
}

fn exact_adm_with(g: &Graph, r: u32, backend: Backend) -> Result<ExactResult, Error> {
    check_radius(r)?;
    let n = g.n();
    let mut part = Partition::new(g);
    let pp_of = |g: &Graph, part: &Partition, v: Vertex| -> usize {
        match backend {
            Backend::Flow => pp_flow(g, part, v, r),
            Backend::Enumerative => exact_pp_enumerative(g, part, v, r).unwrap(),
        }
    };

    // All vertices start in L, so pp(v) = deg(v).
    let mut pp: Vec<usize> = (0..n).map(|v| g.degree(v as Vertex)).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = (0..n).map(|v| (pp[v], v as Vertex)).collect();

    let mut removals: Vec<Vertex> = Vec::with_capacity(n);
    let mut removal_pp: Vec<usize> = Vec::with_capacity(n);
    let mut value = 0usize;

    while let Some(&(val, u)) = queue.iter().next() {
        queue.remove(&(val, u));
        value = value.max(val);
        removals.push(u);
        removal_pp.push(val);
        part.move_to_r(u);

        // Only vertices within distance three of u can see their packing
        // number change.
        for w in ball(g, u, 3) {
            if w == u || !part.in_l(w) {
                continue;
            }
            let fresh = pp_of(g, &part, w);
            if fresh != pp[w as usize] {
                queue.remove(&(pp[w as usize], w));
                queue.insert((fresh, w));
                pp[w as usize] = fresh;
            }
        }
    }

    removals.reverse();
    removal_pp.reverse();
    Ok(ExactResult {
        value,
        ordering: removals,
        prefix_pp: removal_pp,
    })
}

fn ball(g: &Graph, center: Vertex, radius: u32) -> Vec<Vertex> {
    let mut dist: rustc_hash::FxHashMap<Vertex, u32> = rustc_hash::FxHashMap::default();
    dist.insert(center, 0);
    let mut queue = std::collections::VecDeque::from([center]);
    let mut out = vec![center];
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == radius {
            continue;
        }
        for &y in g.neighbors(x) {
            if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(y) {
                slot.insert(d + 1);
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out
}

/// Evaluates an ordering: the maximum packing number of any vertex relative
/// to its prefix. Errors if `ordering` is not a permutation of the vertex
/// set.
pub fn verify_ordering(g: &Graph, ordering: &[Vertex], r: u32) -> Result<usize, Error> {
    check_radius(r)?;
    let n = g.n();
    let mut seen = vec![false; n];
    if ordering.len() != n {
        return Err(Error::NotAPermutation);
    }
    for &v in ordering {
        if (v as usize) >= n || seen[v as usize] {
            return Err(Error::NotAPermutation);
        }
        seen[v as usize] = true;
    }

    // Walk the ordering back to front; moving a vertex to R afterwards
    // makes L exactly the prefix of the next vertex to evaluate.
    let mut part = Partition::new(g);
    let mut worst = 0usize;
    for &v in ordering.iter().rev() {
        worst = worst.max(pp_flow(g, &part, v, r));
        part.move_to_r(v);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_l(g: &Graph) -> Partition {
        Partition::new(g)
    }

    #[test]
    fn pp_star_center_is_degree() {
        let g = Graph::star(6);
        let part = all_l(&g);
        for r in 1..=3 {
            assert_eq!(exact_pp(&g, &part, 0, r).unwrap(), 6);
        }
    }

    #[test]
    fn pp_fix_aug_root() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4)]);
        let mut part = Partition::new(&g);
        part.move_to_r(1);
        part.move_to_r(2);
        assert_eq!(exact_pp(&g, &part, 0, 3).unwrap(), 2);
        assert_eq!(exact_pp_enumerative(&g, &part, 0, 3).unwrap(), 2);
    }

    #[test]
    fn pp_no_escape_is_zero() {
        // 0's neighbors are in R and lead nowhere in L within distance 3.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let mut part = Partition::new(&g);
        part.move_to_r(1);
        part.move_to_r(2);
        assert_eq!(exact_pp(&g, &part, 0, 3).unwrap(), 0);
    }

    #[test]
    fn pp_rejects_bad_radius() {
        let g = Graph::path(3);
        let part = all_l(&g);
        assert!(matches!(
            exact_pp(&g, &part, 0, 4),
            Err(Error::UnsupportedRadius(4))
        ));
        assert!(matches!(
            exact_pp(&g, &part, 0, 0),
            Err(Error::UnsupportedRadius(0))
        ));
    }

    #[test]
    fn adm_fixtures() {
        assert_eq!(exact_adm(&Graph::path(5), 3).unwrap().value, 1);
        assert_eq!(exact_adm(&Graph::complete(5), 3).unwrap().value, 4);
        assert_eq!(exact_adm(&Graph::petersen(), 3).unwrap().value, 3);
    }

    #[test]
    fn adm_witness_is_consistent() {
        for g in [Graph::petersen(), Graph::cycle(7), Graph::complete(4)] {
            let res = exact_adm(&g, 3).unwrap();
            assert_eq!(verify_ordering(&g, &res.ordering, 3).unwrap(), res.value);
            assert_eq!(res.prefix_pp.iter().copied().max().unwrap(), res.value);
        }
    }

    #[test]
    fn verify_ordering_fixtures() {
        let p5 = Graph::path(5);
        assert_eq!(verify_ordering(&p5, &[0, 1, 2, 3, 4], 3).unwrap(), 1);
        let k5 = Graph::complete(5);
        assert_eq!(verify_ordering(&k5, &[2, 0, 4, 1, 3], 3).unwrap(), 4);
    }

    #[test]
    fn verify_ordering_rejects_non_permutations() {
        let g = Graph::path(3);
        assert!(matches!(
            verify_ordering(&g, &[0, 1], 3),
            Err(Error::NotAPermutation)
        ));
        assert!(matches!(
            verify_ordering(&g, &[0, 1, 1], 3),
            Err(Error::NotAPermutation)
        ));
        assert!(matches!(
            verify_ordering(&g, &[0, 1, 7], 3),
            Err(Error::NotAPermutation)
        ));
    }

    /// Random graph from a boolean edge-indicator vector.
    fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
        (2..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |picks| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n as Vertex {
                    for v in u + 1..n as Vertex {
                        if picks[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, &edges)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Flow-based and enumerative packing numbers agree on random
        /// graphs and random partitions.
        #[test]
        fn flow_matches_enumeration(g in graph_strategy(9), moves in proptest::collection::vec(any::<u8>(), 0..6)) {
            let mut part = Partition::new(&g);
            for m in moves {
                let v = (m as usize % g.n()) as Vertex;
                if part.in_l(v) && part.l_size() > 1 {
                    part.move_to_r(v);
                }
            }
            for v in g.vertices() {
                if !part.in_l(v) {
                    continue;
                }
                for r in 1..=3 {
                    prop_assert_eq!(
                        exact_pp(&g, &part, v, r).unwrap(),
                        exact_pp_enumerative(&g, &part, v, r).unwrap()
                    );
                }
            }
        }

        /// adm_1 <= adm_2 <= adm_3, and adm_1 equals the degeneracy.
        #[test]
        fn adm_monotone_in_radius(g in graph_strategy(12)) {
            let a1 = exact_adm(&g, 1).unwrap().value;
            let a2 = exact_adm(&g, 2).unwrap().value;
            let a3 = exact_adm(&g, 3).unwrap().value;
            prop_assert!(a1 <= a2 && a2 <= a3);
            prop_assert_eq!(a1, crate::graph::degeneracy(&g).0);
        }

        /// Shrinking L can only shrink packing numbers.
        #[test]
        fn pp_monotone_under_l_shrinking(g in graph_strategy(9), order in proptest::collection::vec(any::<u16>(), 1..9)) {
            let mut part = Partition::new(&g);
            let mut last: Option<Vec<usize>> = None;
            for m in order {
                let v = (m as usize % g.n()) as Vertex;
                if !part.in_l(v) {
                    continue;
                }
                part.move_to_r(v);
                let now: Vec<usize> = g
                    .vertices()
                    .map(|w| if part.in_l(w) { exact_pp(&g, &part, w, 3).unwrap() } else { 0 })
                    .collect();
                if let Some(prev) = last {
                    for w in g.vertices() {
                        if part.in_l(w) {
                            prop_assert!(now[w as usize] <= prev[w as usize]);
                        }
                    }
                }
                last = Some(now);
            }
        }
    }
}
