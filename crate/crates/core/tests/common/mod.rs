//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use lossy_hs::instances::{Graph, HypergraphInstance, Id, Tournament};

/// Smallest hitting set by enumerating subsets in order of size.
/// Only for universes of at most 25 elements.
pub fn brute_force_opt(inst: &HypergraphInstance) -> (usize, BTreeSet<Id>) {
    let ids: Vec<Id> = inst.universe().to_vec();
    assert!(ids.len() <= 25, "brute force is limited to 25 elements");
    let index: BTreeMap<Id, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let masks: Vec<u32> = inst
        .family()
        .iter()
        .map(|s| s.iter().fold(0u32, |m, e| m | 1 << index[e]))
        .collect();
    let n = ids.len() as u32;
    for k in 0..=n {
        if let Some(mask) = first_hitting_mask(&masks, n, k) {
            let set = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ids[i as usize]).collect();
            return (k as usize, set);
        }
    }
    unreachable!("the whole universe hits every set")
}

fn first_hitting_mask(sets: &[u32], n: u32, k: u32) -> Option<u32> {
    if k == 0 {
        return sets.is_empty().then_some(0);
    }
    let mut mask: u32 = (1u32 << k) - 1;
    let limit: u64 = 1u64 << n;
    while (mask as u64) < limit {
        if sets.iter().all(|s| s & mask != 0) {
            return Some(mask);
        }
        // Gosper's hack: next mask with the same popcount.
        let c = mask & mask.wrapping_neg();
        let r = mask.wrapping_add(c);
        if r == 0 {
            break;
        }
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    None
}

/// Whether every connected component of `g - s` is a clique.
pub fn is_cluster_after(g: &Graph, s: &BTreeSet<Id>) -> bool {
    let h = g.remove_vertices(s);
    let mut seen = BTreeSet::new();
    for v in h.vertices() {
        if seen.contains(&v) {
            continue;
        }
        let mut comp = vec![v];
        seen.insert(v);
        let mut i = 0;
        while i < comp.len() {
            for &u in h.neighbors(comp[i]) {
                if seen.insert(u) {
                    comp.push(u);
                }
            }
            i += 1;
        }
        let k = comp.len();
        if comp.iter().any(|&u| h.neighbors(u).len() != k - 1) {
            return false;
        }
    }
    true
}

/// Whether `t - s` has no directed cycle (depth-first search).
pub fn is_acyclic_after(t: &Tournament, s: &BTreeSet<Id>) -> bool {
    let alive: Vec<Id> = t.vertices().filter(|v| !s.contains(v)).collect();
    let mut state: BTreeMap<Id, u8> = alive.iter().map(|&v| (v, 0)).collect();
    fn visit(t: &Tournament, v: Id, state: &mut BTreeMap<Id, u8>) -> bool {
        state.insert(v, 1);
        for &u in t.out_neighbors(v) {
            match state.get(&u).copied() {
                Some(1) => return false,
                Some(0) if !visit(t, u, state) => return false,
                _ => {}
            }
        }
        state.insert(v, 2);
        true
    }
    for &v in &alive {
        if state[&v] == 0 && !visit(t, v, &mut state) {
            return false;
        }
    }
    true
}

/// Whether `s` covers every edge of `g`.
pub fn is_vertex_cover(g: &Graph, s: &BTreeSet<Id>) -> bool {
    g.edges().all(|(u, v)| s.contains(&u) || s.contains(&v))
}

/// Tournament `1 -> 2 -> ... -> n` with the listed pairs reversed.
pub fn near_transitive(n: usize, flipped: &[(Id, Id)]) -> Tournament {
    let mut arcs = Vec::new();
    for i in 1..=n as Id {
        for j in i + 1..=n as Id {
            if flipped.contains(&(i, j)) {
                arcs.push((j, i));
            } else {
                arcs.push((i, j));
            }
        }
    }
    Tournament::dense(n, arcs).unwrap()
}

/// Seeded near-transitive tournament with `flips` random reversals.
pub fn random_near_transitive(n: usize, flips: usize, seed: u64) -> Tournament {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for _ in 0..flips {
        let i = rng.gen_range(1..n as Id);
        let j = rng.gen_range(i + 1..=n as Id);
        pairs.push((i, j));
    }
    near_transitive(n, &pairs)
}
