//! Seeded instance generators. The same arguments always give the same instance.

use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, HypergraphInstance, Id, Tournament};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("d = {d} does not divide n = {n}")]
    NotDivisible { n: usize, d: usize },
    #[error("requested {requested} distinct sets but only {available} exist")]
    TooManySets { requested: u128, available: u128 },
    #[error("rank d = {d} is outside 1..={n}")]
    BadRank { n: usize, d: usize },
    #[error("edge probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("requested {requested} flips but only {available} pairs exist")]
    TooManyFlips { requested: usize, available: usize },
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `n/d` disjoint sets of size `d`: the instance where the LP support bound is tight.
pub fn gen_partition_tight(n: usize, d: usize) -> Result<HypergraphInstance, GenError> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(GenError::NotDivisible { n, d });
    }
    let family = (0..n / d)
        .map(|b| (b * d + 1..=b * d + d).map(|e| e as Id).collect::<Vec<_>>())
        .collect();
    Ok(HypergraphInstance::from_sorted_parts(d, (1..=n as Id).collect(), family))
}

/// `m` distinct uniformly random `d`-subsets of `1..=n`. The universe is
/// their union, so it may skip ids.
pub fn gen_random_hs(n: usize, m: usize, d: usize, seed: u64) -> Result<HypergraphInstance, GenError> {
    if d == 0 || d > n {
        return Err(GenError::BadRank { n, d });
    }
    let available = binomial(n as u128, d as u128);
    if m as u128 > available {
        return Err(GenError::TooManySets {
            requested: m as u128,
            available,
        });
    }
    let mut rng = rng(seed);
    let mut family: BTreeSet<Vec<Id>> = BTreeSet::new();
    if (m as u128) * 2 <= available {
        while family.len() < m {
            let mut set: Vec<Id> = index::sample(&mut rng, n, d).into_iter().map(|i| i as Id + 1).collect();
            set.sort_unstable();
            family.insert(set);
        }
    } else {
        // Dense request: enumerate everything (at most 2m subsets) and pick m.
        let mut all = Vec::new();
        let mut combo: Vec<usize> = (0..d).collect();
        loop {
            all.push(combo.iter().map(|&i| i as Id + 1).collect::<Vec<_>>());
            let Some(pos) = (0..d).rev().find(|&i| combo[i] < n - d + i) else {
                break;
            };
            combo[pos] += 1;
            for j in pos + 1..d {
                combo[j] = combo[j - 1] + 1;
            }
        }
        all.shuffle(&mut rng);
        family.extend(all.into_iter().take(m));
    }
    let universe: BTreeSet<Id> = family.iter().flatten().copied().collect();
    Ok(HypergraphInstance::from_sorted_parts(
        d,
        universe.into_iter().collect(),
        family.into_iter().collect(),
    ))
}

/// Erdős–Rényi `G(n, p)` on `1..=n`.
pub fn gen_random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::BadProbability(p));
    }
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 1..=n as Id {
        for v in u + 1..=n as Id {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::dense(n, edges).expect("generated edges are simple"))
}

/// Each arc oriented by a fair coin.
pub fn gen_random_tournament(n: usize, seed: u64) -> Tournament {
    let mut rng = rng(seed);
    let mut arcs = Vec::new();
    for u in 1..=n as Id {
        for v in u + 1..=n as Id {
            arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
        }
    }
    Tournament::dense(n, arcs).expect("generated arcs form a tournament")
}

/// Transitive tournament along a random order, which is returned alongside.
pub fn gen_transitive_tournament(n: usize, seed: u64) -> (Tournament, Vec<Id>) {
    let mut order: Vec<Id> = (1..=n as Id).collect();
    order.shuffle(&mut rng(seed));
    let t = Tournament::transitive(&order).expect("order is a permutation");
    (t, order)
}

/// Disjoint cliques of the given sizes with `flips` distinct vertex pairs toggled.
///
/// Vertices are numbered consecutively clique by clique.
pub fn gen_cluster_noise(sizes: &[usize], flips: usize, seed: u64) -> Result<Graph, GenError> {
    let n: usize = sizes.iter().sum();
    let pairs: Vec<(Id, Id)> = (1..=n as Id).flat_map(|u| (u + 1..=n as Id).map(move |v| (u, v))).collect();
    if flips > pairs.len() {
        return Err(GenError::TooManyFlips {
            requested: flips,
            available: pairs.len(),
        });
    }
    let mut block = Vec::with_capacity(n + 1);
    block.push(usize::MAX);
    for (b, &s) in sizes.iter().enumerate() {
        block.extend(std::iter::repeat_n(b, s));
    }
    let mut edges: BTreeSet<(Id, Id)> = pairs
        .iter()
        .copied()
        .filter(|&(u, v)| block[u as usize] == block[v as usize])
        .collect();
    for i in index::sample(&mut rng(seed), pairs.len(), flips) {
        let p = pairs[i];
        if !edges.remove(&p) {
            edges.insert(p);
        }
    }
    Ok(Graph::dense(n, edges).expect("generated edges are simple"))
}
