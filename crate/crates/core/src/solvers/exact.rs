//! Exact minimum hitting set by branch and bound.
//!
//! Elements are compressed to bit positions (ascending id order) and sets to
//! bitmasks. Each node applies unit propagation, a greedy disjoint-packing
//! lower bound, and forces every element whose exclusion would let the packing
//! grow past the incumbent. Branching takes a smallest residual set and tries
//! its elements in order of residual degree (ties to the smaller id).

use super::bits::Bits;
use super::SolverError;
use crate::instances::{HypergraphInstance, Id, Solution};

/// Largest number of distinct set elements the exact solver accepts.
pub const MAX_EXACT_ELEMENTS: usize = 1024;

/// Minimum hitting set; `BudgetExceeded` when every hitting set is larger than `budget`.
///
/// Deterministic: equal instances give equal solutions. Among several optima the
/// search prefers smaller ids but does not guarantee the lexicographically least one.
pub fn exact_hs(inst: &HypergraphInstance, budget: Option<usize>) -> Result<Solution, SolverError> {
    let elems: Vec<Id> = inst.covered_elements().into_iter().collect();
    let k = elems.len();
    let chosen = match k {
        0 => Some(Vec::new()),
        _ if k <= 64 => run::<1>(inst, &elems, budget),
        _ if k <= 128 => run::<2>(inst, &elems, budget),
        _ if k <= 256 => run::<4>(inst, &elems, budget),
        _ if k <= 512 => run::<8>(inst, &elems, budget),
        _ if k <= MAX_EXACT_ELEMENTS => run::<16>(inst, &elems, budget),
        _ => {
            return Err(SolverError::TooLarge {
                elements: k,
                max: MAX_EXACT_ELEMENTS,
            })
        }
    };
    match chosen {
        Some(c) if budget.is_none_or(|b| c.len() <= b) => Ok(Solution::hs(c)),
        _ => Err(SolverError::BudgetExceeded {
            budget: budget.unwrap_or(0),
        }),
    }
}

fn run<const W: usize>(inst: &HypergraphInstance, elems: &[Id], budget: Option<usize>) -> Option<Vec<Id>> {
    let index = |e: &Id| elems.binary_search(e).unwrap();
    let mut sets: Vec<Bits<W>> = inst
        .family()
        .iter()
        .map(|s| {
            let mut b = Bits::EMPTY;
            for e in s {
                b.insert(index(e));
            }
            b
        })
        .collect();
    // A set containing another set is implied by it.
    sets.sort_by_key(|s| s.len());
    let mut minimal: Vec<Bits<W>> = Vec::with_capacity(sets.len());
    for s in sets {
        if !minimal.iter().any(|t| t.is_subset(&s)) {
            minimal.push(s);
        }
    }

    let greedy = greedy_cover(&minimal, elems.len());
    let mut search = Search {
        best: None,
        best_size: budget.map_or(usize::MAX, |b| b + 1),
        nelems: elems.len(),
    };
    if greedy.len() < search.best_size {
        search.best_size = greedy.len();
        search.best = Some(greedy);
    }
    search.node(minimal, Bits::EMPTY, 0);
    search.best.map(|b| b.iter().map(|i| elems[i]).collect())
}

/// Max-degree greedy followed by removal of redundant picks.
fn greedy_cover<const W: usize>(sets: &[Bits<W>], nelems: usize) -> Bits<W> {
    let mut chosen = Bits::EMPTY;
    let mut open: Vec<Bits<W>> = sets.to_vec();
    let mut deg = vec![0usize; nelems];
    while !open.is_empty() {
        deg.iter_mut().for_each(|d| *d = 0);
        for s in &open {
            for i in s.iter() {
                deg[i] += 1;
            }
        }
        let best = (0..nelems).max_by_key(|&i| (deg[i], std::cmp::Reverse(i))).unwrap();
        chosen.insert(best);
        let b = Bits::single(best);
        open.retain(|s| !s.intersects(&b));
    }
    let picks: Vec<usize> = chosen.iter().collect();
    for i in picks.into_iter().rev() {
        let without = chosen.minus(&Bits::single(i));
        if sets.iter().all(|s| s.intersects(&without)) {
            chosen = without;
        }
    }
    chosen
}

struct Search<const W: usize> {
    best: Option<Bits<W>>,
    best_size: usize,
    nelems: usize,
}

impl<const W: usize> Search<W> {
    /// `residual`: sets not hit by `chosen`, with excluded elements removed; none empty.
    fn node(&mut self, mut residual: Vec<Bits<W>>, mut chosen: Bits<W>, mut size: usize) {
        loop {
            while let Some(&unit) = residual.iter().find(|s| s.len() == 1) {
                chosen = chosen.union(&unit);
                size += 1;
                residual.retain(|s| !s.intersects(&unit));
            }
            if size >= self.best_size {
                return;
            }
            if residual.is_empty() {
                self.best = Some(chosen);
                self.best_size = size;
                return;
            }
            residual.sort_by_key(|s| s.len());
            let mut union = Bits::EMPTY;
            let mut packing = Vec::new();
            for s in &residual {
                if !s.intersects(&union) {
                    union = union.union(s);
                    packing.push(*s);
                }
            }
            let lb = packing.len();
            if size + lb >= self.best_size {
                return;
            }
            match self.forced(&residual, &packing, &union, size + lb) {
                Some(v) => {
                    let vb = Bits::single(v);
                    chosen = chosen.union(&vb);
                    size += 1;
                    residual.retain(|s| !s.intersects(&vb));
                }
                None => break,
            }
        }

        // Smallest residual set; `residual` is sorted by size.
        let pivot = residual[0];
        let mut deg = vec![0usize; self.nelems];
        for s in &residual {
            for i in s.iter() {
                deg[i] += 1;
            }
        }
        let mut order: Vec<usize> = pivot.iter().collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(deg[i]), i));

        let mut excluded = Bits::EMPTY;
        for e in order {
            let eb = Bits::single(e);
            let child: Vec<Bits<W>> = residual.iter().filter(|s| !s.contains(e)).map(|s| s.minus(&excluded)).collect();
            if child.iter().all(|s| !s.is_empty()) {
                self.node(child, chosen.union(&eb), size + 1);
            }
            excluded = excluded.union(&eb);
        }
    }

    /// An element every improving solution must contain, if one is detected.
    fn forced(&self, residual: &[Bits<W>], packing: &[Bits<W>], union: &Bits<W>, bound: usize) -> Option<usize> {
        for p in packing {
            for v in p.iter() {
                let vb = Bits::single(v);
                let mut covered = union.minus(&vb);
                let mut extra = 0;
                for s in residual.iter().filter(|s| s.contains(v)) {
                    let rest = s.minus(&vb);
                    if rest.is_empty() {
                        return Some(v);
                    }
                    if !rest.intersects(&covered) {
                        covered = covered.union(&rest);
                        extra += 1;
                    }
                }
                if bound + extra >= self.best_size {
                    return Some(v);
                }
            }
        }
        None
    }
}
