//! Matching-based marking shared by the CVD and FVST kernels.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::KernelError;
use crate::instances::{Graph, HypergraphInstance, Id};
use crate::lp::{self, RationalAssignment};
use crate::rational::{ceil_usize, fmt_q, Q};
use crate::solvers::maximal_matching;

/// Output of the marking procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marking {
    /// Largest matching kept per vertex.
    pub cap: usize,
    pub support: BTreeSet<Id>,
    /// `α⁻¹(1)`.
    pub ones: BTreeSet<Id>,
    /// Kept matching `ν_v` per vertex of `α⁻¹(1)`.
    pub nu: BTreeMap<Id, Vec<(Id, Id)>>,
    /// `mark(v)`: endpoints of `ν_v`.
    pub mark: BTreeMap<Id, BTreeSet<Id>>,
    /// Vertices whose maximal matching reached `cap` edges.
    pub d: BTreeSet<Id>,
    /// Union of all mark sets.
    pub m_all: BTreeSet<Id>,
}

impl Marking {
    /// Vertices outside `support ∪ M`.
    pub fn unmarked(&self, vertices: impl Iterator<Item = Id>) -> BTreeSet<Id> {
        vertices.filter(|v| !self.support.contains(v) && !self.m_all.contains(v)).collect()
    }
}

/// `⌈1/x⌉` for `0 < x < 1`.
pub(crate) fn cap_for(x: &Q) -> usize {
    ceil_usize(&x.recip())
}

pub(crate) fn check_epsilon(eps: &Q) -> Result<(), KernelError> {
    if *eps <= Q::from_integer(0.into()) || *eps >= Q::from_integer(1.into()) {
        return Err(KernelError::BadEpsilon(fmt_q(eps)));
    }
    Ok(())
}

/// Errors unless `alpha` is an optimal solution of `inst`'s LP.
pub(crate) fn check_optimal(inst: &HypergraphInstance, alpha: &RationalAssignment) -> Result<(), KernelError> {
    let dual = lp::solve_dual(inst);
    if lp::check_optimal_pair(alpha, &dual, inst)? {
        Ok(())
    } else {
        Err(KernelError::NotOptimal)
    }
}

/// For every `v ∈ α⁻¹(1)` in ascending order: match the pairs `{w, r}` of
/// not-yet-marked vertices outside the support for which `{v, w, r}` is an
/// obstruction, keep the `cap` lexicographically first matching edges, and
/// mark their endpoints. A vertex whose matching reaches `cap` edges joins `D`.
pub(crate) fn mark_obstructions(
    vertices: &BTreeSet<Id>,
    alpha: &RationalAssignment,
    cap: usize,
    obstruction: impl Fn(Id, Id, Id) -> bool,
) -> Marking {
    let support = alpha.support();
    let ones = alpha.ones();
    let mut m = Marking {
        cap,
        support: support.clone(),
        ones: ones.clone(),
        nu: BTreeMap::new(),
        mark: BTreeMap::new(),
        d: BTreeSet::new(),
        m_all: BTreeSet::new(),
    };
    for &v in &ones {
        let avail: Vec<Id> = vertices
            .iter()
            .copied()
            .filter(|u| !support.contains(u) && !m.m_all.contains(u))
            .collect();
        let mut edges = Vec::new();
        for (i, &w) in avail.iter().enumerate() {
            for &r in &avail[i + 1..] {
                if obstruction(v, w, r) {
                    edges.push((w, r));
                }
            }
        }
        let h_v = Graph::new(avail.iter().copied(), edges).expect("auxiliary graph is simple");
        let mut mu = maximal_matching(&h_v);
        if mu.len() >= cap {
            m.d.insert(v);
            mu.truncate(cap);
        }
        let marked: BTreeSet<Id> = mu.iter().flat_map(|&(a, b)| [a, b]).collect();
        m.m_all.extend(marked.iter().copied());
        m.mark.insert(v, marked);
        m.nu.insert(v, mu);
    }
    m
}
