//! Linear-vertex lossy kernel for Cluster Vertex Deletion.
//!
//! The LP support already breaks every induced P3. Marking then isolates
//! vertices of value 1 whose P3 matchings are large (`D`, deleted outright),
//! and the cliques left outside `support ∪ M` become modules of `G - D`. Each
//! such clique is shrunk to the size of its neighbourhood; the lift swaps a
//! fully selected shrunk clique for that neighbourhood.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::KernelError;
use crate::instances::{cvd_to_hs, verify_solution, Graph, Id, ProblemKind, ProblemRef, Solution, Verdict};
use crate::lp::{self, RationalAssignment};
use crate::marking::{cap_for, check_epsilon, check_optimal, mark_obstructions, Marking};
use crate::rational::{fmt_q, ratio, serde_q, Q};

pub type CvdMarking = Marking;

/// Whether `{v, w, r}` induces a path on three vertices.
fn induced_p3(g: &Graph, v: Id, w: Id, r: Id) -> bool {
    let edges = [g.adjacent(v, w), g.adjacent(v, r), g.adjacent(w, r)];
    edges.iter().filter(|&&e| e).count() == 2
}

/// Marking for CVD: obstructions are induced P3s, the cap is `⌈1/ε⌉`.
pub fn cvd_marking(epsilon: &Q, g: &Graph, alpha: &RationalAssignment) -> Result<CvdMarking, KernelError> {
    check_epsilon(epsilon)?;
    check_optimal(&cvd_to_hs(g), alpha)?;
    Ok(mark_obstructions(&g.vertex_set(), alpha, cap_for(epsilon), |v, w, r| {
        induced_p3(g, v, w, r)
    }))
}

/// One clique of `G - (support ∪ M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueRecord {
    pub vertices: BTreeSet<Id>,
    pub kept: BTreeSet<Id>,
    pub removed: BTreeSet<Id>,
    /// `N_{G-D}(V(C))`.
    pub neighborhood: BTreeSet<Id>,
    /// `N_G(V(C))`, added by the lift when the clique is swapped out.
    pub neighborhood_g: BTreeSet<Id>,
}

#[derive(Clone, Debug)]
pub struct CvdKernelResult {
    pub reduced: Graph,
    pub d: BTreeSet<Id>,
    /// Cliques ordered by their smallest vertex.
    pub clique_map: Vec<CliqueRecord>,
    pub alpha: RationalAssignment,
    pub marking: CvdMarking,
    pub epsilon: Q,
}

impl CvdKernelResult {
    pub fn frac(&self) -> &Q {
        self.alpha.objective()
    }

    /// `max(6, 4⌈1/ε⌉)·frac`.
    pub fn vertex_bound(&self) -> Q {
        cvd_vertex_bound(&self.epsilon, self.frac())
    }

    pub fn within_bound(&self) -> bool {
        Q::from_integer(self.reduced.n().into()) <= self.vertex_bound()
    }

    /// Reduced graph relabelled to `1..=n'` plus everything the lift needs.
    pub fn export(&self) -> (Graph, CvdLiftContext) {
        let (dense, id_map) = self.reduced.densify();
        let ctx = CvdLiftContext {
            epsilon: self.epsilon.clone(),
            frac: self.frac().clone(),
            id_map,
            d: self.d.clone(),
            clique_map: self.clique_map.clone(),
            marking: self.marking.clone(),
        };
        (dense, ctx)
    }
}

/// `max(6, 4⌈1/ε⌉)·frac`, which is `max(6, 4/ε)·frac` when `1/ε` is an integer.
pub fn cvd_vertex_bound(epsilon: &Q, frac: &Q) -> Q {
    let four_cap = Q::from_integer((4 * cap_for(epsilon)).into());
    let six = Q::from_integer(6.into());
    six.max(four_cap) * frac
}

/// LP, marking, deletion of `D`, and clique shrinking.
pub fn cvd_reduce(g: &Graph, epsilon: &Q) -> Result<CvdKernelResult, KernelError> {
    check_epsilon(epsilon)?;
    let alpha = lp::solve_primal(&cvd_to_hs(g));
    let marking = mark_obstructions(&g.vertex_set(), &alpha, cap_for(epsilon), |v, w, r| induced_p3(g, v, w, r));
    let d = marking.d.clone();
    let outside: BTreeSet<Id> = marking.support.union(&marking.m_all).copied().collect();
    let g_minus_d = g.remove_vertices(&d);
    let mut clique_map = Vec::new();
    let mut removed_all = BTreeSet::new();
    for comp in g.remove_vertices(&outside).components() {
        let neighborhood = g_minus_d.open_neighborhood(&comp);
        let neighborhood_g = g.open_neighborhood(&comp);
        let keep = comp.len().min(neighborhood.len());
        let kept: BTreeSet<Id> = comp.iter().take(keep).copied().collect();
        let removed: BTreeSet<Id> = comp.iter().skip(keep).copied().collect();
        removed_all.extend(removed.iter().copied());
        clique_map.push(CliqueRecord {
            vertices: comp,
            kept,
            removed,
            neighborhood,
            neighborhood_g,
        });
    }
    let reduced = g_minus_d.remove_vertices(&removed_all);
    Ok(CvdKernelResult {
        reduced,
        d,
        clique_map,
        alpha,
        marking,
        epsilon: epsilon.clone(),
    })
}

fn lift_core(d: &BTreeSet<Id>, cliques: &[CliqueRecord], s_prime: &BTreeSet<Id>) -> BTreeSet<Id> {
    let mut s = s_prime.clone();
    for c in cliques {
        if !c.removed.is_empty() && c.kept.is_subset(s_prime) {
            for v in &c.kept {
                s.remove(v);
            }
            s.extend(c.neighborhood_g.iter().copied());
        }
    }
    s.extend(d.iter().copied());
    s
}

/// Lifts a solution of the reduced graph (original ids) to a solution of `g`.
pub fn cvd_lift(g: &Graph, result: &CvdKernelResult, s_prime: &Solution) -> Result<Solution, KernelError> {
    let s_prime = s_prime.clone().with_kind(ProblemKind::Cvd);
    if let Verdict::Invalid(o) = verify_solution(ProblemRef::Cvd(&result.reduced), &s_prime) {
        return Err(KernelError::InvalidReducedSolution(o));
    }
    let s = Solution::new(ProblemKind::Cvd, lift_core(&result.d, &result.clique_map, &s_prime.elements));
    match verify_solution(ProblemRef::Cvd(g), &s) {
        Verdict::Valid => Ok(s),
        Verdict::Invalid(o) => Err(KernelError::LiftInvalid(o)),
    }
}

/// Serializable lift data for a kernel written to disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CvdLiftContext {
    #[serde(with = "serde_q")]
    pub epsilon: Q,
    #[serde(with = "serde_q")]
    pub frac: Q,
    /// Reduced vertex `i + 1` is original vertex `id_map[i]`.
    pub id_map: Vec<Id>,
    pub d: BTreeSet<Id>,
    pub clique_map: Vec<CliqueRecord>,
    pub marking: CvdMarking,
}

impl CvdLiftContext {
    /// Lifts a solution given in reduced (dense) ids. Ids outside the reduced
    /// graph are rejected.
    pub fn lift(&self, s_prime: &Solution) -> Result<Solution, Id> {
        let mut original = BTreeSet::new();
        for &v in &s_prime.elements {
            let i = (v as usize).checked_sub(1).filter(|&i| i < self.id_map.len()).ok_or(v)?;
            original.insert(self.id_map[i]);
        }
        Ok(Solution::new(ProblemKind::Cvd, lift_core(&self.d, &self.clique_map, &original)))
    }
}

/// A violated structural property of a CVD kernel run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CvdViolation {
    NotClique { clique: Vec<Id> },
    NotModule { clique: Vec<Id>, vertex: Id },
    NeighborhoodSplit { vertex: Id },
    SupportBound { support: usize, bound: String },
}

/// Checks that the cliques of `G - (support ∪ M)` are modules of `G - D`, that
/// every support vertex outside `D` sees at most one of them (and all of it),
/// and that `|support| <= 3frac - 2|α⁻¹(1)|`.
pub fn cvd_structure_checks(g: &Graph, alpha: &RationalAssignment, marking: &CvdMarking) -> Vec<CvdViolation> {
    let mut out = Vec::new();
    let outside: BTreeSet<Id> = marking.support.union(&marking.m_all).copied().collect();
    let comps = g.remove_vertices(&outside).components();
    let mut owner: BTreeMap<Id, usize> = BTreeMap::new();
    for (i, c) in comps.iter().enumerate() {
        let list: Vec<Id> = c.iter().copied().collect();
        if !g.is_clique(c) {
            out.push(CvdViolation::NotClique { clique: list.clone() });
        }
        for x in g.vertices().filter(|x| !c.contains(x) && !marking.d.contains(x)) {
            let hits = c.iter().filter(|&&y| g.adjacent(x, y)).count();
            if hits != 0 && hits != c.len() {
                out.push(CvdViolation::NotModule {
                    clique: list.clone(),
                    vertex: x,
                });
            }
        }
        owner.extend(c.iter().map(|&v| (v, i)));
    }
    for &v in marking.support.difference(&marking.d) {
        let outer: BTreeSet<Id> = g.neighbors(v).iter().copied().filter(|u| !outside.contains(u)).collect();
        let Some(&first) = outer.iter().next() else { continue };
        if outer != comps[owner[&first]] {
            out.push(CvdViolation::NeighborhoodSplit { vertex: v });
        }
    }
    let bound = Q::from_integer(3.into()) * alpha.objective() - ratio(2 * marking.ones.len(), 1);
    if Q::from_integer(marking.support.len().into()) > bound {
        out.push(CvdViolation::SupportBound {
            support: marking.support.len(),
            bound: fmt_q(&bound),
        });
    }
    out
}
