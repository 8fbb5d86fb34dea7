//! Linear-vertex lossy kernel for Feedback Vertex Set in Tournaments.
//!
//! Removing the LP support leaves an acyclic tournament with a unique
//! topological order `<_α`. After marking triangle matchings, every support
//! vertex outside `D` has a well-defined slot (its position) in that order
//! relative to the unmarked vertices. A second marking reserves the nearest
//! unmarked vertices on both sides of each slot; everything else unmarked
//! (`X`) is deleted together with `D`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::KernelError;
use crate::instances::{fvst_to_hs, verify_solution, Id, ProblemKind, ProblemRef, Solution, Tournament, Verdict};
use crate::lp::{self, RationalAssignment};
use crate::marking::{cap_for, check_epsilon, check_optimal, mark_obstructions, Marking};
use crate::rational::{ratio, serde_q, Q};

/// The topological order of `G - support(α)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaOrder {
    pub order: Vec<Id>,
    pub rank: BTreeMap<Id, usize>,
}

pub fn alpha_order(t: &Tournament, alpha: &RationalAssignment) -> Result<AlphaOrder, KernelError> {
    let order = t
        .remove_vertices(&alpha.support())
        .topological_order()
        .ok_or(KernelError::NotAcyclic)?;
    let rank = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    Ok(AlphaOrder { order, rank })
}

/// Slot of a vertex among the unmarked vertices: `slot` of them precede it.
/// `after` is the last of those, `None` for the 0-position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Position {
    pub slot: usize,
    pub after: Option<Id>,
}

/// The position of `v` relative to `unmarked` (in `<_α` order), if `v` fits.
pub fn position(t: &Tournament, unmarked: &[Id], v: Id) -> Option<Position> {
    let slot = unmarked.partition_point(|&w| t.has_arc(w, v));
    let fits = unmarked[..slot].iter().all(|&w| t.has_arc(w, v)) && unmarked[slot..].iter().all(|&w| t.has_arc(v, w));
    fits.then(|| Position {
        slot,
        after: slot.checked_sub(1).map(|i| unmarked[i]),
    })
}

/// `δ = ε/3 - 2ε²/9` and `δ' = 2ε/3`.
pub fn fvst_parameters(epsilon: &Q) -> (Q, Q) {
    let delta = epsilon / Q::from_integer(3.into()) - epsilon * epsilon * ratio(2, 9);
    let delta_prime = epsilon * ratio(2, 3);
    (delta, delta_prime)
}

/// `(1 + δ)(1 + δ') <= 1 + ε`, evaluated exactly.
pub fn composition_ok(epsilon: &Q) -> bool {
    let one = Q::from_integer(1.into());
    let (delta, delta_prime) = fvst_parameters(epsilon);
    (&one + delta) * (&one + delta_prime) <= one + epsilon
}

fn triangle(t: &Tournament) -> impl Fn(Id, Id, Id) -> bool + '_ {
    move |v, w, r| t.is_triangle(v, w, r)
}

/// Marking for FVST: obstructions are triangles, the cap is `⌈1/δ⌉`.
pub fn fvst_marking(delta: &Q, t: &Tournament, alpha: &RationalAssignment) -> Result<Marking, KernelError> {
    check_epsilon(delta)?;
    check_optimal(&fvst_to_hs(t), alpha)?;
    Ok(mark_obstructions(&t.vertex_set(), alpha, cap_for(delta), triangle(t)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FvstMarking {
    pub base: Marking,
    pub order: AlphaOrder,
    /// `V ∖ (support ∪ M)` in `<_α` order.
    pub unmarked: Vec<Id>,
    /// Positions of `(support ∖ D) ∪ M`.
    pub positions: BTreeMap<Id, Position>,
    pub cap_prime: usize,
    /// Ascending in `<_α`.
    pub backw: BTreeMap<Id, Vec<Id>>,
    pub forw: BTreeMap<Id, Vec<Id>>,
    pub m_hat: BTreeSet<Id>,
}

impl FvstMarking {
    /// `(support ∖ D) ∪ M`.
    pub fn core(&self) -> BTreeSet<Id> {
        self.base
            .support
            .difference(&self.base.d)
            .chain(&self.base.m_all)
            .copied()
            .collect()
    }

    fn unmarked_index(&self) -> BTreeMap<Id, usize> {
        self.unmarked.iter().enumerate().map(|(i, &w)| (w, i)).collect()
    }
}

/// Positions plus reservation of up to `⌈1/δ'⌉` unmarked vertices on each
/// side of every support vertex outside `D`, in ascending id order.
pub fn fvst_extra_marking(
    delta_prime: &Q,
    t: &Tournament,
    alpha: &RationalAssignment,
    marking: &Marking,
) -> Result<FvstMarking, KernelError> {
    check_epsilon(delta_prime)?;
    let order = alpha_order(t, alpha)?;
    let unmarked: Vec<Id> = order.order.iter().copied().filter(|v| !marking.m_all.contains(v)).collect();
    let mut positions = BTreeMap::new();
    for &v in marking.support.difference(&marking.d).chain(&marking.m_all) {
        positions.insert(v, position(t, &unmarked, v).ok_or(KernelError::PositionUndefined(v))?);
    }
    let cap_prime = cap_for(delta_prime);
    let mut reserved = BTreeSet::new();
    let mut backw = BTreeMap::new();
    let mut forw = BTreeMap::new();
    for v in marking.support.difference(&marking.d) {
        let slot = positions[v].slot;
        let mut b: Vec<Id> = unmarked[..slot]
            .iter()
            .rev()
            .copied()
            .filter(|w| !reserved.contains(w))
            .take(cap_prime)
            .collect();
        b.reverse();
        reserved.extend(b.iter().copied());
        let f: Vec<Id> = unmarked[slot..]
            .iter()
            .copied()
            .filter(|w| !reserved.contains(w))
            .take(cap_prime)
            .collect();
        reserved.extend(f.iter().copied());
        backw.insert(*v, b);
        forw.insert(*v, f);
    }
    Ok(FvstMarking {
        base: marking.clone(),
        order,
        unmarked,
        positions,
        cap_prime,
        backw,
        forw,
        m_hat: reserved,
    })
}

#[derive(Clone, Debug)]
pub struct FvstKernelResult {
    pub reduced: Tournament,
    pub d: BTreeSet<Id>,
    pub x: BTreeSet<Id>,
    pub marking: FvstMarking,
    pub alpha: RationalAssignment,
    pub epsilon: Q,
    pub delta: Q,
    pub delta_prime: Q,
}

pub fn fvst_vertex_bound(epsilon: &Q, frac: &Q) -> Q {
    (Q::from_integer(13.into()) + Q::from_integer(9.into()) / epsilon) * frac
}

impl FvstKernelResult {
    pub fn frac(&self) -> &Q {
        self.alpha.objective()
    }

    /// `(13 + 9/ε)·frac`.
    pub fn vertex_bound(&self) -> Q {
        fvst_vertex_bound(&self.epsilon, self.frac())
    }

    pub fn within_bound(&self) -> bool {
        Q::from_integer(self.reduced.n().into()) <= self.vertex_bound()
    }

    pub fn export(&self) -> (Tournament, FvstLiftContext) {
        let (dense, id_map) = self.reduced.densify();
        let m = &self.marking;
        let ctx = FvstLiftContext {
            epsilon: self.epsilon.clone(),
            frac: self.frac().clone(),
            id_map,
            d: self.d.clone(),
            x: self.x.clone(),
            cap_prime: m.cap_prime,
            backw: m.backw.clone(),
            forw: m.forw.clone(),
            positions: m.positions.clone(),
        };
        (dense, ctx)
    }
}

/// LP, both markings with the parameters of [`fvst_parameters`], and removal
/// of `D ∪ X`.
pub fn fvst_reduce(t: &Tournament, epsilon: &Q) -> Result<FvstKernelResult, KernelError> {
    check_epsilon(epsilon)?;
    let (delta, delta_prime) = fvst_parameters(epsilon);
    let alpha = lp::solve_primal(&fvst_to_hs(t));
    let base = mark_obstructions(&t.vertex_set(), &alpha, cap_for(&delta), triangle(t));
    let marking = fvst_extra_marking(&delta_prime, t, &alpha, &base)?;
    let x: BTreeSet<Id> = marking.unmarked.iter().copied().filter(|w| !marking.m_hat.contains(w)).collect();
    let d = base.d.clone();
    let reduced = t.remove_vertices(&d.union(&x).copied().collect());
    Ok(FvstKernelResult {
        reduced,
        d,
        x,
        marking,
        alpha,
        epsilon: epsilon.clone(),
        delta,
        delta_prime,
    })
}

fn full_subset(side: &[Id], cap: usize, s: &BTreeSet<Id>) -> bool {
    side.len() == cap && side.iter().all(|r| s.contains(r))
}

/// Support vertices (outside `D`) with a full `backw` or `forw` set inside `s_prime`.
pub fn y_set(cap_prime: usize, backw: &BTreeMap<Id, Vec<Id>>, forw: &BTreeMap<Id, Vec<Id>>, s_prime: &BTreeSet<Id>) -> BTreeSet<Id> {
    backw
        .keys()
        .chain(forw.keys())
        .copied()
        .filter(|v| {
            [backw.get(v), forw.get(v)]
                .into_iter()
                .flatten()
                .any(|side| full_subset(side, cap_prime, s_prime))
        })
        .collect()
}

/// `S' ∪ D ∪ Y`, verified against `t`.
pub fn fvst_lift(t: &Tournament, result: &FvstKernelResult, s_prime: &Solution) -> Result<Solution, KernelError> {
    let s_prime = s_prime.clone().with_kind(ProblemKind::Fvst);
    if let Verdict::Invalid(o) = verify_solution(ProblemRef::Fvst(&result.reduced), &s_prime) {
        return Err(KernelError::InvalidReducedSolution(o));
    }
    let m = &result.marking;
    let y = y_set(m.cap_prime, &m.backw, &m.forw, &s_prime.elements);
    let s = Solution::new(ProblemKind::Fvst, s_prime.elements.iter().chain(&result.d).chain(&y).copied());
    match verify_solution(ProblemRef::Fvst(t), &s) {
        Verdict::Valid => Ok(s),
        Verdict::Invalid(o) => Err(KernelError::LiftInvalid(o)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FvstLiftContext {
    #[serde(with = "serde_q")]
    pub epsilon: Q,
    #[serde(with = "serde_q")]
    pub frac: Q,
    pub id_map: Vec<Id>,
    pub d: BTreeSet<Id>,
    pub x: BTreeSet<Id>,
    pub cap_prime: usize,
    pub backw: BTreeMap<Id, Vec<Id>>,
    pub forw: BTreeMap<Id, Vec<Id>>,
    pub positions: BTreeMap<Id, Position>,
}

impl FvstLiftContext {
    /// Lifts a solution given in reduced (dense) ids; returns the offending id
    /// if one lies outside the reduced tournament.
    pub fn lift(&self, s_prime: &Solution) -> Result<Solution, Id> {
        let mut original = BTreeSet::new();
        for &v in &s_prime.elements {
            let i = (v as usize).checked_sub(1).filter(|&i| i < self.id_map.len()).ok_or(v)?;
            original.insert(self.id_map[i]);
        }
        let y = y_set(self.cap_prime, &self.backw, &self.forw, &original);
        Ok(Solution::new(ProblemKind::Fvst, original.iter().chain(&self.d).chain(&y).copied()))
    }
}

/// A triangle of `G - D` that breaks the expected structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FvstViolation {
    /// Two or three vertices outside `support ∪ M`.
    TooManyUnmarked { vertices: [Id; 3] },
    /// One unmarked vertex `w`, but the positions of `v` and `u` do not match.
    CaseMismatch { v: Id, u: Id, w: Id },
    /// `w ∈ X`, but the reserved side of `v` is not full of triangles with `u`.
    ExtraMarking { v: Id, u: Id, w: Id },
}

/// Classifies every triangle of `G - D`; see [`FvstViolation`].
pub fn fvst_triangle_check(t: &Tournament, marking: &FvstMarking) -> Vec<FvstViolation> {
    let base = &marking.base;
    let idx = marking.unmarked_index();
    let alive: Vec<Id> = t.vertices().filter(|v| !base.d.contains(v)).collect();
    let in_s = |v: &Id| base.support.contains(v) && !base.d.contains(v);
    let mut out = Vec::new();
    for (i, &a) in alive.iter().enumerate() {
        for (j, &b) in alive.iter().enumerate().skip(i + 1) {
            for &c in &alive[j + 1..] {
                if !t.is_triangle(a, b, c) {
                    continue;
                }
                let tri = [a, b, c];
                let outer: Vec<Id> = tri.iter().copied().filter(|x| idx.contains_key(x)).collect();
                match outer.len() {
                    0 => continue,
                    1 => {}
                    _ => {
                        out.push(FvstViolation::TooManyUnmarked { vertices: tri });
                        continue;
                    }
                }
                let w = outer[0];
                let wi = idx[&w];
                let rest: Vec<Id> = tri.iter().copied().filter(|&x| x != w).collect();
                for (v, u) in [(rest[0], rest[1]), (rest[1], rest[0])] {
                    if !in_s(&v) {
                        continue;
                    }
                    let (kv, ku) = (marking.positions[&v].slot, marking.positions[&u].slot);
                    let forward = t.has_arc(v, u);
                    let ok = if forward { ku <= wi && kv > wi } else { kv <= wi && ku > wi };
                    if !ok {
                        out.push(FvstViolation::CaseMismatch { v, u, w });
                    }
                    if marking.m_hat.contains(&w) {
                        continue;
                    }
                    let side = if forward { &marking.backw[&v] } else { &marking.forw[&v] };
                    if side.len() != marking.cap_prime || !side.iter().all(|&r| t.is_triangle(v, u, r)) {
                        out.push(FvstViolation::ExtraMarking { v, u, w });
                    }
                }
            }
        }
    }
    out
}
