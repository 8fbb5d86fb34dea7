//! Element kernel for d-Hitting Set.
//!
//! `reduce` repeatedly solves the LP, removes every element of value at least
//! `1/(d-1)` together with the sets it hits, and stops once no such element is
//! left. The result has at most `d·frac` elements. `lift` adds the removed
//! elements back to a solution of the reduced instance.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::KernelError;
use crate::instances::{verify_solution, HypergraphInstance, Id, ProblemKind, ProblemRef, Solution, Verdict};
use crate::lp::{self, RationalAssignment};
use crate::rational::{fmt_q, ratio, serde_q, Q};

/// One pass of the reduce loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRound {
    /// Elements removed in this pass.
    pub removed: BTreeSet<Id>,
    /// LP optimum before the removal.
    #[serde(with = "serde_q")]
    pub frac: Q,
}

#[derive(Clone, Debug)]
pub struct ElementKernelResult {
    pub reduced: HypergraphInstance,
    pub h_star: BTreeSet<Id>,
    pub rounds: Vec<KernelRound>,
    pub frac_in: Q,
    pub frac_out: Q,
    /// Optimal LP solution of the reduced instance; all values are below `1/(d-1)`.
    pub final_alpha: RationalAssignment,
}

impl ElementKernelResult {
    /// `d·frac_out`, the bound on the reduced universe.
    pub fn element_bound(&self) -> Q {
        Q::from_integer(self.reduced.d().into()) * &self.frac_out
    }

    /// `(d·frac_out)^d`, the bound on the reduced family.
    pub fn set_bound(&self) -> Q {
        let base = self.element_bound();
        (0..self.reduced.d()).fold(Q::from_integer(1.into()), |acc, _| acc * &base)
    }

    pub fn within_bounds(&self) -> bool {
        Q::from_integer(self.reduced.n().into()) <= self.element_bound() && Q::from_integer(self.reduced.m().into()) <= self.set_bound()
    }

    /// Whether every round lowered `frac` by at least `|H_i|/(d-1)`.
    pub fn frac_drops_ok(&self) -> bool {
        let d1 = self.reduced.d() - 1;
        let mut fracs: Vec<&Q> = self.rounds.iter().map(|r| &r.frac).collect();
        fracs.push(&self.frac_out);
        self.rounds
            .iter()
            .zip(fracs.windows(2))
            .all(|(r, w)| w[1] <= &(w[0] - ratio(r.removed.len(), d1)))
    }
}

/// Runs the reduce loop. Needs `d >= 2`.
pub fn reduce(inst: &HypergraphInstance) -> Result<ElementKernelResult, KernelError> {
    let d = inst.d();
    if d < 2 {
        return Err(KernelError::RankTooSmall(d));
    }
    let threshold = ratio(1, d - 1);
    let mut current = inst.induced(&inst.covered_elements());
    let mut rounds = Vec::new();
    let mut h_star = BTreeSet::new();
    let mut frac_in = None;
    // Each productive pass removes at least one element.
    for _ in 0..=inst.n() {
        let alpha = lp::solve_primal(&current);
        let frac = alpha.objective().clone();
        frac_in.get_or_insert_with(|| frac.clone());
        let h = alpha.at_least(&threshold);
        if h.is_empty() {
            return Ok(ElementKernelResult {
                reduced: current,
                h_star,
                rounds,
                frac_in: frac_in.unwrap(),
                frac_out: frac,
                final_alpha: alpha,
            });
        }
        let rest = current.filter_family(|s| !s.iter().any(|e| h.contains(e)));
        current = rest.induced(&rest.covered_elements());
        h_star.extend(h.iter().copied());
        rounds.push(KernelRound { removed: h, frac });
    }
    unreachable!("reduce loop exceeded |U| passes")
}

/// `S' ∪ H*`; fails if `s_prime` does not solve the reduced instance.
pub fn lift(result: &ElementKernelResult, s_prime: &Solution) -> Result<Solution, KernelError> {
    let s_prime = s_prime.clone().with_kind(ProblemKind::Hs);
    if let Verdict::Invalid(o) = verify_solution(ProblemRef::Hs(&result.reduced), &s_prime) {
        return Err(KernelError::InvalidReducedSolution(o));
    }
    Ok(Solution::hs(s_prime.elements.iter().chain(&result.h_star).copied()))
}

/// The two alternatives of the approximation argument for one lifted solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ApproxConditions {
    /// `|S| - |S'| <= ρ·opt`.
    pub additive_ok: bool,
    /// `|S|/opt <= d - ρ/(d-1)`.
    pub ratio_ok: bool,
}

pub fn approx_conditions(d: usize, s_prime_len: usize, s_len: usize, opt: usize, rho: &Q) -> ApproxConditions {
    let opt_q = Q::from_integer(opt.into());
    let additive_ok = Q::from_integer((s_len as i64 - s_prime_len as i64).into()) <= rho * &opt_q;
    let ratio_ok = if opt_q.is_zero() {
        s_len == 0
    } else {
        ratio(s_len, opt) <= Q::from_integer(d.into()) - rho / Q::from_integer((d - 1).into())
    };
    ApproxConditions { additive_ok, ratio_ok }
}

/// `ρ = (d-1)²/d`, which balances the two alternatives at ratio `d - (d-1)/d`.
pub fn balanced_rho(d: usize) -> Q {
    ratio((d - 1) * (d - 1), d)
}

/// Lift context as written next to a reduced `.hs` file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementLiftContext {
    /// `id_map[i]` is the original id of reduced element `i + 1`.
    pub id_map: Vec<Id>,
    pub h_star: Vec<Id>,
    pub rounds: Vec<KernelRound>,
    pub frac_in: String,
    pub frac_out: String,
}

impl ElementKernelResult {
    /// Dense copy of the reduced instance plus the context needed to lift a
    /// solution of it.
    pub fn export(&self) -> (HypergraphInstance, ElementLiftContext) {
        let (dense, id_map) = self.reduced.densify();
        let ctx = ElementLiftContext {
            id_map,
            h_star: self.h_star.iter().copied().collect(),
            rounds: self.rounds.clone(),
            frac_in: fmt_q(&self.frac_in),
            frac_out: fmt_q(&self.frac_out),
        };
        (dense, ctx)
    }
}

impl ElementLiftContext {
    /// Lifts a solution given in reduced (dense) ids; returns the offending id
    /// if one lies outside the reduced universe.
    pub fn lift(&self, s_prime: &Solution) -> Result<Solution, Id> {
        let mut out: BTreeSet<Id> = self.h_star.iter().copied().collect();
        for &v in &s_prime.elements {
            let i = (v as usize).checked_sub(1).filter(|&i| i < self.id_map.len()).ok_or(v)?;
            out.insert(self.id_map[i]);
        }
        Ok(Solution::hs(out))
    }
}
