//! The covering LP of d-Hitting Set and its packing dual, solved exactly.
//!
//! Primal: minimize `Σ y_u` subject to `Σ_{u∈S} y_u >= 1` for every set `S`.
//! Dual: maximize `Σ x_S` subject to `Σ_{S∋u} x_S <= 1` for every element `u`.

mod simplex;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::instances::{HypergraphInstance, Id};
use crate::rational::{fmt_q, Q};

/// Values of the covering variables, one per universe element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalAssignment {
    values: BTreeMap<Id, Q>,
    objective: Q,
}

impl RationalAssignment {
    pub fn new(values: impl IntoIterator<Item = (Id, Q)>) -> Self {
        let values: BTreeMap<Id, Q> = values.into_iter().collect();
        let objective = values.values().sum();
        RationalAssignment { values, objective }
    }

    /// The same value on every universe element.
    pub fn uniform(inst: &HypergraphInstance, value: &Q) -> Self {
        Self::new(inst.universe().iter().map(|&e| (e, value.clone())))
    }

    pub fn value(&self, id: Id) -> Q {
        self.values.get(&id).cloned().unwrap_or_else(Q::zero)
    }

    pub fn values(&self) -> &BTreeMap<Id, Q> {
        &self.values
    }

    /// `Σ y_u`.
    pub fn objective(&self) -> &Q {
        &self.objective
    }

    /// Elements with a nonzero value.
    pub fn support(&self) -> BTreeSet<Id> {
        self.values.iter().filter(|(_, v)| !v.is_zero()).map(|(&e, _)| e).collect()
    }

    /// Elements with value exactly 1.
    pub fn ones(&self) -> BTreeSet<Id> {
        self.at_least(&Q::one())
    }

    pub fn at_least(&self, threshold: &Q) -> BTreeSet<Id> {
        self.values.iter().filter(|(_, v)| *v >= threshold).map(|(&e, _)| e).collect()
    }

    /// Values as `"num/den"` strings, for reports.
    pub fn to_strings(&self) -> BTreeMap<Id, String> {
        self.values.iter().map(|(&e, v)| (e, fmt_q(v))).collect()
    }
}

/// Values of the packing variables, indexed like [`HypergraphInstance::family`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualAssignment {
    values: Vec<Q>,
    objective: Q,
}

impl DualAssignment {
    pub fn new(values: Vec<Q>) -> Self {
        let objective = values.iter().sum();
        DualAssignment { values, objective }
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn objective(&self) -> &Q {
        &self.objective
    }

    /// Indices of sets with a nonzero value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| !self.values[i].is_zero()).collect()
    }
}

/// Optimal primal and dual solutions from one simplex run.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub primal: RationalAssignment,
    pub dual: DualAssignment,
}

impl LpSolution {
    /// The common optimum `frac(I)`.
    pub fn frac(&self) -> &Q {
        self.primal.objective()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("primal assignment infeasible: {0}")]
    PrimalInfeasible(String),
    #[error("dual assignment infeasible: {0}")]
    DualInfeasible(String),
}

/// Solves both LPs. Deterministic: equal instances give equal solutions.
pub fn solve(inst: &HypergraphInstance) -> LpSolution {
    // One tableau row per element that occurs in some set.
    let inc = inst.incidence();
    let active: Vec<(Id, &Vec<usize>)> = inc.iter().filter(|(_, s)| !s.is_empty()).map(|(&e, s)| (e, s)).collect();
    let rows: Vec<Vec<usize>> = active.iter().map(|(_, s)| (*s).clone()).collect();
    let opt = simplex::solve_packing(&rows, inst.m());

    let denom = opt.denom;
    let mut primal: BTreeMap<Id, Q> = inst.universe().iter().map(|&e| (e, Q::zero())).collect();
    for ((e, _), y) in active.iter().zip(opt.y) {
        primal.insert(*e, Q::new(y, denom.clone()));
    }
    let dual: Vec<Q> = opt.x.into_iter().map(|x| Q::new(x, denom.clone())).collect();
    let sol = LpSolution {
        primal: RationalAssignment::new(primal),
        dual: DualAssignment::new(dual),
    };

    debug_assert_eq!(*sol.primal.objective(), Q::new(opt.objective, denom));
    debug_assert!(sol.primal.values().values().all(|v| !v.is_negative() && *v <= Q::one()));
    debug_assert_eq!(check_optimal_pair(&sol.primal, &sol.dual, inst), Ok(true));
    sol
}

pub fn solve_primal(inst: &HypergraphInstance) -> RationalAssignment {
    solve(inst).primal
}

pub fn solve_dual(inst: &HypergraphInstance) -> DualAssignment {
    solve(inst).dual
}

/// Elements with a nonzero value.
pub fn support(assignment: &RationalAssignment) -> BTreeSet<Id> {
    assignment.support()
}

/// Covering load `Σ_{u∈S} y_u`.
fn cover_load(primal: &RationalAssignment, set: &[Id]) -> Q {
    set.iter().map(|&e| primal.value(e)).sum()
}

/// Whether a feasible pair is optimal: equal objectives plus both
/// complementary slackness conditions, all checked exactly.
///
/// Errors when either assignment is infeasible or does not match the instance.
pub fn check_optimal_pair(primal: &RationalAssignment, dual: &DualAssignment, inst: &HypergraphInstance) -> Result<bool, LpError> {
    if let Some(e) = primal.values().keys().find(|&&e| !inst.contains_element(e)) {
        return Err(LpError::PrimalInfeasible(format!("element {e} outside the universe")));
    }
    if let Some((e, _)) = primal.values().iter().find(|(_, v)| v.is_negative()) {
        return Err(LpError::PrimalInfeasible(format!("negative value on element {e}")));
    }
    if let Some(set) = inst.family().iter().find(|s| cover_load(primal, s) < Q::one()) {
        return Err(LpError::PrimalInfeasible(format!("set {set:?} covered less than once")));
    }
    if dual.values().len() != inst.m() {
        return Err(LpError::DualInfeasible(format!(
            "{} values for {} sets",
            dual.values().len(),
            inst.m()
        )));
    }
    if let Some(i) = dual.values().iter().position(|v| v.is_negative()) {
        return Err(LpError::DualInfeasible(format!("negative value on set {i}")));
    }
    let inc = inst.incidence();
    let pack_load = |e: Id| -> Q { inc[&e].iter().map(|&i| dual.values()[i].clone()).sum() };
    for &e in inst.universe() {
        if pack_load(e) > Q::one() {
            return Err(LpError::DualInfeasible(format!("element {e} packed more than once")));
        }
    }

    if primal.objective() != dual.objective() {
        return Ok(false);
    }
    let primal_slack_ok = inst
        .universe()
        .iter()
        .all(|&e| primal.value(e).is_zero() || pack_load(e) == Q::one());
    let dual_slack_ok = inst
        .family()
        .iter()
        .zip(dual.values())
        .all(|(s, x)| x.is_zero() || cover_load(primal, s) == Q::one());
    Ok(primal_slack_ok && dual_slack_ok)
}

/// JSON view of an LP solution.
#[derive(Clone, Debug, Serialize)]
pub struct LpDump {
    pub frac: String,
    pub support: Vec<Id>,
    pub primal: BTreeMap<Id, String>,
    pub dual: Vec<String>,
}

impl From<&LpSolution> for LpDump {
    fn from(sol: &LpSolution) -> Self {
        LpDump {
            frac: fmt_q(sol.frac()),
            support: sol.primal.support().into_iter().collect(),
            primal: sol.primal.to_strings(),
            dual: sol.dual.values().iter().map(fmt_q).collect(),
        }
    }
}
