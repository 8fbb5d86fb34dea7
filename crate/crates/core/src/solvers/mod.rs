//! Exact and approximate hitting-set solvers, maximal matchings, and the
//! oracle abstraction used by the protocols.

mod bits;
mod exact;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::instances::{Graph, HypergraphInstance, Id, Solution};
use crate::rational::{floor_usize, fmt_q, parse_q, serde_q, Q};

pub use exact::{exact_hs, MAX_EXACT_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("no hitting set of size at most {budget}")]
    BudgetExceeded { budget: usize },
    #[error("{elements} elements exceed the exact solver limit of {max}")]
    TooLarge { elements: usize, max: usize },
}

/// Greedy d-approximation: scan the family in order and take every element
/// of each set not yet hit.
pub fn d_approx(inst: &HypergraphInstance) -> Solution {
    let mut chosen = BTreeSet::new();
    for set in inst.family() {
        if !set.iter().any(|e| chosen.contains(e)) {
            chosen.extend(set.iter().copied());
        }
    }
    Solution::hs(chosen)
}

/// Greedy maximal matching over the edges in lexicographic order.
pub fn maximal_matching(g: &Graph) -> Vec<(Id, Id)> {
    let mut used = BTreeSet::new();
    let mut matching = Vec::new();
    for (u, v) in g.edges() {
        if !used.contains(&u) && !used.contains(&v) {
            used.insert(u);
            used.insert(v);
            matching.push((u, v));
        }
    }
    matching
}

/// Which elements an adversarial oracle adds on top of an optimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PadStrategy {
    #[default]
    Lowest,
    Highest,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum OracleKind {
    Exact,
    DApprox,
    /// An optimum padded with extra elements up to `⌊β·opt⌋`.
    Adversarial {
        #[serde(with = "serde_q")]
        beta: Q,
        #[serde(default)]
        strategy: PadStrategy,
    },
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleKind::Exact => f.write_str("exact"),
            OracleKind::DApprox => f.write_str("dapprox"),
            OracleKind::Adversarial {
                beta,
                strategy: PadStrategy::Lowest,
            } => write!(f, "adversarial:{}", fmt_q(beta)),
            OracleKind::Adversarial {
                beta,
                strategy: PadStrategy::Highest,
            } => {
                write!(f, "adversarial:{}:highest", fmt_q(beta))
            }
        }
    }
}

impl FromStr for OracleKind {
    type Err = String;

    /// `exact`, `dapprox`, `adversarial:<beta>` or `adversarial:<beta>:highest`.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut parts = s.split(':');
        match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some("exact"), None, ..) => Ok(OracleKind::Exact),
            (Some("dapprox"), None, ..) => Ok(OracleKind::DApprox),
            (Some("adversarial"), Some(beta), strategy, None) => {
                let beta = parse_q(beta).map_err(|e| e.to_string())?;
                if beta < Q::from_integer(1.into()) {
                    return Err(format!("adversarial beta must be at least 1, got {}", fmt_q(&beta)));
                }
                let strategy = match strategy {
                    None | Some("lowest") => PadStrategy::Lowest,
                    Some("highest") => PadStrategy::Highest,
                    Some(other) => return Err(format!("unknown padding strategy {other:?}")),
                };
                Ok(OracleKind::Adversarial { beta, strategy })
            }
            _ => Err(format!("unknown oracle {s:?}")),
        }
    }
}

/// Size of one oracle query and its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallRecord {
    pub elements: usize,
    pub sets: usize,
    pub answer: usize,
}

/// Something that returns a hitting set for a queried instance.
pub trait HittingSetOracle {
    fn query(&mut self, inst: &HypergraphInstance) -> Result<Solution, SolverError>;
}

/// The standard oracles, with a log of every call.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub kind: OracleKind,
    pub call_log: Vec<CallRecord>,
}

impl Oracle {
    pub fn new(kind: OracleKind) -> Self {
        Oracle {
            kind,
            call_log: Vec::new(),
        }
    }
}

impl HittingSetOracle for Oracle {
    fn query(&mut self, inst: &HypergraphInstance) -> Result<Solution, SolverError> {
        let sol = match &self.kind {
            OracleKind::Exact => exact_hs(inst, None)?,
            OracleKind::DApprox => d_approx(inst),
            OracleKind::Adversarial { beta, strategy } => {
                let mut sol = exact_hs(inst, None)?;
                let target = floor_usize(&(beta * Q::from_integer(sol.len().into()))).min(inst.n());
                let extra: Vec<Id> = match strategy {
                    PadStrategy::Lowest => inst.universe().iter().copied().filter(|e| !sol.contains(*e)).collect(),
                    PadStrategy::Highest => inst.universe().iter().rev().copied().filter(|e| !sol.contains(*e)).collect(),
                };
                let need = target.saturating_sub(sol.len());
                sol.elements.extend(extra.into_iter().take(need));
                sol
            }
        };
        self.call_log.push(CallRecord {
            elements: inst.n(),
            sets: inst.m(),
            answer: sol.len(),
        });
        Ok(sol)
    }
}
