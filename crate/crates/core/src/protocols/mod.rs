//! Randomized round-limited protocols that reach a lossy kernel through
//! oracle calls on sampled subinstances.
//!
//! * [`vc_protocol`]: two calls, Vertex Cover.
//! * [`dhs_protocol`]: `⌈(d-1)/ε⌉` calls, d-Hitting Set.
//! * [`rsz_protocol`]: up to `t+1` calls, Vertex Cover with ratio `1+4c`.
//!
//! Each protocol first applies the element kernel and works on the reduced
//! instance; the answer is lifted back through `H*`. A failed probabilistic
//! check does not abort the run: it is flagged and a d-approximation is
//! returned instead.

mod dhs;
mod rsz;
mod sampling;
mod vc;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::element_kernel::{self, ElementKernelResult};
use crate::error::KernelError;
use crate::instances::{verify_solution, HypergraphInstance, Id, Obstruction, ProblemKind, ProblemRef, Solution, Verdict};
use crate::rational::{q, qi, ratio, serde_opt_q, serde_q, to_f64, Q};
use crate::solvers::{d_approx, exact_hs, HittingSetOracle, Oracle, OracleKind, SolverError};

pub use dhs::{dhs_protocol, dhs_protocol_with_oracle};
pub use rsz::{extract_ruzsa_witness, rsz_protocol, rsz_protocol_with_oracle, RuzsaWitness, WitnessError, WitnessRound};
pub use sampling::Sampler;
pub use vc::{vc_protocol, vc_protocol_with_oracle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProtocolConfig {
    pub seed: u64,
    #[serde(with = "serde_q")]
    pub epsilon: Q,
    #[serde(with = "serde_q")]
    pub c: Q,
    pub t: usize,
    /// Instances with `frac` below this are solved exactly without oracle calls.
    #[serde(with = "serde_q")]
    pub brute_force_frac_threshold: Q,
    pub oracle: OracleKind,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        ProtocolConfig {
            seed: 0,
            epsilon: qi(1),
            c: q(1, 5),
            t: 3,
            brute_force_frac_threshold: qi(8),
            oracle: OracleKind::Exact,
        }
    }
}

impl ProtocolConfig {
    pub fn validate(&self) -> Result<(), ProtocolError> {
        if self.epsilon <= qi(0) {
            return Err(ProtocolError::BadConfig("epsilon must be positive".into()));
        }
        if self.c <= qi(0) || self.c >= q(1, 4) {
            return Err(ProtocolError::BadConfig("c must lie in (0, 1/4)".into()));
        }
        if self.brute_force_frac_threshold < qi(0) {
            return Err(ProtocolError::BadConfig("brute-force threshold must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolKind {
    Vc2,
    Dhs,
    Rsz,
}

impl std::str::FromStr for ProtocolKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "vc2" => Ok(ProtocolKind::Vc2),
            "dhs" => Ok(ProtocolKind::Dhs),
            "rsz" => Ok(ProtocolKind::Rsz),
            _ => Err(format!("unknown protocol {s:?}; expected vc2, dhs or rsz")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// An oracle answer was large enough to take a trivial solution.
    EarlyLarge,
    /// The last step assembled the solution from the oracle answers.
    FinalSmall,
    /// A probabilistic check failed; the solution is a d-approximation.
    Failure,
    /// `frac` was below the threshold; solved exactly without oracle calls.
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlagName {
    SampleTooLarge,
    ResidualTooDense,
    RuzsaWitness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureFlag {
    pub name: FlagName,
    pub round: usize,
    pub fired: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallSize {
    pub elements: usize,
    pub sets: usize,
}

/// One round of the Ruzsa–Szemerédi protocol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RszRound {
    pub oracle_answer: Vec<Id>,
    pub matching: Vec<(Id, Id)>,
    pub residual_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolReport {
    pub kind: ProtocolKind,
    pub config: ProtocolConfig,
    pub solution: Solution,
    pub rounds_used: usize,
    pub call_sizes: Vec<CallSize>,
    pub failure_flags: Vec<FailureFlag>,
    pub branch_taken: Branch,
    #[serde(with = "serde_opt_q")]
    pub ratio: Option<Q>,
    /// LP optimum of the input.
    #[serde(with = "serde_q")]
    pub frac_in: Q,
    /// LP optimum of the element kernel, which drives probabilities and thresholds.
    #[serde(with = "serde_q")]
    pub frac: Q,
    pub kernel_elements: usize,
    pub kernel_sets: usize,
    pub h_star: usize,
    /// `|U_0|, |U_1|, ...` for the d-Hitting Set protocol.
    pub universe_sizes: Vec<usize>,
    pub rsz_rounds: Vec<RszRound>,
}

impl ProtocolReport {
    pub fn failed(&self) -> bool {
        self.failure_flags.iter().any(|f| f.fired)
    }

    pub fn ruzsa_event(&self) -> bool {
        self.failure_flags.iter().any(|f| f.fired && f.name == FlagName::RuzsaWitness)
    }

    /// Largest `elements + sets` over all calls.
    pub fn max_call_volume(&self) -> usize {
        self.call_sizes.iter().map(|c| c.elements + c.sets).max().unwrap_or(0)
    }

    /// Records `|solution| / opt` (0 if both are 0).
    pub fn set_ratio(&mut self, opt: usize) {
        self.ratio = Some(if opt == 0 {
            qi(self.solution.len() as i64)
        } else {
            ratio(self.solution.len(), opt)
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProtocolError {
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("oracle failed: {0}")]
    Oracle(#[from] SolverError),
    #[error("oracle answer in round {round} is not a solution: {obstruction:?}")]
    OracleInvalid { round: usize, obstruction: Obstruction },
    #[error("protocol output is not a solution: {0:?}")]
    InvalidOutput(Obstruction),
}

/// `count > bound`, allowing half an ulp of slack in the float bound.
pub(crate) fn exceeds(count: usize, bound: f64) -> bool {
    count as f64 > bound + bound.abs() * f64::EPSILON / 2.0
}

/// Probability `x^(-e)` clamped to `[0, 1]`; 1 when `x <= 1`.
pub(crate) fn inverse_power(x: f64, e: f64) -> f64 {
    if x <= 1.0 {
        1.0
    } else {
        x.powf(-e).clamp(0.0, 1.0)
    }
}

/// Shared state of one protocol run on the kernelized instance.
pub(crate) struct Run<'a> {
    pub inst: HypergraphInstance,
    pub frac: f64,
    pub sampler: Sampler,
    oracle: &'a mut dyn HittingSetOracle,
    pub call_sizes: Vec<CallSize>,
    pub flags: Vec<FailureFlag>,
    pub universe_sizes: Vec<usize>,
    pub rsz_rounds: Vec<RszRound>,
}

impl Run<'_> {
    /// Queries the oracle and checks the answer.
    pub fn call(&mut self, query: &HypergraphInstance) -> Result<BTreeSet<Id>, ProtocolError> {
        let answer = self.oracle.query(query)?.with_kind(ProblemKind::Hs);
        let round = self.call_sizes.len() + 1;
        self.call_sizes.push(CallSize {
            elements: query.n(),
            sets: query.m(),
        });
        match verify_solution(ProblemRef::Hs(query), &answer) {
            Verdict::Valid => Ok(answer.elements),
            Verdict::Invalid(obstruction) => Err(ProtocolError::OracleInvalid { round, obstruction }),
        }
    }

    /// Records a check; returns whether it fired.
    pub fn flag(&mut self, name: FlagName, round: usize, fired: bool) -> bool {
        self.flags.push(FailureFlag { name, round, fired });
        fired
    }

    /// The fallback answer on the kernelized instance.
    pub fn fallback(&self) -> (Branch, BTreeSet<Id>) {
        (Branch::Failure, d_approx(&self.inst).elements)
    }
}

type Body = fn(&mut Run<'_>, &ProtocolConfig) -> Result<(Branch, BTreeSet<Id>), ProtocolError>;

/// Kernelize, run `body` (or solve exactly when `frac` is small), lift and verify.
pub(crate) fn execute(
    kind: ProtocolKind,
    input: &HypergraphInstance,
    problem: ProblemRef<'_>,
    cfg: &ProtocolConfig,
    oracle: &mut dyn HittingSetOracle,
    body: Body,
) -> Result<ProtocolReport, ProtocolError> {
    cfg.validate()?;
    let kernel: ElementKernelResult = element_kernel::reduce(input)?;
    let mut run = Run {
        inst: kernel.reduced.clone(),
        frac: to_f64(&kernel.frac_out),
        sampler: Sampler::new(cfg.seed),
        oracle,
        call_sizes: Vec::new(),
        flags: Vec::new(),
        universe_sizes: Vec::new(),
        rsz_rounds: Vec::new(),
    };
    let (branch, elements) = if kernel.frac_in < cfg.brute_force_frac_threshold {
        (Branch::BruteForce, exact_hs(input, None)?.elements)
    } else {
        let (branch, reduced_solution) = body(&mut run, cfg)?;
        let lifted = element_kernel::lift(&kernel, &Solution::hs(reduced_solution))?;
        (branch, lifted.elements)
    };
    let solution = Solution::new(problem.kind(), elements);
    if let Verdict::Invalid(o) = verify_solution(problem, &solution) {
        return Err(ProtocolError::InvalidOutput(o));
    }
    Ok(ProtocolReport {
        kind,
        config: cfg.clone(),
        solution,
        rounds_used: run.call_sizes.len(),
        call_sizes: run.call_sizes,
        failure_flags: run.flags,
        branch_taken: branch,
        ratio: None,
        frac_in: kernel.frac_in.clone(),
        frac: kernel.frac_out.clone(),
        kernel_elements: kernel.reduced.n(),
        kernel_sets: kernel.reduced.m(),
        h_star: kernel.h_star.len(),
        universe_sizes: run.universe_sizes,
        rsz_rounds: run.rsz_rounds,
    })
}

/// Oracle built from the configuration.
pub(crate) fn config_oracle(cfg: &ProtocolConfig) -> Oracle {
    Oracle::new(cfg.oracle.clone())
}

/// The instance on `universe` with the family members selected by `indices`.
pub(crate) fn subfamily(universe: &BTreeSet<Id>, family: &[Vec<Id>], indices: &[usize], d: usize) -> HypergraphInstance {
    HypergraphInstance::new(d, universe.iter().copied(), indices.iter().map(|&i| family[i].iter().copied()))
        .expect("subfamily of a valid instance")
}
