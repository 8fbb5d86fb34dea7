//! Experiment sweeps, run reports and brute-force comparisons.
//!
//! An experiment file (TOML) lists sweeps; each sweep names a problem, a
//! generator, a method and a seed range. Every (sweep, seed) pair becomes one
//! [`RunReport`], serialized as one JSON line. Runs execute on the rayon pool
//! and are collected in input order, so the output does not depend on
//! scheduling.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cvd_kernel::{cvd_lift, cvd_reduce, cvd_structure_checks, CvdLiftContext};
use crate::element_kernel::{self, ElementLiftContext};
use crate::error::KernelError;
use crate::fvst_kernel::{fvst_lift, fvst_reduce, fvst_triangle_check, FvstLiftContext};
use crate::instances::{
    cvd_to_hs, fvst_to_hs, gen_cluster_noise, gen_partition_tight, gen_random_graph, gen_random_hs, gen_random_tournament,
    gen_transitive_tournament, verify_solution, write_graph, write_hs, write_tournament, GenError, Graph, HypergraphInstance, Id,
    ProblemKind, ProblemRef, Solution, Tournament,
};
use crate::lp;
use crate::protocols::{dhs_protocol, rsz_protocol, vc_protocol, ProtocolConfig, ProtocolError, ProtocolKind, ProtocolReport};
use crate::rational::{fmt_q, ratio, serde_opt_q, serde_q, Q};
use crate::solvers::{d_approx, exact_hs, SolverError};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("experiment file: {0}")]
    Spec(String),
    #[error(transparent)]
    Generator(#[from] GenError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("{method} does not apply to {problem} instances")]
    Mismatch { method: String, problem: ProblemKind },
    #[error("generator {generator} does not produce {problem} instances")]
    WrongGenerator { generator: String, problem: ProblemKind },
    #[error("instance size {size} exceeds the brute-force cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// An instance together with the problem it is read as.
#[derive(Clone, Debug)]
pub enum Problem {
    Hs(HypergraphInstance),
    Vc(Graph),
    Cvd(Graph),
    Fvst(Tournament),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDigest {
    /// SHA-256 of the instance in its text format (relabelled to dense ids).
    pub sha256: String,
    pub n: usize,
    pub m: usize,
    pub d: usize,
}

impl Problem {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Problem::Hs(_) => ProblemKind::Hs,
            Problem::Vc(_) => ProblemKind::Vc,
            Problem::Cvd(_) => ProblemKind::Cvd,
            Problem::Fvst(_) => ProblemKind::Fvst,
        }
    }

    pub fn as_ref(&self) -> ProblemRef<'_> {
        match self {
            Problem::Hs(i) => ProblemRef::Hs(i),
            Problem::Vc(g) => ProblemRef::Vc(g),
            Problem::Cvd(g) => ProblemRef::Cvd(g),
            Problem::Fvst(t) => ProblemRef::Fvst(t),
        }
    }

    /// The equivalent hitting-set instance.
    pub fn to_hs(&self) -> HypergraphInstance {
        match self {
            Problem::Hs(i) => i.clone(),
            Problem::Vc(g) => g.to_hs(),
            Problem::Cvd(g) => cvd_to_hs(g),
            Problem::Fvst(t) => fvst_to_hs(t),
        }
    }

    /// Number of elements or vertices; the quantity the brute-force caps limit.
    pub fn size(&self) -> usize {
        match self {
            Problem::Hs(i) => i.n(),
            Problem::Vc(g) | Problem::Cvd(g) => g.n(),
            Problem::Fvst(t) => t.n(),
        }
    }

    pub fn digest(&self) -> InstanceDigest {
        let (text, n, m, d) = match self {
            Problem::Hs(i) => (write_hs(&i.densify().0), i.n(), i.m(), i.d()),
            Problem::Vc(g) => (write_graph(&g.densify().0), g.n(), g.m(), 2),
            Problem::Cvd(g) => (write_graph(&g.densify().0), g.n(), g.m(), 3),
            Problem::Fvst(t) => (write_tournament(&t.densify().0), t.n(), t.arcs().count(), 3),
        };
        let text = text.expect("densified instances are writable");
        InstanceDigest {
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
            n,
            m,
            d,
        }
    }
}

/// Seeded instance generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeneratorSpec {
    RandomHs { n: usize, m: usize, d: usize },
    Partition { n: usize, d: usize },
    RandomGraph { n: usize, p: f64 },
    ClusterNoise { sizes: Vec<usize>, flips: usize },
    RandomTournament { n: usize },
    TransitiveTournament { n: usize },
}

impl GeneratorSpec {
    fn name(&self) -> &'static str {
        match self {
            GeneratorSpec::RandomHs { .. } => "random-hs",
            GeneratorSpec::Partition { .. } => "partition",
            GeneratorSpec::RandomGraph { .. } => "random-graph",
            GeneratorSpec::ClusterNoise { .. } => "cluster-noise",
            GeneratorSpec::RandomTournament { .. } => "random-tournament",
            GeneratorSpec::TransitiveTournament { .. } => "transitive-tournament",
        }
    }

    pub fn generate(&self, problem: ProblemKind, seed: u64) -> Result<Problem, HarnessError> {
        let wrong = || HarnessError::WrongGenerator {
            generator: self.name().into(),
            problem,
        };
        let graph = |g: Graph| match problem {
            ProblemKind::Vc => Ok(Problem::Vc(g)),
            ProblemKind::Cvd => Ok(Problem::Cvd(g)),
            _ => Err(wrong()),
        };
        match self {
            GeneratorSpec::RandomHs { n, m, d } if problem == ProblemKind::Hs => Ok(Problem::Hs(gen_random_hs(*n, *m, *d, seed)?)),
            GeneratorSpec::Partition { n, d } if problem == ProblemKind::Hs => Ok(Problem::Hs(gen_partition_tight(*n, *d)?)),
            GeneratorSpec::RandomGraph { n, p } => graph(gen_random_graph(*n, *p, seed)?),
            GeneratorSpec::ClusterNoise { sizes, flips } => graph(gen_cluster_noise(sizes, *flips, seed)?),
            GeneratorSpec::RandomTournament { n } if problem == ProblemKind::Fvst => Ok(Problem::Fvst(gen_random_tournament(*n, seed))),
            GeneratorSpec::TransitiveTournament { n } if problem == ProblemKind::Fvst => {
                Ok(Problem::Fvst(gen_transitive_tournament(*n, seed).0))
            }
            _ => Err(wrong()),
        }
    }
}

/// What to run on each instance. Kernels solve their reduced instance
/// exactly and lift the result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MethodSpec {
    Exact,
    DApprox,
    ElementKernel,
    Protocol {
        protocol: ProtocolKind,
        #[serde(default)]
        config: ProtocolConfig,
    },
    CvdKernel {
        #[serde(with = "serde_q")]
        epsilon: Q,
    },
    FvstKernel {
        #[serde(with = "serde_q")]
        epsilon: Q,
    },
}

impl MethodSpec {
    fn name(&self) -> String {
        match self {
            MethodSpec::Exact => "exact".into(),
            MethodSpec::DApprox => "d-approx".into(),
            MethodSpec::ElementKernel => "element-kernel".into(),
            MethodSpec::Protocol { protocol, .. } => format!("protocol {protocol:?}").to_lowercase(),
            MethodSpec::CvdKernel { .. } => "cvd-kernel".into(),
            MethodSpec::FvstKernel { .. } => "fvst-kernel".into(),
        }
    }
}

/// Largest instance (elements for d-HS, vertices otherwise) for which the
/// optimum is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BruteForceCaps {
    pub hs: usize,
    pub vc: usize,
    pub cvd: usize,
    pub fvst: usize,
}

impl Default for BruteForceCaps {
    fn default() -> Self {
        BruteForceCaps {
            hs: 18,
            vc: 64,
            cvd: 25,
            fvst: 20,
        }
    }
}

impl BruteForceCaps {
    pub fn cap(&self, kind: ProblemKind) -> usize {
        match kind {
            ProblemKind::Hs => self.hs,
            ProblemKind::Vc => self.vc,
            ProblemKind::Cvd => self.cvd,
            ProblemKind::Fvst => self.fvst,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedRange {
    #[serde(default)]
    pub start: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub problem: ProblemKind,
    pub generator: GeneratorSpec,
    pub method: MethodSpec,
    pub seeds: SeedRange,
    #[serde(default = "yes")]
    pub compute_opt: bool,
    /// Runs whose ratio exceeds this count as unsuccessful.
    #[serde(default, with = "serde_opt_q", skip_serializing_if = "Option::is_none")]
    pub ratio_target: Option<Q>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub caps: BruteForceCaps,
    #[serde(default)]
    pub sweep: Vec<SweepSpec>,
}

impl ExperimentSpec {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Spec(e.to_string()))
    }

    /// Every (sweep, seed) pair in file order.
    pub fn jobs(&self) -> Vec<(usize, RunConfig, u64)> {
        let mut out = Vec::new();
        for (i, s) in self.sweep.iter().enumerate() {
            let cfg = RunConfig {
                problem: s.problem,
                generator: s.generator.clone(),
                method: s.method.clone(),
                compute_opt: s.compute_opt,
                ratio_target: s.ratio_target.clone(),
                caps: self.caps,
            };
            for k in 0..s.seeds.count {
                out.push((i, cfg.clone(), s.seeds.start.wrapping_add(k)));
            }
        }
        out
    }
}

/// Everything needed to reproduce one run besides its seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub problem: ProblemKind,
    pub generator: GeneratorSpec,
    pub method: MethodSpec,
    pub compute_opt: bool,
    #[serde(default, with = "serde_opt_q", skip_serializing_if = "Option::is_none")]
    pub ratio_target: Option<Q>,
    pub caps: BruteForceCaps,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelSizes {
    /// Elements (d-HS) or vertices of the reduced instance.
    pub size: usize,
    pub sets: usize,
    #[serde(with = "serde_q")]
    pub bound: Q,
    pub within_bound: bool,
    /// Elements or vertices removed outright (`H*`, `D`, `D ∪ X`).
    pub removed: usize,
    /// Structure-check violations; always 0 unless something is wrong.
    pub violations: usize,
    /// Size of the exact solution of the reduced instance.
    pub reduced_solution: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub experiment: String,
    pub sweep: usize,
    pub seed: u64,
    pub config: RunConfig,
    pub instance: Option<InstanceDigest>,
    #[serde(with = "serde_opt_q")]
    pub frac: Option<Q>,
    pub output_size: Option<usize>,
    pub valid: bool,
    pub kernel: Option<KernelSizes>,
    pub protocol: Option<ProtocolReport>,
    pub opt: Option<usize>,
    /// Why the optimum was not computed.
    pub opt_skipped: Option<String>,
    /// `output / opt`, present only when `opt > 0`.
    #[serde(with = "serde_opt_q")]
    pub ratio: Option<Q>,
    /// When `opt = 0`: whether the output is empty.
    pub zero_opt_match: Option<bool>,
    pub success: bool,
    pub error: Option<String>,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    /// JSON line with the timing field zeroed; equal for identical runs.
    pub fn canonical_line(&self) -> String {
        RunReport {
            wall_time_ms: 0,
            ..self.clone()
        }
        .json_line()
    }

    pub fn bound_violation(&self) -> bool {
        self.kernel.as_ref().is_some_and(|k| !k.within_bound)
    }
}

/// Output of one method on one instance.
#[derive(Clone, Debug)]
pub struct MethodOutput {
    pub solution: Solution,
    pub kernel: Option<KernelSizes>,
    pub protocol: Option<ProtocolReport>,
}

fn mismatch(method: &MethodSpec, problem: &Problem) -> HarnessError {
    HarnessError::Mismatch {
        method: method.name(),
        problem: problem.kind(),
    }
}

pub fn run_method(problem: &Problem, method: &MethodSpec, seed: u64) -> Result<MethodOutput, HarnessError> {
    let kind = problem.kind();
    let plain = |solution: Solution| MethodOutput {
        solution: solution.with_kind(kind),
        kernel: None,
        protocol: None,
    };
    match method {
        MethodSpec::Exact => Ok(plain(exact_hs(&problem.to_hs(), None)?)),
        MethodSpec::DApprox => Ok(plain(d_approx(&problem.to_hs()))),
        MethodSpec::ElementKernel => {
            let r = element_kernel::reduce(&problem.to_hs())?;
            let sp = exact_hs(&r.reduced, None)?;
            let s = element_kernel::lift(&r, &sp)?;
            let kernel = KernelSizes {
                size: r.reduced.n(),
                sets: r.reduced.m(),
                bound: r.element_bound(),
                within_bound: r.within_bounds(),
                removed: r.h_star.len(),
                violations: usize::from(!r.frac_drops_ok()),
                reduced_solution: sp.len(),
            };
            Ok(MethodOutput {
                solution: s.with_kind(kind),
                kernel: Some(kernel),
                protocol: None,
            })
        }
        MethodSpec::Protocol { protocol, config } => {
            let cfg = ProtocolConfig { seed, ..config.clone() };
            let report = match (protocol, problem) {
                (ProtocolKind::Vc2, Problem::Vc(g)) => vc_protocol(g, &cfg)?,
                (ProtocolKind::Rsz, Problem::Vc(g)) => rsz_protocol(g, &cfg)?,
                (ProtocolKind::Dhs, _) => dhs_protocol(&problem.to_hs(), &cfg)?,
                _ => return Err(mismatch(method, problem)),
            };
            Ok(MethodOutput {
                solution: report.solution.clone().with_kind(kind),
                kernel: None,
                protocol: Some(report),
            })
        }
        MethodSpec::CvdKernel { epsilon } => {
            let Problem::Cvd(g) = problem else {
                return Err(mismatch(method, problem));
            };
            let r = cvd_reduce(g, epsilon)?;
            let sp = exact_hs(&cvd_to_hs(&r.reduced), None)?;
            let s = cvd_lift(g, &r, &sp)?;
            let kernel = KernelSizes {
                size: r.reduced.n(),
                sets: r.reduced.m(),
                bound: r.vertex_bound(),
                within_bound: r.within_bound(),
                removed: g.n() - r.reduced.n(),
                violations: cvd_structure_checks(g, &r.alpha, &r.marking).len(),
                reduced_solution: sp.len(),
            };
            Ok(MethodOutput {
                solution: s,
                kernel: Some(kernel),
                protocol: None,
            })
        }
        MethodSpec::FvstKernel { epsilon } => {
            let Problem::Fvst(t) = problem else {
                return Err(mismatch(method, problem));
            };
            let r = fvst_reduce(t, epsilon)?;
            let sp = exact_hs(&fvst_to_hs(&r.reduced), None)?;
            let s = fvst_lift(t, &r, &sp)?;
            let kernel = KernelSizes {
                size: r.reduced.n(),
                sets: r.reduced.arcs().count(),
                bound: r.vertex_bound(),
                within_bound: r.within_bound(),
                removed: r.d.len() + r.x.len(),
                violations: fvst_triangle_check(t, &r.marking).len(),
                reduced_solution: sp.len(),
            };
            Ok(MethodOutput {
                solution: s,
                kernel: Some(kernel),
                protocol: None,
            })
        }
    }
}

/// Optimum by exact search, refused above the cap for the problem kind.
pub fn brute_force_opt(problem: &Problem, caps: &BruteForceCaps) -> Result<usize, HarnessError> {
    let cap = caps.cap(problem.kind());
    if problem.size() > cap {
        return Err(HarnessError::CapExceeded { size: problem.size(), cap });
    }
    Ok(exact_hs(&problem.to_hs(), None)?.len())
}

/// Result of comparing a method against the optimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Comparison {
    Ratio {
        #[serde(with = "serde_q")]
        ratio: Q,
    },
    /// `opt = 0` and the method returned the empty set.
    ExactZeroMatch,
    /// `opt = 0` but the method returned `size` elements.
    ZeroMismatch { size: usize },
}

impl Comparison {
    fn new(size: usize, opt: usize) -> Self {
        match (size, opt) {
            (0, 0) => Comparison::ExactZeroMatch,
            (size, 0) => Comparison::ZeroMismatch { size },
            _ => Comparison::Ratio { ratio: ratio(size, opt) },
        }
    }
}

/// `|method output| / opt` for an instance within the brute-force cap.
pub fn compare_against_bruteforce(
    problem: &Problem,
    method: &MethodSpec,
    seed: u64,
    caps: &BruteForceCaps,
) -> Result<Comparison, HarnessError> {
    let opt = brute_force_opt(problem, caps)?;
    let out = run_method(problem, method, seed)?;
    Ok(Comparison::new(out.solution.len(), opt))
}

/// Runs one (config, seed) pair. Errors end up in the report.
pub fn execute_run(experiment: &str, sweep: usize, config: &RunConfig, seed: u64) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport {
        experiment: experiment.to_string(),
        sweep,
        seed,
        config: config.clone(),
        instance: None,
        frac: None,
        output_size: None,
        valid: false,
        kernel: None,
        protocol: None,
        opt: None,
        opt_skipped: None,
        ratio: None,
        zero_opt_match: None,
        success: false,
        error: None,
        wall_time_ms: 0,
    };
    if let Err(e) = fill_report(&mut report, config, seed) {
        report.error = Some(e.to_string());
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report
}

fn fill_report(report: &mut RunReport, config: &RunConfig, seed: u64) -> Result<(), HarnessError> {
    let problem = config.generator.generate(config.problem, seed)?;
    report.instance = Some(problem.digest());
    report.frac = Some(lp::solve_primal(&problem.to_hs()).objective().clone());
    let out = run_method(&problem, &config.method, seed)?;
    let size = out.solution.len();
    report.output_size = Some(size);
    report.valid = verify_solution(problem.as_ref(), &out.solution).is_valid();
    report.kernel = out.kernel;
    report.protocol = out.protocol;
    if config.compute_opt {
        match brute_force_opt(&problem, &config.caps) {
            Ok(opt) => {
                report.opt = Some(opt);
                match Comparison::new(size, opt) {
                    Comparison::Ratio { ratio } => report.ratio = Some(ratio),
                    Comparison::ExactZeroMatch => report.zero_opt_match = Some(true),
                    Comparison::ZeroMismatch { .. } => report.zero_opt_match = Some(false),
                }
                if let Some(p) = report.protocol.as_mut() {
                    p.set_ratio(opt);
                }
            }
            Err(HarnessError::CapExceeded { size, cap }) => {
                report.opt_skipped = Some(format!("optimum skipped: size {size} exceeds cap {cap}"));
            }
            Err(e) => return Err(e),
        }
    }
    let ratio_ok = match (&config.ratio_target, &report.ratio) {
        (Some(target), Some(r)) => r <= target,
        _ => true,
    };
    let kernel_ok = report.kernel.as_ref().is_none_or(|k| k.within_bound && k.violations == 0);
    report.success = report.valid && kernel_ok && ratio_ok && report.zero_opt_match != Some(false);
    Ok(())
}

/// Reruns the run a report describes.
pub fn replay(report: &RunReport) -> RunReport {
    execute_run(&report.experiment, report.sweep, &report.config, report.seed)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub runs: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub errors: usize,
    pub invalid: usize,
    pub bound_violations: usize,
    pub structure_violations: usize,
    pub protocol_failures: usize,
    pub zero_opt_mismatches: usize,
    pub opt_skipped: usize,
    #[serde(with = "serde_opt_q")]
    pub max_ratio: Option<Q>,
}

impl ExperimentSummary {
    pub fn of(reports: &[RunReport]) -> Self {
        let count = |f: &dyn Fn(&RunReport) -> bool| reports.iter().filter(|r| f(r)).count();
        let runs = reports.len();
        let successes = count(&|r| r.success);
        ExperimentSummary {
            runs,
            successes,
            success_rate: if runs == 0 { 1.0 } else { successes as f64 / runs as f64 },
            errors: count(&|r| r.error.is_some()),
            invalid: count(&|r| r.error.is_none() && !r.valid),
            bound_violations: count(&|r| r.bound_violation()),
            structure_violations: count(&|r| r.kernel.as_ref().is_some_and(|k| k.violations > 0)),
            protocol_failures: count(&|r| r.protocol.as_ref().is_some_and(|p| p.failed())),
            zero_opt_mismatches: count(&|r| r.zero_opt_match == Some(false)),
            opt_skipped: count(&|r| r.opt_skipped.is_some()),
            max_ratio: reports.iter().filter_map(|r| r.ratio.clone()).max(),
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "runs {} success {}/{} errors {} invalid {} bound-violations {} structure-violations {} protocol-failures {} max-ratio {}",
            self.runs,
            self.successes,
            self.runs,
            self.errors,
            self.invalid,
            self.bound_violations,
            self.structure_violations,
            self.protocol_failures,
            self.max_ratio.as_ref().map(fmt_q).unwrap_or_else(|| "-".into()),
        )
    }
}

/// Runs every job of `spec` in parallel; the reports come back in job order.
pub fn run_experiment(spec: &ExperimentSpec) -> Vec<RunReport> {
    spec.jobs()
        .into_par_iter()
        .map(|(i, cfg, seed)| execute_run(&spec.name, i, &cfg, seed))
        .collect()
}

/// [`run_experiment`] plus JSON lines written to `sink` in order.
pub fn run_experiment_to(spec: &ExperimentSpec, sink: &mut dyn Write) -> Result<(Vec<RunReport>, ExperimentSummary), HarnessError> {
    let reports = run_experiment(spec);
    for r in &reports {
        writeln!(sink, "{}", r.json_line())?;
    }
    let summary = ExperimentSummary::of(&reports);
    Ok((reports, summary))
}

/// Lift data written next to a reduced instance by `kernel`, keyed by the
/// problem name (`{"cvd": {...}}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftContext {
    Hs(ElementLiftContext),
    Cvd(CvdLiftContext),
    Fvst(FvstLiftContext),
}

impl LiftContext {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn kind(&self) -> ProblemKind {
        match self {
            LiftContext::Hs(_) => ProblemKind::Hs,
            LiftContext::Cvd(_) => ProblemKind::Cvd,
            LiftContext::Fvst(_) => ProblemKind::Fvst,
        }
    }

    /// Maps a solution of the reduced instance (dense ids) back to the
    /// original instance. Returns the first id that is not in the reduced
    /// instance.
    pub fn lift(&self, s_prime: &Solution) -> Result<Solution, Id> {
        match self {
            LiftContext::Hs(c) => c.lift(s_prime),
            LiftContext::Cvd(c) => c.lift(s_prime),
            LiftContext::Fvst(c) => c.lift(s_prime),
        }
    }
}
