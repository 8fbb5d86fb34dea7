use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{
    config_oracle, exceeds, execute, inverse_power, Branch, FlagName, ProtocolConfig, ProtocolError, ProtocolKind, ProtocolReport,
    RszRound, Run,
};
use crate::element_kernel;
use crate::instances::{Graph, Id, ProblemRef};
use crate::rational::{ratio, Q};
use crate::solvers::{maximal_matching, HittingSetOracle};

/// Vertex Cover protocol with ratio `1 + 4c` and at most `t + 1` calls.
///
/// Running all `t + 1` rounds without success means the kernel contains a
/// Ruzsa–Szemerédi structure; this is flagged and can be recovered with
/// [`extract_ruzsa_witness`].
pub fn rsz_protocol(g: &Graph, cfg: &ProtocolConfig) -> Result<ProtocolReport, ProtocolError> {
    rsz_protocol_with_oracle(g, cfg, &mut config_oracle(cfg))
}

pub fn rsz_protocol_with_oracle(
    g: &Graph,
    cfg: &ProtocolConfig,
    oracle: &mut dyn HittingSetOracle,
) -> Result<ProtocolReport, ProtocolError> {
    execute(ProtocolKind::Rsz, &g.to_hs(), ProblemRef::Vc(g), cfg, oracle, body)
}

fn kernel_graph(run: &Run<'_>) -> Graph {
    Graph::new(run.inst.universe().iter().copied(), run.inst.family().iter().map(|e| (e[0], e[1]))).expect("kernel of a graph is a graph")
}

fn body(run: &mut Run<'_>, cfg: &ProtocolConfig) -> Result<(Branch, BTreeSet<Id>), ProtocolError> {
    let g = kernel_graph(run);
    let edges: Vec<(Id, Id)> = g.edges().collect();
    let two_frac = 2.0 * run.frac;
    let p = inverse_power(two_frac, 0.5);
    let threshold: Q = &cfg.c * Q::from_integer(g.n().into());
    let mut accumulated: BTreeSet<(Id, Id)> = BTreeSet::new();

    for i in 1..=cfg.t + 1 {
        let sample: Vec<(Id, Id)> = run.sampler.sample(i as u64, edges.len(), p).into_iter().map(|j| edges[j]).collect();
        if run.flag(FlagName::SampleTooLarge, i, exceeds(sample.len(), 2.0 * p * edges.len() as f64)) {
            return Ok(run.fallback());
        }
        let query =
            Graph::new(g.vertices(), accumulated.iter().chain(&sample).copied().collect::<BTreeSet<_>>()).expect("subgraph of the kernel");
        let s_i = run.call(&query.to_hs())?;
        let rest = g.remove_vertices(&s_i);
        let m_i = maximal_matching(&rest);
        run.rsz_rounds.push(RszRound {
            oracle_answer: s_i.iter().copied().collect(),
            matching: m_i.clone(),
            residual_edges: rest.m(),
        });
        if ratio(m_i.len(), 1) < threshold {
            let covered = m_i.iter().flat_map(|&(u, v)| [u, v]);
            return Ok((Branch::FinalSmall, s_i.iter().copied().chain(covered).collect()));
        }
        if run.flag(FlagName::ResidualTooDense, i, exceeds(rest.m(), 2.0 * two_frac.powf(1.5))) {
            return Ok(run.fallback());
        }
        accumulated.extend(rest.edges());
    }
    run.flag(FlagName::RuzsaWitness, cfg.t + 1, true);
    Ok(run.fallback())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRound {
    /// `U_i = V ∖ S_i`.
    pub kept: BTreeSet<Id>,
    pub matching: Vec<(Id, Id)>,
}

/// Rounds of a run that never succeeded, on the kernel graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuzsaWitness {
    /// Common matching size: the first `r` edges of every matching are used.
    pub r: usize,
    pub rounds: Vec<WitnessRound>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("the run recorded no Ruzsa-Szemerédi event")]
    NoWitness,
    #[error("kernel recomputation failed: {0}")]
    Kernel(String),
    #[error("round {0}: matching is not a matching of G[U_i] with at least r edges")]
    BadMatching(usize),
    #[error("rounds {0} and {1}: G[U_i] and G[U_j] share an edge")]
    SharedEdge(usize, usize),
    #[error("round {0}: matching is not induced in the union of the matchings")]
    NotInduced(usize),
}

impl RuzsaWitness {
    /// The union of the truncated matchings.
    pub fn graph(&self) -> BTreeSet<(Id, Id)> {
        self.rounds
            .iter()
            .flat_map(|r| r.matching.iter().take(self.r))
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect()
    }

    /// Checks the structure against the kernel graph `g`.
    pub fn verify(&self, g: &Graph) -> Result<(), WitnessError> {
        for (i, round) in self.rounds.iter().enumerate() {
            let mut seen = BTreeSet::new();
            let ok = round.matching.len() >= self.r
                && round.matching.iter().all(|&(u, v)| {
                    g.adjacent(u, v) && round.kept.contains(&u) && round.kept.contains(&v) && seen.insert(u) && seen.insert(v)
                });
            if !ok {
                return Err(WitnessError::BadMatching(i + 1));
            }
        }
        for (i, a) in self.rounds.iter().enumerate() {
            for (j, b) in self.rounds.iter().enumerate().skip(i + 1) {
                let common: BTreeSet<Id> = a.kept.intersection(&b.kept).copied().collect();
                if g.induced(&common).m() > 0 {
                    return Err(WitnessError::SharedEdge(i + 1, j + 1));
                }
            }
        }
        let union = self.graph();
        for (i, round) in self.rounds.iter().enumerate() {
            let own: BTreeSet<(Id, Id)> = round.matching.iter().take(self.r).map(|&(u, v)| (u.min(v), u.max(v))).collect();
            let touched: BTreeSet<Id> = own.iter().flat_map(|&(u, v)| [u, v]).collect();
            if own.len() != self.r
                || union
                    .iter()
                    .any(|e| touched.contains(&e.0) && touched.contains(&e.1) && !own.contains(e))
            {
                return Err(WitnessError::NotInduced(i + 1));
            }
        }
        Ok(())
    }
}

/// Rebuilds the witness of a run that went through all `t + 1` rounds and verifies it.
///
/// `g` must be the graph the report was produced from.
pub fn extract_ruzsa_witness(report: &ProtocolReport, g: &Graph) -> Result<RuzsaWitness, WitnessError> {
    if !report.ruzsa_event() {
        return Err(WitnessError::NoWitness);
    }
    let kernel = element_kernel::reduce(&g.to_hs()).map_err(|e| WitnessError::Kernel(e.to_string()))?;
    let kg = Graph::new(
        kernel.reduced.universe().iter().copied(),
        kernel.reduced.family().iter().map(|e| (e[0], e[1])),
    )
    .map_err(|e| WitnessError::Kernel(e.to_string()))?;
    let rounds: Vec<WitnessRound> = report
        .rsz_rounds
        .iter()
        .map(|r| {
            let answer: BTreeSet<Id> = r.oracle_answer.iter().copied().collect();
            WitnessRound {
                kept: kg.vertices().filter(|v| !answer.contains(v)).collect(),
                matching: r.matching.clone(),
            }
        })
        .collect();
    let r = rounds.iter().map(|w| w.matching.len()).min().unwrap_or(0);
    let witness = RuzsaWitness { r, rounds };
    witness.verify(&kg)?;
    Ok(witness)
}
