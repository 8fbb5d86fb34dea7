use std::collections::BTreeSet;

use super::{
    config_oracle, exceeds, execute, inverse_power, subfamily, Branch, FlagName, ProtocolConfig, ProtocolError, ProtocolKind,
    ProtocolReport, Run,
};
use crate::instances::{Graph, Id, ProblemRef};
use crate::solvers::{d_approx, HittingSetOracle};

/// Two-call Vertex Cover protocol with ratio below 1.721.
pub fn vc_protocol(g: &Graph, cfg: &ProtocolConfig) -> Result<ProtocolReport, ProtocolError> {
    vc_protocol_with_oracle(g, cfg, &mut config_oracle(cfg))
}

pub fn vc_protocol_with_oracle(
    g: &Graph,
    cfg: &ProtocolConfig,
    oracle: &mut dyn HittingSetOracle,
) -> Result<ProtocolReport, ProtocolError> {
    execute(ProtocolKind::Vc2, &g.to_hs(), ProblemRef::Vc(g), cfg, oracle, body)
}

/// `a >= (√10/2 - 1)·b`, decided exactly as `4(a+b)² >= 10b²`.
fn at_least_nu(a: usize, b: usize) -> bool {
    let (a, b) = (a as u128, b as u128);
    4 * (a + b) * (a + b) >= 10 * b * b
}

fn body(run: &mut Run<'_>, _cfg: &ProtocolConfig) -> Result<(Branch, BTreeSet<Id>), ProtocolError> {
    let universe: BTreeSet<Id> = run.inst.universe().iter().copied().collect();
    let family = run.inst.family().to_vec();
    let two_frac = 2.0 * run.frac;

    let p1 = inverse_power(two_frac, 0.5);
    let sample = run.sampler.sample(1, family.len(), p1);
    if run.flag(FlagName::SampleTooLarge, 1, exceeds(sample.len(), 2.0 * p1 * family.len() as f64)) {
        return Ok(run.fallback());
    }
    let s1 = run.call(&subfamily(&universe, &family, &sample, 2))?;
    if at_least_nu(s1.len(), universe.len()) {
        return Ok((Branch::EarlyLarge, universe));
    }

    let u1: BTreeSet<Id> = universe.difference(&s1).copied().collect();
    let t1 = run.inst.induced(&u1);
    if run.flag(FlagName::ResidualTooDense, 1, exceeds(t1.m(), 2.0 * two_frac.powf(1.5))) {
        return Ok(run.fallback());
    }
    let s2 = run.call(&t1)?;

    let first: BTreeSet<Id> = s2.union(&s1).copied().collect();
    let inside_s1 = d_approx(&run.inst.induced(&s1)).elements;
    let second: BTreeSet<Id> = u1.union(&inside_s1).copied().collect();
    Ok((Branch::FinalSmall, if second.len() < first.len() { second } else { first }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_threshold_is_exact() {
        // ν ≈ 0.5811
        assert!(at_least_nu(59, 100) && !at_least_nu(58, 100));
        assert!(at_least_nu(0, 0));
    }

    #[test]
    fn triangle_goes_brute_force() {
        let g = Graph::dense(3, [(1, 2), (1, 3), (2, 3)]).unwrap();
        let r = vc_protocol(&g, &ProtocolConfig::default()).unwrap();
        assert_eq!(r.branch_taken, Branch::BruteForce);
        assert_eq!(r.solution.len(), 2);
        assert_eq!(r.rounds_used, 0);
    }

    #[test]
    fn edgeless_graph() {
        let g = Graph::dense(5, []).unwrap();
        let r = vc_protocol(&g, &ProtocolConfig::default()).unwrap();
        assert!(r.solution.is_empty());
        assert!(r.call_sizes.is_empty());
    }
}
