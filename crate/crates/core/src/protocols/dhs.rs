use std::collections::BTreeSet;

use super::{
    config_oracle, exceeds, execute, inverse_power, subfamily, Branch, FlagName, ProtocolConfig, ProtocolError, ProtocolKind,
    ProtocolReport, Run,
};
use crate::instances::{HypergraphInstance, Id, ProblemRef};
use crate::rational::{ceil_usize, to_f64};
use crate::solvers::{d_approx, HittingSetOracle};

/// d-Hitting Set protocol with `⌈(d-1)/ε⌉` calls.
pub fn dhs_protocol(inst: &HypergraphInstance, cfg: &ProtocolConfig) -> Result<ProtocolReport, ProtocolError> {
    dhs_protocol_with_oracle(inst, cfg, &mut config_oracle(cfg))
}

pub fn dhs_protocol_with_oracle(
    inst: &HypergraphInstance,
    cfg: &ProtocolConfig,
    oracle: &mut dyn HittingSetOracle,
) -> Result<ProtocolReport, ProtocolError> {
    execute(ProtocolKind::Dhs, inst, ProblemRef::Hs(inst), cfg, oracle, body)
}

/// `⌈(d-1)/ε⌉`, at least 1.
pub fn rounds(d: usize, cfg: &ProtocolConfig) -> usize {
    ceil_usize(&(crate::rational::qi((d - 1) as i64) / &cfg.epsilon)).max(1)
}

fn body(run: &mut Run<'_>, cfg: &ProtocolConfig) -> Result<(Branch, BTreeSet<Id>), ProtocolError> {
    let d = run.inst.d();
    let eps = to_f64(&cfg.epsilon);
    let tau = rounds(d, cfg);
    let d_frac = d as f64 * run.frac;
    let family = run.inst.family().to_vec();
    let universe: BTreeSet<Id> = run.inst.universe().iter().copied().collect();

    // Residual universe U_{i-1} and the family indices of T_{i-1}.
    let mut u_prev = universe.clone();
    let mut t_prev: Vec<usize> = (0..family.len()).collect();
    run.universe_sizes.push(u_prev.len());
    let mut last = BTreeSet::new();
    for i in 1..=tau {
        let exponent = d as f64 - 1.0 - i as f64 * eps;
        let p = if exponent <= 0.0 { 1.0 } else { inverse_power(d_frac, exponent) };
        let picked: Vec<usize> = t_prev
            .iter()
            .copied()
            .filter(|&j| run.sampler.keep(i as u64, j as u64, p))
            .collect();
        let bound = 2f64.powi(i as i32) * d_frac.powf(1.0 + eps);
        if run.flag(FlagName::SampleTooLarge, i, exceeds(picked.len(), bound)) {
            return Ok(run.fallback());
        }
        let s_i = run.call(&subfamily(&u_prev, &family, &picked, d))?;
        // |S_i| >= (μ/d)|U_{i-1}| with μ = (d+1)/2.
        if 2 * d * s_i.len() >= (d + 1) * u_prev.len() {
            let outside: BTreeSet<Id> = universe.difference(&u_prev).copied().collect();
            let t = d_approx(&run.inst.induced(&outside)).elements;
            return Ok((Branch::EarlyLarge, t.union(&u_prev).copied().collect()));
        }
        if i == tau {
            last = s_i;
            break;
        }
        let u_i: BTreeSet<Id> = u_prev.difference(&s_i).copied().collect();
        t_prev.retain(|&j| family[j].iter().all(|e| u_i.contains(e)));
        run.universe_sizes.push(u_i.len());
        u_prev = u_i;
    }
    let outside = universe.difference(&u_prev).copied();
    Ok((Branch::FinalSmall, last.iter().copied().chain(outside).collect()))
}
