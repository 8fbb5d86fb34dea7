use std::collections::BTreeSet;

use lossy_hs::instances::*;
use lossy_hs::protocols::*;
use lossy_hs::rational::{q, qi, ratio, to_f64, Q};
use lossy_hs::solvers::{exact_hs, HittingSetOracle, OracleKind, PadStrategy, SolverError};

fn vc_bound() -> Q {
    q(1721, 1000)
}

/// `3(1 - h(3, 1))` with `h(d, ε) = (1/4)^(d/ε) / (10d)`.
fn dhs_bound_d3_eps1() -> Q {
    let h = q(1, 30) * q(1, 64);
    assert_eq!(h, q(1, 1920));
    qi(3) * (qi(1) - h)
}

fn with_opt(mut r: ProtocolReport, inst: &HypergraphInstance) -> ProtocolReport {
    r.set_ratio(exact_hs(inst, None).unwrap().len());
    r
}

#[test]
fn small_instances_are_solved_exactly() {
    let k3 = Graph::dense(3, [(1, 2), (1, 3), (2, 3)]).unwrap();
    let cfg = ProtocolConfig::default();
    for r in [
        vc_protocol(&k3, &cfg).unwrap(),
        rsz_protocol(&k3, &ProtocolConfig { t: 2, ..cfg.clone() }).unwrap(),
    ] {
        assert_eq!(r.branch_taken, Branch::BruteForce);
        assert_eq!(r.solution.len(), 2);
        assert_eq!(r.rounds_used, 0);
    }
    let part = gen_partition_tight(6, 3).unwrap();
    let r = dhs_protocol(&part, &cfg).unwrap();
    assert_eq!((r.branch_taken, r.solution.len()), (Branch::BruteForce, 2));
}

#[test]
fn empty_families() {
    let g = Graph::dense(5, []).unwrap();
    let cfg = ProtocolConfig {
        brute_force_frac_threshold: qi(0),
        ..ProtocolConfig::default()
    };
    for r in [
        vc_protocol(&g, &cfg).unwrap(),
        rsz_protocol(&g, &cfg).unwrap(),
        dhs_protocol(&g.to_hs(), &cfg).unwrap(),
    ] {
        assert!(r.solution.is_empty());
        assert!(r.call_sizes.iter().all(|c| c.sets == 0));
    }
}

#[test]
fn bad_configs_are_rejected() {
    let g = Graph::dense(2, [(1, 2)]).unwrap();
    for cfg in [
        ProtocolConfig {
            c: q(1, 4),
            ..ProtocolConfig::default()
        },
        ProtocolConfig {
            epsilon: qi(0),
            ..ProtocolConfig::default()
        },
        ProtocolConfig {
            brute_force_frac_threshold: qi(-1),
            ..ProtocolConfig::default()
        },
    ] {
        assert!(matches!(vc_protocol(&g, &cfg), Err(ProtocolError::BadConfig(_))));
    }
}

#[test]
fn vc_protocol_on_random_graphs() {
    for seed in 0..20 {
        let g = gen_random_graph(40, 0.15, seed).unwrap();
        let cfg = ProtocolConfig {
            seed,
            ..ProtocolConfig::default()
        };
        let r = with_opt(vc_protocol(&g, &cfg).unwrap(), &g.to_hs());
        assert!(verify_solution(ProblemRef::Vc(&g), &r.solution).is_valid());
        assert!(r.rounds_used <= 2);
        assert_eq!(r.call_sizes.len(), r.rounds_used);
        let frac = to_f64(&r.frac);
        let volume = 2.0 * frac + 2.0 * (2.0 * frac).powf(1.5);
        for c in &r.call_sizes {
            assert!(c.elements as f64 <= 2.0 * frac + 1e-9, "seed {seed}");
            if !r.failed() {
                assert!(((c.elements + c.sets) as f64) <= volume, "seed {seed}");
            }
        }
        if !r.failed() {
            assert!(r.ratio.clone().unwrap() <= vc_bound(), "seed {seed}");
        }
        assert_eq!(vc_protocol(&g, &cfg).unwrap().solution, r.solution);
    }
}

#[test]
fn dhs_protocol_on_random_instances() {
    let cfg0 = ProtocolConfig::default();
    for seed in 0..10 {
        let inst = gen_random_hs(40, 150, 3, seed).unwrap();
        let cfg = ProtocolConfig { seed, ..cfg0.clone() };
        let r = with_opt(dhs_protocol(&inst, &cfg).unwrap(), &inst);
        assert!(inst.is_hitting_set(&r.solution.elements));
        assert!(r.rounds_used <= 2);
        let d_frac = 3.0 * to_f64(&r.frac);
        for (i, c) in r.call_sizes.iter().enumerate() {
            if !r.failed() {
                assert!(c.sets as f64 <= 2f64.powi(i as i32 + 1) * d_frac * d_frac);
            }
        }
        // |U_i| >= (1 - μ/d)^i |U| with μ/d = 2/3.
        if let Some(&u0) = r.universe_sizes.first() {
            for (i, &u) in r.universe_sizes.iter().enumerate() {
                assert!(ratio(u, 1) >= ratio(u0, 3usize.pow(i as u32)), "seed {seed}");
            }
        }
        if !r.failed() {
            assert!(r.ratio.clone().unwrap() <= dhs_bound_d3_eps1(), "seed {seed}");
        }
        assert_eq!(with_opt(dhs_protocol(&inst, &cfg).unwrap(), &inst), r);
    }
}

#[test]
fn rsz_protocol_on_random_graphs() {
    for seed in 0..20 {
        let g = gen_random_graph(50, 0.1, seed).unwrap();
        let cfg = ProtocolConfig {
            seed,
            c: q(1, 5),
            t: 3,
            ..ProtocolConfig::default()
        };
        let r = with_opt(rsz_protocol(&g, &cfg).unwrap(), &g.to_hs());
        assert!(verify_solution(ProblemRef::Vc(&g), &r.solution).is_valid());
        assert!(r.rounds_used <= 4);
        if !r.failed() {
            assert!(r.ratio.clone().unwrap() <= q(9, 5), "seed {seed}");
            assert!(matches!(extract_ruzsa_witness(&r, &g), Err(WitnessError::NoWitness)));
        }
        assert_eq!(with_opt(rsz_protocol(&g, &cfg).unwrap(), &g.to_hs()), r);
    }
}

#[test]
fn adversarial_oracle_scales_the_ratio() {
    let beta = q(6, 5);
    for seed in 0..10 {
        let g = gen_random_graph(40, 0.15, seed).unwrap();
        let oracle = OracleKind::Adversarial {
            beta: beta.clone(),
            strategy: PadStrategy::Highest,
        };
        let cfg = ProtocolConfig {
            seed,
            oracle,
            ..ProtocolConfig::default()
        };
        let r = with_opt(vc_protocol(&g, &cfg).unwrap(), &g.to_hs());
        assert!(verify_solution(ProblemRef::Vc(&g), &r.solution).is_valid());
        if !r.failed() {
            assert!(r.ratio.clone().unwrap() <= &beta * vc_bound(), "seed {seed}");
        }
        let r = with_opt(rsz_protocol(&g, &cfg).unwrap(), &g.to_hs());
        if !r.failed() {
            assert!(r.ratio.clone().unwrap() <= &beta * q(9, 5), "seed {seed}");
        }
    }
}

/// On disjoint triangles `{3j+1, 3j+2, 3j+3}`: the first answer takes every
/// third vertex, later answers every second one, and any edge still uncovered
/// gets its larger endpoint. Each round then leaves one edge per triangle.
struct Rotating {
    calls: u32,
}

impl HittingSetOracle for Rotating {
    fn query(&mut self, inst: &HypergraphInstance) -> Result<Solution, SolverError> {
        let class = if self.calls == 0 { 0 } else { 2 };
        self.calls += 1;
        let mut chosen: BTreeSet<Id> = inst.universe().iter().copied().filter(|v| v % 3 == class).collect();
        for set in inst.family() {
            if !set.iter().any(|e| chosen.contains(e)) {
                chosen.insert(*set.iter().max().unwrap());
            }
        }
        Ok(Solution::hs(chosen))
    }
}

fn disjoint_triangles(k: u32) -> Graph {
    let edges = (0..k).flat_map(|j| {
        let (a, b, c) = (3 * j + 1, 3 * j + 2, 3 * j + 3);
        [(a, b), (a, c), (b, c)]
    });
    Graph::dense(3 * k as usize, edges).unwrap()
}

#[test]
fn forced_ruzsa_witness_verifies() {
    let g = disjoint_triangles(30);
    let mut events = 0;
    for seed in 0..10 {
        let cfg = ProtocolConfig {
            seed,
            c: q(1, 5),
            t: 1,
            brute_force_frac_threshold: qi(0),
            ..ProtocolConfig::default()
        };
        let r = rsz_protocol_with_oracle(&g, &cfg, &mut Rotating { calls: 0 }).unwrap();
        assert!(verify_solution(ProblemRef::Vc(&g), &r.solution).is_valid());
        if !r.ruzsa_event() {
            continue;
        }
        events += 1;
        assert_eq!(r.rounds_used, 2);
        let w = extract_ruzsa_witness(&r, &g).unwrap();
        assert_eq!(w.rounds.len(), 2);
        assert!(w.r >= 18);

        let mut broken = w.clone();
        let stolen = broken.rounds[0].matching[0];
        broken.rounds[1].matching[0] = stolen;
        broken.rounds[1].kept.extend([stolen.0, stolen.1]);
        assert!(broken.verify(&g).is_err(), "seed {seed}");
    }
    assert!(events >= 5, "only {events} witness events");
}
