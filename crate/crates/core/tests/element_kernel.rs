mod common;

use std::collections::BTreeSet;

use lossy_hs::element_kernel::{approx_conditions, balanced_rho, lift, reduce};
use lossy_hs::error::KernelError;
use lossy_hs::instances::*;
use lossy_hs::lp;
use lossy_hs::rational::{q, qi, ratio, Q};
use proptest::prelude::*;

fn star() -> HypergraphInstance {
    Graph::dense(4, [(1, 2), (1, 3), (1, 4)]).unwrap().to_hs()
}

fn exact_lift_size(inst: &HypergraphInstance) -> (usize, usize, usize) {
    let r = reduce(inst).unwrap();
    let s_prime = lossy_hs::solvers::exact_hs(&r.reduced, None).unwrap();
    let s = lift(&r, &Solution::hs(s_prime.elements.iter().copied())).unwrap();
    assert!(inst.is_hitting_set(&s.elements));
    (s_prime.len(), s.len(), common::brute_force_opt(inst).0)
}

#[test]
fn single_edge_basic_optimum() {
    // A basic optimum of a single edge is integral, so one endpoint reaches
    // the threshold 1 and the kernel is empty.
    let edge = Graph::dense(2, [(1, 2)]).unwrap().to_hs();
    let r = reduce(&edge).unwrap();
    assert_eq!(r.h_star.len(), 1);
    assert_eq!(r.reduced.m(), 0);
    assert_eq!(lift(&r, &Solution::hs([])).unwrap().len(), 1);
}

#[test]
fn triangle_is_unchanged() {
    // All halves is the unique optimum of K3 and stays below the threshold.
    let k3 = Graph::dense(3, [(1, 2), (1, 3), (2, 3)]).unwrap().to_hs();
    let r = reduce(&k3).unwrap();
    assert!(r.h_star.is_empty());
    assert_eq!(r.reduced, k3);
    let s = lift(&r, &Solution::hs([1, 2])).unwrap();
    assert_eq!(s.elements, BTreeSet::from([1, 2]));
}

#[test]
fn star_center_is_absorbed() {
    let inst = star();
    // Center at 1 is the unique optimum: the dual puts weight on a single
    // edge and complementary slackness forces every leaf to zero.
    let sol = lp::solve(&inst);
    assert_eq!(sol.frac(), &qi(1));
    assert_eq!(sol.primal.value(1), qi(1));
    let r = reduce(&inst).unwrap();
    assert_eq!(r.h_star, BTreeSet::from([1]));
    assert_eq!(r.reduced.n(), 0);
    assert_eq!(r.reduced.m(), 0);
    let s = lift(&r, &Solution::hs([])).unwrap();
    assert_eq!(s.elements, BTreeSet::from([1]));
    let c = approx_conditions(2, 0, 1, 1, &qi(1));
    assert!(c.additive_ok);
}

#[test]
fn partition_lift_is_optimal() {
    let inst = gen_partition_tight(6, 3).unwrap();
    let (_, s, opt) = exact_lift_size(&inst);
    assert_eq!((s, opt), (2, 2));
}

#[test]
fn empty_family_keeps_solution() {
    let inst = HypergraphInstance::new(3, [1, 2, 3], Vec::<Vec<Id>>::new()).unwrap();
    let r = reduce(&inst).unwrap();
    assert!(r.h_star.is_empty());
    assert_eq!(r.reduced.n(), 0);
    assert_eq!(lift(&r, &Solution::hs([])).unwrap().len(), 0);
}

#[test]
fn lift_rejects_invalid_reduced_solution() {
    let k3 = Graph::dense(3, [(1, 2), (1, 3), (2, 3)]).unwrap().to_hs();
    let r = reduce(&k3).unwrap();
    assert!(matches!(lift(&r, &Solution::hs([1])), Err(KernelError::InvalidReducedSolution(_))));
}

#[test]
fn rank_one_is_rejected() {
    let inst = HypergraphInstance::new(1, [1], [vec![1]]).unwrap();
    assert!(matches!(reduce(&inst), Err(KernelError::RankTooSmall(1))));
}

#[test]
fn balanced_rho_values() {
    assert_eq!(balanced_rho(2), q(1, 2));
    assert_eq!(balanced_rho(3), q(4, 3));
    // At the balanced ρ the ratio alternative equals d - (d-1)/d.
    for d in 2..6usize {
        let rho = balanced_rho(d);
        let lhs = qi(d as i64) - rho / qi(d as i64 - 1);
        assert_eq!(lhs, qi(d as i64) - ratio(d - 1, d));
    }
}

#[test]
fn approx_conditions_examples() {
    assert!(approx_conditions(3, 4, 4, 4, &qi(1)).additive_ok);
    let c = approx_conditions(2, 0, 3, 1, &q(1, 2));
    assert!(!c.additive_ok && !c.ratio_ok);
    assert!(approx_conditions(2, 0, 0, 0, &q(1, 2)).ratio_ok);
}

#[test]
fn disjunction_holds_on_random_rank_three() {
    let rho = balanced_rho(3);
    for seed in 0..500 {
        let inst = gen_random_hs(12, 10, 3, seed).unwrap();
        let (sp, s, opt) = exact_lift_size(&inst);
        let c = approx_conditions(3, sp, s, opt, &rho);
        assert!(c.additive_ok || c.ratio_ok, "seed {seed}");
    }
}

#[test]
fn exact_for_graphs() {
    for seed in 0..60 {
        let g = gen_random_graph(14, 0.25, seed).unwrap();
        let (_, s, opt) = exact_lift_size(&g.to_hs());
        assert_eq!(s, opt, "seed {seed}");
    }
}

fn instance() -> impl Strategy<Value = HypergraphInstance> {
    (2usize..4, 4usize..15, 1usize..25, any::<u64>()).prop_filter_map("too many sets", |(d, n, m, seed)| gen_random_hs(n, m, d, seed).ok())
}

proptest! {
    #[test]
    fn structural_invariants(inst in instance()) {
        let r = reduce(&inst).unwrap();
        let expected: Vec<Vec<Id>> = inst.family().iter()
            .filter(|s| !s.iter().any(|e| r.h_star.contains(e)))
            .cloned()
            .collect();
        prop_assert_eq!(r.reduced.family(), &expected[..]);
        prop_assert_eq!(r.reduced.covered_elements().len(), r.reduced.n());

        let mut seen = BTreeSet::new();
        for round in &r.rounds {
            prop_assert!(!round.removed.is_empty());
            prop_assert!(round.removed.iter().all(|e| seen.insert(*e)));
        }
        prop_assert_eq!(&seen, &r.h_star);

        let resolved = lp::solve(&r.reduced);
        prop_assert_eq!(resolved.frac(), &r.frac_out);
        prop_assert!(r.within_bounds());
        prop_assert!(r.frac_drops_ok());
        let threshold = ratio(1, inst.d() - 1);
        prop_assert!(r.final_alpha.values().values().all(|v| *v < threshold));
        let full = lp::solve(&inst);
        prop_assert_eq!(&r.frac_in, full.frac());
    }

    #[test]
    fn lift_is_valid_and_disjoint(inst in instance()) {
        let r = reduce(&inst).unwrap();
        let all = Solution::hs(r.reduced.universe().iter().copied());
        let s = lift(&r, &all).unwrap();
        prop_assert!(inst.is_hitting_set(&s.elements));
        prop_assert_eq!(s.len(), r.reduced.n() + r.h_star.len());
    }

    #[test]
    fn ratio_bound_with_exact_kernel_solution(inst in instance()) {
        let (_, s, opt) = exact_lift_size(&inst);
        let d = inst.d();
        if opt > 0 {
            let bound: Q = qi(d as i64) - ratio(d - 1, d);
            prop_assert!(ratio(s, opt) <= bound);
        } else {
            prop_assert_eq!(s, 0);
        }
    }
}
