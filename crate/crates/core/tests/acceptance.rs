//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion and fails
//! if any criterion fails. Every sweep is run twice; the second pass is the
//! determinism criterion.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use lossy_hs::cvd_kernel::cvd_reduce;
use lossy_hs::element_kernel;
use lossy_hs::fvst_kernel::fvst_reduce;
use lossy_hs::harness::{run_experiment, ExperimentSpec, GeneratorSpec, RunReport};
use lossy_hs::instances::*;
use lossy_hs::lp::{self, DualAssignment, RationalAssignment};
use lossy_hs::protocols::{extract_ruzsa_witness, ProtocolReport};
use lossy_hs::rational::{fmt_q, q, qi, ratio, to_f64, Q};
use lossy_hs::solvers::exact_hs;
use serde_json::json;

/// Slack on the two float-valued call-size bounds (`(2frac)^1.5`, `(d·frac)^2`
/// is exact but shares the code path).
const FLOAT_SLACK: f64 = 1e-9;
/// Minimum success rate of the two-round vertex cover protocol.
const VC_SUCCESS_RATE: f64 = 0.85;
/// Ratio bound of the two-round vertex cover protocol.
fn vc_factor() -> Q {
    q(1721, 1000)
}
/// `3(1 - h(3, 1))`, `h(d, ε) = (1/4)^(d/ε) / (10d)`.
fn dhs_factor() -> Q {
    qi(3) * (qi(1) - q(1, 64) / qi(30))
}
fn rsz_factor() -> Q {
    q(9, 5)
}
fn oracle_beta() -> Q {
    q(6, 5)
}

struct Outcome {
    /// Deterministic JSON lines describing every run.
    lines: Vec<String>,
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            lines: Vec::new(),
            failures: Vec::new(),
            summary: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn reports(&mut self, reports: &[RunReport]) {
        self.lines.extend(reports.iter().map(RunReport::canonical_line));
        for r in reports {
            self.check(r.error.is_none(), || {
                format!("sweep {} seed {}: {}", r.sweep, r.seed, r.error.clone().unwrap())
            });
        }
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn sweep(toml: &str) -> Vec<RunReport> {
    run_experiment(&ExperimentSpec::parse(toml).expect("acceptance sweeps parse"))
}

fn lp_corpus() -> Vec<(usize, u64, HypergraphInstance)> {
    let mut out = Vec::new();
    for d in 2..=4 {
        for seed in 0..500 {
            let m = 20 + (seed as usize % 31);
            out.push((d, seed, gen_random_hs(40, m, d, seed).unwrap()));
        }
    }
    out
}

fn c1_lp_support() -> Outcome {
    let mut o = Outcome::new();
    let mut violations = 0;
    for (d, seed, inst) in lp_corpus() {
        let sol = lp::solve(&inst);
        let support = sol.primal.support().len();
        let bound = qi(d as i64) * sol.frac();
        let ok = ratio(support, 1) <= bound && lp::check_optimal_pair(&sol.primal, &sol.dual, &inst) == Ok(true);
        violations += usize::from(!ok);
        o.check(ok, || format!("d {d} seed {seed}: support {support} > {}", fmt_q(&bound)));
        o.lines
            .push(json!({"d": d, "seed": seed, "frac": fmt_q(sol.frac()), "support": support}).to_string());
    }
    for n in [6, 12, 30] {
        let inst = gen_partition_tight(n, 3).unwrap();
        let uniform = RationalAssignment::uniform(&inst, &q(1, 3));
        let dual = DualAssignment::new(vec![qi(1); inst.m()]);
        o.check(lp::check_optimal_pair(&uniform, &dual, &inst) == Ok(true), || {
            format!("partition {n}: 1/d not optimal")
        });
        let frac = lp::solve(&inst).frac().clone();
        o.check(ratio(uniform.support().len(), 1) == qi(3) * &frac, || {
            format!("partition {n}: support != d·frac")
        });
        o.lines.push(json!({"partition": n, "frac": fmt_q(&frac)}).to_string());
    }
    o.summary = format!("1500 random instances, {violations} violations; partition n=6,12,30 tight");
    o
}

fn c2_element_kernel_sizes() -> Outcome {
    let mut o = Outcome::new();
    let mut largest = 0usize;
    for (d, seed, inst) in lp_corpus() {
        let r = element_kernel::reduce(&inst).unwrap();
        let frac_out = lp::solve(&r.reduced).frac().clone();
        let d_frac = qi(d as i64) * &frac_out;
        let mut sets_bound = qi(1);
        for _ in 0..d {
            sets_bound *= &d_frac;
        }
        o.check(ratio(r.reduced.n(), 1) <= d_frac, || {
            format!("d {d} seed {seed}: |U'| {} > {}", r.reduced.n(), fmt_q(&d_frac))
        });
        o.check(ratio(r.reduced.m(), 1) <= sets_bound, || {
            format!("d {d} seed {seed}: |F'| {} too large", r.reduced.m())
        });
        o.check(frac_out == r.frac_out, || format!("d {d} seed {seed}: reported frac(I') differs"));
        largest = largest.max(r.reduced.n());
        o.lines.push(
            json!({"d": d, "seed": seed, "n": r.reduced.n(), "m": r.reduced.m(), "frac": fmt_q(&frac_out), "h_star": r.h_star.len()})
                .to_string(),
        );
    }
    o.summary = format!("1500 runs, largest |U'| = {largest}");
    o
}

fn c3_element_kernel_ratio() -> Outcome {
    let mut o = Outcome::new();
    let mut worst = qi(0);
    for d in [2usize, 3] {
        let target = qi(d as i64) - ratio(d - 1, d);
        let reports = sweep(&format!(
            r#"
            [[sweep]]
            problem = "hs"
            generator = {{ kind = "random-hs", n = 18, m = 16, d = {d} }}
            method = {{ kind = "element-kernel" }}
            seeds = {{ count = 300 }}
            ratio_target = "{}"
            "#,
            fmt_q(&target)
        ));
        o.reports(&reports);
        for r in &reports {
            let inst = GeneratorSpec::RandomHs { n: 18, m: 16, d }
                .generate(ProblemKind::Hs, r.seed)
                .unwrap()
                .to_hs();
            let (opt, _) = common::brute_force_opt(&inst);
            o.check(r.opt == Some(opt), || {
                format!("d {d} seed {}: opt {:?} vs enumeration {opt}", r.seed, r.opt)
            });
            let out = r.output_size.unwrap_or(usize::MAX);
            o.check(r.valid && ratio(out, 1) <= &target * ratio(opt, 1), || {
                format!("d {d} seed {}: {out} vs opt {opt}", r.seed)
            });
            if d == 2 {
                o.check(out == opt, || format!("seed {}: graph lift {out} not optimal ({opt})", r.seed));
            }
            if let Some(x) = &r.ratio {
                worst = worst.max(x.clone());
            }
        }
    }
    o.summary = format!("600 runs, worst ratio {}", fmt_q(&worst));
    o
}

fn protocol_sweep(problem: &str, generator: &str, protocol: &str, config: &str, caps: &str) -> Vec<RunReport> {
    sweep(&format!(
        r#"
        caps = {{ {caps} }}
        [[sweep]]
        problem = "{problem}"
        generator = {generator}
        method = {{ kind = "protocol", protocol = "{protocol}", config = {{ {config} }} }}
        seeds = {{ count = 100 }}
        "#
    ))
}

fn protocol_of(r: &RunReport) -> &ProtocolReport {
    r.protocol.as_ref().expect("protocol runs carry a protocol report")
}

/// Returns (non-failure runs, runs meeting `factor`).
fn vc_checks(o: &mut Outcome, reports: &[RunReport], factor: &Q) -> (usize, usize) {
    let (mut clean, mut met) = (0, 0);
    for r in reports {
        let p = protocol_of(r);
        o.check(r.valid, || format!("seed {}: invalid cover", r.seed));
        let two_frac = 2.0 * to_f64(&p.frac);
        for c in &p.call_sizes {
            o.check(c.elements as f64 <= two_frac + FLOAT_SLACK, || {
                format!("seed {}: call with {} vertices", r.seed, c.elements)
            });
            o.check((c.sets as f64) <= 2.0 * two_frac.powf(1.5) + FLOAT_SLACK, || {
                format!("seed {}: call with {} edges", r.seed, c.sets)
            });
        }
        let ratio_ok = r.ratio.as_ref().is_none_or(|x| x <= factor) && r.zero_opt_match != Some(false);
        if !p.failed() {
            clean += 1;
            o.check(ratio_ok, || {
                format!(
                    "seed {}: ratio {} above {}",
                    r.seed,
                    fmt_q(r.ratio.as_ref().unwrap()),
                    fmt_q(factor)
                )
            });
        }
        met += usize::from(r.valid && ratio_ok);
    }
    (clean, met)
}

fn c4_vc_protocol() -> Outcome {
    let mut o = Outcome::new();
    let reports = protocol_sweep("vc", r#"{ kind = "random-graph", n = 40, p = 0.15 }"#, "vc2", "", "");
    o.reports(&reports);
    let (clean, met) = vc_checks(&mut o, &reports, &vc_factor());
    let rate = met as f64 / reports.len() as f64;
    o.check(rate >= VC_SUCCESS_RATE, || format!("success rate {rate}"));
    o.summary = format!("100 trials, {clean} without failure flags, success rate {rate:.2}");
    o
}

fn dhs_checks(o: &mut Outcome, reports: &[RunReport], factor: &Q) -> usize {
    let mut clean = 0;
    for r in reports {
        let p = protocol_of(r);
        o.check(r.valid, || format!("seed {}: invalid hitting set", r.seed));
        o.check(p.rounds_used <= 2, || format!("seed {}: {} rounds", r.seed, p.rounds_used));
        let d_frac = 3.0 * to_f64(&p.frac);
        if let Some(&u0) = p.universe_sizes.first() {
            for (i, &u) in p.universe_sizes.iter().enumerate() {
                o.check(ratio(u, 1) >= ratio(u0, 3usize.pow(i as u32)), || {
                    format!("seed {}: |U_{i}| = {u} of {u0}", r.seed)
                });
            }
        }
        if !p.failed() {
            clean += 1;
            for (i, c) in p.call_sizes.iter().enumerate() {
                let bound = 2f64.powi(i as i32 + 1) * d_frac * d_frac;
                o.check(c.sets as f64 <= bound + FLOAT_SLACK, || {
                    format!("seed {}: round {} has {} sets", r.seed, i + 1, c.sets)
                });
            }
            let ok = r.ratio.as_ref().is_none_or(|x| x <= factor) && r.zero_opt_match != Some(false);
            o.check(ok, || format!("seed {}: ratio above {}", r.seed, fmt_q(factor)));
        }
    }
    clean
}

fn c5_dhs_protocol() -> Outcome {
    let mut o = Outcome::new();
    let reports = protocol_sweep(
        "hs",
        r#"{ kind = "random-hs", n = 60, m = 400, d = 3 }"#,
        "dhs",
        r#"epsilon = "1""#,
        "hs = 60",
    );
    o.reports(&reports);
    let clean = dhs_checks(&mut o, &reports, &dhs_factor());
    o.check(reports.iter().all(|r| r.opt.is_some()), || "optimum missing".into());
    o.summary = format!("100 trials, {clean} without failure flags");
    o
}

fn c6_rsz_protocol() -> Outcome {
    let mut o = Outcome::new();
    let reports = protocol_sweep(
        "vc",
        r#"{ kind = "random-graph", n = 50, p = 0.1 }"#,
        "rsz",
        r#"c = "1/5", t = 3"#,
        "",
    );
    o.reports(&reports);
    let (mut clean, mut witnesses) = (0, 0);
    for r in &reports {
        let p = protocol_of(r);
        o.check(r.valid, || format!("seed {}: invalid cover", r.seed));
        o.check(p.rounds_used <= 4, || format!("seed {}: {} rounds", r.seed, p.rounds_used));
        if p.ruzsa_event() {
            witnesses += 1;
            let g = match (GeneratorSpec::RandomGraph { n: 50, p: 0.1 })
                .generate(ProblemKind::Vc, r.seed)
                .unwrap()
            {
                lossy_hs::harness::Problem::Vc(g) => g,
                _ => unreachable!(),
            };
            let w = extract_ruzsa_witness(p, &g);
            o.check(w.is_ok(), || format!("seed {}: witness does not verify", r.seed));
        }
        if !p.failed() {
            clean += 1;
            let ok = r.ratio.as_ref().is_none_or(|x| x <= &rsz_factor()) && r.zero_opt_match != Some(false);
            o.check(ok, || format!("seed {}: ratio above 9/5", r.seed));
        }
    }
    o.summary = format!("100 trials, {clean} without failure flags, {witnesses} witness events");
    o
}

fn c7_cvd_kernel() -> Outcome {
    let mut o = Outcome::new();
    let mut runs = 0;
    let mut worst = qi(0);
    for eps in [q(1, 4), q(1, 2)] {
        let e = fmt_q(&eps);
        let reports = sweep(&format!(
            r#"
            [[sweep]]
            problem = "cvd"
            generator = {{ kind = "cluster-noise", sizes = [6, 5, 4, 4, 3], flips = 8 }}
            method = {{ kind = "cvd-kernel", epsilon = "{e}" }}
            seeds = {{ count = 100 }}

            [[sweep]]
            problem = "cvd"
            generator = {{ kind = "random-graph", n = 20, p = 0.2 }}
            method = {{ kind = "cvd-kernel", epsilon = "{e}" }}
            seeds = {{ start = 1000, count = 100 }}
            "#
        ));
        o.reports(&reports);
        let factor = qi(6).max(qi(4) / &eps);
        for r in &reports {
            runs += 1;
            let k = r.kernel.as_ref().unwrap();
            let frac = r.frac.clone().unwrap();
            o.check(ratio(k.size, 1) <= &factor * &frac, || {
                format!("ε {e} seed {}: |V(G')| {} > {}", r.seed, k.size, fmt_q(&(&factor * &frac)))
            });
            o.check(k.violations == 0, || {
                format!("ε {e} seed {}: {} structure violations", r.seed, k.violations)
            });
            o.check(r.valid, || format!("ε {e} seed {}: invalid", r.seed));
            o.check(r.zero_opt_match != Some(false), || {
                format!("ε {e} seed {}: nonempty output at opt 0", r.seed)
            });
            if let Some(x) = &r.ratio {
                o.check(*x <= qi(1) + &eps, || format!("ε {e} seed {}: ratio {}", r.seed, fmt_q(x)));
                worst = worst.max(x.clone());
            }
            o.check(r.opt.is_some(), || format!("ε {e} seed {}: optimum missing", r.seed));
        }
        // The support bound is also reported by the structure checks; recheck it here.
        for seed in 0..100 {
            let g = gen_cluster_noise(&[6, 5, 4, 4, 3], 8, seed).unwrap();
            let r = cvd_reduce(&g, &eps).unwrap();
            let bound = qi(3) * r.frac() - ratio(2 * r.marking.ones.len(), 1);
            o.check(ratio(r.marking.support.len(), 1) <= bound, || {
                format!("ε {e} seed {seed}: support too large")
            });
        }
    }
    o.summary = format!("{runs} runs, worst ratio {}", fmt_q(&worst));
    o
}

fn c8_fvst_kernel() -> Outcome {
    let mut o = Outcome::new();
    let mut runs = 0;
    let mut worst = qi(0);
    for eps in [q(1, 4), q(1, 2)] {
        let e = fmt_q(&eps);
        let reports = sweep(&format!(
            r#"
            [[sweep]]
            problem = "fvst"
            generator = {{ kind = "random-tournament", n = 16 }}
            method = {{ kind = "fvst-kernel", epsilon = "{e}" }}
            seeds = {{ count = 200 }}
            "#
        ));
        o.reports(&reports);
        let factor = qi(13) + qi(9) / &eps;
        for r in &reports {
            runs += 1;
            let k = r.kernel.as_ref().unwrap();
            let frac = r.frac.clone().unwrap();
            o.check(ratio(k.size, 1) <= &factor * &frac, || {
                format!("ε {e} seed {}: |V(G')| {}", r.seed, k.size)
            });
            o.check(k.violations == 0, || {
                format!("ε {e} seed {}: {} triangle-check violations", r.seed, k.violations)
            });
            o.check(r.valid && r.zero_opt_match != Some(false), || {
                format!("ε {e} seed {}: invalid", r.seed)
            });
            if let Some(x) = &r.ratio {
                o.check(*x <= qi(1) + &eps, || format!("ε {e} seed {}: ratio {}", r.seed, fmt_q(x)));
                worst = worst.max(x.clone());
            }

            let t = gen_random_tournament(16, r.seed);
            let kr = fvst_reduce(&t, &eps).unwrap();
            let s_star = exact_hs(&fvst_to_hs(&t), None).unwrap().elements;
            let outside = kr.d.difference(&s_star).count();
            o.check(ratio(outside, 1) <= &kr.delta * ratio(s_star.len(), 1), || {
                format!("ε {e} seed {}: |D∖S*| = {outside}", r.seed)
            });
            o.lines
                .push(json!({"eps": e, "seed": r.seed, "d": kr.d, "s_star": s_star}).to_string());
        }
    }
    o.summary = format!("{runs} runs, worst ratio {}", fmt_q(&worst));
    o
}

fn c9_oracle_scaling() -> Outcome {
    let mut o = Outcome::new();
    let beta = oracle_beta();
    let oracle = format!(
        r#"oracle = {{ type = "adversarial", beta = "{}", strategy = "highest" }}"#,
        fmt_q(&beta)
    );
    let vc = protocol_sweep("vc", r#"{ kind = "random-graph", n = 40, p = 0.15 }"#, "vc2", &oracle, "");
    o.reports(&vc);
    let (vc_clean, _) = vc_checks(&mut o, &vc, &(&beta * vc_factor()));
    let dhs = protocol_sweep(
        "hs",
        r#"{ kind = "random-hs", n = 60, m = 400, d = 3 }"#,
        "dhs",
        &format!(r#"epsilon = "1", {oracle}"#),
        "hs = 60",
    );
    o.reports(&dhs);
    let dhs_clean = dhs_checks(&mut o, &dhs, &(&beta * dhs_factor()));
    o.summary = format!(
        "β = {}: vc2 {vc_clean}/100 and dhs {dhs_clean}/100 without failure flags",
        fmt_q(&beta)
    );
    o
}

fn criteria() -> Vec<Criterion> {
    let min = |m: u64| Duration::from_secs(60 * m);
    vec![
        Criterion {
            id: 1,
            name: "LP support bound",
            budget: min(1),
            run: c1_lp_support,
        },
        Criterion {
            id: 2,
            name: "element kernel sizes",
            budget: min(2),
            run: c2_element_kernel_sizes,
        },
        Criterion {
            id: 3,
            name: "element kernel ratio",
            budget: min(5),
            run: c3_element_kernel_ratio,
        },
        Criterion {
            id: 4,
            name: "vertex cover protocol",
            budget: min(3),
            run: c4_vc_protocol,
        },
        Criterion {
            id: 5,
            name: "d-hitting set protocol",
            budget: min(5),
            run: c5_dhs_protocol,
        },
        Criterion {
            id: 6,
            name: "Ruzsa-Szemeredi protocol",
            budget: min(3),
            run: c6_rsz_protocol,
        },
        Criterion {
            id: 7,
            name: "CVD kernel",
            budget: min(8),
            run: c7_cvd_kernel,
        },
        Criterion {
            id: 8,
            name: "FVST kernel",
            budget: min(8),
            run: c8_fvst_kernel,
        },
        Criterion {
            id: 9,
            name: "oracle scaling",
            budget: min(5),
            run: c9_oracle_scaling,
        },
    ]
}

/// Writes to the stdout handle rather than through `println!`, so the verdict
/// lines show up even when the test harness captures output.
fn report(id: u32, name: &str, failures: &[String], detail: &str) -> bool {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut text = format!("{verdict} criterion {id:>2} {name}: {detail}\n");
    for f in failures.iter().take(10) {
        text += &format!("    {f}\n");
    }
    if failures.len() > 10 {
        text += &format!("    ... {} more\n", failures.len() - 10);
    }
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).and_then(|_| out.flush()).expect("stdout is writable");
    failures.is_empty()
}

#[test]
fn acceptance() {
    let mut all_ok = true;
    let mut first_pass = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let mut out = (c.run)();
        let elapsed = start.elapsed();
        out.check(elapsed <= c.budget, || format!("took {elapsed:.1?}, budget {:?}", c.budget));
        all_ok &= report(c.id, c.name, &out.failures, &format!("{} ({elapsed:.1?})", out.summary));
        first_pass.push(out.lines);
    }

    let mut failures = Vec::new();
    let mut compared = 0;
    for (c, lines) in criteria().into_iter().zip(first_pass) {
        let again = (c.run)().lines;
        compared += lines.len();
        if again != lines {
            let at = lines
                .iter()
                .zip(&again)
                .position(|(a, b)| a != b)
                .unwrap_or(lines.len().min(again.len()));
            failures.push(format!("criterion {}: first difference at line {at}", c.id));
        }
    }
    let unique: BTreeSet<&String> = failures.iter().collect();
    all_ok &= report(
        10,
        "determinism",
        &failures,
        &format!("{compared} report lines byte-identical on rerun ({} differ)", unique.len()),
    );
    assert!(all_ok, "acceptance criteria failed");
}
