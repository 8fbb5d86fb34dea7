use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lossy_hs::cvd_kernel::cvd_reduce;
use lossy_hs::element_kernel;
use lossy_hs::fvst_kernel::fvst_reduce;
use lossy_hs::harness::{run_experiment_to, ExperimentSpec, LiftContext, Problem};
use lossy_hs::instances::{
    gen_cluster_noise, gen_partition_tight, gen_random_graph, gen_random_hs, gen_random_tournament, gen_transitive_tournament, parse_graph,
    parse_hs, parse_solution, parse_tournament, verify_solution, write_graph, write_hs, write_solution, write_tournament, ProblemKind,
    Verdict,
};
use lossy_hs::lp::{self, LpDump};
use lossy_hs::protocols::{dhs_protocol, rsz_protocol, vc_protocol, ProtocolConfig, ProtocolKind};
use lossy_hs::rational::{fmt_q, parse_q, Q};
use lossy_hs::solvers::{d_approx, exact_hs, OracleKind};

#[derive(Parser)]
#[command(
    name = "lossy-hs",
    version,
    about = "Lossy kernels and adaptive protocols for d-Hitting Set, CVD and FVST"
)]
struct Cli {
    /// Seed for generators and protocols.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProblemArg {
    Hs,
    Vc,
    Cvd,
    Fvst,
}

impl From<ProblemArg> for ProblemKind {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Hs => ProblemKind::Hs,
            ProblemArg::Vc => ProblemKind::Vc,
            ProblemArg::Cvd => ProblemKind::Cvd,
            ProblemArg::Fvst => ProblemKind::Fvst,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance.
    Gen {
        #[command(subcommand)]
        generator: Generator,
    },
    /// Solve the LP relaxation exactly.
    Lp(InstanceArgs),
    /// Reduce an instance and write the kernel plus a lift context.
    Kernel {
        #[command(subcommand)]
        kind: KernelKind,
    },
    /// Run one of the adaptive protocols.
    Protocol(ProtocolArgs),
    /// Solve an instance exactly or with the d-approximation.
    Solve {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long, value_enum, default_value_t = SolveMethod::Exact)]
        method: SolveMethod,
    },
    /// Lift a solution of a reduced instance back to the original.
    Lift {
        /// Lift context written by `kernel`.
        #[arg(long)]
        context: PathBuf,
        /// Solution of the reduced instance.
        #[arg(long)]
        solution: PathBuf,
        /// Original instance; when given, the lifted solution is verified.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Run an experiment file and write one JSON line per run.
    Experiment { spec: PathBuf },
}

#[derive(Subcommand)]
enum Generator {
    /// Random d-uniform family.
    Hs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
    },
    /// `n/d` disjoint sets of size `d`.
    Partition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Erdős–Rényi graph.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Disjoint cliques with random edge flips.
    Cluster {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        flips: usize,
    },
    /// Uniformly random tournament.
    Tournament {
        #[arg(long)]
        n: usize,
    },
    /// Transitive tournament on a random order.
    Transitive {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file, or `-` for stdin.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = ProblemArg::Hs)]
    problem: ProblemArg,
}

#[derive(Subcommand)]
enum KernelKind {
    /// Element kernel for d-Hitting Set (`.hs` input).
    Hs(KernelArgs),
    /// Cluster Vertex Deletion kernel (`.gr` input).
    Cvd(KernelArgs),
    /// Feedback Vertex Set in Tournaments kernel (`.tour` input).
    Fvst(KernelArgs),
}

#[derive(Args)]
struct KernelArgs {
    input: PathBuf,
    #[arg(long, default_value = "1/2", value_parser = parse_rational)]
    epsilon: Q,
    /// Where to write the lift context (JSON).
    #[arg(long)]
    context: PathBuf,
}

#[derive(Args)]
struct ProtocolArgs {
    /// `vc2`, `dhs` or `rsz`.
    #[arg(long, value_parser = parse_protocol)]
    kind: ProtocolKind,
    /// `.gr` for vc2 and rsz, `.hs` for dhs unless `--problem` says otherwise.
    input: PathBuf,
    #[arg(long, value_enum)]
    problem: Option<ProblemArg>,
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    epsilon: Q,
    #[arg(long, default_value = "1/5", value_parser = parse_rational)]
    c: Q,
    #[arg(long, default_value_t = 3)]
    t: usize,
    /// Instances whose LP optimum is below this are solved exactly.
    #[arg(long, default_value = "8", value_parser = parse_rational)]
    threshold: Q,
    /// `exact`, `dapprox` or `adversarial:<beta>[:highest]`.
    #[arg(long, default_value = "exact", value_parser = parse_oracle)]
    oracle: OracleKind,
    /// Independent trials with seeds `seed, seed+1, ...`.
    #[arg(long, default_value_t = 1)]
    trials: u64,
    /// Compute the optimum exactly and report ratios.
    #[arg(long)]
    with_opt: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMethod {
    Exact,
    Dapprox,
}

fn parse_rational(s: &str) -> Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

fn parse_protocol(s: &str) -> Result<ProtocolKind, String> {
    s.parse()
}

fn parse_oracle(s: &str) -> Result<OracleKind, String> {
    s.parse()
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path, kind: ProblemKind) -> Result<Problem> {
    let text = read_input(path)?;
    let ctx = || format!("parsing {}", path.display());
    Ok(match kind {
        ProblemKind::Hs => Problem::Hs(parse_hs(&text).with_context(ctx)?),
        ProblemKind::Vc => Problem::Vc(parse_graph(&text).with_context(ctx)?),
        ProblemKind::Cvd => Problem::Cvd(parse_graph(&text).with_context(ctx)?),
        ProblemKind::Fvst => Problem::Fvst(parse_tournament(&text).with_context(ctx)?),
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Gen { generator } => {
            let text = match generator {
                // Random families may skip ids; the file format needs 1..n.
                Generator::Hs { n, m, d } => write_hs(&gen_random_hs(n, m, d, cli.seed)?.densify().0)?,
                Generator::Partition { n, d } => write_hs(&gen_partition_tight(n, d)?)?,
                Generator::Graph { n, p } => write_graph(&gen_random_graph(n, p, cli.seed)?)?,
                Generator::Cluster { sizes, flips } => write_graph(&gen_cluster_noise(&sizes, flips, cli.seed)?)?,
                Generator::Tournament { n } => write_tournament(&gen_random_tournament(n, cli.seed))?,
                Generator::Transitive { n } => write_tournament(&gen_transitive_tournament(n, cli.seed).0)?,
            };
            emit(&cli.out, &text)
        }
        Command::Lp(args) => {
            let problem = load(&args.input, args.problem.into())?;
            let sol = lp::solve(&problem.to_hs());
            let text = if json {
                to_json(&LpDump::from(&sol))?
            } else {
                let support: Vec<String> = sol.primal.support().iter().map(|v| v.to_string()).collect();
                format!("frac {}\nsupport {}\n", fmt_q(sol.frac()), support.join(" "))
            };
            emit(&cli.out, &text)
        }
        Command::Kernel { kind } => kernel(kind, &cli.out),
        Command::Protocol(args) => protocol(args, cli.seed, &cli.out, json),
        Command::Solve { input, method } => {
            let problem = load(&input.input, input.problem.into())?;
            let hs = problem.to_hs();
            let sol = match method {
                SolveMethod::Exact => exact_hs(&hs, None)?,
                SolveMethod::Dapprox => d_approx(&hs),
            }
            .with_kind(problem.kind());
            let text = if json { to_json(&sol)? } else { write_solution(&sol) };
            emit(&cli.out, &text)
        }
        Command::Lift {
            context,
            solution,
            instance,
        } => {
            let ctx = LiftContext::parse(&read_input(&context)?).context("parsing lift context")?;
            let s_prime = parse_solution(&read_input(&solution)?, ctx.kind()).context("parsing solution")?;
            let lifted = ctx
                .lift(&s_prime)
                .map_err(|id| anyhow::anyhow!("id {id} is not in the reduced instance"))?;
            if let Some(path) = instance {
                let problem = load(&path, ctx.kind())?;
                if let Verdict::Invalid(o) = verify_solution(problem.as_ref(), &lifted) {
                    bail!("lifted set is not a solution: {o:?}");
                }
            }
            let text = if json { to_json(&lifted)? } else { write_solution(&lifted) };
            emit(&cli.out, &text)
        }
        Command::Experiment { spec } => {
            let spec = ExperimentSpec::parse(&read_input(&spec)?)?;
            let mut sink: Box<dyn Write> = match &cli.out {
                Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
                None => Box::new(io::stdout().lock()),
            };
            let (_, summary) = run_experiment_to(&spec, &mut sink)?;
            sink.flush()?;
            if json {
                eprintln!("{}", serde_json::to_string(&summary)?);
            } else {
                eprintln!("{}", summary.describe());
            }
            Ok(())
        }
    }
}

fn kernel(kind: KernelKind, out: &Option<PathBuf>) -> Result<()> {
    let (reduced, ctx, context_path, summary) = match kind {
        KernelKind::Hs(args) => {
            let inst = parse_hs(&read_input(&args.input)?)?;
            let r = element_kernel::reduce(&inst)?;
            let (dense, ctx) = r.export();
            let summary = format!(
                "element kernel: {} -> {} elements, {} sets, |H*| = {}, frac {} -> {}\n",
                inst.n(),
                dense.n(),
                dense.m(),
                r.h_star.len(),
                fmt_q(&r.frac_in),
                fmt_q(&r.frac_out)
            );
            (write_hs(&dense)?, LiftContext::Hs(ctx), args.context, summary)
        }
        KernelKind::Cvd(args) => {
            let g = parse_graph(&read_input(&args.input)?)?;
            let r = cvd_reduce(&g, &args.epsilon)?;
            let (dense, ctx) = r.export();
            let summary = format!(
                "cvd kernel: {} -> {} vertices (bound {}), |D| = {}, frac {}\n",
                g.n(),
                dense.n(),
                fmt_q(&r.vertex_bound()),
                r.d.len(),
                fmt_q(r.frac())
            );
            (write_graph(&dense)?, LiftContext::Cvd(ctx), args.context, summary)
        }
        KernelKind::Fvst(args) => {
            let t = parse_tournament(&read_input(&args.input)?)?;
            let r = fvst_reduce(&t, &args.epsilon)?;
            let (dense, ctx) = r.export();
            let summary = format!(
                "fvst kernel: {} -> {} vertices (bound {}), |D| = {}, |X| = {}, frac {}\n",
                t.n(),
                dense.n(),
                fmt_q(&r.vertex_bound()),
                r.d.len(),
                r.x.len(),
                fmt_q(r.frac())
            );
            (write_tournament(&dense)?, LiftContext::Fvst(ctx), args.context, summary)
        }
    };
    fs::write(&context_path, serde_json::to_string_pretty(&ctx)? + "\n").with_context(|| format!("writing {}", context_path.display()))?;
    eprint!("{summary}");
    emit(out, &reduced)
}

fn protocol(args: ProtocolArgs, seed: u64, out: &Option<PathBuf>, json: bool) -> Result<()> {
    let kind = args.problem.map(ProblemKind::from).unwrap_or(match args.kind {
        ProtocolKind::Dhs => ProblemKind::Hs,
        _ => ProblemKind::Vc,
    });
    let problem = load(&args.input, kind)?;
    let opt = if args.with_opt {
        Some(exact_hs(&problem.to_hs(), None)?.len())
    } else {
        None
    };
    let mut text = String::new();
    let (mut successes, mut max_ratio, mut max_volume) = (0u64, None::<Q>, 0usize);
    for trial in 0..args.trials {
        let cfg = ProtocolConfig {
            seed: seed.wrapping_add(trial),
            epsilon: args.epsilon.clone(),
            c: args.c.clone(),
            t: args.t,
            brute_force_frac_threshold: args.threshold.clone(),
            oracle: args.oracle.clone(),
        };
        let mut report = match (args.kind, &problem) {
            (ProtocolKind::Vc2, Problem::Vc(g)) => vc_protocol(g, &cfg)?,
            (ProtocolKind::Rsz, Problem::Vc(g)) => rsz_protocol(g, &cfg)?,
            (ProtocolKind::Dhs, p) => dhs_protocol(&p.to_hs(), &cfg)?,
            _ => bail!("vc2 and rsz need a vertex cover instance (--problem vc)"),
        };
        if let Some(opt) = opt {
            report.set_ratio(opt);
        }
        if !report.failed() {
            successes += 1;
        }
        max_ratio = max_ratio.max(report.ratio.clone());
        max_volume = max_volume.max(report.max_call_volume());
        if json {
            text += &serde_json::to_string(&report)?;
            text.push('\n');
        } else {
            let ratio = report.ratio.as_ref().map(fmt_q).unwrap_or_else(|| "-".into());
            text += &format!(
                "c seed {} branch {:?} rounds {} failed {} size {} ratio {}\n",
                cfg.seed,
                report.branch_taken,
                report.rounds_used,
                report.failed(),
                report.solution.len(),
                ratio
            );
            if args.trials == 1 {
                text += &write_solution(&report.solution.clone().with_kind(problem.kind()));
            }
        }
    }
    eprintln!(
        "trials {} success-rate {}/{} max-ratio {} max-call-volume {}",
        args.trials,
        successes,
        args.trials,
        max_ratio.as_ref().map(fmt_q).unwrap_or_else(|| "-".into()),
        max_volume
    );
    emit(out, &text)
}
