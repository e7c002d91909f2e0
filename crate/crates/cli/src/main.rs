use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use connpres_cli::bench::run_bench;
use connpres_cli::dispatch::{run, solve_default, Algorithm, Outcome};
use connpres_cli::format::{
    parse_document, parse_instance, parse_solution, parse_tree_mcf, serialize_gadget,
    serialize_instance, serialize_solution, serialize_tree_mcf,
};
use connpres_cli::gen::{self, RandomParams, Variant};
use connpres_cli::report::{Check, SolveReport, Status, VerifyReport, Witness};
use connpres_core::approx::DEFAULT_CUT_LIMIT;
use connpres_core::instance::{find_unsafe_cut, is_feasible, is_instance_feasible, MAX_EXACT_P};
use connpres_core::oracle::{brute_bicriteria_cut, brute_feasible, brute_optimum, brute_tree_mcf, BruteOptimum};
use connpres_core::reductions::{bond_to_gcp, clique_to_bicriteria};
use connpres_core::treemcf::solve_tree_mcf;
use connpres_core::{Error, Instance, MultiGraph};

#[derive(Parser)]
#[command(name = "connpres", version, about = "Edge protection for connectivity under failures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance; the solution goes to stdout or --output.
    Solve {
        instance: PathBuf,
        /// Force an algorithm instead of the default dispatch.
        #[arg(long)]
        algo: Option<Algorithm>,
        #[arg(long, default_value_t = DEFAULT_CUT_LIMIT)]
        limit_cuts: usize,
        /// Write the JSON report here (default: stderr).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a solution; prints an unsafe cut if there is one.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
        /// Use the brute-force failure-set oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generate an instance from a seed.
    Gen(GenArgs),
    /// Run every solver over a directory of instances.
    Bench {
        corpus: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CUT_LIMIT)]
        limit_cuts: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Maximum-weight edge-disjoint path packing on a tree.
    TreeMcf {
        file: PathBuf,
        /// Also compare against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Minimum-cost solution by exhaustion.
    Optimum { instance: PathBuf },
    /// Feasibility by failure-set enumeration.
    Feasible { instance: PathBuf, solution: PathBuf },
    /// Qualifying cut of a gadget file's bicriteria query.
    Bicriteria { gadget: PathBuf },
    /// Path packing by exhaustion.
    TreeMcf { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Random,
    CliqueGadget,
    BondGadget,
    TreeMcf,
}

#[derive(Args)]
struct GenArgs {
    kind: GenKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    cost_min: u64,
    #[arg(long, default_value_t = 10)]
    cost_max: u64,
    #[arg(long, default_value = "global")]
    variant: Variant,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 2)]
    q: usize,
    /// Terminal pairs for the Steiner variant.
    #[arg(long, default_value_t = 2)]
    pairs: usize,
    /// Redraw until the instance is feasible.
    #[arg(long)]
    feasible: bool,
    /// Clique size for clique-gadget, bond size for bond-gadget.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Input graph as an instance file (its graph is used).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Use the 6-vertex 3-regular example graph.
    #[arg(long)]
    sample: bool,
    #[arg(long, default_value_t = 8)]
    nodes: usize,
    #[arg(long, default_value_t = 10)]
    paths: usize,
    #[arg(long, default_value_t = 50)]
    max_weight: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure {
            code: 1,
            message: format!("{e:#}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible { .. } | Error::InfeasibleSolution => 2,
        Error::Unsupported(_) | Error::BudgetExceeded(_) | Error::CutLimitExceeded { .. } => 3,
        _ => 1,
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: serde::Serialize>(path: Option<&Path>, value: &T) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> anyhow::Result<Instance> {
    let text = read(path)?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Exact re-check when `p` is within the exact search cap, else the oracle
/// when it fits its budget.
fn check(inst: &Instance, out: &Outcome) -> Check {
    let verdict = if inst.p() <= MAX_EXACT_P {
        is_feasible(inst, &out.solution)
    } else {
        brute_feasible(inst, &out.solution)
    };
    match verdict {
        Ok(true) => Check::Pass,
        Ok(false) => Check::Fail,
        Err(_) => Check::Skipped,
    }
}

fn cmd_solve(
    path: &Path,
    algo: Option<Algorithm>,
    limit_cuts: usize,
    json: Option<&Path>,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let inst = load_instance(path)?;
    let start = Instant::now();
    let ms = |start: Instant| start.elapsed().as_secs_f64() * 1000.0;
    if !is_instance_feasible(&inst) {
        let e = Error::Infeasible {
            cut_size: connpres_core::instance::min_terminal_cut(&inst).map_or(0, |c| c.0 as usize),
            p: inst.p(),
        };
        emit_json(json, &SolveReport::failed(&inst, Status::Infeasible, e.to_string(), ms(start)))?;
        return Err(e.into());
    }
    let result = match algo {
        Some(a) => run(&inst, a, limit_cuts),
        None => solve_default(&inst, limit_cuts),
    };
    match result {
        Ok(out) => {
            let verdict = check(&inst, &out);
            let report = SolveReport::solved(&inst, &out, verdict, ms(start));
            write_out(output, &serialize_solution(&out.solution))?;
            emit_json(json, &report)?;
            if verdict == Check::Fail {
                return Err(Failure {
                    code: 1,
                    message: "internal error: the solver returned an infeasible solution".into(),
                });
            }
            Ok(())
        }
        Err(e) => {
            let status = match exit_code(&e) {
                2 => Status::Infeasible,
                3 => Status::Unsupported,
                _ => Status::Error,
            };
            emit_json(json, &SolveReport::failed(&inst, status, e.to_string(), ms(start)))?;
            Err(e.into())
        }
    }
}

fn cmd_verify(inst_path: &Path, sol_path: &Path, oracle: bool, json: Option<&Path>) -> Result<(), Failure> {
    let inst = load_instance(inst_path)?;
    let text = read(sol_path)?;
    let x = parse_solution(&text, &inst).with_context(|| format!("parsing {}", sol_path.display()))?;
    let mut report = VerifyReport {
        report_version: connpres_cli::report::REPORT_VERSION,
        status: Status::Feasible,
        method: if oracle { "oracle" } else { "exact" }.into(),
        cost: x.total_cost(),
        witness: None,
        error: None,
    };
    let verdict = if oracle {
        brute_feasible(&inst, &x)
    } else {
        find_unsafe_cut(&inst, &x).map(|w| {
            report.witness = w.as_ref().map(Witness::from);
            w.is_none()
        })
    };
    match verdict {
        Ok(true) => {
            println!("feasible (cost {})", x.total_cost());
            if let Some(p) = json {
                emit_json(Some(p), &report)?;
            }
            Ok(())
        }
        Ok(false) => {
            report.status = Status::Infeasible;
            println!("infeasible");
            if let Some(w) = &report.witness {
                println!("side {:?}", w.side_s);
                println!("crossing {:?}", w.crossing);
                println!(
                    "cut size {}, protected {}, separates {} and {}",
                    w.cut_size, w.protected_count, w.separated_pair.0, w.separated_pair.1
                );
            }
            if let Some(p) = json {
                emit_json(Some(p), &report)?;
            }
            Err(Failure {
                code: 2,
                message: "the solution is infeasible".into(),
            })
        }
        Err(e) => {
            report.status = Status::Unsupported;
            report.error = Some(format!("{e}; pass --oracle to use the brute-force check"));
            if let Some(p) = json {
                emit_json(Some(p), &report)?;
            }
            Err(e.into())
        }
    }
}

fn input_graph(args: &GenArgs) -> anyhow::Result<Option<MultiGraph>> {
    if args.sample {
        return Ok(Some(gen::sample_cubic_graph()));
    }
    match &args.graph {
        Some(p) => Ok(Some(load_instance(p)?.graph().clone())),
        None => Ok(None),
    }
}

fn cmd_gen(args: &GenArgs) -> Result<(), Failure> {
    let mut rng = gen::rng(args.seed);
    let params = RandomParams {
        n: args.n,
        m: args.m,
        cost_min: args.cost_min,
        cost_max: args.cost_max,
        variant: args.variant,
        p: args.p,
        q: args.q,
        pairs: args.pairs,
    };
    let text = match args.kind {
        GenKind::Random => {
            let inst = if args.feasible {
                gen::random_feasible_instance(&mut rng, &params, 1000)
            } else {
                gen::random_instance(&mut rng, &params)
            };
            serialize_instance(&inst.map_err(bad_params)?)
        }
        GenKind::CliqueGadget => {
            let g = input_graph(args)?.ok_or_else(|| Failure {
                code: 1,
                message: "clique-gadget needs --graph <file> or --sample".into(),
            })?;
            let (b, _) = clique_to_bicriteria(&g, args.k).map_err(bad_params)?;
            serialize_gadget(&b).map_err(bad_params)?
        }
        GenKind::BondGadget => {
            let g = match input_graph(args)? {
                Some(g) => g,
                None => gen::random_graph(&mut rng, args.n, args.m).map_err(bad_params)?,
            };
            serialize_instance(&bond_to_gcp(&g, args.k).map_err(bad_params)?)
        }
        GenKind::TreeMcf => {
            let inst = gen::random_tree_mcf(&mut rng, args.nodes, args.paths, args.max_weight)
                .map_err(bad_params)?;
            serialize_tree_mcf(&inst)
        }
    };
    write_out(args.output.as_deref(), &text)?;
    Ok(())
}

fn bad_params(e: Error) -> Failure {
    Failure {
        code: 1,
        message: e.to_string(),
    }
}

fn cmd_oracle(cmd: &OracleCommand) -> Result<(), Failure> {
    match cmd {
        OracleCommand::Optimum { instance } => {
            let inst = load_instance(instance)?;
            match brute_optimum(&inst)? {
                BruteOptimum::Optimal(x) => {
                    print!("{}", serialize_solution(&x));
                    eprintln!("optimum cost {}", x.total_cost());
                    Ok(())
                }
                BruteOptimum::Infeasible => Err(Failure {
                    code: 2,
                    message: "the instance is infeasible".into(),
                }),
            }
        }
        OracleCommand::Feasible { instance, solution } => cmd_verify(instance, solution, true, None),
        OracleCommand::Bicriteria { gadget } => {
            let text = read(gadget)?;
            let doc = parse_document(&text).with_context(|| format!("parsing {}", gadget.display()))?;
            let b = doc.bicriteria_instance().ok_or_else(|| Failure {
                code: 1,
                message: "the file has no `bicriteria` line".into(),
            })??;
            match brute_bicriteria_cut(&b.graph, &b.protected, b.s, b.t, b.a, b.b)? {
                Some(cut) => {
                    let protected = cut.crossing.iter().filter(|id| b.protected.contains(id)).count();
                    println!("qualifying cut: {} edges, {} protected", cut.crossing.len(), protected);
                    println!("side {:?}", cut.side_s);
                }
                None => println!("no qualifying cut"),
            }
            Ok(())
        }
        OracleCommand::TreeMcf { file } => {
            let text = read(file)?;
            let inst = parse_tree_mcf(&text).with_context(|| format!("parsing {}", file.display()))?;
            println!("weight {}", brute_tree_mcf(&inst)?);
            Ok(())
        }
    }
}

fn cmd_tree_mcf(file: &Path, oracle: bool) -> Result<(), Failure> {
    let text = read(file)?;
    let inst = parse_tree_mcf(&text).with_context(|| format!("parsing {}", file.display()))?;
    let sol = solve_tree_mcf(&inst);
    println!("weight {}", sol.weight);
    let ids: Vec<String> = sol.selected.iter().map(|i| i.to_string()).collect();
    println!("selected {}", ids.join(" "));
    if oracle {
        let brute = brute_tree_mcf(&inst)?;
        println!("oracle {brute}");
        if brute != sol.weight {
            return Err(Failure {
                code: 1,
                message: format!("dynamic program gives {} but the oracle gives {brute}", sol.weight),
            });
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve {
            instance,
            algo,
            limit_cuts,
            json,
            output,
        } => cmd_solve(instance, *algo, *limit_cuts, json.as_deref(), output.as_deref()),
        Command::Verify {
            instance,
            solution,
            oracle,
            json,
        } => cmd_verify(instance, solution, *oracle, json.as_deref()),
        Command::Gen(args) => cmd_gen(args),
        Command::Bench {
            corpus,
            limit_cuts,
            json,
        } => run_bench(corpus, *limit_cuts)
            .with_context(|| format!("reading {}", corpus.display()))
            .map_err(Failure::from)
            .and_then(|report| {
                let text = serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)? + "\n";
                write_out(json.as_deref(), &text).map_err(Failure::from)
            }),
        Command::Oracle(cmd) => cmd_oracle(cmd),
        Command::TreeMcf { file, oracle } => cmd_tree_mcf(file, *oracle),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
