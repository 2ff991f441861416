use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use graphfuse::emitter::{build_resource, find_fusion_sequence, parse_script, replay};
use graphfuse::network::{run_monte_carlo, NetworkSpec};
use graphfuse::rules::SUBCASE_LABELS;
use graphfuse::verify::{verify_random, VerifyConfig};
use graphfuse::{fuse, measure_pauli, Branch, Error, FusionType, GraphState, Pauli};

const AFTER_HELP: &str = "\
Fusion types: xxzz (X_AX_B, Z_AZ_B), xyyx (X_AY_B, Y_AX_B), xzzx (X_AZ_B, Z_AX_B),
              yzzy (Y_AZ_B, Z_AY_B), xyyz (X_AY_B, Y_AZ_B)

Exit codes: 0 ok, 1 verification mismatch or no sequence found, 2 parse or I/O error,
            3 invalid vertex, 4 boundary warning under --strict, 5 network spec error,
            6 unsupported size, 7 contradictory outcome";

#[derive(Parser)]
#[command(name = "graphfuse", version, about = "Graph-state fusion and measurement rules", after_help = top_help())]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Success,
    Failure,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    X,
    Y,
    Z,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fuse two qubits of a graph state.
    #[command(after_help = subcase_help())]
    Fuse {
        #[arg(long = "type", value_parser = parse_type)]
        ty: FusionType,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value = "success")]
        branch: BranchArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the subcase, special neighbours, byproducts and the
        /// neighbourhood rewrite of every vertex.
        #[arg(long)]
        explain: bool,
        /// Treat a boundary warning as an error.
        #[arg(long)]
        strict: bool,
    },
    /// Measure one qubit in a Pauli basis.
    Measure {
        #[arg(long, value_enum)]
        basis: BasisArg,
        #[arg(long)]
        qubit: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        explain: bool,
    },
    /// Compare the rewrite rules with the tableau on random graphs.
    Verify {
        /// Accepted for compatibility; verification is always randomised.
        #[arg(long)]
        random: bool,
        /// Largest graph size.
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        min_n: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "type", value_parser = parse_type)]
        ty: Option<FusionType>,
        /// Only adjacent fusion qubits.
        #[arg(long, conflicts_with = "detached")]
        connected: bool,
        /// Only non-adjacent fusion qubits.
        #[arg(long)]
        detached: bool,
        /// Where to write the first counterexample.
        #[arg(long, default_value = "counterexample.json")]
        dump: PathBuf,
    },
    /// Run a fusion network.
    Simulate {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        exact_boundaries: bool,
        /// Write per-trial JSON lines here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a resource state from an emitter script.
    Generate {
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a fusion sequence from a source graph to a target graph.
    Search {
        #[arg(long, required_unless_present = "script", conflicts_with = "script")]
        source: Option<PathBuf>,
        /// Use the resource built by an emitter script as the source.
        #[arg(long)]
        script: Option<PathBuf>,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_fusions: usize,
        #[arg(long, default_value_t = 2)]
        max_types: usize,
    },
    /// Export a graph.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        /// Graphviz DOT instead of normalised JSON.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn top_help() -> String {
    format!("{AFTER_HELP}\n\n{}", subcase_help())
}

fn subcase_help() -> String {
    format!("Subcase labels:\n  {}", SUBCASE_LABELS.join("\n  "))
}

fn parse_type(s: &str) -> Result<FusionType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Fail {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Strict,
    Mismatch,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::OutOfRange(_) | Error::DeadVertex(_) | Error::SelfLoop(_) | Error::SameVertex(_) => 3,
        Error::InvalidPair(_) | Error::Spec(_) => 5,
        Error::Unsupported(..) | Error::SizeMismatch(..) => 6,
        Error::Contradiction | Error::RankDeficient { .. } => 7,
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Io(path.to_owned(), e))
}

fn read_graph(path: &Path) -> Result<GraphState, Fail> {
    Ok(GraphState::parse_json(&read(path)?)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Io(p.clone(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn graph_text(g: &GraphState) -> String {
    format!("{}\n", g.to_json_string())
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.cmd {
        Cmd::Fuse { ty, a, b, branch, input, out, explain, strict } => {
            let g = read_graph(&input)?;
            let branch = match branch {
                BranchArg::Success => Branch::Success,
                BranchArg::Failure => Branch::Failure,
            };
            let r = fuse(&g, a, b, ty, branch)?;
            if r.boundary_warning {
                eprintln!("warning: boundary case {:?}; the fusion outcome is not random", r.boundary.kind);
                if strict {
                    return Err(Fail::Strict);
                }
            }
            if explain {
                for line in r.explain() {
                    println!("{line}");
                }
            }
            emit(&out, &graph_text(&r.graph))
        }
        Cmd::Measure { basis, qubit, input, out, explain } => {
            let mut g = read_graph(&input)?;
            let basis = match basis {
                BasisArg::X => Pauli::X,
                BasisArg::Y => Pauli::Y,
                BasisArg::Z => Pauli::Z,
            };
            let r = measure_pauli(&mut g, qubit, basis)?;
            if explain {
                println!("measure {basis} on {qubit}: bare basis {}", r.basis);
                if let Some(s) = r.special {
                    println!("special neighbour: {s}");
                }
                for line in r.trace.render() {
                    println!("{line}");
                }
                for (v, c) in &r.byproduct {
                    println!("byproduct {v}: {c}");
                }
            }
            emit(&out, &graph_text(&g))
        }
        Cmd::Verify { random: _, n, min_n, trials, seed, ty, connected, detached, dump } => {
            let cfg = VerifyConfig {
                min_n,
                max_n: n,
                trials,
                seed,
                types: ty.map_or(FusionType::ALL.to_vec(), |t| vec![t]),
                connected: if connected {
                    Some(true)
                } else if detached {
                    Some(false)
                } else {
                    None
                },
                measurements: ty.is_none(),
            };
            let report = verify_random(&cfg)?;
            for (label, k) in &report.passes {
                let bad = report.failures.get(label).copied().unwrap_or(0);
                println!("{label:<34} pass {k:>6}  fail {bad}");
            }
            for (label, k) in report.failures.iter().filter(|(l, _)| !report.passes.contains_key(*l)) {
                println!("{label:<34} pass {:>6}  fail {k}", 0);
            }
            let Some(cx) = report.counterexample else { return Ok(()) };
            let doc = serde_json::json!({
                "label": cx.label,
                "graph": cx.graph.to_json(),
                "a": cx.a,
                "b": cx.b,
                "type": cx.ty,
                "branch": cx.branch,
                "basis": cx.basis.map(|p| p.to_string()),
            });
            fs::write(&dump, format!("{doc:#}\n")).map_err(|e| Fail::Io(dump.clone(), e))?;
            eprintln!("mismatch in {}; counterexample written to {}", cx.label, dump.display());
            Err(Fail::Mismatch)
        }
        Cmd::Simulate { network, trials, seed, exact_boundaries, out } => {
            let mut spec = NetworkSpec::load(&network)?;
            spec.trials = trials.unwrap_or(spec.trials);
            spec.seed = seed.unwrap_or(spec.seed);
            spec.exact_boundaries |= exact_boundaries;
            let (records, agg) = run_monte_carlo(&spec)?;
            let warnings: usize = agg.fusions.iter().map(|f| f.boundary_warnings).sum();
            if warnings > 0 && !spec.exact_boundaries {
                eprintln!("warning: {warnings} boundary fusions were sampled with probability 1/2");
            }
            let mut lines = String::new();
            for r in &records {
                lines.push_str(&format!("{}\n", r.summary()));
            }
            if out.is_some() {
                emit(&out, &lines)?;
            } else {
                print!("{lines}");
            }
            println!("{}", serde_json::to_string(&agg).expect("aggregate json"));
            for (i, f) in agg.fusions.iter().enumerate() {
                let connected = match f.adjacent_before {
                    0 => "false".to_string(),
                    k if k == agg.trials => "true".to_string(),
                    k => format!("{:.4} of trials", k as f64 / agg.trials as f64),
                };
                println!("fusion {} qubits connected: {connected}", i + 1);
            }
            Ok(())
        }
        Cmd::Generate { script, out } => {
            let g = build_resource(&parse_script(&read(&script)?)?)?;
            emit(&out, &graph_text(&g))
        }
        Cmd::Search { source, script, target, max_fusions, max_types } => {
            let src = match (source, script) {
                (Some(p), _) => read_graph(&p)?,
                (None, Some(s)) => build_resource(&parse_script(&read(&s)?)?)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            let tgt = read_graph(&target)?;
            match find_fusion_sequence(&src, &tgt, max_fusions, max_types)? {
                Some(steps) => {
                    let result = replay(&src, &steps)?;
                    let doc = serde_json::json!({ "fusions": steps, "result": result.to_json() });
                    println!("{doc}");
                    Ok(())
                }
                None => {
                    eprintln!("no sequence of at most {max_fusions} fusions with at most {max_types} types");
                    Err(Fail::Mismatch)
                }
            }
        }
        Cmd::Export { input, dot, out } => {
            let g = read_graph(&input)?;
            emit(&out, &if dot { g.to_dot() } else { graph_text(&g) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(code(&e))
        }
        Err(Fail::Io(p, e)) => {
            eprintln!("error: {}: {e}", p.display());
            ExitCode::from(2)
        }
        Err(Fail::Strict) => ExitCode::from(4),
        Err(Fail::Mismatch) => ExitCode::from(1),
    }
}
