//! Command-line front end for series-parallel edge coloring.
//!
//! Vertex ids are 1-based in files and in all output; exit codes are 0 for
//! yes/success, 1 for a no-verdict or failed verification, 2 for usage or
//! parse errors, and 3 for inputs that are not series-parallel.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use spcolor::colorer::{self, VerifyFailure};
use spcolor::corpus::{self, CorpusOptions};
use spcolor::formats;
use spcolor::multigraph::Multigraph;
use spcolor::oracle::{self, OracleBudget};
use spcolor::reducer::{self, DecideOptions, NoReason, Verdict};

#[derive(Parser)]
#[command(
    name = "spcolor",
    about = "Decide, construct, and verify edge colorings of series-parallel multigraphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the graph has a proper k-edge-coloring.
    Decide {
        /// Number of colors.
        #[arg(short)]
        k: u64,
        /// Graph file.
        file: PathBuf,
    },
    /// Construct a proper k-edge-coloring and write it as a coloring file.
    Color {
        /// Number of colors.
        #[arg(short)]
        k: u64,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Graph file.
        file: PathBuf,
    },
    /// Print the chromatic index.
    Chi {
        /// Graph file.
        file: PathBuf,
    },
    /// Print the maximum odd-set density and a set attaining it.
    Gamma {
        /// Only consider sets whose induced graph has no vertex of degree
        /// at most one.
        #[arg(long)]
        pruned: bool,
        /// Graph file.
        file: PathBuf,
    },
    /// Check a coloring file against a graph file.
    Verify {
        /// Graph file.
        graph: PathBuf,
        /// Coloring file.
        coloring: PathBuf,
    },
    /// Generate a random series-parallel multigraph.
    Gen {
        /// Number of vertices.
        #[arg(short)]
        n: usize,
        /// Largest edge-class multiplicity.
        #[arg(long, default_value_t = 1)]
        max_mult: u64,
        /// Random seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cross-check the decider against exhaustive search on random instances.
    Selftest {
        /// Number of random instances.
        #[arg(long, default_value_t = 200)]
        instances: usize,
        /// Largest vertex count to draw.
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        /// Random seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the decider on generated instances of the given sizes.
    Bench {
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// `Err` carries a usage or parse failure, reported with exit code 2.
fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Decide { k, file } => {
            let g = read_graph(&file)?;
            Ok(report_verdict(reducer::decide(&g, k), k))
        }
        Command::Color { k, output, file } => {
            let g = read_graph(&file)?;
            let options = DecideOptions {
                collect_trace: true,
                ..DecideOptions::default()
            };
            let full = reducer::decide_full(&g, k, &options);
            if let Verdict::Yes = full.verdict {
                let coloring = colorer::replay_color(&g, k, &full.trace)
                    .map_err(|err| err.to_string())?;
                write_out(output.as_deref(), &formats::write_coloring(&coloring))?;
                // Keep stdout a clean coloring file when no output path was
                // given.
                if output.is_some() {
                    println!("YES");
                }
                return Ok(ExitCode::SUCCESS);
            }
            Ok(report_verdict(full.verdict, k))
        }
        Command::Chi { file } => {
            let g = read_graph(&file)?;
            let chi = if g.is_series_parallel() {
                eprintln!("chi: series-parallel input, using the reduction");
                reducer::chromatic_index(&g).expect("recognized as series-parallel")
            } else {
                eprintln!("chi: input not series-parallel, using exhaustive search");
                oracle::chi_exact(&g, &OracleBudget::default()).map_err(|err| err.to_string())?
            };
            println!("{chi}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Gamma { pruned, file } => {
            let g = read_graph(&file)?;
            let report = oracle::gamma_exact(&g, pruned).map_err(|err| err.to_string())?;
            match report {
                None => println!("0/1 {{}}"),
                Some(r) => {
                    let ids: Vec<String> =
                        r.vertices.iter().map(|v| (v + 1).to_string()).collect();
                    println!(
                        "{}/{} {{{}}}",
                        r.density.numer(),
                        r.density.denom(),
                        ids.join(",")
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { graph, coloring } => {
            let g = read_graph(&graph)?;
            let c = formats::parse_coloring(&read_file(&coloring)?)
                .map_err(|err| format!("{}: {err}", coloring.display()))?;
            Ok(verify(&g, &c))
        }
        Command::Gen {
            n,
            max_mult,
            seed,
            output,
        } => {
            let g = oracle::gen_sp(seed, n, max_mult);
            write_out(output.as_deref(), &formats::write_graph(&g))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest {
            instances,
            max_vertices,
            seed,
        } => {
            let options = CorpusOptions {
                instances,
                max_vertices,
                seed,
                check_shadow: true,
                check_configs: true,
                ..CorpusOptions::default()
            };
            let report = corpus::run_checks(&options);
            println!(
                "selftest: {} instances, {} decisions, {} colorings replayed, {} iterations",
                report.instances, report.decisions, report.colorings, report.iterations
            );
            if report.is_clean() {
                println!("selftest: clean");
                Ok(ExitCode::SUCCESS)
            } else {
                if let Some((index, message)) = &report.first_failure {
                    println!("selftest: first failure at instance {index}: {message}");
                }
                println!(
                    "selftest: FAILED ({} decision, {} formula, {} replay, {} potential, \
                     {} shadow, {} config, {} bound, {} oracle)",
                    report.decision_mismatches,
                    report.formula_mismatches,
                    report.replay_failures,
                    report.potential_violations,
                    report.shadow_violations,
                    report.config_violations,
                    report.iteration_bound_violations,
                    report.oracle_errors
                );
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Bench { sizes } => {
            for n in sizes {
                bench_size(n);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|err| format!("{}: {err}", path.display()))
}

fn read_graph(path: &Path) -> Result<Multigraph, String> {
    formats::parse_graph(&read_file(path)?).map_err(|err| format!("{}: {err}", path.display()))
}

fn write_out(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(path) => {
            fs::write(path, content).map_err(|err| format!("{}: {err}", path.display()))
        }
        None => {
            use std::io::Write;
            match std::io::stdout().write_all(content.as_bytes()) {
                // A closed pipe downstream is not our error.
                Err(err) if err.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                result => result.map_err(|err| format!("stdout: {err}")),
            }
        }
    }
}

/// Prints the verdict line and maps it to the exit code.
fn report_verdict(verdict: Verdict, k: u64) -> ExitCode {
    match verdict {
        Verdict::Yes => {
            println!("YES");
            ExitCode::SUCCESS
        }
        Verdict::No(NoReason::DegreeExceeded { v, degree }) => {
            println!("NO degree deg({}) = {degree} > {k}", v + 1);
            ExitCode::FAILURE
        }
        Verdict::No(NoReason::LocalCheck { violation, .. }) => {
            let mut shifted = violation.clone();
            shifted.triple = shifted.triple.map(|v| v + 1);
            println!("NO local-check {shifted}");
            ExitCode::FAILURE
        }
        Verdict::NotSeriesParallel => {
            println!("NOT-SERIES-PARALLEL");
            ExitCode::from(3)
        }
    }
}

fn verify(g: &Multigraph, coloring: &colorer::Coloring) -> ExitCode {
    // Compare the class sets here so the message can use 1-based ids.
    let graph_keys: Vec<(u32, u32)> = g.classes().iter().map(|c| (c.u, c.v)).collect();
    let file_keys: Vec<(u32, u32)> = coloring.classes.keys().copied().collect();
    if graph_keys != file_keys {
        for key in &graph_keys {
            if !coloring.classes.contains_key(key) {
                println!("INVALID class {} {} missing from the coloring", key.0 + 1, key.1 + 1);
                return ExitCode::FAILURE;
            }
        }
        for key in &file_keys {
            if !graph_keys.contains(key) {
                println!("INVALID class {} {} not in the graph", key.0 + 1, key.1 + 1);
                return ExitCode::FAILURE;
            }
        }
    }
    let detail = colorer::verify_coloring_detail(g, coloring.k, coloring)
        .expect("class sets were just compared");
    match detail {
        Ok(()) => {
            println!("OK");
            ExitCode::SUCCESS
        }
        Err(VerifyFailure::WrongCount { u, v, got, want }) => {
            println!(
                "INVALID class {} {} has {got} colors for multiplicity {want}",
                u + 1,
                v + 1
            );
            ExitCode::FAILURE
        }
        Err(VerifyFailure::ColorOutOfRange { u, v, color, k }) => {
            println!(
                "INVALID class {} {} uses color {color} outside 1..={k}",
                u + 1,
                v + 1
            );
            ExitCode::FAILURE
        }
        Err(VerifyFailure::DuplicateInClass { u, v, color }) => {
            println!(
                "INVALID class {} {} repeats color {color}",
                u + 1,
                v + 1
            );
            ExitCode::FAILURE
        }
        Err(VerifyFailure::VertexClash { v, color }) => {
            println!("INVALID vertex {} sees color {color} twice", v + 1);
            ExitCode::FAILURE
        }
    }
}

/// Times one no-check decider run over a generated instance large enough to
/// exercise every rewrite, with a palette that forces a full reduction.
fn bench_size(n: usize) {
    let g = oracle::gen_sp(0xb13c4, n, 3);
    let delta = g.max_degree();
    let k = delta + delta.div_ceil(2);
    let options = DecideOptions::default();
    let start = Instant::now();
    let full = reducer::decide_full(&g, k, &options);
    let elapsed = start.elapsed();
    let verdict = match full.verdict {
        Verdict::Yes => "YES",
        Verdict::No(_) => "NO",
        Verdict::NotSeriesParallel => "NOT-SERIES-PARALLEL",
    };
    println!(
        "size {n}: classes {}, k {k}, verdict {verdict}, iterations {}, time {:.3?}, \
         potential {} -> {}",
        g.class_count(),
        full.iterations,
        elapsed,
        full.initial_potential,
        full.final_potential
    );
}
