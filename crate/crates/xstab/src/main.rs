//! Command-line surface: build constructions, solve partition distances,
//! classify forbidden patterns, run verification checks, and sweep
//! measurement grids. Graph I/O is graph6, one graph per line.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use xstab::classify::{applicable_theorem, regime_of};
use xstab::constructions::ConstructionArtifact;
use xstab::graph6;
use xstab::harness::{
    baseline_grid, grid_cells, rows_to_csv, sweep, verify_furedi, verify_simonovits_threshold,
    verify_unique_extremal, DistanceMode, FamilySpec, HarnessLimits, SweepConfig,
};
use xstab::solvers::{
    edit_distance_to_turan, min_deletions_heuristic, min_deletions_to_k_partite_exact,
    naive_min_deletions_oracle, SolverLimits,
};
use xstab::Graph;

#[derive(Parser)]
#[command(
    name = "xstab",
    version,
    about = "Near-extremal graph toolkit: constructions, partition distances, \
             forbidden-pattern classification, and desk-scale verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a construction; emit graph6 plus a JSON sidecar
    Construct(ConstructArgs),
    /// Solve partition distances for graph6 input
    Solve(SolveArgs),
    /// Classify a forbidden pattern and report the applicable bounds
    Classify(ClassifyArgs),
    /// Run a verification check
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Measure a family grid; emit CSV rows and exponent fits
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// turan | imbalanced | counter1 | propcount1 | qary | mk-blowup | mk-layered
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// deficiency budget (counter1, propcount1, qary)
    #[arg(long)]
    f: Option<usize>,
    /// vertices moved between the two largest parts (imbalanced)
    #[arg(long)]
    m: Option<usize>,
    /// shadow layer count (propcount1, mk-layered)
    #[arg(long)]
    layers: Option<usize>,
    /// original-class size (mk-blowup, mk-layered)
    #[arg(long)]
    a: Option<usize>,
    /// shadow-class size (mk-blowup, mk-layered)
    #[arg(long)]
    b: Option<usize>,
    /// apex-class size (mk-blowup, mk-layered)
    #[arg(long)]
    c: Option<usize>,
    /// write graph6 here and the sidecar to <path>.json; stdout otherwise
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// graph6 file, one graph per line; standard input when omitted
    input: Option<PathBuf>,
    #[arg(long)]
    k: usize,
    /// exact | heuristic | oracle | edit
    #[arg(long, default_value = "exact")]
    mode: String,
    /// heuristic start seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// one JSON object per input graph instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// forbidden pattern, as a file holding one graph6 line
    #[arg(long)]
    h: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Deletion bound on every clique-free graph in the deficit band
    Furedi {
        #[arg(long)]
        k: usize,
        /// largest host order checked
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// largest deficit checked
        #[arg(long, default_value_t = 4)]
        f: usize,
        #[arg(long)]
        json: bool,
    },
    /// Is the balanced k-partite graph the unique densest pattern-free graph?
    Extremal {
        /// forbidden pattern, as a file holding one graph6 line
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        k: usize,
        /// host order
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Smallest deficit admitting a non-k-partite pattern-free graph, per n
    Threshold {
        /// forbidden pattern, as a file holding one graph6 line
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        k: usize,
        /// largest host order tabulated
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// families to measure (comma separated); omit for the baseline grid
    #[arg(long = "family", value_delimiter = ',')]
    families: Vec<String>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// host orders (comma separated)
    #[arg(long = "n", value_delimiter = ',')]
    ns: Vec<usize>,
    /// budget exponents: each cell gets f = ceil(n^alpha)
    #[arg(long = "f", value_delimiter = ',')]
    alphas: Vec<f64>,
    /// exact | heuristic | oracle
    #[arg(long, default_value = "exact")]
    mode: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV destination; stdout when omitted (fits go to stderr)
    #[arg(long)]
    out: Option<PathBuf>,
    /// worker threads; also read from XSTAB_WORKERS
    #[arg(long)]
    workers: Option<usize>,
    /// emit rows and fits as one JSON document instead of CSV
    #[arg(long)]
    json: bool,
}

fn main() -> Result<()> {
    // die quietly when a downstream pipe closes (head, grep -m1, ...)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match Cli::parse().command {
        Command::Construct(args) => run_construct(args),
        Command::Solve(args) => run_solve(args),
        Command::Classify(args) => run_classify(args),
        Command::Verify(cmd) => run_verify(cmd),
        Command::Sweep(args) => run_sweep(args),
    }
}

fn require(value: Option<usize>, family: &str, flag: &str) -> Result<usize> {
    value.ok_or_else(|| anyhow!("--family {family} requires --{flag}"))
}

fn family_spec(args: &ConstructArgs) -> Result<FamilySpec> {
    let fam = args.family.replace('_', "-");
    let spec = match fam.as_str() {
        "turan" => FamilySpec::Turan {
            n: require(args.n, &fam, "n")?,
            k: require(args.k, &fam, "k")?,
        },
        "imbalanced" => FamilySpec::Imbalanced {
            n: require(args.n, &fam, "n")?,
            k: require(args.k, &fam, "k")?,
            m: require(args.m, &fam, "m")?,
        },
        "counter1" => FamilySpec::Counter1 {
            n: require(args.n, &fam, "n")?,
            k: require(args.k, &fam, "k")?,
            f: require(args.f, &fam, "f")?,
        },
        "propcount1" => FamilySpec::Propcount1 {
            n: require(args.n, &fam, "n")?,
            k: require(args.k, &fam, "k")?,
            layers: require(args.layers, &fam, "layers")?,
            f: require(args.f, &fam, "f")?,
        },
        "qary" => FamilySpec::Qary {
            n: require(args.n, &fam, "n")?,
            k: require(args.k, &fam, "k")?,
            f: require(args.f, &fam, "f")?,
        },
        "mk-blowup" => FamilySpec::MkBlowup {
            k: require(args.k, &fam, "k")?,
            a: require(args.a, &fam, "a")?,
            b: require(args.b, &fam, "b")?,
            c: require(args.c, &fam, "c")?,
        },
        "mk-layered" => FamilySpec::MkLayered {
            k: require(args.k, &fam, "k")?,
            l: require(args.layers, &fam, "layers")?,
            a: require(args.a, &fam, "a")?,
            b: require(args.b, &fam, "b")?,
            c: require(args.c, &fam, "c")?,
        },
        other => bail!(
            "unknown family {other:?} (expected turan, imbalanced, counter1, propcount1, \
             qary, mk-blowup, or mk-layered)"
        ),
    };
    Ok(spec)
}

fn sidecar_json(spec: &FamilySpec, artifact: &ConstructionArtifact, g6: &str) -> serde_json::Value {
    let classes: BTreeMap<&str, Vec<usize>> = artifact
        .classes()
        .iter()
        .map(|(label, set)| (label.as_str(), set.to_vec()))
        .collect();
    json!({
        "family": spec.family(),
        "graph6": g6,
        "n": artifact.graph().vertex_count(),
        "k": artifact.k(),
        "edges": artifact.graph().edge_count(),
        "classes": classes,
        "params": artifact.params(),
        "claimed_deficiency": artifact.claimed_deficiency(),
        "actual_deficiency": artifact.deficiency(),
    })
}

fn run_construct(args: ConstructArgs) -> Result<()> {
    let spec = family_spec(&args)?;
    let artifact = spec.build()?;
    let g6 = graph6::encode(artifact.graph());
    let sidecar = serde_json::to_string_pretty(&sidecar_json(&spec, &artifact, &g6))?;
    match &args.out {
        Some(path) => {
            fs::write(path, format!("{g6}\n"))
                .with_context(|| format!("writing {}", path.display()))?;
            let mut sidecar_path = path.clone().into_os_string();
            sidecar_path.push(".json");
            fs::write(&sidecar_path, format!("{sidecar}\n"))
                .with_context(|| format!("writing {}", Path::new(&sidecar_path).display()))?;
        }
        None => {
            println!("{g6}");
            println!("{sidecar}");
        }
    }
    Ok(())
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
            Ok(text)
        }
    }
}

fn edge_list_text(edges: &[(usize, usize)]) -> String {
    if edges.is_empty() {
        "-".to_string()
    } else {
        edges
            .iter()
            .map(|&(u, v)| format!("({u},{v})"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn run_solve(args: SolveArgs) -> Result<()> {
    let text = read_input(&args.input)?;
    let limits = SolverLimits::default();
    let mut solved_any = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let g = graph6::decode(line).with_context(|| format!("input line {}", idx + 1))?;
        let started = Instant::now();
        let (value, assignment, deleted, added) = match args.mode.as_str() {
            "exact" => {
                let cert = min_deletions_to_k_partite_exact(&g, args.k, &limits)?;
                (cert.count, Some(cert.partition.assignment), Some(cert.deleted), Some(vec![]))
            }
            "heuristic" => {
                let cert = min_deletions_heuristic(&g, args.k, args.seed, &limits);
                (cert.count, Some(cert.partition.assignment), Some(cert.deleted), Some(vec![]))
            }
            "oracle" => {
                let value = naive_min_deletions_oracle(&g, args.k, &limits)?;
                (value, None, None, None)
            }
            "edit" => {
                let cert = edit_distance_to_turan(&g, args.k, &limits)?;
                (
                    cert.total,
                    Some(cert.partition.assignment),
                    Some(cert.deleted),
                    Some(cert.added),
                )
            }
            other => bail!("unknown mode {other:?} (expected exact, heuristic, oracle, or edit)"),
        };
        let elapsed_ms = started.elapsed().as_millis() as u64;
        solved_any = true;
        if args.json {
            let certificate = assignment.as_ref().map(|assignment| {
                json!({
                    "assignment": assignment,
                    "deleted": deleted.as_deref().unwrap_or(&[]),
                    "added": added.as_deref().unwrap_or(&[]),
                })
            });
            println!(
                "{}",
                serde_json::to_string(&json!({
                    "mode": args.mode,
                    "k": args.k,
                    "n": g.vertex_count(),
                    "edges": g.edge_count(),
                    "value": value,
                    "certificate": certificate,
                    "elapsed_ms": elapsed_ms,
                }))?
            );
        } else {
            println!(
                "mode={} k={} n={} edges={} value={value} elapsed_ms={elapsed_ms}",
                args.mode,
                args.k,
                g.vertex_count(),
                g.edge_count()
            );
            if let Some(assignment) = &assignment {
                println!(
                    "assignment: {}",
                    assignment.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
                );
            }
            if let Some(deleted) = &deleted {
                println!("deleted: {}", edge_list_text(deleted));
            }
            if let Some(added) = &added {
                if !added.is_empty() || args.mode == "edit" {
                    println!("added: {}", edge_list_text(added));
                }
            }
        }
    }
    if !solved_any {
        bail!("no graph6 lines found in the input");
    }
    Ok(())
}

fn read_pattern(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| anyhow!("{}: no graph6 line found", path.display()))?;
    Ok(graph6::decode(line)?)
}

fn run_classify(args: ClassifyArgs) -> Result<()> {
    let h = read_pattern(&args.h)?;
    let classification = regime_of(&h, args.k)?;
    let bounds = applicable_theorem(&h, args.k)?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "chi": classification.chi,
                "critical_edges": classification.critical_edges,
                "regime": classification.regime,
                "minimal_b": classification.minimal_b,
                "upper_bound": bounds.upper.to_string(),
                "lower_bound": bounds.lower.to_string(),
                "tight": bounds.tight,
            }))?
        );
    } else {
        println!("chi: {}", classification.chi);
        println!("critical edges: {}", edge_list_text(&classification.critical_edges));
        println!("regime: {}", classification.regime);
        match classification.minimal_b {
            Some(b) => println!("minimal b: {b}"),
            None => println!("minimal b: -"),
        }
        println!("upper bound: O({})", bounds.upper);
        println!("lower bound: Omega({})", bounds.lower);
        println!("tight: {}", bounds.tight);
    }
    Ok(())
}

fn run_verify(cmd: VerifyCommand) -> Result<()> {
    let limits = HarnessLimits::default();
    match cmd {
        VerifyCommand::Furedi { k, n, f, json } => {
            let report = verify_furedi(k, n, f, &limits)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!(
                    "deletion-bound check: k={k} n<={n} f<={f} [{}]",
                    report.coverage
                );
                println!(
                    "graphs examined: {}; max distance {}; max distance/deficiency {:.3}",
                    report.graphs_examined, report.max_observed_distance, report.max_ratio
                );
                if let Some(w) = &report.witness {
                    println!("witness: {w}");
                }
                println!("verdict: {}", report.verdict);
                println!("{}", report.detail);
            }
            if !report.passed() {
                std::process::exit(1);
            }
        }
        VerifyCommand::Extremal { h, k, n, json } => {
            let pattern = read_pattern(&h)?;
            let report = verify_unique_extremal(n, k, &pattern, &limits)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("unique-extremal check: n={n} k={k}");
                println!("verdict: {}", report.verdict);
                println!("{}", report.detail);
                if let Some(w) = &report.witness {
                    println!("extremal witness: {w}");
                }
            }
        }
        VerifyCommand::Threshold { h, k, n, json } => {
            let pattern = read_pattern(&h)?;
            let mut rows = Vec::new();
            for order in 2..=n {
                let threshold = verify_simonovits_threshold(order, k, &pattern, &limits)?;
                rows.push((order, threshold));
            }
            if json {
                let rows: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|&(order, th)| {
                        json!({
                            "n": order,
                            "threshold": th,
                            "threshold_over_n": th.map(|t| t as f64 / order as f64),
                            "n_over_k": order as f64 / k as f64,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                // reference column: the threshold is expected to track n/k
                // up to an additive constant as n grows
                println!("{:>4} {:>10} {:>14} {:>8}", "n", "threshold", "threshold/n", "n/k");
                for (order, th) in rows {
                    match th {
                        Some(t) => println!(
                            "{order:>4} {t:>10} {:>14.3} {:>8.3}",
                            t as f64 / order as f64,
                            order as f64 / k as f64
                        ),
                        None => println!(
                            "{order:>4} {:>10} {:>14} {:>8.3}",
                            "-",
                            "-",
                            order as f64 / k as f64
                        ),
                    }
                }
            }
        }
    }
    Ok(())
}

fn worker_count(flag: Option<usize>) -> Result<usize> {
    if let Some(w) = flag {
        return Ok(w.max(1));
    }
    match std::env::var("XSTAB_WORKERS") {
        Ok(raw) => {
            let parsed: usize = raw
                .trim()
                .parse()
                .map_err(|_| anyhow!("XSTAB_WORKERS must be a positive integer (got {raw:?})"))?;
            Ok(parsed.max(1))
        }
        Err(_) => Ok(1),
    }
}

fn run_sweep(args: SweepArgs) -> Result<()> {
    let mode: DistanceMode = args.mode.parse()?;
    let cells = if args.families.is_empty() && args.ns.is_empty() {
        baseline_grid()
    } else if args.families.is_empty() || args.ns.is_empty() {
        bail!("custom sweeps need both --family and --n (omit both for the baseline grid)");
    } else {
        let alphas = if args.alphas.is_empty() { vec![1.2] } else { args.alphas.clone() };
        grid_cells(&args.families, args.k, &args.ns, &alphas)?
    };
    let config = SweepConfig {
        cells,
        mode,
        seed: args.seed,
        workers: worker_count(args.workers)?,
    };
    let limits = HarnessLimits::default();
    let (rows, fits) = sweep(&config, &limits);

    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "schema_version": xstab::harness::SCHEMA_VERSION,
                "rows": rows,
                "fits": fits,
            }))?
        );
        return Ok(());
    }

    let csv = rows_to_csv(&rows);
    match &args.out {
        Some(path) => {
            fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
        }
        None => print!("{csv}"),
    }
    // fits go to stderr so piped CSV output stays clean
    for fit in &fits {
        eprintln!("fit: {fit}");
    }
    Ok(())
}
