//! Command-line front end: state-file I/O, measures, term enumeration,
//! separability checks, random-state generation, and the direct-vs-oracle
//! benchmark.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use segre::{
    bipartite_concurrence, count_terms, e_via_purity, enumerate_classes, enumerate_terms,
    f_via_purity, max_abs_minor, measure_f, measure_report, purity, random_product_state,
    random_state, reduced_density, Bipartition, StateTensor,
};
use segre_cli::format::{
    domain, parse_dims, parse_positions, parse_state_file, write_state_file, CliError,
};

#[derive(Parser)]
#[command(
    name = "segre",
    version,
    about = "Entanglement measures for pure multipartite states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the measures E and F of a state file
    Measure {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        norm_const: f64,
        #[arg(long, value_enum, default_value_t = Which::F)]
        which: Which,
        /// Also print each class's ordered-pair contribution
        #[arg(long)]
        per_class: bool,
        /// Emit one JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// Count or list the distinct quadric generators of a shape
    Terms {
        /// Comma-separated dimensions, e.g. 2,2,2,2
        #[arg(long)]
        dims: String,
        /// Stream the canonical terms instead of counting
        #[arg(long)]
        list: bool,
        /// Print counts (the default mode)
        #[arg(long, conflicts_with = "list")]
        count: bool,
        /// Restrict to one class, given as comma-separated positions
        #[arg(long)]
        class: Option<String>,
    },
    /// Decide separability from the largest minor
    Separable {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = segre::DEFAULT_SEPARABILITY_TOL)]
        tol: f64,
    },
    /// Purity-route report: per-class purities and the oracle measures
    Oracle {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        norm_const: f64,
    },
    /// Write a seeded random state file
    Random {
        #[arg(long)]
        dims: String,
        #[arg(long)]
        seed: u64,
        /// Sample a fully separable product state
        #[arg(long)]
        product: bool,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the direct route against the purity route
    Bench {
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    E,
    F,
    Both,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let is_usage_error = err.use_stderr();
            let _ = err.print();
            return if is_usage_error {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Measure {
            state,
            norm_const,
            which,
            per_class,
            json,
        } => cmd_measure(&state, norm_const, which, per_class, json),
        Command::Terms {
            dims,
            list,
            count: _,
            class,
        } => cmd_terms(&dims, list, class.as_deref()),
        Command::Separable { state, tol } => cmd_separable(&state, tol),
        Command::Oracle { state, norm_const } => cmd_oracle(&state, norm_const),
        Command::Random {
            dims,
            seed,
            product,
            out,
        } => cmd_random(&dims, seed, product, out.as_deref()),
        Command::Bench { dims, reps, seed } => cmd_bench(&dims, reps, seed),
    }
}

fn load_state(path: &Path) -> Result<StateTensor, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|err| CliError::Input(format!("{}: {err}", path.display())))?;
    parse_state_file(&text)
}

#[derive(Serialize)]
struct JsonClass {
    class: Vec<usize>,
    contribution: f64,
    terms: usize,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    dims: &'a [usize],
    norm_const: f64,
    e: f64,
    f: f64,
    per_class: Vec<JsonClass>,
    singleton_terms: usize,
    multi_terms: usize,
    total_terms: usize,
}

fn cmd_measure(
    path: &Path,
    norm_const: f64,
    which: Which,
    per_class: bool,
    json: bool,
) -> Result<(), CliError> {
    let psi = load_state(path)?;
    let report = measure_report(&psi, norm_const).map_err(domain)?;
    if json {
        let per_class = report
            .per_class
            .iter()
            .map(|c| JsonClass {
                class: c.class.positions().to_vec(),
                contribution: c.contribution,
                terms: c.term_count,
            })
            .collect();
        let payload = JsonReport {
            dims: psi.dims(),
            norm_const,
            e: report.e,
            f: report.f,
            per_class,
            singleton_terms: report.singleton_term_total(),
            multi_terms: report.multi_term_total(),
            total_terms: report.singleton_term_total() + report.multi_term_total(),
        };
        let text =
            serde_json::to_string(&payload).map_err(|err| CliError::Domain(err.to_string()))?;
        println!("{text}");
        return Ok(());
    }
    if per_class {
        for c in &report.per_class {
            println!(
                "S={} contribution = {} terms = {}",
                c.class, c.contribution, c.term_count
            );
        }
    }
    match which {
        Which::E => println!("E = {}", report.e),
        Which::F => println!("F = {}", report.f),
        Which::Both => {
            println!("E = {}", report.e);
            println!("F = {}", report.f);
        }
    }
    Ok(())
}

fn cmd_terms(dims_spec: &str, list: bool, class_spec: Option<&str>) -> Result<(), CliError> {
    let dims = parse_dims(dims_spec)?;
    let restrict = class_spec
        .map(|spec| {
            Bipartition::canonical(&parse_positions(spec)?, dims.len())
                .map_err(|err| CliError::Input(err.to_string()))
        })
        .transpose()?;
    let counts = count_terms(&dims).map_err(|err| CliError::Input(err.to_string()))?;
    if list {
        for (class, _) in &counts.per_class {
            if let Some(only) = &restrict {
                if class != only {
                    continue;
                }
            }
            for term in enumerate_terms(&dims, class).map_err(domain)? {
                println!("{term}");
            }
        }
        return Ok(());
    }
    match restrict {
        Some(only) => {
            let count = counts
                .per_class
                .iter()
                .find(|(class, _)| *class == only)
                .map(|(_, count)| *count)
                .unwrap_or(0);
            println!("S={only} terms = {count}");
        }
        None => {
            for (class, count) in &counts.per_class {
                println!("S={class} terms = {count}");
            }
            println!(
                "singleton: {}  multi: {}  total: {}",
                counts.singleton_total, counts.multi_total, counts.grand_total
            );
        }
    }
    Ok(())
}

fn cmd_separable(path: &Path, tol: f64) -> Result<(), CliError> {
    let psi = load_state(path)?;
    let max = max_abs_minor(&psi).map_err(domain)?;
    let verdict = if max <= tol { "separable" } else { "entangled" };
    println!("{verdict} (max minor {max:.1e})");
    Ok(())
}

fn cmd_oracle(path: &Path, norm_const: f64) -> Result<(), CliError> {
    let psi = load_state(path)?;
    let e = e_via_purity(&psi, norm_const).map_err(domain)?;
    let f = f_via_purity(&psi, norm_const).map_err(domain)?;
    let classes = enumerate_classes(psi.subsystem_count()).map_err(domain)?;
    let mut lines = Vec::with_capacity(classes.len());
    for class in &classes {
        let rho = reduced_density(&psi, class).map_err(domain)?;
        lines.push(format!("S={} purity = {}", class, purity(&rho)));
    }
    for line in lines {
        println!("{line}");
    }
    println!("E = {e}");
    println!("F = {f}");
    if psi.subsystem_count() == 2 {
        let c = bipartite_concurrence(&psi).map_err(domain)?;
        println!("concurrence = {c}");
    }
    Ok(())
}

fn cmd_random(
    dims_spec: &str,
    seed: u64,
    product: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let dims = parse_dims(dims_spec)?;
    let psi = if product {
        random_product_state(&dims, seed)
    } else {
        random_state(&dims, seed)
    }
    .map_err(|err| CliError::Input(err.to_string()))?;
    let text = write_state_file(&psi);
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|err| CliError::Input(format!("{}: {err}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_bench(dims_spec: &str, reps: usize, seed: u64) -> Result<(), CliError> {
    let dims = parse_dims(dims_spec)?;
    let psi = random_state(&dims, seed).map_err(|err| CliError::Input(err.to_string()))?;
    println!("rep  direct_s      oracle_s      ratio      F");
    let mut worst = 0.0f64;
    for rep in 1..=reps {
        let start = Instant::now();
        let direct = measure_f(&psi, 1.0).map_err(domain)?;
        let direct_s = start.elapsed().as_secs_f64();
        let start = Instant::now();
        let oracle = f_via_purity(&psi, 1.0).map_err(domain)?;
        let oracle_s = start.elapsed().as_secs_f64();
        let diff = (direct - oracle).abs();
        worst = worst.max(diff);
        if diff > 1e-10 {
            return Err(CliError::Domain(format!(
                "direct and oracle routes disagree: |{direct} - {oracle}| = {diff:e}"
            )));
        }
        println!(
            "{rep:<4} {direct_s:<13.6} {oracle_s:<13.6} {:<10.2} {direct}",
            direct_s / oracle_s
        );
    }
    println!("agreement: max |direct - oracle| = {worst:.2e} (within 1e-10)");
    Ok(())
}
