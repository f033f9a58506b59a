//! Command-line experiments: hom-group growth across the quotient,
//! the full equivalence verification, brute-force extension groups,
//! and localised hom tables for user-supplied quivers.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or parse
//! error, 3 inconclusive at the given search depth.

mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use abhull::extensions::{ext1_group, ExtError};
use abhull::fincat::{localised_hom, schema::QuiverSpec};
use abhull::serre::{span_setup, verify_equivalence, DEFAULT_LENGTH_BOUND};

use report::Report;

#[derive(Parser)]
#[command(name = "abhull", version, about = "Desk-scale hom-group experiments over abelian hulls and Serre quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit JSON instead of CSV.
    #[arg(long)]
    json: bool,
    /// Write the data to a file instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Hom-group ranks between the two sinks before and after the
    /// quotient, per span count.
    Growth {
        /// Span counts to measure, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Coefficient/size bound for bounded searches.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Word-length bound for the localisation enumeration.
        #[arg(long, default_value_t = DEFAULT_LENGTH_BOUND)]
        bound: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full pipeline check at one span count: ranks, roof classes,
    /// generator annihilation.
    VerifyEquivalence {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_LENGTH_BOUND)]
        bound: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Brute-force extension group of the trivial module over the
    /// free algebra on n generators.
    Ext1 {
        /// Prime field characteristic.
        #[arg(long)]
        field: u64,
        #[arg(long)]
        n: usize,
        /// Guardrail on the class count p^n.
        #[arg(long, default_value_t = 64)]
        limit: u128,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Localised hom table for a quiver description file.
    Quiver {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LENGTH_BOUND)]
        bound: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn emit(report: &Report, output: &OutputArgs) -> std::io::Result<()> {
    let body = if output.json {
        report.to_json()
    } else {
        report.to_csv()
    };
    match &output.out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn run_growth(
    sizes: &[usize],
    depth: usize,
    bound: usize,
    output: &OutputArgs,
) -> Result<ExitCode, String> {
    let start = Instant::now();
    let mut rows = Vec::new();
    for &n in sizes {
        let setup = span_setup(n, bound).map_err(|e| e.to_string())?;
        let pre = setup
            .src
            .hom(&setup.src.embed(setup.x), &setup.src.embed(setup.z))
            .rank();
        let localised = setup.tgt.finite.words(setup.x, setup.z).len();
        let post = setup
            .tgt
            .hom(&setup.tgt.embed(setup.x), &setup.tgt.embed(setup.z))
            .rank();
        rows.push(vec![json!(n), json!(pre), json!(localised), json!(post)]);
    }
    let mut parameters = BTreeMap::new();
    parameters.insert("sizes".to_string(), json!(sizes));
    parameters.insert("depth".to_string(), json!(depth));
    parameters.insert("bound".to_string(), json!(bound));
    let report = Report {
        experiment: "growth".to_string(),
        parameters,
        columns: vec![
            "n".to_string(),
            "pre_rank".to_string(),
            "localised_count".to_string(),
            "post_rank".to_string(),
        ],
        rows,
        complete: true,
        duration_ms: start.elapsed().as_millis(),
    };
    emit(&report, output).map_err(|e| e.to_string())?;
    eprintln!("growth: {} sizes in {} ms", sizes.len(), report.duration_ms);
    Ok(ExitCode::SUCCESS)
}

fn run_verify(
    n: usize,
    depth: usize,
    bound: usize,
    output: &OutputArgs,
) -> Result<ExitCode, String> {
    let start = Instant::now();
    let r = verify_equivalence(n, depth, bound).map_err(|e| e.to_string())?;
    let mut parameters = BTreeMap::new();
    parameters.insert("n".to_string(), json!(n));
    parameters.insert("depth".to_string(), json!(depth));
    parameters.insert("bound".to_string(), json!(bound));
    let report = Report {
        experiment: "verify-equivalence".to_string(),
        parameters,
        columns: vec![
            "n".to_string(),
            "pre_rank".to_string(),
            "post_rank".to_string(),
            "localised_count".to_string(),
            "roof_classes".to_string(),
            "images_independent".to_string(),
            "images_generate".to_string(),
            "generator_count".to_string(),
            "generators_annihilated".to_string(),
            "inconclusive".to_string(),
            "ok".to_string(),
        ],
        rows: vec![vec![
            json!(r.n),
            json!(r.pre_rank),
            json!(r.post_rank),
            json!(r.localised_count),
            json!(r.roof_classes),
            json!(r.images_independent),
            json!(r.images_generate),
            json!(r.generator_count),
            json!(r.generators_annihilated),
            json!(r.inconclusive),
            json!(r.ok),
        ]],
        complete: true,
        duration_ms: start.elapsed().as_millis(),
    };
    emit(&report, output).map_err(|e| e.to_string())?;
    eprintln!(
        "verify-equivalence: n={} ok={} in {} ms",
        r.n, r.ok, report.duration_ms
    );
    if r.inconclusive > 0 {
        return Ok(ExitCode::from(3));
    }
    if !r.ok {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_ext1(p: u64, n: usize, limit: u128, output: &OutputArgs) -> Result<ExitCode, String> {
    let start = Instant::now();
    let r = match ext1_group(p, n, limit) {
        Ok(r) => r,
        Err(e @ ExtError::OverLimit(..)) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    let mut parameters = BTreeMap::new();
    parameters.insert("field".to_string(), json!(p));
    parameters.insert("n".to_string(), json!(n));
    parameters.insert("limit".to_string(), json!(limit.to_string()));
    let report = Report {
        experiment: "ext1".to_string(),
        parameters,
        columns: vec![
            "p".to_string(),
            "n".to_string(),
            "dimension".to_string(),
            "class_count".to_string(),
            "split_count".to_string(),
            "verified".to_string(),
        ],
        rows: vec![vec![
            json!(r.p),
            json!(r.n),
            json!(r.dimension),
            json!(r.class_count.to_string()),
            json!(r.split_count),
            json!(r.verified),
        ]],
        complete: true,
        duration_ms: start.elapsed().as_millis(),
    };
    emit(&report, output).map_err(|e| e.to_string())?;
    eprintln!(
        "ext1: p={} n={} verified={} in {} ms",
        r.p, r.n, r.verified, report.duration_ms
    );
    if !r.verified {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_quiver(file: &PathBuf, bound: usize, output: &OutputArgs) -> Result<ExitCode, String> {
    let start = Instant::now();
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return Ok(ExitCode::from(2));
        }
    };
    let spec = match QuiverSpec::parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    let (quiver, sigma) = match spec.build() {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    if !quiver.is_acyclic() {
        eprintln!("error: quiver is cyclic; hom-sets would be infinite");
        return Ok(ExitCode::from(2));
    }
    let sigma_set: std::collections::BTreeSet<_> = sigma.iter().copied().collect();
    let mut rows = Vec::new();
    let mut all_complete = true;
    for a in quiver.vertices() {
        for b in quiver.vertices() {
            let (words, complete) = localised_hom(&quiver, &sigma_set, a, b, bound);
            all_complete &= complete;
            let labels: Vec<String> = words.iter().map(|w| w.label(&quiver)).collect();
            rows.push(vec![
                json!(quiver.vertex_name(a)),
                json!(quiver.vertex_name(b)),
                json!(words.len()),
                json!(complete),
                json!(labels.join(" ")),
            ]);
        }
    }
    let mut parameters = BTreeMap::new();
    parameters.insert("file".to_string(), json!(file.display().to_string()));
    parameters.insert("bound".to_string(), json!(bound));
    let report = Report {
        experiment: "quiver".to_string(),
        parameters,
        columns: vec![
            "src".to_string(),
            "tgt".to_string(),
            "count".to_string(),
            "complete".to_string(),
            "words".to_string(),
        ],
        rows,
        complete: all_complete,
        duration_ms: start.elapsed().as_millis(),
    };
    emit(&report, output).map_err(|e| e.to_string())?;
    eprintln!(
        "quiver: {} pairs, complete={} in {} ms",
        report.rows.len(),
        all_complete,
        report.duration_ms
    );
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Growth {
            sizes,
            depth,
            bound,
            output,
        } => run_growth(sizes, *depth, *bound, output),
        Command::VerifyEquivalence {
            n,
            depth,
            bound,
            output,
        } => run_verify(*n, *depth, *bound, output),
        Command::Ext1 {
            field,
            n,
            limit,
            output,
        } => run_ext1(*field, *n, *limit, output),
        Command::Quiver {
            file,
            bound,
            output,
        } => run_quiver(file, *bound, output),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
