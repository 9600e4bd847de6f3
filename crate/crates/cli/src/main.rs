//! Command-line driver for the unit-distance graph pipeline.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use udg_core::embed::{self, EmbedConfig};
use udg_core::enumerate::{EnumerateConfig, ForbiddenFamily, LevelStore};
use udg_core::pipeline::{self, derive_forbidden, reproduce_table};
use udg_core::tuud::{self, TuudCatalog};
use udg_core::{emit_graph6, parse_graph6};

#[derive(Parser)]
#[command(
    name = "udg",
    about = "Maximum-density unit-distance graphs: enumeration, filtering, embedding",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonEnum {
    /// forbidden family file (graph6 lines); defaults to the built-in
    /// catalog of minimal forbidden subgraphs up to 9 vertices
    #[arg(long)]
    forbidden: Option<PathBuf>,
    /// worker threads (defaults to all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// directory for sealed level files (resume-friendly)
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// disable the minimum-degree prunes (for oracle comparisons)
    #[arg(long)]
    no_prune: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build one level: all family-free graphs with N vertices and M edges
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        common: CommonEnum,
        /// write the level here (graph6 lines; default stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find the maximum edge count over family-free graphs on N vertices
    Maxdensity {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: CommonEnum,
    },
    /// Filter a level through the totally-unfaithful-subgraph catalog
    TuudFilter {
        /// catalog file (graph6 plus the distinguished pair per line);
        /// defaults to the built-in six-entry catalog
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// JSON-lines reject records (entry index and embedding)
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Decide unit-distance embeddability of one graph
    Embed {
        /// graph6 code
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// randomized completion attempts per leaf
        #[arg(long, default_value_t = 100)]
        retries: usize,
        /// working tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// re-run refutations at tolerance 1e-12 and report disagreement
        #[arg(long)]
        paranoid: bool,
        /// result record (JSON; default stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the density census: enumerate, filter, embed for each n
    Reproduce {
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        common: CommonEnum,
        /// unfaithful-pair catalog (default: built-in)
        #[arg(long)]
        tuud_catalog: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// JSON-lines report (row and per-graph decision records)
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Rederive the minimal forbidden subgraphs from the solver
    DeriveForbidden {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
        /// write the family here (graph6 lines; default stdout)
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON-lines file for candidates the solver could not settle
        #[arg(long)]
        flags: Option<PathBuf>,
    },
}

fn main() {
    let code = match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    };
    std::process::exit(code);
}

fn configure_jobs(jobs: Option<usize>) {
    if let Some(k) = jobs {
        if let Err(why) = udg_core::par::set_worker_threads(k) {
            eprintln!("note: --jobs {k}: {why}");
        }
    }
}

fn family_from(common: &CommonEnum) -> Result<ForbiddenFamily> {
    match &common.forbidden {
        Some(path) => ForbiddenFamily::load(path)
            .with_context(|| format!("loading forbidden family {}", path.display())),
        None => Ok(pipeline::full_family()),
    }
}

fn enum_config(common: &CommonEnum) -> EnumerateConfig {
    EnumerateConfig {
        prune: !common.no_prune,
        checkpoint: common.checkpoint.clone(),
        level_cap: None,
    }
}

fn catalog_from(path: &Option<PathBuf>) -> Result<TuudCatalog> {
    match path {
        Some(p) => {
            tuud::load_catalog(p).with_context(|| format!("loading catalog {}", p.display()))
        }
        None => Ok(TuudCatalog::builtin()),
    }
}

fn run() -> Result<i32> {
    match Cli::parse().command {
        Command::Enumerate { n, m, common, out } => {
            configure_jobs(common.jobs);
            let family = family_from(&common)?;
            let mut store = LevelStore::new(family, enum_config(&common));
            let level = store.level(n, m)?;
            let mut body = String::new();
            for code in &level.codes {
                body.push_str(code.as_str());
                body.push('\n');
            }
            match out {
                Some(path) => {
                    std::fs::write(&path, body)
                        .with_context(|| format!("writing {}", path.display()))?;
                    eprintln!("U({n}, {m}): {} graphs -> {}", level.len(), path.display());
                }
                None => print!("{body}"),
            }
            Ok(0)
        }
        Command::Maxdensity { n, common } => {
            configure_jobs(common.jobs);
            let family = family_from(&common)?;
            let mut store = LevelStore::new(family, enum_config(&common));
            let (ubar, level) = store.max_density(n)?;
            println!("u_bar({n}) = {ubar} with {} extremal graphs:", level.len());
            for code in &level.codes {
                println!("{code}");
            }
            Ok(0)
        }
        Command::TuudFilter {
            catalog,
            input,
            out,
            report,
        } => {
            let catalog = catalog_from(&catalog)?;
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let mut survivors = String::new();
            let mut rejects: Vec<String> = Vec::new();
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                let g = parse_graph6(line.trim())
                    .with_context(|| format!("parsing level line {line:?}"))?;
                match tuud::is_reducible(&g, &catalog) {
                    None => {
                        survivors.push_str(line.trim());
                        survivors.push('\n');
                    }
                    Some(rep) => {
                        let record = serde_json::json!({
                            "code": line.trim(),
                            "entry_index": rep.entry_index,
                            "embedding": rep.embedding,
                            "pair_image": rep.pair_image,
                        });
                        rejects.push(record.to_string());
                    }
                }
            }
            std::fs::write(&out, survivors)
                .with_context(|| format!("writing {}", out.display()))?;
            if let Some(report) = report {
                let mut f = std::fs::File::create(&report)
                    .with_context(|| format!("creating {}", report.display()))?;
                for r in &rejects {
                    writeln!(f, "{r}")?;
                }
            }
            eprintln!("{} rejected, survivors -> {}", rejects.len(), out.display());
            Ok(0)
        }
        Command::Embed {
            graph,
            seed,
            retries,
            tol,
            paranoid,
            out,
        } => {
            let g = parse_graph6(&graph).context("parsing --graph")?;
            let config = EmbedConfig {
                eps_rank: tol,
                eps_mod: tol,
                eps_res: tol,
                max_retries: retries,
                rng_seed: seed,
                ..Default::default()
            };
            let (outcome, trace) = embed::solve_with_trace(&g, &config);
            let mut disagreement = serde_json::Value::Null;
            if paranoid {
                if outcome.is_refuted() {
                    let strict = embed::solve(&g, &config.paranoid());
                    if !strict.is_refuted() {
                        eprintln!("paranoid check: refutation NOT reproduced at 1e-12");
                        disagreement = serde_json::to_value(&strict)?;
                    }
                } else {
                    eprintln!("note: --paranoid re-checks refutations; outcome was not refuted");
                }
            }
            let record = serde_json::json!({
                "graph": graph,
                "n": g.vertex_count(),
                "m": g.edge_count(),
                "result": outcome,
                "trace": trace,
                "paranoid_disagreement": disagreement,
            });
            let body = serde_json::to_string_pretty(&record)?;
            match out {
                Some(path) => std::fs::write(&path, body)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => println!("{body}"),
            }
            Ok(0)
        }
        Command::Reproduce {
            max_n,
            common,
            tuud_catalog,
            seed,
            report,
        } => {
            configure_jobs(common.jobs);
            let family = family_from(&common)?;
            let catalog = catalog_from(&tuud_catalog)?;
            let embed_config = EmbedConfig::with_seed(seed);
            let run =
                reproduce_table(max_n, family, &catalog, enum_config(&common), &embed_config)?;
            println!("  n  max_edges  f-free  survivors  embedded  status");
            for row in &run.rows {
                let status = match row.matches_reference {
                    Some(true) => "ok",
                    Some(false) => "MISMATCH",
                    None => "no reference",
                };
                println!(
                    "{:>3}  {:>9}  {:>6}  {:>9}  {:>8}  {status}",
                    row.n,
                    row.max_edges,
                    row.count_f_free,
                    row.count_tuud_survivors,
                    row.count_embedded
                );
                if let Some(m) = &row.mismatch {
                    println!("     {m}");
                }
            }
            if let Some(path) = report {
                let mut f = std::fs::File::create(&path)
                    .with_context(|| format!("creating {}", path.display()))?;
                for row in &run.rows {
                    writeln!(f, "{}", serde_json::json!({"type": "row", "row": row}))?;
                }
                for d in &run.decisions {
                    writeln!(
                        f,
                        "{}",
                        serde_json::json!({"type": "decision", "decision": d})
                    )?;
                }
                writeln!(
                    f,
                    "{}",
                    serde_json::json!({"type": "summary", "all_match": run.all_match})
                )?;
            }
            Ok(if run.all_match { 0 } else { 2 })
        }
        Command::DeriveForbidden {
            max_vertices,
            seed,
            jobs,
            out,
            flags,
        } => {
            configure_jobs(jobs);
            if max_vertices > 9 {
                bail!("family derivation is supported through nine vertices");
            }
            let derived = derive_forbidden(max_vertices, &EmbedConfig::with_seed(seed))?;
            let mut body = String::new();
            for g in derived.family.members() {
                body.push_str(&emit_graph6(g));
                body.push('\n');
            }
            match out {
                Some(path) => {
                    std::fs::write(&path, body)
                        .with_context(|| format!("writing {}", path.display()))?;
                }
                None => print!("{body}"),
            }
            eprintln!(
                "{} minimal forbidden graphs on <= {max_vertices} vertices; {} candidates flagged",
                derived.family.members().len(),
                derived.flagged.len()
            );
            if let Some(path) = flags {
                let mut f = std::fs::File::create(&path)
                    .with_context(|| format!("creating {}", path.display()))?;
                for fl in &derived.flagged {
                    writeln!(f, "{}", serde_json::to_string(fl)?)?;
                }
            }
            Ok(0)
        }
    }
}
