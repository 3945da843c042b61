//! Command-line interface for the decomposition toolkit: boosters,
//! absorbers, exact solving, embeddings, nibble matching, spread
//! measurement, threshold experiments, and the end-to-end pipeline.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use design_forge_core::absorber::{
    boost_absorber, brute_force_absorber, verify_omni_absorber, AbsorberSearch, OmniAbsorber,
    DEFAULT_DIVISIBLE_CAP,
};
use design_forge_core::booster::{layer_boosters, verify_rooted_booster, RootedBooster};
use design_forge_core::embed::{embedding_spread_report, sample_embedding, EmbeddingProblem};
use design_forge_core::expt::{run_threshold_experiment, threshold_csv, ThresholdConfig};
use design_forge_core::graph::{packing_from_text, packing_to_text, Clique, Graph};
use design_forge_core::hypergraph::{BipartiteHypergraph, Hypergraph};
use design_forge_core::nibble::{spread_nibble, NibbleParams};
use design_forge_core::pipeline::{
    end_to_end_pipeline, pipeline_spread_report, singleton_probes, PipelineConfig,
};
use design_forge_core::rational::rat_to_f64;
use design_forge_core::solver::{
    enumerate_decompositions, find_decomposition, CoverInstance, SolveStatus,
};
use design_forge_core::spread::{
    check_sigma_spread, exact_spread, empirical_spread, ExplicitDistribution, SpreadReport,
    DEFAULT_PACKING_CAP,
};

#[derive(Parser)]
#[command(name = "design-forge", version, about = "clique-decomposition toolkit")]
struct Cli {
    /// master seed for all randomized commands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// write outputs into this directory instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// preferred report format where a choice exists
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// build or verify rooted boosters
    Booster {
        #[command(subcommand)]
        cmd: BoosterCmd,
    },
    /// build, boost, or verify omni-absorbers
    Absorber {
        #[command(subcommand)]
        cmd: AbsorberCmd,
    },
    /// exact K_q-decomposition search over a host graph
    Solve {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        q: usize,
        /// restrict candidates to the cliques in this packing file
        #[arg(long)]
        candidates: Option<PathBuf>,
        #[arg(long)]
        enumerate: bool,
        /// cap on enumerated decompositions
        #[arg(long)]
        limit: Option<usize>,
        /// node budget for the search
        #[arg(long)]
        budget: Option<u64>,
    },
    /// sample an edge-disjoint rooted partial-clique embedding
    Embed {
        #[arg(long)]
        host: PathBuf,
        /// root cliques, packing text format
        #[arg(long)]
        roots: PathBuf,
        #[arg(long)]
        b: usize,
        #[arg(long = "C")]
        c: f64,
        /// containment targets as JSON [{"root": [..], "target": [..]}]
        #[arg(long)]
        targets: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 100_000)]
        resample_cap: u64,
    },
    /// nibble matching with reserves
    Nibble {
        #[command(subcommand)]
        cmd: NibbleCmd,
    },
    /// sigma-spread measurement
    Spread {
        #[command(subcommand)]
        cmd: SpreadCmd,
    },
    /// random-hypergraph threshold experiment (CSV output)
    Threshold {
        #[arg(long)]
        q: usize,
        /// comma-separated orders, e.g. 7,9,13
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        /// comma-separated probabilities, e.g. 0,0.2,0.4,0.6,0.8,1
        #[arg(long, value_delimiter = ',')]
        p_grid: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// the end-to-end decomposition pipeline
    Pipeline {
        #[command(subcommand)]
        cmd: PipelineCmd,
    },
}

#[derive(Subcommand)]
enum BoosterCmd {
    /// construct the layered rooted booster for a given q
    Build {
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// verify a rooted booster JSON file
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Edgelist,
    Json,
}

#[derive(Subcommand)]
enum AbsorberCmd {
    /// brute-force an omni-absorber for a reserve graph
    Build {
        /// reserve graph X, edge-list format
        #[arg(long)]
        reserve: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        host_n: usize,
        #[arg(long, default_value_t = 18)]
        max_edges: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// replace every family clique by a rooted booster from a directory of
    /// booster JSON files (matched by root)
    Boost {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        boosters: PathBuf,
    },
    /// verify an omni-absorber JSON file
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum NibbleCmd {
    Run {
        /// main hypergraph, text format
        #[arg(long)]
        g1: PathBuf,
        /// bipartite reserve hypergraph with a "# A: ..." directive
        #[arg(long)]
        g2: PathBuf,
        /// nibble parameters, TOML
        #[arg(long)]
        params: PathBuf,
    },
}

#[derive(Subcommand)]
enum SpreadCmd {
    /// exact spread of the uniform distribution over all decompositions
    Exact {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        smax: usize,
        /// sigma values to check, e.g. 1/5 or 0.2
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<String>,
    },
    /// empirical spread of an external seeded sampler command
    Empirical {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        q: usize,
        /// command run per trial with DESIGN_FORGE_SEED set; must print a
        /// decomposition in packing text format
        #[arg(long)]
        sampler: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// probe packing files
        #[arg(long, value_delimiter = ',')]
        probes: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PipelineCmd {
    /// run the pipeline once and emit the decomposition
    Run {
        /// TOML config; the shipped desk profile when omitted
        #[arg(long)]
        config: Option<PathBuf>,
        /// print the effective config as TOML and exit
        #[arg(long)]
        emit_config: bool,
    },
    /// run the pipeline across seeds and report empirical spread
    Spread {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        trials: u64,
        #[arg(long, default_value_t = 10)]
        min_success: u64,
        /// compare against the uniform enumeration baseline
        #[arg(long)]
        baseline: bool,
    },
}

fn main() -> Result<()> {
    if let Ok(threads) = std::env::var("DESIGN_FORGE_THREADS") {
        let n: usize = threads
            .parse()
            .context("DESIGN_FORGE_THREADS must be an integer")?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    let cli = Cli::parse();
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir)?;
    }
    match &cli.command {
        Command::Booster { cmd } => booster_cmd(&cli, cmd),
        Command::Absorber { cmd } => absorber_cmd(&cli, cmd),
        Command::Solve { host, q, candidates, enumerate, limit, budget } => {
            solve_cmd(&cli, host, *q, candidates.as_deref(), *enumerate, *limit, *budget)
        }
        Command::Embed { host, roots, b, c, targets, trials, resample_cap } => {
            embed_cmd(&cli, host, roots, *b, *c, targets.as_deref(), *trials, *resample_cap)
        }
        Command::Nibble { cmd } => nibble_cmd(&cli, cmd),
        Command::Spread { cmd } => spread_cmd(&cli, cmd),
        Command::Threshold { q, n_list, p_grid, trials, budget } => {
            threshold_cmd(&cli, *q, n_list, p_grid, *trials, *budget)
        }
        Command::Pipeline { cmd } => pipeline_cmd(&cli, cmd),
    }
}

fn emit(cli: &Cli, name: &str, content: &str) -> Result<()> {
    match &cli.out {
        Some(dir) => {
            let path = dir.join(name);
            fs::write(&path, content)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(Graph::from_edge_list_text(&text)?)
}

fn read_packing(path: &Path) -> Result<Vec<Clique>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(packing_from_text(&text)?)
}

fn booster_cmd(cli: &Cli, cmd: &BoosterCmd) -> Result<()> {
    match cmd {
        BoosterCmd::Build { q, emit: emit_kind } => {
            let rb = layer_boosters(*q)?;
            match emit_kind {
                Emit::Json => emit(cli, &format!("booster-q{q}.json"), &rb.to_json()),
                Emit::Edgelist => {
                    emit(cli, &format!("booster-q{q}.edges"), &rb.graph.to_edge_list_text())
                }
            }
        }
        BoosterCmd::Verify { file } => {
            let text = fs::read_to_string(file)?;
            let rb = RootedBooster::from_json(&text)?;
            let report = verify_rooted_booster(&rb);
            let mut lines = Vec::new();
            for c in &report.checks {
                lines.push(serde_json::json!({
                    "check": c.name, "pass": c.pass, "detail": c.detail,
                }));
            }
            let doc = serde_json::json!({
                "pass": report.pass(),
                "on_density": report.on_density.map(|d| d.to_string()),
                "off_density": report.off_density.map(|d| d.to_string()),
                "checks": lines,
            });
            emit(cli, "booster-verify.json", &serde_json::to_string_pretty(&doc)?)?;
            if report.pass() {
                Ok(())
            } else {
                bail!("booster verification failed")
            }
        }
    }
}

fn absorber_cmd(cli: &Cli, cmd: &AbsorberCmd) -> Result<()> {
    match cmd {
        AbsorberCmd::Build { reserve, q, host_n, max_edges, budget } => {
            let x = read_graph(reserve)?;
            let opts = AbsorberSearch {
                max_edges: *max_edges,
                node_budget: *budget,
                ..AbsorberSearch::default()
            };
            let oa = brute_force_absorber(&x, *q, *host_n, &opts)?;
            emit(cli, "absorber.json", &oa.to_json())
        }
        AbsorberCmd::Boost { base, boosters } => {
            let text = fs::read_to_string(base)?;
            let oa = OmniAbsorber::from_json(&text)?;
            let mut loaded = Vec::new();
            let mut entries: Vec<_> = fs::read_dir(boosters)?
                .collect::<std::io::Result<Vec<_>>>()?
                .into_iter()
                .map(|e| e.path())
                .filter(|p| p.extension().is_some_and(|e| e == "json"))
                .collect();
            entries.sort();
            for path in entries {
                let text = fs::read_to_string(&path)?;
                loaded.push(RootedBooster::from_json(&text)?);
            }
            let boosted = boost_absorber(&oa, &loaded)?;
            emit(cli, "absorber-boosted.json", &boosted.to_json())
        }
        AbsorberCmd::Verify { file } => {
            let text = fs::read_to_string(file)?;
            let oa = OmniAbsorber::from_json(&text)?;
            let report = verify_omni_absorber(&oa, DEFAULT_DIVISIBLE_CAP)?;
            let doc = serde_json::json!({
                "pass": report.pass(),
                "C_observed": report.c_observed,
                "checks": report.checks.iter().map(|c| serde_json::json!({
                    "check": c.name, "pass": c.pass, "detail": c.detail,
                })).collect::<Vec<_>>(),
            });
            emit(cli, "absorber-verify.json", &serde_json::to_string_pretty(&doc)?)?;
            if report.pass() {
                Ok(())
            } else {
                bail!("absorber verification failed")
            }
        }
    }
}

fn solve_cmd(
    cli: &Cli,
    host: &Path,
    q: usize,
    candidates: Option<&Path>,
    enumerate: bool,
    limit: Option<usize>,
    budget: Option<u64>,
) -> Result<()> {
    let g = read_graph(host)?;
    let inst = match candidates {
        Some(path) => CoverInstance::with_candidates(&g, q, read_packing(path)?)?,
        None => CoverInstance::from_host(&g, q)?,
    };
    if enumerate {
        let out = enumerate_decompositions(&inst, limit);
        let doc = serde_json::json!({
            "status": "enumerated",
            "count": out.decompositions.len(),
            "truncated": out.truncated,
            "nodes": out.nodes,
        });
        emit(cli, "solve.json", &serde_json::to_string_pretty(&doc)?)?;
        if let Some(dir) = &cli.out {
            for (i, dec) in out.decompositions.iter().enumerate() {
                fs::write(dir.join(format!("decomposition-{i:04}.txt")), packing_to_text(dec))?;
            }
        }
        Ok(())
    } else {
        let out = find_decomposition(&inst, budget, Some(cli.seed));
        let (status, packing) = match &out.status {
            SolveStatus::Found(sol) => ("found", Some(sol.clone())),
            SolveStatus::Infeasible => ("infeasible", None),
            SolveStatus::BudgetExhausted => ("budget-exhausted", None),
        };
        let doc = serde_json::json!({
            "status": status,
            "count": packing.as_ref().map(|p| p.len()).unwrap_or(0),
            "nodes": out.nodes,
            "elapsed_ms": out.elapsed_ms,
        });
        emit(cli, "solve.json", &serde_json::to_string_pretty(&doc)?)?;
        if let Some(sol) = packing {
            emit(cli, "solution.txt", &packing_to_text(&sol))?;
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct TargetEntry {
    root: Vec<u32>,
    target: Vec<u32>,
}

#[allow(clippy::too_many_arguments)]
fn embed_cmd(
    cli: &Cli,
    host: &Path,
    roots: &Path,
    b: usize,
    c: f64,
    targets: Option<&Path>,
    trials: u64,
    resample_cap: u64,
) -> Result<()> {
    let g = read_graph(host)?;
    let roots = read_packing(roots)?;
    let problem = EmbeddingProblem::new(g, roots, b, c)?;
    let embedding = sample_embedding(&problem, cli.seed, resample_cap)?;
    let mut doc = serde_json::json!({
        "resamples": embedding.resamples,
        "max_degree": embedding.max_degree,
        "degree_bound": problem.degree_bound(),
        "disjoint": true,
        "slots": problem.d_slots,
        "partial_cliques": embedding.assignments.iter().map(|(root, pc, slot)| {
            serde_json::json!({
                "root": root.vertices(),
                "extension": pc.extension,
                "slot": slot,
            })
        }).collect::<Vec<_>>(),
    });
    if let Some(path) = targets {
        let text = fs::read_to_string(path)?;
        let entries: Vec<TargetEntry> = serde_json::from_str(&text)?;
        let targets: Vec<(Clique, Vec<u32>)> = entries
            .into_iter()
            .map(|e| Ok((Clique::new(e.root)?, e.target)))
            .collect::<design_forge_core::Result<_>>()?;
        let rep = embedding_spread_report(&problem, &targets, trials, cli.seed, resample_cap)?;
        doc["spread_estimate"] = serde_json::json!({
            "trials": rep.trials,
            "hits": rep.hits,
            "estimate": rep.estimate,
            "ci": [rep.ci.0, rep.ci.1],
            "exact_zero": rep.exact_zero,
        });
        doc["bound"] = serde_json::json!(rep.bound);
    }
    emit(cli, "embed.json", &serde_json::to_string_pretty(&doc)?)
}

/// Bipartite hypergraph file: ordinary hypergraph text plus a "# A: ..."
/// directive naming the part that must be covered.
fn read_bipartite(path: &Path) -> Result<BipartiteHypergraph> {
    let text = fs::read_to_string(path)?;
    let mut part_a: Option<BTreeSet<u32>> = None;
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("# A:").or_else(|| line.strip_prefix("#A:")) {
            let ids: std::result::Result<BTreeSet<u32>, _> =
                rest.split_whitespace().map(str::parse).collect();
            part_a = Some(ids.map_err(|_| anyhow!("bad vertex id in A directive"))?);
        }
    }
    let part_a =
        part_a.ok_or_else(|| anyhow!("{} lacks a \"# A: ...\" directive", path.display()))?;
    let hg = Hypergraph::from_text(&text)?;
    let part_b: BTreeSet<u32> = hg
        .incident_vertices()
        .into_iter()
        .filter(|v| !part_a.contains(v))
        .collect();
    Ok(BipartiteHypergraph::new(hg.n, part_a, part_b, hg.edges)?)
}

fn nibble_cmd(cli: &Cli, cmd: &NibbleCmd) -> Result<()> {
    match cmd {
        NibbleCmd::Run { g1, g2, params } => {
            let g1 = Hypergraph::from_text(&fs::read_to_string(g1)?)?;
            let g2 = read_bipartite(g2)?;
            let params: NibbleParams = toml::from_str(&fs::read_to_string(params)?)?;
            let out = spread_nibble(&g1, &g2, &params, cli.seed);
            let doc = match out {
                Ok(run) => serde_json::json!({
                    "status": if run.run.a_perfect() { "success" } else { "failure" },
                    "covered_A": g2.part_a.len() - run.run.uncovered_a.len(),
                    "uncovered_A": run.run.uncovered_a,
                    "rounds": run.run.rounds,
                    "leave_fraction": run.run.leave_fraction,
                    "reserve_used": run.run.reserve_used,
                    "rate_used": run.rate_used,
                    "rate_formula": run.rate_formula,
                    "sparsify_resamples": run.resamples,
                    "matched": run.run.matching.edges.iter().map(|e| e.vertices.clone()).collect::<Vec<_>>(),
                }),
                Err(e) => serde_json::json!({
                    "status": "error",
                    "detail": e.to_string(),
                }),
            };
            emit(cli, "nibble.json", &serde_json::to_string_pretty(&doc)?)
        }
    }
}

fn parse_sigma(text: &str) -> Result<design_forge_core::rational::Rat> {
    if let Some((a, b)) = text.split_once('/') {
        let num: i128 = a.trim().parse()?;
        let den: i128 = b.trim().parse()?;
        return Ok(design_forge_core::rational::rat(num, den));
    }
    let v: f64 = text.parse()?;
    let den = 1_000_000i128;
    Ok(design_forge_core::rational::rat((v * den as f64).round() as i128, den))
}

fn spread_report_json(report: &SpreadReport) -> serde_json::Value {
    serde_json::json!({
        "mode": match report.mode {
            design_forge_core::spread::SpreadMode::Exact => "exact",
            design_forge_core::spread::SpreadMode::Empirical => "empirical",
        },
        "s_max": report.s_max,
        "sigma_singleton": report.sigma_singleton.as_ref().map(|r| r.to_string()),
        "sigma_singleton_f64": report.sigma_singleton.as_ref().map(rat_to_f64),
        "trials": report.trials,
        "probes": report.probes,
        "per_size": report.per_size.iter().map(|s| serde_json::json!({
            "size": s.size,
            "worst_p": s.worst_p.to_string(),
            "worst_p_f64": rat_to_f64(&s.worst_p),
            "ratio": s.ratio(),
            "ci_hi": s.ci_hi,
            "witness": s.witness.iter().map(|c| c.vertices().to_vec()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn spread_cmd(cli: &Cli, cmd: &SpreadCmd) -> Result<()> {
    match cmd {
        SpreadCmd::Exact { host, q, smax, sigma } => {
            let g = read_graph(host)?;
            let inst = CoverInstance::from_host(&g, *q)?;
            let all = enumerate_decompositions(&inst, None);
            if all.decompositions.is_empty() {
                bail!("host has no K_{q}-decomposition; nothing to measure");
            }
            let count = all.decompositions.len();
            let dist = ExplicitDistribution::uniform(g, *q, all.decompositions)?;
            let report = exact_spread(&dist, *smax, DEFAULT_PACKING_CAP)?;
            let mut doc = spread_report_json(&report);
            doc["support"] = serde_json::json!(count);
            let mut checks = Vec::new();
            for s in sigma {
                let value = parse_sigma(s)?;
                checks.push(serde_json::json!({
                    "sigma": s,
                    "holds": check_sigma_spread(&report, &value),
                }));
            }
            doc["sigma_checks"] = serde_json::json!(checks);
            emit(cli, "spread-exact.json", &serde_json::to_string_pretty(&doc)?)
        }
        SpreadCmd::Empirical { host, q, sampler, trials, probes } => {
            let g = read_graph(host)?;
            let probe_packings: Vec<Vec<Clique>> = probes
                .iter()
                .map(|p| read_packing(p))
                .collect::<Result<_>>()?;
            let command = sampler.clone();
            let mut sample = move |seed: u64| -> design_forge_core::Result<Vec<Clique>> {
                let output = std::process::Command::new("sh")
                    .arg("-c")
                    .arg(&command)
                    .env("DESIGN_FORGE_SEED", seed.to_string())
                    .output()
                    .map_err(design_forge_core::Error::Io)?;
                if !output.status.success() {
                    return Err(design_forge_core::Error::InvalidParameter(format!(
                        "sampler exited with {}",
                        output.status
                    )));
                }
                let text = String::from_utf8_lossy(&output.stdout);
                packing_from_text(&text)
            };
            let report =
                empirical_spread(&g, *q, &mut sample, *trials, &probe_packings, cli.seed)?;
            emit(
                cli,
                "spread-empirical.json",
                &serde_json::to_string_pretty(&spread_report_json(&report))?,
            )
        }
    }
}

fn threshold_cmd(
    cli: &Cli,
    q: usize,
    n_list: &[usize],
    p_grid: &[f64],
    trials: u64,
    budget: Option<u64>,
) -> Result<()> {
    let cfg = ThresholdConfig {
        q,
        n_list: n_list.to_vec(),
        p_grid: p_grid.to_vec(),
        trials,
        budget,
        seed: cli.seed,
    };
    let result = run_threshold_experiment(&cfg)?;
    match cli.format {
        Format::Csv => emit(cli, "threshold.csv", &threshold_csv(&result)),
        Format::Json => {
            let doc = serde_json::json!({
                "q": q,
                "cells": result.cells.iter().map(|c| serde_json::json!({
                    "n": c.n, "p": c.p, "trials": c.trials,
                    "successes": c.successes, "rate": c.rate,
                    "ci_lo": c.ci.0, "ci_hi": c.ci.1,
                })).collect::<Vec<_>>(),
                "skipped": result.skipped,
            });
            emit(cli, "threshold.json", &serde_json::to_string_pretty(&doc)?)
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<PipelineConfig> {
    match path {
        Some(p) => Ok(toml::from_str(&fs::read_to_string(p)?)?),
        None => Ok(PipelineConfig::desk_profile()),
    }
}

fn pipeline_cmd(cli: &Cli, cmd: &PipelineCmd) -> Result<()> {
    match cmd {
        PipelineCmd::Run { config, emit_config } => {
            let cfg = load_config(config.as_deref())?;
            if *emit_config {
                return emit(cli, "pipeline-config.toml", &toml::to_string_pretty(&cfg)?);
            }
            let run = end_to_end_pipeline(&cfg, cli.seed)?;
            let doc = serde_json::json!({
                "seed": run.master_seed,
                "status": if run.succeeded() { "success" } else { "failure" },
                "failure": run.failure,
                "stages": run.stages.iter().map(|s| serde_json::json!({
                    "stage": s.stage, "seed": s.seed, "retries": s.retries,
                    "ms": s.ms, "note": s.note,
                })).collect::<Vec<_>>(),
            });
            emit(cli, "pipeline.json", &serde_json::to_string_pretty(&doc)?)?;
            if let Some(dec) = &run.decomposition {
                emit(cli, "decomposition.txt", &packing_to_text(dec))?;
            }
            if run.succeeded() {
                Ok(())
            } else {
                bail!("pipeline failed: {}", run.failure.unwrap_or_default())
            }
        }
        PipelineCmd::Spread { config, trials, min_success, baseline } => {
            let cfg = load_config(config.as_deref())?;
            let host = Graph::complete(cfg.n);
            let probes = singleton_probes(&host, cfg.q)?;
            let report =
                pipeline_spread_report(&cfg, *trials, &probes, cli.seed, *min_success, *baseline)?;
            let mut doc = spread_report_json(&report.report);
            doc["pipeline_trials"] = serde_json::json!(report.trials);
            doc["pipeline_successes"] = serde_json::json!(report.successes);
            doc["baseline_singleton"] =
                serde_json::json!(report.baseline_singleton.map(|r| r.to_string()));
            doc["baseline_singleton_f64"] = serde_json::json!(report.baseline_singleton_f64);
            emit(cli, "pipeline-spread.json", &serde_json::to_string_pretty(&doc)?)
        }
    }
}
