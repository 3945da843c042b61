//! End-to-end checks of the command-line surface and file formats.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_design-forge"))
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("design-forge-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn complete_graph_file(dir: &Path, n: usize) -> PathBuf {
    let mut text = String::new();
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            edges.push(format!("{u} {v}"));
        }
    }
    text.push_str(&format!("{n} {}\n", edges.len()));
    text.push_str(&edges.join("\n"));
    text.push('\n');
    let path = dir.join(format!("k{n}.edges"));
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn solve_enumerates_thirty_systems() {
    let dir = tempdir("solve");
    let host = complete_graph_file(&dir, 7);
    let out = bin()
        .args(["solve", "--host"])
        .arg(&host)
        .args(["--q", "3", "--enumerate"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["count"], 30);
    assert_eq!(doc["truncated"], false);
}

#[test]
fn booster_build_verify_round_trip() {
    let dir = tempdir("booster");
    let out = bin()
        .args(["booster", "build", "--q", "4", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let file = dir.join("booster-q4.json");
    assert!(file.exists());
    let out = bin()
        .args(["booster", "verify", "--file"])
        .arg(&file)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["pass"], true);
}

#[test]
fn absorber_build_boost_verify_via_files() {
    let dir = tempdir("absorber");
    let tri = dir.join("triangle.edges");
    fs::write(&tri, "3 3\n0 1\n0 2\n1 2\n").unwrap();
    let out = bin()
        .args(["absorber", "build", "--reserve"])
        .arg(&tri)
        .args(["--q", "3", "--host-n", "9", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let base = dir.join("absorber.json");

    let verify = bin()
        .args(["absorber", "verify", "--file"])
        .arg(&base)
        .output()
        .unwrap();
    assert!(verify.status.success());

    // produce embedded boosters through the library, then boost via the CLI
    use design_forge_core::absorber::OmniAbsorber;
    use design_forge_core::booster::layer_boosters;
    use design_forge_core::embed::{sample_embedding, EmbeddingProblem};
    use design_forge_core::graph::Graph;
    use design_forge_core::pipeline::boosters_from_embedding;
    let oa = OmniAbsorber::from_json(&fs::read_to_string(&base).unwrap()).unwrap();
    let template = layer_boosters(3).unwrap();
    let n = 1000;
    let host = Graph::complete(n);
    let occupied = oa.x.padded(n).unwrap().union(&oa.a.padded(n).unwrap()).unwrap();
    let free = host.minus(&occupied).unwrap();
    let problem =
        EmbeddingProblem::new(free, oa.family.clone(), template.extension_size(), 30.0).unwrap();
    let emb = sample_embedding(&problem, 7, 100_000).unwrap();
    let boosters = boosters_from_embedding(&template, &emb, n).unwrap();
    let bdir = dir.join("boosters");
    fs::create_dir_all(&bdir).unwrap();
    for (i, b) in boosters.iter().enumerate() {
        fs::write(bdir.join(format!("booster-{i}.json")), b.to_json()).unwrap();
    }
    let out = bin()
        .args(["absorber", "boost", "--base"])
        .arg(&base)
        .arg("--boosters")
        .arg(&bdir)
        .args(["--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let boosted = dir.join("absorber-boosted.json");
    let verify = bin()
        .args(["absorber", "verify", "--file"])
        .arg(&boosted)
        .output()
        .unwrap();
    assert!(verify.status.success(), "{}", String::from_utf8_lossy(&verify.stderr));
}

#[test]
fn pipeline_run_emits_verified_decomposition() {
    let dir = tempdir("pipeline");
    let out = bin()
        .args(["--seed", "5", "pipeline", "run", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.join("decomposition.txt")).unwrap();
    use design_forge_core::graph::{packing_from_text, verify_decomposition, Graph};
    let cliques = packing_from_text(&text).unwrap();
    assert!(verify_decomposition(&Graph::complete(9), &cliques, 3).ok);
    assert_eq!(cliques.len(), 12);
}

#[test]
fn threshold_csv_schema_and_skips() {
    let out = bin()
        .args([
            "threshold", "--q", "3", "--n-list", "6,7", "--p-grid", "0,1", "--trials", "5",
            "--format", "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("n,q,p,trials,successes,rate,ci_lo,ci_hi"));
    assert!(text.contains("# skipped n=6"));
    assert!(text.contains("7,3,1,5,5,1.000000"));
}

#[test]
fn nibble_run_on_files() {
    let dir = tempdir("nibble");
    // main hypergraph: the design of K_7; reserves empty, A = everything
    use design_forge_core::graph::Graph;
    use design_forge_core::hypergraph::design_hypergraph;
    let d = design_hypergraph(&Graph::complete(7), 3).unwrap();
    let g1 = d.as_hypergraph();
    fs::write(dir.join("g1.txt"), g1.to_text()).unwrap();
    let ids: Vec<String> = (0..21).map(|i| i.to_string()).collect();
    fs::write(
        dir.join("g2.txt"),
        format!("21 0\n# A: {}\n", ids.join(" ")),
    )
    .unwrap();
    fs::write(
        dir.join("params.toml"),
        "d_scale = 5.0\ngamma = 0.6\nbite = 0.5\nmax_rounds = 100\n\
         reserve_policy = \"greedy\"\nsparsify_floor = 1.0\n\
         upper_scale = 1e9\ncodegree_scale = 1e9\n",
    )
    .unwrap();
    let out = bin()
        .args(["--seed", "4", "nibble", "run", "--g1"])
        .arg(dir.join("g1.txt"))
        .arg("--g2")
        .arg(dir.join("g2.txt"))
        .arg("--params")
        .arg(dir.join("params.toml"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["status"] == "success" || doc["status"] == "failure");
    assert!(doc["covered_A"].as_u64().unwrap() <= 21);
}

#[test]
fn spread_exact_reports_one_fifth() {
    let dir = tempdir("spread");
    let host = complete_graph_file(&dir, 7);
    let out = bin()
        .args(["spread", "exact", "--host"])
        .arg(&host)
        .args(["--q", "3", "--smax", "1", "--sigma", "1/5,1/6"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["sigma_singleton"], "1/5");
    assert_eq!(doc["support"], 30);
    assert_eq!(doc["sigma_checks"][0]["holds"], true);
    assert_eq!(doc["sigma_checks"][1]["holds"], false);
}

#[test]
fn spread_empirical_with_external_sampler() {
    let dir = tempdir("sampler");
    let host = complete_graph_file(&dir, 7);
    // fixed-output sampler: the cyclic Steiner system
    let fano = "0 1 3\n1 2 4\n2 3 5\n3 4 6\n0 4 5\n1 5 6\n0 2 6\n";
    fs::write(dir.join("fixed.txt"), fano).unwrap();
    fs::write(dir.join("probe.txt"), "0 1 3\n").unwrap();
    let sampler = format!("cat {}", dir.join("fixed.txt").display());
    let out = bin()
        .args(["spread", "empirical", "--host"])
        .arg(&host)
        .args(["--q", "3", "--sampler", &sampler, "--trials", "40", "--probes"])
        .arg(dir.join("probe.txt"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["sigma_singleton"], "1");
}

#[test]
fn embed_reports_degree_and_spread() {
    let dir = tempdir("embed");
    let host = complete_graph_file(&dir, 30);
    fs::write(dir.join("roots.txt"), "0 1 2\n3 4 5\n").unwrap();
    fs::write(
        dir.join("targets.json"),
        "[{\"root\": [0,1,2], \"target\": [10]}]",
    )
    .unwrap();
    let out = bin()
        .args(["embed", "--host"])
        .arg(&host)
        .arg("--roots")
        .arg(dir.join("roots.txt"))
        .args(["--b", "3", "--C", "10", "--trials", "200", "--targets"])
        .arg(dir.join("targets.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["disjoint"], true);
    assert!(doc["max_degree"].as_f64().unwrap() <= doc["degree_bound"].as_f64().unwrap());
    let est = doc["spread_estimate"]["estimate"].as_f64().unwrap();
    assert!(doc["bound"].as_f64().unwrap() > 0.0);
    assert!(est < 0.5);
}
