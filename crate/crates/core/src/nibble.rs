//! Reservoir selection, design regularization, semi-random nibble matching
//! with a reserve-completion phase, and the sparsified spread nibble.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{BipartiteHypergraph, DesignHypergraph, Hypergraph};
use crate::rational::binomial;
use crate::seed::derive_seed;

/// How uncovered A-vertices are completed through the reserve hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReservePolicy {
    /// first available reserve hyperedge per uncovered vertex, seeded order
    Greedy,
    /// bipartite augmenting paths; requires exactly one B-vertex per edge
    Matching,
}

/// Knobs for the nibble and its sparsified variant. The five bad-event
/// thresholds follow the shapes D^{γ/2} + D^{γ/3}, D^{γ/2}(1 − D^{−γ/6}),
/// D^{γ/2−α} − D^{γ/3}, and log²D, each with a configurable scale so they
/// stay meaningful at desk-scale D.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NibbleParams {
    pub d_scale: f64,
    pub gamma: f64,
    pub bite: f64,
    pub max_rounds: usize,
    pub reserve_policy: ReservePolicy,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_floor")]
    pub sparsify_floor: f64,
    #[serde(default = "default_retries")]
    pub sparsify_retries: usize,
    #[serde(default = "default_scale")]
    pub codegree_scale: f64,
    #[serde(default = "default_scale")]
    pub upper_scale: f64,
    #[serde(default)]
    pub lower_scale: f64,
}

fn default_alpha() -> f64 {
    0.1
}
fn default_floor() -> f64 {
    0.05
}
fn default_retries() -> usize {
    50
}
fn default_scale() -> f64 {
    1.0
}

impl Default for NibbleParams {
    fn default() -> Self {
        NibbleParams {
            d_scale: 10.0,
            gamma: 0.6,
            bite: 0.1,
            max_rounds: 60,
            reserve_policy: ReservePolicy::Greedy,
            alpha: default_alpha(),
            sparsify_floor: default_floor(),
            sparsify_retries: default_retries(),
            codegree_scale: default_scale(),
            upper_scale: default_scale(),
            lower_scale: 0.0,
        }
    }
}

impl NibbleParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be in (0,1), got {}",
                self.gamma
            )));
        }
        if !(self.bite > 0.0 && self.bite < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "bite must be in (0,1), got {}",
                self.bite
            )));
        }
        Ok(())
    }

    /// The sparsification rate before the floor: D^{γ/2 − 1}.
    pub fn formula_rate(&self) -> f64 {
        self.d_scale.powf(self.gamma / 2.0 - 1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeSource {
    Main(usize),
    Reserve(usize),
}

#[derive(Clone, Debug)]
pub struct MatchedEdge {
    pub source: EdgeSource,
    pub vertices: Vec<u32>,
}

/// Selected hyperedges, pairwise vertex-disjoint.
#[derive(Clone, Debug, Default)]
pub struct Matching {
    pub edges: Vec<MatchedEdge>,
}

impl Matching {
    pub fn is_vertex_disjoint(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.edges {
            for v in &e.vertices {
                if !seen.insert(*v) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct NibbleRun {
    pub matching: Matching,
    /// empty iff the matching is A-perfect
    pub uncovered_a: Vec<u32>,
    pub rounds: usize,
    /// fraction of A uncovered after the bite rounds, before reserves
    pub leave_fraction: f64,
    pub reserve_used: usize,
}

impl NibbleRun {
    pub fn a_perfect(&self) -> bool {
        self.uncovered_a.is_empty()
    }
}

/// Number of q-cliques through edge (u,v) whose remaining edges all lie in
/// `x`, counting at most `enough` of them.
fn cliques_through_edge_in(x: &Graph, u: u32, v: u32, q: usize, enough: usize) -> usize {
    fn count(x: &Graph, cands: &[u32], need: usize, cap: usize) -> usize {
        if need == 0 {
            return 1;
        }
        let mut total = 0;
        for (i, &w) in cands.iter().enumerate() {
            if cands.len() - i < need {
                break;
            }
            let next: Vec<u32> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&z| x.has_edge(z, w))
                .collect();
            total += count(x, &next, need - 1, cap - total);
            if total >= cap {
                return total;
            }
        }
        total
    }
    let cands = x.common_neighbors(&[u, v]);
    count(x, &cands, q - 2, enough.max(1))
}

/// Samples X ⊆ G by independent p-inclusion, accepting only when
/// Δ(X) ≤ 2pn and every non-X edge extends to at least
/// eps·p^{C(q,2)−1}·n^{q−2} q-cliques through X. Retries up to `retry_cap`.
pub fn select_reservoir(
    g: &Graph,
    q: usize,
    p: f64,
    eps: f64,
    seed: u64,
    retry_cap: usize,
) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p must be in [0,1], got {p}")));
    }
    if q < 3 {
        return Err(Error::InvalidParameter(format!("q must be >= 3, got {q}")));
    }
    let n = g.n();
    let exponent = (q * (q - 1) / 2 - 1) as i32;
    let threshold = eps * p.powi(exponent) * (n as f64).powi(q as i32 - 2);
    let degree_cap = 2.0 * p * n as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_failure = String::new();
    for _ in 0..retry_cap {
        let kept: Vec<(u32, u32)> = g
            .edges()
            .into_iter()
            .filter(|_| rng.gen_bool(p))
            .collect();
        let x = Graph::from_edges(n, kept)?;
        if x.max_degree() as f64 > degree_cap {
            last_failure = format!(
                "Δ(X) = {} exceeds 2pn = {degree_cap:.2}",
                x.max_degree()
            );
            continue;
        }
        let enough = threshold.ceil() as usize;
        let deficient = g.edges().into_iter().find(|&(u, v)| {
            if x.has_edge(u, v) {
                return false;
            }
            (cliques_through_edge_in(&x, u, v, q, enough.max(1)) as f64) < threshold
        });
        match deficient {
            Some((u, v)) => {
                last_failure = format!(
                    "edge ({u},{v}) extends to fewer than {threshold:.3} cliques in X"
                );
            }
            None => return Ok(x),
        }
    }
    Err(Error::RetryExhausted(format!(
        "reservoir selection failed {retry_cap} times; last: {last_failure}"
    )))
}

/// Independent 1/2-thinning of the design hyperedges, accepted when every
/// vertex degree lands within (1/2 ± tol)·C(n−2, q−2).
pub fn regularize_design(
    design: &DesignHypergraph,
    tol: f64,
    seed: u64,
    retry_cap: usize,
) -> Result<DesignHypergraph> {
    thin_design(design, 0.5, tol, seed, retry_cap)
}

/// Independent thinning at a configurable keep rate, accepted when every
/// vertex degree lands within (rate ± tol)·C(n−2, q−2). The pipeline's desk
/// profile overrides the asymptotic 1/2 rate through this entry point.
pub fn thin_design(
    design: &DesignHypergraph,
    keep_rate: f64,
    tol: f64,
    seed: u64,
    retry_cap: usize,
) -> Result<DesignHypergraph> {
    if !(0.0..=1.0).contains(&keep_rate) {
        return Err(Error::InvalidParameter(format!(
            "keep rate must be in [0,1], got {keep_rate}"
        )));
    }
    let n = design.host_n as u64;
    let q = design.q as u64;
    let target = binomial(n.saturating_sub(2), q - 2) as f64;
    let lo = (keep_rate - tol) * target;
    let hi = (keep_rate + tol) * target;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    for _ in 0..retry_cap {
        let keep: Vec<usize> = (0..design.hyperedges.len())
            .filter(|_| rng.gen_bool(keep_rate))
            .collect();
        let mut deg = vec![0usize; design.vertex_count()];
        for &i in &keep {
            for &v in &design.hyperedges[i] {
                deg[v as usize] += 1;
            }
        }
        let bad = deg
            .iter()
            .map(|&d| {
                let d = d as f64;
                (lo - d).max(d - hi)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        if bad <= 0.0 {
            return Ok(design.restrict(&keep));
        }
        worst = worst.min(bad);
    }
    Err(Error::RetryExhausted(format!(
        "regularization failed {retry_cap} times; smallest worst deviation {worst:.2} \
         from [{lo:.2}, {hi:.2}]"
    )))
}

fn check_nibble_inputs(g1: &Hypergraph, g2: &BipartiteHypergraph) -> Result<()> {
    if g1.n != g2.n {
        return Err(Error::Precondition(format!(
            "main and reserve hypergraphs disagree on the universe: {} vs {}",
            g1.n, g2.n
        )));
    }
    for e in &g1.edges {
        if let Some(v) = e.iter().find(|v| g2.part_b.contains(v)) {
            return Err(Error::Precondition(format!(
                "main hyperedge {e:?} touches reserve-only vertex {v}"
            )));
        }
    }
    Ok(())
}

/// Rounds of random bites on the main hypergraph followed by reserve
/// completion for the A-vertices the bites missed. Failure (a non-A-perfect
/// matching) is a value, not an error.
pub fn nibble_with_reserves(
    g1: &Hypergraph,
    g2: &BipartiteHypergraph,
    params: &NibbleParams,
    seed: u64,
) -> Result<NibbleRun> {
    params.validate()?;
    check_nibble_inputs(g1, g2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matched = vec![false; g1.n];
    let mut matching = Matching::default();
    let mut alive: Vec<bool> = vec![true; g1.edges.len()];
    let mut rounds = 0;
    let mut quiet_rounds = 0;
    for _ in 0..params.max_rounds {
        rounds += 1;
        let mut bite: Vec<usize> = (0..g1.edges.len())
            .filter(|&i| alive[i] && rng.gen_bool(params.bite))
            .collect();
        bite.shuffle(&mut rng);
        let mut added = 0;
        for i in bite {
            let e = &g1.edges[i];
            if e.iter().all(|&v| !matched[v as usize]) {
                for &v in e {
                    matched[v as usize] = true;
                }
                matching.edges.push(MatchedEdge {
                    source: EdgeSource::Main(i),
                    vertices: e.clone(),
                });
                added += 1;
            }
        }
        for (i, a) in alive.iter_mut().enumerate() {
            if *a && g1.edges[i].iter().any(|&v| matched[v as usize]) {
                *a = false;
            }
        }
        if added == 0 {
            quiet_rounds += 1;
            if quiet_rounds >= 2 {
                break;
            }
        } else {
            quiet_rounds = 0;
        }
    }
    let uncovered_after_bites: Vec<u32> = g2
        .part_a
        .iter()
        .copied()
        .filter(|&a| !matched[a as usize])
        .collect();
    let leave_fraction = if g2.part_a.is_empty() {
        0.0
    } else {
        uncovered_after_bites.len() as f64 / g2.part_a.len() as f64
    };

    let mut reserve_used = 0;
    match params.reserve_policy {
        ReservePolicy::Greedy => {
            for &a in &uncovered_after_bites {
                let mut options: Vec<usize> = (0..g2.edges.len())
                    .filter(|&i| g2.a_vertex(i) == a)
                    .collect();
                options.shuffle(&mut rng);
                for i in options {
                    let e = &g2.edges[i];
                    if e.iter().all(|&v| !matched[v as usize]) {
                        for &v in e {
                            matched[v as usize] = true;
                        }
                        matching.edges.push(MatchedEdge {
                            source: EdgeSource::Reserve(i),
                            vertices: e.clone(),
                        });
                        reserve_used += 1;
                        break;
                    }
                }
            }
        }
        ReservePolicy::Matching => {
            if let Some(e) = g2.edges.iter().find(|e| e.len() != 2) {
                return Err(Error::InvalidParameter(format!(
                    "matching policy needs exactly one B-vertex per reserve edge, got {e:?}"
                )));
            }
            // Kuhn's augmenting paths over uncovered A against free B
            let free_a: Vec<u32> = uncovered_after_bites.clone();
            let mut adj: BTreeMap<u32, Vec<(usize, u32)>> = BTreeMap::new();
            for (i, e) in g2.edges.iter().enumerate() {
                let a = g2.a_vertex(i);
                let b = *e.iter().find(|v| !g2.part_a.contains(v)).unwrap();
                if !matched[a as usize] && !matched[b as usize] {
                    adj.entry(a).or_default().push((i, b));
                }
            }
            let mut b_owner: BTreeMap<u32, (u32, usize)> = BTreeMap::new();
            fn augment(
                a: u32,
                adj: &BTreeMap<u32, Vec<(usize, u32)>>,
                b_owner: &mut BTreeMap<u32, (u32, usize)>,
                visited: &mut std::collections::BTreeSet<u32>,
            ) -> bool {
                if let Some(options) = adj.get(&a) {
                    for &(i, b) in options {
                        if visited.contains(&b) {
                            continue;
                        }
                        visited.insert(b);
                        let prev = b_owner.get(&b).copied();
                        match prev {
                            None => {
                                b_owner.insert(b, (a, i));
                                return true;
                            }
                            Some((a2, _)) => {
                                if augment(a2, adj, b_owner, visited) {
                                    b_owner.insert(b, (a, i));
                                    return true;
                                }
                            }
                        }
                    }
                }
                false
            }
            for &a in &free_a {
                let mut visited = std::collections::BTreeSet::new();
                augment(a, &adj, &mut b_owner, &mut visited);
            }
            for (b, (a, i)) in b_owner {
                matched[a as usize] = true;
                matched[b as usize] = true;
                matching.edges.push(MatchedEdge {
                    source: EdgeSource::Reserve(i),
                    vertices: g2.edges[i].clone(),
                });
                reserve_used += 1;
            }
        }
    }

    if !matching.is_vertex_disjoint() {
        return Err(Error::Postcondition(
            "matching is not vertex-disjoint".into(),
        ));
    }
    let uncovered_a: Vec<u32> = g2
        .part_a
        .iter()
        .copied()
        .filter(|&a| !matched[a as usize])
        .collect();
    Ok(NibbleRun {
        matching,
        uncovered_a,
        rounds,
        leave_fraction,
        reserve_used,
    })
}

#[derive(Clone, Debug)]
pub struct SpreadNibbleRun {
    pub run: NibbleRun,
    /// original G1/G2 edge indices that survived sparsification
    pub kept_g1: Vec<usize>,
    pub kept_g2: Vec<usize>,
    pub resamples: usize,
    pub rate_used: f64,
    pub rate_formula: f64,
    /// matched edges mapped back to original indices
    pub matched_original: Vec<EdgeSource>,
}

/// Sparsifies both hypergraphs at rate max(floor, D^{γ/2−1}), re-samples
/// while any of the five bad-event families holds, then runs the nibble on
/// the sparsified pair. Every matched hyperedge is, by construction and by
/// assertion, present in the sparsified hypergraph.
pub fn spread_nibble(
    g1: &Hypergraph,
    g2: &BipartiteHypergraph,
    params: &NibbleParams,
    seed: u64,
) -> Result<SpreadNibbleRun> {
    params.validate()?;
    check_nibble_inputs(g1, g2)?;
    let d = params.d_scale;
    let rate_formula = params.formula_rate();
    let rate = rate_formula.max(params.sparsify_floor).min(1.0);
    let log_d = d.ln().max(0.0);
    let codeg_cap = params.codegree_scale * log_d * log_d;
    let upper_cap = params.upper_scale * (d.powf(params.gamma / 2.0) + d.powf(params.gamma / 3.0));
    let lower_g1 = params.lower_scale
        * d.powf(params.gamma / 2.0)
        * (1.0 - d.powf(-params.gamma / 6.0));
    let lower_g2 = params.lower_scale
        * (d.powf(params.gamma / 2.0 - params.alpha) - d.powf(params.gamma / 3.0));

    let mut resamples = 0;
    let mut last_violation = String::new();
    for attempt in 0..params.sparsify_retries {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "sparsify", attempt as u64));
        let kept_g1: Vec<usize> = (0..g1.edges.len()).filter(|_| rng.gen_bool(rate)).collect();
        let kept_g2: Vec<usize> = (0..g2.edges.len()).filter(|_| rng.gen_bool(rate)).collect();

        let mut violation: Option<String> = None;
        // degree events
        let mut deg1 = vec![0usize; g1.n];
        for &i in &kept_g1 {
            for &v in &g1.edges[i] {
                deg1[v as usize] += 1;
            }
        }
        let mut deg2 = vec![0usize; g2.n];
        for &i in &kept_g2 {
            for &v in &g2.edges[i] {
                deg2[v as usize] += 1;
            }
        }
        if let Some(v) = (0..g1.n).find(|&v| deg1[v] as f64 > upper_cap) {
            violation = Some(format!("G1 degree at {v} exceeds {upper_cap:.2}"));
        }
        if violation.is_none() {
            if let Some(&b) = g2.part_b.iter().find(|&&b| deg2[b as usize] as f64 > upper_cap) {
                violation = Some(format!("B degree at {b} exceeds {upper_cap:.2}"));
            }
        }
        if violation.is_none() {
            if let Some(&a) = g2
                .part_a
                .iter()
                .find(|&&a| (deg1[a as usize] as f64) < lower_g1)
            {
                violation = Some(format!("A degree in G1 at {a} below {lower_g1:.2}"));
            }
        }
        if violation.is_none() {
            if let Some(&a) = g2
                .part_a
                .iter()
                .find(|&&a| (deg2[a as usize] as f64) < lower_g2)
            {
                violation = Some(format!("A degree in G2 at {a} below {lower_g2:.2}"));
            }
        }
        if violation.is_none() && codeg_cap.is_finite() {
            let mut codeg: BTreeMap<(u32, u32), usize> = BTreeMap::new();
            let all_edges = kept_g1
                .iter()
                .map(|&i| &g1.edges[i])
                .chain(kept_g2.iter().map(|&i| &g2.edges[i]));
            'outer: for e in all_edges {
                for i in 0..e.len() {
                    for j in (i + 1)..e.len() {
                        let c = codeg.entry((e[i], e[j])).or_insert(0);
                        *c += 1;
                        if *c as f64 > codeg_cap {
                            violation =
                                Some(format!("codegree of ({}, {}) exceeds {codeg_cap:.2}", e[i], e[j]));
                            break 'outer;
                        }
                    }
                }
            }
        }
        if let Some(why) = violation {
            last_violation = why;
            resamples += 1;
            continue;
        }

        let sub_g1 = Hypergraph::new(
            g1.n,
            kept_g1.iter().map(|&i| g1.edges[i].clone()).collect(),
        )?;
        let sub_g2 = BipartiteHypergraph::new(
            g2.n,
            g2.part_a.clone(),
            g2.part_b.clone(),
            kept_g2.iter().map(|&i| g2.edges[i].clone()).collect(),
        )?;
        let run = nibble_with_reserves(
            &sub_g1,
            &sub_g2,
            params,
            derive_seed(seed, "nibble-run", attempt as u64),
        )?;
        // map matched edges back to original indices; the selection must be
        // a subset of the sparsified hypergraph
        let matched_original: Vec<EdgeSource> = run
            .matching
            .edges
            .iter()
            .map(|e| match e.source {
                EdgeSource::Main(i) => {
                    let orig = kept_g1[i];
                    assert_eq!(g1.edges[orig], e.vertices, "matched edge not in sparsified G1");
                    EdgeSource::Main(orig)
                }
                EdgeSource::Reserve(i) => {
                    let orig = kept_g2[i];
                    assert_eq!(g2.edges[orig], e.vertices, "matched edge not in sparsified G2");
                    EdgeSource::Reserve(orig)
                }
            })
            .collect();
        return Ok(SpreadNibbleRun {
            run,
            kept_g1,
            kept_g2,
            resamples,
            rate_used: rate,
            rate_formula,
            matched_original,
        });
    }
    Err(Error::RetryExhausted(format!(
        "sparsification violated a bad event {resamples} times in a row; last: {last_violation}"
    )))
}
