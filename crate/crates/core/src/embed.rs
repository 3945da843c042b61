//! Randomized edge-disjoint embedding of rooted partial cliques by
//! resampling.
//!
//! Each root hyperedge e gets a partial K_{q+b} rooted at V(e) (all pairs
//! present except inside the root) drawn uniformly from the host, together
//! with a slot i_e drawn from [D]. Two kinds of bad event are forbidden: two
//! extensions sharing an off-root vertex with equal slots, and two partial
//! cliques sharing an edge. While any bad event holds, the lowest-indexed
//! violated event has its variables redrawn; on termination the outputs are
//! pairwise edge-disjoint with bounded union degree, and both postconditions
//! are asserted.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Clique, Graph};
use crate::seed::derive_seed;
use crate::stats::wilson_interval;

/// A partial K_{q+b} rooted at `root`: vertex set `root ∪ extension`, edges
/// all pairs except pairs inside the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialClique {
    pub root: Clique,
    /// sorted, disjoint from the root
    pub extension: Vec<u32>,
}

impl PartialClique {
    pub fn new(root: Clique, mut extension: Vec<u32>) -> Result<Self> {
        extension.sort_unstable();
        extension.dedup();
        if extension.iter().any(|v| root.contains(*v)) {
            return Err(Error::InvalidParameter(
                "extension vertex inside the root".into(),
            ));
        }
        Ok(PartialClique { root, extension })
    }

    pub fn vertices(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .root
            .vertices()
            .iter()
            .copied()
            .chain(self.extension.iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    /// All pairs on the vertex set minus pairs inside the root.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let verts = self.vertices();
        let mut out = Vec::new();
        for i in 0..verts.len() {
            for j in (i + 1)..verts.len() {
                let (u, v) = (verts[i], verts[j]);
                if self.root.contains(u) && self.root.contains(v) {
                    continue;
                }
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree_of(&self, v: u32) -> usize {
        if self.root.contains(v) {
            self.extension.len()
        } else if self.extension.binary_search(&v).is_ok() {
            self.root.q() + self.extension.len() - 1
        } else {
            0
        }
    }
}

/// An embedding instance: host graph, root hyperedges, extension size `b`,
/// degree constant `C`, and the derived slot count `D`.
#[derive(Clone, Debug)]
pub struct EmbeddingProblem {
    pub host: Graph,
    pub roots: Vec<Clique>,
    pub b: usize,
    pub c: f64,
    pub d_slots: usize,
    pub max_root_degree: usize,
}

impl EmbeddingProblem {
    pub fn new(host: Graph, roots: Vec<Clique>, b: usize, c: f64) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidParameter("extension size b must be >= 1".into()));
        }
        if c <= 0.0 {
            return Err(Error::InvalidParameter("degree constant C must be positive".into()));
        }
        let q = match roots.first() {
            Some(r) => r.q(),
            None => 0,
        };
        let mut sorted = roots.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != roots.len() {
            return Err(Error::InvalidParameter("duplicate root hyperedges".into()));
        }
        let mut degree = vec![0usize; host.n()];
        for r in &roots {
            if r.q() != q {
                return Err(Error::InvalidParameter("roots must be uniform".into()));
            }
            for &v in r.vertices() {
                if v as usize >= host.n() {
                    return Err(Error::InvalidParameter(format!(
                        "root vertex {v} outside the host"
                    )));
                }
                degree[v as usize] += 1;
            }
        }
        let max_root_degree = degree.iter().copied().max().unwrap_or(0);
        if max_root_degree as f64 > host.n() as f64 / c {
            return Err(Error::Precondition(format!(
                "Δ1(roots) = {max_root_degree} exceeds n/C = {:.3}",
                host.n() as f64 / c
            )));
        }
        // feasibility: every root needs at least q + b common neighbors
        for r in &roots {
            let common = host.common_neighbors(r.vertices()).len();
            if common < q + b {
                return Err(Error::Precondition(format!(
                    "root {r:?} has only {common} common neighbors, need {}",
                    q + b
                )));
            }
        }
        let d_slots =
            ((c * max_root_degree as f64 / (2.0 * (q + b) as f64)).floor() as usize).max(1);
        Ok(EmbeddingProblem { host, roots, b, c, d_slots, max_root_degree })
    }

    pub fn q(&self) -> usize {
        self.roots.first().map(|r| r.q()).unwrap_or(0)
    }

    /// Degree bound the outputs must satisfy: C · Δ1(roots).
    pub fn degree_bound(&self) -> f64 {
        self.c * self.max_root_degree as f64
    }
}

#[derive(Clone, Debug)]
pub struct Embedding {
    /// (root, its partial clique, its slot), aligned with the problem's roots
    pub assignments: Vec<(Clique, PartialClique, usize)>,
    pub resamples: u64,
    pub max_degree: usize,
}

impl Embedding {
    pub fn partial_for(&self, root: &Clique) -> Option<&PartialClique> {
        self.assignments
            .iter()
            .find(|(r, _, _)| r == root)
            .map(|(_, t, _)| t)
    }
}

/// All valid extensions of a root: b-subsets of the common neighborhood that
/// induce cliques in the host. Exponential; intended for tiny test instances.
pub fn enumerate_extensions(host: &Graph, root: &Clique, b: usize) -> Vec<Vec<u32>> {
    let cands = host.common_neighbors(root.vertices());
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn grow(
        host: &Graph,
        cands: &[u32],
        b: usize,
        stack: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if stack.len() == b {
            out.push(stack.clone());
            return;
        }
        for (i, &w) in cands.iter().enumerate() {
            if cands.len() - i < b - stack.len() {
                break;
            }
            stack.push(w);
            let next: Vec<u32> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&z| host.has_edge(z, w))
                .collect();
            grow(host, &next, b, stack, out);
            stack.pop();
        }
    }
    grow(host, &cands, b, &mut stack, &mut out);
    out
}

fn draw_extension(
    host: &Graph,
    root: &Clique,
    b: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<u32>> {
    let cands = host.common_neighbors(root.vertices());
    // rejection sampling keeps the draw uniform over valid extensions
    for _ in 0..10_000 {
        let idx = rand::seq::index::sample(rng, cands.len(), b);
        let mut pick: Vec<u32> = idx.iter().map(|i| cands[i]).collect();
        pick.sort_unstable();
        let clique = (0..pick.len())
            .all(|i| (i + 1..pick.len()).all(|j| host.has_edge(pick[i], pick[j])));
        if clique {
            return Ok(pick);
        }
    }
    Err(Error::NonTermination {
        cap: 10_000,
        detail: format!("no clique extension found for root {root:?}"),
    })
}

/// First violated bad event in the fixed scan order: pairs (e1 < e2)
/// lexicographically, the vertex/slot collision checked before the edge
/// collision within each pair.
fn first_violation(assignments: &[(Clique, PartialClique, usize)]) -> Option<(usize, usize)> {
    for i in 0..assignments.len() {
        for j in (i + 1)..assignments.len() {
            let (_, ti, si) = &assignments[i];
            let (_, tj, sj) = &assignments[j];
            if si == sj
                && ti
                    .extension
                    .iter()
                    .any(|v| tj.extension.binary_search(v).is_ok())
            {
                return Some((i, j));
            }
            let ei = ti.edges();
            let ej = tj.edges();
            if ei.iter().any(|e| ej.contains(e)) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Draws one partial clique and slot per root, then resamples violated bad
/// events until none hold. Both postconditions (pairwise edge-disjointness
/// and the union degree bound) are checked on the output.
pub fn sample_embedding(
    problem: &EmbeddingProblem,
    seed: u64,
    resample_cap: u64,
) -> Result<Embedding> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignments: Vec<(Clique, PartialClique, usize)> = Vec::new();
    for r in &problem.roots {
        let ext = draw_extension(&problem.host, r, problem.b, &mut rng)?;
        let slot = rng.gen_range(0..problem.d_slots);
        assignments.push((r.clone(), PartialClique::new(r.clone(), ext)?, slot));
    }
    let mut resamples = 0;
    while let Some((i, j)) = first_violation(&assignments) {
        resamples += 1;
        if resamples > resample_cap {
            return Err(Error::NonTermination {
                cap: resample_cap,
                detail: format!(
                    "bad event on roots {:?} and {:?} still violated",
                    assignments[i].0, assignments[j].0
                ),
            });
        }
        for k in [i, j] {
            let root = assignments[k].0.clone();
            let ext = draw_extension(&problem.host, &root, problem.b, &mut rng)?;
            let slot = rng.gen_range(0..problem.d_slots);
            assignments[k] = (root.clone(), PartialClique::new(root, ext)?, slot);
        }
    }
    // hard postconditions
    let mut degree = vec![0usize; problem.host.n()];
    for (_, t, _) in &assignments {
        for v in t.vertices() {
            degree[v as usize] += t.degree_of(v);
        }
    }
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    if !problem.roots.is_empty() && max_degree as f64 > problem.degree_bound() + 1e-9 {
        return Err(Error::Postcondition(format!(
            "Δ(union) = {max_degree} exceeds C·Δ1 = {}",
            problem.degree_bound()
        )));
    }
    for i in 0..assignments.len() {
        for j in (i + 1)..assignments.len() {
            let ei = assignments[i].1.edges();
            if assignments[j].1.edges().iter().any(|e| ei.contains(e)) {
                return Err(Error::Postcondition(
                    "partial cliques share an edge after resampling".into(),
                ));
            }
        }
    }
    Ok(Embedding { assignments, resamples, max_degree })
}

/// Monte-Carlo estimate of P(S_e ⊆ V(T_e)\V(e) for all e) with a Wilson 95%
/// interval, compared against the ((3b)^b / n)^Σ|S_e| per-vertex bound.
#[derive(Clone, Debug)]
pub struct SpreadEstimate {
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub ci: (f64, f64),
    pub bound: f64,
    /// true when the probability is exactly zero by inspection
    pub exact_zero: bool,
}

pub fn embedding_spread_report(
    problem: &EmbeddingProblem,
    targets: &[(Clique, Vec<u32>)],
    trials: u64,
    seed: u64,
    resample_cap: u64,
) -> Result<SpreadEstimate> {
    for (root, _) in targets {
        if !problem.roots.contains(root) {
            return Err(Error::InvalidParameter(format!(
                "target root {root:?} is not a root of the problem"
            )));
        }
    }
    let total_size: usize = targets.iter().map(|(_, s)| s.len()).sum();
    let bound = ((3 * problem.b) as f64).powi(problem.b as i32) / problem.host.n() as f64;
    let bound = bound.powi(total_size as i32);
    // zero-probability cases need no sampling
    let impossible = targets
        .iter()
        .any(|(root, s)| s.len() > problem.b || s.iter().any(|v| root.contains(*v)));
    if impossible {
        return Ok(SpreadEstimate {
            trials: 0,
            hits: 0,
            estimate: 0.0,
            ci: (0.0, 0.0),
            bound,
            exact_zero: true,
        });
    }
    let mut hits = 0;
    for t in 0..trials {
        let emb = sample_embedding(problem, derive_seed(seed, "spread-trial", t), resample_cap)?;
        let hit = targets.iter().all(|(root, s)| {
            let pc = emb.partial_for(root).expect("root present");
            s.iter().all(|v| pc.extension.binary_search(v).is_ok())
        });
        if hit {
            hits += 1;
        }
    }
    let estimate = if trials == 0 { 0.0 } else { hits as f64 / trials as f64 };
    Ok(SpreadEstimate {
        trials,
        hits,
        estimate,
        ci: wilson_interval(hits, trials),
        bound,
        exact_zero: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn clique(v: &[u32]) -> Clique {
        Clique::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_root_trivial() {
        let host = Graph::complete(20);
        let problem = EmbeddingProblem::new(host, vec![clique(&[0, 1, 2])], 3, 10.0).unwrap();
        let emb = sample_embedding(&problem, 7, 1000).unwrap();
        assert_eq!(emb.assignments.len(), 1);
        assert_eq!(emb.resamples, 0);
        let t = &emb.assignments[0].1;
        assert_eq!(t.extension.len(), 3);
        assert!(t.extension.iter().all(|&v| v >= 3));
    }

    #[test]
    fn two_roots_postconditions_hold() {
        let host = Graph::complete(30);
        let roots = vec![clique(&[0, 1, 2]), clique(&[3, 4, 5])];
        let problem = EmbeddingProblem::new(host, roots, 3, 10.0).unwrap();
        for s in 0..300u64 {
            let emb = sample_embedding(&problem, s, 10_000).unwrap();
            assert!(emb.max_degree as f64 <= problem.degree_bound());
            let e1: BTreeSet<(u32, u32)> = emb.assignments[0].1.edges().into_iter().collect();
            let e2: BTreeSet<(u32, u32)> = emb.assignments[1].1.edges().into_iter().collect();
            assert!(e1.is_disjoint(&e2), "seed {s}");
        }
    }

    #[test]
    fn dense_roots_violate_precondition() {
        let host = Graph::complete(12);
        // four roots through vertex 0: Δ1 = 4 > 12 / 10
        let roots = vec![
            clique(&[0, 1, 2]),
            clique(&[0, 3, 4]),
            clique(&[0, 5, 6]),
            clique(&[0, 7, 8]),
        ];
        assert!(matches!(
            EmbeddingProblem::new(host, roots, 3, 10.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn partial_clique_shape() {
        let pc = PartialClique::new(clique(&[0, 1, 2]), vec![5, 7]).unwrap();
        let edges = pc.edges();
        // all pairs on 5 vertices minus the 3 root pairs
        assert_eq!(edges.len(), 10 - 3);
        assert!(!edges.contains(&(0, 1)));
        assert!(edges.contains(&(0, 5)));
        assert!(edges.contains(&(5, 7)));
        assert_eq!(pc.degree_of(0), 2);
        assert_eq!(pc.degree_of(5), 4);
        assert!(PartialClique::new(clique(&[0, 1, 2]), vec![1]).is_err());
    }

    #[test]
    fn spread_report_exact_zeros() {
        let host = Graph::complete(20);
        let root = clique(&[0, 1, 2]);
        let problem = EmbeddingProblem::new(host, vec![root.clone()], 3, 10.0).unwrap();
        // target inside the root
        let rep =
            embedding_spread_report(&problem, &[(root.clone(), vec![1])], 100, 1, 1000).unwrap();
        assert!(rep.exact_zero);
        assert_eq!(rep.estimate, 0.0);
        // target larger than b
        let rep =
            embedding_spread_report(&problem, &[(root, vec![4, 5, 6, 7])], 100, 1, 1000).unwrap();
        assert!(rep.exact_zero);
    }

    #[test]
    fn single_vertex_target_matches_uniform_rate() {
        // one root in K_20 with b = 1: a fixed target vertex is chosen with
        // probability exactly 1/17
        let host = Graph::complete(20);
        let root = clique(&[0, 1, 2]);
        let problem = EmbeddingProblem::new(host, vec![root.clone()], 1, 10.0).unwrap();
        assert_eq!(enumerate_extensions(&problem.host, &root, 1).len(), 17);
        let rep = embedding_spread_report(&problem, &[(root, vec![10])], 4000, 3, 1000).unwrap();
        let truth = 1.0 / 17.0;
        assert!(rep.ci.0 <= truth && truth <= rep.ci.1, "{rep:?}");
        assert!(rep.bound >= truth);
        assert!((rep.bound - 3.0 / 20.0).abs() < 1e-12);
    }

    #[test]
    fn resampler_support_matches_rejection_sampling() {
        // two disjoint root triangles in K_8 with b = 1 and one slot: valid
        // outcomes are pairs (w1, w2) with w1 != w2, excluding pairs where
        // both extensions land inside the opposite root (an edge collision)
        let host = Graph::complete(8);
        let r1 = clique(&[0, 1, 2]);
        let r2 = clique(&[3, 4, 5]);
        let problem = EmbeddingProblem::new(host, vec![r1, r2], 1, 8.0).unwrap();
        assert_eq!(problem.d_slots, 1);
        let mut valid: BTreeSet<(u32, u32)> = BTreeSet::new();
        for w1 in [3u32, 4, 5, 6, 7] {
            for w2 in [0u32, 1, 2, 6, 7] {
                let j1 = w1 == w2;
                let j2 = (3..=5).contains(&w1) && (0..=2).contains(&w2);
                if !j1 && !j2 {
                    valid.insert((w1, w2));
                }
            }
        }
        assert_eq!(valid.len(), 14);
        let mut seen: BTreeSet<(u32, u32)> = BTreeSet::new();
        for s in 0..3000u64 {
            let emb = sample_embedding(&problem, s, 10_000).unwrap();
            let w1 = emb.assignments[0].1.extension[0];
            let w2 = emb.assignments[1].1.extension[0];
            assert!(valid.contains(&(w1, w2)), "invalid outcome ({w1},{w2})");
            seen.insert((w1, w2));
        }
        assert_eq!(seen, valid, "resampler missed some valid outcomes");
    }
}
