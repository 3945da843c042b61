//! Exact K_q-decomposition search over a restricted candidate set.
//!
//! This is a plain Algorithm-X style exact-cover search (array bookkeeping
//! rather than dancing links; instances here are tiny). Universe elements are
//! the host's edges, options are candidate cliques. Branching always picks
//! the uncovered edge with the fewest remaining candidates, ties broken by
//! smallest edge id, which makes every search deterministic. An optional seed
//! permutes candidate order so "found within budget" is a meaningful
//! Monte-Carlo event in threshold experiments.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{is_kq_divisible, Clique, Graph};

#[derive(Clone, Debug)]
pub struct Candidate {
    pub clique: Clique,
    /// Universe element ids (edge ids) covered by this clique.
    elements: Vec<u32>,
}

/// An exact-cover instance: cover every edge of the host exactly once using
/// cliques drawn from `candidates`.
#[derive(Clone, Debug)]
pub struct CoverInstance {
    host: Graph,
    q: usize,
    universe: Vec<(u32, u32)>,
    candidates: Vec<Candidate>,
}

impl CoverInstance {
    /// Instance whose candidates are all `q`-cliques of the host.
    pub fn from_host(host: &Graph, q: usize) -> Result<Self> {
        let cliques = crate::graph::list_cliques(host, q, crate::graph::DEFAULT_CLIQUE_CAP)?;
        Self::with_candidates(host, q, cliques)
    }

    /// Instance with an explicit candidate set; every candidate must be a
    /// `q`-clique of the host.
    pub fn with_candidates(host: &Graph, q: usize, mut cliques: Vec<Clique>) -> Result<Self> {
        if q < 3 {
            return Err(Error::InvalidParameter(format!("q must be >= 3, got {q}")));
        }
        cliques.sort();
        cliques.dedup();
        let universe = host.edges();
        let edge_id = |u: u32, v: u32| -> Result<u32> {
            let key = if u < v { (u, v) } else { (v, u) };
            universe
                .binary_search(&key)
                .map(|i| i as u32)
                .map_err(|_| Error::InvalidParameter(format!("edge ({u},{v}) not in host")))
        };
        let mut candidates = Vec::with_capacity(cliques.len());
        for c in cliques {
            if c.q() != q {
                return Err(Error::InvalidParameter(format!(
                    "candidate {c:?} has {} vertices, expected {q}",
                    c.q()
                )));
            }
            if !c.is_clique_of(host) {
                return Err(Error::InvalidParameter(format!(
                    "candidate {c:?} is not a clique of the host"
                )));
            }
            let mut elements: Vec<u32> = c
                .edges()
                .iter()
                .map(|&(u, v)| edge_id(u, v))
                .collect::<Result<_>>()?;
            elements.sort_unstable();
            candidates.push(Candidate { clique: c, elements });
        }
        Ok(CoverInstance { host: host.clone(), q, universe, candidates })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn universe_size(&self) -> usize {
        self.universe.len()
    }

    pub fn candidates(&self) -> impl Iterator<Item = &Clique> {
        self.candidates.iter().map(|c| &c.clique)
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }
}

#[derive(Clone, Debug)]
pub enum SolveStatus {
    Found(Vec<Clique>),
    Infeasible,
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub nodes: u64,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug)]
pub struct EnumerationOutcome {
    pub decompositions: Vec<Vec<Clique>>,
    pub truncated: bool,
    pub nodes: u64,
}

struct Searcher<'a> {
    inst: &'a CoverInstance,
    /// candidate visit order per element
    elem_cands: Vec<Vec<u32>>,
    covered: Vec<bool>,
    uncovered: usize,
    alive: Vec<bool>,
    remaining: Vec<u32>,
    chosen: Vec<u32>,
    nodes: u64,
    budget: Option<u64>,
    aborted: bool,
}

enum Walk {
    Continue,
    StopAll,
}

impl<'a> Searcher<'a> {
    fn new(inst: &'a CoverInstance, seed: Option<u64>) -> Self {
        let m = inst.universe.len();
        let k = inst.candidates.len();
        let mut order: Vec<u32> = (0..k as u32).collect();
        if let Some(s) = seed {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            order.shuffle(&mut rng);
        }
        let mut elem_cands: Vec<Vec<u32>> = vec![Vec::new(); m];
        for &ci in &order {
            for &el in &inst.candidates[ci as usize].elements {
                elem_cands[el as usize].push(ci);
            }
        }
        let remaining: Vec<u32> = elem_cands.iter().map(|v| v.len() as u32).collect();
        Searcher {
            inst,
            elem_cands,
            covered: vec![false; m],
            uncovered: m,
            alive: vec![true; k],
            remaining,
            chosen: Vec::new(),
            nodes: 0,
            budget: None,
            aborted: false,
        }
    }

    /// Forces a candidate into the partial solution. Returns the undo trail,
    /// or None if it conflicts with current coverage.
    fn place(&mut self, ci: u32) -> Option<(Vec<u32>, Vec<u32>)> {
        if !self.alive[ci as usize] {
            return None;
        }
        let elements = self.inst.candidates[ci as usize].elements.clone();
        if elements.iter().any(|&el| self.covered[el as usize]) {
            return None;
        }
        let mut covered_trail = Vec::new();
        let mut killed_trail = Vec::new();
        for &el in &elements {
            self.covered[el as usize] = true;
            self.uncovered -= 1;
            covered_trail.push(el);
            // deactivate every candidate that also uses this element
            let cands = std::mem::take(&mut self.elem_cands[el as usize]);
            for &k in &cands {
                if self.alive[k as usize] {
                    self.alive[k as usize] = false;
                    killed_trail.push(k);
                    for &el2 in &self.inst.candidates[k as usize].elements {
                        self.remaining[el2 as usize] -= 1;
                    }
                }
            }
            self.elem_cands[el as usize] = cands;
        }
        self.chosen.push(ci);
        Some((covered_trail, killed_trail))
    }

    fn unplace(&mut self, trail: (Vec<u32>, Vec<u32>)) {
        let (covered_trail, killed_trail) = trail;
        self.chosen.pop();
        for &k in killed_trail.iter().rev() {
            self.alive[k as usize] = true;
            for &el2 in &self.inst.candidates[k as usize].elements {
                self.remaining[el2 as usize] += 1;
            }
        }
        for &el in covered_trail.iter().rev() {
            self.covered[el as usize] = false;
            self.uncovered += 1;
        }
    }

    /// Uncovered element with the fewest remaining candidates; ties to the
    /// smallest element id.
    fn pick_element(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        for el in 0..self.covered.len() as u32 {
            if self.covered[el as usize] {
                continue;
            }
            let r = self.remaining[el as usize];
            match best {
                None => best = Some((r, el)),
                Some((br, _)) if r < br => best = Some((r, el)),
                _ => {}
            }
            if r == 0 {
                return Some(el);
            }
        }
        best.map(|(_, el)| el)
    }

    fn walk<F: FnMut(&[u32]) -> Walk>(&mut self, emit: &mut F) -> Walk {
        if self.uncovered == 0 {
            return emit(&self.chosen);
        }
        let el = match self.pick_element() {
            Some(el) => el,
            None => return Walk::Continue,
        };
        if self.remaining[el as usize] == 0 {
            return Walk::Continue;
        }
        let cands = self.elem_cands[el as usize].clone();
        for ci in cands {
            if !self.alive[ci as usize] {
                continue;
            }
            self.nodes += 1;
            if let Some(b) = self.budget {
                if self.nodes > b {
                    self.aborted = true;
                    return Walk::StopAll;
                }
            }
            if let Some(trail) = self.place(ci) {
                let flow = self.walk(emit);
                self.unplace(trail);
                if let Walk::StopAll = flow {
                    return Walk::StopAll;
                }
            }
        }
        Walk::Continue
    }
}

/// Searches for a sub-family of candidates exactly covering the host's edges.
/// `Infeasible` is returned only after exhaustive search; `BudgetExhausted`
/// once more than `budget` nodes were expanded.
pub fn find_decomposition(
    inst: &CoverInstance,
    budget: Option<u64>,
    seed: Option<u64>,
) -> SolveOutcome {
    let start = Instant::now();
    // cheap infeasibility certificate before any search
    if !is_kq_divisible(&inst.host, inst.q).unwrap_or(false) {
        return SolveOutcome {
            status: SolveStatus::Infeasible,
            nodes: 0,
            elapsed_ms: start.elapsed().as_millis(),
        };
    }
    let mut s = Searcher::new(inst, seed);
    s.budget = budget;
    let mut found: Option<Vec<Clique>> = None;
    s.walk(&mut |chosen| {
        let mut sol: Vec<Clique> = chosen
            .iter()
            .map(|&ci| inst.candidates[ci as usize].clique.clone())
            .collect();
        sol.sort();
        found = Some(sol);
        Walk::StopAll
    });
    let status = match found {
        Some(sol) => SolveStatus::Found(sol),
        None if s.aborted => SolveStatus::BudgetExhausted,
        None => SolveStatus::Infeasible,
    };
    SolveOutcome { status, nodes: s.nodes, elapsed_ms: start.elapsed().as_millis() }
}

/// Enumerates all exact covers, deduplicated as sets, up to `limit`.
/// The exact-cover search visits each cover exactly once.
pub fn enumerate_decompositions(
    inst: &CoverInstance,
    limit: Option<usize>,
) -> EnumerationOutcome {
    if !is_kq_divisible(&inst.host, inst.q).unwrap_or(false) {
        return EnumerationOutcome { decompositions: Vec::new(), truncated: false, nodes: 0 };
    }
    let mut s = Searcher::new(inst, None);
    let mut out: Vec<Vec<Clique>> = Vec::new();
    let mut truncated = false;
    let cap = limit.unwrap_or(usize::MAX);
    s.walk(&mut |chosen| {
        let mut sol: Vec<Clique> = chosen
            .iter()
            .map(|&ci| inst.candidates[ci as usize].clique.clone())
            .collect();
        sol.sort();
        out.push(sol);
        if out.len() >= cap {
            truncated = true;
            Walk::StopAll
        } else {
            Walk::Continue
        }
    });
    out.sort();
    EnumerationOutcome { decompositions: out, truncated, nodes: s.nodes }
}

/// Number of full decompositions containing the given partial packing.
/// A partial that is not a packing within the candidate set extends to
/// nothing, so the count is 0.
pub fn count_extensions(inst: &CoverInstance, partial: &[Clique]) -> u64 {
    if !is_kq_divisible(&inst.host, inst.q).unwrap_or(false) {
        return 0;
    }
    let mut s = Searcher::new(inst, None);
    let mut trails = Vec::new();
    let mut by_clique: Vec<&Clique> = partial.iter().collect();
    by_clique.sort();
    by_clique.dedup();
    if by_clique.len() != partial.len() {
        return 0; // repeated clique: not a packing
    }
    for c in by_clique {
        let ci = match inst
            .candidates
            .iter()
            .position(|cand| &cand.clique == c)
        {
            Some(i) => i as u32,
            None => return 0, // not within the candidate set
        };
        match s.place(ci) {
            Some(t) => trails.push(t),
            None => return 0, // overlaps an earlier partial clique
        }
    }
    let mut count: u64 = 0;
    s.walk(&mut |_| {
        count += 1;
        Walk::Continue
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_decomposition, list_cliques, DEFAULT_CLIQUE_CAP};

    #[test]
    fn k7_has_an_sts() {
        let k7 = Graph::complete(7);
        let inst = CoverInstance::from_host(&k7, 3).unwrap();
        let out = find_decomposition(&inst, None, None);
        match out.status {
            SolveStatus::Found(sol) => {
                assert_eq!(sol.len(), 7);
                assert!(verify_decomposition(&k7, &sol, 3).ok);
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn k6_is_infeasible() {
        let inst = CoverInstance::from_host(&Graph::complete(6), 3).unwrap();
        assert!(matches!(
            find_decomposition(&inst, None, None).status,
            SolveStatus::Infeasible
        ));
    }

    #[test]
    fn thirty_sts7() {
        let inst = CoverInstance::from_host(&Graph::complete(7), 3).unwrap();
        let out = enumerate_decompositions(&inst, None);
        assert_eq!(out.decompositions.len(), 30);
        assert!(!out.truncated);
        // pairwise distinct as sets
        let mut sorted = out.decompositions.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 30);
        for d in &out.decompositions {
            assert!(verify_decomposition(&Graph::complete(7), d, 3).ok);
        }
    }

    #[test]
    fn k7_minus_any_triple_still_solvable() {
        let k7 = Graph::complete(7);
        let all = list_cliques(&k7, 3, DEFAULT_CLIQUE_CAP).unwrap();
        // each triple lies in 6 of the 30 systems, so 24 remain after
        // deleting one candidate; spot-check a few removals exhaustively
        for drop in [0usize, 7, 17, 34] {
            let cands: Vec<Clique> = all
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, c)| c.clone())
                .collect();
            let inst = CoverInstance::with_candidates(&k7, 3, cands).unwrap();
            let out = enumerate_decompositions(&inst, None);
            assert_eq!(out.decompositions.len(), 24);
        }
    }

    #[test]
    fn extension_counts() {
        let k7 = Graph::complete(7);
        let inst = CoverInstance::from_host(&k7, 3).unwrap();
        let fixed = Clique::new(vec![0, 1, 2]).unwrap();
        assert_eq!(count_extensions(&inst, std::slice::from_ref(&fixed)), 6);

        // a full system extends only to itself
        let full = match find_decomposition(&inst, None, None).status {
            SolveStatus::Found(sol) => sol,
            _ => unreachable!(),
        };
        assert_eq!(count_extensions(&inst, &full), 1);

        // two triples sharing an edge are not a packing
        let c1 = Clique::new(vec![0, 1, 2]).unwrap();
        let c2 = Clique::new(vec![0, 1, 3]).unwrap();
        assert_eq!(count_extensions(&inst, &[c1, c2]), 0);
    }

    #[test]
    fn determinism_under_seed() {
        let inst = CoverInstance::from_host(&Graph::complete(9), 3).unwrap();
        let a = find_decomposition(&inst, None, Some(11));
        let b = find_decomposition(&inst, None, Some(11));
        match (&a.status, &b.status) {
            (SolveStatus::Found(x), SolveStatus::Found(y)) => assert_eq!(x, y),
            _ => panic!("expected Found twice"),
        }
        assert_eq!(a.nodes, b.nodes);
    }

    #[test]
    fn budget_exhaustion_reported() {
        let inst = CoverInstance::from_host(&Graph::complete(9), 3).unwrap();
        let out = find_decomposition(&inst, Some(3), None);
        assert!(matches!(out.status, SolveStatus::BudgetExhausted));
    }

    #[test]
    fn empty_host_has_empty_decomposition() {
        let inst = CoverInstance::from_host(&Graph::empty(4), 3).unwrap();
        match find_decomposition(&inst, None, None).status {
            SolveStatus::Found(sol) => assert!(sol.is_empty()),
            other => panic!("expected empty Found, got {other:?}"),
        }
    }
}
