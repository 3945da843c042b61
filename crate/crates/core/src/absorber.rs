//! Omni-absorbers as data with verification, a brute-force desk-scale
//! constructor, and the booster-replacement operation that swaps every
//! decomposition-family clique for a private rooted booster.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::booster::{Check, RootedBooster};
use crate::error::{Error, Result};
use crate::graph::{union_graph, verify_decomposition, Clique, Graph};
use crate::solver::{find_decomposition, CoverInstance, SolveStatus};

/// Cap on |E(X)| for divisible-subgraph enumeration (2^|E(X)| scan).
pub const DEFAULT_DIVISIBLE_CAP: usize = 20;

/// Default cap on |E(A)| in the brute-force search.
pub const DEFAULT_ABSORBER_EDGE_CAP: usize = 18;

/// Edge list of a divisible subgraph, paired with its decomposition.
pub type QmapEntry = (Vec<(u32, u32)>, Vec<Clique>);

/// An omni-absorber for a reserve graph X: for every K_q-divisible L ⊆ X the
/// stored subfamily `qmap[L]` is an exact K_q-decomposition of L ∪ A, and
/// every family clique uses at most one X-edge.
#[derive(Clone, Debug)]
pub struct OmniAbsorber {
    pub n: usize,
    pub q: usize,
    pub x: Graph,
    pub a: Graph,
    pub family: Vec<Clique>,
    /// decomposition function, keyed by the sorted edge list of L
    pub qmap: Vec<QmapEntry>,
}

impl OmniAbsorber {
    pub fn qmap_lookup(&self, l: &Graph) -> Option<&[Clique]> {
        let key = l.edges();
        self.qmap
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v.as_slice())
    }

    /// Largest number of family cliques through a single edge of X ∪ A.
    pub fn observed_refinement(&self) -> usize {
        let mut counts: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for c in &self.family {
            for e in c.edges() {
                *counts.entry(e).or_insert(0) += 1;
            }
        }
        counts.values().copied().max().unwrap_or(0)
    }
}

/// All edge-subsets of X forming K_q-divisible subgraphs (including the
/// empty graph), ordered by edge count then lexicographic edge list.
pub fn divisible_subgraphs(x: &Graph, q: usize, cap: usize) -> Result<Vec<Graph>> {
    if q < 3 {
        return Err(Error::InvalidParameter(format!("q must be >= 3, got {q}")));
    }
    let edges = x.edges();
    let m = edges.len();
    if m > cap {
        return Err(Error::Resource(format!(
            "divisible-subgraph enumeration over {m} edges exceeds cap {cap}"
        )));
    }
    let per_clique = q * (q - 1) / 2;
    let mut found: Vec<(usize, u64)> = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let count = mask.count_ones() as usize;
        if !count.is_multiple_of(per_clique) {
            continue;
        }
        let mut deg = vec![0u32; x.n()];
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            deg[edges[i].0 as usize] += 1;
            deg[edges[i].1 as usize] += 1;
            bits &= bits - 1;
        }
        if deg.iter().all(|&d| (d as usize).is_multiple_of(q - 1)) {
            found.push((count, mask));
        }
    }
    found.sort_unstable();
    found
        .into_iter()
        .map(|(_, mask)| {
            let sub: Vec<(u32, u32)> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            Graph::from_edges(x.n(), sub)
        })
        .collect()
}

/// Search knobs for [`brute_force_absorber`].
#[derive(Clone, Debug)]
pub struct AbsorberSearch {
    pub max_edges: usize,
    pub node_budget: Option<u64>,
    pub divisible_cap: usize,
}

impl Default for AbsorberSearch {
    fn default() -> Self {
        AbsorberSearch {
            max_edges: DEFAULT_ABSORBER_EDGE_CAP,
            node_budget: None,
            divisible_cap: DEFAULT_DIVISIBLE_CAP,
        }
    }
}

/// Candidate cliques for decomposing L ∪ A with at most one X-edge per
/// clique. Since E(A) ∩ E(X) = ∅, the X-edges inside L ∪ A are exactly E(L).
fn restricted_instance(l: &Graph, a: &Graph, q: usize) -> Result<CoverInstance> {
    let host = l.union(a)?;
    let all = crate::graph::list_cliques(&host, q, crate::graph::DEFAULT_CLIQUE_CAP)?;
    let cliques: Vec<Clique> = all
        .into_iter()
        .filter(|c| c.edges().iter().filter(|&&(u, v)| l.has_edge(u, v)).count() <= 1)
        .collect();
    CoverInstance::with_candidates(&host, q, cliques)
}

/// Finds an absorber A for X inside K_{host_n} by increasing-size search over
/// candidate edge sets in lexicographic order; the first candidate for which
/// every divisible L ⊆ X admits a restricted decomposition of L ∪ A wins.
/// Candidates failing cheap divisibility and local clique filters are pruned
/// before any solver call.
pub fn brute_force_absorber(
    x: &Graph,
    q: usize,
    host_n: usize,
    opts: &AbsorberSearch,
) -> Result<OmniAbsorber> {
    if x.n() > host_n {
        return Err(Error::InvalidParameter(format!(
            "reserve on {} vertices does not fit host K_{host_n}",
            x.n()
        )));
    }
    let x = x.padded(host_n)?;
    let divisible = divisible_subgraphs(&x, q, opts.divisible_cap)?;
    let host = Graph::complete(host_n);
    let pool: Vec<(u32, u32)> = host
        .edges()
        .into_iter()
        .filter(|&(u, v)| !x.has_edge(u, v))
        .collect();
    let per_clique = q * (q - 1) / 2;
    let mut nodes: u64 = 0;

    // deficiency lower bound: each edge raises two vertex degrees by one, so
    // at least ceil(sum of per-vertex deficits / 2) more edges are needed
    fn deficit(deg_mod: &[u32], modulus: u32) -> usize {
        let total: u32 = deg_mod
            .iter()
            .map(|&d| if d == 0 { 0 } else { modulus - d })
            .sum();
        total.div_ceil(2) as usize
    }

    struct Ctx<'a> {
        pool: &'a [(u32, u32)],
        host_n: usize,
        q: usize,
        x: &'a Graph,
        divisible: &'a [Graph],
        budget: Option<u64>,
    }

    fn dfs(
        ctx: &Ctx,
        k: usize,
        start: usize,
        chosen: &mut Vec<(u32, u32)>,
        deg_mod: &mut Vec<u32>,
        nodes: &mut u64,
    ) -> Result<Option<OmniAbsorber>> {
        *nodes += 1;
        if let Some(b) = ctx.budget {
            if *nodes > b {
                return Err(Error::Resource(format!(
                    "absorber search exceeded node budget {b}"
                )));
            }
        }
        let modulus = (ctx.q - 1) as u32;
        if chosen.len() == k {
            if deg_mod.iter().any(|&d| d != 0) {
                return Ok(None);
            }
            return check_candidate(ctx, chosen);
        }
        let remaining = k - chosen.len();
        if deficit(deg_mod, modulus) > remaining {
            return Ok(None);
        }
        for i in start..ctx.pool.len() {
            if ctx.pool.len() - i < remaining {
                break;
            }
            let (u, v) = ctx.pool[i];
            chosen.push((u, v));
            deg_mod[u as usize] = (deg_mod[u as usize] + 1) % modulus;
            deg_mod[v as usize] = (deg_mod[v as usize] + 1) % modulus;
            let hit = dfs(ctx, k, i + 1, chosen, deg_mod, nodes)?;
            deg_mod[u as usize] = (deg_mod[u as usize] + modulus - 1) % modulus;
            deg_mod[v as usize] = (deg_mod[v as usize] + modulus - 1) % modulus;
            chosen.pop();
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }

    fn check_candidate(ctx: &Ctx, edges: &[(u32, u32)]) -> Result<Option<OmniAbsorber>> {
        let a = Graph::from_edges(ctx.host_n, edges.iter().copied())?;
        // every A-edge must lie in some q-clique inside A, or Q(empty) fails
        for &(u, v) in edges {
            if !has_local_clique(&a, u, v, ctx.q) {
                return Ok(None);
            }
        }
        let mut qmap: Vec<QmapEntry> = Vec::new();
        for l in ctx.divisible {
            let inst = restricted_instance(l, &a, ctx.q)?;
            match find_decomposition(&inst, None, None).status {
                SolveStatus::Found(cliques) => qmap.push((l.edges(), cliques)),
                _ => return Ok(None),
            }
        }
        let mut family: Vec<Clique> = qmap.iter().flat_map(|(_, cs)| cs.iter().cloned()).collect();
        family.sort();
        family.dedup();
        Ok(Some(OmniAbsorber {
            n: ctx.host_n,
            q: ctx.q,
            x: ctx.x.clone(),
            a,
            family,
            qmap,
        }))
    }

    /// True iff edge (u,v) extends to a q-clique within `g`.
    fn has_local_clique(g: &Graph, u: u32, v: u32, q: usize) -> bool {
        fn grow(g: &Graph, base: &mut Vec<u32>, cands: &[u32], need: usize) -> bool {
            if need == 0 {
                return true;
            }
            for (i, &w) in cands.iter().enumerate() {
                if cands.len() - i < need {
                    return false;
                }
                base.push(w);
                let next: Vec<u32> = cands[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&z| g.has_edge(z, w))
                    .collect();
                if grow(g, base, &next, need - 1) {
                    return true;
                }
                base.pop();
            }
            false
        }
        let cands = g.common_neighbors(&[u, v]);
        grow(g, &mut vec![u, v], &cands, q - 2)
    }

    let ctx = Ctx {
        pool: &pool,
        host_n,
        q,
        x: &x,
        divisible: &divisible,
        budget: opts.node_budget,
    };
    for k in (0..=opts.max_edges).step_by(per_clique.max(1)) {
        let mut chosen = Vec::with_capacity(k);
        let mut deg_mod = vec![0u32; host_n];
        if let Some(found) = dfs(&ctx, k, 0, &mut chosen, &mut deg_mod, &mut nodes)? {
            return Ok(found);
        }
    }
    Err(Error::NotFound(format!(
        "no absorber within {} edges for the given reserve",
        opts.max_edges
    )))
}

/// Replaces every decomposition-family clique H by its private rooted
/// booster: A' = A ∪ ⋃B_H, the new family is the union of all booster
/// decompositions, and Q'(L) switches each booster on or off according to
/// whether H ∈ Q(L).
pub fn boost_absorber(base: &OmniAbsorber, boosters: &[RootedBooster]) -> Result<OmniAbsorber> {
    let mut by_root: BTreeMap<Clique, &RootedBooster> = BTreeMap::new();
    for b in boosters {
        if by_root.insert(b.root.clone(), b).is_some() {
            return Err(Error::Precondition(format!(
                "two boosters rooted at {:?}",
                b.root
            )));
        }
    }
    for h in &base.family {
        if !by_root.contains_key(h) {
            return Err(Error::Precondition(format!(
                "no booster rooted at family clique {h:?}"
            )));
        }
    }
    if by_root.len() != base.family.len() {
        let stray = by_root
            .keys()
            .find(|r| !base.family.contains(r))
            .expect("count mismatch implies a stray root");
        return Err(Error::Precondition(format!(
            "booster rooted at {stray:?} which is not a family clique"
        )));
    }
    let n = boosters
        .iter()
        .map(|b| b.graph.n())
        .chain(std::iter::once(base.n))
        .max()
        .unwrap_or(base.n);
    let base_x = base.x.padded(n)?;
    let base_a = base.a.padded(n)?;
    let xa = base_x.union(&base_a)?;
    // boosters must avoid X ∪ A and each other
    let mut acc = xa.clone();
    for b in boosters {
        let bg = b.graph.padded(n)?;
        if let Some((u, v)) = bg.first_shared_edge(&acc) {
            return Err(Error::Precondition(format!(
                "booster edge ({u},{v}) overlaps the base absorber or another booster"
            )));
        }
        acc = acc.union(&bg)?;
    }
    let a_boosted = acc.minus(&base_x)?;
    let mut family: Vec<Clique> = Vec::new();
    for b in boosters {
        family.extend(b.on_decomp.iter().cloned());
        family.extend(b.off_decomp.iter().cloned());
    }
    family.sort();
    family.dedup();
    let mut qmap = Vec::new();
    for (key, assigned) in &base.qmap {
        let mut cliques: Vec<Clique> = Vec::new();
        for h in &base.family {
            let booster = by_root[h];
            if assigned.contains(h) {
                cliques.extend(booster.on_decomp.iter().cloned());
            } else {
                cliques.extend(booster.off_decomp.iter().cloned());
            }
        }
        cliques.sort();
        // a root clique can never enter the new decomposition function: the
        // on-decomposition excludes its root by definition
        for h in &base.family {
            if cliques.binary_search(h).is_ok() {
                return Err(Error::Postcondition(format!(
                    "root clique {h:?} appeared in the boosted decomposition function"
                )));
            }
        }
        qmap.push((key.clone(), cliques));
    }
    Ok(OmniAbsorber {
        n,
        q: base.q,
        x: base_x,
        a: a_boosted,
        family,
        qmap,
    })
}

#[derive(Clone, Debug)]
pub struct AbsorberReport {
    pub checks: Vec<Check>,
    /// max number of family cliques through one edge of X ∪ A
    pub c_observed: usize,
}

impl AbsorberReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Exhaustively re-derives the divisible subgraphs of X and checks the full
/// omni-absorber property, the ≤1-X-edge condition, and X/A disjointness.
pub fn verify_omni_absorber(oa: &OmniAbsorber, divisible_cap: usize) -> Result<AbsorberReport> {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(Check { name: name.to_string(), pass, detail });
    };

    let disjoint = oa.x.edge_disjoint_with(&oa.a);
    push(
        "X and A edge-disjoint",
        disjoint,
        oa.x
            .first_shared_edge(&oa.a)
            .map(|e| format!("shared edge {e:?}"))
            .unwrap_or_default(),
    );

    let xa = oa.x.union(&oa.a)?;
    let mut family_ok = true;
    let mut family_detail = String::new();
    for c in &oa.family {
        if !c.is_clique_of(&xa) {
            family_ok = false;
            family_detail = format!("{c:?} is not a clique of X ∪ A");
            break;
        }
        let x_edges = c
            .edges()
            .iter()
            .filter(|&&(u, v)| oa.x.has_edge(u, v))
            .count();
        if x_edges > 1 {
            family_ok = false;
            family_detail = format!("{c:?} uses {x_edges} X-edges");
            break;
        }
    }
    push("family cliques in X ∪ A with ≤ 1 X-edge", family_ok, family_detail);

    let divisible = divisible_subgraphs(&oa.x, oa.q, divisible_cap)?;
    let mut keys: Vec<Vec<(u32, u32)>> = oa.qmap.iter().map(|(k, _)| k.clone()).collect();
    keys.sort();
    let mut want: Vec<Vec<(u32, u32)>> = divisible.iter().map(|l| l.edges()).collect();
    want.sort();
    push(
        "qmap keyed by exactly the divisible subgraphs of X",
        keys == want,
        format!("{} keys vs {} divisible subgraphs", keys.len(), want.len()),
    );

    for l in &divisible {
        let key = l.edges();
        let name = format!("Q(L) decomposes L ∪ A for |E(L)| = {}", key.len());
        match oa.qmap.iter().find(|(k, _)| *k == key) {
            None => push(&name, false, "no qmap entry".into()),
            Some((_, cliques)) => {
                let outside: Vec<&Clique> =
                    cliques.iter().filter(|c| !oa.family.contains(c)).collect();
                if !outside.is_empty() {
                    push(&name, false, format!("{:?} not in the family", outside[0]));
                    continue;
                }
                let target = l.padded(oa.n)?.union(&oa.a)?;
                let check = verify_decomposition(&target, cliques, oa.q);
                if check.ok {
                    push(&name, true, String::new());
                } else {
                    // list what remains uncovered when the packing is valid
                    let detail = match union_graph(oa.n, cliques) {
                        Ok(covered) => {
                            let missing = target.minus(&covered).map(|g| g.edges());
                            match missing {
                                Ok(edges) if !edges.is_empty() => {
                                    format!("uncovered edges: {edges:?}")
                                }
                                _ => check.reason.unwrap_or_default(),
                            }
                        }
                        Err(_) => check.reason.unwrap_or_default(),
                    };
                    push(&name, false, detail);
                }
            }
        }
    }

    Ok(AbsorberReport {
        checks,
        c_observed: oa.observed_refinement(),
    })
}

// ---- JSON format: q, n, X_edges, A_edges, family, qmap ----

#[derive(Serialize, Deserialize)]
struct QmapEntryJson {
    #[serde(rename = "L")]
    l: Vec<(u32, u32)>,
    cliques: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct AbsorberJson {
    q: usize,
    n: usize,
    #[serde(rename = "X_edges")]
    x_edges: Vec<(u32, u32)>,
    #[serde(rename = "A_edges")]
    a_edges: Vec<(u32, u32)>,
    family: Vec<Vec<u32>>,
    qmap: Vec<QmapEntryJson>,
}

impl OmniAbsorber {
    pub fn to_json(&self) -> String {
        let doc = AbsorberJson {
            q: self.q,
            n: self.n,
            x_edges: self.x.edges(),
            a_edges: self.a.edges(),
            family: self.family.iter().map(|c| c.vertices().to_vec()).collect(),
            qmap: self
                .qmap
                .iter()
                .map(|(l, cs)| QmapEntryJson {
                    l: l.clone(),
                    cliques: cs.iter().map(|c| c.vertices().to_vec()).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("absorber serialization")
    }

    pub fn from_json(text: &str) -> Result<OmniAbsorber> {
        let doc: AbsorberJson =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let parse =
            |vs: Vec<Vec<u32>>| -> Result<Vec<Clique>> { vs.into_iter().map(Clique::new).collect() };
        Ok(OmniAbsorber {
            q: doc.q,
            n: doc.n,
            x: Graph::from_edges(doc.n, doc.x_edges)?,
            a: Graph::from_edges(doc.n, doc.a_edges)?,
            family: parse(doc.family)?,
            qmap: doc
                .qmap
                .into_iter()
                .map(|e| Ok((e.l, parse(e.cliques)?)))
                .collect::<Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::booster::layer_boosters;

    fn triangle(n: usize) -> Graph {
        Graph::from_edges(n, [(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn divisible_subgraph_examples() {
        let t = triangle(3);
        let subs = divisible_subgraphs(&t, 3, DEFAULT_DIVISIBLE_CAP).unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[0].edge_count(), 0);
        assert_eq!(subs[1].edge_count(), 3);

        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let subs = divisible_subgraphs(&c4, 3, DEFAULT_DIVISIBLE_CAP).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].edge_count(), 0);

        // two triangles sharing one vertex: {}, T1, T2, T1 ∪ T2
        let bowtie =
            Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        let subs = divisible_subgraphs(&bowtie, 3, DEFAULT_DIVISIBLE_CAP).unwrap();
        assert_eq!(subs.len(), 4);
        let sizes: Vec<usize> = subs.iter().map(|g| g.edge_count()).collect();
        assert_eq!(sizes, vec![0, 3, 3, 6]);
    }

    #[test]
    fn divisible_cap_enforced() {
        let k7 = Graph::complete(7);
        assert!(matches!(
            divisible_subgraphs(&k7, 3, 20),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn empty_and_single_edge_reserves() {
        let empty = Graph::empty(4);
        let oa = brute_force_absorber(&empty, 3, 6, &AbsorberSearch::default()).unwrap();
        assert_eq!(oa.a.edge_count(), 0);
        assert_eq!(oa.qmap.len(), 1);
        assert!(verify_omni_absorber(&oa, DEFAULT_DIVISIBLE_CAP).unwrap().pass());

        let edge = Graph::from_edges(3, [(0, 1)]).unwrap();
        let oa = brute_force_absorber(&edge, 3, 6, &AbsorberSearch::default()).unwrap();
        assert_eq!(oa.a.edge_count(), 0);
        assert!(verify_omni_absorber(&oa, DEFAULT_DIVISIBLE_CAP).unwrap().pass());
    }

    #[test]
    fn triangle_reserve_absorber() {
        let x = triangle(3);
        let oa = brute_force_absorber(&x, 3, 9, &AbsorberSearch::default()).unwrap();
        assert!(oa.a.edge_count() <= 15, "got {} edges", oa.a.edge_count());
        assert_eq!(oa.qmap.len(), 2);
        let report = verify_omni_absorber(&oa, DEFAULT_DIVISIBLE_CAP).unwrap();
        assert!(report.pass(), "{:?}", report.checks);
        assert!(report.c_observed >= 1);
    }

    #[test]
    fn tampered_absorbers_fail() {
        let x = triangle(3);
        let oa = brute_force_absorber(&x, 3, 9, &AbsorberSearch::default()).unwrap();

        let mut dropped = oa.clone();
        let (_, cliques) = dropped
            .qmap
            .iter_mut()
            .find(|(k, _)| !k.is_empty())
            .unwrap();
        cliques.pop();
        let report = verify_omni_absorber(&dropped, DEFAULT_DIVISIBLE_CAP).unwrap();
        assert!(!report.pass());
        assert!(report
            .checks
            .iter()
            .any(|c| !c.pass && c.detail.contains("uncovered")));

        // a clique with two X-edges breaks the refinement-family condition
        let mut fat = oa.clone();
        fat.family.push(Clique::new(vec![0, 1, 2]).unwrap());
        let report = verify_omni_absorber(&fat, DEFAULT_DIVISIBLE_CAP).unwrap();
        assert!(report
            .checks
            .iter()
            .any(|c| c.name.contains("≤ 1 X-edge") && !c.pass));
    }

    /// Deterministically embeds one layered booster per family clique at
    /// disjoint fresh vertex blocks (no randomness needed at unit level).
    fn embed_boosters_disjointly(base: &OmniAbsorber) -> Vec<RootedBooster> {
        let template = layer_boosters(base.q).unwrap();
        let b = template.extension_size();
        let mut next = base.n as u32;
        let mut out = Vec::new();
        for h in &base.family {
            let root_old = template.root.vertices().to_vec();
            let host_root = h.vertices().to_vec();
            let mut ext_old: Vec<u32> = (0..template.graph.n() as u32)
                .filter(|v| !root_old.contains(v))
                .collect();
            ext_old.sort_unstable();
            let base_next = next;
            let map = move |v: u32| -> u32 {
                if let Some(i) = root_old.iter().position(|&r| r == v) {
                    host_root[i]
                } else {
                    let i = ext_old.iter().position(|&e| e == v).unwrap();
                    base_next + i as u32
                }
            };
            next += b as u32;
            out.push(template.relabel(&map, next as usize).unwrap());
        }
        let n = next as usize;
        out.into_iter()
            .map(|rb| rb.relabel(&|v| v, n).unwrap())
            .collect()
    }

    #[test]
    fn boosted_absorber_round_trip() {
        let x = triangle(3);
        let base = brute_force_absorber(&x, 3, 9, &AbsorberSearch::default()).unwrap();
        let boosters = embed_boosters_disjointly(&base);
        let boosted = boost_absorber(&base, &boosters).unwrap();
        let report = verify_omni_absorber(&boosted, DEFAULT_DIVISIBLE_CAP).unwrap();
        assert!(report.pass(), "{:?}", report.checks);
        // no root clique may appear in any boosted Q(L)
        for (_, cliques) in &boosted.qmap {
            for h in &base.family {
                assert!(!cliques.contains(h));
            }
        }
        // the decompositions for L = ∅ and L = X differ on every booster
        // attached to a clique of Q(∅) △ Q(X)
        let q_empty: &Vec<Clique> = &base.qmap.iter().find(|(k, _)| k.is_empty()).unwrap().1;
        let q_full: &Vec<Clique> = &base.qmap.iter().find(|(k, _)| !k.is_empty()).unwrap().1;
        let b_empty: &Vec<Clique> = &boosted.qmap.iter().find(|(k, _)| k.is_empty()).unwrap().1;
        let b_full: &Vec<Clique> = &boosted.qmap.iter().find(|(k, _)| !k.is_empty()).unwrap().1;
        for (h, booster) in base.family.iter().zip(boosters.iter()) {
            let flipped = q_empty.contains(h) != q_full.contains(h);
            if flipped {
                let on_in_empty = booster.on_decomp.iter().all(|c| b_empty.contains(c));
                let on_in_full = booster.on_decomp.iter().all(|c| b_full.contains(c));
                assert_ne!(on_in_empty, on_in_full, "booster at {h:?} did not switch");
            }
        }
    }

    #[test]
    fn boost_rejects_overlapping_boosters() {
        let x = triangle(3);
        let base = brute_force_absorber(&x, 3, 9, &AbsorberSearch::default()).unwrap();
        let mut boosters = embed_boosters_disjointly(&base);
        // force an overlap: re-root the second booster's graph onto the first
        let clash = boosters[0].clone();
        let root1 = boosters[1].root.clone();
        let map = {
            let from = clash.root.vertices().to_vec();
            let to = root1.vertices().to_vec();
            move |v: u32| -> u32 {
                if let Some(i) = from.iter().position(|&r| r == v) {
                    to[i]
                } else {
                    v
                }
            }
        };
        let n = clash.graph.n();
        boosters[1] = clash.relabel(&map, n).unwrap();
        let err = boost_absorber(&base, &boosters).unwrap_err();
        assert!(err.to_string().contains("overlaps"), "{err}");
    }

    #[test]
    fn boost_on_empty_family_is_identity() {
        let empty = Graph::empty(4);
        let base = brute_force_absorber(&empty, 3, 6, &AbsorberSearch::default()).unwrap();
        let boosted = boost_absorber(&base, &[]).unwrap();
        assert_eq!(boosted.a.edge_count(), 0);
        assert_eq!(boosted.family.len(), 0);
        assert_eq!(boosted.qmap.len(), 1);
        assert!(verify_omni_absorber(&boosted, DEFAULT_DIVISIBLE_CAP).unwrap().pass());
    }

    #[test]
    fn absorber_json_round_trip() {
        let x = triangle(3);
        let oa = brute_force_absorber(&x, 3, 9, &AbsorberSearch::default()).unwrap();
        let text = oa.to_json();
        let back = OmniAbsorber::from_json(&text).unwrap();
        assert_eq!(back.a, oa.a);
        assert_eq!(back.x, oa.x);
        assert_eq!(back.family, oa.family);
        assert_eq!(back.qmap, oa.qmap);
    }
}
