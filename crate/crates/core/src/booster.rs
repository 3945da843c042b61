//! Rooted K_q-boosters: explicit base construction, iterative layering, and
//! exact rooted-density computation.
//!
//! All densities are exact rationals; floating point is not used here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{union_graph, verify_decomposition, Clique, Graph};
use crate::rational::{rat, Rat};

/// Default cap on the family size for the exponential subset scan.
pub const DEFAULT_SUBSET_CAP: usize = 24;

/// A rooted density value; the denominator can be empty when every family
/// vertex lies inside the root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Density {
    Finite(Rat),
    Infinite,
}

impl Density {
    pub fn as_rat(&self) -> Option<Rat> {
        match self {
            Density::Finite(r) => Some(*r),
            Density::Infinite => None,
        }
    }

    pub fn le_rat(&self, bound: &Rat) -> bool {
        match self {
            Density::Finite(r) => r <= bound,
            Density::Infinite => false,
        }
    }

    pub fn ge_rat(&self, bound: &Rat) -> bool {
        match self {
            Density::Finite(r) => r >= bound,
            Density::Infinite => true,
        }
    }
}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        use Density::*;
        match (self, other) {
            (Infinite, Infinite) => Some(std::cmp::Ordering::Equal),
            (Infinite, Finite(_)) => Some(std::cmp::Ordering::Greater),
            (Finite(_), Infinite) => Some(std::cmp::Ordering::Less),
            (Finite(a), Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl std::fmt::Display for Density {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Density::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Density::Infinite => write!(f, "inf"),
        }
    }
}

fn off_root_vertices(cliques: &[Clique], root: &[u32]) -> Vec<Vec<u32>> {
    cliques
        .iter()
        .map(|c| {
            c.vertices()
                .iter()
                .copied()
                .filter(|v| !root.contains(v))
                .collect()
        })
        .collect()
}

/// `|H| / |union of V(H') over H' in H, minus R|`; the +infinity sentinel is
/// returned when the denominator is empty.
pub fn rooted_density(cliques: &[Clique], root: &[u32]) -> Result<Density> {
    if cliques.is_empty() {
        return Err(Error::InvalidParameter(
            "rooted density of an empty family".into(),
        ));
    }
    let mut outside: Vec<u32> = cliques
        .iter()
        .flat_map(|c| c.vertices().iter().copied())
        .filter(|v| !root.contains(v))
        .collect();
    outside.sort_unstable();
    outside.dedup();
    if outside.is_empty() {
        return Ok(Density::Infinite);
    }
    Ok(Density::Finite(rat(
        cliques.len() as i128,
        outside.len() as i128,
    )))
}

/// Maximum of `rooted_density` over all nonempty subfamilies, by a Gray-code
/// subset scan that maintains the vertex union incrementally. Exact, but
/// exponential: returns a resource error when `|H| > cap`.
pub fn max_rooted_density(cliques: &[Clique], root: &[u32], cap: usize) -> Result<Density> {
    if cliques.is_empty() {
        return Err(Error::InvalidParameter(
            "maximum rooted density of an empty family".into(),
        ));
    }
    if cliques.len() > cap {
        return Err(Error::Resource(format!(
            "subset scan over {} cliques exceeds cap {cap}; use the exact flow variant",
            cliques.len()
        )));
    }
    let sets = off_root_vertices(cliques, root);
    // compact off-root vertex ids
    let mut all: Vec<u32> = sets.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    let compact: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| s.iter().map(|v| all.binary_search(v).unwrap()).collect())
        .collect();
    let k = cliques.len();
    let mut mult = vec![0u32; all.len()];
    let mut covered = 0usize;
    let mut size = 0usize;
    let mut in_set = vec![false; k];
    let mut best: Option<Density> = None;
    for step in 1u64..(1u64 << k) {
        let flip = step.trailing_zeros() as usize;
        if in_set[flip] {
            in_set[flip] = false;
            size -= 1;
            for &v in &compact[flip] {
                mult[v] -= 1;
                if mult[v] == 0 {
                    covered -= 1;
                }
            }
        } else {
            in_set[flip] = true;
            size += 1;
            for &v in &compact[flip] {
                if mult[v] == 0 {
                    covered += 1;
                }
                mult[v] += 1;
            }
        }
        if size == 0 {
            continue;
        }
        let d = if covered == 0 {
            Density::Infinite
        } else {
            Density::Finite(rat(size as i128, covered as i128))
        };
        if best.as_ref().is_none_or(|b| d > *b) {
            best = Some(d);
        }
    }
    Ok(best.expect("at least one nonempty subfamily"))
}

/// Exact maximum rooted density with no family-size cap, via Dinkelbach
/// iteration over a min-cut formulation (maximum ratio |H'| / |cover(H')|).
/// Agrees with the subset scan wherever both run.
pub fn max_rooted_density_exact(cliques: &[Clique], root: &[u32]) -> Result<Density> {
    if cliques.is_empty() {
        return Err(Error::InvalidParameter(
            "maximum rooted density of an empty family".into(),
        ));
    }
    let sets = off_root_vertices(cliques, root);
    if sets.iter().any(|s| s.is_empty()) {
        return Ok(Density::Infinite);
    }
    let mut all: Vec<u32> = sets.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    let compact: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| s.iter().map(|v| all.binary_search(v).unwrap()).collect())
        .collect();
    let k = compact.len();
    let nv = all.len();

    let density_of = |chosen: &[usize]| -> Rat {
        let mut seen = vec![false; nv];
        let mut covered = 0usize;
        for &c in chosen {
            for &v in &compact[c] {
                if !seen[v] {
                    seen[v] = true;
                    covered += 1;
                }
            }
        }
        rat(chosen.len() as i128, covered as i128)
    };

    // start from an achieved density: the better of the full family and the
    // densest singleton
    let full: Vec<usize> = (0..k).collect();
    let mut t = density_of(&full);
    for i in 0..k {
        let single = density_of(&[i]);
        if single > t {
            t = single;
        }
    }
    loop {
        let num = *t.numer();
        let den = *t.denom();
        // project-selection min cut: keeping clique i earns den, each
        // distinct covered vertex costs num
        let mut flow = Dinic::new(2 + k + nv);
        let src = 0;
        let sink = 1 + k + nv;
        let inf: i128 = den * k as i128 + num * nv as i128 + 1;
        for (i, verts) in compact.iter().enumerate() {
            flow.add_edge(src, 1 + i, den);
            for &v in verts {
                flow.add_edge(1 + i, 1 + k + v, inf);
            }
        }
        for v in 0..nv {
            flow.add_edge(1 + k + v, sink, num);
        }
        let max_flow = flow.max_flow(src, sink);
        let gain = den * k as i128 - max_flow;
        if gain <= 0 {
            return Ok(Density::Finite(t));
        }
        let side = flow.source_side(src);
        let chosen: Vec<usize> = (0..k).filter(|&i| side[1 + i]).collect();
        if chosen.is_empty() {
            return Ok(Density::Finite(t));
        }
        let t2 = density_of(&chosen);
        if t2 <= t {
            return Ok(Density::Finite(t));
        }
        t = t2;
    }
}

// ---- minimal Dinic max-flow over i128 capacities ----

struct Dinic {
    to: Vec<usize>,
    cap: Vec<i128>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            to: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![-1; n],
            iter: vec![0; n],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, c: i128) {
        let e = self.to.len();
        self.to.push(v);
        self.cap.push(c);
        self.adj[u].push(e);
        self.to.push(u);
        self.cap.push(0);
        self.adj[v].push(e + 1);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = std::collections::VecDeque::new();
        self.level[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                if self.cap[e] > 0 && self.level[self.to[e]] < 0 {
                    self.level[self.to[e]] = self.level[u] + 1;
                    queue.push_back(self.to[e]);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, f: i128) -> i128 {
        if u == t {
            return f;
        }
        while self.iter[u] < self.adj[u].len() {
            let e = self.adj[u][self.iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i128 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, i128::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Vertices reachable from `s` in the residual network (the source side
    /// of a minimum cut).
    fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut queue = std::collections::VecDeque::new();
        seen[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                if self.cap[e] > 0 && !seen[self.to[e]] {
                    seen[self.to[e]] = true;
                    queue.push_back(self.to[e]);
                }
            }
        }
        seen
    }
}

/// Booster with two disjoint decompositions and one special clique in each,
/// overlapping in `q - 1` vertices.
#[derive(Clone, Debug)]
pub struct TwoCliqueBooster {
    pub q: usize,
    pub graph: Graph,
    pub decomp1: Vec<Clique>,
    pub decomp2: Vec<Clique>,
    pub s1: Clique,
    pub s2: Clique,
}

/// A rooted K_q-booster: `off_decomp` decomposes B, `on_decomp` decomposes
/// B ∪ R without using R itself.
#[derive(Clone, Debug)]
pub struct RootedBooster {
    pub q: usize,
    pub graph: Graph,
    pub on_decomp: Vec<Clique>,
    pub off_decomp: Vec<Clique>,
    pub root: Clique,
}

impl RootedBooster {
    /// Number of vertices outside the root (the `b` of partial-clique
    /// embeddings hosting this booster).
    pub fn extension_size(&self) -> usize {
        self.graph.n() - self.q
    }

    /// Relabels all vertices through `map` (old id -> new id), typically to
    /// embed the booster into a larger host on `n` vertices.
    pub fn relabel(&self, map: &dyn Fn(u32) -> u32, n: usize) -> Result<RootedBooster> {
        let remap_clique =
            |c: &Clique| Clique::new(c.vertices().iter().map(|&v| map(v)).collect());
        let edges: Vec<(u32, u32)> = self
            .graph
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (map(u), map(v));
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        Ok(RootedBooster {
            q: self.q,
            graph: Graph::from_edges(n, edges)?,
            on_decomp: self
                .on_decomp
                .iter()
                .map(&remap_clique)
                .collect::<Result<_>>()?,
            off_decomp: self
                .off_decomp
                .iter()
                .map(&remap_clique)
                .collect::<Result<_>>()?,
            root: remap_clique(&self.root)?,
        })
    }
}

fn grid_vertex(q: usize, i: usize, j: usize) -> u32 {
    // row/column indices are 1-based as in the construction
    (2 + (i - 1) * (q - 1) + (j - 1)) as u32
}

/// The explicit booster on `2 + (q-1)^2` vertices: the Cartesian product of
/// K_{q-1} with itself plus two dominating vertices `v1 = 0`, `v2 = 1`. Row
/// cliques through one apex and column cliques through the other form each
/// decomposition.
pub fn base_booster(q: usize) -> Result<TwoCliqueBooster> {
    if q < 3 {
        return Err(Error::InvalidParameter(format!("q must be >= 3, got {q}")));
    }
    let side = q - 1;
    let n = 2 + side * side;
    let mut edges = Vec::new();
    for i in 1..=side {
        for j in 1..=side {
            let g = grid_vertex(q, i, j);
            edges.push((0, g));
            edges.push((1, g));
            for j2 in (j + 1)..=side {
                edges.push((g, grid_vertex(q, i, j2)));
            }
            for i2 in (i + 1)..=side {
                edges.push((g, grid_vertex(q, i2, j)));
            }
        }
    }
    let graph = Graph::from_edges(n, edges)?;
    let row = |apex: u32, i: usize| -> Clique {
        let mut v: Vec<u32> = (1..=side).map(|j| grid_vertex(q, i, j)).collect();
        v.push(apex);
        Clique::new(v).expect("row clique")
    };
    let col = |apex: u32, j: usize| -> Clique {
        let mut v: Vec<u32> = (1..=side).map(|i| grid_vertex(q, i, j)).collect();
        v.push(apex);
        Clique::new(v).expect("column clique")
    };
    let decomp1: Vec<Clique> = (1..=side)
        .map(|i| row(0, i))
        .chain((1..=side).map(|j| col(1, j)))
        .collect();
    let decomp2: Vec<Clique> = (1..=side)
        .map(|i| row(1, i))
        .chain((1..=side).map(|j| col(0, j)))
        .collect();
    let s1 = row(0, 1);
    let s2 = row(1, 1);
    Ok(TwoCliqueBooster { q, graph, decomp1, decomp2, s1, s2 })
}

/// Diagnostics from the layering loop.
#[derive(Clone, Debug)]
pub struct LayerTrace {
    pub glue_count: usize,
    /// The special clique of the second decomposition once it became
    /// vertex-disjoint from the root.
    pub final_special: Clique,
}

/// Iterates the gluing construction: fresh base boosters are attached by
/// identifying their first special clique with the current second special
/// clique, shrinking the root overlap by one per step. Once the overlap is
/// empty, the root clique's edges are removed and the result is a rooted
/// booster with rooted density within [2/q, 2/(q-2)].
pub fn layer_boosters(q: usize) -> Result<RootedBooster> {
    layer_boosters_traced(q).map(|(rb, _)| rb)
}

pub fn layer_boosters_traced(q: usize) -> Result<(RootedBooster, LayerTrace)> {
    let base = base_booster(q)?;
    let mut graph = base.graph;
    let mut d1 = base.decomp1;
    let mut d2 = base.decomp2;
    let s1 = base.s1;
    let mut s2 = base.s2;
    let mut glue_count = 0;
    loop {
        let overlap: Vec<u32> = s1
            .vertices()
            .iter()
            .copied()
            .filter(|v| s2.contains(*v))
            .collect();
        if overlap.is_empty() {
            break;
        }
        let fresh = base_booster(q)?;
        // Identify the fresh S'1 with the current S2:
        //   - v'1 (the unique vertex of V(S'1)\V(S'2)) maps to the smallest
        //     vertex of V(S1) ∩ V(S2),
        //   - the fresh row-1 grid vertices map to the rest of V(S2)
        //     ascending,
        //   - everything else gets the next unused ids.
        let chosen = overlap[0];
        let row1: Vec<u32> = (1..q).map(|j| grid_vertex(q, 1, j)).collect();
        let s2_rest: Vec<u32> = s2
            .vertices()
            .iter()
            .copied()
            .filter(|&v| v != chosen)
            .collect();
        debug_assert_eq!(row1.len(), s2_rest.len());
        let mut map = vec![u32::MAX; fresh.graph.n()];
        map[0] = chosen;
        for (src, dst) in row1.iter().zip(s2_rest.iter()) {
            map[*src as usize] = *dst;
        }
        let mut next_free = graph.n() as u32;
        for slot in map.iter_mut() {
            if *slot == u32::MAX {
                *slot = next_free;
                next_free += 1;
            }
        }
        let new_n = next_free as usize;
        let remap = |c: &Clique| -> Clique {
            Clique::new(c.vertices().iter().map(|&v| map[v as usize]).collect())
                .expect("relabelled clique")
        };
        let fresh_s1 = remap(&fresh.s1);
        debug_assert_eq!(fresh_s1, s2, "fresh S'1 must coincide with current S2");
        let fresh_edges: Vec<(u32, u32)> = fresh
            .graph
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (map[u as usize], map[v as usize]);
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        let old = graph.padded(new_n)?;
        // the relabelled booster's edges inside V(B) must be exactly E(S2)
        debug_assert!(fresh_edges
            .iter()
            .all(|&(u, v)| !old.has_edge(u, v) || s2.edges().contains(&(u, v))));
        let mut merged = old;
        for &(u, v) in &fresh_edges {
            if !merged.has_edge(u, v) {
                merged = merged.with_edge(u, v)?;
            }
        }
        let fresh_d1: Vec<Clique> = fresh
            .decomp1
            .iter()
            .filter(|c| **c != fresh.s1)
            .map(&remap)
            .collect();
        let fresh_d2: Vec<Clique> = fresh.decomp2.iter().map(&remap).collect();
        d1.extend(fresh_d1);
        d2.retain(|c| *c != s2);
        d2.extend(fresh_d2);
        s2 = remap(&fresh.s2);
        graph = merged;
        glue_count += 1;

        #[cfg(debug_assertions)]
        {
            // the gluing must preserve both density bounds at every step
            let bound = rat(2, (q - 2) as i128);
            let d1_rest: Vec<Clique> = d1.iter().filter(|c| **c != s1).cloned().collect();
            let m1 = max_rooted_density_exact(&d1_rest, s1.vertices()).unwrap();
            assert!(m1.le_rat(&bound), "glue {glue_count}: d1 bound broken: {m1}");
            let d2_rest: Vec<Clique> = d2.iter().filter(|c| **c != s2).cloned().collect();
            let mut root_union: Vec<u32> = s1
                .vertices()
                .iter()
                .chain(s2.vertices().iter())
                .copied()
                .collect();
            root_union.sort_unstable();
            root_union.dedup();
            let m2 = max_rooted_density_exact(&d2_rest, &root_union).unwrap();
            assert!(m2.le_rat(&bound), "glue {glue_count}: d2 bound broken: {m2}");
        }
    }
    // remove the root's edges; decomp2 becomes the on-decomposition
    let root_graph = union_graph(graph.n(), std::slice::from_ref(&s1))?;
    let b = graph.minus(&root_graph)?;
    let off: Vec<Clique> = d1.iter().filter(|c| **c != s1).cloned().collect();
    let rb = RootedBooster {
        q,
        graph: b,
        on_decomp: d2,
        off_decomp: off,
        root: s1,
    };
    Ok((rb, LayerTrace { glue_count, final_special: s2 }))
}

/// One named check of a verification report.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct BoosterReport {
    pub checks: Vec<Check>,
    pub on_density: Option<Density>,
    pub off_density: Option<Density>,
}

impl BoosterReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks every rooted-booster invariant plus both rooted-density bounds,
/// reporting exact density values.
pub fn verify_rooted_booster(rb: &RootedBooster) -> BoosterReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(Check { name: name.to_string(), pass, detail });
    };
    let q = rb.q;
    let n = rb.graph.n();

    let root_ok = rb.root.q() == q && rb.root.vertices().iter().all(|&v| (v as usize) < n);
    push("root is a q-set inside V(B)", root_ok, format!("root = {:?}", rb.root));

    let root_disjoint = rb
        .root
        .edges()
        .iter()
        .all(|&(u, v)| !rb.graph.has_edge(u, v));
    push(
        "root edge-disjoint from B",
        root_disjoint,
        if root_disjoint { String::new() } else { "root edge present in B".into() },
    );

    let off = verify_decomposition(&rb.graph, &rb.off_decomp, q);
    push(
        "off-decomposition decomposes B",
        off.ok,
        off.reason.unwrap_or_default(),
    );

    let b_union_r = union_graph(n, std::slice::from_ref(&rb.root))
        .and_then(|rg| rb.graph.union(&rg));
    match b_union_r {
        Ok(bur) => {
            let on = verify_decomposition(&bur, &rb.on_decomp, q);
            push(
                "on-decomposition decomposes B ∪ R",
                on.ok,
                on.reason.unwrap_or_default(),
            );
        }
        Err(e) => push("on-decomposition decomposes B ∪ R", false, e.to_string()),
    }

    let r_not_on = !rb.on_decomp.contains(&rb.root);
    push("R ∉ B°", r_not_on, String::new());

    let shared = rb
        .on_decomp
        .iter()
        .find(|c| rb.off_decomp.contains(c) || **c == rb.root);
    push(
        "B° ∩ (B• ∪ {R}) = ∅",
        shared.is_none(),
        shared.map(|c| format!("shared clique {c:?}")).unwrap_or_default(),
    );

    let upper = rat(2, (q as i128) - 2);
    let lower = rat(2, q as i128);
    let on_density = max_rooted_density_exact(&rb.on_decomp, rb.root.vertices()).ok();
    let off_density = max_rooted_density_exact(&rb.off_decomp, rb.root.vertices()).ok();
    match (&on_density, &off_density) {
        (Some(on), Some(off)) => {
            let both_upper = on.le_rat(&upper) && off.le_rat(&upper);
            push(
                "rooted density ≤ 2/(q-2)",
                both_upper,
                format!("on = {on}, off = {off}, bound = 2/{}", q - 2),
            );
            let max_density = if on > off { on } else { off };
            push(
                "rooted density ≥ 2/q",
                max_density.ge_rat(&lower),
                format!("max = {max_density}, bound = 2/{q}"),
            );
        }
        _ => push("rooted density computed", false, "empty decomposition".into()),
    }

    BoosterReport { checks, on_density, off_density }
}

// ---- JSON format: keys q, vertices, edges, on_decomp, off_decomp, root ----

#[derive(Serialize, Deserialize)]
struct BoosterJson {
    q: usize,
    vertices: usize,
    edges: Vec<(u32, u32)>,
    on_decomp: Vec<Vec<u32>>,
    off_decomp: Vec<Vec<u32>>,
    root: Vec<u32>,
}

impl RootedBooster {
    pub fn to_json(&self) -> String {
        let doc = BoosterJson {
            q: self.q,
            vertices: self.graph.n(),
            edges: self.graph.edges(),
            on_decomp: self
                .on_decomp
                .iter()
                .map(|c| c.vertices().to_vec())
                .collect(),
            off_decomp: self
                .off_decomp
                .iter()
                .map(|c| c.vertices().to_vec())
                .collect(),
            root: self.root.vertices().to_vec(),
        };
        serde_json::to_string_pretty(&doc).expect("booster serialization")
    }

    pub fn from_json(text: &str) -> Result<RootedBooster> {
        let doc: BoosterJson =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let graph = Graph::from_edges(doc.vertices, doc.edges)?;
        let parse =
            |vs: Vec<Vec<u32>>| -> Result<Vec<Clique>> { vs.into_iter().map(Clique::new).collect() };
        Ok(RootedBooster {
            q: doc.q,
            graph,
            on_decomp: parse(doc.on_decomp)?,
            off_decomp: parse(doc.off_decomp)?,
            root: Clique::new(doc.root)?,
        })
    }
}
