//! Graphs, cliques, packings, and divisibility.
//!
//! Vertices are dense integer ids `0..n`. Edges are unordered pairs stored in
//! a bitset adjacency matrix, so membership is O(1) and neighbourhood
//! intersections are word-parallel. All types are immutable once built and
//! safe to share across threads.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Hard cap for [`list_cliques`] before aborting with a resource error.
pub const DEFAULT_CLIQUE_CAP: usize = 10_000_000;

/// Simple undirected graph on vertices `0..n`, no loops, no multi-edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    deg: Vec<u32>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0u64; n * words],
            deg: vec![0; n],
            m: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidParameter(format!("duplicate edge ({u},{v})")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: u32, v: u32) {
        let (u, v) = (u as usize, v as usize);
        debug_assert!(u != v && u < self.n && v < self.n);
        let w = self.words;
        if self.adj[u * w + v / 64] >> (v % 64) & 1 == 0 {
            self.adj[u * w + v / 64] |= 1 << (v % 64);
            self.adj[v * w + u / 64] |= 1 << (u % 64);
            self.deg[u] += 1;
            self.deg[v] += 1;
            self.m += 1;
        }
    }

    fn delete_edge(&mut self, u: u32, v: u32) {
        let (u, v) = (u as usize, v as usize);
        let w = self.words;
        if self.adj[u * w + v / 64] >> (v % 64) & 1 == 1 {
            self.adj[u * w + v / 64] &= !(1 << (v % 64));
            self.adj[v * w + u / 64] &= !(1 << (u % 64));
            self.deg[u] -= 1;
            self.deg[v] -= 1;
            self.m -= 1;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        if u == v || u as usize >= self.n || v as usize >= self.n {
            return false;
        }
        self.adj[u as usize * self.words + v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.deg[v as usize]
    }

    pub fn max_degree(&self) -> u32 {
        self.deg.iter().copied().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.deg.iter().copied().min().unwrap_or(0)
    }

    fn row(&self, v: u32) -> &[u64] {
        let v = v as usize;
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.deg[v as usize] as usize);
        for (wi, &word) in self.row(v).iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push((wi * 64 + b) as u32);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Vertices adjacent to every vertex in `set`.
    pub fn common_neighbors(&self, set: &[u32]) -> Vec<u32> {
        if set.is_empty() {
            return (0..self.n as u32).collect();
        }
        let mut acc = self.row(set[0]).to_vec();
        for &v in &set[1..] {
            for (a, b) in acc.iter_mut().zip(self.row(v)) {
                *a &= b;
            }
        }
        for &v in set {
            acc[v as usize / 64] &= !(1u64 << (v % 64));
        }
        let mut out = Vec::new();
        for (wi, &word) in acc.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push((wi * 64 + b) as u32);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Sorted edge list, `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n as u32 {
            for (wi, &word) in self.row(u).iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    let v = (wi * 64 + b) as u32;
                    if v > u {
                        out.push((u, v));
                    }
                    bits &= bits - 1;
                }
            }
        }
        out
    }

    /// Edge-wise union; both graphs must share the same vertex count.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        self.check_same_n(other)?;
        let mut g = self.clone();
        for (u, v) in other.edges() {
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Edge-wise difference `self \ other`.
    pub fn minus(&self, other: &Graph) -> Result<Graph> {
        self.check_same_n(other)?;
        let mut g = self.clone();
        for (u, v) in other.edges() {
            g.delete_edge(u, v);
        }
        Ok(g)
    }

    pub fn with_edge(&self, u: u32, v: u32) -> Result<Graph> {
        if u == v || u as usize >= self.n || v as usize >= self.n {
            return Err(Error::InvalidParameter(format!("bad edge ({u},{v})")));
        }
        let mut g = self.clone();
        g.insert_edge(u, v);
        Ok(g)
    }

    fn check_same_n(&self, other: &Graph) -> Result<()> {
        if self.n != other.n {
            return Err(Error::InvalidParameter(format!(
                "vertex count mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn is_edge_subset_of(&self, host: &Graph) -> bool {
        self.n == host.n && self.edges().iter().all(|&(u, v)| host.has_edge(u, v))
    }

    pub fn edge_disjoint_with(&self, other: &Graph) -> bool {
        self.edges().iter().all(|&(u, v)| !other.has_edge(u, v))
    }

    /// First edge present in both graphs, if any.
    pub fn first_shared_edge(&self, other: &Graph) -> Option<(u32, u32)> {
        self.edges().into_iter().find(|&(u, v)| other.has_edge(u, v))
    }

    /// Graph on the same vertex set spanned by the given edges.
    pub fn from_edge_subset(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        Graph::from_edges(n, edges.iter().copied())
    }

    /// Re-embeds this graph into a larger vertex set, keeping ids.
    pub fn padded(&self, n: usize) -> Result<Graph> {
        if n < self.n {
            return Err(Error::InvalidParameter(format!(
                "cannot pad graph of {} vertices down to {n}",
                self.n
            )));
        }
        Graph::from_edges(n, self.edges())
    }

    // ---- edge-list text format: header "n m", then "u v" per line, u < v ----

    pub fn to_edge_list_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn from_edge_list_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty edge list".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Format("bad header: expected \"n m\"".into()))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Format("bad header: expected \"n m\"".into()))?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Format(format!("bad edge line: {line}")))?;
            let v: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Format(format!("bad edge line: {line}")))?;
            if u >= v {
                return Err(Error::Format(format!("edge not in u < v order: {line}")));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Format(format!(
                "header claims {m} edges, found {}",
                edges.len()
            )));
        }
        Graph::from_edges(n, edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges())
    }
}

/// A `q`-clique stored as a strictly increasing vertex tuple (canonical form).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clique(Vec<u32>);

impl Clique {
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!(
                "repeated vertex in clique {vertices:?}"
            )));
        }
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("empty clique".into()));
        }
        Ok(Clique(vertices))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn q(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The `C(q,2)` edges of the clique, lexicographic.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.0.len() * (self.0.len() - 1) / 2);
        for i in 0..self.0.len() {
            for j in (i + 1)..self.0.len() {
                out.push((self.0[i], self.0[j]));
            }
        }
        out
    }

    /// True iff all `C(q,2)` pairs are edges of `g`.
    pub fn is_clique_of(&self, g: &Graph) -> bool {
        self.edges().iter().all(|&(u, v)| g.has_edge(u, v))
    }

    pub fn as_graph(&self, n: usize) -> Result<Graph> {
        Graph::from_edges(n, self.edges())
    }
}

impl fmt::Debug for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{:?}", self.0)
    }
}

impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A family of pairwise edge-disjoint `q`-cliques of a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    q: usize,
    cliques: Vec<Clique>,
}

impl Packing {
    /// Validates against the host: uniform size `q`, cliques of the host,
    /// pairwise edge-disjoint, no duplicates.
    pub fn new(host: &Graph, q: usize, mut cliques: Vec<Clique>) -> Result<Self> {
        cliques.sort();
        cliques.dedup();
        let check = verify_packing(host, &cliques, q);
        if !check.ok {
            return Err(Error::InvalidParameter(format!(
                "not a K_{q}-packing: {}",
                check.reason.unwrap_or_default()
            )));
        }
        Ok(Packing { q, cliques })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn cliques(&self) -> &[Clique] {
        &self.cliques
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// The union of the clique edge sets, as a graph on the host's vertices.
    pub fn covered_edges(&self, n: usize) -> Result<Graph> {
        union_graph(n, &self.cliques)
    }
}

/// Union of clique edge sets as a graph on `n` vertices. Errors if the
/// cliques are not pairwise edge-disjoint.
pub fn union_graph(n: usize, cliques: &[Clique]) -> Result<Graph> {
    let mut g = Graph::empty(n);
    for c in cliques {
        for (u, v) in c.edges() {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidParameter(format!(
                    "clique vertex out of range for n={n}"
                )));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u},{v}) covered twice"
                )));
            }
            g.insert_edge(u, v);
        }
    }
    Ok(g)
}

/// Outcome of a structural check, with a human-readable diagnostic on failure.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub ok: bool,
    pub reason: Option<String>,
}

impl CheckOutcome {
    fn pass() -> Self {
        CheckOutcome { ok: true, reason: None }
    }
    fn fail(reason: String) -> Self {
        CheckOutcome { ok: false, reason: Some(reason) }
    }
}

/// True iff `q-1` divides every vertex degree and `C(q,2)` divides `e(G)`.
pub fn is_kq_divisible(g: &Graph, q: usize) -> Result<bool> {
    if q < 3 {
        return Err(Error::InvalidParameter(format!("q must be >= 3, got {q}")));
    }
    let per_clique = q * (q - 1) / 2;
    if !g.edge_count().is_multiple_of(per_clique) {
        return Ok(false);
    }
    Ok((0..g.n() as u32).all(|v| (g.degree(v) as usize).is_multiple_of(q - 1)))
}

/// True iff every member is a `q`-clique of `g` and the members are pairwise
/// edge-disjoint. Malformed input yields `false` with a diagnostic.
pub fn verify_packing(g: &Graph, cliques: &[Clique], q: usize) -> CheckOutcome {
    let mut seen = Graph::empty(g.n());
    let mut distinct: BTreeSet<&Clique> = BTreeSet::new();
    for c in cliques {
        if c.q() != q {
            return CheckOutcome::fail(format!("{c:?} has {} vertices, expected {q}", c.q()));
        }
        if !distinct.insert(c) {
            return CheckOutcome::fail(format!("{c:?} listed twice"));
        }
        if c.vertices().iter().any(|&v| v as usize >= g.n()) {
            return CheckOutcome::fail(format!("{c:?} has a vertex outside the host"));
        }
        if !c.is_clique_of(g) {
            return CheckOutcome::fail(format!("{c:?} is not a clique of the host"));
        }
        for (u, v) in c.edges() {
            if seen.has_edge(u, v) {
                return CheckOutcome::fail(format!("edge ({u},{v}) used by two cliques"));
            }
            seen.insert_edge(u, v);
        }
    }
    CheckOutcome::pass()
}

/// True iff `verify_packing` holds and the union of clique edge sets is
/// exactly `E(G)`.
pub fn verify_decomposition(g: &Graph, cliques: &[Clique], q: usize) -> CheckOutcome {
    let packing = verify_packing(g, cliques, q);
    if !packing.ok {
        return packing;
    }
    let covered: usize = cliques.len() * q * (q - 1) / 2;
    if covered != g.edge_count() {
        return CheckOutcome::fail(format!(
            "covers {covered} edges, host has {}",
            g.edge_count()
        ));
    }
    // packing already guarantees the covered edges lie inside E(G) and are
    // distinct, so matching counts give exact equality
    CheckOutcome::pass()
}

/// All `q`-cliques of `g` in canonical (sorted-tuple, lexicographic) order.
///
/// Enumerates by ordered extension with adjacency pruning; aborts with a
/// resource error when more than `cap` cliques would be produced.
pub fn list_cliques(g: &Graph, q: usize, cap: usize) -> Result<Vec<Clique>> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q must be >= 2, got {q}")));
    }
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::with_capacity(q);
    let n = g.n() as u32;
    fn extend(
        g: &Graph,
        q: usize,
        cap: usize,
        stack: &mut Vec<u32>,
        cands: &[u32],
        out: &mut Vec<Clique>,
    ) -> Result<()> {
        if stack.len() == q {
            if out.len() >= cap {
                return Err(Error::Resource(format!(
                    "clique enumeration exceeded cap of {cap}"
                )));
            }
            out.push(Clique(stack.clone()));
            return Ok(());
        }
        for (i, &v) in cands.iter().enumerate() {
            // not enough candidates left to finish the clique
            if cands.len() - i < q - stack.len() {
                break;
            }
            stack.push(v);
            let next: Vec<u32> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&u| g.has_edge(u, v))
                .collect();
            extend(g, q, cap, stack, &next, out)?;
            stack.pop();
        }
        Ok(())
    }
    let all: Vec<u32> = (0..n).collect();
    extend(g, q, cap, &mut stack, &all, &mut out)?;
    Ok(out)
}

// ---- packing text format: one clique per line, '#' comments ----

pub fn packing_to_text(cliques: &[Clique]) -> String {
    let mut s = String::new();
    for c in cliques {
        s.push_str(&c.to_string());
        s.push('\n');
    }
    s
}

pub fn packing_from_text(text: &str) -> Result<Vec<Clique>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let verts: Result<Vec<u32>> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::Format(format!("bad vertex id in line: {line}")))
            })
            .collect();
        out.push(Clique::new(verts?)?);
    }
    Ok(out)
}
