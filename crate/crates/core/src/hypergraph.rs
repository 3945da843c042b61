//! Auxiliary hypergraphs: the design hypergraph of a host graph, and the
//! bipartite reserve hypergraphs consumed by the nibble.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{list_cliques, Clique, Graph, DEFAULT_CLIQUE_CAP};

/// Plain hypergraph on vertices `0..n`; hyperedges are sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub n: usize,
    pub edges: Vec<Vec<u32>>,
}

impl Hypergraph {
    pub fn new(n: usize, mut edges: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in edges.iter_mut() {
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "hyperedge {e:?} repeats a vertex"
                )));
            }
            if e.iter().any(|&v| v as usize >= n) {
                return Err(Error::InvalidParameter(format!(
                    "hyperedge {e:?} out of range for n={n}"
                )));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate hyperedge {e:?}"
                )));
            }
        }
        Ok(Hypergraph { n, edges })
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n as u32).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Number of hyperedges containing both `u` and `v`.
    pub fn codegree(&self, u: u32, v: u32) -> usize {
        self.edges
            .iter()
            .filter(|e| e.binary_search(&u).is_ok() && e.binary_search(&v).is_ok())
            .count()
    }

    /// Vertices incident to at least one hyperedge.
    pub fn incident_vertices(&self) -> BTreeSet<u32> {
        self.edges.iter().flatten().copied().collect()
    }

    // ---- text format: header "N M", one hyperedge per line, '#' comments ----

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty hypergraph file".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Format("bad header: expected \"N M\"".into()))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Format("bad header: expected \"N M\"".into()))?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let verts: Result<Vec<u32>> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Format(format!("bad vertex id: {line}")))
                })
                .collect();
            edges.push(verts?);
        }
        if edges.len() != m {
            return Err(Error::Format(format!(
                "header claims {m} hyperedges, found {}",
                edges.len()
            )));
        }
        Hypergraph::new(n, edges)
    }
}

/// Hypergraph with parts `A` and `B`: every hyperedge meets `A` in exactly
/// one vertex and is otherwise inside `B`.
#[derive(Clone, Debug)]
pub struct BipartiteHypergraph {
    pub n: usize,
    pub part_a: BTreeSet<u32>,
    pub part_b: BTreeSet<u32>,
    pub edges: Vec<Vec<u32>>,
}

impl BipartiteHypergraph {
    pub fn new(
        n: usize,
        part_a: BTreeSet<u32>,
        part_b: BTreeSet<u32>,
        edges: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if !part_a.is_disjoint(&part_b) {
            return Err(Error::InvalidParameter("parts A and B intersect".into()));
        }
        if part_a.iter().chain(part_b.iter()).any(|&v| v as usize >= n) {
            return Err(Error::InvalidParameter("part vertex out of range".into()));
        }
        let hg = Hypergraph::new(n, edges)?; // sorts, dedups, range-checks
        for e in &hg.edges {
            let in_a = e.iter().filter(|v| part_a.contains(v)).count();
            if in_a != 1 {
                return Err(Error::InvalidParameter(format!(
                    "hyperedge {e:?} meets A in {in_a} vertices, expected exactly 1"
                )));
            }
            if e.iter().any(|v| !part_a.contains(v) && !part_b.contains(v)) {
                return Err(Error::InvalidParameter(format!(
                    "hyperedge {e:?} leaves A ∪ B"
                )));
            }
        }
        Ok(BipartiteHypergraph { n, part_a, part_b, edges: hg.edges })
    }

    /// The unique A-vertex of a hyperedge.
    pub fn a_vertex(&self, edge_idx: usize) -> u32 {
        *self.edges[edge_idx]
            .iter()
            .find(|v| self.part_a.contains(v))
            .expect("validated at construction")
    }

    pub fn degree_in_a(&self, a: u32) -> usize {
        self.edges
            .iter()
            .enumerate()
            .filter(|(i, _)| self.a_vertex(*i) == a)
            .count()
    }

    pub fn degree_in_b(&self, b: u32) -> usize {
        self.edges
            .iter()
            .filter(|e| e.binary_search(&b).is_ok())
            .count()
    }
}

/// The design hypergraph of a host graph: one vertex per host edge, one
/// `C(q,2)`-uniform hyperedge per `q`-clique (its edge set).
#[derive(Clone, Debug)]
pub struct DesignHypergraph {
    pub host_n: usize,
    pub q: usize,
    /// design-vertex id -> host edge, lexicographic over host edges
    pub vertex_edges: Vec<(u32, u32)>,
    /// hyperedges as sorted design-vertex id lists, parallel to `cliques`
    pub hyperedges: Vec<Vec<u32>>,
    pub cliques: Vec<Clique>,
}

impl DesignHypergraph {
    pub fn edge_id(&self, u: u32, v: u32) -> Option<u32> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.vertex_edges.binary_search(&key).ok().map(|i| i as u32)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_edges.len()
    }

    pub fn degree(&self, design_vertex: u32) -> usize {
        self.hyperedges
            .iter()
            .filter(|e| e.binary_search(&design_vertex).is_ok())
            .count()
    }

    pub fn max_codegree(&self) -> usize {
        let m = self.vertex_count();
        let mut best = 0;
        for u in 0..m as u32 {
            for v in (u + 1)..m as u32 {
                let co = self
                    .hyperedges
                    .iter()
                    .filter(|e| e.binary_search(&u).is_ok() && e.binary_search(&v).is_ok())
                    .count();
                best = best.max(co);
            }
        }
        best
    }

    pub fn as_hypergraph(&self) -> Hypergraph {
        Hypergraph {
            n: self.vertex_count(),
            edges: self.hyperedges.clone(),
        }
    }

    /// Keep only the hyperedges at the given indices (sorted, deduped).
    pub fn restrict(&self, keep: &[usize]) -> DesignHypergraph {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        DesignHypergraph {
            host_n: self.host_n,
            q: self.q,
            vertex_edges: self.vertex_edges.clone(),
            hyperedges: keep.iter().map(|&i| self.hyperedges[i].clone()).collect(),
            cliques: keep.iter().map(|&i| self.cliques[i].clone()).collect(),
        }
    }
}

/// Builds the design hypergraph of `g` for clique size `q`.
pub fn design_hypergraph(g: &Graph, q: usize) -> Result<DesignHypergraph> {
    if q < 3 {
        return Err(Error::InvalidParameter(format!("q must be >= 3, got {q}")));
    }
    let vertex_edges = g.edges();
    let cliques = list_cliques(g, q, DEFAULT_CLIQUE_CAP)?;
    let lookup = |u: u32, v: u32| -> u32 {
        let key = if u < v { (u, v) } else { (v, u) };
        vertex_edges.binary_search(&key).expect("clique edge must exist") as u32
    };
    let hyperedges: Vec<Vec<u32>> = cliques
        .iter()
        .map(|c| {
            let mut ids: Vec<u32> = c.edges().iter().map(|&(u, v)| lookup(u, v)).collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    Ok(DesignHypergraph {
        host_n: g.n(),
        q,
        vertex_edges,
        hyperedges,
        cliques,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::binomial;

    #[test]
    fn design_k5_regular() {
        let d = design_hypergraph(&Graph::complete(5), 3).unwrap();
        assert_eq!(d.vertex_count(), 10);
        assert_eq!(d.hyperedges.len(), 10);
        for v in 0..10u32 {
            assert_eq!(d.degree(v), 3);
        }
    }

    #[test]
    fn design_k4_degrees() {
        let d = design_hypergraph(&Graph::complete(4), 3).unwrap();
        assert_eq!(d.vertex_count(), 6);
        assert_eq!(d.hyperedges.len(), 4);
        for v in 0..6u32 {
            assert_eq!(d.degree(v), 2);
        }
    }

    #[test]
    fn design_k7_codegree() {
        let d = design_hypergraph(&Graph::complete(7), 3).unwrap();
        assert_eq!(d.max_codegree(), 1);
    }

    #[test]
    fn design_regularity_exhaustive() {
        // Design(K_n, q) is C(n-2, q-2)-regular with codegree <= C(n-3, q-3)
        for q in [3usize, 4] {
            for n in 3..=12usize {
                let d = design_hypergraph(&Graph::complete(n), q).unwrap();
                let want = binomial(n as u64 - 2, q as u64 - 2) as usize;
                for v in 0..d.vertex_count() as u32 {
                    assert_eq!(d.degree(v), want, "n={n} q={q}");
                }
                let cod = binomial(n.saturating_sub(3) as u64, q as u64 - 3) as usize;
                assert!(d.max_codegree() <= cod, "n={n} q={q}");
            }
        }
    }

    #[test]
    fn hypergraph_text_round_trip() {
        let h = Hypergraph::new(6, vec![vec![0, 1, 2], vec![3, 4, 5], vec![0, 3, 5]]).unwrap();
        let back = Hypergraph::from_text(&h.to_text()).unwrap();
        assert_eq!(h, back);
    }

    #[test]
    fn bipartite_validation() {
        let a: BTreeSet<u32> = [0, 1].into_iter().collect();
        let b: BTreeSet<u32> = [2, 3, 4].into_iter().collect();
        assert!(BipartiteHypergraph::new(5, a.clone(), b.clone(), vec![vec![0, 2, 3]]).is_ok());
        assert!(BipartiteHypergraph::new(5, a.clone(), b.clone(), vec![vec![0, 1, 2]]).is_err());
        assert!(BipartiteHypergraph::new(5, a, b, vec![vec![2, 3, 4]]).is_err());
    }
}
