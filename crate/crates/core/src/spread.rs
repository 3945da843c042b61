//! Exact and empirical σ-spread measurement for distributions over
//! K_q-decompositions: a distribution is σ-spread when every packing S is
//! contained in the random decomposition with probability at most σ^|S|.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{
    list_cliques, verify_decomposition, verify_packing, Clique, Graph, DEFAULT_CLIQUE_CAP,
};
use crate::rational::{rat, rat_pow, rat_to_f64, Rat};
use crate::seed::derive_seed;
use crate::stats::wilson_interval;

/// Cap on the number of packings visited by the exact scan.
pub const DEFAULT_PACKING_CAP: u64 = 10_000_000;

/// A finitely supported distribution over full K_q-decompositions of one
/// host graph, with exact rational weights summing to 1.
#[derive(Clone, Debug)]
pub struct ExplicitDistribution {
    pub host: Graph,
    pub q: usize,
    pub support: Vec<Vec<Clique>>,
    pub weights: Vec<Rat>,
}

impl ExplicitDistribution {
    pub fn new(
        host: Graph,
        q: usize,
        support: Vec<Vec<Clique>>,
        weights: Vec<Rat>,
    ) -> Result<Self> {
        if support.len() != weights.len() {
            return Err(Error::InvalidParameter(
                "support and weight counts differ".into(),
            ));
        }
        if weights.iter().any(|w| w < &Rat::zero()) {
            return Err(Error::InvalidParameter("negative weight".into()));
        }
        let total: Rat = weights.iter().sum();
        if total != rat(1, 1) {
            return Err(Error::InvalidParameter(format!(
                "weights sum to {total}, expected exactly 1"
            )));
        }
        for d in &support {
            let check = verify_decomposition(&host, d, q);
            if !check.ok {
                return Err(Error::InvalidParameter(format!(
                    "support member is not a decomposition: {}",
                    check.reason.unwrap_or_default()
                )));
            }
        }
        Ok(ExplicitDistribution { host, q, support, weights })
    }

    pub fn uniform(host: Graph, q: usize, support: Vec<Vec<Clique>>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidParameter("empty support".into()));
        }
        let w = rat(1, support.len() as i128);
        let weights = vec![w; support.len()];
        Self::new(host, q, support, weights)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpreadMode {
    Exact,
    Empirical,
}

/// Worst containment probability among the tested packings of one size.
#[derive(Clone, Debug)]
pub struct SizeWorst {
    pub size: usize,
    /// exact probability, or the point estimate in empirical mode
    pub worst_p: Rat,
    /// largest upper confidence bound over the probes (empirical mode)
    pub ci_hi: Option<f64>,
    pub witness: Vec<Clique>,
}

impl SizeWorst {
    /// `worst_p^{1/size}` for display.
    pub fn ratio(&self) -> f64 {
        rat_to_f64(&self.worst_p).powf(1.0 / self.size as f64)
    }
}

#[derive(Clone, Debug)]
pub struct SpreadReport {
    pub mode: SpreadMode,
    pub s_max: usize,
    pub per_size: Vec<SizeWorst>,
    /// worst containment probability over single cliques
    pub sigma_singleton: Option<Rat>,
    pub trials: Option<u64>,
    pub probes: usize,
    /// exact mode only: sum over all cliques of P(clique ∈ H), which must
    /// equal the expected decomposition size
    pub expected_size: Option<Rat>,
}

struct MaskTable {
    blocks: usize,
    /// per candidate clique, the bitset of support members containing it
    masks: Vec<Vec<u64>>,
}

impl MaskTable {
    fn build(cliques: &[Clique], support: &[Vec<Clique>]) -> Self {
        let blocks = support.len().div_ceil(64).max(1);
        let mut masks = vec![vec![0u64; blocks]; cliques.len()];
        for (si, dec) in support.iter().enumerate() {
            for c in dec {
                if let Ok(idx) = cliques.binary_search(c) {
                    masks[idx][si / 64] |= 1 << (si % 64);
                }
            }
        }
        MaskTable { blocks, masks }
    }

    fn full(&self, count: usize) -> Vec<u64> {
        let mut m = vec![0u64; self.blocks];
        for i in 0..count {
            m[i / 64] |= 1 << (i % 64);
        }
        m
    }

    fn weight_of(&self, mask: &[u64], weights: &[Rat]) -> Rat {
        let mut total = Rat::zero();
        for (bi, &word) in mask.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                total += weights[bi * 64 + b];
                bits &= bits - 1;
            }
        }
        total
    }
}

/// Exact worst containment probability for every packing of size ≤ s_max,
/// by exhaustive packing enumeration over the host's cliques.
pub fn exact_spread(
    dist: &ExplicitDistribution,
    s_max: usize,
    packing_cap: u64,
) -> Result<SpreadReport> {
    let cliques = list_cliques(&dist.host, dist.q, DEFAULT_CLIQUE_CAP)?;
    let table = MaskTable::build(&cliques, &dist.support);

    // linearity identity: sum of singleton probabilities = expected |H|
    let mut singleton_sum = Rat::zero();
    let mut sigma_singleton = Rat::zero();
    let mut singleton_witness: Option<Clique> = None;
    for (i, c) in cliques.iter().enumerate() {
        let p = table.weight_of(&table.masks[i], &dist.weights);
        singleton_sum += p;
        if p > sigma_singleton {
            sigma_singleton = p;
            singleton_witness = Some(c.clone());
        }
    }
    let expected: Rat = dist
        .weights
        .iter()
        .zip(dist.support.iter())
        .map(|(w, d)| *w * rat(d.len() as i128, 1))
        .sum();
    if singleton_sum != expected {
        return Err(Error::Postcondition(format!(
            "linearity identity broken: Σ P(clique) = {singleton_sum}, E|H| = {expected}"
        )));
    }

    let mut worst: Vec<Option<(Rat, Vec<Clique>)>> = vec![None; s_max + 1];
    if s_max >= 1 {
        if let Some(w) = singleton_witness {
            worst[1] = Some((sigma_singleton, vec![w]));
        }
    }

    // depth-first enumeration of packings in canonical clique order
    struct Scan<'a> {
        cliques: &'a [Clique],
        table: &'a MaskTable,
        weights: &'a [Rat],
        n: usize,
        s_max: usize,
        cap: u64,
        visited: u64,
        worst: &'a mut Vec<Option<(Rat, Vec<Clique>)>>,
    }
    impl Scan<'_> {
        fn go(
            &mut self,
            start: usize,
            used: &mut Graph,
            stack: &mut Vec<usize>,
            mask: &[u64],
            parent_p: &Rat,
        ) -> Result<()> {
            if stack.len() == self.s_max {
                return Ok(());
            }
            'next: for i in start..self.cliques.len() {
                let c = &self.cliques[i];
                for (u, v) in c.edges() {
                    if used.has_edge(u, v) {
                        continue 'next;
                    }
                }
                self.visited += 1;
                if self.visited > self.cap {
                    return Err(Error::Resource(format!(
                        "packing scan exceeded cap {}",
                        self.cap
                    )));
                }
                let child_mask: Vec<u64> = mask
                    .iter()
                    .zip(self.table.masks[i].iter())
                    .map(|(a, b)| a & b)
                    .collect();
                let p = self.table.weight_of(&child_mask, self.weights);
                // containment probability is monotone under inclusion
                assert!(
                    p <= *parent_p,
                    "monotonicity broken at packing extension"
                );
                stack.push(i);
                let size = stack.len();
                let better = match &self.worst[size] {
                    None => true,
                    Some((best, _)) => p > *best,
                };
                if better {
                    let witness = stack.iter().map(|&j| self.cliques[j].clone()).collect();
                    self.worst[size] = Some((p, witness));
                }
                let mut next_used = used.clone();
                for (u, v) in c.edges() {
                    next_used = next_used.with_edge(u, v)?;
                }
                self.go(i + 1, &mut next_used, stack, &child_mask, &p)?;
                stack.pop();
            }
            Ok(())
        }
    }
    let full_mask = table.full(dist.support.len());
    let mut scan = Scan {
        cliques: &cliques,
        table: &table,
        weights: &dist.weights,
        n: dist.host.n(),
        s_max,
        cap: packing_cap,
        visited: 0,
        worst: &mut worst,
    };
    let one = rat(1, 1);
    let mut used = Graph::empty(scan.n);
    scan.go(0, &mut used, &mut Vec::new(), &full_mask, &one)?;

    let per_size: Vec<SizeWorst> = worst
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(size, entry)| match entry {
            Some((p, witness)) => SizeWorst { size, worst_p: p, ci_hi: None, witness },
            None => SizeWorst {
                size,
                worst_p: Rat::zero(),
                ci_hi: None,
                witness: Vec::new(),
            },
        })
        .collect();
    Ok(SpreadReport {
        mode: SpreadMode::Exact,
        s_max,
        per_size,
        sigma_singleton: Some(sigma_singleton),
        trials: None,
        probes: cliques.len(),
        expected_size: Some(expected),
    })
}

/// Frequency estimates with Wilson 95% intervals for each probe packing,
/// from samples produced by a seeded decomposition sampler.
pub fn empirical_spread(
    host: &Graph,
    q: usize,
    sampler: &mut dyn FnMut(u64) -> Result<Vec<Clique>>,
    trials: u64,
    probes: &[Vec<Clique>],
    seed: u64,
) -> Result<SpreadReport> {
    let mut samples = Vec::with_capacity(trials as usize);
    for t in 0..trials {
        samples.push(sampler(derive_seed(seed, "spread-sample", t))?);
    }
    empirical_spread_from_samples(host, q, &samples, probes)
}

/// As [`empirical_spread`], but over an already collected sample list.
pub fn empirical_spread_from_samples(
    host: &Graph,
    q: usize,
    samples: &[Vec<Clique>],
    probes: &[Vec<Clique>],
) -> Result<SpreadReport> {
    for probe in probes {
        let check = verify_packing(host, probe, q);
        if !check.ok {
            return Err(Error::InvalidParameter(format!(
                "probe rejected: {}",
                check.reason.unwrap_or_default()
            )));
        }
        if probe.is_empty() {
            return Err(Error::InvalidParameter("empty probe packing".into()));
        }
    }
    for s in samples {
        let check = verify_decomposition(host, s, q);
        if !check.ok {
            return Err(Error::InvalidParameter(format!(
                "sample is not a decomposition: {}",
                check.reason.unwrap_or_default()
            )));
        }
    }
    let trials = samples.len() as u64;
    let sorted_samples: Vec<Vec<&Clique>> = samples
        .iter()
        .map(|s| {
            let mut v: Vec<&Clique> = s.iter().collect();
            v.sort();
            v
        })
        .collect();
    let s_max = probes.iter().map(|p| p.len()).max().unwrap_or(0);
    let mut worst: Vec<Option<(Rat, f64, Vec<Clique>)>> = vec![None; s_max + 1];
    let mut sigma_singleton: Option<Rat> = None;
    for probe in probes {
        let hits = sorted_samples
            .iter()
            .filter(|s| probe.iter().all(|c| s.binary_search(&c).is_ok()))
            .count() as u64;
        let est = if trials == 0 {
            Rat::zero()
        } else {
            rat(hits as i128, trials as i128)
        };
        let (_, hi) = wilson_interval(hits, trials);
        let size = probe.len();
        let better = match &worst[size] {
            None => true,
            Some((best, _, _)) => est > *best,
        };
        if better {
            let prev_hi = worst[size].as_ref().map(|(_, h, _)| *h).unwrap_or(0.0);
            worst[size] = Some((est, hi.max(prev_hi), probe.clone()));
        } else if let Some(entry) = worst[size].as_mut() {
            entry.1 = entry.1.max(hi);
        }
        if size == 1 && sigma_singleton.as_ref().is_none_or(|s| est > *s) {
            sigma_singleton = Some(est);
        }
    }
    let per_size: Vec<SizeWorst> = worst
        .into_iter()
        .enumerate()
        .skip(1)
        .filter_map(|(size, entry)| {
            entry.map(|(p, hi, witness)| SizeWorst {
                size,
                worst_p: p,
                ci_hi: Some(hi),
                witness,
            })
        })
        .collect();
    Ok(SpreadReport {
        mode: SpreadMode::Empirical,
        s_max,
        per_size,
        sigma_singleton,
        trials: Some(trials),
        probes: probes.len(),
        expected_size: None,
    })
}

/// True iff every tested packing satisfies P(S ⊆ H) ≤ σ^|S| — exactly in
/// exact mode, by upper confidence bound in empirical mode.
pub fn check_sigma_spread(report: &SpreadReport, sigma: &Rat) -> bool {
    report.per_size.iter().all(|sw| {
        let budget = rat_pow(sigma, sw.size as u32);
        match report.mode {
            SpreadMode::Exact => sw.worst_p <= budget,
            SpreadMode::Empirical => {
                sw.ci_hi.unwrap_or(rat_to_f64(&sw.worst_p)) <= rat_to_f64(&budget)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{enumerate_decompositions, CoverInstance};

    fn sts7_support() -> (Graph, Vec<Vec<Clique>>) {
        let k7 = Graph::complete(7);
        let inst = CoverInstance::from_host(&k7, 3).unwrap();
        let out = enumerate_decompositions(&inst, None);
        assert_eq!(out.decompositions.len(), 30);
        (k7, out.decompositions)
    }

    #[test]
    fn uniform_sts7_exact_singleton() {
        let (k7, support) = sts7_support();
        let dist = ExplicitDistribution::uniform(k7, 3, support).unwrap();
        let report = exact_spread(&dist, 1, DEFAULT_PACKING_CAP).unwrap();
        assert_eq!(report.sigma_singleton, Some(rat(1, 5)));
        assert_eq!(report.expected_size, Some(rat(7, 1)));
        assert!(check_sigma_spread(&report, &rat(1, 5)));
        assert!(!check_sigma_spread(&report, &rat(1, 6)));
        assert!(check_sigma_spread(&report, &rat(1, 1)));
    }

    #[test]
    fn point_mass_exact() {
        let (k7, support) = sts7_support();
        let dist =
            ExplicitDistribution::uniform(k7, 3, vec![support[0].clone()]).unwrap();
        let report = exact_spread(&dist, 1, DEFAULT_PACKING_CAP).unwrap();
        assert_eq!(report.sigma_singleton, Some(rat(1, 1)));
    }

    #[test]
    fn full_size_scan_on_sts7() {
        let (k7, support) = sts7_support();
        let dist = ExplicitDistribution::uniform(k7, 3, support).unwrap();
        let report = exact_spread(&dist, 7, DEFAULT_PACKING_CAP).unwrap();
        // a full system is a packing of size 7 contained with probability 1/30
        let top = report.per_size.iter().find(|s| s.size == 7).unwrap();
        assert_eq!(top.worst_p, rat(1, 30));
        // sizes 1..=7 all reported
        assert_eq!(report.per_size.len(), 7);
        // at size 1 the maximum ratio is 1/5
        assert_eq!(report.per_size[0].worst_p, rat(1, 5));
    }

    #[test]
    fn weights_must_sum_to_one() {
        let (k7, support) = sts7_support();
        let bad = vec![rat(1, 30); 29];
        assert!(ExplicitDistribution::new(
            k7,
            3,
            support[..29].to_vec(),
            bad
        )
        .is_err());
    }

    #[test]
    fn empirical_uniform_sampler_close_to_one_fifth() {
        let (k7, support) = sts7_support();
        let probe = vec![support[0][0].clone()];
        let mut sampler = |s: u64| -> Result<Vec<Clique>> {
            Ok(support[(s % 30) as usize].clone())
        };
        // the derived seeds are uniform enough over residues mod 30
        let report =
            empirical_spread(&k7, 3, &mut sampler, 10_000, &[probe], 99).unwrap();
        let est = rat_to_f64(report.sigma_singleton.as_ref().unwrap());
        assert!((0.18..=0.22).contains(&est), "estimate {est}");
        assert!(report.per_size[0].ci_hi.unwrap() < 0.25);
    }

    #[test]
    fn point_mass_sampler_hits_own_singleton() {
        let (k7, support) = sts7_support();
        let fixed = support[3].clone();
        let probe = vec![fixed[0].clone()];
        let mut sampler = |_s: u64| -> Result<Vec<Clique>> { Ok(fixed.clone()) };
        let report = empirical_spread(&k7, 3, &mut sampler, 200, &[probe], 1).unwrap();
        assert_eq!(report.sigma_singleton, Some(rat(1, 1)));
    }

    #[test]
    fn bad_probe_rejected() {
        let (k7, support) = sts7_support();
        let overlapping = vec![
            Clique::new(vec![0, 1, 2]).unwrap(),
            Clique::new(vec![0, 1, 3]).unwrap(),
        ];
        let samples = vec![support[0].clone()];
        assert!(matches!(
            empirical_spread_from_samples(&k7, 3, &samples, &[overlapping]),
            Err(Error::InvalidParameter(_))
        ));
    }
}
