//! The binomial random q-uniform hypergraph: every q-subset of [n] included
//! independently with probability p.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{list_cliques, Clique, Graph, DEFAULT_CLIQUE_CAP};

#[derive(Clone, Debug)]
pub struct RandomModel {
    pub n: usize,
    pub q: usize,
    pub p: f64,
    pub seed: u64,
}

/// Samples the model: q-subsets are visited in lexicographic order and kept
/// with probability p, so the output is deterministic in the seed.
pub fn sample_random_hypergraph(model: &RandomModel) -> Result<Vec<Clique>> {
    if !(0.0..=1.0).contains(&model.p) {
        return Err(Error::InvalidParameter(format!(
            "p must be in [0,1], got {}",
            model.p
        )));
    }
    if model.q < 2 || model.q > model.n {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= q <= n, got q={} n={}",
            model.q, model.n
        )));
    }
    let all = list_cliques(&Graph::complete(model.n), model.q, DEFAULT_CLIQUE_CAP)?;
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    Ok(all
        .into_iter()
        .filter(|_| rng.gen_bool(model.p))
        .collect())
}
