//! Constructive machinery for clique decompositions of graphs at desk scale:
//! explicit rooted boosters, omni-absorbers with booster replacement,
//! resampling-based spread embeddings, semi-random nibble matching with
//! reserves, exact decomposition solving, and spread measurement.

pub mod absorber;
pub mod booster;
pub mod embed;
pub mod error;
pub mod expt;
pub mod graph;
pub mod hypergraph;
pub mod lll;
pub mod model;
pub mod nibble;
pub mod pipeline;
pub mod rational;
pub mod seed;
pub mod solver;
pub mod spread;
pub mod stats;

pub use error::{Error, Result};
