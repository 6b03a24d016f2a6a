//! Pure algorithmic core for subgraph expectation thresholds in `G(n, p)`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! filesystem, threads or text formats lives in the companion `sgthresh`
//! crate; this crate exposes the arithmetic and combinatorial substrate:
//!
//! * [`graph`]: fixed-capacity labelled graphs with bit-row adjacency.
//! * [`canon`]: canonical forms and automorphism counting.
//! * [`embed`]: embedding counting and generic containment search.
//! * [`census`]: isomorphism-class census of edge-induced subgraphs.
//! * [`thresholds`]: the expectation threshold and its modified variant.
//! * [`spread`]: spread certificates for the uniform measure on copies.
//! * [`mc`]: `G(n, p)` sampling, containment oracles, exact and Monte Carlo
//!   critical probabilities.
//! * [`families`]: structured families and their analytic censuses.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod canon;
pub mod census;
pub mod count;
pub mod embed;
mod error;
pub mod families;
pub mod graph;
pub mod mc;
pub mod rng;
pub mod spread;
pub mod thresholds;

pub use canon::{automorphism_count, canonical_form, CanonicalForm};
pub use census::{copies_in_complete, subgraph_census, CensusOptions, ClassCounts, SubgraphClass};
pub use count::LogScaledCount;
pub use embed::count_embeddings;
pub use error::{Error, ErrorKind, Result};
pub use graph::{Edge, Graph, MAX_ORDER};
pub use thresholds::{compute_thresholds, ThresholdReport};
