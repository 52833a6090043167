//! Search for dense graphs of girth at least five.
//!
//! The crate provides girth-constrained graph editing ([`graph`]), a
//! randomized fill-and-perturb local search ([`local_search`]), the up/down
//! propagation pipeline over a range of orders ([`pipeline`]), canonical
//! forms for isomorphism-free storage ([`canon`]), graph6 files ([`io`]) and
//! an exact solver for small orders ([`oracle`]).

pub mod canon;
pub mod cli;
pub mod error;
pub mod graph;
pub mod io;
mod legal_cache;
pub mod local_search;
pub mod oracle;
pub mod pipeline;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use error::{Error, Result};
pub use graph::{Graph, VertexPair, DEFAULT_GIRTH, MAX_ORDER};
pub use legal_cache::LegalEdgeCache;
pub use local_search::{local_search, SearchParams, SearchResult};
pub use pipeline::{compute_lower_bounds, BestStore, RunConfig};
