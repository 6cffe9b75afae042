//! Exact computations around graph magnitude homology.
//!
//! * [`graph`]: parsing, distances and the pawful / short-cycle predicates.
//! * [`magnitude`]: `#G` as a reduced rational function and as a power series.
//! * [`mag_homology`]: magnitude chain complexes and their homology.
//! * [`ai_complex`]: the simplicial pairs `K_ℓ(a,b) ⊇ K'_ℓ(a,b)`.
//! * [`morse`]: matchings on face posets, acyclicity and critical cells.
//! * [`matching`]: S-structures and the insertion/deletion matching built
//!   from them.
//!
//! Vertices are 0-based throughout the API; all text formats are 1-based.

pub mod ai_complex;
pub mod chain;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod mag_homology;
pub mod magnitude;
pub mod matching;
pub mod morse;
pub mod poly;
pub mod snf;

pub use ai_complex::{Simplex, SimplicialPair};
pub use num_bigint;

pub use chain::{ChainComplex, HomologyGroup};
pub use error::{Error, GraphError, Result};
pub use graph::{parse_graph, Graph, GraphFormat};
pub use mag_homology::{HomologyOptions, MHTable, Sequence};
pub use matching::{Precedence, SStructure};
pub use morse::{FacePoset, Matching};
pub use poly::{IntPoly, RatFunc};
