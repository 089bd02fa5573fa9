//! Exact-arithmetic workbench for class-truncated prounipotent completions of
//! finitely presented (pro-p) groups.
//!
//! The crate is organized around five layers:
//!
//! * [`words`] — free-group words, presentation files, simplicial presentation data
//! * [`linalg`] — exact rational/integer linear algebra (rank, kernels, Smith normal form)
//! * [`series`] — degree-truncated free associative series, Magnus expansion,
//!   Zassenhaus filtration indices, finite dimension quotients
//! * [`lie`] — graded free Lie algebras on weighted generators (Lyndon bases),
//!   BCH multiplication, induced homomorphisms, graded subspaces
//! * [`crossed`] — the pre-crossed/crossed module of a presentation, abelianizations,
//!   and the four-corner comparison diagram with its second homotopy object
//! * [`analysis`] — graded torsion scanners (quasirationality / p-regularity) and the
//!   one-relator cd=2 evidence pipeline
//!
//! All arithmetic is exact; there is no floating point anywhere in the crate.

pub mod analysis;
pub mod crossed;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod sampling;
pub mod series;
pub mod words;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
