//! Exact-arithmetic kernel for the nil-blob algebra, the extended
//! nil-blob algebra, and the classical blob algebra, together with the
//! type A~1 alcove-path combinatorics realizing these algebras as
//! idempotent truncations.
//!
//! The basis objects are marked planar matchings ([`diagram`]); elements
//! are exact rational combinations with three multiplication rule sets
//! ([`algebra`]); the presented algebras live in [`words`]; Jucys-Murphy
//! families in [`jm`]; lattice-path combinatorics, region factorizations
//! and the truncated-algebra generator words in [`alcove`] and
//! [`truncation`]. All values are immutable after construction; the only
//! mutable state is the per-[`algebra::Engine`] memo table.

pub mod algebra;
pub mod alcove;
pub mod ascii;
pub mod diagram;
pub mod jm;
pub mod perm;
pub mod scalar;
pub mod truncation;
pub mod verify;
pub mod words;

pub use algebra::{AlgebraElement, Engine, ExtAlgebraElement};
pub use diagram::{BlobDiagram, HalfDiagram, Point};
pub use scalar::Scalar;
pub use words::{GeneratorWord, NormalTable};
