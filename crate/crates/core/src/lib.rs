//! Exact Schubert calculus.
//!
//! The crate covers the cohomology ring of the Grassmannian `G(m,n)` of
//! `m`-planes in projective `n`-space (Pieri, Littlewood-Richardson,
//! Giambelli, duality, degrees), Schubert polynomials of permutations by
//! divided differences and by the transition recursion, and the Schubert
//! cell decomposition of the Grassmannian over exact fields.
//!
//! All integer arithmetic is arbitrary precision.

pub mod cells;
pub mod combinatorics;
pub mod error;
pub mod grassmann;
pub mod lrcalc;
pub mod polyring;
pub mod schubpoly;

pub use combinatorics::{BoxPartition, GrassContext, JumpSequence, Partition};
pub use error::{Error, Result};
pub use grassmann::GrassClass;
pub use polyring::SparsePoly;
pub use schubpoly::Permutation;
