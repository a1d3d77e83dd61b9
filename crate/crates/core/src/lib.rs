//! Degenerations of equioriented type-A quiver representations, their
//! symplectic and orthogonal variants, and the combinatorics of the
//! symplectic PBW locus.

pub mod coxeter;
pub mod degen;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod pbw;
pub mod error;
pub mod render;
pub mod rep;
pub mod symdegen;

pub use error::{Error, RankInequality, Result};
pub use rep::{DimVector, Rank, RankSequence, Representation, Segment};
