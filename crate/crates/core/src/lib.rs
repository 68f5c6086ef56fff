//! Exact computation with ordinals below epsilon-zero, lexicographic powers
//! of linear orders indexed by ordinals, additive trees, and explicit order
//! isomorphisms realized over the rationals.

pub mod analytic;
pub mod error;
pub mod isomaps;
pub mod ordinal;
pub mod lexspace;
pub mod rat;
pub mod seqmaps;
pub mod treekit;
pub mod zerodim;

pub use error::{Error, Result};
pub use ordinal::{OrdLen, Ordinal};
pub use lexspace::{BaseKind, BaseOrder, LexElem, Payload, Segment, Seq, Sign, Value};
pub use rat::Rat;
