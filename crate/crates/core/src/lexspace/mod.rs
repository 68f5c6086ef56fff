//! Elements of lexicographic powers `X^alpha` described by finitely many
//! segments, with exact comparison and the concatenation algebra.

mod elem;
mod seq;

pub use elem::*;
pub use seq::{len_add, len_sub, minimal_period, Payload, Segment, Seq};
