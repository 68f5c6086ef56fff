//! Exact rational realizations: ordinal embeddings, monotone piecewise
//! affine maps, alphabet systems, nested partitions and sharply
//! increasing sequences.

pub mod alphabet;
pub mod embed;
pub mod gpp;
pub mod interval;
pub mod mono;
pub mod partition;
pub mod sharp;

pub use alphabet::{ladder_z, realize_zn, realize_zz, AlphabetSystem, Realized};
pub use embed::Embedding;
pub use gpp::g_doubleprime;
pub use interval::{convex_image, convex_overlap, convex_prec, RatInterval};
pub use mono::{Affine, MonoMap};
pub use partition::{node_width, partition_node};
pub use sharp::{is_sharply_increasing, sharp_generator, EmbeddingSeq, OrdinalSeq, SharpSeq};
