//! Exact filtered homology of `Z_k`-equivariant generating functions for balls
//! and lens spaces, squeezing verdicts derived from it, and numerical checks of
//! the contact embeddings behind the construction.

pub mod chain;
pub mod cli;
pub mod contact_geo;
pub mod error;
pub mod exact;
pub mod group_ring;
pub mod morse_bott;
pub mod oracles;
pub mod rational;
pub mod squeeze;

pub use error::{Error, Result};
