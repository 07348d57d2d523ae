//! Turyn-type sequences: verification, canonical forms, exhaustive
//! classification, the boundary-seeded search for large lengths, and the
//! construction of base sequences and T-sequences.

pub mod binseq;
pub mod canon;
pub mod cli;
pub mod codec;
pub mod config;
pub mod constructions;
pub mod enumerate;
mod frontier;
pub mod group;
pub mod quad;
pub mod search;

pub mod error;

pub use binseq::{BinarySeq, NafProfile, Sequence, Sign, TernarySeq, Transform};
pub use canon::{canonicalize, equivalent};
pub use codec::{decode, encode, HexCode, HexForm};
pub use error::{Error, Result};
pub use group::{g_apply, g_mul, orbit, GroupElement};
pub use quad::TurynQuad;
