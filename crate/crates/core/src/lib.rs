//! Multifraction reduction in Artin-Tits monoids and groups.

pub mod dihedral;
pub mod error;
pub mod monoid;
pub mod multifraction;
pub mod presentation;
pub mod property_h;
pub mod reversing;
pub mod solver;
pub mod split;
pub mod trace;
pub mod word;

pub use error::{Error, Result};
pub use monoid::{ComplementKind, Monoid, MonoidElement, Side};
pub use presentation::ArtinPresentation;
pub use trace::{ReductionTrace, TraceRecord, TraceStep};
pub use word::{Gen, Letter, PositiveWord, Sign, SignedWord};
