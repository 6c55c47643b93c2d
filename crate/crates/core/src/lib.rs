//! Commutator calculus, class-two normal forms, finite groups, and
//! certificate-backed dominion computations.
//!
//! The crate is organised bottom-up:
//!
//! - [`word`]: reduced free-group words and the text grammar used everywhere.
//! - [`nil2`]: normal forms in class-two nilpotent groups and their finite
//!   realizations, plus a matrix model used as an independent check.
//! - [`fingroup`]: Cayley-table groups, subgroups, quotients, homomorphism
//!   enumeration and exhaustive identity checking.
//! - [`dominion`]: equalizers and the dominion of a subgroup relative to a
//!   finite family of target groups.
//! - [`certify`]: replayable proof chains showing that specific elements lie
//!   in a dominion.
//! - [`cli`]: the `domkit` command-line front end.

pub mod certify;
pub mod cli;
pub mod dominion;
pub mod error;
pub mod fingroup;
pub mod nil2;
pub mod word;

pub use error::{Error, ParseError, Result};
pub use fingroup::{ElementSet, FiniteGroup, Homomorphism, Presentation};
pub use nil2::{Nil2Element, Nil2Params};
pub use word::{GeneratorId, Word};
