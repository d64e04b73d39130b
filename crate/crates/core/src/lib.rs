//! Exact computations in the category of atomic monoids with
//! atom-preserving homomorphisms.
//!
//! * [`monoid`]: finite monoids given by multiplication tables, their units,
//!   atoms and cancellation predicates, and homomorphisms between them.
//! * [`lenset`]: eventually periodic subsets of ℕ and the length sets,
//!   systems of length sets and unions of length sets of finite monoids.
//! * [`freeprod`]: the coproduct (free product) of a finite family, on
//!   reduced words, with its length-set formulas.
//! * [`atomprod`]: the product, i.e. the submonoid of the direct product
//!   generated by all-unit and all-atom tuples.
//! * [`univ`]: initial and terminal objects, equalizers, pullbacks,
//!   coequalizers and pushout presentations.
//! * [`verify`]: formula-versus-oracle suites used by the acceptance tests
//!   and the command-line `verify` command.

pub mod atomprod;
pub mod error;
pub mod fixtures;
pub mod freeprod;
pub mod lenset;
pub mod monoid;
pub mod univ;
pub mod verify;

pub use error::{Error, Result};
