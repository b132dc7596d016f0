//! Decision toolkit for finite monoids.
//!
//! The carrier of everything here is a finite monoid presented by its full
//! multiplication table ([`monoid::Monoid`]), with subsets held as bitsets
//! ([`pointset::PointSet`]). On top of that sit:
//!
//! - [`green`]: Green's preorders and relations, aperiodicity, ideals, and
//!   the structural predicates built from them.
//! - [`expansion`]: the cut expansion, its iterated levels, and the
//!   projection of stabilizers back down to the base.
//! - [`pointlikes`]: the closure computing every set of elements that no
//!   aperiodic quotient can tell apart, with provenance per member.
//! - [`stable_pairs`]: deciders for pairs `(Y, N)` where `N` stabilizes `Y`
//!   in the relevant sense, with machine-checkable certificates.
//! - [`triples`]: deciders for triples `(A, B, C)` classified into three
//!   certificate cases.
//! - [`enumeration`]: exhaustive small-monoid enumeration and the witness
//!   library built from it.
//! - [`inevitability`]: labelled graphs, relational morphisms, and witness
//!   sweeps that try to refute what the deciders accepted. The two sides are
//!   independent implementations, so agreement between them is evidence that
//!   both are right.
//! - [`json`]: the wire formats for monoids and labelled graphs.
//!
//! Deciders return verdicts together with certificates that can be re-checked
//! from scratch; the witness machinery never trusts those certificates and
//! recomputes everything from the raw tables.

pub mod enumeration;
pub mod error;
pub mod expansion;
pub mod families;
pub mod green;
pub mod inevitability;
pub mod json;
pub mod monoid;
pub mod pointlikes;
pub mod pointset;
pub mod stable_pairs;
pub mod triples;

mod cliques;

pub use error::{Error, Result};
pub use monoid::{ElementId, Monoid};
pub use pointset::PointSet;
