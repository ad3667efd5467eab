//! Divisor class groups, canonical classes and Gorenstein tests for toric
//! face rings of multicomplexes and discrete polymatroids.
//!
//! Two independent routes are provided:
//!
//! * the combinatorial route works from the ground set rank function:
//!   [`rank_engine`] evaluates ranks, [`structure`] finds the closed and
//!   inseparable subsets, and [`divisor`] turns them into a presentation of
//!   the class group together with the canonical class;
//! * the convex route in [`cone`] enumerates the facets of the cone over the
//!   semigroup generators with exact arithmetic and reads the same data off
//!   the support forms.
//!
//! [`families`] contains constructors and closed-form predictions for the
//! classical families (boxes, bounded-degree simplices, Veronese type and
//! transversal polymatroids).

pub mod cone;
pub mod divisor;
pub mod error;
pub mod families;
pub mod foundation;
pub mod rank_engine;
pub mod structure;

pub use error::{Error, Result};
pub use foundation::{gcd_of, quotient_by_relation, GroundSubset, GroupInvariants};
pub use rank_engine::{LatticeVector, Polymatroid, Representation};
