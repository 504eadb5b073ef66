//! Unrefinable integer partitions: enumeration, closed-form construction,
//! bijective generation, exact counting and cross-validation.
//!
//! A partition into distinct parts is *unrefinable* when no part can be split
//! into two integers that are not already parts, and *maximal unrefinable*
//! when its largest part is the largest possible among unrefinable partitions
//! of the same integer. Writing the integer as `T(n) - d` with
//! `T(n) = n(n+1)/2` and `0 <= d <= n-1`, the maximal partitions follow a
//! rigid structure which this crate implements three independent ways:
//!
//! - [`enumerate`]: brute-force and pruned search generators, the ground truth;
//! - [`construct`]: direct construction from fixed cases and two parametrised
//!   removal-pattern families;
//! - [`bijection`]: generation through a reduced representation, complemented
//!   into plain distinct-part partitions (and odd ones via part doubling).
//!
//! [`verify`] cross-checks the three methods, the largest-part bounds, the
//! counting formulas and the per-element invariants, and compares against
//! external sequence data.

pub mod bijection;
pub mod construct;
pub mod enumerate;
pub mod partition;
pub mod verify;

pub use partition::{
    area_of, canonical_pi, triangular, triangular_form, Area, DeltaRecord, MissingSet, Partition,
    RefinabilityWitness, TriangularForm,
};
