//! Computational combinatorial group theory engine.
//!
//! Building blocks:
//!
//! * [`free_groups`] — reduced words, Stallings foldings, coset
//!   representatives;
//! * [`fox_magnus`] — derived-series membership via Fox derivatives and
//!   an independent wreath-product oracle;
//! * [`group_kernel`] — permutation groups, quotients, direct products
//!   behind one oracle trait;
//! * [`filtration`] — groups filtered by descending chains of normal
//!   subgroups, with axiom and substructure checkers;
//! * [`extensions`] — HNN extensions with Britton reduction and
//!   amalgamated free products with transversal normal forms;
//! * [`verify`] — named, seeded scenarios binding everything together.

pub mod extensions;
pub mod filtration;
pub mod fox_magnus;
pub mod free_groups;
pub mod group_kernel;
pub mod report;
pub mod rng;
pub mod verify;
