//! Gyrogroup computation and verification.
//!
//! - [`algebra`]: the generic [`Gyrogroup`] trait, derived operations
//!   (gyration, coaddition, cosubtraction) and the identity suite.
//! - [`einstein`]: Einstein velocity addition on the ball of radius `c`.
//! - [`table`]: finite gyrogroups as Cayley tables, with exhaustive
//!   verification and a text file format.
//! - [`subgyro`]: subgyrogroups, L- and strong subgyrogroups, left cosets.
//! - [`subset`]: subset arithmetic `A ⊕ B`, `⊖A` and the inclusion chains
//!   that hold for gyr-invariant subsets.

pub mod algebra;
pub mod einstein;
pub mod set;
pub mod subgyro;
pub mod subset;
pub mod table;

pub use algebra::{coadd, coadd_alt, cosub, gyr_apply, identity_suite, Gyrogroup, IdentityReport, Law};
pub use set::ElementSet;
pub use table::{from_group, verify_table, FiniteGyrogroup, TableVerdict};
