//! Mod-2 cohomology rings of finite 2-groups.
//!
//! The pipeline runs from a power–commutator presentation of a group, through
//! a minimal projective resolution over F₂G, to a finite presentation of the
//! cohomology ring truncated at some degree. Filter-regular parameters and a
//! completion test then certify that the truncation is the whole ring, after
//! which depth, a-invariants and regularity are read off by commutative
//! algebra.
//!
//! ```ignore
//! use modcoh::{fixtures, cohomring::CohomologyBuilder};
//!
//! let g = fixtures::group("d8")?;
//! let mut b = CohomologyBuilder::new(&g);
//! b.extend_to(4)?;
//! println!("{}", b.presentation().summary());
//! # Ok::<(), modcoh::Error>(())
//! ```

pub mod batch;
pub mod cohomring;
pub mod completion;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod grobner;
pub mod invariants;
pub mod params;
pub mod group;
pub mod poly;
pub mod resolution;

pub use error::{Error, Result};

#[cfg(test)]
extern crate self as modcoh;

#[cfg(test)]
#[path = "../tests/common/oracle.rs"]
mod oracle;
