//! Cohomology tables of vector bundles on projective space: homogeneous
//! bundles via Bott's theorem, Künneth pushforwards, regularity and
//! coregularity indices, tensor-product bounds, Boij-Söderberg chain
//! decompositions and a few exact checks built on top.
//!
//! ```
//! use river_banks::{CohomologyTable, GenPartition};
//!
//! let q: GenPartition = "1,0".parse().unwrap();
//! let t = CohomologyTable::bott(q);
//! // h^0(P^2, Q) = 3
//! assert_eq!(t.entry_int(0, 0).unwrap(), 3.into());
//! ```

pub mod boij_soderberg;
pub mod bott;
pub mod bounds;
pub mod error;
pub mod exterior;
pub mod golden;
pub mod kunneth;
pub mod parallel;
pub mod partitions;
pub mod poly;
pub mod tables;

pub use error::{Error, Result};
pub use parallel::Execution;
pub use partitions::GenPartition;
pub use tables::{CohomologyTable, ColRange, Extent, Index, IndexValue, RegularityProfile};
