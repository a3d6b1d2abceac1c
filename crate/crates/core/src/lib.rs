//! Exact Stanley depth of squarefree monomial ideals.
//!
//! Clutters stand for their edge ideals. The crate builds the characteristic
//! poset of an ideal, searches interval partitions for the exact Stanley
//! depth with a checkable certificate, evaluates closed-form upper bounds for
//! complete k-partite clutters, and decomposes uniform clutters into disjoint
//! unit vertex covers.

pub mod bounds;
pub mod clutter;
pub mod decomposition;
pub mod error;
pub mod io;
pub mod oracle;
pub mod poset;
pub mod subset;

pub use bounds::{bounds_report, BoundsReport, Rational};
pub use clutter::{complete_kpartite, Clutter, CompleteKPartite, Minor, VertexId, VertexPartition};
pub use decomposition::{decompose_dpartition, find_unit_cover, verify_dpartition, DPartition};
pub use error::{Error, Result};
pub use poset::{
    build_poset, exact_sdepth, exact_sdepth_with, sdepth_at_least, sdepth_at_least_with,
    validate_partition, CharacteristicPoset, Interval, IntervalPartition, SdepthResult,
    SearchConfig,
};
