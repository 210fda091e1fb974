//! Two-generated p-groups of nilpotence class two: construction from
//! classification tuples, canonical tuples of groups given by tables, and the
//! modular group-algebra invariants (Jennings dimensions, squaring-chain
//! kernel sizes) that separate them.

pub mod algebra;
pub mod blackbox;
pub mod canon;
pub mod cli;
pub mod error;
pub mod group;
pub mod invariants;
pub mod params;

pub use blackbox::{BlackBoxGroup, Subgroup};
pub use error::{Error, Result};
pub use group::{Elem, PGroup2};
pub use params::{enumerate_admissible, is_admissible, region, Tuple5};
