//! Finite groups as multiplication tables, their enhanced power graphs, and
//! exhaustive checks of the neighborhood invariant `n_G` on p-groups.
//!
//! ```
//! use epg_core::{constructions::abelian, epg::n_g};
//!
//! let g = abelian(2, &[2, 1]).unwrap(); // C_4 x C_2
//! assert_eq!(n_g(&g).unwrap(), 6);
//! ```

pub mod catalog;
pub mod constructions;
pub mod epg;
pub mod group;
pub mod morphism;
pub mod presentation;
pub mod spec;
pub mod verify;

pub use epg::{build_epg, EpgGraph};
pub use group::{Element, GroupError, GroupTable};
pub use presentation::{parse_presentation, realize, Presentation};
pub use spec::{parse_spec, GroupSpec};
pub use verify::{ClaimId, Status, VerdictReport};
