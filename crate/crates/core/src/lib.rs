//! Exact computations on the tower of finite unramified coverings of a closed
//! orientable surface of genus at least two.
//!
//! Coverings are finite-index subgroups of the surface group, stored as
//! pointed coset tables. On top of that sit characteristic cores and
//! homology covers, the virtual automorphism group, an explicit genus-one
//! model over `GL(2, Q)`, and an exact-rational ledger for Hodge and
//! determinant bundle classes across the tower.

pub mod abelian;
pub mod budget;
pub mod characteristic;
pub mod coset_enum;
pub mod cycle;
pub mod enumerate;
pub mod error;
pub mod genus_one;
pub mod io;
pub mod ledger;
pub mod presentation;
pub mod subgroup;
pub mod vaut;
pub mod word;

pub use budget::Budget;
pub use error::{Error, Result};
pub use presentation::{Embedding, GenericPresentation, Presentation, SurfacePresentation};
pub use subgroup::{CosetAction, CoveringArrow, DeckGroup, Subgroup};
pub use word::{free_reduce, Letter, Word};
