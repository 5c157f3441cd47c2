//! Generator-enriched lattices and their minor posets.

pub mod corpus;
pub mod error;
pub mod genset;
pub mod incidence;
pub mod ingestion;
pub mod lattice;
pub mod minor_poset;
pub mod minors;
pub mod poly;
pub mod poset;
pub mod properties;
pub mod words;
pub mod zipping;

pub use error::{Error, Result};
pub use genset::GenSet;
pub use ingestion::{load, save, LatticeSpec};
pub use lattice::{ElementId, GenLattice, SubLattice};
pub use minor_poset::{product_law, rank_gen, MinorPoset, ProductKind, RankGenMethod};
pub use minors::{Minor, MinorTable, DEFAULT_BUDGET};
pub use poly::UniPoly;
pub use poset::{FinitePoset, StructureReport};
pub use properties::{ForbiddenPattern, Property, PropertyReport};
pub use words::{ab_index, cd_compare, cd_index, AbPolynomial, CdPolynomial};
pub use zipping::{canonical_strong_map, StrongMap};
