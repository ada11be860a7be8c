pub mod congruence;
pub mod constructions;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod geometry;
pub mod io;
pub mod iso;
pub mod lamps;
pub mod lattice;
pub mod poset;
pub mod properties;
pub mod render;
pub mod verify;

pub use congruence::{con_lattice, jir_con_poset, principal_congruence, ConLattice, Congruence};
pub use error::{Error, Result};
pub use iso::{canonical_form, is_isomorphic, poset_isomorphism, CanonicalForm};
pub use lattice::{downset_lattice, FiniteLattice, IrreducibleSets};
pub use poset::FinitePoset;
