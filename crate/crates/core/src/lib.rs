pub mod bits;
pub mod semigroup;
pub mod semilattice;
pub mod filters;
pub mod partial;
pub mod regular;
pub mod faithfulness;
pub mod constructions;
pub mod corpus;
