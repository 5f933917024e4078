//! Finite simplicial-set models of group actions.
//!
//! The crate builds Borel constructions `(X × EG) / G` over finite simplicial
//! complexes, computes equivariant (co)homology and fundamental groups from
//! them, and certifies orbispace charts by comparing local quotient models.
//! Everything is exact: chain-level computations run over the integers, group
//! identifications are explicit homomorphisms, and every isomorphism claim is
//! backed by a checkable witness.

pub mod algebra;
pub mod borel;
pub mod orbispace;
pub mod pi1;
pub mod simplicial;

pub use algebra::{FGAbelianGroup, FiniteGroup};
pub use orbispace::{make_global_quotient, Orbispace, OrbispaceError};
pub use simplicial::{OrderedComplex, SimplicialSet};
