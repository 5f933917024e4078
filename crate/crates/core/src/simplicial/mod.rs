//! Truncated simplicial sets: cells with degeneracy words, ordered
//! complexes and their nerves, maps, group actions, products, fibers, and
//! normalized chains.

pub mod action;
pub mod chains;
pub mod complex;
pub mod fiber;
pub mod map;
pub mod product;
pub mod sset;

pub use action::{
    nerve_action, quotient_by_action, restrict_action, ActionError, Quotient, SimplicialAction,
};
pub use chains::{chain_complex, chain_map, cohomology_of, homology_of, is_acyclic_through};
pub use complex::{ComplexError, NerveModel, OrderedComplex};
pub use fiber::{fib_pi0, simplicial_fiber, FiberError, FiberwisePi0};
pub use map::{disjoint_union, preimage, star_neighborhood, sub_sset, MapError, SSetMap, SubSSet};
pub use product::{product, product_map, ProductSSet};
pub use sset::{Cell, Simplex, SimplicialSet, SsetError};
