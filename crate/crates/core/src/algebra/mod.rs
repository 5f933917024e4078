//! Integer linear algebra, finitely generated abelian groups, finite group
//! tables and presentations — the algebraic backend for everything upstairs.

pub mod abelian;
pub mod group;
pub mod homology;
pub mod matrix;
pub mod presentation;
pub mod snf;

pub use abelian::FGAbelianGroup;
pub use group::{groups_isomorphic, FiniteGroup, GroupError, GroupHom, IsoDecision};
pub use homology::{
    homology_basis, induced_iso_certified, induced_on_homology, is_chain_map, ChainComplex,
    ChainError, Coefficients, HomologyBasis,
};
pub use matrix::IntMatrix;
pub use presentation::{classify_homs, free_reduce, invert_word, GroupPresentation};
pub use snf::{rank_and_divisors, smith_normal_form, SmithDecomposition};
