//! The Borel construction: free resolutions, homotopy quotients, and the
//! maps they induce.

pub mod bar;
pub mod construction;
pub mod induced;

pub use bar::{alternating_count, bar_eg, classifying_space, FreeResolutionSpace};
pub use construction::{
    borel_construction, equivariant_cohomology, BorelError, BorelPresentation, Graded,
};
pub use induced::{induced_borel_map, resolution_map, BorelMapPair};
