//! Orbispace presentations and the apparatus built on them: stabilizers,
//! fiber certificates, local charts, map localization, vertical-map
//! classification, exact-sequence bookkeeping, groupoids, and comparison
//! reports.

pub mod chart;
pub mod classify;
pub mod compare;
pub mod fiber_checks;
pub mod groupoid;
pub mod les;

pub use chart::{extract_chart, localize_map, ChartReport, LocalizedMap};
pub use classify::{classify_vertical_maps, VerticalMapClasses};
pub use compare::{
    compare_orbispaces, CompareLine, CompareReport, ComparisonSide, SymbolicOrbispace, Verdict,
};
pub use fiber_checks::{
    fiber_report, good_neighborhood_check, induced_pi1_hom, FiberCertificate,
    NeighborhoodCertificate,
};
pub use groupoid::{action_groupoid, groupoid_equivalent, ActionGroupoid, GroupoidComparison};
pub use les::{les_solve, GroupTag, LesEntry, LesSolution};

use crate::algebra::{FiniteGroup, GroupError, GroupHom};
use crate::borel::{borel_construction, BorelError, BorelPresentation};
use crate::pi1::{analyze_pi1, Pi1Error, DEFAULT_COSET_BOUND, DEFAULT_IDENTIFY_BOUND};
use crate::simplicial::{
    simplicial_fiber, ActionError, Cell, FiberError, MapError, NerveModel, OrderedComplex,
    SSetMap, SimplicialSet,
};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum OrbispaceError {
    #[error("no vertex {0} in the base space")]
    NoSuchVertex(usize),
    #[error("the vertex action does not act simplicially: {0}")]
    ActionNotSimplicial(ActionError),
    #[error("the projection misses base vertex {0}")]
    ProjectionNotSurjective(usize),
    #[error("the projection is not simplicial: {0}")]
    InvalidProjection(#[from] MapError),
    #[error("this operation needs a global-quotient presentation")]
    ExplicitFormUnsupported,
    #[error("the fundamental group involved is infinite or not identified")]
    UnresolvedPi1,
    #[error("certification failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error(transparent)]
    Borel(#[from] BorelError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A quotient `[X/G]` kept together with everything it was built from: the
/// complex, the vertex action, the nerve the action runs on, and the Borel
/// model `(nerve × EG)/G → nerve/G`.
#[derive(Clone, Debug)]
pub struct GlobalQuotientData {
    pub complex: OrderedComplex,
    /// `vertex_perms[g][v]` = image of complex vertex `v` under element `g`.
    pub vertex_perms: Vec<Vec<usize>>,
    pub nerve: NerveModel,
    pub borel: BorelPresentation,
}

#[derive(Clone, Debug)]
pub enum OrbispaceForm {
    GlobalQuotient(Box<GlobalQuotientData>),
    /// A bare projection `total → base` with no group in sight.
    Explicit {
        total: SimplicialSet,
        base: SimplicialSet,
        projection: SSetMap,
    },
}

/// An orbispace presented either as a global quotient (with its derived
/// Borel model) or as an explicit projection. Everything is truncated at a
/// fixed level; degrees up to `truncation - 1` are certified.
#[derive(Clone, Debug)]
pub struct Orbispace {
    pub form: OrbispaceForm,
    pub truncation: usize,
}

impl Orbispace {
    /// The total space of the presentation: the Borel space for a global
    /// quotient.
    pub fn total(&self) -> &SimplicialSet {
        match &self.form {
            OrbispaceForm::GlobalQuotient(d) => d.borel.borel_space(),
            OrbispaceForm::Explicit { total, .. } => total,
        }
    }

    /// The underlying space: the orbit space for a global quotient.
    pub fn base(&self) -> &SimplicialSet {
        match &self.form {
            OrbispaceForm::GlobalQuotient(d) => d.borel.underlying(),
            OrbispaceForm::Explicit { base, .. } => base,
        }
    }

    pub fn projection(&self) -> &SSetMap {
        match &self.form {
            OrbispaceForm::GlobalQuotient(d) => &d.borel.projection,
            OrbispaceForm::Explicit { projection, .. } => projection,
        }
    }

    /// Degrees above this are distorted by truncation.
    pub fn valid_degree(&self) -> usize {
        self.truncation - 1
    }

    pub fn global(&self) -> Result<&GlobalQuotientData, OrbispaceError> {
        match &self.form {
            OrbispaceForm::GlobalQuotient(d) => Ok(d),
            OrbispaceForm::Explicit { .. } => Err(OrbispaceError::ExplicitFormUnsupported),
        }
    }
}

/// Builds `[X/G]` from a complex and a vertex action: the action is moved to
/// the nerve (where it is honestly simplicial) and the Borel model is
/// derived from it.
pub fn make_global_quotient(
    complex: &OrderedComplex,
    group: &FiniteGroup,
    vertex_perms: &[Vec<usize>],
    truncation: usize,
) -> Result<Orbispace, OrbispaceError> {
    assert!(truncation >= 2, "truncation must be at least 2");
    let nerve = complex.nerve(truncation);
    let action = crate::simplicial::nerve_action(&nerve, group, vertex_perms)
        .map_err(OrbispaceError::ActionNotSimplicial)?;
    let borel = borel_construction(&nerve.sset, group, &action, truncation)?;
    Ok(Orbispace {
        form: OrbispaceForm::GlobalQuotient(Box::new(GlobalQuotientData {
            complex: complex.clone(),
            vertex_perms: vertex_perms.to_vec(),
            nerve,
            borel,
        })),
        truncation,
    })
}

/// Wraps a bare projection as an orbispace after checking that it is
/// simplicial and hits every base vertex.
pub fn explicit_orbispace(
    total: SimplicialSet,
    base: SimplicialSet,
    projection: SSetMap,
) -> Result<Orbispace, OrbispaceError> {
    assert_eq!(
        total.truncation(),
        base.truncation(),
        "total and base must share a truncation level"
    );
    projection.validate(&total, &base)?;
    let mut hit = vec![false; base.cell_count(0)];
    for c in total.cells_in_dim(0) {
        hit[projection.image_of_cell(c).cell.index] = true;
    }
    if let Some(missed) = hit.iter().position(|&h| !h) {
        return Err(OrbispaceError::ProjectionNotSurjective(missed));
    }
    let truncation = total.truncation();
    Ok(Orbispace {
        form: OrbispaceForm::Explicit {
            total,
            base,
            projection,
        },
        truncation,
    })
}

/// The stabilizer of a base vertex together with how it sits in the ambient
/// model: for a global quotient, the isotropy subgroup of the least orbit
/// representative with its embedding into `G` and the representative itself.
pub(crate) fn stabilizer_data(
    d: &GlobalQuotientData,
    x: Cell,
) -> Result<(FiniteGroup, GroupHom, Cell), OrbispaceError> {
    if x.dim != 0 || x.index >= d.borel.underlying().cell_count(0) {
        return Err(OrbispaceError::NoSuchVertex(x.index));
    }
    let rep = Cell::new(0, d.borel.underlying_quotient.rep[0][x.index]);
    let isotropy = d.borel.action.isotropy(rep);
    let (sub, embed) = d.borel.group.subgroup(&isotropy)?;
    Ok((sub, embed, rep))
}

/// The stabilizer group of a base vertex. Global quotients read it off as
/// the isotropy of the least orbit representative; explicit presentations
/// take π₁ of the fiber over the vertex, which must identify as finite.
pub fn stabilizer(m: &Orbispace, x: Cell) -> Result<FiniteGroup, OrbispaceError> {
    match &m.form {
        OrbispaceForm::GlobalQuotient(d) => stabilizer_data(d, x).map(|(g, _, _)| g),
        OrbispaceForm::Explicit {
            total, projection, ..
        } => {
            if x.dim != 0 || x.index >= m.base().cell_count(0) {
                return Err(OrbispaceError::NoSuchVertex(x.index));
            }
            let fiber = simplicial_fiber(total, projection, x).map_err(|e| match e {
                FiberError::NoSuchVertex(v) => OrbispaceError::NoSuchVertex(v),
            })?;
            if fiber.sset.cell_count(0) == 0 {
                return Err(OrbispaceError::ProjectionNotSurjective(x.index));
            }
            let analysis = analyze_pi1(
                &fiber.sset,
                Cell::new(0, 0),
                DEFAULT_COSET_BOUND,
                DEFAULT_IDENTIFY_BOUND,
            )?;
            match analysis.identified {
                Some(id) => Ok(id.group),
                None => Err(OrbispaceError::UnresolvedPi1),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    #[test]
    fn point_mod_z2_is_the_classifying_space_over_a_point() {
        let m = make_global_quotient(&OrderedComplex::point(), &z2(), &[vec![0], vec![0]], 3)
            .unwrap();
        assert_eq!(m.base().cell_counts(), vec![1, 0, 0, 0]);
        assert_eq!(m.total().cell_counts(), vec![1, 1, 1, 1]);
        assert_eq!(stabilizer(&m, Cell::new(0, 0)).unwrap().order(), 2);
    }

    #[test]
    fn reflected_path_quotient_and_its_stabilizers() {
        // vertices 0..4 standing for -2..2, reflection v -> 4 - v
        let path = OrderedComplex::interval_path(4);
        let flip: Vec<usize> = (0..5).map(|v| 4 - v).collect();
        let m = make_global_quotient(&path, &z2(), &[(0..5).collect(), flip], 2).unwrap();
        assert_eq!(m.base().cell_counts(), vec![5, 4, 0]);

        // base vertex 2 is the class of the center; its isotropy is all of Z/2
        assert_eq!(stabilizer(&m, Cell::new(0, 2)).unwrap().order(), 2);
        // the endpoint class and an edge-barycenter class move freely
        assert_eq!(stabilizer(&m, Cell::new(0, 0)).unwrap().order(), 1);
        assert_eq!(stabilizer(&m, Cell::new(0, 3)).unwrap().order(), 1);

        assert!(matches!(
            stabilizer(&m, Cell::new(0, 99)),
            Err(OrbispaceError::NoSuchVertex(99))
        ));
    }

    #[test]
    fn antipodal_octahedron_has_a_projective_plane_underneath() {
        let oct = OrderedComplex::octahedron();
        let antipodal = vec![(0..6).collect::<Vec<_>>(), vec![1, 0, 3, 2, 5, 4]];
        let m = make_global_quotient(&oct, &z2(), &antipodal, 2).unwrap();
        assert_eq!(m.base().cell_counts(), vec![13, 36, 24]);
        assert_eq!(m.base().component_count(), 1);
        // the action is free, so every stabilizer is trivial
        for v in 0..13 {
            assert_eq!(stabilizer(&m, Cell::new(0, v)).unwrap().order(), 1);
        }
    }

    #[test]
    fn trivial_action_on_the_sphere_fixes_everything() {
        let oct = OrderedComplex::octahedron();
        let id: Vec<usize> = (0..6).collect();
        let m = make_global_quotient(&oct, &z2(), &[id.clone(), id], 2).unwrap();
        assert_eq!(m.base().cell_counts(), vec![26, 72, 48]);
        for v in [0, 7, 20] {
            assert_eq!(stabilizer(&m, Cell::new(0, v)).unwrap().order(), 2);
        }
    }

    #[test]
    fn explicit_presentations_take_stabilizers_from_fibers() {
        let gq = make_global_quotient(&OrderedComplex::point(), &z2(), &[vec![0], vec![0]], 3)
            .unwrap();
        let m = explicit_orbispace(
            gq.total().clone(),
            gq.base().clone(),
            gq.projection().clone(),
        )
        .unwrap();
        let g = stabilizer(&m, Cell::new(0, 0)).unwrap();
        assert_eq!(g.order(), 2);
        let h = stabilizer(&gq, Cell::new(0, 0)).unwrap();
        assert!(crate::algebra::groups_isomorphic(&g, &h, 16).unwrap().holds());
    }

    #[test]
    fn non_surjective_projections_are_rejected() {
        let total = OrderedComplex::point().to_simplicial_set(2);
        let base = OrderedComplex::from_facets(2, &[]).unwrap().to_simplicial_set(2);
        let p = SSetMap::constant(&total, Cell::new(0, 0));
        assert!(matches!(
            explicit_orbispace(total, base, p),
            Err(OrbispaceError::ProjectionNotSurjective(1))
        ));
    }

    #[test]
    fn non_symmetries_are_rejected() {
        let path = OrderedComplex::interval_path(2);
        let err = make_global_quotient(&path, &z2(), &[vec![0, 1, 2], vec![1, 0, 2]], 2)
            .unwrap_err();
        assert!(matches!(err, OrbispaceError::ActionNotSimplicial(_)));
    }
}
