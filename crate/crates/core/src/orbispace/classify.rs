//! Classification of vertical maps over a fixed base: homomorphisms from
//! the base fundamental group into the structure group, up to conjugacy.

use super::OrbispaceError;
use crate::algebra::{classify_homs, FiniteGroup, GroupPresentation};
use crate::pi1::{pi1_presentation, tietze_simplify, DEFAULT_TIETZE_BUDGET};
use crate::simplicial::{Cell, SimplicialSet};

/// The classes found over one base: the simplified presentation the search
/// ran against and one representative generator-image tuple per class.
#[derive(Clone, Debug)]
pub struct VerticalMapClasses {
    pub base_pi1: GroupPresentation,
    /// Each entry lists the image of every generator for one class.
    pub classes: Vec<Vec<usize>>,
}

impl VerticalMapClasses {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

/// Counts maps over `base` with fiber the classifying space of `g`:
/// conjugacy classes of homomorphisms `π₁(base) → g`. The base must be
/// connected and nonempty.
pub fn classify_vertical_maps(
    base: &SimplicialSet,
    g: &FiniteGroup,
) -> Result<VerticalMapClasses, OrbispaceError> {
    if base.cell_count(0) == 0 {
        return Err(OrbispaceError::NoSuchVertex(0));
    }
    let raw = pi1_presentation(base, Cell::new(0, 0))?;
    let simplified = tietze_simplify(&raw.presentation, DEFAULT_TIETZE_BUDGET);
    let classes = classify_homs(&simplified.presentation, g);
    Ok(VerticalMapClasses {
        base_pi1: simplified.presentation,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{disjoint_union, OrderedComplex};

    #[test]
    fn circle_classes_count_conjugacy_classes_of_images() {
        let circle = SimplicialSet::minimal_circle(2);
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(classify_vertical_maps(&circle, &z2).unwrap().count(), 2);

        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(classify_vertical_maps(&circle, &s3).unwrap().count(), 3);
    }

    #[test]
    fn simply_connected_bases_admit_only_the_trivial_class() {
        let sphere = OrderedComplex::simplex_boundary(3).to_simplicial_set(2);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let classes = classify_vertical_maps(&sphere, &s3).unwrap();
        assert_eq!(classes.count(), 1);
        assert!(classes.classes[0].iter().all(|&e| e == 0));
    }

    #[test]
    fn disconnected_bases_are_rejected() {
        let pt = OrderedComplex::point().to_simplicial_set(2);
        let (two, _, _) = disjoint_union(&pt, &pt);
        let err = classify_vertical_maps(&two, &FiniteGroup::cyclic(2)).unwrap_err();
        assert!(matches!(err, OrbispaceError::Pi1(_)));
    }

    #[test]
    fn counts_survive_barycentric_refinement() {
        // the count is a homotopy invariant, so subdividing the base must
        // not change it
        let hexagon = OrderedComplex::polygon(6);
        let subdivided = hexagon.barycentric_subdivision();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let coarse =
            classify_vertical_maps(&hexagon.to_simplicial_set(2), &s3).unwrap();
        let fine =
            classify_vertical_maps(&subdivided.to_simplicial_set(2), &s3).unwrap();
        assert_eq!(coarse.count(), 3);
        assert_eq!(fine.count(), 3);
    }
}
