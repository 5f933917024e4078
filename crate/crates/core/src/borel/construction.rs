//! The homotopy quotient (X × EG)/G and equivariant cohomology.

use super::bar::{bar_eg, FreeResolutionSpace};
use crate::algebra::{Coefficients, FGAbelianGroup, FiniteGroup};
use crate::simplicial::{
    cohomology_of, product, quotient_by_action, ActionError, ProductSSet, Quotient, SSetMap,
    SimplicialAction, SimplicialSet,
};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BorelError {
    #[error("the action is not valid on the space: {0}")]
    InvalidAction(ActionError),
    #[error("source and target truncations differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("the map is not equivariant along the group morphism at element {g}, {dim}-cell {cell}")]
    NotEquivariant { g: usize, dim: usize, cell: usize },
}

/// A Borel model: the free resolution X × EG, its G-quotient, the underlying
/// orbit space X/G, and the projection between them.
#[derive(Clone, Debug)]
pub struct BorelPresentation {
    pub space: SimplicialSet,
    pub group: FiniteGroup,
    pub action: SimplicialAction,
    pub truncation: usize,
    pub eg: FreeResolutionSpace,
    /// X × EG with its pair bookkeeping.
    pub total: ProductSSet,
    /// (X × EG)/G; `borel_quotient.sset` is the Borel space.
    pub borel_quotient: Quotient,
    /// X/G with its projection.
    pub underlying_quotient: Quotient,
    /// Borel space → underlying space.
    pub projection: SSetMap,
}

impl BorelPresentation {
    pub fn borel_space(&self) -> &SimplicialSet {
        &self.borel_quotient.sset
    }

    pub fn underlying(&self) -> &SimplicialSet {
        &self.underlying_quotient.sset
    }

    /// Degrees above this are distorted by truncation.
    pub fn valid_degree(&self) -> usize {
        self.truncation - 1
    }
}

pub fn borel_construction(
    x: &SimplicialSet,
    group: &FiniteGroup,
    action: &SimplicialAction,
    truncation: usize,
) -> Result<BorelPresentation, BorelError> {
    assert_eq!(
        x.truncation(),
        truncation,
        "the space must be truncated at the requested level"
    );
    action.validate(x).map_err(BorelError::InvalidAction)?;
    let eg = bar_eg(group, truncation);
    let total = product(x, &eg.sset);
    let diagonal = total.diagonal_action(action, &eg.action);
    debug_assert!(diagonal.is_free(&total.sset));
    let borel_quotient = quotient_by_action(&total.sset, &diagonal);
    let underlying_quotient = quotient_by_action(x, action);

    // the Borel cell of an orbit representative (x-part, eg-part) lies over
    // the orbit of its x-part
    let left = total.projection_left();
    let projection = SSetMap::new(
        (0..=truncation)
            .map(|n| {
                borel_quotient.rep[n]
                    .iter()
                    .map(|&rep| {
                        let product_cell = crate::simplicial::Cell::new(n, rep);
                        underlying_quotient
                            .projection
                            .apply(left.image_of_cell(product_cell))
                    })
                    .collect()
            })
            .collect(),
    );
    Ok(BorelPresentation {
        space: x.clone(),
        group: group.clone(),
        action: action.clone(),
        truncation,
        eg,
        total,
        borel_quotient,
        underlying_quotient,
        projection,
    })
}

/// Graded groups together with the range the truncated model certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graded {
    pub values: Vec<FGAbelianGroup>,
    pub valid_degree: usize,
}

impl Graded {
    pub fn degree(&self, k: usize) -> &FGAbelianGroup {
        assert!(k <= self.valid_degree, "degree {k} is beyond the certified range");
        &self.values[k]
    }
}

/// H^*_G(X) in degrees 0..=N−1, computed from the Borel space.
pub fn equivariant_cohomology(
    x: &SimplicialSet,
    group: &FiniteGroup,
    action: &SimplicialAction,
    truncation: usize,
    coefficients: &Coefficients,
) -> Result<Graded, BorelError> {
    let b = borel_construction(x, group, action, truncation)?;
    let values = cohomology_of(b.borel_space(), coefficients);
    debug_assert_eq!(values.len(), truncation);
    Ok(Graded {
        values,
        valid_degree: truncation - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{homology_of, OrderedComplex};

    #[test]
    fn trivial_group_returns_the_space() {
        let x = OrderedComplex::simplex_boundary(2).to_simplicial_set(2);
        let g = FiniteGroup::trivial();
        let act = SimplicialAction::trivial(g.clone(), &x);
        let b = borel_construction(&x, &g, &act, 2).unwrap();
        assert_eq!(b.borel_space().cell_counts(), x.cell_counts());
        assert_eq!(b.underlying().cell_counts(), x.cell_counts());
        assert!(b.projection.is_cell_iso(b.borel_space(), b.underlying()));
    }

    #[test]
    fn point_gives_the_classifying_space() {
        let x = SimplicialSet::point(3);
        let g = FiniteGroup::cyclic(2);
        let act = SimplicialAction::trivial(g.clone(), &x);
        let b = borel_construction(&x, &g, &act, 3).unwrap();
        assert_eq!(b.borel_space().cell_counts(), vec![1, 1, 1, 1]);
        assert_eq!(b.underlying().cell_counts(), vec![1, 0, 0, 0]);
        let h = homology_of(b.borel_space(), &Coefficients::Integers);
        assert_eq!(h[1], FGAbelianGroup::cyclic(2));
    }

    #[test]
    fn free_swap_of_two_points_is_contractible() {
        // two vertices swapped by Z/2: the Borel space is EG/G = BG of a
        // free orbit, same homology as a point in the valid range
        let x = OrderedComplex::from_facets(2, &[]).unwrap().to_simplicial_set(3);
        let g = FiniteGroup::cyclic(2);
        let perms = vec![
            vec![vec![0, 1], vec![], vec![], vec![]],
            vec![vec![1, 0], vec![], vec![], vec![]],
        ];
        let act = SimplicialAction::new(g.clone(), perms);
        act.validate(&x).unwrap();
        let b = borel_construction(&x, &g, &act, 3).unwrap();
        let h = homology_of(b.borel_space(), &Coefficients::Integers);
        assert_eq!(h[0], FGAbelianGroup::free(1));
        assert!(h[1].is_trivial());
        assert!(h[2].is_trivial());
    }

    #[test]
    fn projection_is_simplicial_and_surjective() {
        let oct = OrderedComplex::octahedron();
        let nerve = oct.nerve(2);
        let g = FiniteGroup::cyclic(2);
        let act = crate::simplicial::nerve_action(
            &nerve,
            &g,
            &[vec![0, 1, 2, 3, 4, 5], vec![1, 0, 3, 2, 5, 4]],
        )
        .unwrap();
        let b = borel_construction(&nerve.sset, &g, &act, 2).unwrap();
        assert!(b
            .projection
            .validate(b.borel_space(), b.underlying())
            .is_ok());
        let mut hit = vec![false; b.underlying().cell_count(0)];
        for v in b.borel_space().cells_in_dim(0) {
            hit[b.projection.image_of_cell(v).cell.index] = true;
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn equivariant_cohomology_of_a_point_mod_two() {
        let x = SimplicialSet::point(5);
        let g = FiniteGroup::cyclic(2);
        let act = SimplicialAction::trivial(g.clone(), &x);
        let h = equivariant_cohomology(&x, &g, &act, 5, &Coefficients::ModP(2)).unwrap();
        assert_eq!(h.valid_degree, 4);
        for k in 0..=4 {
            assert_eq!(h.degree(k).mod_p_rank(2), 1, "degree {k}");
        }
    }

    #[test]
    fn equivariant_cohomology_of_a_point_integrally() {
        let x = SimplicialSet::point(5);
        let g = FiniteGroup::cyclic(2);
        let act = SimplicialAction::trivial(g.clone(), &x);
        let h = equivariant_cohomology(&x, &g, &act, 5, &Coefficients::Integers).unwrap();
        assert_eq!(*h.degree(0), FGAbelianGroup::free(1));
        assert!(h.degree(1).is_trivial());
        assert_eq!(*h.degree(2), FGAbelianGroup::cyclic(2));
        assert!(h.degree(3).is_trivial());
        assert_eq!(*h.degree(4), FGAbelianGroup::cyclic(2));
    }

    #[test]
    fn free_sphere_action_matches_quotient_cohomology() {
        let oct = OrderedComplex::octahedron();
        let nerve = oct.nerve(3);
        let g = FiniteGroup::cyclic(2);
        let act = crate::simplicial::nerve_action(
            &nerve,
            &g,
            &[vec![0, 1, 2, 3, 4, 5], vec![1, 0, 3, 2, 5, 4]],
        )
        .unwrap();
        let h = equivariant_cohomology(&nerve.sset, &g, &act, 3, &Coefficients::Integers).unwrap();
        // the projective plane integrally: H^0 = Z, H^1 = 0, H^2 = Z/2
        assert_eq!(*h.degree(0), FGAbelianGroup::free(1));
        assert!(h.degree(1).is_trivial());
        assert_eq!(*h.degree(2), FGAbelianGroup::cyclic(2));
        // and it agrees with the quotient space directly
        let q = quotient_by_action(&nerve.sset, &act);
        let hq = cohomology_of(&q.sset, &Coefficients::Integers);
        assert_eq!(h.values[..3], hq[..3]);
    }

    #[test]
    fn mismatched_truncation_is_a_caller_bug() {
        let x = SimplicialSet::point(3);
        let g = FiniteGroup::trivial();
        let act = SimplicialAction::trivial(g.clone(), &x);
        let r = std::panic::catch_unwind(|| borel_construction(&x, &g, &act, 2));
        assert!(r.is_err());
    }

    #[test]
    fn invalid_action_is_reported() {
        let x = OrderedComplex::interval_path(1).to_simplicial_set(2);
        let g = FiniteGroup::cyclic(2);
        // swapping the vertices without mapping the edge correctly
        let perms = vec![
            vec![vec![0, 1], vec![0], vec![]],
            vec![vec![1, 0], vec![0], vec![]],
        ];
        let act = SimplicialAction::new(g.clone(), perms);
        assert!(matches!(
            borel_construction(&x, &g, &act, 2),
            Err(BorelError::InvalidAction(_))
        ));
    }
}
