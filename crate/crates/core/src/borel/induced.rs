//! Functorial maps between Borel models along equivariant maps.

use super::construction::{BorelError, BorelPresentation};
use crate::algebra::GroupHom;
use crate::simplicial::{product_map, Cell, SSetMap, Simplex};

/// The map EG → EH applying a group morphism entrywise to bar tuples.
pub fn resolution_map(
    src: &BorelPresentation,
    dst: &BorelPresentation,
    sigma: &GroupHom,
) -> SSetMap {
    SSetMap::new(
        (0..=src.truncation)
            .map(|n| {
                src.eg
                    .sset
                    .cells_in_dim(n)
                    .map(|c| {
                        let image: Vec<usize> = src
                            .eg
                            .tuple_of_cell(c)
                            .iter()
                            .map(|&g| sigma.apply(g))
                            .collect();
                        dst.eg.simplex_of_tuple(&image)
                    })
                    .collect()
            })
            .collect(),
    )
}

/// A morphism of Borel models: the map on Borel spaces and the map on
/// underlying orbit spaces, which commute with the projections.
#[derive(Clone, Debug)]
pub struct BorelMapPair {
    pub on_borel: SSetMap,
    pub on_underlying: SSetMap,
}

/// Pushes an equivariant map `r` (along `sigma`) through the construction:
/// `r × Eσ` on the resolutions descends to the quotients.
pub fn induced_borel_map(
    r: &SSetMap,
    sigma: &GroupHom,
    src: &BorelPresentation,
    dst: &BorelPresentation,
) -> Result<BorelMapPair, BorelError> {
    if src.truncation != dst.truncation {
        return Err(BorelError::TruncationMismatch(src.truncation, dst.truncation));
    }
    debug_assert!(r.validate(&src.space, &dst.space).is_ok(), "not simplicial");
    debug_assert!(sigma.validate().is_ok());
    for g in 0..src.group.order() {
        let h = sigma.apply(g);
        for dim in 0..=src.truncation {
            for cell in 0..src.space.cell_count(dim) {
                let c = Cell::new(dim, cell);
                let lhs = r.apply(&src.action.apply(g, &Simplex::of_cell(c)));
                let rhs = dst.action.apply(h, r.image_of_cell(c));
                if lhs != rhs {
                    return Err(BorelError::NotEquivariant { g, dim, cell });
                }
            }
        }
    }
    let on_total = product_map(&src.total, &dst.total, r, &resolution_map(src, dst, sigma));
    let on_borel = SSetMap::new(
        (0..=src.truncation)
            .map(|n| {
                src.borel_quotient.rep[n]
                    .iter()
                    .map(|&rep| {
                        let downstairs = on_total.image_of_cell(Cell::new(n, rep));
                        dst.borel_quotient.projection.apply(downstairs)
                    })
                    .collect()
            })
            .collect(),
    );
    let on_underlying = SSetMap::new(
        (0..=src.truncation)
            .map(|n| {
                src.underlying_quotient.rep[n]
                    .iter()
                    .map(|&rep| {
                        let downstairs = r.image_of_cell(Cell::new(n, rep));
                        dst.underlying_quotient.projection.apply(downstairs)
                    })
                    .collect()
            })
            .collect(),
    );
    debug_assert!(on_borel
        .validate(src.borel_space(), dst.borel_space())
        .is_ok());
    debug_assert!(on_underlying.validate(src.underlying(), dst.underlying()).is_ok());
    debug_assert_eq!(
        on_borel.then(&dst.projection),
        src.projection.then(&on_underlying),
        "the orbispace square must commute"
    );
    Ok(BorelMapPair {
        on_borel,
        on_underlying,
    })
}
