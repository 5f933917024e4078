//! Local charts of an orbispace: the covering model of a star neighborhood
//! with its stabilizer action, and the localization of a global equivariant
//! map to charts around a vertex.

use super::fiber_checks::{good_neighborhood_check, NeighborhoodCertificate};
use super::{stabilizer, Orbispace, OrbispaceError};
use crate::algebra::{groups_isomorphic, FiniteGroup, GroupHom, IsoDecision};
use crate::borel::{induced_borel_map, BorelMapPair};
use crate::pi1::cover::COVER_ORDER_CAP;
use crate::pi1::{universal_cover, DEFAULT_COSET_BOUND};
use crate::simplicial::{
    fib_pi0, is_acyclic_through, quotient_by_action, restrict_action, star_neighborhood, Cell,
    SSetMap, Simplex, SimplicialAction, SimplicialSet, SubSSet,
};

/// A certified chart at a vertex: a cover `Û` of the preimage of the star,
/// acyclic through the stated degree, carrying an action of the stabilizer
/// whose quotient is cell-isomorphic to the star itself.
#[derive(Clone, Debug)]
pub struct ChartReport {
    pub vertex: Cell,
    /// The closed star of the vertex in the base.
    pub neighborhood: SubSSet,
    /// The chart `Û`.
    pub chart: SimplicialSet,
    pub stabilizer: FiniteGroup,
    /// The stabilizer acting on the chart.
    pub chart_action: SimplicialAction,
    /// Isomorphism from the deck group of the cover to the stabilizer.
    pub deck_witness: GroupHom,
    /// `Û → U`, constant on orbits.
    pub to_neighborhood: SSetMap,
    /// The induced cell isomorphism `Û/G_x → U`.
    pub quotient_iso: SSetMap,
    pub acyclic_through: usize,
    /// The neighborhood certificate the chart was extracted under.
    pub certificate: NeighborhoodCertificate,
}

/// Builds the chart at a vertex: take the preimage of its star, pass to the
/// universal cover, and collapse fiber components over the star. The
/// result is certified acyclic through `d`, and the descended deck action
/// is certified to have quotient cell-isomorphic to the star.
pub fn extract_chart(m: &Orbispace, x: Cell, d: usize) -> Result<ChartReport, OrbispaceError> {
    let certificate = good_neighborhood_check(m, x, d)?;
    let u = &certificate.neighborhood;
    let pre = &certificate.preimage;

    let p_restricted = pre
        .restrict_map(m.projection(), u)
        .expect("the projection maps the preimage into the star");
    let base_cell = pre
        .sub_cell(certificate.fiber.ambient_cell(Cell::new(0, 0)))
        .expect("the fiber lies in the preimage");
    let cover = universal_cover(&pre.sset, base_cell, DEFAULT_COSET_BOUND)?;
    let q = cover.projection.then(&p_restricted);
    let fib = fib_pi0(&cover.cover, &u.sset, &q);
    let chart = fib.sset.clone();
    let truncation = chart.truncation();

    // descend the deck action along the collapse: transport each chart cell
    // through a nondegenerate representative upstairs
    let rep: Vec<Vec<Cell>> = (0..=truncation)
        .map(|n| {
            let mut level = vec![None; chart.cell_count(n)];
            for c in cover.cover.cells_in_dim(n) {
                let im = fib.from_source.image_of_cell(c);
                if im.is_degenerate() {
                    continue;
                }
                level[im.cell.index].get_or_insert(c);
            }
            level
                .into_iter()
                .map(|r| r.expect("every chart cell has a nondegenerate preimage"))
                .collect()
        })
        .collect();
    let deck = cover.deck_group().clone();
    let deck_perms: Vec<Vec<Vec<usize>>> = (0..deck.order())
        .map(|g| {
            (0..=truncation)
                .map(|n| {
                    rep[n]
                        .iter()
                        .map(|&r| {
                            let moved = cover.deck_action.apply_cell(g, r);
                            let im = fib.from_source.image_of_cell(moved);
                            debug_assert!(!im.is_degenerate());
                            im.cell.index
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    // present the action through the stabilizer rather than the deck group
    let stab = stabilizer(m, x)?;
    let deck_witness = match groups_isomorphic(&deck, &stab, COVER_ORDER_CAP)? {
        IsoDecision::Isomorphic(h) => h,
        IsoDecision::NotIsomorphic { reason } => {
            return Err(OrbispaceError::CheckFailed(format!(
                "the deck group of the chart is not the stabilizer: {reason}"
            )))
        }
    };
    let chart_perms: Vec<Vec<Vec<usize>>> = (0..stab.order())
        .map(|s| {
            let g = deck_witness
                .images
                .iter()
                .position(|&t| t == s)
                .expect("the witness is bijective");
            deck_perms[g].clone()
        })
        .collect();
    let chart_action = SimplicialAction::new(stab.clone(), chart_perms);
    if let Err(e) = chart_action.validate(&chart) {
        return Err(OrbispaceError::CheckFailed(format!(
            "the deck action does not descend to the chart: {e}"
        )));
    }

    // the quotient of the chart must reproduce the star on the nose
    let quot = quotient_by_action(&chart, &chart_action);
    let quotient_iso = SSetMap::new(
        (0..=truncation)
            .map(|n| {
                quot.rep[n]
                    .iter()
                    .map(|&r| fib.to_target.image_of_cell(Cell::new(n, r)).clone())
                    .collect()
            })
            .collect(),
    );
    if quotient_iso.validate(&quot.sset, &u.sset).is_err()
        || !quotient_iso.is_cell_iso(&quot.sset, &u.sset)
    {
        return Err(OrbispaceError::CheckFailed(
            "the chart quotient is not cell-isomorphic to the star".into(),
        ));
    }
    if !is_acyclic_through(&chart, d) {
        return Err(OrbispaceError::CheckFailed(format!(
            "the chart is not acyclic through degree {d}"
        )));
    }

    Ok(ChartReport {
        vertex: x,
        neighborhood: certificate.neighborhood.clone(),
        chart,
        stabilizer: stab,
        chart_action,
        deck_witness,
        to_neighborhood: fib.to_target,
        quotient_iso,
        acyclic_through: d,
        certificate,
    })
}

/// A global equivariant map localized at a vertex: the restriction of σ to
/// stabilizers and the induced map of star charts, verified equivariant on
/// every cell.
#[derive(Clone, Debug)]
pub struct LocalizedMap {
    pub base_vertex: Cell,
    /// The class of the image of the representative in the target base.
    pub target_vertex: Cell,
    /// Stabilizer of the source vertex → stabilizer of its image.
    pub sigma_x: GroupHom,
    /// Closed star of the representative in the source space.
    pub source_chart: SubSSet,
    /// Closed star of its image in the target space.
    pub target_chart: SubSSet,
    pub source_action: SimplicialAction,
    pub target_action: SimplicialAction,
    /// The restriction of the global map to the charts.
    pub chart_map: SSetMap,
    /// The maps the localization came from.
    pub pair: BorelMapPair,
}

/// Localizes an equivariant map `(r, σ)` between global quotients at a base
/// vertex of the source: restricts σ to the stabilizer, restricts `r` to
/// the closed stars of the chosen representatives, and checks equivariance
/// cell-by-cell.
pub fn localize_map(
    r: &SSetMap,
    sigma: &GroupHom,
    src: &Orbispace,
    dst: &Orbispace,
    x: Cell,
) -> Result<LocalizedMap, OrbispaceError> {
    let src_d = src.global()?;
    let dst_d = dst.global()?;
    let pair = induced_borel_map(r, sigma, &src_d.borel, &dst_d.borel)?;

    let (stab_x, embed_x, rep_x) = super::stabilizer_data(src_d, x)?;
    let y_rep = r.image_of_cell(rep_x).cell;
    let target_vertex = Cell::new(0, dst_d.borel.underlying_quotient.orbit_of[0][y_rep.index]);
    let fix_y = dst_d.borel.action.isotropy(y_rep);
    let (stab_y, embed_y) = dst_d.borel.group.subgroup(&fix_y)?;

    // σ carries the source isotropy into the isotropy of the image vertex
    let sigma_images = (0..stab_x.order())
        .map(|s| {
            let h = sigma.apply(embed_x.apply(s));
            embed_y.images.iter().position(|&t| t == h).ok_or_else(|| {
                OrbispaceError::CheckFailed(
                    "σ moves a stabilizer element outside the image isotropy".into(),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sigma_x = GroupHom::new(stab_x.clone(), stab_y.clone(), sigma_images)?;

    let source_chart = star_neighborhood(&src_d.borel.space, rep_x);
    let target_chart = star_neighborhood(&dst_d.borel.space, y_rep);
    let source_action = restrict_action(&src_d.borel.action, &stab_x, &embed_x, &source_chart)
        .expect("the star of a fixed vertex is invariant");
    let target_action = restrict_action(&dst_d.borel.action, &stab_y, &embed_y, &target_chart)
        .expect("the star of a fixed vertex is invariant");
    let chart_map = source_chart
        .restrict_map(r, &target_chart)
        .expect("a simplicial map sends stars into stars");

    for s in 0..stab_x.order() {
        let t = sigma_x.apply(s);
        for n in 0..=source_chart.sset.truncation() {
            for c in source_chart.sset.cells_in_dim(n) {
                let lhs = chart_map.apply(&source_action.apply(s, &Simplex::of_cell(c)));
                let rhs = target_action.apply(t, chart_map.image_of_cell(c));
                if lhs != rhs {
                    return Err(OrbispaceError::CheckFailed(format!(
                        "the chart map is not equivariant at element {s}, {n}-cell {}",
                        c.index
                    )));
                }
            }
        }
    }

    Ok(LocalizedMap {
        base_vertex: x,
        target_vertex,
        sigma_x,
        source_chart,
        target_chart,
        source_action,
        target_action,
        chart_map,
        pair,
    })
}

#[cfg(test)]
mod tests {
    use super::super::make_global_quotient;
    use super::*;
    use crate::simplicial::OrderedComplex;

    fn z2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    fn desk_model(truncation: usize) -> Orbispace {
        let path = OrderedComplex::interval_path(4);
        let flip: Vec<usize> = (0..5).map(|v| 4 - v).collect();
        make_global_quotient(&path, &z2(), &[(0..5).collect(), flip], truncation).unwrap()
    }

    fn point_with_z2(truncation: usize) -> Orbispace {
        make_global_quotient(&OrderedComplex::point(), &z2(), &[vec![0], vec![0]], truncation)
            .unwrap()
    }

    #[test]
    fn the_desk_model_center_chart_is_a_reflected_interval() {
        let m = desk_model(3);
        let report = extract_chart(&m, Cell::new(0, 2), 2).unwrap();
        assert_eq!(report.chart.cell_counts(), vec![3, 2, 0, 0]);
        assert_eq!(report.stabilizer.order(), 2);
        // the nontrivial element swaps the two edges around the center
        assert_ne!(
            report.chart_action.apply_cell(1, Cell::new(1, 0)),
            Cell::new(1, 0)
        );
        assert_eq!(report.acyclic_through, 2);
        assert_eq!(report.neighborhood.sset.cell_counts(), vec![2, 1, 0, 0]);
    }

    #[test]
    fn free_orbits_give_charts_with_trivial_action() {
        let m = desk_model(2);
        let report = extract_chart(&m, Cell::new(0, 0), 1).unwrap();
        assert_eq!(report.stabilizer.order(), 1);
        // the chart is the star itself
        assert_eq!(
            report.chart.cell_counts(),
            report.neighborhood.sset.cell_counts()
        );
    }

    #[test]
    fn fixed_points_of_trivial_actions_chart_with_trivial_action() {
        let oct = OrderedComplex::octahedron();
        let id: Vec<usize> = (0..6).collect();
        let m = make_global_quotient(&oct, &z2(), &[id.clone(), id], 3).unwrap();
        let report = extract_chart(&m, Cell::new(0, 0), 2).unwrap();
        assert_eq!(report.stabilizer.order(), 2);
        // Z/2 fixes the whole sphere, so it fixes every chart cell
        for n in 0..=3 {
            for c in report.chart.cells_in_dim(n) {
                assert_eq!(report.chart_action.apply_cell(1, c), c);
            }
        }
        assert_eq!(
            report.chart.cell_counts(),
            report.neighborhood.sset.cell_counts()
        );
    }

    #[test]
    fn localizing_the_identity_gives_identity_data() {
        let m = desk_model(2);
        let d = m.global().unwrap();
        let r = SSetMap::identity(&d.borel.space);
        let sigma = GroupHom::identity(&z2());
        let local = localize_map(&r, &sigma, &m, &m, Cell::new(0, 2)).unwrap();
        assert_eq!(local.sigma_x.images, vec![0, 1]);
        assert!(local.sigma_x.is_bijective());
        assert_eq!(local.target_vertex, Cell::new(0, 2));
        assert!(local
            .chart_map
            .is_cell_iso(&local.source_chart.sset, &local.target_chart.sset));
    }

    #[test]
    fn including_a_fixed_point_restricts_sigma_to_an_isomorphism() {
        let pt = point_with_z2(2);
        let m = desk_model(2);
        // send the point onto the reflection-fixed center of the path nerve
        let r = SSetMap::constant(&pt.global().unwrap().borel.space, Cell::new(0, 2));
        let local = localize_map(&r, &GroupHom::identity(&z2()), &pt, &m, Cell::new(0, 0))
            .unwrap();
        assert_eq!(local.sigma_x.source.order(), 2);
        assert_eq!(local.sigma_x.target.order(), 2);
        assert!(local.sigma_x.is_bijective());
    }

    #[test]
    fn mapping_onto_a_free_orbit_kills_the_stabilizer() {
        let pt = point_with_z2(2);
        let m = desk_model(2);
        let r = SSetMap::constant(&pt.global().unwrap().borel.space, Cell::new(0, 0));
        let sigma = GroupHom::trivial(&z2(), &z2());
        let local = localize_map(&r, &sigma, &pt, &m, Cell::new(0, 0)).unwrap();
        assert_eq!(local.sigma_x.source.order(), 2);
        assert_eq!(local.sigma_x.target.order(), 1);
    }

    #[test]
    fn non_equivariant_pairs_are_rejected() {
        let pt = point_with_z2(2);
        let m = desk_model(2);
        // constant onto a moving vertex with σ = id cannot be equivariant
        let r = SSetMap::constant(&pt.global().unwrap().borel.space, Cell::new(0, 0));
        let err = localize_map(&r, &GroupHom::identity(&z2()), &pt, &m, Cell::new(0, 0))
            .unwrap_err();
        assert!(matches!(err, OrbispaceError::Borel(_)));
    }
}
