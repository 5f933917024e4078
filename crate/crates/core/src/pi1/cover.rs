//! Universal covers of spaces with finite fundamental group.

use super::{analyze_pi1, Pi1Error, Pi1Result};
use crate::simplicial::{Cell, SSetMap, Simplex, SimplicialAction, SimplicialSet};

/// Identify π₁ for covering purposes only up to this order; the cover has
/// |π₁| sheets and the deck group needs a multiplication table.
pub const COVER_ORDER_CAP: usize = 1024;

#[derive(Clone, Debug)]
pub struct CoverResult {
    pub cover: SimplicialSet,
    pub projection: SSetMap,
    pub deck_action: SimplicialAction,
    /// The lift of the base vertex sitting on the identity sheet.
    pub base_vertex: Cell,
    /// The π₁ computation the cover was built from.
    pub analysis: Pi1Result,
}

impl CoverResult {
    pub fn deck_group(&self) -> &crate::algebra::FiniteGroup {
        &self.deck_action.group
    }
}

/// Builds the universal cover with one sheet per group element: cells are
/// (base cell, sheet), faces follow the base except that `d_0` moves the
/// sheet by the edge label of the cell's leading edge. The deck group is π₁
/// acting by left translation on sheets.
pub fn universal_cover(
    x: &SimplicialSet,
    base: Cell,
    max_cosets: usize,
) -> Result<CoverResult, Pi1Error> {
    let analysis = analyze_pi1(x, base, max_cosets, COVER_ORDER_CAP)?;
    let Some(id) = analysis.identified.as_ref() else {
        return Err(Pi1Error::InfiniteOrUnresolvedPi1);
    };
    let group = id.group.clone();
    let ord = group.order();

    // group element attached to each nondegenerate edge
    let sheet_shift: Vec<usize> = x
        .cells_in_dim(1)
        .map(|e| {
            let word = analysis.raw.edge_word(&Simplex::of_cell(e));
            analysis
                .raw_word_element(&word)
                .expect("group is identified")
        })
        .collect();
    let shift_of = |s: &Simplex| -> usize {
        if s.is_degenerate() {
            0
        } else {
            sheet_shift[s.cell.index]
        }
    };

    let mut cover = SimplicialSet::new(x.truncation());
    for n in 0..=x.truncation() {
        for z in x.cells_in_dim(n) {
            let leading = if n >= 1 {
                shift_of(&x.subsimplex(&Simplex::of_cell(z), &[0, 1]))
            } else {
                0
            };
            for sheet in 0..ord {
                let faces = (0..if n == 0 { 0 } else { n + 1 })
                    .map(|i| {
                        let f = x.face_of_cell(z, i);
                        let target = if i == 0 {
                            group.mul(sheet, leading)
                        } else {
                            sheet
                        };
                        Simplex {
                            word: f.word.clone(),
                            cell: Cell::new(f.cell.dim, f.cell.index * ord + target),
                        }
                    })
                    .collect();
                let c = cover.add_cell(n, faces, format!("{}~{}", x.label(z), sheet));
                debug_assert_eq!(c.index, z.index * ord + sheet);
            }
        }
    }

    let projection = SSetMap::new(
        (0..=x.truncation())
            .map(|n| {
                (0..cover.cell_count(n))
                    .map(|i| Simplex::of_cell(Cell::new(n, i / ord)))
                    .collect()
            })
            .collect(),
    );
    let perms = (0..ord)
        .map(|g| {
            (0..=x.truncation())
                .map(|n| {
                    (0..cover.cell_count(n))
                        .map(|i| (i / ord) * ord + group.mul(g, i % ord))
                        .collect()
                })
                .collect()
        })
        .collect();
    let deck_action = SimplicialAction::new(group, perms);
    debug_assert!(deck_action.validate(&cover).is_ok());
    debug_assert!(projection.validate(&cover, x).is_ok());
    Ok(CoverResult {
        base_vertex: Cell::new(0, base.index * ord),
        cover,
        projection,
        deck_action,
        analysis,
    })
}
