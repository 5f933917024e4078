//! Normalized chains of a simplicial set.

use super::map::SSetMap;
use super::sset::SimplicialSet;
use crate::algebra::{ChainComplex, Coefficients, FGAbelianGroup, IntMatrix};

/// The normalized chain complex: one generator per nondegenerate cell, with
/// boundary `∑ (-1)^i d_i` where degenerate faces are dropped.
pub fn chain_complex(sset: &SimplicialSet) -> ChainComplex {
    let n_top = sset.truncation();
    let dims: Vec<usize> = (0..=n_top).map(|n| sset.cell_count(n)).collect();
    let boundaries = (0..n_top)
        .map(|n| {
            let mut m = IntMatrix::zero(dims[n], dims[n + 1]);
            for c in sset.cells_in_dim(n + 1) {
                let mut sign = 1i64;
                for i in 0..=(n + 1) {
                    let f = sset.face_of_cell(c, i);
                    if !f.is_degenerate() {
                        m.add_assign_at(f.cell.index, c.index, &sign.into());
                    }
                    sign = -sign;
                }
            }
            m
        })
        .collect();
    ChainComplex::new(dims, boundaries).expect("normalized chains always form a complex")
}

/// Homology of the normalized chains. Degrees up to `truncation - 1` are
/// correct; the top degree is omitted since it is distorted by truncation.
/// Panics on a composite modulus — validate coefficients at the boundary.
pub fn homology_of(sset: &SimplicialSet, coeffs: &Coefficients) -> Vec<FGAbelianGroup> {
    chain_complex(sset)
        .homology(coeffs)
        .expect("modulus must be prime")
}

/// Cohomology in degrees up to `truncation - 1`.
pub fn cohomology_of(sset: &SimplicialSet, coeffs: &Coefficients) -> Vec<FGAbelianGroup> {
    chain_complex(sset)
        .cohomology(coeffs)
        .expect("modulus must be prime")
}

/// Reduced homology vanishes in degrees `0..=d`, i.e. the space is connected
/// and H_k = 0 for 1 <= k <= d. Requires `d < truncation` so every degree
/// checked is trustworthy.
pub fn is_acyclic_through(sset: &SimplicialSet, d: usize) -> bool {
    assert!(
        d < sset.truncation(),
        "degree {d} is not visible at truncation {}",
        sset.truncation()
    );
    let h = homology_of(sset, &Coefficients::Integers);
    let z = FGAbelianGroup::free(1);
    h[0] == z && h[1..=d].iter().all(FGAbelianGroup::is_trivial)
}

/// The matrices of a simplicial map on normalized chains: cells carried to a
/// degenerate simplex map to zero.
pub fn chain_map(f: &SSetMap, src: &SimplicialSet, dst: &SimplicialSet) -> Vec<IntMatrix> {
    let top = src.truncation().min(dst.truncation());
    (0..=top)
        .map(|n| {
            let mut m = IntMatrix::zero(dst.cell_count(n), src.cell_count(n));
            for c in src.cells_in_dim(n) {
                let img = f.image_of_cell(c);
                if !img.is_degenerate() {
                    m.add_assign_at(img.cell.index, c.index, &1.into());
                }
            }
            m
        })
        .collect()
}
