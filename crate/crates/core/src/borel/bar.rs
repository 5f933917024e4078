//! The bar model of EG and the classifying space BG.

use crate::algebra::FiniteGroup;
use crate::simplicial::{
    quotient_by_action, Cell, Quotient, Simplex, SimplicialAction, SimplicialSet,
};

/// EG truncated at `N`: nondegenerate n-cells are (n+1)-tuples of group
/// elements with no two consecutive entries equal, faces delete an entry,
/// and G translates every entry on the left. The action is free.
#[derive(Clone, Debug)]
pub struct FreeResolutionSpace {
    pub sset: SimplicialSet,
    pub action: SimplicialAction,
    order: usize,
}

pub fn bar_eg(group: &FiniteGroup, truncation: usize) -> FreeResolutionSpace {
    assert!(truncation >= 1, "EG needs at least dimension 1");
    let m = group.order();
    let mut sset = SimplicialSet::new(truncation);
    for n in 0..=truncation {
        let count = alternating_count(m, n);
        for idx in 0..count {
            let tuple = decode_tuple(m, n, idx);
            let faces = (0..if n == 0 { 0 } else { n + 1 })
                .map(|i| {
                    let mut t = tuple.clone();
                    t.remove(i);
                    simplex_of_tuple(m, &t)
                })
                .collect();
            let label = tuple
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",");
            let c = sset.add_cell(n, faces, format!("⟨{label}⟩"));
            debug_assert_eq!(c.index, idx);
        }
    }
    let perms = (0..m)
        .map(|g| {
            (0..=truncation)
                .map(|n| {
                    (0..alternating_count(m, n))
                        .map(|idx| {
                            let translated: Vec<usize> = decode_tuple(m, n, idx)
                                .iter()
                                .map(|&x| group.mul(g, x))
                                .collect();
                            encode_tuple(m, &translated)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let action = SimplicialAction::new(group.clone(), perms);
    FreeResolutionSpace {
        sset,
        action,
        order: m,
    }
}

impl FreeResolutionSpace {
    pub fn tuple_of_cell(&self, c: Cell) -> Vec<usize> {
        decode_tuple(self.order, c.dim, c.index)
    }

    pub fn cell_of_tuple(&self, tuple: &[usize]) -> Cell {
        debug_assert!(tuple.windows(2).all(|w| w[0] != w[1]));
        Cell::new(tuple.len() - 1, encode_tuple(self.order, tuple))
    }

    /// The simplex of an arbitrary tuple, degenerate where consecutive
    /// entries repeat.
    pub fn simplex_of_tuple(&self, tuple: &[usize]) -> Simplex {
        simplex_of_tuple(self.order, tuple)
    }
}

/// Number of alternating (n+1)-tuples over m symbols.
pub fn alternating_count(m: usize, n: usize) -> usize {
    (0..n).fold(m, |acc, _| acc * (m - 1))
}

/// Tuples are ordered lexicographically: first entry free, each later entry
/// ranked inside the m−1 elements different from its predecessor.
fn decode_tuple(m: usize, n: usize, mut idx: usize) -> Vec<usize> {
    let mut radix = alternating_count(m, n);
    radix /= m;
    let mut tuple = Vec::with_capacity(n + 1);
    tuple.push(idx / radix.max(1));
    idx %= radix.max(1);
    for _ in 0..n {
        radix /= m - 1;
        let r = idx / radix.max(1);
        idx %= radix.max(1);
        let prev = *tuple.last().unwrap();
        tuple.push(if r < prev { r } else { r + 1 });
    }
    tuple
}

fn encode_tuple(m: usize, tuple: &[usize]) -> usize {
    let mut idx = tuple[0];
    for w in tuple.windows(2) {
        let r = if w[1] < w[0] { w[1] } else { w[1] - 1 };
        idx = idx * (m - 1) + r;
    }
    idx
}

fn simplex_of_tuple(m: usize, tuple: &[usize]) -> Simplex {
    match tuple.windows(2).position(|w| w[0] == w[1]) {
        None => Simplex::of_cell(Cell::new(tuple.len() - 1, encode_tuple(m, tuple))),
        Some(j) => {
            let mut shorter = tuple.to_vec();
            shorter.remove(j + 1);
            let mut s = simplex_of_tuple(m, &shorter);
            crate::simplicial::sset::insert_degeneracy(&mut s.word, j);
            s
        }
    }
}

/// BG = EG/G, one cell per orbit of tuples.
pub fn classifying_space(group: &FiniteGroup, truncation: usize) -> Quotient {
    assert!(truncation >= 2, "BG needs 2-cells for its relations");
    let eg = bar_eg(group, truncation);
    quotient_by_action(&eg.sset, &eg.action)
}
