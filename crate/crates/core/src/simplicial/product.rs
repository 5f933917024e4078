//! Levelwise products of simplicial sets.
//!
//! An n-simplex of `A × B` is a pair of n-simplices; it is nondegenerate
//! exactly when the two degeneracy words share no letter (a common letter k
//! means the pair factors through `s_k`). Faces act coordinatewise and the
//! result is renormalized by stripping common letters.

use super::action::SimplicialAction;
use super::map::SSetMap;
use super::sset::{insert_degeneracy, Cell, Simplex, SimplicialSet};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct ProductSSet {
    pub sset: SimplicialSet,
    pub left: SimplicialSet,
    pub right: SimplicialSet,
    pairs: Vec<Vec<(Simplex, Simplex)>>,
    index: Vec<HashMap<(Simplex, Simplex), usize>>,
}

/// Builds `A × B` at the shared truncation (the minimum of the two).
pub fn product(a: &SimplicialSet, b: &SimplicialSet) -> ProductSSet {
    let truncation = a.truncation().min(b.truncation());
    let mut sset = SimplicialSet::new(truncation);
    let mut pairs: Vec<Vec<(Simplex, Simplex)>> = vec![Vec::new(); truncation + 1];
    let mut index: Vec<HashMap<(Simplex, Simplex), usize>> =
        vec![HashMap::new(); truncation + 1];
    for n in 0..=truncation {
        // jointly nondegenerate pairs, in (left simplex, right simplex) order
        let left_simplices = a.all_simplices(n);
        let right_simplices = b.all_simplices(n);
        for x in &left_simplices {
            for y in &right_simplices {
                if x.word.iter().any(|k| y.word.contains(k)) {
                    continue;
                }
                let faces = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n)
                        .map(|i| {
                            normalized_pair_simplex(
                                a,
                                b,
                                &index,
                                a.face(x, i),
                                b.face(y, i),
                            )
                        })
                        .collect()
                };
                let label = format!("({}|{})", simplex_label(a, x), simplex_label(b, y));
                let cell = sset.add_cell(n, faces, label);
                index[n].insert((x.clone(), y.clone()), cell.index);
                pairs[n].push((x.clone(), y.clone()));
            }
        }
    }
    ProductSSet {
        sset,
        left: a.clone(),
        right: b.clone(),
        pairs,
        index,
    }
}

fn simplex_label(x: &SimplicialSet, s: &Simplex) -> String {
    if s.word.is_empty() {
        x.label(s.cell).to_string()
    } else {
        let word = s
            .word
            .iter()
            .map(|i| format!("s{i}"))
            .collect::<Vec<_>>()
            .join("");
        format!("{}{}", word, x.label(s.cell))
    }
}

/// Normal form of an arbitrary pair of equal-dimension simplices as a
/// simplex of the product: strip common degeneracy letters, look up the
/// jointly nondegenerate base pair, and rebuild the outer word.
fn normalized_pair_simplex(
    a: &SimplicialSet,
    b: &SimplicialSet,
    index: &[HashMap<(Simplex, Simplex), usize>],
    mut x: Simplex,
    mut y: Simplex,
) -> Simplex {
    let mut stripped = Vec::new();
    loop {
        let common = x.word.iter().copied().find(|k| y.word.contains(k));
        match common {
            Some(k) => {
                x = a.face(&x, k);
                y = b.face(&y, k);
                stripped.push(k);
            }
            None => break,
        }
    }
    let n = x.dim();
    let base = index[n]
        .get(&(x, y))
        .expect("jointly nondegenerate pair registered in a lower dimension");
    let mut word = Vec::new();
    for &k in stripped.iter().rev() {
        insert_degeneracy(&mut word, k);
    }
    Simplex {
        word,
        cell: Cell::new(n, *base),
    }
}

impl ProductSSet {
    pub fn pair_of_cell(&self, c: Cell) -> &(Simplex, Simplex) {
        &self.pairs[c.dim][c.index]
    }

    /// The product simplex determined by an arbitrary pair of simplices of
    /// equal dimension.
    pub fn simplex_of_pair(&self, x: Simplex, y: Simplex) -> Simplex {
        debug_assert_eq!(x.dim(), y.dim());
        normalized_pair_simplex(&self.left, &self.right, &self.index, x, y)
    }

    pub fn cell_of_pair(&self, x: &Simplex, y: &Simplex) -> Option<Cell> {
        let n = x.dim();
        self.index[n]
            .get(&(x.clone(), y.clone()))
            .map(|&i| Cell::new(n, i))
    }

    pub fn projection_left(&self) -> SSetMap {
        SSetMap::new(
            self.pairs
                .iter()
                .map(|level| level.iter().map(|(x, _)| x.clone()).collect())
                .collect(),
        )
    }

    pub fn projection_right(&self) -> SSetMap {
        SSetMap::new(
            self.pairs
                .iter()
                .map(|level| level.iter().map(|(_, y)| y.clone()).collect())
                .collect(),
        )
    }

    /// The diagonal action `g · (x, y) = (g·x, g·y)` of a group acting on
    /// both factors.
    pub fn diagonal_action(
        &self,
        left_action: &SimplicialAction,
        right_action: &SimplicialAction,
    ) -> SimplicialAction {
        assert_eq!(left_action.group.order(), right_action.group.order());
        let order = left_action.group.order();
        let mut perms = Vec::with_capacity(order);
        for g in 0..order {
            let per_dim: Vec<Vec<usize>> = self
                .pairs
                .iter()
                .map(|level| {
                    level
                        .iter()
                        .map(|(x, y)| {
                            let gx = left_action.apply(g, x);
                            let gy = right_action.apply(g, y);
                            self.cell_of_pair(&gx, &gy)
                                .expect("action preserves joint nondegeneracy")
                                .index
                        })
                        .collect()
                })
                .collect();
            perms.push(per_dim);
        }
        SimplicialAction::new(left_action.group.clone(), perms)
    }

    /// The graph of `f: A -> B`, i.e. `(id, f): A -> A × B`.
    pub fn graph_map(&self, f: &SSetMap) -> SSetMap {
        SSetMap::new(
            (0..=self.left.truncation().min(self.sset.truncation()))
                .map(|n| {
                    self.left
                        .cells_in_dim(n)
                        .map(|c| {
                            self.simplex_of_pair(
                                Simplex::of_cell(c),
                                f.apply(&Simplex::of_cell(c)),
                            )
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

/// The map `r × e: A × B -> A' × B'` induced by maps of the factors.
pub fn product_map(
    src: &ProductSSet,
    dst: &ProductSSet,
    left: &SSetMap,
    right: &SSetMap,
) -> SSetMap {
    SSetMap::new(
        src.pairs
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|(x, y)| dst.simplex_of_pair(left.apply(x), right.apply(y)))
                    .collect()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_with_point_is_identity_shaped() {
        let d2 = SimplicialSet::standard_simplex(2, 2);
        let pt = SimplicialSet::point(2);
        let p = product(&d2, &pt);
        assert_eq!(p.sset.cell_counts(), d2.cell_counts());
        assert!(p.sset.validate().is_ok());
        assert!(p.projection_left().is_cell_iso(&p.sset, &d2));
    }

    #[test]
    fn square_of_the_interval() {
        let d1 = SimplicialSet::standard_simplex(1, 2);
        let p = product(&d1, &d1);
        assert_eq!(p.sset.cell_counts(), vec![4, 5, 2]);
        assert!(p.sset.validate().is_ok());
        assert!(p.projection_left().validate(&p.sset, &d1).is_ok());
        assert!(p.projection_right().validate(&p.sset, &d1).is_ok());
    }

    #[test]
    fn torus_model_from_circle_squared() {
        let c = SimplicialSet::minimal_circle(2);
        let p = product(&c, &c);
        assert_eq!(p.sset.cell_counts(), vec![1, 3, 2]);
        assert!(p.sset.validate().is_ok());
    }

    #[test]
    fn product_cell_counts_match_shuffle_formula() {
        // nondegenerate n-cells of A x B built from a p-cell and a q-cell
        // number C(n, n-p) * C(p, n-q) for p + q >= n
        let d2 = SimplicialSet::standard_simplex(2, 3);
        let d1 = SimplicialSet::standard_simplex(1, 3);
        let p = product(&d2, &d1);
        let choose = |n: usize, k: usize| -> usize {
            if k > n {
                return 0;
            }
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        };
        let a_counts = d2.cell_counts();
        let b_counts = d1.cell_counts();
        for n in 0..=3usize {
            let mut expected = 0;
            for (p_dim, &ac) in a_counts.iter().enumerate() {
                for (q_dim, &bc) in b_counts.iter().enumerate() {
                    if p_dim <= n && q_dim <= n && p_dim + q_dim >= n {
                        expected += ac * bc * choose(n, n - p_dim) * choose(p_dim, n - q_dim);
                    }
                }
            }
            assert_eq!(p.sset.cell_count(n), expected, "dimension {n}");
        }
    }

    #[test]
    fn graph_map_sections_the_projection() {
        let c = SimplicialSet::minimal_circle(2);
        let pt = SimplicialSet::point(2);
        let p = product(&c, &pt);
        let f = SSetMap::constant(&c, Cell::new(0, 0));
        let graph = p.graph_map(&f);
        assert!(graph.validate(&c, &p.sset).is_ok());
        let back = graph.then(&p.projection_left());
        assert_eq!(back, SSetMap::identity(&c));
    }
}
