//! Levelwise group actions on simplicial sets and their quotients.

use super::complex::NerveModel;
use super::map::{SSetMap, SubSSet};
use super::sset::{Cell, DisjointSets, Simplex, SimplicialSet};
use crate::algebra::{FiniteGroup, GroupHom};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("element {g} does not permute the {dim}-cells")]
    NotAPermutation { g: usize, dim: usize },
    #[error("the identity element moves {dim}-cell {cell}")]
    IdentityMoves { dim: usize, cell: usize },
    #[error("actions of {g} then {h} disagree with their product on {dim}-cell {cell}")]
    NotCompatible {
        g: usize,
        h: usize,
        dim: usize,
        cell: usize,
    },
    #[error("element {g} does not commute with face {i} of {dim}-cell {cell}")]
    NotEquivariant {
        g: usize,
        dim: usize,
        cell: usize,
        i: usize,
    },
    #[error("element {g} is not a symmetry of the complex (vertex permutation {perm:?})")]
    NotASymmetry { g: usize, perm: Vec<usize> },
    #[error("permutation table shape does not match the space")]
    ShapeMismatch,
}

/// A group acting by permutations of the nondegenerate cells in every
/// dimension. Degenerate simplices move by carrying their words along.
#[derive(Clone, Debug)]
pub struct SimplicialAction {
    pub group: FiniteGroup,
    /// `perms[g][dim][cell]` = image cell index.
    perms: Vec<Vec<Vec<usize>>>,
}

impl SimplicialAction {
    pub fn new(group: FiniteGroup, perms: Vec<Vec<Vec<usize>>>) -> Self {
        SimplicialAction { group, perms }
    }

    pub fn trivial(group: FiniteGroup, x: &SimplicialSet) -> Self {
        let identity: Vec<Vec<usize>> = (0..=x.truncation())
            .map(|n| (0..x.cell_count(n)).collect())
            .collect();
        SimplicialAction {
            perms: vec![identity; group.order()],
            group,
        }
    }

    pub fn apply_cell(&self, g: usize, c: Cell) -> Cell {
        Cell::new(c.dim, self.perms[g][c.dim][c.index])
    }

    pub fn apply(&self, g: usize, s: &Simplex) -> Simplex {
        Simplex {
            word: s.word.clone(),
            cell: self.apply_cell(g, s.cell),
        }
    }

    pub fn validate(&self, x: &SimplicialSet) -> Result<(), ActionError> {
        if self.perms.len() != self.group.order() {
            return Err(ActionError::ShapeMismatch);
        }
        for (g, per_dim) in self.perms.iter().enumerate() {
            if per_dim.len() != x.truncation() + 1 {
                return Err(ActionError::ShapeMismatch);
            }
            for (dim, perm) in per_dim.iter().enumerate() {
                if perm.len() != x.cell_count(dim) {
                    return Err(ActionError::ShapeMismatch);
                }
                let mut seen = vec![false; perm.len()];
                for &img in perm {
                    if img >= perm.len() || seen[img] {
                        return Err(ActionError::NotAPermutation { g, dim });
                    }
                    seen[img] = true;
                }
            }
        }
        for dim in 0..=x.truncation() {
            for cell in 0..x.cell_count(dim) {
                if self.perms[0][dim][cell] != cell {
                    return Err(ActionError::IdentityMoves { dim, cell });
                }
            }
        }
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                let gh = self.group.mul(g, h);
                for dim in 0..=x.truncation() {
                    for cell in 0..x.cell_count(dim) {
                        let seq = self.perms[g][dim][self.perms[h][dim][cell]];
                        if seq != self.perms[gh][dim][cell] {
                            return Err(ActionError::NotCompatible { g, h, dim, cell });
                        }
                    }
                }
            }
        }
        for g in 0..self.group.order() {
            for dim in 1..=x.truncation() {
                for cell in 0..x.cell_count(dim) {
                    let c = Cell::new(dim, cell);
                    let gc = self.apply_cell(g, c);
                    for i in 0..=dim {
                        let lhs = self.apply(g, x.face_of_cell(c, i));
                        let rhs = x.face_of_cell(gc, i);
                        if lhs != *rhs {
                            return Err(ActionError::NotEquivariant { g, dim, cell, i });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// No nonidentity element fixes a nondegenerate cell. Freeness on all
    /// simplices follows, since the action preserves degeneracy words.
    pub fn is_free(&self, x: &SimplicialSet) -> bool {
        (1..self.group.order()).all(|g| {
            (0..=x.truncation()).all(|dim| {
                (0..x.cell_count(dim)).all(|cell| self.perms[g][dim][cell] != cell)
            })
        })
    }

    /// Isotropy subgroup of a cell, as element indices.
    pub fn isotropy(&self, c: Cell) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.apply_cell(g, c) == c)
            .collect()
    }

    /// Orbit ids per cell in one dimension, numbered by least member;
    /// also returns the least cell index of each orbit.
    pub fn orbits(&self, x: &SimplicialSet, dim: usize) -> (Vec<usize>, Vec<usize>) {
        let n = x.cell_count(dim);
        let mut dsu = DisjointSets::new(n);
        for g in 1..self.group.order() {
            for cell in 0..n {
                dsu.union(cell, self.perms[g][dim][cell]);
            }
        }
        let orbit_of = dsu.canonical_ids();
        let mut reps = vec![usize::MAX; orbit_of.iter().copied().max().map_or(0, |m| m + 1)];
        for (cell, &o) in orbit_of.iter().enumerate() {
            reps[o] = reps[o].min(cell);
        }
        (orbit_of, reps)
    }

    pub fn orbit_of_cell(&self, c: Cell) -> Vec<Cell> {
        let mut orbit: Vec<Cell> = (0..self.group.order())
            .map(|g| self.apply_cell(g, c))
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }
}

/// Transports a vertex-permutation action on a complex to its nerve: each
/// permutation maps a chain of simplices to the chain of image simplices.
/// `vertex_perms[g]` gives the image of every complex vertex under element
/// `g`; it must be a symmetry of the complex for every `g`.
pub fn nerve_action(
    nerve: &NerveModel,
    group: &FiniteGroup,
    vertex_perms: &[Vec<usize>],
) -> Result<SimplicialAction, ActionError> {
    if vertex_perms.len() != group.order() {
        return Err(ActionError::ShapeMismatch);
    }
    let complex = &nerve.complex;
    for (g, perm) in vertex_perms.iter().enumerate() {
        if !complex.is_symmetry(perm) {
            return Err(ActionError::NotASymmetry {
                g,
                perm: perm.clone(),
            });
        }
    }
    // poset permutation per element
    let simplex_image = |perm: &[usize], s: &[usize]| -> usize {
        let mut img: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
        img.sort_unstable();
        complex.simplex_id(&img).expect("symmetry checked above")
    };
    let x = &nerve.sset;
    let mut perms = Vec::with_capacity(group.order());
    for perm in vertex_perms {
        let mut per_dim = Vec::with_capacity(x.truncation() + 1);
        for n in 0..=x.truncation() {
            let mut level = Vec::with_capacity(x.cell_count(n));
            for c in x.cells_in_dim(n) {
                let chain = nerve.chain_of_cell(c);
                let image_chain: Vec<usize> = chain
                    .iter()
                    .map(|&id| simplex_image(perm, &complex.simplices()[id]))
                    .collect();
                let img = nerve
                    .cell_of_chain(&image_chain)
                    .expect("image of a chain is a chain");
                level.push(img.index);
            }
            per_dim.push(level);
        }
        perms.push(per_dim);
    }
    let action = SimplicialAction {
        group: group.clone(),
        perms,
    };
    action.validate(x)?;
    Ok(action)
}

/// Restricts an ambient action to a subgroup acting on an invariant
/// subobject; `embed` sends subgroup elements into the ambient group.
/// Returns `None` when some element moves a cell out of the subobject.
pub fn restrict_action(
    ambient: &SimplicialAction,
    sub: &FiniteGroup,
    embed: &GroupHom,
    region: &SubSSet,
) -> Option<SimplicialAction> {
    let truncation = region.sset.truncation();
    let mut perms = Vec::with_capacity(sub.order());
    for g in 0..sub.order() {
        let big = embed.apply(g);
        let mut per_dim = Vec::with_capacity(truncation + 1);
        for n in 0..=truncation {
            let mut level = Vec::with_capacity(region.sset.cell_count(n));
            for c in region.sset.cells_in_dim(n) {
                let moved = ambient.apply_cell(big, region.ambient_cell(c));
                level.push(region.sub_cell(moved)?.index);
            }
            per_dim.push(level);
        }
        perms.push(per_dim);
    }
    let action = SimplicialAction {
        group: sub.clone(),
        perms,
    };
    debug_assert!(action.validate(&region.sset).is_ok());
    Some(action)
}

/// A quotient `X/G` with its projection and orbit bookkeeping.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub sset: SimplicialSet,
    pub projection: SSetMap,
    /// `orbit_of[dim][cell]` = quotient cell index.
    pub orbit_of: Vec<Vec<usize>>,
    /// `rep[dim][orbit]` = least source cell index in the orbit.
    pub rep: Vec<Vec<usize>>,
}

/// Levelwise orbit space: nondegenerate cells are orbits of nondegenerate
/// cells (the action preserves degeneracy), faces are faces of the least
/// representative pushed to orbits.
pub fn quotient_by_action(x: &SimplicialSet, action: &SimplicialAction) -> Quotient {
    let mut sset = SimplicialSet::new(x.truncation());
    let mut orbit_of: Vec<Vec<usize>> = Vec::with_capacity(x.truncation() + 1);
    let mut rep = Vec::with_capacity(x.truncation() + 1);
    for dim in 0..=x.truncation() {
        let (orbits, reps) = action.orbits(x, dim);
        for (o, &r) in reps.iter().enumerate() {
            let c = Cell::new(dim, r);
            let faces = (0..if dim == 0 { 0 } else { dim + 1 })
                .map(|i| {
                    let f = x.face_of_cell(c, i);
                    Simplex {
                        word: f.word.clone(),
                        cell: Cell::new(f.cell.dim, orbit_of[f.cell.dim][f.cell.index]),
                    }
                })
                .collect();
            let q = sset.add_cell(dim, faces, format!("[{}]", x.label(c)));
            debug_assert_eq!(q.index, o);
        }
        orbit_of.push(orbits);
        rep.push(reps);
    }
    let projection = SSetMap::new(
        (0..=x.truncation())
            .map(|dim| {
                (0..x.cell_count(dim))
                    .map(|cell| Simplex::of_cell(Cell::new(dim, orbit_of[dim][cell])))
                    .collect()
            })
            .collect(),
    );
    Quotient {
        sset,
        projection,
        orbit_of,
        rep,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::complex::OrderedComplex;

    fn z2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    #[test]
    fn trivial_action_quotient_is_identity() {
        let d2 = SimplicialSet::standard_simplex(2, 2);
        let action = SimplicialAction::trivial(z2(), &d2);
        assert!(action.validate(&d2).is_ok());
        let q = quotient_by_action(&d2, &action);
        assert_eq!(q.sset.cell_counts(), d2.cell_counts());
        assert!(q.projection.is_cell_iso(&d2, &q.sset));
    }

    #[test]
    fn swap_of_two_vertices_collapses() {
        let mut x = SimplicialSet::new(1);
        x.add_cell(0, Vec::new(), "a");
        x.add_cell(0, Vec::new(), "b");
        let perms = vec![vec![vec![0, 1], vec![]], vec![vec![1, 0], vec![]]];
        let action = SimplicialAction::new(z2(), perms);
        assert!(action.validate(&x).is_ok());
        assert!(action.is_free(&x));
        let q = quotient_by_action(&x, &action);
        assert_eq!(q.sset.cell_counts(), vec![1, 0]);
    }

    #[test]
    fn reflection_acts_on_the_path_nerve() {
        // vertices 0..4 standing for -2..2, reflection v -> 4 - v
        let path = OrderedComplex::interval_path(4);
        let nerve = path.nerve(3);
        assert_eq!(nerve.sset.cell_counts(), vec![9, 8, 0, 0]);
        let flip: Vec<usize> = (0..5).map(|v| 4 - v).collect();
        let action = nerve_action(&nerve, &z2(), &[(0..5).collect(), flip]).unwrap();
        assert!(!action.is_free(&nerve.sset)); // center vertex is fixed
        let q = quotient_by_action(&nerve.sset, &action);
        assert_eq!(q.sset.cell_counts(), vec![5, 4, 0, 0]);
        assert!(q.sset.validate().is_ok());
        // the quotient is a path: Euler characteristic 1, connected
        assert_eq!(q.sset.component_count(), 1);
    }

    #[test]
    fn non_symmetry_is_rejected() {
        let path = OrderedComplex::interval_path(2);
        let nerve = path.nerve(2);
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2]]; // sends edge {1,2} to the non-simplex {0,2}
        let err = nerve_action(&nerve, &z2(), &bad).unwrap_err();
        assert!(matches!(err, ActionError::NotASymmetry { g: 1, .. }));
    }

    #[test]
    fn isotropy_of_fixed_and_moved_cells() {
        let path = OrderedComplex::interval_path(2);
        let nerve = path.nerve(2);
        let flip: Vec<usize> = vec![2, 1, 0];
        let action = nerve_action(&nerve, &z2(), &[vec![0, 1, 2], flip]).unwrap();
        let center = nerve.barycenter(&[1]).unwrap();
        let end = nerve.barycenter(&[0]).unwrap();
        assert_eq!(action.isotropy(center), vec![0, 1]);
        assert_eq!(action.isotropy(end), vec![0]);
    }

    #[test]
    fn restriction_to_an_invariant_star() {
        let path = OrderedComplex::interval_path(2);
        let nerve = path.nerve(2);
        let action = nerve_action(&nerve, &z2(), &[vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        let center = nerve.barycenter(&[1]).unwrap();
        let star = crate::simplicial::map::star_neighborhood(&nerve.sset, center);
        let embed = GroupHom::identity(&z2());
        let restricted = restrict_action(&action, &z2(), &embed, &star).unwrap();
        assert!(restricted.validate(&star.sset).is_ok());
        // the restricted flip swaps the two edges of the star
        assert_ne!(restricted.apply_cell(1, Cell::new(1, 0)), Cell::new(1, 0));

        // a star around an endpoint is not invariant
        let end = nerve.barycenter(&[0]).unwrap();
        let lopsided = crate::simplicial::map::star_neighborhood(&nerve.sset, end);
        assert!(restrict_action(&action, &z2(), &embed, &lopsided).is_none());
    }
}
