//! Edge-path presentations of the fundamental group.

use crate::algebra::{free_reduce, invert_word, GroupPresentation};
use crate::simplicial::{Cell, Simplex, SimplicialSet};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Pi1Error {
    #[error("the space is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("truncation {0} is too low; 2-cells are needed for relations")]
    TruncationTooLow(usize),
    #[error("no vertex with index {0}")]
    NoSuchVertex(usize),
    #[error("fundamental group not resolved to a finite group")]
    InfiniteOrUnresolvedPi1,
}

/// A presentation of π₁ read off a breadth-first spanning tree: one
/// generator per nondegenerate non-tree edge, one relator per nondegenerate
/// 2-cell. Keeps the tree so that edges translate to words and generators
/// translate back to edge loops.
#[derive(Clone, Debug)]
pub struct Pi1Presentation {
    pub presentation: GroupPresentation,
    pub base: Cell,
    /// Per vertex: the tree edge to its BFS parent, with `true` when the
    /// edge is oriented parent -> vertex. `None` at the base.
    tree_edge: Vec<Option<(Cell, bool)>>,
    /// Per nondegenerate edge: `Some(letter)` for generator edges (positive,
    /// 1-based), `None` for tree edges.
    letter_of_edge: Vec<Option<i32>>,
    /// Per generator: the edge cell it labels.
    pub generator_edges: Vec<Cell>,
}

/// One traversal step of an edge path: the edge and whether it is walked
/// source-to-target.
pub type Step = (Simplex, bool);

pub fn pi1_presentation(x: &SimplicialSet, base: Cell) -> Result<Pi1Presentation, Pi1Error> {
    if x.truncation() < 2 {
        return Err(Pi1Error::TruncationTooLow(x.truncation()));
    }
    if base.dim != 0 || base.index >= x.cell_count(0) {
        return Err(Pi1Error::NoSuchVertex(base.index));
    }
    let components = x.component_count();
    if components != 1 {
        return Err(Pi1Error::Disconnected { components });
    }

    let n_vertices = x.cell_count(0);
    let mut tree_edge: Vec<Option<(Cell, bool)>> = vec![None; n_vertices];
    let mut visited = vec![false; n_vertices];
    visited[base.index] = true;
    let mut in_tree = vec![false; x.cell_count(1)];
    let mut frontier = vec![base.index];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &v in &frontier {
            for e in x.cells_in_dim(1) {
                let (a, b) = x.edge_endpoints(e);
                let (found, forward) = if a.index == v && !visited[b.index] {
                    (b.index, true)
                } else if b.index == v && !visited[a.index] {
                    (a.index, false)
                } else {
                    continue;
                };
                visited[found] = true;
                in_tree[e.index] = true;
                tree_edge[found] = Some((e, forward));
                next.push(found);
            }
        }
        frontier = next;
    }

    let mut letter_of_edge = vec![None; x.cell_count(1)];
    let mut generator_edges = Vec::new();
    for e in x.cells_in_dim(1) {
        if !in_tree[e.index] {
            generator_edges.push(e);
            letter_of_edge[e.index] = Some(generator_edges.len() as i32);
        }
    }

    let scaffold = Pi1Presentation {
        presentation: GroupPresentation::free(generator_edges.len()),
        base,
        tree_edge,
        letter_of_edge,
        generator_edges,
    };
    let mut relators = Vec::new();
    for f in x.cells_in_dim(2) {
        // around a triangle: (0->1)(1->2) = (0->2)
        let mut word = scaffold.edge_word(x.face_of_cell(f, 2));
        word.extend(scaffold.edge_word(x.face_of_cell(f, 0)));
        word.extend(invert_word(&scaffold.edge_word(x.face_of_cell(f, 1))));
        let word = free_reduce(&word);
        if !word.is_empty() {
            relators.push(word);
        }
    }
    Ok(Pi1Presentation {
        presentation: GroupPresentation::new(scaffold.presentation.n_generators, relators),
        ..scaffold
    })
}

impl Pi1Presentation {
    /// The word an edge reads as: empty for degenerate and tree edges, a
    /// single letter for generator edges.
    pub fn edge_word(&self, e: &Simplex) -> Vec<i32> {
        debug_assert_eq!(e.dim(), 1);
        if e.is_degenerate() {
            return Vec::new();
        }
        match self.letter_of_edge[e.cell.index] {
            Some(letter) => vec![letter],
            None => Vec::new(),
        }
    }

    /// The loop a generator stands for: tree path out, the edge, tree path
    /// back.
    pub fn generator_loop(&self, x: &SimplicialSet, k: usize) -> Vec<Step> {
        let e = self.generator_edges[k];
        let (v0, v1) = x.edge_endpoints(e);
        let mut steps = self.path_to(x, v0);
        steps.push((Simplex::of_cell(e), true));
        let mut back = self.path_to(x, v1);
        back.reverse();
        for s in &mut back {
            s.1 = !s.1;
        }
        steps.extend(back);
        steps
    }

    /// Tree path from the base to `v`.
    pub fn path_to(&self, x: &SimplicialSet, v: Cell) -> Vec<Step> {
        debug_assert_eq!(v.dim, 0);
        let mut steps = Vec::new();
        let mut cur = v.index;
        while let Some((e, forward)) = self.tree_edge[cur] {
            steps.push((Simplex::of_cell(e), forward));
            let (a, b) = x.edge_endpoints(e);
            cur = if forward { a.index } else { b.index };
        }
        steps.reverse();
        steps
    }

    /// Reads an edge path as a freely reduced word.
    pub fn word_of_path(&self, path: &[Step]) -> Vec<i32> {
        let mut word = Vec::new();
        for (e, forward) in path {
            let w = self.edge_word(e);
            word.extend(if *forward { w } else { invert_word(&w) });
        }
        free_reduce(&word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FGAbelianGroup;
    use crate::simplicial::{disjoint_union, OrderedComplex};

    #[test]
    fn circle_gives_one_free_generator() {
        let s = SimplicialSet::minimal_circle(2);
        let p = pi1_presentation(&s, Cell::new(0, 0)).unwrap();
        assert_eq!(p.presentation.n_generators, 1);
        assert!(p.presentation.relators.is_empty());
    }

    #[test]
    fn sphere_boundary_has_perfect_trivial_group() {
        let s = OrderedComplex::simplex_boundary(3).nerve(3).sset;
        let p = pi1_presentation(&s, Cell::new(0, 0)).unwrap();
        assert!(p.presentation.abelianization().is_trivial());
    }

    #[test]
    fn hexagon_abelianization_is_h1() {
        let s = OrderedComplex::polygon(6).to_simplicial_set(2);
        let p = pi1_presentation(&s, Cell::new(0, 0)).unwrap();
        assert_eq!(p.presentation.abelianization(), FGAbelianGroup::free(1));
    }

    #[test]
    fn disconnected_input_is_refused() {
        let a = SimplicialSet::point(2);
        let (u, _, _) = disjoint_union(&a, &a);
        assert!(matches!(
            pi1_presentation(&u, Cell::new(0, 0)),
            Err(Pi1Error::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn low_truncation_is_refused() {
        let s = SimplicialSet::minimal_circle(1);
        assert!(matches!(
            pi1_presentation(&s, Cell::new(0, 0)),
            Err(Pi1Error::TruncationTooLow(1))
        ));
    }

    #[test]
    fn generator_loops_read_back_as_single_letters() {
        let s = OrderedComplex::polygon(5).to_simplicial_set(2);
        let p = pi1_presentation(&s, Cell::new(0, 0)).unwrap();
        for k in 0..p.presentation.n_generators {
            let path = p.generator_loop(&s, k);
            assert_eq!(p.word_of_path(&path), vec![(k + 1) as i32]);
        }
    }
}
