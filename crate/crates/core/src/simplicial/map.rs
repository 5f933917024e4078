//! Maps of simplicial sets, subobjects, and disjoint unions.

use super::sset::{compose_words, Cell, Simplex, SimplicialSet};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("image of {dim}-cell {cell} has dimension {got}, expected {dim}")]
    WrongDimension { dim: usize, cell: usize, got: usize },
    #[error("map does not commute with face {i} of {dim}-cell {cell}")]
    NotSimplicial { dim: usize, cell: usize, i: usize },
    #[error("source and target truncations differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
}

/// A simplicial map, recorded by the image of every nondegenerate source
/// cell. Images of degenerate simplices follow by pushing words through.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSetMap {
    images: Vec<Vec<Simplex>>,
}

impl SSetMap {
    pub fn new(images: Vec<Vec<Simplex>>) -> Self {
        SSetMap { images }
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        SSetMap {
            images: (0..=x.truncation())
                .map(|n| x.cells_in_dim(n).map(Simplex::of_cell).collect())
                .collect(),
        }
    }

    /// The constant map collapsing everything to one vertex of the target.
    pub fn constant(src: &SimplicialSet, target_vertex: Cell) -> Self {
        debug_assert_eq!(target_vertex.dim, 0);
        SSetMap {
            images: (0..=src.truncation())
                .map(|n| {
                    let word: Vec<usize> = (0..n).rev().collect();
                    (0..src.cell_count(n))
                        .map(|_| Simplex {
                            word: word.clone(),
                            cell: target_vertex,
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn image_of_cell(&self, c: Cell) -> &Simplex {
        &self.images[c.dim][c.index]
    }

    /// Image of an arbitrary simplex: `f(s_W z) = s_W f(z)`.
    pub fn apply(&self, s: &Simplex) -> Simplex {
        let base = self.image_of_cell(s.cell);
        if s.word.is_empty() {
            base.clone()
        } else {
            Simplex {
                word: compose_words(&s.word, &base.word),
                cell: base.cell,
            }
        }
    }

    /// Checks dimensions and commutation with every face operator.
    pub fn validate(&self, src: &SimplicialSet, dst: &SimplicialSet) -> Result<(), MapError> {
        if src.truncation() != dst.truncation() {
            return Err(MapError::TruncationMismatch(
                src.truncation(),
                dst.truncation(),
            ));
        }
        for n in 0..=src.truncation() {
            for c in src.cells_in_dim(n) {
                let img = self.image_of_cell(c);
                if img.dim() != n {
                    return Err(MapError::WrongDimension {
                        dim: n,
                        cell: c.index,
                        got: img.dim(),
                    });
                }
                for i in 0..=n {
                    if n == 0 {
                        break;
                    }
                    let lhs = self.apply(src.face_of_cell(c, i));
                    let rhs = dst.face(img, i);
                    if lhs != rhs {
                        return Err(MapError::NotSimplicial {
                            dim: n,
                            cell: c.index,
                            i,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn then(&self, g: &SSetMap) -> SSetMap {
        SSetMap {
            images: self
                .images
                .iter()
                .map(|dim| dim.iter().map(|s| g.apply(s)).collect())
                .collect(),
        }
    }

    /// True when the map sends nondegenerate cells bijectively to
    /// nondegenerate cells in every dimension — an isomorphism of the
    /// underlying cell complexes.
    pub fn is_cell_iso(&self, src: &SimplicialSet, dst: &SimplicialSet) -> bool {
        for n in 0..=src.truncation().min(dst.truncation()) {
            if src.cell_count(n) != dst.cell_count(n) {
                return false;
            }
            let mut hit = vec![false; dst.cell_count(n)];
            for c in src.cells_in_dim(n) {
                let img = self.image_of_cell(c);
                if img.is_degenerate() || img.dim() != n || hit[img.cell.index] {
                    return false;
                }
                hit[img.cell.index] = true;
            }
        }
        true
    }

    /// Inverse of a cell isomorphism.
    pub fn inverse_iso(&self, src: &SimplicialSet, dst: &SimplicialSet) -> Option<SSetMap> {
        if !self.is_cell_iso(src, dst) {
            return None;
        }
        let mut images: Vec<Vec<Simplex>> = (0..=dst.truncation())
            .map(|n| vec![Simplex::of_cell(Cell::new(0, 0)); dst.cell_count(n)])
            .collect();
        for n in 0..=src.truncation() {
            for c in src.cells_in_dim(n) {
                let img = self.image_of_cell(c);
                images[n][img.cell.index] = Simplex::of_cell(c);
            }
        }
        Some(SSetMap { images })
    }
}

/// A simplicial subset presented by its own `SimplicialSet` plus the
/// inclusion data back into the ambient object.
#[derive(Clone, Debug)]
pub struct SubSSet {
    pub sset: SimplicialSet,
    pub inclusion: SSetMap,
    ambient_of: Vec<Vec<Cell>>,
    sub_of: HashMap<Cell, Cell>,
}

impl SubSSet {
    pub fn ambient_cell(&self, c: Cell) -> Cell {
        self.ambient_of[c.dim][c.index]
    }

    pub fn sub_cell(&self, ambient: Cell) -> Option<Cell> {
        self.sub_of.get(&ambient).copied()
    }

    pub fn contains(&self, ambient: Cell) -> bool {
        self.sub_of.contains_key(&ambient)
    }

    /// Pulls an ambient simplex back into the subobject; `None` if its cell
    /// is not present.
    pub fn pull_back(&self, s: &Simplex) -> Option<Simplex> {
        self.sub_cell(s.cell).map(|cell| Simplex {
            word: s.word.clone(),
            cell,
        })
    }

    /// Restricts `f: X -> Y` to a map of subobjects, provided every image
    /// lands in the target subobject.
    pub fn restrict_map(&self, f: &SSetMap, target: &SubSSet) -> Option<SSetMap> {
        let mut images = Vec::with_capacity(self.ambient_of.len());
        for dim_cells in &self.ambient_of {
            let mut level = Vec::with_capacity(dim_cells.len());
            for &amb in dim_cells {
                let img = f.apply(&Simplex::of_cell(amb));
                level.push(target.pull_back(&img)?);
            }
            images.push(level);
        }
        Some(SSetMap { images })
    }
}

/// The smallest subobject of `x` containing the seed cells: closes under
/// faces and rebuilds the cell table in ambient order.
pub fn sub_sset(x: &SimplicialSet, seeds: &[Cell]) -> SubSSet {
    let mut keep: Vec<Vec<bool>> = (0..=x.truncation())
        .map(|n| vec![false; x.cell_count(n)])
        .collect();
    let mut stack: Vec<Cell> = seeds.to_vec();
    while let Some(c) = stack.pop() {
        if keep[c.dim][c.index] {
            continue;
        }
        keep[c.dim][c.index] = true;
        if c.dim > 0 {
            for i in 0..=c.dim {
                stack.push(x.face_of_cell(c, i).cell);
            }
        }
    }
    let mut sset = SimplicialSet::new(x.truncation());
    let mut ambient_of: Vec<Vec<Cell>> = vec![Vec::new(); x.truncation() + 1];
    let mut sub_of: HashMap<Cell, Cell> = HashMap::new();
    for n in 0..=x.truncation() {
        for index in 0..x.cell_count(n) {
            if !keep[n][index] {
                continue;
            }
            let ambient = Cell::new(n, index);
            let faces = (0..if n == 0 { 0 } else { n + 1 })
                .map(|i| {
                    let f = x.face_of_cell(ambient, i);
                    Simplex {
                        word: f.word.clone(),
                        cell: sub_of[&f.cell],
                    }
                })
                .collect();
            let sub = sset.add_cell(n, faces, x.label(ambient));
            ambient_of[n].push(ambient);
            sub_of.insert(ambient, sub);
        }
    }
    let inclusion = SSetMap::new(
        ambient_of
            .iter()
            .map(|cells| cells.iter().map(|&c| Simplex::of_cell(c)).collect())
            .collect(),
    );
    SubSSet {
        sset,
        inclusion,
        ambient_of,
        sub_of,
    }
}

/// Closed star of a vertex: every cell whose vertex set contains it, plus
/// all their faces.
pub fn star_neighborhood(x: &SimplicialSet, v: Cell) -> SubSSet {
    debug_assert_eq!(v.dim, 0);
    let mut seeds = Vec::new();
    for n in 0..=x.truncation() {
        for c in x.cells_in_dim(n) {
            if x.vertices(&Simplex::of_cell(c)).contains(&v) {
                seeds.push(c);
            }
        }
    }
    sub_sset(x, &seeds)
}

/// Full preimage of a subobject: every cell of `src` whose image under `f`
/// lands (up to degeneracy) inside `region`.
pub fn preimage(f: &SSetMap, src: &SimplicialSet, region: &SubSSet) -> SubSSet {
    let mut seeds = Vec::new();
    for n in 0..=src.truncation() {
        for c in src.cells_in_dim(n) {
            if region.contains(f.image_of_cell(c).cell) {
                seeds.push(c);
            }
        }
    }
    sub_sset(src, &seeds)
}

/// Disjoint union with the two inclusions.
pub fn disjoint_union(a: &SimplicialSet, b: &SimplicialSet) -> (SimplicialSet, SSetMap, SSetMap) {
    assert_eq!(a.truncation(), b.truncation());
    let mut out = SimplicialSet::new(a.truncation());
    let mut incl_a: Vec<Vec<Simplex>> = Vec::new();
    let mut incl_b: Vec<Vec<Simplex>> = Vec::new();
    for n in 0..=a.truncation() {
        let mut level_a = Vec::new();
        for c in a.cells_in_dim(n) {
            let faces = (0..if n == 0 { 0 } else { n + 1 })
                .map(|i| a.face_of_cell(c, i).clone())
                .collect();
            level_a.push(Simplex::of_cell(out.add_cell(n, faces, a.label(c))));
        }
        incl_a.push(level_a);
        let offset: Vec<usize> = (0..=n).map(|m| a.cell_count(m)).collect();
        let mut level_b = Vec::new();
        for c in b.cells_in_dim(n) {
            let faces = (0..if n == 0 { 0 } else { n + 1 })
                .map(|i| {
                    let f = b.face_of_cell(c, i);
                    Simplex {
                        word: f.word.clone(),
                        cell: Cell::new(f.cell.dim, f.cell.index + offset[f.cell.dim]),
                    }
                })
                .collect();
            level_b.push(Simplex::of_cell(out.add_cell(n, faces, b.label(c))));
        }
        incl_b.push(level_b);
    }
    (out, SSetMap::new(incl_a), SSetMap::new(incl_b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_validates_and_is_iso() {
        let d2 = SimplicialSet::standard_simplex(2, 2);
        let id = SSetMap::identity(&d2);
        assert!(id.validate(&d2, &d2).is_ok());
        assert!(id.is_cell_iso(&d2, &d2));
    }

    #[test]
    fn constant_map_is_simplicial() {
        let d2 = SimplicialSet::standard_simplex(2, 2);
        let pt = SimplicialSet::point(2);
        let f = SSetMap::constant(&d2, Cell::new(0, 0));
        assert!(f.validate(&d2, &pt).is_ok());
        assert!(!f.is_cell_iso(&d2, &pt));
    }

    #[test]
    fn star_of_middle_vertex_in_a_path() {
        // nerve of a single edge is a path of length 2; the star of the
        // barycenter is the whole path
        let complex = super::super::complex::OrderedComplex::interval_path(1);
        let nerve = complex.nerve(2);
        let center = nerve.barycenter(&[0, 1]).unwrap();
        let star = star_neighborhood(&nerve.sset, center);
        assert_eq!(star.sset.cell_counts(), nerve.sset.cell_counts());

        // the star of an endpoint is just one edge
        let end = nerve.barycenter(&[0]).unwrap();
        let star = star_neighborhood(&nerve.sset, end);
        assert_eq!(star.sset.cell_counts(), vec![2, 1, 0]);
        assert!(star.inclusion.validate(&star.sset, &nerve.sset).is_ok());
    }

    #[test]
    fn preimage_of_a_star_under_an_edge_collapse() {
        // collapse the last edge of a three-edge path onto the endpoint of a
        // two-edge path, then pull back the closed star of that endpoint
        let src = super::super::complex::OrderedComplex::interval_path(3).to_simplicial_set(2);
        let dst = super::super::complex::OrderedComplex::interval_path(2).to_simplicial_set(2);
        let f = SSetMap::new(vec![
            (0..4)
                .map(|v| Simplex::of_cell(Cell::new(0, v.min(2))))
                .collect(),
            vec![
                Simplex::of_cell(Cell::new(1, 0)),
                Simplex::of_cell(Cell::new(1, 1)),
                Simplex {
                    word: vec![0],
                    cell: Cell::new(0, 2),
                },
            ],
            Vec::new(),
        ]);
        assert!(f.validate(&src, &dst).is_ok());

        let star = star_neighborhood(&dst, Cell::new(0, 2));
        let pre = preimage(&f, &src, &star);
        assert_eq!(pre.sset.cell_counts(), vec![3, 2, 0]);
        assert!(pre.contains(Cell::new(0, 3)));
        assert!(!pre.contains(Cell::new(0, 0)));
    }

    #[test]
    fn sub_sset_closes_under_faces() {
        let d2 = SimplicialSet::standard_simplex(2, 2);
        let top = Cell::new(2, 0);
        let sub = sub_sset(&d2, &[top]);
        assert_eq!(sub.sset.cell_counts(), d2.cell_counts());
        assert!(sub.sset.validate().is_ok());
    }

    #[test]
    fn disjoint_union_counts_add() {
        let a = SimplicialSet::standard_simplex(1, 2);
        let b = SimplicialSet::minimal_circle(2);
        let (u, ia, ib) = disjoint_union(&a, &b);
        assert_eq!(u.cell_counts(), vec![3, 2, 0]);
        assert!(u.validate().is_ok());
        assert!(ia.validate(&a, &u).is_ok());
        assert!(ib.validate(&b, &u).is_ok());
        assert_eq!(u.component_count(), 2);
    }

    #[test]
    fn composition_applies_pointwise() {
        let d1 = SimplicialSet::standard_simplex(1, 1);
        let pt = SimplicialSet::point(1);
        let c = SSetMap::constant(&d1, Cell::new(0, 0));
        let id = SSetMap::identity(&pt);
        let both = c.then(&id);
        assert_eq!(both, c);
    }
}
