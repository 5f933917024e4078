//! Truncated simplicial sets, stored by their nondegenerate cells.
//!
//! A simplex is a degeneracy word applied to a nondegenerate cell; every
//! simplex has a unique such normal form with strictly decreasing word. Face
//! and degeneracy operators push through the words with the usual rewriting
//! rules, so only the faces of nondegenerate cells are ever stored.

use std::collections::HashMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SsetError {
    #[error("face {i} of {dim}-cell {cell} has dimension {got}, expected {expected}")]
    FaceDimension {
        dim: usize,
        cell: usize,
        i: usize,
        got: usize,
        expected: usize,
    },
    #[error("face identity d_{i} d_{j} = d_{j_minus} d_{i} fails on {dim}-cell {cell}")]
    FaceIdentity {
        dim: usize,
        cell: usize,
        i: usize,
        j: usize,
        j_minus: usize,
    },
    #[error("cell of dimension {dim} exceeds truncation {truncation}")]
    AboveTruncation { dim: usize, truncation: usize },
}

/// A nondegenerate cell: dimension plus index within that dimension.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cell {
    pub dim: usize,
    pub index: usize,
}

impl Cell {
    pub fn new(dim: usize, index: usize) -> Self {
        Cell { dim, index }
    }
}

/// A simplex in normal form: a strictly decreasing degeneracy word applied to
/// a nondegenerate cell. The word is stored outermost-first, so
/// `word = [3, 1]` over a cell `z` means `s_3 (s_1 z)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Simplex {
    pub word: Vec<usize>,
    pub cell: Cell,
}

impl Simplex {
    pub fn of_cell(cell: Cell) -> Self {
        Simplex {
            word: Vec::new(),
            cell,
        }
    }

    pub fn dim(&self) -> usize {
        self.cell.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }
}

/// Prepends one degeneracy to a strictly decreasing word, restoring the
/// normal form with the rule `s_i s_j = s_{j+1} s_i` for `i <= j`.
pub fn insert_degeneracy(word: &mut Vec<usize>, i: usize) {
    let mut pos = 0;
    while pos < word.len() && i <= word[pos] {
        word[pos] += 1;
        pos += 1;
    }
    word.insert(pos, i);
}

/// Normal form of `s_outer ∘ s_inner` for two decreasing words.
pub fn compose_words(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    let mut word = inner.to_vec();
    for &i in outer.iter().rev() {
        insert_degeneracy(&mut word, i);
    }
    word
}

#[derive(Clone, Debug)]
struct CellData {
    faces: Vec<Simplex>,
    label: String,
}

/// A simplicial set truncated at a fixed top dimension.
#[derive(Clone, Debug)]
pub struct SimplicialSet {
    truncation: usize,
    cells: Vec<Vec<CellData>>,
}

impl SimplicialSet {
    pub fn new(truncation: usize) -> Self {
        SimplicialSet {
            truncation,
            cells: vec![Vec::new(); truncation + 1],
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Registers a nondegenerate cell. `faces` lists `d_0 .. d_dim` as
    /// simplices in normal form; a 0-cell passes an empty list.
    pub fn add_cell(&mut self, dim: usize, faces: Vec<Simplex>, label: impl Into<String>) -> Cell {
        assert!(
            dim <= self.truncation,
            "cell dimension {dim} above truncation {}",
            self.truncation
        );
        let expected = if dim == 0 { 0 } else { dim + 1 };
        assert_eq!(faces.len(), expected, "a {dim}-cell carries {expected} faces");
        for (i, f) in faces.iter().enumerate() {
            assert_eq!(
                f.dim(),
                dim - 1,
                "face {i} has dimension {} but should have {}",
                f.dim(),
                dim - 1
            );
            assert!(
                f.cell.index < self.cells[f.cell.dim].len(),
                "face {i} refers to a cell that does not exist yet"
            );
        }
        let index = self.cells[dim].len();
        self.cells[dim].push(CellData {
            faces,
            label: label.into(),
        });
        Cell { dim, index }
    }

    pub fn cell_count(&self, n: usize) -> usize {
        if n <= self.truncation {
            self.cells[n].len()
        } else {
            0
        }
    }

    /// Nondegenerate cell counts per dimension, `0 ..= truncation`.
    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cells_in_dim(&self, n: usize) -> impl Iterator<Item = Cell> + '_ {
        (0..self.cell_count(n)).map(move |index| Cell { dim: n, index })
    }

    pub fn label(&self, c: Cell) -> &str {
        &self.cells[c.dim][c.index].label
    }

    pub fn set_label(&mut self, c: Cell, label: impl Into<String>) {
        self.cells[c.dim][c.index].label = label.into();
    }

    pub fn face_of_cell(&self, c: Cell, i: usize) -> &Simplex {
        &self.cells[c.dim][c.index].faces[i]
    }

    /// `d_i`, valid for `0 <= i <= dim` on a simplex of positive dimension.
    pub fn face(&self, s: &Simplex, i: usize) -> Simplex {
        debug_assert!(s.dim() >= 1 && i <= s.dim());
        if let Some((&j, rest)) = s.word.split_first() {
            let inner = Simplex {
                word: rest.to_vec(),
                cell: s.cell,
            };
            if i < j {
                let mut f = self.face(&inner, i);
                insert_degeneracy(&mut f.word, j - 1);
                f
            } else if i == j || i == j + 1 {
                inner
            } else {
                let mut f = self.face(&inner, i - 1);
                insert_degeneracy(&mut f.word, j);
                f
            }
        } else {
            self.cells[s.cell.dim][s.cell.index].faces[i].clone()
        }
    }

    /// `s_i`, valid for `0 <= i <= dim`.
    pub fn degenerate(&self, s: &Simplex, i: usize) -> Simplex {
        debug_assert!(i <= s.dim());
        let mut out = s.clone();
        insert_degeneracy(&mut out.word, i);
        out
    }

    /// Applies a decreasing degeneracy word on top of a simplex.
    pub fn apply_word(&self, s: &Simplex, word: &[usize]) -> Simplex {
        Simplex {
            word: compose_words(word, &s.word),
            cell: s.cell,
        }
    }

    /// The `k`-th vertex. Vertices are always nondegenerate, so this returns
    /// a 0-cell.
    pub fn vertex(&self, s: &Simplex, k: usize) -> Cell {
        debug_assert!(k <= s.dim());
        let mut cur = s.clone();
        for i in (0..=s.dim()).rev() {
            if i != k {
                cur = self.face(&cur, i);
            }
        }
        debug_assert!(cur.word.is_empty());
        cur.cell
    }

    pub fn vertices(&self, s: &Simplex) -> Vec<Cell> {
        (0..=s.dim()).map(|k| self.vertex(s, k)).collect()
    }

    /// The sub-simplex spanned by the given strictly increasing vertex
    /// positions.
    pub fn subsimplex(&self, s: &Simplex, keep: &[usize]) -> Simplex {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(keep.last().is_none_or(|&k| k <= s.dim()));
        let mut cur = s.clone();
        for i in (0..=s.dim()).rev() {
            if !keep.contains(&i) {
                cur = self.face(&cur, i);
            }
        }
        cur
    }

    /// Endpoints of an edge cell, as `(initial, terminal) = (d_1, d_0)`.
    pub fn edge_endpoints(&self, e: Cell) -> (Cell, Cell) {
        debug_assert_eq!(e.dim, 1);
        let s = Simplex::of_cell(e);
        (self.vertex(&s, 0), self.vertex(&s, 1))
    }

    /// All simplices of dimension `n`, degenerate ones included: every
    /// strictly decreasing word over every lower-dimensional cell.
    pub fn all_simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for m in (0..=n.min(self.truncation)).rev() {
            if m < n {
                let mut words = Vec::new();
                decreasing_words(n - m, n - 1, &mut Vec::new(), &mut words);
                for cell in self.cells_in_dim(m) {
                    for w in &words {
                        out.push(Simplex {
                            word: w.clone(),
                            cell,
                        });
                    }
                }
            } else {
                out.extend(self.cells_in_dim(m).map(Simplex::of_cell));
            }
        }
        out
    }

    /// Checks every stored face and the simplicial identity
    /// `d_i d_j = d_{j-1} d_i` (`i < j`) on each nondegenerate cell.
    pub fn validate(&self) -> Result<(), SsetError> {
        for dim in 1..=self.truncation {
            for (index, data) in self.cells[dim].iter().enumerate() {
                for (i, f) in data.faces.iter().enumerate() {
                    if f.dim() + 1 != dim {
                        return Err(SsetError::FaceDimension {
                            dim,
                            cell: index,
                            i,
                            got: f.dim(),
                            expected: dim - 1,
                        });
                    }
                }
                if dim < 2 {
                    continue;
                }
                let s = Simplex::of_cell(Cell { dim, index });
                for j in 1..=dim {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&s, j), i);
                        let rhs = self.face(&self.face(&s, i), j - 1);
                        if lhs != rhs {
                            return Err(SsetError::FaceIdentity {
                                dim,
                                cell: index,
                                i,
                                j,
                                j_minus: j - 1,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A single point.
    pub fn point(truncation: usize) -> Self {
        let mut s = SimplicialSet::new(truncation);
        s.add_cell(0, Vec::new(), "*");
        s
    }

    /// The standard `n`-simplex: one nondegenerate cell per nonempty subset
    /// of the vertex set, truncated as requested.
    pub fn standard_simplex(n: usize, truncation: usize) -> Self {
        let mut s = SimplicialSet::new(truncation);
        let mut by_subset: HashMap<Vec<usize>, Cell> = HashMap::new();
        for size in 1..=(n + 1).min(truncation + 1) {
            for subset in increasing_subsets(n + 1, size) {
                let faces = if size == 1 {
                    Vec::new()
                } else {
                    (0..size)
                        .map(|i| {
                            let mut sub = subset.clone();
                            sub.remove(i);
                            Simplex::of_cell(by_subset[&sub])
                        })
                        .collect()
                };
                let label = subset
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("");
                let cell = s.add_cell(size - 1, faces, label);
                by_subset.insert(subset, cell);
            }
        }
        s
    }

    /// A circle with one vertex and one edge.
    pub fn minimal_circle(truncation: usize) -> Self {
        let mut s = SimplicialSet::new(truncation.max(1));
        let v = s.add_cell(0, Vec::new(), "*");
        let loop_face = Simplex::of_cell(v);
        s.add_cell(1, vec![loop_face.clone(), loop_face], "a");
        s
    }

    /// Connected components of the vertices through nondegenerate edges.
    /// Returns one component id per 0-cell, ids numbered from 0 by first
    /// appearance.
    pub fn vertex_components(&self) -> Vec<usize> {
        let n = self.cell_count(0);
        let mut dsu = DisjointSets::new(n);
        for e in self.cells_in_dim(1) {
            let (a, b) = self.edge_endpoints(e);
            dsu.union(a.index, b.index);
        }
        dsu.canonical_ids()
    }

    pub fn component_count(&self) -> usize {
        self.vertex_components()
            .iter()
            .copied()
            .max()
            .map_or(0, |m| m + 1)
    }
}

/// Strictly decreasing words of the given length with letters `<= max_letter`.
fn decreasing_words(len: usize, max_letter: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if len == 0 {
        out.push(cur.clone());
        return;
    }
    let hi = cur.last().map_or(max_letter, |&l| l.saturating_sub(1));
    if cur.last() == Some(&0) {
        return;
    }
    for letter in (0..=hi).rev() {
        if letter + 1 >= len {
            cur.push(letter);
            decreasing_words(len - 1, max_letter, cur, out);
            cur.pop();
        }
    }
}

/// All strictly increasing `size`-subsets of `0..n`.
pub fn increasing_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v >= size - cur.len() {
                cur.push(v);
                rec(v + 1, n, size, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Component ids numbered from 0 in order of first appearance.
    pub fn canonical_ids(&mut self) -> Vec<usize> {
        let mut ids = HashMap::new();
        (0..self.parent.len())
            .map(|x| {
                let r = self.find(x);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect()
    }
}
