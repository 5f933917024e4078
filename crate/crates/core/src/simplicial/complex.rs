//! Finite ordered simplicial complexes and their simplicial-set models.
//!
//! Complexes come in through their maximal faces. Two models feed the rest
//! of the machinery: the direct model (cells are the simplices themselves,
//! faces drop a vertex) and the nerve of the face poset, whose cells are
//! strict chains of simplices. The nerve triangulates the same space and
//! carries an induced action for *any* vertex symmetry of the complex, not
//! just order-preserving ones.

use super::sset::{Cell, Simplex, SimplicialSet};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("facet {0:?} mentions vertex {1}, but only {2} vertices exist")]
    VertexOutOfRange(Vec<usize>, usize, usize),
    #[error("facet {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),
    #[error("a complex needs at least one vertex")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedComplex {
    n_vertices: usize,
    vertex_labels: Vec<String>,
    facets: Vec<Vec<usize>>,
    simplices: Vec<Vec<usize>>,
    simplex_id: HashMap<Vec<usize>, usize>,
}

impl OrderedComplex {
    pub fn from_facets(
        n_vertices: usize,
        facets: &[Vec<usize>],
    ) -> Result<Self, ComplexError> {
        if n_vertices == 0 {
            return Err(ComplexError::Empty);
        }
        let mut normalized: Vec<Vec<usize>> = Vec::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            let before = f.len();
            f.dedup();
            if f.len() != before {
                return Err(ComplexError::RepeatedVertex(f));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= n_vertices) {
                return Err(ComplexError::VertexOutOfRange(f.clone(), v, n_vertices));
            }
            normalized.push(f);
        }
        // every vertex is a simplex even if no facet was given for it
        let mut closed: BTreeSet<Vec<usize>> = (0..n_vertices).map(|v| vec![v]).collect();
        for f in &normalized {
            for size in 1..=f.len() {
                for subset in super::sset::increasing_subsets(f.len(), size) {
                    closed.insert(subset.iter().map(|&i| f[i]).collect());
                }
            }
        }
        let mut simplices: Vec<Vec<usize>> = closed.into_iter().collect();
        simplices.sort_by_key(|s| (s.len(), s.clone()));
        let simplex_id = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        // keep only maximal faces as the facet list
        let maximal: Vec<Vec<usize>> = simplices
            .iter()
            .filter(|s| {
                !simplices
                    .iter()
                    .any(|t| t.len() > s.len() && is_subset(s, t))
            })
            .cloned()
            .collect();
        Ok(OrderedComplex {
            n_vertices,
            vertex_labels: (0..n_vertices).map(|v| v.to_string()).collect(),
            facets: maximal,
            simplices,
            simplex_id,
        })
    }

    pub fn with_vertex_labels(mut self, labels: &[&str]) -> Self {
        assert_eq!(labels.len(), self.n_vertices);
        self.vertex_labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn point() -> Self {
        OrderedComplex::from_facets(1, &[]).unwrap()
    }

    /// A path with `n_edges` edges on `n_edges + 1` consecutive vertices.
    pub fn interval_path(n_edges: usize) -> Self {
        let facets: Vec<Vec<usize>> = (0..n_edges).map(|i| vec![i, i + 1]).collect();
        OrderedComplex::from_facets(n_edges + 1, &facets).unwrap()
    }

    /// The solid simplex on `n + 1` vertices.
    pub fn full_simplex(n: usize) -> Self {
        OrderedComplex::from_facets(n + 1, &[(0..=n).collect()]).unwrap()
    }

    /// The boundary of the `n`-simplex, a model of the sphere `S^{n-1}`.
    pub fn simplex_boundary(n: usize) -> Self {
        let facets = super::sset::increasing_subsets(n + 1, n);
        OrderedComplex::from_facets(n + 1, &facets).unwrap()
    }

    /// A polygon with `k >= 3` vertices.
    pub fn polygon(k: usize) -> Self {
        assert!(k >= 3);
        let facets: Vec<Vec<usize>> = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
        OrderedComplex::from_facets(k, &facets).unwrap()
    }

    /// The octahedron: vertex pairs (0,1), (2,3), (4,5) are antipodal, and
    /// the eight triangles take one vertex from each pair.
    pub fn octahedron() -> Self {
        let mut facets = Vec::new();
        for a in 0..2 {
            for b in 2..4 {
                for c in 4..6 {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        OrderedComplex::from_facets(6, &facets).unwrap()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertex_labels[v]
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// All simplices, sorted by dimension then lexicographically; the index
    /// into this list is the simplex id used by the nerve.
    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex_id(&self, s: &[usize]) -> Option<usize> {
        self.simplex_id.get(s).copied()
    }

    pub fn dimension(&self) -> usize {
        self.facets.iter().map(|f| f.len() - 1).max().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    pub fn simplex_label(&self, s: &[usize]) -> String {
        s.iter()
            .map(|&v| self.vertex_labels[v].as_str())
            .collect::<Vec<_>>()
            .join("")
    }

    /// Whether a vertex bijection maps simplices to simplices.
    pub fn is_symmetry(&self, perm: &[usize]) -> bool {
        if perm.len() != self.n_vertices {
            return false;
        }
        let mut seen = vec![false; self.n_vertices];
        for &p in perm {
            if p >= self.n_vertices || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        self.facets.iter().all(|f| {
            let mut img: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
            img.sort_unstable();
            self.simplex_id.contains_key(&img)
        })
    }

    /// Barycentric subdivision as an ordered complex: one vertex per simplex
    /// (in `simplices()` order), one facet per complete flag inside a maximal
    /// simplex.
    pub fn barycentric_subdivision(&self) -> OrderedComplex {
        use itertools::Itertools;
        let mut facets = Vec::new();
        for f in &self.facets {
            for perm in f.iter().permutations(f.len()) {
                let mut prefix: Vec<usize> = Vec::new();
                let mut chain = Vec::new();
                for &&v in &perm {
                    prefix.push(v);
                    prefix.sort_unstable();
                    chain.push(self.simplex_id[&prefix]);
                }
                facets.push(chain);
            }
        }
        let sd = OrderedComplex::from_facets(self.simplices.len(), &facets).unwrap();
        let labels: Vec<String> = self
            .simplices
            .iter()
            .map(|s| {
                if s.len() == 1 {
                    self.vertex_labels[s[0]].clone()
                } else {
                    format!("({})", self.simplex_label(s))
                }
            })
            .collect();
        OrderedComplex {
            vertex_labels: labels,
            ..sd
        }
    }

    /// Carries a vertex symmetry of this complex to the vertices of its
    /// barycentric subdivision.
    pub fn subdivide_permutation(&self, perm: &[usize]) -> Vec<usize> {
        assert!(self.is_symmetry(perm), "not a symmetry");
        self.simplices
            .iter()
            .map(|s| {
                let mut img: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
                img.sort_unstable();
                self.simplex_id[&img]
            })
            .collect()
    }

    /// Direct simplicial-set model: one nondegenerate cell per simplex, faces
    /// delete a vertex. Cell `k` in dimension `d` is the `k`-th `d`-simplex
    /// in the `simplices()` ordering.
    pub fn to_simplicial_set(&self, truncation: usize) -> SimplicialSet {
        let mut sset = SimplicialSet::new(truncation);
        let mut cell_of: HashMap<usize, Cell> = HashMap::new();
        for (id, s) in self.simplices.iter().enumerate() {
            let dim = s.len() - 1;
            if dim > truncation {
                break;
            }
            let faces = if dim == 0 {
                Vec::new()
            } else {
                (0..s.len())
                    .map(|i| {
                        let mut sub = s.clone();
                        sub.remove(i);
                        Simplex::of_cell(cell_of[&self.simplex_id[&sub]])
                    })
                    .collect()
            };
            let cell = sset.add_cell(dim, faces, self.simplex_label(s));
            cell_of.insert(id, cell);
        }
        sset
    }

    /// The nerve of the face poset: cells are strict chains of simplices.
    /// Triangulates the same space (it is the barycentric subdivision), and
    /// any symmetry of the complex acts on it cell by cell.
    pub fn nerve(&self, truncation: usize) -> NerveModel {
        let mut sset = SimplicialSet::new(truncation);
        let mut chains: Vec<Vec<Vec<usize>>> = vec![Vec::new(); truncation + 1];
        let mut chain_index: Vec<HashMap<Vec<usize>, usize>> =
            vec![HashMap::new(); truncation + 1];
        // chains of length n + 1, built by extending chains of length n
        for n in 0..=truncation {
            if n == 0 {
                for id in 0..self.simplices.len() {
                    register_chain(
                        &mut sset,
                        &mut chains,
                        &mut chain_index,
                        self,
                        vec![id],
                    );
                }
                continue;
            }
            let prev: Vec<Vec<usize>> = chains[n - 1].clone();
            for chain in prev {
                let last = &self.simplices[*chain.last().unwrap()];
                for (id, s) in self.simplices.iter().enumerate() {
                    if s.len() > last.len() && is_subset(last, s) {
                        let mut next = chain.clone();
                        next.push(id);
                        register_chain(&mut sset, &mut chains, &mut chain_index, self, next);
                    }
                }
            }
        }
        NerveModel {
            complex: self.clone(),
            sset,
            chains,
            chain_index,
        }
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn register_chain(
    sset: &mut SimplicialSet,
    chains: &mut [Vec<Vec<usize>>],
    chain_index: &mut [HashMap<Vec<usize>, usize>],
    complex: &OrderedComplex,
    chain: Vec<usize>,
) {
    let n = chain.len() - 1;
    let faces = if n == 0 {
        Vec::new()
    } else {
        (0..chain.len())
            .map(|i| {
                let mut sub = chain.clone();
                sub.remove(i);
                let idx = chain_index[n - 1][&sub];
                Simplex::of_cell(Cell::new(n - 1, idx))
            })
            .collect()
    };
    let label = chain
        .iter()
        .map(|&id| complex.simplex_label(&complex.simplices[id]))
        .collect::<Vec<_>>()
        .join("<");
    let cell = sset.add_cell(n, faces, label);
    chain_index[n].insert(chain.clone(), cell.index);
    chains[n].push(chain);
}

/// The nerve of a complex's face poset, with the chain bookkeeping needed to
/// transport symmetries and locate stars.
#[derive(Clone, Debug)]
pub struct NerveModel {
    pub complex: OrderedComplex,
    pub sset: SimplicialSet,
    chains: Vec<Vec<Vec<usize>>>,
    chain_index: Vec<HashMap<Vec<usize>, usize>>,
}

impl NerveModel {
    pub fn chain_of_cell(&self, c: Cell) -> &[usize] {
        &self.chains[c.dim][c.index]
    }

    pub fn cell_of_chain(&self, chain: &[usize]) -> Option<Cell> {
        let n = chain.len() - 1;
        self.chain_index
            .get(n)?
            .get(chain)
            .map(|&index| Cell::new(n, index))
    }

    /// The nerve vertex sitting at the barycenter of a simplex.
    pub fn barycenter(&self, simplex: &[usize]) -> Option<Cell> {
        let id = self.complex.simplex_id(simplex)?;
        self.cell_of_chain(&[id])
    }

    /// Cells whose chains pass through the given poset member; with their
    /// faces these form the closed star. Returned as seed cells for a
    /// subobject.
    pub fn cells_through(&self, simplex_id: usize) -> Vec<Cell> {
        let mut out = Vec::new();
        for (n, chains) in self.chains.iter().enumerate() {
            for (index, chain) in chains.iter().enumerate() {
                if chain.contains(&simplex_id) {
                    out.push(Cell::new(n, index));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_counts_for_small_complexes() {
        let path = OrderedComplex::interval_path(2);
        assert_eq!(path.simplices().len(), 5); // 3 vertices + 2 edges
        let tri = OrderedComplex::full_simplex(2);
        assert_eq!(tri.simplices().len(), 7);
        assert_eq!(tri.euler_characteristic(), 1);
    }

    #[test]
    fn octahedron_is_a_two_sphere() {
        let oct = OrderedComplex::octahedron();
        assert_eq!(oct.simplices().len(), 26); // 6 + 12 + 8
        assert_eq!(oct.euler_characteristic(), 2);
        assert_eq!(oct.dimension(), 2);
    }

    #[test]
    fn antipodal_map_is_a_symmetry() {
        let oct = OrderedComplex::octahedron();
        assert!(oct.is_symmetry(&[1, 0, 3, 2, 5, 4]));
        // swapping vertices of different antipodal pairs carries the edge
        // {1, 2} onto the non-edge {1, 0}
        assert!(!oct.is_symmetry(&[2, 1, 0, 3, 4, 5]));
    }

    #[test]
    fn direct_model_of_boundary_is_a_sphere_shape() {
        let s1 = OrderedComplex::simplex_boundary(2); // triangle boundary
        let sset = s1.to_simplicial_set(2);
        assert_eq!(sset.cell_counts(), vec![3, 3, 0]);
        assert!(sset.validate().is_ok());
    }

    #[test]
    fn nerve_counts_are_chain_counts() {
        let oct = OrderedComplex::octahedron();
        let nerve = oct.nerve(3);
        // barycentric subdivision of S^2: 26 vertices, 72 edges, 48 triangles
        assert_eq!(nerve.sset.cell_counts(), vec![26, 72, 48, 0]);
        assert!(nerve.sset.validate().is_ok());
        let euler: i64 = 26 - 72 + 48;
        assert_eq!(euler, 2);
    }

    #[test]
    fn nerve_of_interval_path() {
        let path = OrderedComplex::interval_path(2);
        let nerve = path.nerve(2);
        assert_eq!(nerve.sset.cell_counts(), vec![5, 4, 0]);
        let mid = nerve.barycenter(&[1]).unwrap();
        // chains through the middle vertex: the vertex itself plus one edge
        // chain into each adjacent edge of the path
        assert_eq!(nerve.cells_through(nerve.complex.simplex_id(&[1]).unwrap()).len(), 3);
        assert_eq!(nerve.sset.label(mid), "1");
    }

    #[test]
    fn subdivision_of_the_octahedron() {
        let oct = OrderedComplex::octahedron();
        let sd = oct.barycentric_subdivision();
        assert_eq!(sd.n_vertices(), 26);
        assert_eq!(sd.simplices().len(), 26 + 72 + 48);
        assert_eq!(sd.euler_characteristic(), 2);
        // the transported antipodal action is still a symmetry, still free
        let perm = oct.subdivide_permutation(&[1, 0, 3, 2, 5, 4]);
        assert!(sd.is_symmetry(&perm));
        assert!((0..26).all(|v| perm[v] != v));
    }

    #[test]
    fn subdivision_matches_the_nerve() {
        let tri = OrderedComplex::full_simplex(2);
        let sd = tri.barycentric_subdivision();
        let nerve = tri.nerve(2);
        assert_eq!(
            sd.to_simplicial_set(2).cell_counts(),
            nerve.sset.cell_counts()
        );
    }

    #[test]
    fn degenerate_facet_lists_are_rejected() {
        assert!(matches!(
            OrderedComplex::from_facets(3, &[vec![0, 0, 1]]),
            Err(ComplexError::RepeatedVertex(_))
        ));
        assert!(matches!(
            OrderedComplex::from_facets(2, &[vec![0, 5]]),
            Err(ComplexError::VertexOutOfRange(_, 5, 2))
        ));
    }
}
