//! Fibers of simplicial maps and the fiberwise-π₀ quotient.

use super::map::{sub_sset, SSetMap, SubSSet};
use super::sset::{Cell, DisjointSets, Simplex, SimplicialSet};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FiberError {
    #[error("no vertex {0} in the target")]
    NoSuchVertex(usize),
}

/// The sub-simplicial set of cells whose image is totally degenerate on the
/// given target vertex.
pub fn simplicial_fiber(
    source: &SimplicialSet,
    q: &SSetMap,
    b: Cell,
) -> Result<SubSSet, FiberError> {
    if b.dim != 0 {
        return Err(FiberError::NoSuchVertex(b.index));
    }
    let mut seeds = Vec::new();
    for n in 0..=source.truncation() {
        for c in source.cells_in_dim(n) {
            let img = q.image_of_cell(c);
            if img.cell == b {
                debug_assert_eq!(img.word.len(), n);
                seeds.push(c);
            }
        }
    }
    Ok(sub_sset(source, &seeds))
}

/// Result of collapsing each fiber of `q: E -> X` to its set of connected
/// components.
#[derive(Clone, Debug)]
pub struct FiberwisePi0 {
    pub sset: SimplicialSet,
    /// `E -> fib-π₀`, the collapse.
    pub from_source: SSetMap,
    /// `fib-π₀ -> X`, the induced map to the original target.
    pub to_target: SSetMap,
}

/// The class of a simplex: its image below plus the fiber-component ids of
/// its vertices in order.
type Key = (Simplex, Vec<usize>);

/// Collapses fibers to components: vertices with equal image merge when the
/// fiber graph (edges whose image is degenerate) connects them, and two
/// simplices merge when their images and all componentwise vertex classes
/// agree. Classes met by a degenerate simplex become degenerate.
pub fn fib_pi0(source: &SimplicialSet, target: &SimplicialSet, q: &SSetMap) -> FiberwisePi0 {
    assert_eq!(
        source.truncation(),
        target.truncation(),
        "source and target must share a truncation level"
    );
    // fiber components of the vertices
    let mut dsu = DisjointSets::new(source.cell_count(0));
    for e in source.cells_in_dim(1) {
        if q.image_of_cell(e).is_degenerate() {
            let (a, b) = source.edge_endpoints(e);
            dsu.union(a.index, b.index);
        }
    }
    let vertex_class = dsu.canonical_ids();
    let key_of = |s: &Simplex| -> Key {
        let classes = source
            .vertices(s)
            .into_iter()
            .map(|v| vertex_class[v.index])
            .collect();
        (q.apply(s), classes)
    };

    let mut sset = SimplicialSet::new(source.truncation());
    // per dimension: normal form in the quotient of every key seen so far
    let mut forms: Vec<HashMap<Key, Simplex>> = Vec::with_capacity(source.truncation() + 1);
    let mut cell_images: Vec<Vec<Simplex>> = Vec::new(); // q-image per new cell, per dim
    for n in 0..=source.truncation() {
        let mut level: HashMap<Key, Simplex> = HashMap::new();
        // degenerate simplices first: any key they hit is a degenerate class
        for s in source.all_simplices(n) {
            if !s.is_degenerate() {
                continue;
            }
            let key = key_of(&s);
            let base = forms[s.cell.dim][&key_of(&Simplex::of_cell(s.cell))].clone();
            let form = Simplex {
                word: super::sset::compose_words(&s.word, &base.word),
                cell: base.cell,
            };
            if let Some(prev) = level.get(&key) {
                debug_assert_eq!(*prev, form, "inconsistent degenerate class");
            } else {
                level.insert(key, form);
            }
        }
        let mut images_here = Vec::new();
        for c in source.cells_in_dim(n) {
            let s = Simplex::of_cell(c);
            let key = key_of(&s);
            if level.contains_key(&key) {
                continue;
            }
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let f = source.face_of_cell(c, i);
                        let base = forms[f.cell.dim][&key_of(&Simplex::of_cell(f.cell))].clone();
                        Simplex {
                            word: super::sset::compose_words(&f.word, &base.word),
                            cell: base.cell,
                        }
                    })
                    .collect()
            };
            let cell = sset.add_cell(n, faces, source.label(c));
            images_here.push(key.0.clone());
            level.insert(key, Simplex::of_cell(cell));
        }
        cell_images.push(images_here);
        forms.push(level);
    }

    let from_source = SSetMap::new(
        (0..=source.truncation())
            .map(|n| {
                source
                    .cells_in_dim(n)
                    .map(|c| forms[n][&key_of(&Simplex::of_cell(c))].clone())
                    .collect()
            })
            .collect(),
    );
    let to_target = SSetMap::new(cell_images);
    FiberwisePi0 {
        sset,
        from_source,
        to_target,
    }
}
