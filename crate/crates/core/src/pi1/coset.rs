//! Coset enumeration over the trivial subgroup.

use crate::algebra::{free_reduce, FiniteGroup, GroupPresentation};
use thiserror::Error;

pub const DEFAULT_COSET_BOUND: usize = 10_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("coset enumeration exceeded the bound of {max_cosets} cosets")]
    BoundExceeded { max_cosets: usize },
}

/// A completed enumeration: the regular permutation representation of the
/// presented group, elements numbered in breadth-first order from the
/// identity.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub order: usize,
    /// `action[2g][x]` is `x·g`, `action[2g + 1][x]` is `x·g^-1`.
    action: Vec<Vec<usize>>,
    /// A defining word for each element, shortest-first by construction.
    pub element_words: Vec<Vec<i32>>,
}

/// Runs HLT-style Todd–Coxeter with row filling: every relator is scanned
/// from every live coset, and remaining undefined row entries define fresh
/// cosets, so a completed table is exactly the regular representation.
pub fn coset_enumerate(
    p: &GroupPresentation,
    max_cosets: usize,
) -> Result<Enumeration, CosetError> {
    let n_letters = 2 * p.n_generators;
    let relators: Vec<Vec<i32>> = p
        .relators
        .iter()
        .map(|r| free_reduce(r))
        .filter(|r| !r.is_empty())
        .collect();
    let mut t = Table {
        entries: vec![vec![None; n_letters]],
        parent: vec![0],
        max_cosets,
    };
    let mut c = 0;
    while c < t.entries.len() {
        if t.find(c) != c {
            c += 1;
            continue;
        }
        for r in &relators {
            t.scan_and_fill(c, r)?;
            if t.find(c) != c {
                break;
            }
        }
        if t.find(c) == c {
            for letter in 0..n_letters {
                if t.entry(c, letter).is_none() {
                    let fresh = t.define(c, letter)?;
                    debug_assert_eq!(t.find(fresh), fresh);
                }
            }
        }
        c += 1;
    }
    Ok(t.into_enumeration(p.n_generators))
}

struct Table {
    entries: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    max_cosets: usize,
}

fn letter_index(l: i32) -> usize {
    debug_assert!(l != 0);
    let g = (l.unsigned_abs() as usize - 1) * 2;
    if l > 0 {
        g
    } else {
        g + 1
    }
}

impl Table {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn entry(&mut self, c: usize, letter: usize) -> Option<usize> {
        let c = self.find(c);
        self.entries[c][letter].map(|t| self.find(t))
    }

    fn set(&mut self, c: usize, letter: usize, target: usize) {
        let c = self.find(c);
        let target = self.find(target);
        self.entries[c][letter] = Some(target);
        self.entries[target][letter ^ 1] = Some(c);
    }

    fn define(&mut self, c: usize, letter: usize) -> Result<usize, CosetError> {
        if self.entries.len() >= self.max_cosets {
            return Err(CosetError::BoundExceeded {
                max_cosets: self.max_cosets,
            });
        }
        let fresh = self.entries.len();
        self.entries.push(vec![None; self.entries[0].len()]);
        self.parent.push(fresh);
        self.set(c, letter, fresh);
        Ok(fresh)
    }

    /// Records that two cosets name the same element and propagates all
    /// consequences.
    fn coincide(&mut self, a: usize, b: usize) {
        let mut stack = vec![(a, b)];
        while let Some((a, b)) = stack.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop] = keep;
            for letter in 0..self.entries[0].len() {
                if let Some(t) = self.entries[drop][letter] {
                    let t = self.find(t);
                    match self.entry(keep, letter) {
                        Some(u) if u != t => stack.push((u, t)),
                        Some(_) => {}
                        None => self.set(keep, letter, t),
                    }
                }
            }
        }
    }

    /// Pushes coset `c` through a relator, defining cosets in any gap; the
    /// two ends must coincide.
    fn scan_and_fill(&mut self, c: usize, r: &[i32]) -> Result<(), CosetError> {
        let mut front = self.find(c);
        let mut fi = 0;
        while fi < r.len() {
            match self.entry(front, letter_index(r[fi])) {
                Some(next) => {
                    front = next;
                    fi += 1;
                }
                None => break,
            }
        }
        if fi == r.len() {
            self.coincide(front, c);
            return Ok(());
        }
        let mut back = self.find(c);
        let mut bi = r.len();
        while bi > fi + 1 {
            match self.entry(back, letter_index(-r[bi - 1])) {
                Some(next) => {
                    back = next;
                    bi -= 1;
                }
                None => break,
            }
        }
        while fi < bi - 1 {
            front = self.define(front, letter_index(r[fi]))?;
            fi += 1;
        }
        // the last arrow is forced
        match self.entry(front, letter_index(r[fi])) {
            Some(u) => self.coincide(u, back),
            None => self.set(front, letter_index(r[fi]), back),
        }
        Ok(())
    }

    /// Renumber live cosets breadth-first from the identity and freeze the
    /// permutation action.
    fn into_enumeration(mut self, n_generators: usize) -> Enumeration {
        let n_letters = 2 * n_generators;
        let total = self.entries.len();
        let mut number: Vec<Option<usize>> = vec![None; total];
        let root = self.find(0);
        number[root] = Some(0);
        let mut live = vec![root];
        let mut element_words: Vec<Vec<i32>> = vec![Vec::new()];
        let mut at = 0;
        while at < live.len() {
            let c = live[at];
            for letter in 0..n_letters {
                let t = self
                    .entry(c, letter)
                    .expect("table is complete after enumeration");
                if number[t].is_none() {
                    number[t] = Some(live.len());
                    let mut w = element_words[at].clone();
                    let g = (letter / 2 + 1) as i32;
                    w.push(if letter % 2 == 0 { g } else { -g });
                    element_words.push(w);
                    live.push(t);
                }
            }
            at += 1;
        }
        let order = live.len();
        let mut action = vec![vec![0; order]; n_letters];
        for (x, &c) in live.iter().enumerate() {
            for letter in 0..n_letters {
                let t = self.entry(c, letter).expect("complete");
                action[letter][x] = number[t].expect("live target");
            }
        }
        Enumeration {
            order,
            action,
            element_words,
        }
    }
}

impl Enumeration {
    /// The element a word evaluates to.
    pub fn element_of_word(&self, w: &[i32]) -> usize {
        w.iter().fold(0, |x, &l| self.action[letter_index(l)][x])
    }

    pub fn generator_element(&self, k: usize) -> usize {
        self.action[2 * k][0]
    }

    /// The multiplication table as a group. Quadratic in the order — callers
    /// gate this behind an order bound.
    pub fn finite_group(&self, label: impl Into<String>) -> FiniteGroup {
        let table: Vec<Vec<usize>> = (0..self.order)
            .map(|a| {
                (0..self.order)
                    .map(|b| {
                        self.element_words[b]
                            .iter()
                            .fold(a, |x, &l| self.action[letter_index(l)][x])
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table)
            .expect("regular representation is a group")
            .with_label(label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{groups_isomorphic, IsoDecision};

    #[test]
    fn cyclic_groups_close_at_their_order() {
        for n in 1..=12 {
            let p = GroupPresentation::new(1, vec![vec![1; n]]);
            let e = coset_enumerate(&p, 100).unwrap();
            assert_eq!(e.order, n);
        }
    }

    #[test]
    fn trivial_presentations() {
        let none = GroupPresentation::free(0);
        assert_eq!(coset_enumerate(&none, 10).unwrap().order, 1);
        let killed = GroupPresentation::new(1, vec![vec![1]]);
        assert_eq!(coset_enumerate(&killed, 10).unwrap().order, 1);
    }

    #[test]
    fn free_group_exceeds_any_bound() {
        let p = GroupPresentation::free(1);
        assert!(matches!(
            coset_enumerate(&p, 50),
            Err(CosetError::BoundExceeded { max_cosets: 50 })
        ));
    }

    #[test]
    fn triangle_rotation_presentation_closes_at_twelve() {
        // <a, b | a^2, b^3, (ab)^3>
        let p = GroupPresentation::new(
            2,
            vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2, 1, 2]],
        );
        let e = coset_enumerate(&p, DEFAULT_COSET_BOUND).unwrap();
        assert_eq!(e.order, 12);
        // independent witness: the images a = (0 1)(2 3), b = (0 1 2) in S4
        // satisfy the relators and generate a subgroup of order 12, so the
        // group surjects onto it
        let a = vec![1, 0, 3, 2];
        let b = vec![1, 2, 0, 3];
        let gens = vec![a, b];
        let mut elements = vec![vec![0, 1, 2, 3]];
        loop {
            let mut grew = false;
            let snapshot = elements.clone();
            for e in &snapshot {
                for g in &gens {
                    let composed: Vec<usize> = e.iter().map(|&i| g[i]).collect();
                    if !elements.contains(&composed) {
                        elements.push(composed);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        assert_eq!(elements.len(), 12);
    }

    #[test]
    fn dihedral_presentation_matches_symmetric_three() {
        let p = GroupPresentation::new(2, vec![vec![1, 1], vec![2, 2], vec![1, 2, 1, 2, 1, 2]]);
        let e = coset_enumerate(&p, 100).unwrap();
        assert_eq!(e.order, 6);
        let g = e.finite_group("enumerated");
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert!(matches!(
            groups_isomorphic(&g, &s3, 128),
            Ok(IsoDecision::Isomorphic(_))
        ));
    }

    #[test]
    fn quaternion_order_and_element_orders() {
        // <a, b | a^4, b^2 a^-2, b^-1 a b a>
        let p = GroupPresentation::new(
            2,
            vec![vec![1; 4], vec![2, 2, -1, -1], vec![-2, 1, 2, 1]],
        );
        let e = coset_enumerate(&p, 100).unwrap();
        assert_eq!(e.order, 8);
        let g = e.finite_group("Q8");
        assert_eq!(g.element_order_multiset(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn words_trace_to_their_own_elements() {
        let p = GroupPresentation::new(2, vec![vec![1, 1, 1], vec![2, 2], vec![1, 2, 1, 2]]);
        let e = coset_enumerate(&p, 100).unwrap();
        assert_eq!(e.order, 6);
        for x in 0..e.order {
            let w = e.element_words[x].clone();
            assert_eq!(e.element_of_word(&w), x);
        }
        assert_eq!(e.element_of_word(&[]), 0);
        assert_eq!(e.element_of_word(&[1, -1]), 0);
    }
}
