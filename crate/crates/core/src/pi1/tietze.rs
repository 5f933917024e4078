//! Presentation simplification by Tietze transformations.

use crate::algebra::{free_reduce, invert_word, GroupPresentation};

/// A simplified presentation of the same group, with a dictionary from the
/// original generators to words in the surviving ones.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    /// `expressions[i]` rewrites original generator `i` in the final
    /// generators.
    pub expressions: Vec<Vec<i32>>,
    /// True when the step budget ran out with eliminations still available.
    pub budget_exhausted: bool,
    pub steps_used: usize,
}

/// Repeatedly (1) freely and cyclically reduces relators, dropping empty and
/// duplicate ones, and (2) eliminates a generator that appears exactly once
/// in some relator, substituting it everywhere. Each elimination costs one
/// step of the budget.
pub fn tietze_simplify(p: &GroupPresentation, budget: usize) -> Simplified {
    let mut n = p.n_generators;
    let mut relators = p.relators.clone();
    let mut expressions: Vec<Vec<i32>> = (1..=n as i32).map(|l| vec![l]).collect();
    let mut steps_used = 0;
    let budget_exhausted = loop {
        normalize(&mut relators);
        let Some((rel_idx, gen)) = elimination_candidate(&relators) else {
            break false;
        };
        if steps_used == budget {
            break true;
        }
        steps_used += 1;
        let replacement = solve_for(&relators.remove(rel_idx), gen);
        let rewrite = |w: &[i32]| -> Vec<i32> {
            let mut out = Vec::with_capacity(w.len());
            for &l in w {
                if l.unsigned_abs() as usize == gen {
                    out.extend(if l > 0 {
                        replacement.clone()
                    } else {
                        invert_word(&replacement)
                    });
                } else {
                    out.push(l);
                }
            }
            // the eliminated generator is gone; close the numbering gap
            for l in &mut out {
                if l.unsigned_abs() as usize > gen {
                    *l -= l.signum();
                }
            }
            free_reduce(&out)
        };
        relators = relators.iter().map(|r| rewrite(r)).collect();
        expressions = expressions.iter().map(|e| rewrite(e)).collect();
        n -= 1;
    };
    Simplified {
        presentation: GroupPresentation::new(n, relators),
        expressions,
        budget_exhausted,
        steps_used,
    }
}

/// Free + cyclic reduction, empty-relator removal, duplicate removal up to
/// rotation and inversion; each survivor is stored in its canonical
/// rotation.
fn normalize(relators: &mut Vec<Vec<i32>>) {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(relators.len());
    for r in relators.iter() {
        let mut w = free_reduce(r);
        while w.len() >= 2 && w[0] == -w[w.len() - 1] {
            w.remove(0);
            w.pop();
        }
        if w.is_empty() {
            continue;
        }
        let canonical = rotation_class(&w);
        if seen.insert(canonical.clone()) {
            out.push(canonical);
        }
    }
    *relators = out;
}

/// Letter order used to pick canonical relators: a < a^-1 < b < b^-1 < ...
fn letter_key(l: i32) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

fn word_less(a: &[i32], b: &[i32]) -> bool {
    a.iter()
        .map(|&l| letter_key(l))
        .lt(b.iter().map(|&l| letter_key(l)))
}

/// Least among all rotations of the word and its inverse; rotations and
/// inversion of a relator do not change the group.
fn rotation_class(w: &[i32]) -> Vec<i32> {
    let mut best: Option<Vec<i32>> = None;
    for word in [w.to_vec(), invert_word(w)] {
        for k in 0..word.len() {
            let mut rot = word[k..].to_vec();
            rot.extend_from_slice(&word[..k]);
            if best.as_ref().is_none_or(|b| word_less(&rot, b)) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// The (relator, generator) pair to eliminate: the generator must occur
/// exactly once in the relator; prefer short relators, then low indices.
fn elimination_candidate(relators: &[Vec<i32>]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, r) in relators.iter().enumerate() {
        for &l in r {
            let g = l.unsigned_abs() as usize;
            if r.iter().filter(|&&m| m.unsigned_abs() as usize == g).count() == 1 {
                let key = (r.len(), i, g);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
    }
    best.map(|(_, i, g)| (i, g))
}

/// Given `u g^±1 v = 1` with the generator occurring once, the word equal to
/// `g` in the remaining letters (it still mentions `g`'s old index space;
/// the caller renumbers).
fn solve_for(relator: &[i32], gen: usize) -> Vec<i32> {
    let pos = relator
        .iter()
        .position(|&l| l.unsigned_abs() as usize == gen)
        .expect("generator occurs in relator");
    let (u, rest) = relator.split_at(pos);
    let v = &rest[1..];
    let word = if relator[pos] > 0 {
        // u g v = 1  =>  g = u^-1 v^-1
        let mut w = invert_word(u);
        w.extend(invert_word(v));
        w
    } else {
        // u g^-1 v = 1  =>  g = v u
        let mut w = v.to_vec();
        w.extend_from_slice(u);
        w
    };
    free_reduce(&word)
}
