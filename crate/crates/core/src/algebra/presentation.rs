//! Finite group presentations with signed-letter relator words.

use super::abelian::FGAbelianGroup;
use super::group::FiniteGroup;
use super::matrix::IntMatrix;
use super::snf::rank_and_divisors;
use num_bigint::BigInt;
use std::collections::BTreeSet;
use std::fmt;

/// Letters are nonzero `i32`s: letter `k > 0` is generator `k - 1`,
/// `-k` its inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupPresentation {
    pub n_generators: usize,
    pub relators: Vec<Vec<i32>>,
}

pub fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &l in word {
        debug_assert!(l != 0);
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_word(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|&l| -l).collect()
}

impl GroupPresentation {
    pub fn new(n_generators: usize, relators: Vec<Vec<i32>>) -> Self {
        let p = GroupPresentation {
            n_generators,
            relators,
        };
        debug_assert!(p.letters_in_range());
        p
    }

    pub fn free(n_generators: usize) -> Self {
        GroupPresentation::new(n_generators, Vec::new())
    }

    fn letters_in_range(&self) -> bool {
        self.relators.iter().flatten().all(|&l| {
            l != 0 && (l.unsigned_abs() as usize) <= self.n_generators
        })
    }

    /// Exponent-sum matrix (generators x relators), the presentation matrix
    /// of the abelianized group.
    pub fn relator_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.n_generators, self.relators.len());
        for (j, rel) in self.relators.iter().enumerate() {
            for &l in rel {
                let i = l.unsigned_abs() as usize - 1;
                let delta = BigInt::from(if l > 0 { 1 } else { -1 });
                m.add_assign_at(i, j, &delta);
            }
        }
        m
    }

    pub fn abelianization(&self) -> FGAbelianGroup {
        let (rank, divisors) = rank_and_divisors(&self.relator_matrix());
        FGAbelianGroup::from_invariant_factors(self.n_generators - rank, &divisors)
    }

    pub fn total_relator_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |g: usize| {
            if self.n_generators <= 26 {
                ((b'a' + g as u8) as char).to_string()
            } else {
                format!("g{g}")
            }
        };
        let word = |w: &[i32]| {
            if w.is_empty() {
                return "1".to_string();
            }
            w.iter()
                .map(|&l| {
                    let n = name(l.unsigned_abs() as usize - 1);
                    if l > 0 {
                        n
                    } else {
                        format!("{n}^-1")
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        let gens: Vec<String> = (0..self.n_generators).map(name).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| word(r)).collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

/// All homomorphisms from the presented group to `g`, one lexicographically
/// least representative per conjugacy class of homomorphisms.
///
/// The search is exhaustive over generator images (|g|^generators leaves),
/// pruned by evaluating each relator as soon as its letters are assigned.
pub fn classify_homs(p: &GroupPresentation, g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = p.n_generators;
    // relators grouped by the largest generator they mention
    let mut by_max_gen: Vec<Vec<&Vec<i32>>> = vec![Vec::new(); n + 1];
    for rel in &p.relators {
        let max = rel
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        by_max_gen[max].push(rel);
    }
    let mut all: Vec<Vec<usize>> = Vec::new();
    let mut images = vec![0usize; n];
    search(p, g, &by_max_gen, &mut images, 0, &mut all);

    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    for hom in &all {
        let rep = (0..g.order())
            .map(|c| {
                hom.iter()
                    .map(|&x| g.mul(g.mul(c, x), g.inv(c)))
                    .collect::<Vec<usize>>()
            })
            .min()
            .expect("group is nonempty");
        classes.insert(rep);
    }
    classes.into_iter().collect()
}

fn search(
    p: &GroupPresentation,
    g: &FiniteGroup,
    by_max_gen: &[Vec<&Vec<i32>>],
    images: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == p.n_generators {
        if by_max_gen[0].iter().all(|r| r.is_empty()) {
            out.push(images.clone());
        }
        return;
    }
    for c in 0..g.order() {
        images[depth] = c;
        let ok = by_max_gen[depth + 1]
            .iter()
            .all(|rel| g.eval_word(rel, |i| images[i]) == 0);
        if ok {
            search(p, g, by_max_gen, images, depth + 1, out);
        }
    }
    images[depth] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        assert_eq!(free_reduce(&[1, -1, 2]), vec![2]);
        assert_eq!(free_reduce(&[1, 2, -2, -1]), Vec::<i32>::new());
        assert_eq!(free_reduce(&[1, 2, -1]), vec![1, 2, -1]);
    }

    #[test]
    fn abelianization_examples() {
        // <a | a^2> = Z/2
        let p = GroupPresentation::new(1, vec![vec![1, 1]]);
        assert_eq!(p.abelianization(), FGAbelianGroup::cyclic(2));
        // <a, b | [a,b]> = Z^2
        let t = GroupPresentation::new(2, vec![vec![1, 2, -1, -2]]);
        assert_eq!(t.abelianization(), FGAbelianGroup::free(2));
        // free group of rank 3
        assert_eq!(
            GroupPresentation::free(3).abelianization(),
            FGAbelianGroup::free(3)
        );
    }

    #[test]
    fn hom_classes_from_free_rank_one() {
        // maps Z -> Z/2: two of them, both central
        let p = GroupPresentation::free(1);
        let homs = classify_homs(&p, &FiniteGroup::cyclic(2));
        assert_eq!(homs, vec![vec![0], vec![1]]);
        // maps Z -> S3 up to conjugacy: trivial, a transposition, a 3-cycle
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(classify_homs(&p, &s3).len(), 3);
    }

    #[test]
    fn hom_classes_respect_relators() {
        // <a | a^2> -> Z/3 kills a
        let p = GroupPresentation::new(1, vec![vec![1, 1]]);
        assert_eq!(classify_homs(&p, &FiniteGroup::cyclic(3)), vec![vec![0]]);
        // <a | a^2> -> Z/4: a maps to 0 or 2
        assert_eq!(
            classify_homs(&p, &FiniteGroup::cyclic(4)),
            vec![vec![0], vec![2]]
        );
    }

    #[test]
    fn hom_count_against_gcd_oracle() {
        // |Hom(Z/d, Z/m)| = gcd(d, m); the target is abelian so classes are
        // single homomorphisms.
        for d in 1..=6u64 {
            for m in 1..=6usize {
                let p = GroupPresentation::new(1, vec![vec![1; d as usize]]);
                let homs = classify_homs(&p, &FiniteGroup::cyclic(m));
                let gcd = num_integer::gcd(d, m as u64) as usize;
                assert_eq!(homs.len(), gcd, "d={d} m={m}");
            }
        }
    }

    #[test]
    fn display_reads_naturally() {
        let p = GroupPresentation::new(2, vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2, 1, 2]]);
        assert_eq!(p.to_string(), "< a, b | a a, b b b, a b a b a b >");
    }
}
