//! The action groupoid of a global quotient and an equivalence decision
//! driven by its invariants: orbits matched against orbits, isotropy
//! against isotropy.

use super::{Orbispace, OrbispaceError};
use crate::algebra::{groups_isomorphic, FiniteGroup};
use crate::simplicial::sset::DisjointSets;

/// The groupoid with one object per complex vertex and one morphism
/// `x → g·x` per pair `(g, x)`; composition multiplies in the group.
#[derive(Clone, Debug)]
pub struct ActionGroupoid {
    pub group: FiniteGroup,
    /// `moves[g][x]` = target of the morphism `(g, x)`.
    pub moves: Vec<Vec<usize>>,
    /// Orbit id per object, numbered by least member.
    pub orbit_of: Vec<usize>,
    /// The least object in each orbit.
    pub orbit_reps: Vec<usize>,
    /// Isotropy group of each orbit's representative.
    pub isotropy: Vec<FiniteGroup>,
}

impl ActionGroupoid {
    pub fn n_objects(&self) -> usize {
        self.orbit_of.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.group.order() * self.n_objects()
    }

    pub fn source(&self, _g: usize, x: usize) -> usize {
        x
    }

    pub fn target(&self, g: usize, x: usize) -> usize {
        self.moves[g][x]
    }

    /// `(h, g·x) ∘ (g, x) = (hg, x)`.
    pub fn compose(&self, h: usize, g: usize, x: usize) -> (usize, usize) {
        (self.group.mul(h, g), x)
    }
}

/// Reads the action groupoid off a global quotient's vertex action.
pub fn action_groupoid(m: &Orbispace) -> Result<ActionGroupoid, OrbispaceError> {
    let d = m.global()?;
    let group = d.borel.group.clone();
    let moves = d.vertex_perms.clone();
    let n = d.complex.n_vertices();

    let mut dsu = DisjointSets::new(n);
    for perm in &moves {
        for x in 0..n {
            dsu.union(x, perm[x]);
        }
    }
    let orbit_of = dsu.canonical_ids();
    let n_orbits = orbit_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut orbit_reps = vec![usize::MAX; n_orbits];
    for (x, &o) in orbit_of.iter().enumerate() {
        orbit_reps[o] = orbit_reps[o].min(x);
    }
    let isotropy = orbit_reps
        .iter()
        .map(|&rep| {
            let fix: Vec<usize> = (0..group.order())
                .filter(|&g| moves[g][rep] == rep)
                .collect();
            let (sub, _) = group.subgroup(&fix).expect("isotropy is a subgroup");
            sub
        })
        .collect();
    Ok(ActionGroupoid {
        group,
        moves,
        orbit_of,
        orbit_reps,
        isotropy,
    })
}

/// The verdict of an equivalence check, with the pairing that worked or the
/// reasons nothing could.
#[derive(Clone, Debug)]
pub struct GroupoidComparison {
    pub equivalent: bool,
    /// Matched orbit pairs `(orbit of a, orbit of b)` when equivalent.
    pub pairing: Vec<(usize, usize)>,
    pub reasons: Vec<String>,
}

/// Decides equivalence of two action groupoids: a bijection of orbit sets
/// under which corresponding isotropy groups are isomorphic. Isomorphism
/// testing refuses groups larger than `order_bound`.
pub fn groupoid_equivalent(
    a: &ActionGroupoid,
    b: &ActionGroupoid,
    order_bound: usize,
) -> Result<GroupoidComparison, OrbispaceError> {
    let mut reasons = Vec::new();
    if a.orbit_reps.len() != b.orbit_reps.len() {
        reasons.push(format!(
            "orbit counts differ: {} vs {}",
            a.orbit_reps.len(),
            b.orbit_reps.len()
        ));
        return Ok(GroupoidComparison {
            equivalent: false,
            pairing: Vec::new(),
            reasons,
        });
    }
    let mut pairing = Vec::new();
    let mut taken = vec![false; b.orbit_reps.len()];
    for (i, gi) in a.isotropy.iter().enumerate() {
        let mut matched = None;
        for (j, gj) in b.isotropy.iter().enumerate() {
            if taken[j] {
                continue;
            }
            if groups_isomorphic(gi, gj, order_bound)?.holds() {
                matched = Some(j);
                break;
            }
        }
        match matched {
            Some(j) => {
                taken[j] = true;
                pairing.push((i, j));
            }
            None => reasons.push(format!(
                "no unmatched orbit of the second groupoid has isotropy of order {}",
                gi.order()
            )),
        }
    }
    let equivalent = reasons.is_empty();
    Ok(GroupoidComparison {
        equivalent,
        pairing: if equivalent { pairing } else { Vec::new() },
        reasons,
    })
}
