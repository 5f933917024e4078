//! Finitely generated abelian groups in invariant-factor normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// `Z^rank ⊕ Z/d1 ⊕ … ⊕ Z/dk` with `d1 | d2 | … | dk` and every `di >= 2`.
///
/// Equality of values is isomorphism of the groups they denote.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    /// Normalizes an arbitrary list of cyclic orders into invariant factors.
    pub fn new(rank: usize, cyclic_orders: &[BigInt]) -> Self {
        // prime -> multiset of exponents, largest first
        let mut primary: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
        for d in cyclic_orders {
            assert!(d.is_positive(), "cyclic order must be positive, got {d}");
            for (p, e) in factorize(d) {
                primary.entry(p).or_default().push(e);
            }
        }
        let mut slots = 0;
        for exps in primary.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            slots = slots.max(exps.len());
        }
        let mut factors = vec![BigInt::one(); slots];
        for (p, exps) in &primary {
            for (slot, &e) in exps.iter().enumerate() {
                factors[slot] *= p.pow(e);
            }
        }
        factors.retain(|d| !d.is_one());
        factors.reverse();
        FGAbelianGroup {
            rank,
            torsion: factors,
        }
    }

    /// Accepts divisors already in divisibility order (e.g. straight from a
    /// Smith decomposition), dropping trivial factors.
    pub fn from_invariant_factors(rank: usize, divisors: &[BigInt]) -> Self {
        debug_assert!(divisors
            .windows(2)
            .all(|w| w[1].mod_floor(&w[0]).is_zero()));
        FGAbelianGroup {
            rank,
            torsion: divisors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn zero() -> Self {
        FGAbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        assert!(n > 0);
        FGAbelianGroup::new(0, &[BigInt::from(n)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Group order; `None` when the rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &FGAbelianGroup) -> FGAbelianGroup {
        let mut orders = self.torsion.clone();
        orders.extend_from_slice(&other.torsion);
        FGAbelianGroup::new(self.rank + other.rank, &orders)
    }

    /// Number of `Z/p` summands of the mod-p reduction, i.e.
    /// `dim_Fp (self ⊗ Fp)`.
    pub fn mod_p_rank(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.rank
            + self
                .torsion
                .iter()
                .filter(|d| d.mod_floor(&p).is_zero())
                .count()
    }
}

fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.mod_floor(&p).is_zero() {
            let mut e = 0;
            while n.mod_floor(&p).is_zero() {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("ℤ/{d}"));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn normal_form_recombines_primary_parts() {
        // Z/2 ⊕ Z/3 = Z/6, Z/4 ⊕ Z/6 = Z/2 ⊕ Z/12
        assert_eq!(
            FGAbelianGroup::new(0, &[big(2), big(3)]),
            FGAbelianGroup::cyclic(6)
        );
        let g = FGAbelianGroup::new(0, &[big(4), big(6)]);
        assert_eq!(g.torsion(), &[big(2), big(12)]);
        assert_eq!(g.order(), Some(big(24)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(FGAbelianGroup::zero().to_string(), "0");
        assert_eq!(FGAbelianGroup::free(1).to_string(), "ℤ");
        assert_eq!(
            FGAbelianGroup::new(2, &[big(2), big(4)]).to_string(),
            "ℤ^2 ⊕ ℤ/2 ⊕ ℤ/4"
        );
    }

    #[test]
    fn mod_p_ranks() {
        let g = FGAbelianGroup::new(1, &[big(2), big(12)]);
        assert_eq!(g.mod_p_rank(2), 3);
        assert_eq!(g.mod_p_rank(3), 2);
        assert_eq!(g.mod_p_rank(5), 1);
    }

    #[test]
    fn ones_are_dropped() {
        let g = FGAbelianGroup::from_invariant_factors(0, &[big(1), big(1), big(2)]);
        assert_eq!(g, FGAbelianGroup::cyclic(2));
    }
}
