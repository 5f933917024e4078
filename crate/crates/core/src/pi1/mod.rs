//! Fundamental groups of simplicial sets: presentations from spanning
//! trees, Tietze simplification, bounded coset enumeration, and universal
//! covers with their deck actions.

pub mod coset;
pub mod cover;
pub mod presentation;
pub mod tietze;

pub use coset::{coset_enumerate, CosetError, Enumeration, DEFAULT_COSET_BOUND};
pub use cover::{universal_cover, CoverResult};
pub use presentation::{pi1_presentation, Pi1Error, Pi1Presentation, Step};
pub use tietze::{tietze_simplify, Simplified};

use crate::algebra::{FGAbelianGroup, FiniteGroup, GroupPresentation};
use crate::simplicial::{Cell, SimplicialSet};

/// Orders we can report without running unbounded searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi1Order {
    Finite(usize),
    /// Enumeration hit the coset bound; finiteness unknown.
    ExceededBound { max_cosets: usize },
    /// Infinite for sure: the abelianization has free rank >= 1.
    InfiniteCertified,
}

/// Identify only groups at most this large unless the caller asks harder;
/// multiplication tables are quadratic in the order.
pub const DEFAULT_IDENTIFY_BOUND: usize = 128;

/// A finite identification of π₁ with its regular representation; the
/// witness maps each simplified generator to a group element.
#[derive(Clone, Debug)]
pub struct Pi1Identification {
    pub group: FiniteGroup,
    pub generator_elements: Vec<usize>,
    pub enumeration: Enumeration,
}

/// Everything the engine knows about one fundamental group.
#[derive(Clone, Debug)]
pub struct Pi1Result {
    /// The presentation as read off the spanning tree, before simplification.
    pub raw: Pi1Presentation,
    pub simplified: Simplified,
    pub abelianization: FGAbelianGroup,
    pub order: Pi1Order,
    pub identified: Option<Pi1Identification>,
}

pub const DEFAULT_TIETZE_BUDGET: usize = 10_000;

/// Presentation, abelianization, order, and (when small or forced) a finite
/// identification.
pub fn analyze_pi1(
    x: &SimplicialSet,
    base: Cell,
    max_cosets: usize,
    identify_bound: usize,
) -> Result<Pi1Result, Pi1Error> {
    let raw = pi1_presentation(x, base)?;
    let simplified = tietze_simplify(&raw.presentation, DEFAULT_TIETZE_BUDGET);
    let abelianization = raw.presentation.abelianization();
    debug_assert_eq!(abelianization, simplified.presentation.abelianization());
    if abelianization.rank() >= 1 {
        return Ok(Pi1Result {
            raw,
            simplified,
            abelianization,
            order: Pi1Order::InfiniteCertified,
            identified: None,
        });
    }
    match coset_enumerate(&simplified.presentation, max_cosets) {
        Err(CosetError::BoundExceeded { max_cosets }) => Ok(Pi1Result {
            raw,
            simplified,
            abelianization,
            order: Pi1Order::ExceededBound { max_cosets },
            identified: None,
        }),
        Ok(enumeration) => {
            let order = enumeration.order;
            let identified = (order <= identify_bound).then(|| {
                let group = enumeration.finite_group(format!("π₁ (order {order})"));
                let generator_elements = (0..simplified.presentation.n_generators)
                    .map(|k| enumeration.generator_element(k))
                    .collect();
                Pi1Identification {
                    group,
                    generator_elements,
                    enumeration,
                }
            });
            Ok(Pi1Result {
                raw,
                simplified,
                abelianization,
                order: Pi1Order::Finite(order),
                identified,
            })
        }
    }
}

impl Pi1Result {
    /// The element of the identified group that a word in the *raw*
    /// generators evaluates to.
    pub fn raw_word_element(&self, word: &[i32]) -> Option<usize> {
        let id = self.identified.as_ref()?;
        let mut x = 0;
        for &l in word {
            let expr = &self.simplified.expressions[l.unsigned_abs() as usize - 1];
            let e = id.group.eval_word(expr, |k| id.generator_elements[k]);
            let e = if l > 0 { e } else { id.group.inv(e) };
            x = id.group.mul(x, e);
        }
        Some(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == Pi1Order::Finite(1)
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.simplified.presentation
    }

    /// Human-readable order, used by reports.
    pub fn order_text(&self) -> String {
        match &self.order {
            Pi1Order::Finite(n) => format!("finite of order {n}"),
            Pi1Order::ExceededBound { max_cosets } => {
                format!("unresolved (exceeded {max_cosets} cosets)")
            }
            Pi1Order::InfiniteCertified => {
                "infinite (free abelian quotient of positive rank)".into()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::OrderedComplex;

    #[test]
    fn circle_is_certified_infinite() {
        let s = SimplicialSet::minimal_circle(2);
        let r = analyze_pi1(&s, Cell::new(0, 0), 100, 128).unwrap();
        assert_eq!(r.order, Pi1Order::InfiniteCertified);
        assert_eq!(r.abelianization, FGAbelianGroup::free(1));
        assert!(r.identified.is_none());
    }

    #[test]
    fn sphere_is_trivial() {
        let s = OrderedComplex::simplex_boundary(3).nerve(3).sset;
        let r = analyze_pi1(&s, Cell::new(0, 0), 1_000, 128).unwrap();
        assert!(r.is_trivial());
        assert_eq!(r.raw_word_element(&[]), Some(0));
    }

    #[test]
    fn unresolved_groups_decline_word_evaluation() {
        let s = OrderedComplex::polygon(6).to_simplicial_set(2);
        let r = analyze_pi1(&s, Cell::new(0, 0), 50, 128).unwrap();
        assert_eq!(r.order, Pi1Order::InfiniteCertified);
        assert_eq!(r.raw_word_element(&[1]), None);
    }
}
