//! Side-by-side comparison of orbispace presentations through computable
//! invariants: homology of the underlying and total spaces, fundamental
//! group of the total space, and the multiset of stabilizers. A comparison
//! can distinguish presentations; it never claims they are isomorphic.

use super::les::{GroupTag, LesEntry};
use super::{stabilizer, Orbispace, OrbispaceError};
use crate::algebra::{groups_isomorphic, FGAbelianGroup, FiniteGroup};
use crate::pi1::cover::COVER_ORDER_CAP;
use crate::pi1::{analyze_pi1, Pi1Order, DEFAULT_COSET_BOUND};
use crate::algebra::Coefficients;
use crate::simplicial::{homology_of, Cell, SimplicialSet};
use std::collections::BTreeMap;

/// A presentation that exists only as a record: an underlying space plus
/// whatever is known about the rest. Used for quotients whose construction
/// is out of reach of the simplicial machinery.
#[derive(Clone, Debug)]
pub struct SymbolicOrbispace {
    pub name: String,
    pub underlying: SimplicialSet,
    /// The stabilizer reported at every point.
    pub stabilizer: GroupTag,
    /// What is known about π₁ of the total space.
    pub total_pi1: LesEntry,
    /// Recorded homology of the total space in low degrees, if any.
    pub total_homology: Option<Vec<FGAbelianGroup>>,
}

#[derive(Clone, Debug)]
pub enum ComparisonSide {
    Concrete(Orbispace),
    Symbolic(SymbolicOrbispace),
}

impl ComparisonSide {
    fn underlying(&self) -> &SimplicialSet {
        match self {
            ComparisonSide::Concrete(m) => m.base(),
            ComparisonSide::Symbolic(s) => &s.underlying,
        }
    }

    fn symbolic_name(&self) -> Option<&str> {
        match self {
            ComparisonSide::Concrete(_) => None,
            ComparisonSide::Symbolic(s) => Some(&s.name),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Agrees,
    Differs,
    /// The data at hand cannot decide this row.
    Incomparable,
}

/// One invariant tabulated on both sides.
#[derive(Clone, Debug)]
pub struct CompareLine {
    pub invariant: String,
    pub left: String,
    pub right: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct CompareReport {
    pub degree: usize,
    pub lines: Vec<CompareLine>,
    pub distinguished: bool,
    pub notes: Vec<String>,
}

impl CompareReport {
    pub fn summary(&self) -> String {
        if self.distinguished {
            let by: Vec<&str> = self
                .lines
                .iter()
                .filter(|l| l.verdict == Verdict::Differs)
                .map(|l| l.invariant.as_str())
                .collect();
            format!("distinguished by {}", by.join(", "))
        } else {
            format!("not distinguished at degree {}", self.degree)
        }
    }
}

/// What a side knows about π₁ of its total space.
enum Pi1Knowledge {
    Finite { order: usize, group: Option<FiniteGroup> },
    Infinite,
    Unknown,
}

impl Pi1Knowledge {
    fn describe(&self) -> String {
        match self {
            Pi1Knowledge::Finite { order: 1, .. } => "trivial".into(),
            Pi1Knowledge::Finite { order, .. } => format!("finite of order {order}"),
            Pi1Knowledge::Infinite => "infinite".into(),
            Pi1Knowledge::Unknown => "unresolved".into(),
        }
    }
}

fn concrete_pi1(m: &Orbispace) -> Result<Pi1Knowledge, OrbispaceError> {
    let analysis = analyze_pi1(
        m.total(),
        Cell::new(0, 0),
        DEFAULT_COSET_BOUND,
        COVER_ORDER_CAP,
    )?;
    Ok(match analysis.order {
        Pi1Order::Finite(order) => Pi1Knowledge::Finite {
            order,
            group: analysis.identified.map(|id| id.group),
        },
        Pi1Order::InfiniteCertified => Pi1Knowledge::Infinite,
        Pi1Order::ExceededBound { .. } => Pi1Knowledge::Unknown,
    })
}

fn entry_pi1(e: &LesEntry) -> Pi1Knowledge {
    match e {
        LesEntry::Zero => Pi1Knowledge::Finite {
            order: 1,
            group: None,
        },
        LesEntry::Abelian(a) => match a.order() {
            Some(o) => Pi1Knowledge::Finite {
                order: o.try_into().unwrap_or(usize::MAX),
                group: None,
            },
            None => Pi1Knowledge::Infinite,
        },
        LesEntry::Tag(GroupTag::Trivial) => Pi1Knowledge::Finite {
            order: 1,
            group: None,
        },
        LesEntry::Tag(GroupTag::Cyclic(n)) => Pi1Knowledge::Finite {
            order: *n as usize,
            group: None,
        },
        LesEntry::Tag(GroupTag::Named {
            order: Some(n), ..
        }) => Pi1Knowledge::Finite {
            order: *n as usize,
            group: None,
        },
        _ => Pi1Knowledge::Unknown,
    }
}

fn pi1_verdict(a: &Pi1Knowledge, b: &Pi1Knowledge) -> Result<Verdict, OrbispaceError> {
    Ok(match (a, b) {
        (Pi1Knowledge::Unknown, _) | (_, Pi1Knowledge::Unknown) => Verdict::Incomparable,
        (Pi1Knowledge::Infinite, Pi1Knowledge::Infinite) => Verdict::Incomparable,
        (Pi1Knowledge::Infinite, Pi1Knowledge::Finite { .. })
        | (Pi1Knowledge::Finite { .. }, Pi1Knowledge::Infinite) => Verdict::Differs,
        (
            Pi1Knowledge::Finite {
                order: oa,
                group: ga,
            },
            Pi1Knowledge::Finite {
                order: ob,
                group: gb,
            },
        ) => {
            if oa != ob {
                Verdict::Differs
            } else if let (Some(ga), Some(gb)) = (ga, gb) {
                if groups_isomorphic(ga, gb, COVER_ORDER_CAP)?.holds() {
                    Verdict::Agrees
                } else {
                    Verdict::Differs
                }
            } else {
                Verdict::Agrees
            }
        }
    })
}

/// A structure fingerprint fine enough for small groups: the order together
/// with the multiset of element orders.
fn group_key(g: &FiniteGroup) -> String {
    format!("order {} {:?}", g.order(), g.element_order_multiset())
}

fn tag_key(tag: &GroupTag) -> Option<String> {
    match tag {
        GroupTag::Trivial => Some(group_key(&FiniteGroup::trivial())),
        GroupTag::Cyclic(n) => Some(group_key(&FiniteGroup::cyclic(*n as usize))),
        GroupTag::Named { .. } => None,
    }
}

fn multiset_line(keys: &[String]) -> String {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for k in keys {
        *counts.entry(k).or_default() += 1;
    }
    counts
        .iter()
        .map(|(k, n)| format!("{n} × {k}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn stabilizer_keys(m: &Orbispace) -> Result<Vec<String>, OrbispaceError> {
    let mut keys = Vec::new();
    for v in 0..m.base().cell_count(0) {
        keys.push(group_key(&stabilizer(m, Cell::new(0, v))?));
    }
    keys.sort();
    Ok(keys)
}

/// Tabulates the invariants of two presentations through degree `d` and
/// declares them distinguished exactly when some row genuinely differs.
pub fn compare_orbispaces(
    m: &ComparisonSide,
    n: &ComparisonSide,
    d: usize,
) -> Result<CompareReport, OrbispaceError> {
    if let ComparisonSide::Concrete(o) = m {
        assert!(d <= o.valid_degree(), "degree {d} beyond the certified range");
    }
    if let ComparisonSide::Concrete(o) = n {
        assert!(d <= o.valid_degree(), "degree {d} beyond the certified range");
    }
    let mut lines = Vec::new();
    let mut notes = Vec::new();
    for side in [m, n] {
        if let Some(name) = side.symbolic_name() {
            notes.push(format!(
                "{name} is a symbolic record; its rows use recorded data only"
            ));
        }
    }

    let hq_left = homology_of(m.underlying(), &Coefficients::Integers);
    let hq_right = homology_of(n.underlying(), &Coefficients::Integers);
    for k in 0..=d {
        lines.push(CompareLine {
            invariant: format!("H_{k} of the underlying space"),
            left: hq_left[k].to_string(),
            right: hq_right[k].to_string(),
            verdict: if hq_left[k] == hq_right[k] {
                Verdict::Agrees
            } else {
                Verdict::Differs
            },
        });
    }

    let total = |side: &ComparisonSide| -> Option<Vec<FGAbelianGroup>> {
        match side {
            ComparisonSide::Concrete(o) => Some(homology_of(o.total(), &Coefficients::Integers)),
            ComparisonSide::Symbolic(s) => s.total_homology.clone(),
        }
    };
    let hp_left = total(m);
    let hp_right = total(n);
    for k in 0..=d {
        let left = hp_left.as_ref().and_then(|h| h.get(k));
        let right = hp_right.as_ref().and_then(|h| h.get(k));
        lines.push(CompareLine {
            invariant: format!("H_{k} of the total space"),
            left: left.map_or("not recorded".into(), |g| g.to_string()),
            right: right.map_or("not recorded".into(), |g| g.to_string()),
            verdict: match (left, right) {
                (Some(a), Some(b)) if a == b => Verdict::Agrees,
                (Some(_), Some(_)) => Verdict::Differs,
                _ => Verdict::Incomparable,
            },
        });
    }

    let pi1_of = |side: &ComparisonSide| -> Result<Pi1Knowledge, OrbispaceError> {
        match side {
            ComparisonSide::Concrete(o) => concrete_pi1(o),
            ComparisonSide::Symbolic(s) => Ok(entry_pi1(&s.total_pi1)),
        }
    };
    let pa = pi1_of(m)?;
    let pb = pi1_of(n)?;
    lines.push(CompareLine {
        invariant: "π₁ of the total space".into(),
        left: pa.describe(),
        right: pb.describe(),
        verdict: pi1_verdict(&pa, &pb)?,
    });

    let stab_of = |side: &ComparisonSide| -> Result<(String, Option<Vec<String>>), OrbispaceError> {
        match side {
            ComparisonSide::Concrete(o) => {
                let keys = stabilizer_keys(o)?;
                Ok((multiset_line(&keys), Some(keys)))
            }
            ComparisonSide::Symbolic(s) => {
                let shown = match &s.stabilizer {
                    GroupTag::Trivial => "trivial everywhere".to_string(),
                    GroupTag::Cyclic(k) => format!("ℤ/{k} everywhere"),
                    GroupTag::Named { name, .. } => format!("{name} everywhere"),
                };
                Ok((shown, None))
            }
        }
    };
    let (left_shown, left_keys) = stab_of(m)?;
    let (right_shown, right_keys) = stab_of(n)?;
    let stab_verdict = match (&left_keys, &right_keys) {
        (Some(a), Some(b)) => {
            if a == b {
                Verdict::Agrees
            } else {
                Verdict::Differs
            }
        }
        _ => {
            // a symbolic side claims one class at every point: compare the
            // set of classes that actually occur against it
            let tag = |side: &ComparisonSide| match side {
                ComparisonSide::Symbolic(s) => tag_key(&s.stabilizer),
                ComparisonSide::Concrete(_) => None,
            };
            let classes = |keys: &Option<Vec<String>>| {
                keys.as_ref().map(|k| {
                    let mut distinct = k.clone();
                    distinct.dedup();
                    distinct
                })
            };
            match (
                classes(&left_keys).or_else(|| tag(m).map(|t| vec![t])),
                classes(&right_keys).or_else(|| tag(n).map(|t| vec![t])),
            ) {
                (Some(a), Some(b)) => {
                    if a == b {
                        Verdict::Agrees
                    } else {
                        Verdict::Differs
                    }
                }
                _ => Verdict::Incomparable,
            }
        }
    };
    lines.push(CompareLine {
        invariant: "stabilizer classes per orbit".into(),
        left: left_shown,
        right: right_shown,
        verdict: stab_verdict,
    });

    let distinguished = lines.iter().any(|l| l.verdict == Verdict::Differs);
    Ok(CompareReport {
        degree: d,
        lines,
        distinguished,
        notes,
    })
}
