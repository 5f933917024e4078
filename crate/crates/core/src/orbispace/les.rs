//! Bookkeeping for long-exact-sequence arguments: an ordered list of entries
//! assumed exact at every interior position, and a solver that fills in only
//! what exactness forces.

use crate::algebra::FGAbelianGroup;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LesError {
    #[error("the sequence cannot be exact at position {position}: {reason}")]
    InconsistentSpec { position: usize, reason: String },
}

/// A finite, possibly nonabelian value sitting in one slot, reported by
/// name rather than structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupTag {
    Trivial,
    Cyclic(u64),
    Named { name: String, order: Option<u64> },
}

/// What is known about one slot of the sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LesEntry {
    Zero,
    Abelian(FGAbelianGroup),
    Tag(GroupTag),
    Unknown(String),
}

impl LesEntry {
    pub fn named(name: impl Into<String>, order: Option<u64>) -> Self {
        LesEntry::Tag(GroupTag::Named {
            name: name.into(),
            order,
        })
    }

    pub fn unknown(name: impl Into<String>) -> Self {
        LesEntry::Unknown(name.into())
    }

    fn is_known(&self) -> bool {
        !matches!(self, LesEntry::Unknown(_))
    }

    /// `Some(order)` when the entry is known finite, `None` otherwise.
    fn finite_order(&self) -> Option<BigInt> {
        match self {
            LesEntry::Zero => Some(BigInt::one()),
            LesEntry::Abelian(a) => a.order(),
            LesEntry::Tag(GroupTag::Named { order, .. }) => order.map(BigInt::from),
            LesEntry::Tag(GroupTag::Trivial) => Some(BigInt::one()),
            LesEntry::Tag(GroupTag::Cyclic(n)) => Some(BigInt::from(*n)),
            LesEntry::Unknown(_) => None,
        }
    }

    fn is_known_infinite(&self) -> bool {
        matches!(self, LesEntry::Abelian(a) if a.rank() >= 1)
    }

    pub fn describe(&self) -> String {
        match self {
            LesEntry::Zero => "0".into(),
            LesEntry::Abelian(a) => a.to_string(),
            LesEntry::Tag(GroupTag::Trivial) => "trivial".into(),
            LesEntry::Tag(GroupTag::Cyclic(n)) => format!("ℤ/{n}"),
            LesEntry::Tag(GroupTag::Named { name, .. }) => name.clone(),
            LesEntry::Unknown(name) => format!("unknown ({name})"),
        }
    }
}

/// The outcome of a solve: resolved entries in the original order, a flag
/// per position for constraints that stopped short of forcing a value, and
/// a deterministic log of every deduction.
#[derive(Clone, Debug)]
pub struct LesSolution {
    pub entries: Vec<LesEntry>,
    pub ambiguous: Vec<bool>,
    pub notes: Vec<String>,
}

fn normalize(e: &LesEntry) -> LesEntry {
    match e {
        LesEntry::Abelian(a) if a.is_trivial() => LesEntry::Zero,
        LesEntry::Tag(GroupTag::Trivial) => LesEntry::Zero,
        LesEntry::Tag(GroupTag::Cyclic(1)) => LesEntry::Zero,
        LesEntry::Tag(GroupTag::Cyclic(n)) => LesEntry::Abelian(FGAbelianGroup::cyclic(*n)),
        LesEntry::Tag(GroupTag::Named { order: Some(1), .. }) => LesEntry::Zero,
        other => other.clone(),
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The entry a slot of known finite order is forced to hold, if any: order
/// one is trivial and prime order is cyclic, abelian or not.
fn forced_by_order(order: &BigInt) -> Option<LesEntry> {
    if order.is_one() {
        return Some(LesEntry::Zero);
    }
    let small = order.to_u64()?;
    is_prime(small).then(|| LesEntry::Abelian(FGAbelianGroup::cyclic(small)))
}

/// Can two known entries denote the same group? `None` means the data at
/// hand cannot tell them apart.
fn compatible(a: &LesEntry, b: &LesEntry) -> Option<bool> {
    match (a, b) {
        (LesEntry::Abelian(x), LesEntry::Abelian(y)) => Some(x == y),
        (LesEntry::Zero, LesEntry::Zero) => Some(true),
        (LesEntry::Zero, other) | (other, LesEntry::Zero) => {
            Some(other.finite_order()? == BigInt::one())
        }
        (
            LesEntry::Tag(GroupTag::Named { name: n1, .. }),
            LesEntry::Tag(GroupTag::Named { name: n2, .. }),
        ) if n1 == n2 => Some(true),
        _ => match (a.finite_order(), b.finite_order()) {
            (Some(x), Some(y)) if x != y => Some(false),
            _ => None,
        },
    }
}

/// Propagates exactness through the sequence until nothing more is forced.
///
/// Three shapes drive every deduction, each read inside the given sequence
/// so all needed exactness is actually assumed:
/// an entry with zero on both sides is zero; `0 → A → B → 0` forces
/// `A ≅ B`; and `0 → A → B → C → 0` forces the order relation
/// `|B| = |A|·|C|`, which pins the remaining slot down exactly when the
/// forced order is 1 or prime, or one outer term is zero. Anything short of
/// forced is reported as an ambiguity, never guessed.
pub fn les_solve(spec: &[LesEntry]) -> Result<LesSolution, LesError> {
    assert!(!spec.is_empty(), "a sequence needs at least one entry");
    let mut entries: Vec<LesEntry> = spec.iter().map(normalize).collect();
    let mut notes = Vec::new();

    // a slot only ever moves from Unknown to known, so this terminates
    loop {
        let mut changed = false;
        let set = |entries: &mut Vec<LesEntry>,
                       i: usize,
                       value: LesEntry,
                       why: &str,
                       notes: &mut Vec<String>|
         -> Result<bool, LesError> {
            let value = normalize(&value);
            if entries[i].is_known() {
                match compatible(&entries[i], &value) {
                    Some(true) | None => Ok(false),
                    Some(false) => Err(LesError::InconsistentSpec {
                        position: i,
                        reason: format!(
                            "{} is forced to be {} ({})",
                            entries[i].describe(),
                            value.describe(),
                            why
                        ),
                    }),
                }
            } else {
                notes.push(format!(
                    "position {i} resolved to {} ({why})",
                    value.describe()
                ));
                entries[i] = value;
                Ok(true)
            }
        };

        for i in 1..entries.len().saturating_sub(1) {
            if entries[i - 1] == LesEntry::Zero && entries[i + 1] == LesEntry::Zero {
                changed |= set(
                    &mut entries,
                    i,
                    LesEntry::Zero,
                    "flanked by zeros",
                    &mut notes,
                )?;
            }
        }

        for i in 0..entries.len().saturating_sub(3) {
            if entries[i] != LesEntry::Zero || entries[i + 3] != LesEntry::Zero {
                continue;
            }
            let (a, b) = (i + 1, i + 2);
            if entries[a].is_known() && !entries[b].is_known() {
                let v = entries[a].clone();
                changed |= set(&mut entries, b, v, "isomorphic across 0 → A → B → 0", &mut notes)?;
            } else if entries[b].is_known() && !entries[a].is_known() {
                let v = entries[b].clone();
                changed |= set(&mut entries, a, v, "isomorphic across 0 → A → B → 0", &mut notes)?;
            } else if entries[a].is_known() && entries[b].is_known() {
                if compatible(&entries[a], &entries[b]) == Some(false) {
                    return Err(LesError::InconsistentSpec {
                        position: a,
                        reason: format!(
                            "0 → {} → {} → 0 cannot be exact",
                            entries[a].describe(),
                            entries[b].describe()
                        ),
                    });
                }
            }
        }

        for i in 0..entries.len().saturating_sub(4) {
            if entries[i] != LesEntry::Zero || entries[i + 4] != LesEntry::Zero {
                continue;
            }
            let (a, b, c) = (i + 1, i + 2, i + 3);
            // zero outer terms collapse to the previous shape next pass
            if entries[a] == LesEntry::Zero || entries[c] == LesEntry::Zero {
                continue;
            }
            let orders = (
                entries[a].finite_order(),
                entries[b].finite_order(),
                entries[c].finite_order(),
            );
            match orders {
                (Some(oa), Some(ob), Some(oc)) => {
                    if ob != &oa * &oc {
                        return Err(LesError::InconsistentSpec {
                            position: b,
                            reason: format!(
                                "orders {oa}·{oc} ≠ {ob} across 0 → A → B → C → 0"
                            ),
                        });
                    }
                }
                (Some(oa), None, Some(oc)) if !entries[b].is_known() => {
                    if let Some(v) = forced_by_order(&(&oa * &oc)) {
                        changed |= set(&mut entries, b, v, "order forced by exactness", &mut notes)?;
                    }
                }
                (Some(oa), Some(ob), None) if !entries[c].is_known() => {
                    if (&ob % &oa) != BigInt::from(0) {
                        return Err(LesError::InconsistentSpec {
                            position: c,
                            reason: format!("|A| = {oa} must divide |B| = {ob}"),
                        });
                    }
                    if let Some(v) = forced_by_order(&(ob / oa)) {
                        changed |= set(&mut entries, c, v, "order forced by exactness", &mut notes)?;
                    }
                }
                (None, Some(ob), Some(oc)) if !entries[a].is_known() => {
                    if (&ob % &oc) != BigInt::from(0) {
                        return Err(LesError::InconsistentSpec {
                            position: a,
                            reason: format!("|C| = {oc} must divide |B| = {ob}"),
                        });
                    }
                    if let Some(v) = forced_by_order(&(ob / oc)) {
                        changed |= set(&mut entries, a, v, "order forced by exactness", &mut notes)?;
                    }
                }
                _ => {}
            }
            // a finite middle cannot absorb an infinite outer term
            if entries[b].finite_order().is_some()
                && (entries[a].is_known_infinite() || entries[c].is_known_infinite())
            {
                return Err(LesError::InconsistentSpec {
                    position: b,
                    reason: "a finite group cannot sit between infinite ones".into(),
                });
            }
        }

        if !changed {
            break;
        }
    }

    // final scan: flag every slot a window constrains without forcing
    let mut ambiguous = vec![false; entries.len()];
    for i in 0..entries.len().saturating_sub(4) {
        if entries[i] != LesEntry::Zero || entries[i + 4] != LesEntry::Zero {
            continue;
        }
        let (a, b, c) = (i + 1, i + 2, i + 3);
        if entries[a] == LesEntry::Zero || entries[c] == LesEntry::Zero {
            continue;
        }
        for (slot, o1, o2, rel) in [
            (b, a, c, "product"),
            (a, b, c, "quotient"),
            (c, b, a, "quotient"),
        ] {
            if entries[slot].is_known() {
                continue;
            }
            let (Some(x), Some(y)) = (entries[o1].finite_order(), entries[o2].finite_order())
            else {
                continue;
            };
            let order = if rel == "product" { x * y } else { x / y };
            ambiguous[slot] = true;
            notes.push(format!(
                "position {slot} has order {order} but the extension is not determined"
            ));
        }
    }

    Ok(LesSolution {
        entries,
        ambiguous,
        notes,
    })
}
