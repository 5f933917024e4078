//! Finite groups as explicit multiplication tables.

use itertools::Itertools;
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("group order {order} exceeds the supported bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("isomorphism search bound {bound} exceeded by a group of order {order}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("subset is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
}

/// Largest group order accepted by table-building constructors. Tables are
/// dense `order^2` arrays, so this is a memory guard, not a math limit.
pub const MAX_TABLE_ORDER: usize = 1024;

/// A finite group given by its multiplication table. Element 0 is the
/// identity; elements are otherwise opaque indices.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    label: String,
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).flat_map(|i| (0..n).map(move |j| (i + j) % n)).collect();
        let inverse = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup {
            order: n,
            table,
            inverse,
            label: format!("cyclic({n})"),
        }
    }

    /// Symmetric group on `n` letters; permutations are indexed in
    /// lexicographic order, so the identity comes first.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        assert!(n >= 1);
        let order: usize = (1..=n).product();
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::OrderTooLarge {
                order,
                bound: MAX_TABLE_ORDER,
            });
        }
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let mut table = Vec::with_capacity(order * order);
        for p in &perms {
            for q in &perms {
                let composed: Vec<usize> = (0..n).map(|i| p[q[i]]).collect();
                table.push(index_of(&composed));
            }
        }
        let mut g = FiniteGroup {
            order,
            table,
            inverse: Vec::new(),
            label: format!("symmetric({n})"),
        };
        g.inverse = g.compute_inverses().expect("permutation composition");
        Ok(g)
    }

    /// Builds a group from an explicit table, validating the group axioms.
    /// Associativity is checked exhaustively up to order 64 and on a
    /// deterministic sample above that.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let m = rows.len();
        if m == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if m > MAX_TABLE_ORDER {
            return Err(GroupError::OrderTooLarge {
                order: m,
                bound: MAX_TABLE_ORDER,
            });
        }
        let mut table = Vec::with_capacity(m * m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(GroupError::InvalidTable(format!(
                    "row {i} has length {} in a table of order {m}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= m {
                    return Err(GroupError::InvalidTable(format!(
                        "entry {v} out of range in row {i}"
                    )));
                }
            }
            table.extend_from_slice(row);
        }
        let g = FiniteGroup {
            order: m,
            table,
            inverse: Vec::new(),
            label: format!("table({m})"),
        };
        for i in 0..m {
            if g.mul(0, i) != i || g.mul(i, 0) != i {
                return Err(GroupError::InvalidTable(format!(
                    "element 0 is not a two-sided identity at {i}"
                )));
            }
        }
        // Latin square: each row and column is a permutation.
        for i in 0..m {
            let mut seen_row = vec![false; m];
            let mut seen_col = vec![false; m];
            for j in 0..m {
                seen_row[g.mul(i, j)] = true;
                seen_col[g.mul(j, i)] = true;
            }
            if seen_row.iter().any(|s| !s) || seen_col.iter().any(|s| !s) {
                return Err(GroupError::InvalidTable(format!(
                    "row or column {i} is not a permutation"
                )));
            }
        }
        let check = |a: usize, b: usize, c: usize| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
        if m <= 64 {
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        if !check(a, b, c) {
                            return Err(GroupError::InvalidTable(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut state: u64 = 0x9e3779b97f4a7c15;
            for _ in 0..200_000 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (state >> 33) as usize % m;
                let b = (state >> 17) as usize % m;
                let c = state as usize % m;
                if !check(a, b, c) {
                    return Err(GroupError::InvalidTable(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        let inverse = g
            .compute_inverses()
            .ok_or_else(|| GroupError::InvalidTable("an element has no inverse".into()))?;
        Ok(FiniteGroup { inverse, ..g })
    }

    fn compute_inverses(&self) -> Option<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).find(|&j| self.mul(i, j) == 0 && self.mul(j, i) == 0))
            .collect()
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let order = a.order * b.order;
        let enc = |x: usize, y: usize| x * b.order + y;
        let mut table = Vec::with_capacity(order * order);
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    for y2 in 0..b.order {
                        table.push(enc(a.mul(x1, x2), b.mul(y1, y2)));
                    }
                }
            }
        }
        let inverse = (0..a.order)
            .flat_map(|x| (0..b.order).map(move |y| (x, y)))
            .map(|(x, y)| enc(a.inv(x), b.inv(y)))
            .collect();
        FiniteGroup {
            order,
            table,
            inverse,
            label: format!("{} x {}", a.label, b.label),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn element_order_multiset(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).sorted().collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    /// Evaluates a signed word: positive letters are elements, negative their
    /// inverses (1-based, so letter `k` means element index `k - 1`).
    pub fn eval_word(&self, word: &[i32], letter: impl Fn(usize) -> usize) -> usize {
        let mut acc = 0;
        for &l in word {
            let idx = letter(l.unsigned_abs() as usize - 1);
            let e = if l > 0 { idx } else { self.inv(idx) };
            acc = self.mul(acc, e);
        }
        acc
    }

    /// Smallest subgroup containing `seed`, as a sorted element list.
    pub fn generated_subgroup(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_sub = vec![false; self.order];
        in_sub[0] = true;
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            for &g in seed {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if !in_sub[y] {
                        in_sub[y] = true;
                        queue.push(y);
                    }
                }
            }
        }
        (0..self.order).filter(|&i| in_sub[i]).collect()
    }

    /// Reindexes a closed subset as a group of its own, with the embedding.
    /// Elements are ordered identity-first, then ascending.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, GroupHom), GroupError> {
        let mut elems: Vec<usize> = elements.iter().copied().sorted().dedup().collect();
        if !elems.contains(&0) {
            return Err(GroupError::NotASubgroup("identity missing".into()));
        }
        elems.retain(|&e| e != 0);
        elems.insert(0, 0);
        let pos = |e: usize| elems.iter().position(|&x| x == e);
        let mut table = vec![0; elems.len() * elems.len()];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                let Some(p) = pos(self.mul(a, b)) else {
                    return Err(GroupError::NotASubgroup(format!(
                        "product of {a} and {b} escapes the subset"
                    )));
                };
                table[i * elems.len() + j] = p;
            }
        }
        let inverse = elems
            .iter()
            .map(|&a| {
                pos(self.inv(a)).ok_or_else(|| {
                    GroupError::NotASubgroup(format!("inverse of {a} escapes the subset"))
                })
            })
            .collect::<Result<_, _>>()?;
        let sub = FiniteGroup {
            order: elems.len(),
            table,
            inverse,
            label: format!("subgroup({}) of {}", elems.len(), self.label),
        };
        let embedding = GroupHom::new(sub.clone(), self.clone(), elems)?;
        Ok((sub, embedding))
    }

    pub fn describe(&self) -> String {
        let structure = if self.order == 1 {
            "trivial".to_string()
        } else if self.is_cyclic() {
            format!("ℤ/{}", self.order)
        } else if self.is_abelian() {
            "abelian".to_string()
        } else {
            "nonabelian".to_string()
        };
        format!("{} (order {}, {structure})", self.label, self.order)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

/// A homomorphism between finite groups, stored as the full image table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub images: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: FiniteGroup,
        target: FiniteGroup,
        images: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let hom = GroupHom {
            source,
            target,
            images,
        };
        hom.validate()?;
        Ok(hom)
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            images: (0..g.order()).collect(),
        }
    }

    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            images: vec![0; source.order()],
        }
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        if self.images.len() != self.source.order() {
            return Err(GroupError::NotAHomomorphism(
                "image table length differs from source order".into(),
            ));
        }
        if let Some(&img) = self.images.iter().find(|&&i| i >= self.target.order()) {
            return Err(GroupError::NotAHomomorphism(format!(
                "image {img} out of range"
            )));
        }
        if self.images[0] != 0 {
            return Err(GroupError::NotAHomomorphism(
                "identity does not map to identity".into(),
            ));
        }
        for a in 0..self.source.order() {
            for b in 0..self.source.order() {
                if self.images[self.source.mul(a, b)]
                    != self.target.mul(self.images[a], self.images[b])
                {
                    return Err(GroupError::NotAHomomorphism(format!(
                        "multiplicativity fails at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && {
            let mut seen = vec![false; self.target.order()];
            self.images.iter().for_each(|&i| seen[i] = true);
            seen.into_iter().all(|s| s)
        }
    }

    pub fn compose(&self, then: &GroupHom) -> Result<GroupHom, GroupError> {
        if self.target != then.source {
            return Err(GroupError::NotAHomomorphism(
                "composition target/source mismatch".into(),
            ));
        }
        GroupHom::new(
            self.source.clone(),
            then.target.clone(),
            self.images.iter().map(|&i| then.images[i]).collect(),
        )
    }
}

#[derive(Clone, Debug)]
pub enum IsoDecision {
    Isomorphic(GroupHom),
    NotIsomorphic { reason: String },
}

impl IsoDecision {
    pub fn holds(&self) -> bool {
        matches!(self, IsoDecision::Isomorphic(_))
    }
}

pub const DEFAULT_ISO_ORDER_BOUND: usize = 128;

/// Decides isomorphism by invariant screening followed by an exhaustive
/// search over generator images. Returns a verified witness on success.
pub fn groups_isomorphic(
    a: &FiniteGroup,
    b: &FiniteGroup,
    order_bound: usize,
) -> Result<IsoDecision, GroupError> {
    let order = a.order().max(b.order());
    if order > order_bound {
        return Err(GroupError::OrderBoundExceeded {
            order,
            bound: order_bound,
        });
    }
    if a.order() != b.order() {
        return Ok(IsoDecision::NotIsomorphic {
            reason: format!("orders differ: {} vs {}", a.order(), b.order()),
        });
    }
    if a.element_order_multiset() != b.element_order_multiset() {
        return Ok(IsoDecision::NotIsomorphic {
            reason: "element order multisets differ".into(),
        });
    }
    if a.is_abelian() != b.is_abelian() {
        return Ok(IsoDecision::NotIsomorphic {
            reason: "one group is abelian, the other is not".into(),
        });
    }

    // Greedy generating set for `a`, with a parent word for every element.
    let mut gens: Vec<usize> = Vec::new();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; a.order()]; // (prev elem, gen idx)
    let mut reached = vec![false; a.order()];
    reached[0] = true;
    let mut gen_closure_sizes = Vec::new();
    while let Some(next) = (0..a.order()).find(|&e| !reached[e]) {
        gens.push(next);
        let gi = gens.len() - 1;
        // BFS closure under right multiplication by the known generators
        let mut queue: Vec<usize> = (0..a.order()).filter(|&e| reached[e]).collect();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (idx, &g) in gens.iter().enumerate() {
                let y = a.mul(x, g);
                if !reached[y] {
                    reached[y] = true;
                    parent[y] = Some((x, idx));
                    queue.push(y);
                }
            }
        }
        let _ = gi;
        gen_closure_sizes.push(reached.iter().filter(|&&r| r).count());
    }

    let subgroup_size = |g: &FiniteGroup, seed: &[usize]| g.generated_subgroup(seed).len();

    if gens.is_empty() {
        // both trivial — the orders already matched
        return Ok(IsoDecision::Isomorphic(GroupHom {
            source: a.clone(),
            target: b.clone(),
            images: vec![0],
        }));
    }

    // Depth-first over candidate images of the generators.
    let mut images_of_gens = vec![0usize; gens.len()];
    let mut stack = vec![0usize]; // next candidate to try at each depth
    'search: while !stack.is_empty() {
        let depth = stack.len() - 1;
        let mut c = stack[depth];
        loop {
            if c >= b.order() {
                stack.pop();
                if let Some(prev) = stack.last_mut() {
                    *prev += 1;
                }
                continue 'search;
            }
            if b.element_order(c) == a.element_order(gens[depth]) {
                images_of_gens[depth] = c;
                if subgroup_size(b, &images_of_gens[..=depth]) == gen_closure_sizes[depth] {
                    break;
                }
            }
            c += 1;
        }
        stack[depth] = c;
        if depth + 1 < gens.len() {
            stack.push(0);
            continue;
        }
        // Full candidate: realize the map through the parent words.
        let mut images = vec![0usize; a.order()];
        let mut done = vec![false; a.order()];
        done[0] = true;
        fn realize(
            e: usize,
            a: &FiniteGroup,
            b: &FiniteGroup,
            parent: &[Option<(usize, usize)>],
            gen_images: &[usize],
            images: &mut [usize],
            done: &mut [bool],
        ) -> usize {
            if done[e] {
                return images[e];
            }
            let (prev, gi) = parent[e].expect("every element is reached");
            let base = realize(prev, a, b, parent, gen_images, images, done);
            images[e] = b.mul(base, gen_images[gi]);
            done[e] = true;
            images[e]
        }
        for e in 0..a.order() {
            realize(e, a, b, &parent, &images_of_gens, &mut images, &mut done);
        }
        let candidate = GroupHom {
            source: a.clone(),
            target: b.clone(),
            images,
        };
        if candidate.is_bijective() && candidate.validate().is_ok() {
            return Ok(IsoDecision::Isomorphic(candidate));
        }
        *stack.last_mut().unwrap() += 1;
    }
    Ok(IsoDecision::NotIsomorphic {
        reason: "exhausted generator-image search".into(),
    })
}
