//! Smith normal form over the integers with unimodular transform tracking.

use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Result of a full Smith reduction: `u * m * v = d` with `d` diagonal,
/// diagonal entries nonnegative and each dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries, in divisibility order.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
}

struct Reduction {
    d: IntMatrix,
    // (u, u_inv, v, v_inv), absent when only divisors are wanted
    t: Option<(IntMatrix, IntMatrix, IntMatrix, IntMatrix)>,
}

impl Reduction {
    fn new(m: &IntMatrix, with_transforms: bool) -> Self {
        let t = with_transforms.then(|| {
            (
                IntMatrix::identity(m.rows()),
                IntMatrix::identity(m.rows()),
                IntMatrix::identity(m.cols()),
                IntMatrix::identity(m.cols()),
            )
        });
        Reduction { d: m.clone(), t }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some((u, u_inv, _, _)) = &mut self.t {
            u.swap_rows(a, b);
            u_inv.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some((_, _, v, v_inv)) = &mut self.t {
            v.swap_cols(a, b);
            v_inv.swap_rows(a, b);
        }
    }

    /// row[dst] += c * row[src], mirrored into the left transforms.
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_row(dst, src, c);
        if let Some((u, u_inv, _, _)) = &mut self.t {
            u.add_row(dst, src, c);
            let neg = -c;
            u_inv.add_col(src, dst, &neg);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_col(dst, src, c);
        if let Some((_, _, v, v_inv)) = &mut self.t {
            v.add_col(dst, src, c);
            let neg = -c;
            v_inv.add_row(src, dst, &neg);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        if let Some((u, u_inv, _, _)) = &mut self.t {
            u.negate_row(i);
            u_inv.negate_col(i);
        }
    }

    /// Smallest nonzero entry (by absolute value) of the trailing submatrix,
    /// ties broken by row-major position. Returns its coordinates.
    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in k..self.d.rows() {
            for j in k..self.d.cols() {
                let v = self.d.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if a.is_one() {
                    return Some((i, j));
                }
                match &best {
                    Some((cur, _, _)) if *cur <= a => {}
                    _ => best = Some((a, i, j)),
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) {
        let n = self.d.rows().min(self.d.cols());
        for k in 0..n {
            'step: loop {
                let Some((pi, pj)) = self.pivot(k) else {
                    return;
                };
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);
                if self.d.get(k, k).is_negative() {
                    self.negate_row(k);
                }
                let pivot = self.d.get(k, k).clone();

                let mut dirty = false;
                for i in k + 1..self.d.rows() {
                    let a = self.d.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let q = a.div_floor(&pivot);
                    self.add_row(i, k, &-q);
                    if !self.d.get(i, k).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue 'step;
                }
                for j in k + 1..self.d.cols() {
                    let a = self.d.get(k, j);
                    if a.is_zero() {
                        continue;
                    }
                    let q = a.div_floor(&pivot);
                    self.add_col(j, k, &-q);
                    if !self.d.get(k, j).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue 'step;
                }

                // Pivot must divide everything that remains; if not, pull the
                // offending row up and reduce again.
                for i in k + 1..self.d.rows() {
                    for j in k + 1..self.d.cols() {
                        if !self.d.get(i, j).mod_floor(&pivot).is_zero() {
                            self.add_row(k, i, &BigInt::one());
                            continue 'step;
                        }
                    }
                }
                break 'step;
            }
        }
    }

    fn divisors(&self) -> (usize, Vec<BigInt>) {
        let n = self.d.rows().min(self.d.cols());
        let divisors: Vec<BigInt> = (0..n)
            .map(|k| self.d.get(k, k).clone())
            .take_while(|v| !v.is_zero())
            .collect();
        (divisors.len(), divisors)
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut r = Reduction::new(m, true);
    r.run();
    let (rank, divisors) = r.divisors();
    let (u, u_inv, v, v_inv) = r.t.unwrap();
    SmithDecomposition {
        d: r.d,
        u,
        u_inv,
        v,
        v_inv,
        divisors,
        rank,
    }
}

/// Rank and diagonal divisors only, skipping transform bookkeeping.
///
/// Boundary matrices are large but very sparse and mostly reduce with ±1
/// pivots, so a sparse elimination peels those off first; the dense reduction
/// only ever sees the small residue. Each ±1 pivot is unimodular and
/// contributes divisor 1, leaving the Smith data unchanged.
pub fn rank_and_divisors(m: &IntMatrix) -> (usize, Vec<BigInt>) {
    let (unit_rank, residual) = sparse_unit_elimination(m);
    let mut r = Reduction::new(&residual, false);
    r.run();
    let (res_rank, res_divisors) = r.divisors();
    let mut divisors = vec![BigInt::one(); unit_rank];
    divisors.extend(res_divisors);
    (unit_rank + res_rank, divisors)
}

/// Eliminates entries of absolute value 1 with Markowitz-style pivoting
/// (least fill-in first); returns the count of pivots taken and the dense
/// residual matrix of everything left over.
fn sparse_unit_elimination(m: &IntMatrix) -> (usize, IntMatrix) {
    use std::collections::{BTreeMap, BTreeSet};

    let mut rows: Vec<BTreeMap<usize, BigInt>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .filter_map(|j| {
                    let v = m.get(i, j);
                    (!v.is_zero()).then(|| (j, v.clone()))
                })
                .collect()
        })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (i, row) in rows.iter().enumerate() {
        for &j in row.keys() {
            col_rows[j].insert(i);
        }
    }
    let mut row_active = vec![true; m.rows()];
    let mut col_active = vec![true; m.cols()];
    let mut unit_rank = 0;

    loop {
        let mut best: Option<(usize, usize, usize)> = None; // (cost, row, col)
        'scan: for (i, row) in rows.iter().enumerate() {
            if !row_active[i] {
                continue;
            }
            for (&j, v) in row {
                if !v.abs().is_one() {
                    continue;
                }
                let cost = (row.len() - 1) * (col_rows[j].len() - 1);
                if best.as_ref().is_none_or(|&(c, _, _)| cost < c) {
                    best = Some((cost, i, j));
                    if cost == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        let pivot_sign = rows[pr][&pc].clone(); // ±1
        let pivot_row: Vec<(usize, BigInt)> = rows[pr]
            .iter()
            .filter(|&(&j, _)| j != pc)
            .map(|(&j, v)| (j, v.clone()))
            .collect();
        let victims: Vec<usize> = col_rows[pc].iter().copied().filter(|&i| i != pr).collect();
        for i in victims {
            let factor = rows[i].remove(&pc).expect("indexed entry") * &pivot_sign;
            col_rows[pc].remove(&i);
            for (j, w) in &pivot_row {
                let delta = &factor * w;
                match rows[i].entry(*j) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                            col_rows[*j].remove(&i);
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                        col_rows[*j].insert(i);
                    }
                }
            }
        }
        // retire the pivot row and column
        for (j, _) in &pivot_row {
            col_rows[*j].remove(&pr);
        }
        rows[pr].clear();
        row_active[pr] = false;
        col_active[pc] = false;
        unit_rank += 1;
    }

    let live_rows: Vec<usize> = (0..m.rows())
        .filter(|&i| row_active[i] && !rows[i].is_empty())
        .collect();
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&j| col_active[j]).collect();
    let col_pos: std::collections::HashMap<usize, usize> = live_cols
        .iter()
        .enumerate()
        .map(|(pos, &j)| (j, pos))
        .collect();
    let mut residual = IntMatrix::zero(live_rows.len(), live_cols.len());
    for (ri, &i) in live_rows.iter().enumerate() {
        for (&j, v) in &rows[i] {
            residual.set(ri, col_pos[&j], v.clone());
        }
    }
    (unit_rank, residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn check_decomposition(m: &IntMatrix) {
        let s = smith_normal_form(m);
        // u * m * v = d
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "u*m*v != d for {m:?}");
        // transforms are unimodular: integer inverses exist
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(s.u_inv.mul(&s.u), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        assert_eq!(s.v_inv.mul(&s.v), IntMatrix::identity(m.cols()));
        // d is diagonal with the divisibility chain
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero(), "off-diagonal entry in {:?}", s.d);
                }
            }
        }
        for w in s.divisors.windows(2) {
            assert!(
                w[1].mod_floor(&w[0]).is_zero(),
                "divisor chain broken: {:?}",
                s.divisors
            );
        }
        assert!(s.divisors.iter().all(|d| d.is_positive()));
        let (rank2, div2) = rank_and_divisors(m);
        assert_eq!((s.rank, &s.divisors), (rank2, &div2));
    }

    #[test]
    fn two_by_two_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors, vec![BigInt::from(2), BigInt::from(4)]);
        check_decomposition(&m);
    }

    #[test]
    fn zero_and_identity() {
        let z = IntMatrix::zero(3, 2);
        let (rank, div) = rank_and_divisors(&z);
        assert_eq!((rank, div.len()), (0, 0));
        check_decomposition(&z);

        let id = IntMatrix::identity(4);
        let (rank, div) = rank_and_divisors(&id);
        assert_eq!(rank, 4);
        assert!(div.iter().all(|d| d.is_one()));
    }

    #[test]
    fn divisibility_needs_fixup() {
        // diag(2, 3) has divisors (1, 6), not (2, 3)
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors, vec![BigInt::from(1), BigInt::from(6)]);
        check_decomposition(&m);
    }

    #[test]
    fn determinant_magnitude_preserved() {
        // |det| = product of divisors for square full-rank matrices
        let m = IntMatrix::from_rows(&[vec![3, 1, 2], vec![0, 2, 5], vec![1, 1, 1]]);
        // det = 3(2-5) - 1(0-5) + 2(0-2) = -9 + 5 - 4 = -8
        let s = smith_normal_form(&m);
        let prod: BigInt = s.divisors.iter().product();
        assert_eq!(prod, BigInt::from(8));
        check_decomposition(&m);
    }

    #[test]
    fn sparse_path_keeps_torsion() {
        // unit pivots everywhere except an embedded block with divisors 2, 4
        let m = IntMatrix::from_rows(&[
            vec![1, 0, 3, 0, 0],
            vec![0, 0, 0, 2, 4],
            vec![0, -1, 2, 0, 0],
            vec![0, 0, 0, 6, 8],
        ]);
        let (rank, div) = rank_and_divisors(&m);
        assert_eq!(rank, 4);
        assert_eq!(
            div,
            vec![
                BigInt::from(1),
                BigInt::from(1),
                BigInt::from(2),
                BigInt::from(4)
            ]
        );
        check_decomposition(&m);
    }

    #[test]
    fn random_matrices_decompose() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..60 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let entries: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            check_decomposition(&IntMatrix::from_rows(&entries));
        }
    }
}
