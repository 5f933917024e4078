//! Homology and cohomology of finite chain complexes of free abelian groups.

use super::abelian::FGAbelianGroup;
use super::matrix::IntMatrix;
use super::snf::{rank_and_divisors, smith_normal_form};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("boundary shapes are inconsistent at degree {degree}: {rows} rows vs {cols} columns expected")]
    ShapeMismatch {
        degree: usize,
        rows: usize,
        cols: usize,
    },
    #[error("not a chain complex: boundary composition is nonzero at degree {degree}")]
    NotAChainComplex { degree: usize },
    #[error("modulus {0} is not a prime")]
    InvalidModulus(u64),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coefficients {
    Integers,
    ModP(u64),
}

impl std::fmt::Display for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "integers"),
            Coefficients::ModP(p) => write!(f, "mod {p}"),
        }
    }
}

/// `boundaries[n]` is the matrix of `∂_{n+1}: C_{n+1} -> C_n`, so a complex
/// truncated at dimension N carries N matrices and `dims` has length N + 1.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, ChainError> {
        assert_eq!(dims.len(), boundaries.len() + 1, "dims/boundaries mismatch");
        for (n, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[n] || b.cols() != dims[n + 1] {
                return Err(ChainError::ShapeMismatch {
                    degree: n + 1,
                    rows: b.rows(),
                    cols: b.cols(),
                });
            }
        }
        for n in 0..boundaries.len().saturating_sub(1) {
            if !composition_is_zero(&boundaries[n], &boundaries[n + 1]) {
                return Err(ChainError::NotAChainComplex { degree: n + 1 });
            }
        }
        Ok(ChainComplex { dims, boundaries })
    }

    /// Top dimension carried by the complex.
    pub fn top_dimension(&self) -> usize {
        self.dims.len() - 1
    }

    fn boundary_rank(&self, n: usize, coefficients: &Coefficients) -> Result<usize, ChainError> {
        if n == 0 || n > self.boundaries.len() {
            return Ok(0);
        }
        let m = &self.boundaries[n - 1];
        Ok(match coefficients {
            Coefficients::Integers => rank_and_divisors(m).0,
            Coefficients::ModP(p) => rank_mod_p(m, *p)?,
        })
    }

    /// `H_n` for `0 <= n < top_dimension()`. Degrees at the truncation edge
    /// are not reported: their boundaries from above are unknown.
    pub fn homology(&self, coefficients: &Coefficients) -> Result<Vec<FGAbelianGroup>, ChainError> {
        if let Coefficients::ModP(p) = coefficients {
            check_prime(*p)?;
        }
        let mut out = Vec::new();
        for n in 0..self.top_dimension() {
            let r_out = self.boundary_rank(n, coefficients)?;
            let r_in = self.boundary_rank(n + 1, coefficients)?;
            let free = self.dims[n] - r_out - r_in;
            let group = match coefficients {
                Coefficients::Integers => {
                    // torsion of H_n is carried by the elementary divisors of
                    // the boundary arriving from degree n + 1
                    let (_, divisors) = rank_and_divisors(&self.boundaries[n]);
                    FGAbelianGroup::from_invariant_factors(free, &divisors)
                }
                Coefficients::ModP(p) => FGAbelianGroup::new(0, &vec![BigInt::from(*p); free]),
            };
            out.push(group);
        }
        Ok(out)
    }

    /// Cochain complex: dualizes by transposing every boundary.
    pub fn dual(&self) -> ChainComplex {
        ChainComplex {
            dims: self.dims.clone(),
            boundaries: self.boundaries.iter().map(|b| b.transpose()).collect(),
        }
    }

    /// `H^n` for `0 <= n < top_dimension()`, computed from the transposed
    /// boundaries: `H^n = ker(∂_{n+1}^T) / im(∂_n^T)`.
    pub fn cohomology(
        &self,
        coefficients: &Coefficients,
    ) -> Result<Vec<FGAbelianGroup>, ChainError> {
        if let Coefficients::ModP(p) = coefficients {
            check_prime(*p)?;
        }
        let mut out = Vec::new();
        for n in 0..self.top_dimension() {
            let r_below = self.boundary_rank(n, coefficients)?; // rank ∂_n = rank ∂_n^T
            let r_above = self.boundary_rank(n + 1, coefficients)?;
            let free = self.dims[n] - r_below - r_above;
            let group = match coefficients {
                Coefficients::Integers => {
                    // torsion of H^n comes from the divisors of ∂_n
                    let divisors = if n == 0 {
                        Vec::new()
                    } else {
                        rank_and_divisors(&self.boundaries[n - 1]).1
                    };
                    FGAbelianGroup::from_invariant_factors(free, &divisors)
                }
                Coefficients::ModP(p) => FGAbelianGroup::new(0, &vec![BigInt::from(*p); free]),
            };
            out.push(group);
        }
        Ok(out)
    }
}

/// Checks `a · b = 0` walking only the nonzero entries of `b`.
pub fn composition_is_zero(a: &IntMatrix, b: &IntMatrix) -> bool {
    for j in 0..b.cols() {
        let support = b.column_support(j);
        if support.is_empty() {
            continue;
        }
        for i in 0..a.rows() {
            let mut acc = BigInt::zero();
            for (k, v) in &support {
                let e = a.get(i, *k);
                if !e.is_zero() {
                    acc += e * v;
                }
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

fn check_prime(p: u64) -> Result<(), ChainError> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(ChainError::InvalidModulus(p));
    }
    Ok(())
}

/// Rank of an integer matrix reduced mod a prime, by Gaussian elimination.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize, ChainError> {
    check_prime(p)?;
    let pb = BigInt::from(p);
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let r = m.get(i, j).mod_floor(&pb);
                    u64::try_from(r).expect("residue fits")
                })
                .collect()
        })
        .collect();
    let inv_mod = |x: u64| -> u64 {
        // Fermat inverse; p is prime and x != 0
        let mut base = x % p;
        let mut exp = p - 2;
        let mut acc: u64 = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let inv = inv_mod(a[rank][col]);
        for j in col..cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for i in 0..rows {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in col..cols {
                    a[i][j] = (a[i][j] + (p - f) * a[rank][j]) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

/// One homology group with explicit cycle generators and coordinates, enough
/// to certify that a chain map induces an isomorphism.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub group: FGAbelianGroup,
    /// One cycle per presentation coordinate: torsion generators first (in
    /// divisor order), then free generators.
    pub generators: Vec<Vec<BigInt>>,
    /// Per coordinate: the torsion order, or zero for a free coordinate.
    pub coord_divisors: Vec<BigInt>,
    kernel_basis: IntMatrix,
    v_inv_out: IntMatrix,
    rank_out: usize,
    u_rel: IntMatrix,
    d_rel: Vec<BigInt>,
    kept: Vec<usize>,
}

/// Presents `ker(d_out) / im(d_in)` with generators. `d_out` may be a `0 x n`
/// matrix for degree zero.
pub fn homology_basis(d_out: &IntMatrix, d_in: &IntMatrix) -> Result<HomologyBasis, ChainError> {
    let n_chains = d_out.cols();
    assert_eq!(d_in.rows(), n_chains, "degree mismatch");
    if !composition_is_zero(d_out, d_in) {
        return Err(ChainError::NotAChainComplex { degree: 0 });
    }
    let out_snf = smith_normal_form(d_out);
    let rank_out = out_snf.rank;
    let kernel_dim = n_chains - rank_out;
    // kernel basis: trailing columns of V
    let mut kernel_basis = IntMatrix::zero(n_chains, kernel_dim);
    for i in 0..n_chains {
        for j in 0..kernel_dim {
            kernel_basis.set(i, j, out_snf.v.get(i, rank_out + j).clone());
        }
    }
    // boundaries from above, in kernel coordinates: last rows of V^-1 * d_in
    let lifted = out_snf.v_inv.mul(d_in);
    let mut rel = IntMatrix::zero(kernel_dim, d_in.cols());
    for i in 0..kernel_dim {
        for j in 0..d_in.cols() {
            rel.set(i, j, lifted.get(rank_out + i, j).clone());
        }
    }
    let rel_snf = smith_normal_form(&rel);
    let mut d_rel = vec![BigInt::zero(); kernel_dim];
    for (i, d) in rel_snf.divisors.iter().enumerate() {
        d_rel[i] = d.clone();
    }
    let kept: Vec<usize> = (0..kernel_dim)
        .filter(|&i| !d_rel[i].is_one())
        .collect();
    let mut generators = Vec::with_capacity(kept.len());
    let mut coord_divisors = Vec::with_capacity(kept.len());
    for &i in &kept {
        let coeffs = rel_snf.u_inv.column(i);
        generators.push(kernel_basis.mul_vec(&coeffs));
        coord_divisors.push(d_rel[i].clone());
    }
    let torsion: Vec<BigInt> = coord_divisors
        .iter()
        .filter(|d| !d.is_zero())
        .cloned()
        .collect();
    let rank = coord_divisors.iter().filter(|d| d.is_zero()).count();
    Ok(HomologyBasis {
        group: FGAbelianGroup::from_invariant_factors(rank, &torsion),
        generators,
        coord_divisors,
        kernel_basis,
        v_inv_out: out_snf.v_inv,
        rank_out,
        u_rel: rel_snf.u,
        d_rel,
        kept,
    })
}

impl HomologyBasis {
    /// Coordinates of a cycle's class, aligned with `generators`. Torsion
    /// coordinates are reduced into `[0, d)`. `None` if the chain is not a
    /// cycle.
    pub fn class_coords(&self, chain: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.v_inv_out.mul_vec(chain);
        if y[..self.rank_out].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let x = &y[self.rank_out..];
        let w = self.u_rel.mul_vec(x);
        Some(
            self.kept
                .iter()
                .map(|&i| {
                    if self.d_rel[i].is_zero() {
                        w[i].clone()
                    } else {
                        w[i].mod_floor(&self.d_rel[i])
                    }
                })
                .collect(),
        )
    }

    /// Whether a cycle represents the zero class.
    pub fn is_boundary(&self, chain: &[BigInt]) -> Option<bool> {
        self.class_coords(chain)
            .map(|c| c.iter().all(|v| v.is_zero()))
    }

    pub fn coordinate_count(&self) -> usize {
        self.generators.len()
    }

    /// Returns a cycle in the chain group realizing the given coordinates.
    pub fn realize(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.coordinate_count());
        let mut acc = vec![BigInt::zero(); self.kernel_basis.rows()];
        for (g, c) in self.generators.iter().zip(coords) {
            if !c.is_zero() {
                for (a, v) in acc.iter_mut().zip(g) {
                    *a += v * c;
                }
            }
        }
        acc
    }
}

/// Matrix of the map induced on homology by a degree-n chain map
/// (`f: C_n(src) -> C_n(dst)`), in presentation coordinates.
/// `None` if some generator fails to map to a cycle.
pub fn induced_on_homology(
    f: &IntMatrix,
    src: &HomologyBasis,
    dst: &HomologyBasis,
) -> Option<IntMatrix> {
    let mut m = IntMatrix::zero(dst.coordinate_count(), src.coordinate_count());
    for (j, gen) in src.generators.iter().enumerate() {
        let image = f.mul_vec(gen);
        let coords = dst.class_coords(&image)?;
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Some(m)
}

/// Certifies that the induced map is an isomorphism: the groups agree in
/// normal form and the induced map is surjective (stacking the image against
/// the target relations leaves no cokernel). Surjective endomorphisms of
/// finitely generated abelian groups are isomorphisms, so this suffices.
pub fn induced_iso_certified(
    f: &IntMatrix,
    src: &HomologyBasis,
    dst: &HomologyBasis,
) -> bool {
    if src.group != dst.group {
        return false;
    }
    let Some(m) = induced_on_homology(f, src, dst) else {
        return false;
    };
    let t = dst.coordinate_count();
    if t == 0 {
        return true;
    }
    let mut relations = IntMatrix::zero(t, t);
    for (i, d) in dst.coord_divisors.iter().enumerate() {
        relations.set(i, i, d.clone());
    }
    let stacked = m.hstack(&relations);
    let (rank, divisors) = rank_and_divisors(&stacked);
    rank == t && divisors.iter().all(|d| d.is_one())
}

/// Verifies `∂ ∘ f = f ∘ ∂` degreewise for a chain map given as one matrix
/// per degree.
pub fn is_chain_map(fs: &[IntMatrix], src: &ChainComplex, dst: &ChainComplex) -> bool {
    if fs.len() != src.dims.len() || src.dims.len() != dst.dims.len() {
        return false;
    }
    for n in 0..src.boundaries.len() {
        let lhs = dst.boundaries[n].mul(&fs[n + 1]);
        let rhs = fs[n].mul(&src.boundaries[n]);
        if lhs != rhs {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_complex() -> ChainComplex {
        // hexagonal circle: 6 vertices, 6 edges in a cycle
        let mut d1 = IntMatrix::zero(6, 6);
        for e in 0..6 {
            d1.set((e + 1) % 6, e, BigInt::from(1));
            d1.set(e, e, BigInt::from(-1));
        }
        ChainComplex::new(vec![6, 6], vec![d1]).unwrap()
    }

    /// One cell per dimension; boundaries alternate 0, 2, 0, 2, …
    fn bz2_complex(top: usize) -> ChainComplex {
        let dims = vec![1; top + 1];
        let boundaries = (1..=top)
            .map(|n| {
                let v = if n % 2 == 0 { 2 } else { 0 };
                IntMatrix::from_rows(&[vec![v]])
            })
            .collect();
        ChainComplex::new(dims, boundaries).unwrap()
    }

    #[test]
    fn circle_homology() {
        let h = circle_complex().homology(&Coefficients::Integers).unwrap();
        assert_eq!(h, vec![FGAbelianGroup::free(1)]);
        let hc = circle_complex().cohomology(&Coefficients::Integers).unwrap();
        assert_eq!(hc, vec![FGAbelianGroup::free(1)]);
    }

    #[test]
    fn classifying_space_of_z2_homology() {
        let h = bz2_complex(4).homology(&Coefficients::Integers).unwrap();
        assert_eq!(h[0], FGAbelianGroup::free(1));
        assert_eq!(h[1], FGAbelianGroup::cyclic(2));
        assert_eq!(h[2], FGAbelianGroup::zero());
        assert_eq!(h[3], FGAbelianGroup::cyclic(2));
    }

    #[test]
    fn classifying_space_of_z2_integral_cohomology() {
        let h = bz2_complex(5).cohomology(&Coefficients::Integers).unwrap();
        assert_eq!(h[0], FGAbelianGroup::free(1));
        assert_eq!(h[1], FGAbelianGroup::zero());
        assert_eq!(h[2], FGAbelianGroup::cyclic(2));
        assert_eq!(h[3], FGAbelianGroup::zero());
        assert_eq!(h[4], FGAbelianGroup::cyclic(2));
    }

    #[test]
    fn mod_two_collapses_everything() {
        let h = bz2_complex(5).cohomology(&Coefficients::ModP(2)).unwrap();
        for g in &h {
            assert_eq!(*g, FGAbelianGroup::cyclic(2));
        }
    }

    #[test]
    fn universal_coefficients_consistency() {
        // dim_p H_n(F_p) = rank H_n + p-torsion of H_n + p-torsion of H_{n-1}
        let c = bz2_complex(5);
        let hz = c.homology(&Coefficients::Integers).unwrap();
        for p in [2u64, 3, 5] {
            let hp = c.homology(&Coefficients::ModP(p)).unwrap();
            for n in 0..hz.len() {
                let p_tors = |g: &FGAbelianGroup| g.mod_p_rank(p) - g.rank();
                let expected = hz[n].rank()
                    + p_tors(&hz[n])
                    + if n > 0 { p_tors(&hz[n - 1]) } else { 0 };
                assert_eq!(hp[n].mod_p_rank(p), expected, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn broken_complex_rejected() {
        let d1 = IntMatrix::from_rows(&[vec![1]]);
        let d2 = IntMatrix::from_rows(&[vec![1]]);
        match ChainComplex::new(vec![1, 1, 1], vec![d1, d2]) {
            Err(ChainError::NotAChainComplex { degree: 1 }) => {}
            other => panic!("expected chain failure, got {other:?}"),
        }
    }

    #[test]
    fn non_prime_modulus_rejected() {
        let c = circle_complex();
        assert!(matches!(
            c.homology(&Coefficients::ModP(6)),
            Err(ChainError::InvalidModulus(6))
        ));
    }

    #[test]
    fn basis_coords_on_circle() {
        let c = circle_complex();
        let basis = homology_basis(&IntMatrix::zero(0, 6), &c.boundaries[0]).unwrap();
        // H_0 of a connected space: one free generator, every vertex in its class
        assert_eq!(basis.group, FGAbelianGroup::free(1));
        let vertex0: Vec<BigInt> = (0..6)
            .map(|i| BigInt::from(usize::from(i == 0)))
            .collect();
        let vertex3: Vec<BigInt> = (0..6)
            .map(|i| BigInt::from(usize::from(i == 3)))
            .collect();
        let c0 = basis.class_coords(&vertex0).unwrap();
        let c3 = basis.class_coords(&vertex3).unwrap();
        assert_eq!(c0, c3);
        assert!(c0.iter().any(|v| !v.is_zero()));
    }

    #[test]
    fn torsion_coords_reduce_mod_divisor() {
        // Z/2 in degree 1 of the B Z/2 complex
        let c = bz2_complex(2);
        let basis = homology_basis(&c.boundaries[0], &c.boundaries[1]).unwrap();
        assert_eq!(basis.group, FGAbelianGroup::cyclic(2));
        let gen = &basis.generators[0];
        let doubled: Vec<BigInt> = gen.iter().map(|v| v * 2).collect();
        assert_eq!(basis.is_boundary(&doubled), Some(true));
        assert_eq!(basis.is_boundary(gen), Some(false));
    }

    #[test]
    fn induced_identity_is_iso() {
        let c = circle_complex();
        let basis = homology_basis(&IntMatrix::zero(0, 6), &c.boundaries[0]).unwrap();
        assert!(induced_iso_certified(&IntMatrix::identity(6), &basis, &basis));
        // the zero map is not an isomorphism on H_0
        assert!(!induced_iso_certified(
            &IntMatrix::zero(6, 6),
            &basis,
            &basis
        ));
    }
}
