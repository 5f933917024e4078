//! Certificates tying local data of a presentation together: the fiber over
//! a vertex against the stabilizer, and the fiber against the preimage of a
//! star neighborhood.

use super::{stabilizer, Orbispace, OrbispaceError};
use crate::algebra::{
    groups_isomorphic, homology_basis, ChainComplex, GroupHom, HomologyBasis, IntMatrix,
    IsoDecision,
};
use crate::pi1::cover::COVER_ORDER_CAP;
use crate::pi1::{analyze_pi1, universal_cover, Pi1Result, DEFAULT_COSET_BOUND};
use crate::simplicial::{
    chain_complex, chain_map, is_acyclic_through, preimage, simplicial_fiber, star_neighborhood,
    Cell, FiberError, SSetMap, SimplicialSet, SubSSet,
};

/// Everything verified about one fiber: its fundamental group identified as
/// a finite group, a witnessed isomorphism with the stabilizer of the
/// vertex, and acyclicity of its universal cover through the stated degree.
#[derive(Clone, Debug)]
pub struct FiberCertificate {
    pub vertex: Cell,
    pub fiber: SubSSet,
    pub pi1: Pi1Result,
    pub stabilizer: crate::algebra::FiniteGroup,
    /// Isomorphism π₁(fiber) → stabilizer.
    pub witness: GroupHom,
    pub cover_acyclic_through: usize,
}

/// A star neighborhood that behaves like a quotient of a cone: the fiber
/// includes into the preimage of the star inducing isomorphisms on homology
/// through the stated degree and on fundamental groups.
#[derive(Clone, Debug)]
pub struct NeighborhoodCertificate {
    pub vertex: Cell,
    pub verified_through: usize,
    /// The closed star of the vertex in the base.
    pub neighborhood: SubSSet,
    /// Its full preimage in the total space.
    pub preimage: SubSSet,
    pub fiber: SubSSet,
    /// The inclusion `fiber → preimage` the certificate is about.
    pub inclusion: SSetMap,
    /// Isomorphism π₁(fiber) → π₁(preimage).
    pub pi1_witness: GroupHom,
}

fn check_vertex(m: &Orbispace, x: Cell) -> Result<(), OrbispaceError> {
    if x.dim != 0 || x.index >= m.base().cell_count(0) {
        return Err(OrbispaceError::NoSuchVertex(x.index));
    }
    Ok(())
}

fn fiber_of(m: &Orbispace, x: Cell) -> Result<SubSSet, OrbispaceError> {
    let fiber = simplicial_fiber(m.total(), m.projection(), x).map_err(|e| match e {
        FiberError::NoSuchVertex(v) => OrbispaceError::NoSuchVertex(v),
    })?;
    if fiber.sset.cell_count(0) == 0 {
        return Err(OrbispaceError::ProjectionNotSurjective(x.index));
    }
    Ok(fiber)
}

/// The homology presentation of one degree of a chain complex.
fn basis_at(cc: &ChainComplex, n: usize) -> HomologyBasis {
    let zero_out = IntMatrix::zero(0, cc.dims[0]);
    let d_out = if n == 0 { &zero_out } else { &cc.boundaries[n - 1] };
    let zero_in = IntMatrix::zero(cc.dims[n], 0);
    let d_in = if n < cc.boundaries.len() {
        &cc.boundaries[n]
    } else {
        &zero_in
    };
    homology_basis(d_out, d_in).expect("chain complexes compose to zero")
}

/// True when `f` induces certified isomorphisms on integral homology in
/// every degree up to `d`.
pub(crate) fn homology_iso_through(
    f: &SSetMap,
    src: &SimplicialSet,
    dst: &SimplicialSet,
    d: usize,
) -> bool {
    let fs = chain_map(f, src, dst);
    let sc = chain_complex(src);
    let dc = chain_complex(dst);
    (0..=d).all(|n| {
        crate::algebra::induced_iso_certified(&fs[n], &basis_at(&sc, n), &basis_at(&dc, n))
    })
}

/// The homomorphism `π₁(src) → π₁(dst)` induced by `f`, computed between
/// the identified finite groups by pushing each generator loop through `f`
/// and reading the resulting word off the target presentation.
pub fn induced_pi1_hom(
    f: &SSetMap,
    src_space: &SimplicialSet,
    src: &Pi1Result,
    dst: &Pi1Result,
) -> Result<GroupHom, OrbispaceError> {
    let (Some(src_id), Some(dst_id)) = (src.identified.as_ref(), dst.identified.as_ref()) else {
        return Err(OrbispaceError::UnresolvedPi1);
    };
    let n_raw = src.raw.presentation.n_generators;
    let mut raw_images = Vec::with_capacity(n_raw);
    for k in 0..n_raw {
        let mut word = Vec::new();
        for (s, forward) in src.raw.generator_loop(src_space, k) {
            let letters = dst.raw.edge_word(&f.apply(&s));
            if forward {
                word.extend(letters);
            } else {
                word.extend(letters.iter().rev().map(|l| -l));
            }
        }
        raw_images.push(
            dst.raw_word_element(&word)
                .expect("the target group is identified"),
        );
    }
    // each simplified generator is a raw generator that survived Tietze
    // elimination, recognizable by its single-letter rewrite
    let n_simp = src.simplified.presentation.n_generators;
    let mut simp_images = vec![None; n_simp];
    for (r, expr) in src.simplified.expressions.iter().enumerate() {
        if let [letter] = expr[..] {
            let k = letter.unsigned_abs() as usize - 1;
            if simp_images[k].is_none() {
                let e = raw_images[r];
                simp_images[k] = Some(if letter > 0 { e } else { dst_id.group.inv(e) });
            }
        }
    }
    let simp_images: Vec<usize> =
        simp_images
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                OrbispaceError::CheckFailed(
                    "a simplified generator has no single-letter rewrite".into(),
                )
            })?;
    let images = src_id
        .enumeration
        .element_words
        .iter()
        .map(|w| dst_id.group.eval_word(w, |k| simp_images[k]))
        .collect();
    Ok(GroupHom::new(
        src_id.group.clone(),
        dst_id.group.clone(),
        images,
    )?)
}

/// Certifies the fiber over a vertex: identifies its fundamental group,
/// witnesses the isomorphism with the stabilizer, and checks that the
/// fiber's universal cover is acyclic through degree `d`.
pub fn fiber_report(m: &Orbispace, x: Cell, d: usize) -> Result<FiberCertificate, OrbispaceError> {
    assert!(d <= m.valid_degree(), "degree {d} is beyond the certified range");
    check_vertex(m, x)?;
    let fiber = fiber_of(m, x)?;
    let pi1 = analyze_pi1(
        &fiber.sset,
        Cell::new(0, 0),
        DEFAULT_COSET_BOUND,
        COVER_ORDER_CAP,
    )?;
    let Some(id) = pi1.identified.as_ref() else {
        return Err(OrbispaceError::UnresolvedPi1);
    };
    let stab = stabilizer(m, x)?;
    let witness = match groups_isomorphic(&id.group, &stab, COVER_ORDER_CAP)? {
        IsoDecision::Isomorphic(h) => h,
        IsoDecision::NotIsomorphic { reason } => {
            return Err(OrbispaceError::CheckFailed(format!(
                "π₁ of the fiber is not the stabilizer: {reason}"
            )))
        }
    };
    let cover = universal_cover(&fiber.sset, Cell::new(0, 0), DEFAULT_COSET_BOUND)?;
    if !is_acyclic_through(&cover.cover, d) {
        return Err(OrbispaceError::CheckFailed(format!(
            "the universal cover of the fiber is not acyclic through degree {d}"
        )));
    }
    Ok(FiberCertificate {
        vertex: x,
        fiber,
        pi1,
        stabilizer: stab,
        witness,
        cover_acyclic_through: d,
    })
}

/// Certifies that the closed star of a vertex is a good neighborhood: the
/// fiber includes into the preimage of the star inducing isomorphisms on
/// homology through degree `d` and on fundamental groups.
pub fn good_neighborhood_check(
    m: &Orbispace,
    x: Cell,
    d: usize,
) -> Result<NeighborhoodCertificate, OrbispaceError> {
    assert!(d <= m.valid_degree(), "degree {d} is beyond the certified range");
    check_vertex(m, x)?;
    let neighborhood = star_neighborhood(m.base(), x);
    let pre = preimage(m.projection(), m.total(), &neighborhood);
    let fiber = fiber_of(m, x)?;
    let inclusion = fiber
        .restrict_map(&SSetMap::identity(m.total()), &pre)
        .expect("the fiber lies over the star");

    let fiber_pi1 = analyze_pi1(
        &fiber.sset,
        Cell::new(0, 0),
        DEFAULT_COSET_BOUND,
        COVER_ORDER_CAP,
    )?;
    let base_cell = pre
        .sub_cell(fiber.ambient_cell(Cell::new(0, 0)))
        .expect("the fiber lies over the star");
    let pre_pi1 = analyze_pi1(&pre.sset, base_cell, DEFAULT_COSET_BOUND, COVER_ORDER_CAP)?;
    let pi1_witness = induced_pi1_hom(&inclusion, &fiber.sset, &fiber_pi1, &pre_pi1)?;
    if !pi1_witness.is_bijective() {
        return Err(OrbispaceError::CheckFailed(
            "the fiber and the preimage of the star have different fundamental groups".into(),
        ));
    }
    if !homology_iso_through(&inclusion, &fiber.sset, &pre.sset, d) {
        return Err(OrbispaceError::CheckFailed(format!(
            "the fiber inclusion is not a homology isomorphism through degree {d}"
        )));
    }
    Ok(NeighborhoodCertificate {
        vertex: x,
        verified_through: d,
        neighborhood,
        preimage: pre,
        fiber,
        inclusion,
        pi1_witness,
    })
}
