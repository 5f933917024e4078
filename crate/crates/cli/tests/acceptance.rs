//! Acceptance gate: one test per shipped capability, each ending in a
//! single pass line. Expected values are frozen; stated time budgets are
//! asserted.

use orbispace_core::algebra::{
    groups_isomorphic, ChainComplex, Coefficients, FGAbelianGroup, FiniteGroup, GroupHom,
    GroupPresentation, IntMatrix,
};
use orbispace_core::borel::{bar_eg, equivariant_cohomology, induced_borel_map};
use orbispace_core::orbispace::{
    classify_vertical_maps, compare_orbispaces, extract_chart, fiber_report, les_solve,
    localize_map, ComparisonSide, GroupTag, LesEntry, SymbolicOrbispace,
};
use orbispace_core::pi1::cover::COVER_ORDER_CAP;
use orbispace_core::pi1::{analyze_pi1, coset_enumerate, Pi1Order, DEFAULT_COSET_BOUND};
use orbispace_core::simplicial::{
    fib_pi0, homology_of, is_acyclic_through, product, quotient_by_action, Cell, SSetMap,
    SimplicialAction, SimplicialSet,
};
use orbispace_core::{make_global_quotient, Orbispace, OrderedComplex};
use std::path::Path;
use std::time::{Duration, Instant};

fn z2() -> FiniteGroup {
    FiniteGroup::cyclic(2)
}

fn trivial_z2_on_sphere(truncation: usize) -> Orbispace {
    let sphere = OrderedComplex::simplex_boundary(3);
    let id: Vec<usize> = (0..4).collect();
    make_global_quotient(&sphere, &z2(), &[id.clone(), id], truncation).unwrap()
}

fn reflected_interval(truncation: usize) -> Orbispace {
    let path = OrderedComplex::interval_path(4);
    let flip: Vec<usize> = (0..5).rev().collect();
    make_global_quotient(&path, &z2(), &[(0..5).collect(), flip], truncation).unwrap()
}

fn run_shipped_scenario(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name);
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_orbispace"))
        .args(["run", path.to_str().unwrap()])
        .output()
        .expect("the binary runs");
    assert_eq!(out.status.code(), Some(0), "scenario {name} failed");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn criterion_01_flagship_distinction() {
    let start = Instant::now();

    let s2 = run_shipped_scenario("s2_mod_z2.scn");
    assert!(s2.contains("π₁ of the Borel space: order 2"));
    assert!(s2.contains("H_1 of the Borel space: ℤ/2"));

    let s3 = run_shipped_scenario("s3_mod_s1.scn");
    assert!(s3.contains("sequence: 0 → 0 → 0"));

    let solved = les_solve(&[
        LesEntry::Zero,
        LesEntry::unknown("upstairs"),
        LesEntry::Zero,
    ])
    .unwrap();
    assert_eq!(solved.entries[1], LesEntry::Zero);

    let m = trivial_z2_on_sphere(3);
    let pi1 = analyze_pi1(m.total(), Cell::new(0, 0), DEFAULT_COSET_BOUND, COVER_ORDER_CAP)
        .unwrap();
    assert_eq!(pi1.order, Pi1Order::Finite(2));
    assert_eq!(pi1.abelianization, FGAbelianGroup::cyclic(2));
    assert_eq!(homology_of(m.total(), &Coefficients::Integers)[1], FGAbelianGroup::cyclic(2));

    let record = SymbolicOrbispace {
        name: "s3_mod_s1".into(),
        underlying: OrderedComplex::simplex_boundary(3).to_simplicial_set(3),
        stabilizer: GroupTag::Cyclic(2),
        total_pi1: solved.entries[1].clone(),
        total_homology: None,
    };
    let report = compare_orbispaces(
        &ComparisonSide::Concrete(m),
        &ComparisonSide::Symbolic(record),
        1,
    )
    .unwrap();
    assert!(report.distinguished);
    assert!(report.summary().contains("π₁"));

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("criterion 01 flagship distinction: pass ({elapsed:?})");
}

/// Elements of `g` up to conjugacy — homomorphisms from ℤ land on single
/// elements, so this counts vertical classes over a circle independently.
fn conjugacy_class_count(g: &FiniteGroup) -> usize {
    let mut seen = vec![false; g.order()];
    let mut classes = 0;
    for a in 0..g.order() {
        if seen[a] {
            continue;
        }
        classes += 1;
        for h in 0..g.order() {
            seen[g.mul(g.mul(h, a), g.inv(h))] = true;
        }
    }
    classes
}

#[test]
fn criterion_02_section_classification() {
    let start = Instant::now();
    let circle = SimplicialSet::minimal_circle(2);

    let over_z2 = classify_vertical_maps(&circle, &z2()).unwrap();
    assert_eq!(over_z2.count(), 2);
    assert_eq!(conjugacy_class_count(&z2()), 2);

    let s3 = FiniteGroup::symmetric(3).unwrap();
    let over_s3 = classify_vertical_maps(&circle, &s3).unwrap();
    assert_eq!(over_s3.count(), 3);
    assert_eq!(conjugacy_class_count(&s3), 3);

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("criterion 02 section classification: pass ({elapsed:?})");
}

#[test]
fn criterion_03_equivariant_cohomology_of_a_point() {
    let start = Instant::now();
    let pt = OrderedComplex::point().to_simplicial_set(5);
    let action = SimplicialAction::trivial(z2(), &pt);

    let mod2 = equivariant_cohomology(&pt, &z2(), &action, 5, &Coefficients::ModP(2)).unwrap();
    assert_eq!(mod2.valid_degree, 4);
    for k in 0..=4 {
        assert_eq!(*mod2.degree(k), FGAbelianGroup::cyclic(2), "degree {k}");
    }

    let integral =
        equivariant_cohomology(&pt, &z2(), &action, 5, &Coefficients::Integers).unwrap();
    assert_eq!(*integral.degree(0), FGAbelianGroup::free(1));
    assert_eq!(*integral.degree(1), FGAbelianGroup::zero());
    assert_eq!(*integral.degree(2), FGAbelianGroup::cyclic(2));
    assert_eq!(*integral.degree(3), FGAbelianGroup::zero());
    assert_eq!(*integral.degree(4), FGAbelianGroup::cyclic(2));

    // oracle: one cell per dimension, boundaries alternating 0 and ·2
    let boundaries: Vec<IntMatrix> = (0..5)
        .map(|n| IntMatrix::from_rows(&[vec![if n % 2 == 1 { 2 } else { 0 }]]))
        .collect();
    let cc = ChainComplex::new(vec![1; 6], boundaries).unwrap();
    assert_eq!(cc.cohomology(&Coefficients::ModP(2)).unwrap(), mod2.values);
    assert_eq!(cc.cohomology(&Coefficients::Integers).unwrap(), integral.values);

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("criterion 03 equivariant cohomology of a point: pass ({elapsed:?})");
}

#[test]
fn criterion_04_free_action_collapse() {
    let start = Instant::now();
    let oct = OrderedComplex::octahedron();
    let antipodal = vec![(0..6).collect::<Vec<_>>(), vec![1, 0, 3, 2, 5, 4]];
    let m = make_global_quotient(&oct, &z2(), &antipodal, 3).unwrap();

    let expected = [
        FGAbelianGroup::free(1),
        FGAbelianGroup::cyclic(2),
        FGAbelianGroup::zero(),
    ];
    // oracle: the quotient complex directly
    let quotient_h = homology_of(m.base(), &Coefficients::Integers);
    let borel_h = homology_of(m.total(), &Coefficients::Integers);
    for k in 0..=2 {
        assert_eq!(quotient_h[k], expected[k], "quotient degree {k}");
        assert_eq!(borel_h[k], expected[k], "Borel degree {k}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!("criterion 04 free action collapse: pass ({elapsed:?})");
}

#[test]
fn criterion_05_eg_acyclicity() {
    let start = Instant::now();
    let groups = [
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::symmetric(3).unwrap(),
    ];
    for group in &groups {
        for n in 1..=4 {
            let eg = bar_eg(group, n);
            let counts = eg.sset.cell_counts();
            for (dim, &count) in counts.iter().enumerate() {
                let expected = group.order() * (group.order() - 1).pow(dim as u32);
                assert_eq!(count, expected, "{} cells in dim {dim}", group.label());
            }
            assert!(
                is_acyclic_through(&eg.sset, n - 1),
                "{} at truncation {n}",
                group.label()
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("criterion 05 EG acyclicity: pass ({elapsed:?})");
}

#[test]
fn criterion_06_fiberwise_components_recover_the_base() {
    let start = Instant::now();
    let spaces = [
        OrderedComplex::point().to_simplicial_set(3),
        OrderedComplex::interval_path(2).to_simplicial_set(3),
        OrderedComplex::simplex_boundary(2).nerve(3).sset,
    ];
    for group in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)] {
        for x in &spaces {
            let eg = bar_eg(&group, 3);
            let prod = product(x, &eg.sset);
            let q = prod.projection_left();
            let fib = fib_pi0(&prod.sset, x, &q);
            assert_eq!(fib.sset.cell_counts(), x.cell_counts());
            assert!(fib.to_target.is_cell_iso(&fib.sset, x));
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 06 fib-π₀ identity: pass ({elapsed:?})");
}

#[test]
fn criterion_07_stabilizers_match_fiber_groups() {
    let start = Instant::now();
    let models = [reflected_interval(3), trivial_z2_on_sphere(3)];
    let mut interval_orders = Vec::new();
    for (which, m) in models.iter().enumerate() {
        for v in 0..m.base().cell_count(0) {
            let cert = fiber_report(m, Cell::new(0, v), 2).unwrap();
            assert!(cert.witness.is_bijective(), "vertex {v}");
            assert_eq!(cert.witness.target.order(), cert.stabilizer.order());
            assert_eq!(cert.cover_acyclic_through, 2, "vertex {v}");
            assert!(groups_isomorphic(
                &cert.witness.source,
                &cert.stabilizer,
                COVER_ORDER_CAP
            )
            .unwrap()
            .holds());
            if which == 0 {
                interval_orders.push(cert.stabilizer.order());
            } else {
                assert_eq!(cert.stabilizer.order(), 2);
            }
        }
    }
    assert_eq!(interval_orders, vec![1, 1, 2, 1, 1]);
    let elapsed = start.elapsed();
    println!("criterion 07 stabilizer consistency: pass ({elapsed:?})");
}

#[test]
fn criterion_08_chart_extraction_at_a_fixed_point() {
    let start = Instant::now();
    let m = reflected_interval(3);
    let report = extract_chart(&m, Cell::new(0, 2), 2).unwrap();

    assert_eq!(report.stabilizer.order(), 2);
    // the nontrivial element genuinely moves the chart
    let moved = (0..report.chart.cell_count(1))
        .any(|e| report.chart_action.apply_cell(1, Cell::new(1, e)) != Cell::new(1, e));
    assert!(moved);

    let quot = quotient_by_action(&report.chart, &report.chart_action);
    assert!(report
        .quotient_iso
        .is_cell_iso(&quot.sset, &report.neighborhood.sset));
    assert!(is_acyclic_through(&report.chart, 2));
    assert_eq!(report.acyclic_through, 2);

    let elapsed = start.elapsed();
    println!("criterion 08 chart extraction: pass ({elapsed:?})");
}

#[test]
fn criterion_09_functoriality_of_induced_maps() {
    let start = Instant::now();

    let pair = OrderedComplex::from_facets(2, &[vec![0], vec![1]]).unwrap();
    let swapped = make_global_quotient(&pair, &z2(), &[vec![0, 1], vec![1, 0]], 2).unwrap();
    let point = make_global_quotient(&OrderedComplex::point(), &z2(), &[vec![0], vec![0]], 2)
        .unwrap();
    let src = &swapped.global().unwrap().borel;
    let dst = &point.global().unwrap().borel;

    let collapse = SSetMap::constant(&src.space, Cell::new(0, 0));
    let identity = SSetMap::identity(&dst.space);
    for sigma2 in [GroupHom::identity(&z2()), GroupHom::trivial(&z2(), &z2())] {
        let sigma1 = GroupHom::identity(&z2());
        let first = induced_borel_map(&collapse, &sigma1, src, dst).unwrap();
        let second = induced_borel_map(&identity, &sigma2, dst, dst).unwrap();
        let chained = induced_borel_map(
            &collapse.then(&identity),
            &sigma1.compose(&sigma2).unwrap(),
            src,
            dst,
        )
        .unwrap();
        assert_eq!(chained.on_borel, first.on_borel.then(&second.on_borel));
        assert_eq!(
            chained.on_underlying,
            first.on_underlying.then(&second.on_underlying)
        );
    }

    // localized isotropy maps on the reflected interval
    let m = reflected_interval(3);
    let space = &m.global().unwrap().borel.space;
    let center = Cell::new(0, 2);

    let at_fixed = localize_map(
        &SSetMap::identity(space),
        &GroupHom::identity(&z2()),
        &m,
        &m,
        center,
    )
    .unwrap();
    assert_eq!(at_fixed.sigma_x.images, vec![0, 1]);

    let to_free = localize_map(
        &SSetMap::constant(space, Cell::new(0, 0)),
        &GroupHom::trivial(&z2(), &z2()),
        &m,
        &m,
        center,
    )
    .unwrap();
    assert_eq!(to_free.sigma_x.source.order(), 2);
    assert_eq!(to_free.sigma_x.target.order(), 1);
    assert!(to_free.sigma_x.images.iter().all(|&i| i == 0));

    let elapsed = start.elapsed();
    println!("criterion 09 functoriality: pass ({elapsed:?})");
}

#[test]
fn criterion_10_pi1_oracle_equivalence() {
    let start = Instant::now();

    let torus = product(
        &SimplicialSet::minimal_circle(2),
        &SimplicialSet::minimal_circle(2),
    )
    .sset;
    let wedge = OrderedComplex::from_facets(
        5,
        &[
            vec![0, 1],
            vec![1, 2],
            vec![0, 2],
            vec![2, 3],
            vec![3, 4],
            vec![2, 4],
        ],
    )
    .unwrap();

    let spaces: Vec<(&str, SimplicialSet)> = vec![
        ("point", SimplicialSet::point(2)),
        ("interval", OrderedComplex::interval_path(3).to_simplicial_set(2)),
        ("minimal circle", SimplicialSet::minimal_circle(2)),
        ("pentagon", OrderedComplex::polygon(5).to_simplicial_set(2)),
        ("triangle boundary", OrderedComplex::simplex_boundary(2).to_simplicial_set(2)),
        ("tetrahedron boundary", OrderedComplex::simplex_boundary(3).to_simplicial_set(2)),
        ("octahedron", OrderedComplex::octahedron().to_simplicial_set(2)),
        ("torus", torus.clone()),
        ("solid simplex", OrderedComplex::full_simplex(3).to_simplicial_set(2)),
        ("hexagon nerve", OrderedComplex::polygon(6).nerve(2).sset),
        ("two circles joined", wedge.to_simplicial_set(2)),
        (
            "subdivided triangle boundary",
            OrderedComplex::simplex_boundary(2)
                .barycentric_subdivision()
                .to_simplicial_set(2),
        ),
    ];
    assert!(spaces.len() >= 10);
    for (name, x) in &spaces {
        let pi1 = analyze_pi1(x, Cell::new(0, 0), DEFAULT_COSET_BOUND, COVER_ORDER_CAP).unwrap();
        let h1 = &homology_of(x, &Coefficients::Integers)[1];
        assert_eq!(&pi1.abelianization, h1, "{name}");
        if *name == "torus" {
            assert_eq!(pi1.abelianization, FGAbelianGroup::free(2));
        }
    }

    let triangle_group = GroupPresentation::new(
        2,
        vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2, 1, 2]],
    );
    let enumeration = coset_enumerate(&triangle_group, DEFAULT_COSET_BOUND).unwrap();
    assert_eq!(enumeration.order, 12);

    let elapsed = start.elapsed();
    println!("criterion 10 π₁ oracle equivalence: pass ({elapsed:?})");
}
