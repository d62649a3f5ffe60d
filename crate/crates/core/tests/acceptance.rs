//! Acceptance suite: every check is an exact equality (rational or
//! integer), with zero tolerance. Each test prints one pass line; run with
//! `cargo test -p posetric --test acceptance -- --nocapture` to see them.

mod common;

use posetric::complex::random::{derive_seed, random_map, random_ranked_poset, SeedSurface};
use posetric::fixtures::{
    fig_almost_polyhedral_non_cw, fig_counterexample, fig_cw_not_almost_polyhedral,
    fig_infinite_window, klein_dual,
};
use posetric::{
    cube, curvature, icosahedron, invariants, tetrahedron, torus_grid, PolyMap, Poset,
    PosetDensity, Rational,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn map_fixtures() -> Vec<(&'static str, PolyMap, i64)> {
    vec![
        ("tetrahedron", tetrahedron(), 2),
        ("cube", cube(), 2),
        ("icosahedron", icosahedron(), 2),
        ("torus:3x3", torus_grid(3, 3).unwrap(), 0),
        ("torus:5x4", torus_grid(5, 4).unwrap(), 0),
        ("klein-dual", klein_dual(), -4),
    ]
}

/// Deterministic stream of random rank-2 posets with varied sizes and
/// densities.
fn random_posets(master: u64, count: usize) -> impl Iterator<Item = Poset> {
    (0..count).map(move |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(master, i as u64));
        let n0 = rng.random_range(3..=8);
        let n1 = rng.random_range(3..=10);
        let n2 = rng.random_range(1..=10);
        let density = PosetDensity {
            vertex_cover: rng.random_range(0.05..0.95),
            edge_cover: rng.random_range(0.05..0.95),
        };
        random_ranked_poset(derive_seed(master, (i + count) as u64), n0, n1, n2, density)
            .expect("generator parameters are in range")
    })
}

fn random_maps(master: u64, count: usize) -> impl Iterator<Item = PolyMap> {
    (0..count).map(move |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(master, i as u64));
        let surface = if rng.random_bool(0.5) {
            SeedSurface::Sphere
        } else {
            SeedSurface::Torus
        };
        let divisions = rng.random_range(0..12);
        let flips = rng.random_range(0..40);
        random_map(
            derive_seed(master, (i + count) as u64),
            surface,
            divisions,
            flips,
        )
        .expect("generator parameters are in range")
    })
}

#[test]
fn criterion_01_gauss_bonnet_r_version() {
    for (name, map, chi) in map_fixtures() {
        let (p, rf) = map.face_poset();
        let v = invariants::verify_gauss_bonnet(&p, &rf).unwrap();
        assert!(v.holds, "{name}: lhs {} != rhs {}", v.lhs, v.rhs);
        assert_eq!(v.rhs, Rational::from(chi), "{name}: unexpected chi");
    }
    let p = fig_counterexample();
    let rf = p.rank().unwrap();
    let v = invariants::verify_gauss_bonnet(&p, &rf).unwrap();
    assert!(v.holds);
    assert_eq!(v.lhs, Rational::from(-1));

    let mut checked = 0;
    for p in random_posets(101, 1000) {
        let rf = p.rank().unwrap();
        let v = invariants::verify_gauss_bonnet(&p, &rf).unwrap();
        assert!(v.holds, "random poset violates Gauss-Bonnet: {v:?}");
        checked += 1;
    }
    assert_eq!(checked, 1000);
    println!("criterion 01 gauss-bonnet (R version): PASS on 7 fixtures + {checked} random posets");
}

#[test]
fn criterion_02_lemma_r1_equals_ric() {
    let mut edges_checked = 0usize;
    for (name, map, _) in map_fixtures() {
        let (p, rf) = map.face_poset();
        for e in p.elements().filter(|id| id.contains('|')) {
            let r1 = curvature::r1(&p, &rf, e).unwrap();
            let ric = curvature::ric(&p, &rf, e).unwrap();
            assert_eq!(r1, Rational::from(ric), "{name} edge {e}");
            edges_checked += 1;
        }
    }
    let mut maps_checked = 0;
    for map in random_maps(202, 200) {
        let (p, rf) = map.face_poset();
        for e in p.elements().filter(|id| id.contains('|')) {
            let r1 = curvature::r1(&p, &rf, e).unwrap();
            let ric = curvature::ric(&p, &rf, e).unwrap();
            assert_eq!(r1, Rational::from(ric));
            edges_checked += 1;
        }
        maps_checked += 1;
    }
    assert_eq!(maps_checked, 200);

    // off the almost-polyhedral class the two curvatures differ
    let p = fig_counterexample();
    let rf = p.rank().unwrap();
    assert_eq!(curvature::r1(&p, &rf, "e1").unwrap(), Rational::new(5, 2));
    assert_eq!(curvature::ric(&p, &rf, "e1").unwrap(), 2);
    println!(
        "criterion 02 lemma R1 = Ric: PASS on {edges_checked} edges \
         (fixtures + 200 random maps); counterexample splits 5/2 vs 2"
    );
}

#[test]
fn criterion_03_positive_average_theorem() {
    let total = 10_000;
    let mut filtered = 0usize;
    let mut counterexamples = 0usize;
    for p in random_posets(303, total) {
        let rf = p.rank().unwrap();
        let coverage = curvature::is_sufficiently_covered(&p, &rf).unwrap();
        let avg = curvature::averages(&p, &rf).unwrap();
        if coverage.covered && avg.r1.is_positive() {
            filtered += 1;
            if invariants::ranked_euler_char(&rf) <= 0 {
                counterexamples += 1;
            }
        }
    }
    assert_eq!(counterexamples, 0, "positive-average theorem violated");
    assert!(
        filtered >= 200,
        "filter kept only {filtered} of {total} posets; sample too thin to be meaningful"
    );

    let p = fig_counterexample();
    let rf = p.rank().unwrap();
    let report = invariants::positive_average_check(&p, &rf).unwrap();
    assert!(!report.sufficiently_covered);
    assert_eq!(report.r1_average, Rational::new(5, 2));
    assert_eq!(report.chi_gr, -1);
    println!(
        "criterion 03 positive average: PASS — {filtered}/{total} covered instances, \
         0 counterexamples; fixture has average 5/2 with chi_gr = -1 while uncovered"
    );
}

#[test]
fn criterion_04_negativity_criterion() {
    for (name, map, chi) in map_fixtures() {
        let report = invariants::negativity_criterion(&map).unwrap();
        assert!(report.iff_holds, "{name}: iff verdict failed: {report:?}");
        if name == "klein-dual" {
            assert!(report.all_negative, "{name} should be everywhere negative");
            assert_eq!(report.min_face_size, 7);
        } else {
            assert!(
                !report.all_negative,
                "{name} should not be everywhere negative"
            );
        }
        if chi >= 0 {
            assert!(
                report.min_face_size <= 6,
                "{name}: chi >= 0 forces a face with at most 6 edges"
            );
        }
    }
    println!("criterion 04 negativity criterion: PASS on all map fixtures");
}

#[test]
fn criterion_05_stone_curvature() {
    for (name, map, chi) in map_fixtures() {
        let v = invariants::verify_stone_gauss_bonnet(&map).unwrap();
        assert!(v.holds, "{name}: stone gauss-bonnet fails: {v:?}");
        assert_eq!(v.rhs, Rational::from(2 * chi), "{name}");
        let (p, rf) = map.face_poset();
        for vtx in map.vertex_names() {
            assert_eq!(
                curvature::stone_star_surface(&p, &rf, vtx).unwrap(),
                curvature::stone_star_general(&p, &rf, vtx).unwrap(),
                "{name}: stone forms disagree at {vtx}"
            );
        }
    }
    let w = fig_infinite_window(5).unwrap();
    let rf = w.poset.rank().unwrap();
    let v = &w.designated["v"];
    assert_eq!(
        curvature::stone_star_general(&w.poset, &rf, v).unwrap(),
        Rational::from(3)
    );
    println!(
        "criterion 05 stone curvature: PASS — sums 4, 4, 0, 0, -8 match 2*chi; \
         forms agree on surfaces; window vertex value 3"
    );
}

#[test]
fn criterion_06_window_designated_values() {
    for k in [3, 5, 8] {
        let w = fig_infinite_window(k).unwrap();
        let rf = w.poset.rank().unwrap();
        let (v, e, x) = (&w.designated["v"], &w.designated["e"], &w.designated["x"]);
        assert!(w.interior.contains(v) && w.interior.contains(e) && w.interior.contains(x));
        assert_eq!(
            curvature::r0(&w.poset, &rf, v).unwrap(),
            Rational::new(3, 2)
        );
        assert_eq!(curvature::r1(&w.poset, &rf, e).unwrap(), Rational::from(4));
        assert_eq!(curvature::r2(&w.poset, &rf, x).unwrap(), Rational::from(9));
        assert_eq!(curvature::ric(&w.poset, &rf, e).unwrap(), 2);
    }
    println!("criterion 06 window values: PASS — R0 = 3/2, R1 = 4, R2 = 9, Ric = 2 at k = 3, 5, 8");
}

#[test]
fn criterion_07_counting_identities() {
    let mut posets: Vec<Poset> = vec![
        fig_counterexample(),
        fig_almost_polyhedral_non_cw(),
        fig_cw_not_almost_polyhedral(),
        fig_infinite_window(4).unwrap().poset,
    ];
    for (_, map, _) in map_fixtures() {
        posets.push(map.face_poset().0);
    }
    let mut checked = 0;
    for p in posets.iter().cloned().chain(random_posets(707, 1000)) {
        let rf = p.rank().unwrap();
        for i in 0..3 {
            let ids = p.counting_identities(&rf, i);
            assert!(ids.all_hold(), "identities fail at rank {i}: {ids:?}");
        }
        checked += 1;
    }
    println!("criterion 07 counting identities: PASS on {checked} posets (fixtures + random)");
}

#[test]
fn criterion_08_euler_characteristic_agreement() {
    for (name, map, _) in map_fixtures() {
        let (p, rf) = map.face_poset();
        assert_eq!(
            invariants::order_complex_euler(&p),
            invariants::ranked_euler_char(&rf),
            "{name}"
        );
    }
    // regular CW face poset, and the almost-polyhedral non-CW fixture
    for p in [
        fig_cw_not_almost_polyhedral(),
        fig_almost_polyhedral_non_cw(),
    ] {
        let rf = p.rank().unwrap();
        assert_eq!(
            invariants::order_complex_euler(&p),
            invariants::ranked_euler_char(&rf)
        );
    }
    // the counterexample splits the two characteristics
    let p = fig_counterexample();
    let rf = p.rank().unwrap();
    let oc = invariants::order_complex(&p);
    assert_eq!(oc.f_vector(), vec![5, 7, 3]);
    assert_eq!(invariants::order_complex_euler(&p), 1);
    assert_eq!(common::naive_order_complex_euler(&p), 1);
    assert_eq!(invariants::ranked_euler_char(&rf), -1);
    println!(
        "criterion 08 euler agreement: PASS — chi(order complex) = chi_gr on face posets; \
         1 vs -1 on the counterexample"
    );
}

/// Rank-2 poset with `n_edges` edges of exactly two private vertices each
/// (so the lower average is exactly 2) and `total` face covers distributed
/// over ceil(total/n_edges) faces.
fn sweep_poset(n_edges: usize, total: usize) -> Poset {
    let mut elements: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    for e in 0..n_edges {
        for s in 0..2 {
            elements.push(format!("v{e}_{s}"));
            covers.push((format!("v{e}_{s}"), format!("e{e}")));
        }
        elements.push(format!("e{e}"));
    }
    let n_faces = total.div_ceil(n_edges);
    for f in 0..n_faces {
        elements.push(format!("f{f}"));
    }
    for k in 0..total {
        covers.push((format!("e{}", k % n_edges), format!("f{}", k / n_edges)));
    }
    Poset::build(elements, covers).unwrap()
}

#[test]
fn criterion_09_sufficiently_covered_remark() {
    // with lower average exactly 2, coverage is equivalent to upper average >= 2
    let n_edges = 6;
    for total in 1..=3 * n_edges {
        let p = sweep_poset(n_edges, total);
        let rf = p.rank().unwrap();
        let avg = curvature::averages(&p, &rf).unwrap();
        assert_eq!(avg.b1, Rational::from(2));
        let covered = curvature::is_sufficiently_covered(&p, &rf).unwrap().covered;
        let a1_at_least_2 = avg.a1 >= Rational::from(2);
        assert_eq!(
            covered, a1_at_least_2,
            "coverage mismatch at upper average {}",
            avg.a1
        );
    }

    // lower average 20/9 is covered regardless of the upper average
    for total in 1..=9 {
        let mut elements: Vec<String> = Vec::new();
        let mut covers: Vec<(String, String)> = Vec::new();
        let mut vid = 0;
        for e in 0..9 {
            let size = if e < 7 { 2 } else { 3 };
            for _ in 0..size {
                elements.push(format!("v{vid}"));
                covers.push((format!("v{vid}"), format!("e{e}")));
                vid += 1;
            }
            elements.push(format!("e{e}"));
        }
        elements.push("f0".into());
        for e in 0..total {
            covers.push((format!("e{e}"), "f0".into()));
        }
        let p = Poset::build(elements, covers).unwrap();
        let rf = p.rank().unwrap();
        let avg = curvature::averages(&p, &rf).unwrap();
        assert_eq!(avg.b1, Rational::new(20, 9));
        assert!(
            curvature::is_sufficiently_covered(&p, &rf).unwrap().covered,
            "lower average 20/9 must be covered at upper average {}",
            avg.a1
        );
    }

    let p = fig_counterexample();
    let rf = p.rank().unwrap();
    let check = curvature::is_sufficiently_covered(&p, &rf).unwrap();
    assert_eq!(check.lhs, Rational::new(-9, 2));
    assert!(!check.covered);
    println!(
        "criterion 09 coverage remark: PASS — with lower average 2 the predicate matches \
         upper average >= 2 across the sweep; 20/9 always passes"
    );
}

#[test]
fn criterion_10_classifier_regressions() {
    let p = fig_almost_polyhedral_non_cw();
    let rf = p.rank().unwrap();
    let res = invariants::is_almost_polyhedral(&p, &rf).unwrap();
    assert!(res.verdict, "fig-ap-noncw must be almost polyhedral");

    let p = fig_cw_not_almost_polyhedral();
    let rf = p.rank().unwrap();
    let res = invariants::is_almost_polyhedral(&p, &rf).unwrap();
    assert!(!res.verdict);
    assert!(
        res.witnesses.iter().any(|w| w.condition == "2"),
        "fig-cw-nonap must name the shared-vertex condition, got {:?}",
        res.witnesses
    );

    let mut checked = 0;
    for map in random_maps(1010, 200) {
        let (p, rf) = map.face_poset();
        assert!(
            invariants::is_almost_polyhedral(&p, &rf).unwrap().verdict,
            "random map face poset must be almost polyhedral"
        );
        checked += 1;
    }
    println!(
        "criterion 10 classifiers: PASS — fig-ap-noncw true, fig-cw-nonap false (condition 2), \
         {checked} random map posets true"
    );
}
