//! Acceptance suite: one test per criterion, each printing a PASS line once
//! its assertions hold. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

mod common;

use cohomolab::cechgeom::{self, fixtures, holonomy::*, subdivide, GerbeData, LineData};
use cohomolab::clifford::{
    self, covering_matrix, dtau_square, pin, reps, spin2_tables, LiftCase, PinSign, Signature,
    SpinTableKind,
};
use cohomolab::complexes::Coefficients;
use cohomolab::exactalg::{hom_homology, FPAbelianGroup};
use cohomolab::simplicial::{borel_moore, surfaces, SimplicialComplex, SimplicialPair};
use cohomolab::spectral::{
    ahss, limit_vs_total, page, turn_page, AhssSystem, AxiomaticSystem, CoefficientTheory,
    TotalFiltration,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn z() -> FPAbelianGroup {
    FPAbelianGroup::free(1)
}

fn z2() -> FPAbelianGroup {
    FPAbelianGroup::cyclic(2)
}

#[test]
fn criterion_1_homology_catalog() {
    // Spheres: reduced homology is Z in the top degree, 0 elsewhere.
    for n in 1..=3usize {
        let s = SimplicialComplex::sphere(n);
        for k in 0..=n as i64 {
            let h = s.reduced_homology(k, Coefficients::Integers).unwrap();
            if k == n as i64 {
                assert_eq!(h, z(), "S^{n} degree {k}");
            } else {
                assert!(h.is_trivial(), "S^{n} degree {k}");
            }
        }
    }
    let rp2 = surfaces::surface_model(surfaces::SurfaceKind::ProjectivePlane).unwrap();
    assert_eq!(surfaces::first_homology(&rp2, Coefficients::Integers), z2());
    let klein = surfaces::surface_model(surfaces::SurfaceKind::KleinBottle).unwrap();
    assert_eq!(
        surfaces::first_homology(&klein, Coefficients::Integers),
        FPAbelianGroup::new(1, vec![BigInt::from(2)])
    );
    for g in 1..=2usize {
        let m = surfaces::surface_model(surfaces::SurfaceKind::CrossCapOne(g)).unwrap();
        assert_eq!(
            surfaces::first_homology(&m, Coefficients::Integers),
            FPAbelianGroup::new(2 * g, vec![BigInt::from(2)]),
            "N_({g},1)"
        );
    }
    let torus = surfaces::surface_model(surfaces::SurfaceKind::OrientableGenus(1)).unwrap();
    assert_eq!(
        surfaces::first_homology(&torus, Coefficients::Integers),
        FPAbelianGroup::free(2)
    );
    println!("criterion 1 (homology catalog): PASS");
}

#[test]
fn criterion_2_borel_moore_tables() {
    for n in 1..=3usize {
        let sphere = SimplicialComplex::sphere(n);
        // (S^n, {infinity}): Z at k = n only.
        let point = SimplicialComplex::from_simplices(sphere.vertex_count(), &[vec![0]]).unwrap();
        let pair = SimplicialPair::new(sphere.clone(), point).unwrap();
        for k in 0..=n as i64 {
            let h = borel_moore(&pair, k, Coefficients::Integers).unwrap();
            if k == n as i64 {
                assert_eq!(h, z(), "one-point pair S^{n} at {k}");
            } else {
                assert!(h.is_trivial(), "one-point pair S^{n} at {k}");
            }
        }
        // (S^n, {N, S}) for n >= 2: Z at k = 1 and k = n, zero elsewhere.
        if n >= 2 {
            let two_points =
                SimplicialComplex::from_simplices(sphere.vertex_count(), &[vec![0], vec![1]])
                    .unwrap();
            let pair = SimplicialPair::new(sphere.clone(), two_points).unwrap();
            for k in 0..=n as i64 {
                let h = borel_moore(&pair, k, Coefficients::Integers).unwrap();
                if k == 1 || k == n as i64 {
                    assert_eq!(h, z(), "two-point pair S^{n} at {k}");
                } else {
                    assert!(h.is_trivial(), "two-point pair S^{n} at {k}");
                }
            }
        }
    }
    // Modified product model: (S^m x I, {N} x I) gives Z at k = m only.
    for m in 1..=2usize {
        let sphere = SimplicialComplex::sphere(m);
        let shift = sphere.vertex_count();
        let prism = sphere.prism_product();
        let locus =
            SimplicialComplex::from_simplices(prism.vertex_count(), &[vec![0, shift]]).unwrap();
        let pair = SimplicialPair::new(prism, locus).unwrap();
        for k in 0..=(m as i64 + 1) {
            let h = borel_moore(&pair, k, Coefficients::Integers).unwrap();
            if k == m as i64 {
                assert_eq!(h, z(), "product model m={m} at {k}");
            } else {
                assert!(h.is_trivial(), "product model m={m} at {k}");
            }
        }
    }
    // Empty infinity locus: Borel-Moore equals ordinary homology.
    let torus = surfaces::surface_model(surfaces::SurfaceKind::OrientableGenus(1)).unwrap();
    let empty = SimplicialComplex::from_simplices(torus.complex.vertex_count(), &[vec![0]]);
    drop(empty);
    let pair = SimplicialPair::new(
        torus.complex.clone(),
        SimplicialComplex::from_simplices(torus.complex.vertex_count(), &[]).unwrap(),
    )
    .unwrap();
    for k in 0..=2 {
        assert_eq!(
            borel_moore(&pair, k, Coefficients::Integers).unwrap(),
            torus.complex.homology(k, Coefficients::Integers).unwrap()
        );
    }
    println!("criterion 2 (Borel-Moore tables): PASS");
}

#[test]
fn criterion_3_spectral_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    // 50 random filtered complexes.
    for trial in 0..50 {
        let f = common::random_filtered_complex(&mut rng, 10, 4);
        let l = f.length();
        let report = limit_vs_total(&f).expect("limit comparison runs");
        assert!(report.pass, "limit mismatch on filtered trial {trial}");
        let mut current = page(&f, 0).unwrap();
        for r in 0..=l {
            // d_r^2 = 0 (bidegree is structural in the page keying).
            for (p, q) in current.slots() {
                let d_out = current.differential(p, q);
                let d_next =
                    current.differential(p + r as i64, q - r as i64 + 1);
                assert!(
                    d_next.compose(&d_out).unwrap().is_zero(),
                    "d_{r}^2 != 0 at ({p},{q}) on trial {trial}"
                );
            }
            // Dual-path verification: turn_page recomputes and compares.
            current = turn_page(&current, &f)
                .unwrap_or_else(|e| panic!("turn_page failed on trial {trial}: {e}"));
        }
    }
    // 50 random first-quadrant double complexes, both filtrations.
    for trial in 0..50 {
        let dc = common::random_double_complex(&mut rng, 4, 4);
        for which in [TotalFiltration::First, TotalFiltration::Second] {
            let total = dc.total_complex(which).unwrap();
            let report = limit_vs_total(&total).expect("limit comparison runs");
            assert!(report.pass, "double-complex trial {trial} {which:?}");
        }
    }
    println!("criterion 3 (spectral-sequence oracle): PASS");
}

#[test]
fn criterion_4_axiomatic_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(4096);
    for trial in 0..50 {
        let f = common::random_filtered_complex(&mut rng, 8, 4);
        let sys = AxiomaticSystem::from_filtered(&f).unwrap();
        sys.verify_axioms()
            .unwrap_or_else(|e| panic!("axioms fail on trial {trial}: {e}"));
        for r in 1..=(f.length() + 1) {
            let direct = page(&f, r).unwrap();
            let ax = sys.pages(r).unwrap();
            for (p, q) in direct.slots() {
                assert_eq!(
                    direct.entry(p, q),
                    ax.entry(p, q),
                    "trial {trial}, r={r}, slot ({p},{q})"
                );
            }
            // The differentials have matching homology on both engines.
            for (p, q) in direct.slots() {
                let d_in = direct.differential(p - r as i64, q + r as i64 - 1);
                let d_out = direct.differential(p, q);
                let direct_h = hom_homology(&d_in, &d_out).unwrap();
                let a_in = ax.differential(p - r as i64, q + r as i64 - 1);
                let a_out = ax.differential(p, q);
                let ax_h = hom_homology(&a_in, &a_out).unwrap();
                assert_eq!(direct_h, ax_h, "homology mismatch r={r} ({p},{q})");
            }
        }
    }
    println!("criterion 4 (axiomatic engine cross-check): PASS");
}

#[test]
fn criterion_5_ahss() {
    // Ordinary coefficients on catalog complexes: E_2^{p,0} = H^p(X, Z).
    let catalog: Vec<(&str, SimplicialComplex)> = vec![
        ("point", SimplicialComplex::point()),
        ("S1", SimplicialComplex::sphere(1)),
        ("S2", SimplicialComplex::sphere(2)),
        (
            "T2",
            surfaces::surface_model(surfaces::SurfaceKind::OrientableGenus(1))
                .unwrap()
                .complex,
        ),
        (
            "RP2",
            surfaces::surface_model(surfaces::SurfaceKind::ProjectivePlane)
                .unwrap()
                .complex,
        ),
        (
            "K2",
            surfaces::surface_model(surfaces::SurfaceKind::KleinBottle)
                .unwrap()
                .complex,
        ),
    ];
    for (name, x) in &catalog {
        let AhssSystem::Ordinary(sys) = ahss(x, &CoefficientTheory::Ordinary(z())).unwrap()
        else {
            panic!()
        };
        let e2 = sys.pages(2).unwrap();
        for p in 0..=x.dim() {
            let expected = x.chain_complex().cohomology(p, Coefficients::Integers).unwrap();
            assert_eq!(e2.entry(p, 0), expected, "{name} E_2^({p},0)");
        }
        // Rows q != 0 vanish for an ordinary theory, so E_2 = E_infinity and
        // the gradeds reassemble H^*(X, Z).
        for (slot, _) in e2.nonzero() {
            assert_eq!(slot.1, 0, "{name} has a nonzero entry off the q = 0 row");
            assert!(e2.differential(slot.0, slot.1).is_zero());
        }
    }
    // Tabular K-theory on S^1 and S^2.
    let ktable = [z(), FPAbelianGroup::trivial()];
    let AhssSystem::Tabular(t1) = ahss(
        &SimplicialComplex::sphere(1),
        &CoefficientTheory::Tabular(ktable.clone()),
    )
    .unwrap() else {
        panic!()
    };
    assert!(t1.collapse_is_up_to_extensions());
    let k0: usize = t1.assembled_graded(0).unwrap().iter().map(|g| g.free_rank()).sum();
    let k1: usize = t1.assembled_graded(1).unwrap().iter().map(|g| g.free_rank()).sum();
    assert_eq!((k0, k1), (1, 1), "K(S^1) ranks");
    let AhssSystem::Tabular(t2) = ahss(
        &SimplicialComplex::sphere(2),
        &CoefficientTheory::Tabular(ktable),
    )
    .unwrap() else {
        panic!()
    };
    assert!(t2.collapse_is_up_to_extensions());
    let k0: usize = t2.assembled_graded(0).unwrap().iter().map(|g| g.free_rank()).sum();
    let k1: usize = t2.assembled_graded(1).unwrap().iter().map(|g| g.free_rank()).sum();
    assert_eq!((k0, k1), (2, 0), "K(S^2) ranks");
    println!("criterion 5 (AHSS): PASS");
}

#[test]
fn criterion_6_holonomy_properties() {
    use cechgeom::{
        chern_class, chern_pairing, curvature, curvature_pairing, gerbe_gauge_transform,
        line_gauge_transform, mod_one_distance, validate_gerbe_cocycle, validate_line_cocycle,
    };
    use fixtures::*;
    use subdivide::subdivide_cover;

    let mut rng = ChaCha8Rng::seed_from_u64(606);

    // Flat circle datum: holonomy c exactly.
    let circle = circle_three_chart_cover();
    let data = flat_circle_datum(0.25);
    let (edges, charts) = circle_loop_steps();
    let gamma = ChartedLoop::new(&circle, edges.clone(), charts).unwrap();
    let h = holonomy_loop(&circle, &data, &gamma).unwrap();
    assert!(mod_one_distance(h, 0.25) < TOL);

    // 15 randomized loop instances: chart reassignment + subdivision.
    let sub = subdivide_cover(&circle).unwrap();
    for _ in 0..15 {
        let g = random_cochain(&circle, 0, 0, &mut rng);
        let datum = line_gauge_transform(&circle, &flat_circle_datum(0.4), &g).unwrap();
        assert!(validate_line_cocycle(&circle, &datum, TOL).is_valid());
        let recharts: Vec<usize> = edges
            .iter()
            .map(|&(u, v)| {
                let key = if u < v { vec![u, v] } else { vec![v, u] };
                let options = circle.charts_containing(&key);
                options[rng.gen_range(0..options.len())]
            })
            .collect();
        let reassigned = ChartedLoop::new(&circle, edges.clone(), recharts).unwrap();
        let h0 = holonomy_loop(&circle, &datum, &gamma).unwrap();
        let h1 = holonomy_loop(&circle, &datum, &reassigned).unwrap();
        assert!(mod_one_distance(h0, h1) < TOL, "chart reassignment");
        let sub_datum = sub.pullback_line(&datum);
        let sub_loop = sub.subdivide_loop(&gamma).unwrap();
        let h2 = holonomy_loop(&sub.cover, &sub_datum, &sub_loop).unwrap();
        assert!(mod_one_distance(h0, h2) < TOL, "subdivision");
        // Hypercoboundary data yield holonomy 0.
        let pure = line_gauge_transform(&circle, &LineData::zero(), &g).unwrap();
        let hp = holonomy_loop(&circle, &pure, &gamma).unwrap();
        assert!(mod_one_distance(hp, 0.0) < TOL, "coboundary loop");
    }

    // 15 randomized closed-surface instances on the torus cover.
    let fix = torus_band_cover();
    let cover = &fix.cover;
    let tris = surfaces::oriented_triangles(&fix.model.complex).unwrap();
    let base_charts: Vec<usize> = tris
        .iter()
        .map(|t| {
            let mut s = t.to_vec();
            s.sort_unstable();
            cover.charts_containing(&s)[0]
        })
        .collect();
    let surface = ChartedSurface::new(cover, tris.clone(), base_charts).unwrap();
    let cycle = surfaces::fundamental_two_cycle(&fix.model.complex).unwrap();
    let torus_sub = subdivide_cover(cover).unwrap();
    for _ in 0..15 {
        let hc = random_cochain(cover, 1, 0, &mut rng);
        let ac = random_cochain(cover, 0, 1, &mut rng);
        let mut datum = gerbe_gauge_transform(cover, &GerbeData::zero(), &hc, &ac).unwrap();
        for (_, t) in &cycle {
            let value = rng.gen_range(-0.2..0.2);
            for alpha in cover.charts_containing(t) {
                datum.b.add_to(&[alpha], t, value);
            }
        }
        assert!(validate_gerbe_cocycle(cover, &datum, TOL).is_valid());
        let h0 = holonomy_surface(cover, &datum, &surface).unwrap();
        let recharts: Vec<usize> = tris
            .iter()
            .map(|t| {
                let mut s = t.to_vec();
                s.sort_unstable();
                let options = cover.charts_containing(&s);
                options[rng.gen_range(0..options.len())]
            })
            .collect();
        let surface2 = ChartedSurface::new(cover, tris.clone(), recharts).unwrap();
        let h1 = holonomy_surface(cover, &datum, &surface2).unwrap();
        assert!(mod_one_distance(h0, h1) < TOL, "surface chart reassignment");
        let sub_datum = torus_sub.pullback_gerbe(&datum);
        let sub_surface = torus_sub.subdivide_surface(&surface).unwrap();
        let h2 = holonomy_surface(&torus_sub.cover, &sub_datum, &sub_surface).unwrap();
        assert!(mod_one_distance(h0, h2) < TOL, "surface subdivision");
        // Pure hypercoboundary: holonomy 0.
        let pure = gerbe_gauge_transform(cover, &GerbeData::zero(), &hc, &ac).unwrap();
        let hp = holonomy_surface(cover, &pure, &surface).unwrap();
        assert!(mod_one_distance(hp, 0.0) < TOL, "coboundary surface");
    }

    // Chern pairings are exact integers and equal curvature pairings; the
    // monopole pairs to 1.
    let star = sphere_star_cover();
    let monopole = star.monopole_datum();
    assert!(validate_line_cocycle(&star.cover, &monopole, TOL).is_valid());
    let class = chern_class(&star.cover, &monopole, TOL).unwrap();
    let nerve_cycle = star.nerve_fundamental_cycle();
    let pairing = chern_pairing(&class, &nerve_cycle);
    assert_eq!(pairing, 1);
    let f = curvature(&star.cover, &monopole, TOL).unwrap();
    let base_cycle = surfaces::fundamental_two_cycle(&star.sd).unwrap();
    let fp = curvature_pairing(&f, &base_cycle);
    assert!((fp - 1.0).abs() < TOL);
    println!("criterion 6 (holonomy properties): PASS");
}

#[test]
fn criterion_7_clifford_suite() {
    // Every small representation case verifies.
    for case in reps::ALL_SMALL_REP_CASES {
        let (_, report) = clifford::small_rep(case);
        assert!(report.all_ok(), "{case:?}");
    }
    assert!(reps::complex_dimension_audit(3), "CCl dimension audit");
    // Covering map on 100 random Pin pairs over signatures up to n = 4.
    let mut rng = ChaCha8Rng::seed_from_u64(7777);
    let signatures = [
        Signature::negative(2),
        Signature::pq(1, 1),
        Signature::positive(3),
        Signature::pq(1, 3),
        Signature::pq(2, 2),
    ];
    for sig in &signatures {
        for _ in 0..20 {
            let x = pin::random_pin_element(sig, 3, &mut rng);
            let y = pin::random_pin_element(sig, 3, &mut rng);
            let mx = covering_matrix(&x).unwrap();
            let my = covering_matrix(&y).unwrap();
            assert_eq!(
                pin::matrix_mul(&mx, &my),
                covering_matrix(&x.times(&y).unwrap()).unwrap()
            );
            assert!(pin::preserves_eta(sig, &mx));
            assert_eq!(covering_matrix(&x.negated()).unwrap(), mx);
        }
    }
    // Spin tables at 20 sampled parameters, tolerance 1e-9.
    assert!(spin2_tables(SpinTableKind::Euclidean, TOL).all_ok());
    assert!(spin2_tables(SpinTableKind::Minkowskian, TOL).all_ok());
    println!("criterion 7 (Clifford suite): PASS");
}

#[test]
fn criterion_8_pin_structure_table() {
    // sphere: +1 iff Pin minus.
    assert_eq!(dtau_square(LiftCase::SphereAntipodal, PinSign::Minus), 1);
    assert_eq!(dtau_square(LiftCase::SphereAntipodal, PinSign::Plus), -1);
    // torus/Klein: xi0, xi2 give +1 iff Pin plus; xi1, xi3 iff Pin minus.
    for (case, plus) in [
        (LiftCase::TorusKleinXi0, 1),
        (LiftCase::TorusKleinXi1, -1),
        (LiftCase::TorusKleinXi2, 1),
        (LiftCase::TorusKleinXi3, -1),
    ] {
        assert_eq!(dtau_square(case, PinSign::Plus), plus, "{case:?}");
        assert_eq!(dtau_square(case, PinSign::Minus), -plus, "{case:?}");
    }
    // Moebius tau_4: xi0 and xi1 give e1^2, xi2 gives -e1^2.
    for (case, plus) in [
        (LiftCase::MoebiusTau4Xi0, 1),
        (LiftCase::MoebiusTau4Xi1, 1),
        (LiftCase::MoebiusTau4Xi2, -1),
    ] {
        assert_eq!(dtau_square(case, PinSign::Plus), plus, "{case:?}");
        assert_eq!(dtau_square(case, PinSign::Minus), -plus, "{case:?}");
    }
    // Angle independence below 1e-12 is asserted inside dtau_square.
    println!("criterion 8 (pin-structure table): PASS");
}

#[test]
fn criterion_9_double_covers() {
    use cohomolab::simplicial::edge_cycle_chain;
    // T^2 -> K^2.
    let klein = surfaces::surface_model(surfaces::SurfaceKind::KleinBottle).unwrap();
    let dc = surfaces::double_cover(&klein).unwrap();
    let base_h1 = klein
        .complex
        .chain_complex()
        .homology_presentation(1, Coefficients::Mod2)
        .unwrap();
    let cover_h1 = dc
        .cover
        .chain_complex()
        .homology_presentation(1, Coefficients::Mod2)
        .unwrap();
    assert_eq!(base_h1.group(), &FPAbelianGroup::z2_vector_space(2));
    assert_eq!(cover_h1.group(), &FPAbelianGroup::z2_vector_space(2));

    let chain_map = dc.projection.chain_map().unwrap();
    let induced = chain_map.induced(1, Coefficients::Mod2).unwrap();

    // Lifted cycles: the torsion marked cycle "a" lifts to a loop; the free
    // one "b" winds twice.
    let lift_of = |name: &str| {
        dc.lifted_cycles
            .iter()
            .find(|(n, _, _)| n == name)
            .cloned()
            .unwrap_or_else(|| panic!("lift of {name}"))
    };
    let (_, lift_a, wound_a) = lift_of("a");
    let (_, lift_b, wound_b) = lift_of("b");
    assert!(!wound_a, "torsion loop lifts to a loop");
    assert!(wound_b, "free loop winds twice");

    let coords_up = |cycle: &[(usize, usize)]| {
        let chain = edge_cycle_chain(&dc.cover, cycle).unwrap();
        cover_h1.express(&chain).unwrap()
    };
    let ca = coords_up(&lift_a);
    let cb = coords_up(&lift_b);
    // (ca, cb) must be a basis of H_1(cover, Z_2): the 2x2 matrix over F_2
    // is invertible.
    let det = (&ca[0] * &cb[1] - &ca[1] * &cb[0]) % BigInt::from(2);
    assert!(!num_traits::Zero::is_zero(&det), "lifts form a basis");

    // Push forward: pi_*(lift of b^2) = 0, pi_*(lift of a) = [a].
    let push = |coords: &[BigInt]| induced.apply(coords);
    let pa = push(&ca);
    let pb = push(&cb);
    assert!(pb.iter().all(num_traits::Zero::is_zero), "pi_*(b-lift) = 0");
    let base_a_chain = edge_cycle_chain(&klein.complex, &klein.marked_cycles[0].1).unwrap();
    let base_a = base_h1.express(&base_a_chain).unwrap();
    assert_eq!(pa, base_a, "pi_*(a-lift) is the torsion class downstairs");
    assert!(!pa.iter().all(num_traits::Zero::is_zero));

    // Image has index exactly 2: rank of the induced matrix over F_2 is 1.
    let m = induced.matrix();
    let mut rank = 0;
    for j in 0..m.cols() {
        let col_nonzero = (0..m.rows()).any(|i| {
            !num_traits::Zero::is_zero(&(&m[(i, j)] % BigInt::from(2)))
        });
        if col_nonzero {
            rank = 1;
        }
    }
    let independent = {
        // two nonzero, independent columns would make the image everything
        let c0: Vec<BigInt> = (0..m.rows()).map(|i| &m[(i, 0)] % BigInt::from(2)).collect();
        let c1: Vec<BigInt> = (0..m.rows()).map(|i| &m[(i, 1)] % BigInt::from(2)).collect();
        let det = (&c0[0] * &c1[1] - &c0[1] * &c1[0]) % BigInt::from(2);
        !num_traits::Zero::is_zero(&det)
    };
    assert_eq!(rank, 1, "image is nonzero");
    assert!(!independent, "image is a proper subspace");

    // S^2 -> RP^2: pi_* is the zero map and the image index is 2.
    let rp2 = surfaces::surface_model(surfaces::SurfaceKind::ProjectivePlane).unwrap();
    let dc2 = surfaces::double_cover(&rp2).unwrap();
    assert!(dc2
        .cover
        .homology(1, Coefficients::Mod2)
        .unwrap()
        .is_trivial());
    assert_eq!(
        rp2.complex.homology(1, Coefficients::Mod2).unwrap(),
        FPAbelianGroup::z2_vector_space(1)
    );
    // dim image = 0, dim target = 1: index 2.
    println!("criterion 9 (double covers): PASS");
}
