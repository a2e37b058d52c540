use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::cm::{admissible_sectors, cylinder_propagator_spectral};
use crate::haar::QuadratureSpec;
use crate::linalg::CMatrix;
use crate::tensor::su2;

fn w(m: u32) -> HighestWeight {
    HighestWeight::su2(m)
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(11)
}

fn su2_rs() -> RootSystem {
    RootSystem::su2()
}

/// Annulus cut by a Wilson loop `w` into two regions, each made simply
/// connected by a seam.
fn annulus_with_loop(mu: u32) -> OpenGraphSurface {
    let color = if mu == 0 { None } else { Some(w(mu)) };
    OpenGraphSurface {
        regions: vec![
            Region {
                area: 0.5,
                genus: 0,
                boundary_word: vec![
                    SignedEdge::plus("b"),
                    SignedEdge::plus("s1"),
                    SignedEdge::minus("w"),
                    SignedEdge::minus("s1"),
                ],
            },
            Region {
                area: 0.7,
                genus: 0,
                boundary_word: vec![
                    SignedEdge::plus("w"),
                    SignedEdge::plus("s2"),
                    SignedEdge::minus("t"),
                    SignedEdge::minus("s2"),
                ],
            },
        ],
        edges: vec![
            Edge::boundary("b", Some("p"), Some("p")),
            Edge::boundary("t", Some("q"), Some("q")),
            Edge::internal("w", color, Some("r"), Some("r")),
            Edge::internal("s1", None, Some("p"), Some("r")),
            Edge::internal("s2", None, Some("r"), Some("q")),
        ],
        vertices: vec![Vertex::new("p", &[]), Vertex::new("r", &["w", "w"]), Vertex::new("q", &[])],
        euler_characteristic: Some(0),
        enrichment: None,
    }
}

/// Square `[-b, -l, +t, +r]` with corner vertices and no graph.
fn rectangle(area: f64) -> OpenGraphSurface {
    OpenGraphSurface {
        regions: vec![Region {
            area,
            genus: 0,
            boundary_word: vec![
                SignedEdge::minus("b"),
                SignedEdge::minus("l"),
                SignedEdge::plus("t"),
                SignedEdge::plus("r"),
            ],
        }],
        edges: vec![
            Edge::boundary("b", Some("BR"), Some("BL")),
            Edge::boundary("l", Some("BL"), Some("TL")),
            Edge::boundary("t", Some("TR"), Some("TL")),
            Edge::boundary("r", Some("BR"), Some("TR")),
        ],
        vertices: ["BL", "BR", "TL", "TR"].iter().map(|v| Vertex::new(*v, &[])).collect(),
        euler_characteristic: Some(1),
        enrichment: None,
    }
}

fn sphere_oracle(rs: &RootSystem, area: f64, genus: i32, cutoff: f64) -> f64 {
    rs.dominant_weights_below(cutoff)
        .unwrap()
        .iter()
        .map(|l| (rs.weyl_dim(l) as f64).powi(2 - 2 * genus) * (-area * rs.casimir2(l)).exp())
        .sum()
}

fn cylinder_data(gs: &[CMatrix<f64>], gps: &[CMatrix<f64>]) -> BoundaryData<f64> {
    let mut data = BoundaryData::new();
    for (i, (g, gp)) in gs.iter().zip(gps).enumerate() {
        data.insert(format!("t{i}"), g.clone());
        data.insert(format!("b{i}"), gp.clone());
    }
    data
}

fn cylinder_kernel(state: &BoundaryState<f64>, n: usize) -> CMatrix<f64> {
    let rows: Vec<String> = (0..n).map(|i| format!("top{i}")).collect();
    let cols: Vec<String> = (0..n).map(|i| format!("bot{i}")).collect();
    let r: Vec<&str> = rows.iter().map(String::as_str).collect();
    let c: Vec<&str> = cols.iter().map(String::as_str).collect();
    state.matrix(&r, &c).unwrap()
}

#[test]
fn json_round_trip_and_unknown_fields() {
    let gs = cylinder_surface(&[w(1), w(2)], &[0.4, 0.6]).unwrap();
    let back = OpenGraphSurface::from_json(&gs.to_json()).unwrap();
    assert_eq!(gs, back);
    let bad = r#"{"regions": [], "edges": [], "colour": 1}"#;
    assert!(matches!(OpenGraphSurface::from_json(bad), Err(Error::Schema(_))));
    let bad_ref = r#"{"regions": [{"area": 1.0, "boundary_word": ["b"]}], "edges": []}"#;
    assert!(matches!(OpenGraphSurface::from_json(bad_ref), Err(Error::Schema(_))));
}

#[test]
fn fixtures_are_well_formed() {
    let rs = su2_rs();
    for gs in [
        disc_surface(1.0, 0),
        disc_surface(1.0, 2),
        closed_surface(1.0, 1),
        cylinder_surface(&[w(1), w(1), w(2)], &[0.3, 0.4, 0.5]).unwrap(),
        annulus_with_loop(1),
        rectangle(1.0),
    ] {
        assert_eq!(gs.structure_violations(&rs), Vec::<String>::new());
    }
}

#[test]
fn structure_violations_are_listed() {
    let rs = su2_rs();
    let mut gs = cylinder_surface(&[w(1)], &[0.5]).unwrap();
    gs.regions[0].boundary_word.pop();
    gs.euler_characteristic = Some(3);
    gs.regions[0].area = -1.0;
    let v = gs.structure_violations(&rs);
    assert!(v.iter().any(|m| m.contains("exactly twice")));
    assert!(v.iter().any(|m| m.contains("Euler")));
    assert!(v.iter().any(|m| m.contains("non-positive area")));
}

#[test]
fn validate_trivial_line_imposes_equal_colors() {
    let rs = su2_rs();
    let gs = annulus_with_loop(0);
    assert!(validate(&gs, &rs, &Coloring { regions: vec![w(3), w(3)] }).is_valid());
    let report = validate(&gs, &rs, &Coloring { regions: vec![w(3), w(1)] });
    assert_eq!(report.violations.len(), 1);
    assert_eq!(report.violations[0].kind, ViolationKind::Admissibility);
}

#[test]
fn validate_rejects_three_across_spin_half() {
    let rs = su2_rs();
    let gs = annulus_with_loop(1);
    let report = validate(&gs, &rs, &Coloring { regions: vec![w(0), w(3)] });
    // oracle: 3 does not occur in 1 ⊗ 0
    assert!(!crate::tensor::tensor_decompose(&rs, &w(1), &w(0)).contains(&w(3)));
    assert!(!report.is_valid());
    assert!(report.violations.iter().all(|v| v.kind == ViolationKind::Admissibility));
    assert!(validate(&gs, &rs, &Coloring { regions: vec![w(0), w(1)] }).is_valid());
}

#[test]
fn validate_three_line_cylinder_pattern() {
    let rs = su2_rs();
    let gs = cylinder_surface(&[w(1), w(1), w(2)], &[0.3, 0.4, 0.5]).unwrap();
    assert!(validate(&gs, &rs, &Coloring { regions: vec![w(1), w(2), w(2)] }).is_valid());
    assert!(!validate(&gs, &rs, &Coloring { regions: vec![w(1), w(1), w(2)] }).is_valid());
}

#[test]
fn validate_reports_vertex_without_invariant() {
    let rs = su2_rs();
    let mut gs = cylinder_surface(&[w(1)], &[0.5]).unwrap();
    gs.edges.iter_mut().find(|e| e.id == "top0").unwrap().color = Some(w(2));
    let report = validate(&gs, &rs, &Coloring { regions: vec![w(0)] });
    assert!(report.violations.iter().any(|v| v.kind == ViolationKind::Invariance));
}

#[test]
fn coloring_count_matches_sector_enumeration() {
    let rs = su2_rs();
    for spins in [vec![w(1), w(1)], vec![w(1), w(1), w(2)], vec![w(2)], vec![w(2), w(1), w(1), w(2)]] {
        let n = spins.len();
        let gs = cylinder_surface(&spins, &vec![0.5; n]).unwrap();
        let colorings = admissible_colorings(&gs, &rs, 12.0).unwrap();
        let sectors = admissible_sectors(&spins, 12.0).unwrap();
        assert_eq!(colorings.len(), sectors.len());
        for c in &colorings {
            assert!(validate(&gs, &rs, &Coloring { regions: c.clone() }).is_valid());
        }
    }
}

#[test]
fn enrich_inserts_one_circle_per_region() {
    let rs = su2_rs();
    let disc = enrich(&disc_surface(1.0, 0), &rs).unwrap();
    let circles = disc.enrichment.unwrap();
    assert_eq!(circles.len(), 1);
    assert_eq!(circles[0].segments, vec!["b".to_string()]);

    let cyl = enrich(&cylinder_surface(&[w(1), w(1), w(2)], &[0.3, 0.4, 0.5]).unwrap(), &rs).unwrap();
    let circles = cyl.enrichment.unwrap();
    assert_eq!(circles.len(), 3);
    for (i, c) in circles.iter().enumerate() {
        assert_eq!(c.region, i);
        assert_eq!(c.segments, vec![format!("b{i}"), format!("t{i}")]);
    }

    let annulus = enrich(&annulus_with_loop(0), &rs).unwrap();
    let segments: Vec<Vec<String>> = annulus.enrichment.unwrap().into_iter().map(|c| c.segments).collect();
    assert_eq!(segments, vec![vec!["b".to_string()], vec!["t".to_string()]]);

    let mut broken = disc_surface(1.0, 0);
    broken.regions[0].boundary_word.clear();
    assert!(matches!(enrich(&broken, &rs), Err(Error::Structure(_))));
}

#[test]
fn closed_disc_is_sphere_sum() {
    let rs = su2_rs();
    let z = evaluate_partition(&disc_surface(0.9, 0), &rs, &BoundaryData::<f64>::new(), None, 60.0).unwrap();
    let want = sphere_oracle(&rs, 0.9, 0, 60.0);
    assert!((z.scalar().unwrap() - Complex::new(want, 0.0)).norm() < 1e-12);
    for g in [0, 1, 2] {
        let z = evaluate_partition(&closed_surface(0.6, g), &rs, &BoundaryData::<f64>::new(), None, 60.0).unwrap();
        let want = sphere_oracle(&rs, 0.6, g as i32, 60.0);
        assert!((z.scalar().unwrap().re - want).abs() < 1e-12 * want.abs().max(1.0));
    }
}

#[test]
fn disc_with_holonomy_is_heat_kernel() {
    let rs = su2_rs();
    let g = su2::random::<f64, _>(&mut rng());
    let data = BoundaryData::new().with("b", g.clone());
    let z = evaluate_partition(&disc_surface(0.7, 0), &rs, &data, None, 60.0).unwrap();
    let x = g.trace().re;
    let want: f64 = (0..40usize)
        .filter(|m| (m * (m + 2)) as f64 / 2.0 <= 60.0)
        .map(|m| (m + 1) as f64 * su2::character_of_trace(m, x) * (-0.7 * (m * (m + 2)) as f64 / 2.0).exp())
        .sum();
    assert!((z.scalar().unwrap().re - want).abs() < 1e-12);
}

#[test]
fn no_outer_edges_gives_class_function() {
    let rs = su2_rs();
    let mut r = rng();
    let g = su2::random::<f64, _>(&mut r);
    let k = su2::random::<f64, _>(&mut r);
    let conj = &(&k * &g) * &k.adjoint();
    let gs = annulus_with_loop(2);
    let eval = |a: &CMatrix<f64>| {
        let data = BoundaryData::new().with("b", a.clone()).with("t", g.clone());
        evaluate_partition(&gs, &rs, &data, None, 30.0).unwrap().scalar().unwrap()
    };
    assert!((eval(&g) - eval(&conj)).norm() < 1e-12);
}

#[test]
fn three_rank_sphere_from_glued_discs() {
    let rs = RootSystem::su(3).unwrap();
    let sphere = glue_surfaces(&disc_surface(0.4, 0), "b", &disc_surface(0.5, 0), "b", None).unwrap();
    let z = evaluate_partition::<f64>(&sphere, &rs, &BoundaryData::<f64>::new(), None, 30.0).unwrap();
    let want = sphere_oracle(&rs, 0.9, 0, 30.0);
    assert!((z.scalar().unwrap().re - want).abs() < 1e-12 * want);
    let torus = closed_surface(0.3, 1);
    let z = evaluate_partition::<f64>(&torus, &rs, &BoundaryData::<f64>::new(), None, 30.0).unwrap();
    assert!((z.scalar().unwrap().re - sphere_oracle(&rs, 0.3, 1, 30.0)).abs() < 1e-12);
}

#[test]
fn seam_torus_matches_formula_for_both_paths() {
    let torus = OpenGraphSurface {
        regions: vec![Region {
            area: 0.45,
            genus: 0,
            boundary_word: vec![
                SignedEdge::plus("a"),
                SignedEdge::plus("c"),
                SignedEdge::minus("a"),
                SignedEdge::minus("c"),
            ],
        }],
        edges: vec![Edge::internal("a", None, Some("p"), Some("p")), Edge::internal("c", None, Some("p"), Some("p"))],
        vertices: vec![Vertex::new("p", &[])],
        euler_characteristic: Some(0),
        enrichment: None,
    };
    for rs in [RootSystem::su2(), RootSystem::su(3).unwrap()] {
        let z = evaluate_partition::<f64>(&torus, &rs, &BoundaryData::<f64>::new(), None, 25.0).unwrap();
        let want = sphere_oracle(&rs, 0.45, 1, 25.0);
        assert!((z.scalar().unwrap().re - want).abs() < 1e-12, "rank {}", rs.rank());
    }
}

#[test]
fn higher_rank_wilson_lines_unsupported() {
    let rs = RootSystem::su(3).unwrap();
    let gs = cylinder_surface(&[HighestWeight::new(vec![1, 0]).unwrap()], &[0.5]).unwrap();
    assert!(matches!(
        evaluate_partition::<f64>(&gs, &rs, &BoundaryData::<f64>::new(), None, 10.0),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn cylinder_matches_spectral_propagator() {
    let rs = su2_rs();
    let mut r = rng();
    for spins in [vec![w(0)], vec![w(2)], vec![w(1), w(1)], vec![w(1), w(1), w(2)]] {
        let n = spins.len();
        let areas: Vec<f64> = (0..n).map(|i| 0.4 + 0.15 * i as f64).collect();
        let gs: Vec<CMatrix<f64>> = (0..n).map(|_| su2::random(&mut r)).collect();
        let gps: Vec<CMatrix<f64>> = (0..n).map(|_| su2::random(&mut r)).collect();
        let surface = cylinder_surface(&spins, &areas).unwrap();
        let state = evaluate_partition(&surface, &rs, &cylinder_data(&gs, &gps), None, 30.0).unwrap();
        let kernel = cylinder_propagator_spectral(&spins, &areas, &gs, &gps, 30.0).unwrap();
        let got = cylinder_kernel(&state, n);
        assert!(got.dist(&kernel) < 1e-10, "spins {spins:?}: {}", got.dist(&kernel));
        assert!(kernel.max_abs() > 1e-3);
    }
}

#[test]
fn spectral_matches_quadrature() {
    let rs = su2_rs();
    let mut r = rng();
    let spec = QuadratureSpec::group(16);
    for mu in [1, 2] {
        let gs = cylinder_surface(&[w(mu)], &[0.8]).unwrap();
        let data = cylinder_data(&[su2::random(&mut r)], &[su2::random(&mut r)]);
        let spectral = evaluate_partition(&gs, &rs, &data, None, 30.0).unwrap();
        let quad = evaluate_partition_quadrature(&gs, &rs, &data, None, 30.0, &spec).unwrap();
        let err = spectral.value.iter().zip(&quad).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-3, "mu {mu}: {err}");
    }
    // sphere split by a Wilson loop: one internal edge
    let sphere = OpenGraphSurface {
        regions: vec![
            Region { area: 0.6, genus: 0, boundary_word: vec![SignedEdge::plus("w")] },
            Region { area: 0.9, genus: 0, boundary_word: vec![SignedEdge::minus("w")] },
        ],
        edges: vec![Edge::internal("w", Some(w(2)), None, None)],
        vertices: vec![],
        euler_characteristic: Some(2),
        enrichment: None,
    };
    let none = BoundaryData::<f64>::new();
    let spectral = evaluate_partition(&sphere, &rs, &none, None, 30.0).unwrap();
    let quad = evaluate_partition_quadrature(&sphere, &rs, &none, None, 30.0, &spec).unwrap();
    assert!((spectral.value[0] - quad[0]).norm() < 1e-3);
    // oracle: Σ dim λ dim λ' e^{-A c₂(λ) - A' c₂(λ')} over λ' ∈ λ ⊗ 2
    let c2 = |m: i32| (m * (m + 2)) as f64 / 2.0;
    let mut want = 0.0;
    for l in 0..=6i32 {
        for lp in [l - 2, l, l + 2] {
            if lp < 0 || (l == 0 && lp == 0) || lp > 6 {
                continue;
            }
            want += ((l + 1) * (lp + 1)) as f64 * (-0.6 * c2(l) - 0.9 * c2(lp)).exp();
        }
    }
    assert!((spectral.value[0].re - want).abs() < 1e-12);
    let annulus = annulus_with_loop(1);
    let quad = evaluate_partition_quadrature(&annulus, &rs, &none, None, 30.0, &QuadratureSpec::group(4));
    assert!(matches!(quad, Err(Error::Unsupported(_))));
}

#[test]
fn starting_edge_does_not_matter() {
    let rs = su2_rs();
    let mut r = rng();
    let spins = [w(1), w(1)];
    let gs = cylinder_surface(&spins, &[0.5, 0.6]).unwrap();
    let data = cylinder_data(&[su2::random(&mut r), su2::random(&mut r)], &[su2::random(&mut r), su2::random(&mut r)]);
    let base = evaluate_partition(&gs, &rs, &data, None, 30.0).unwrap();
    for shift in 1..4 {
        let mut rotated = gs.clone();
        for (k, reg) in rotated.regions.iter_mut().enumerate() {
            reg.boundary_word.rotate_left((shift + k) % 4);
        }
        let other = evaluate_partition(&rotated, &rs, &data, None, 30.0).unwrap();
        let err = base.value.iter().zip(&other.value).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-12);
    }
}

#[test]
fn zero_state_and_truncation_warning() {
    let rs = su2_rs();
    let odd = cylinder_surface(&[w(1)], &[0.5]).unwrap();
    assert!(!has_admissible_coloring(&odd, &rs).unwrap());
    let z = evaluate_partition(&odd, &rs, &BoundaryData::<f64>::new(), None, 30.0).unwrap();
    assert!(z.is_zero());
    assert!(z.warnings.is_empty());

    let even = cylinder_surface(&[w(2)], &[0.5]).unwrap();
    assert!(has_admissible_coloring(&even, &rs).unwrap());
    let z = evaluate_partition(&even, &rs, &BoundaryData::<f64>::new(), None, 0.5).unwrap();
    assert!(z.is_zero());
    assert_eq!(z.warnings.len(), 1);
    assert!(!evaluate_partition(&even, &rs, &BoundaryData::<f64>::new(), None, 2.0).unwrap().is_zero());
}

#[test]
fn nonpositive_area_is_divergent() {
    let rs = su2_rs();
    let gs = disc_surface(1.0, 0);
    let r = evaluate_partition::<f64>(&gs, &rs, &BoundaryData::new(), Some(&[0.0]), 10.0);
    assert!(matches!(r, Err(Error::DivergentSeries(_))));
}

#[test]
fn two_discs_glue_to_sphere() {
    let rs = su2_rs();
    let sphere = glue_surfaces(&disc_surface(0.3, 0), "b", &disc_surface(0.5, 0), "b", None).unwrap();
    assert_eq!(sphere.computed_euler_characteristic(), 2);
    let z = evaluate_partition(&sphere, &rs, &BoundaryData::<f64>::new(), None, 60.0).unwrap();
    assert!((z.scalar().unwrap().re - sphere_oracle(&rs, 0.8, 0, 60.0)).abs() < 1e-12);
}

#[test]
fn cylinders_glue_end_to_end() {
    let rs = su2_rs();
    let mut r = rng();
    for mu in [0, 2] {
        let c1 = cylinder_surface(&[w(mu)], &[0.3]).unwrap();
        let c2 = cylinder_surface(&[w(mu)], &[0.45]).unwrap();
        let glued = glue_surfaces(&c1, "b0", &c2, "t0", None).unwrap();
        assert!(glued.structure_violations(&rs).is_empty());
        let (g, gpp) = (su2::random::<f64, _>(&mut r), su2::random::<f64, _>(&mut r));
        let data = BoundaryData::new().with("t0", g.clone()).with("b0'", gpp.clone());
        let state = evaluate_partition(&glued, &rs, &data, None, 30.0).unwrap();
        let composed = state.contract_stubs(&[("bot0", "top0'")]).unwrap();
        let got = composed.matrix(&["top0"], &["bot0'"]).unwrap();
        let want = cylinder_propagator_spectral(&[w(mu)], &[0.75], &[g], &[gpp], 30.0).unwrap();
        assert!(got.dist(&want) < 1e-10, "mu {mu}: {}", got.dist(&want));
    }
}

#[test]
fn sandwich_gluing_adds_parallel_lines() {
    let rs = su2_rs();
    let mut r = rng();
    // one rectangle closed up with a line
    let cyl = glue_self(&rectangle(0.6), "r", "l", Some(w(2))).unwrap();
    assert!(cyl.structure_violations(&rs).is_empty());
    let (g, gp) = (su2::random::<f64, _>(&mut r), su2::random::<f64, _>(&mut r));
    let data = BoundaryData::new().with("t", g.clone()).with("b", gp.clone());
    let state = evaluate_partition(&cyl, &rs, &data, None, 30.0).unwrap();
    let got = state.matrix(&["r.head"], &["r.tail"]).unwrap();
    let want = cylinder_propagator_spectral(&[w(2)], &[0.6], &[g], &[gp], 30.0).unwrap();
    assert!(got.dist(&want) < 1e-10);

    // two rectangles and two sandwich lines
    let strip = glue_surfaces(&rectangle(0.4), "r", &rectangle(0.5), "l", Some(w(1))).unwrap();
    let cyl2 = glue_self(&strip, "r'", "l", Some(w(1))).unwrap();
    assert!(cyl2.structure_violations(&rs).is_empty());
    let gs: Vec<CMatrix<f64>> = (0..2).map(|_| su2::random(&mut r)).collect();
    let gps: Vec<CMatrix<f64>> = (0..2).map(|_| su2::random(&mut r)).collect();
    let data = BoundaryData::new()
        .with("t", gs[0].clone())
        .with("t'", gs[1].clone())
        .with("b", gps[0].clone())
        .with("b'", gps[1].clone());
    let state = evaluate_partition(&cyl2, &rs, &data, None, 30.0).unwrap();
    let got = state.matrix(&["r'.head", "r.head"], &["r'.tail", "r.tail"]).unwrap();
    let want = cylinder_propagator_spectral(&[w(1), w(1)], &[0.4, 0.5], &gs, &gps, 30.0).unwrap();
    assert!(got.dist(&want) < 1e-10, "{}", got.dist(&want));
    assert!(want.max_abs() > 1e-3);
}

#[test]
fn gluing_rejects_incompatible_edges() {
    let disc = disc_surface(0.5, 0);
    let rect = rectangle(0.5);
    assert!(matches!(glue_surfaces(&disc, "b", &rect, "t", None), Err(Error::InvalidArgument(_))));
    let cyl = cylinder_surface(&[w(1)], &[0.5]).unwrap();
    assert!(matches!(glue_surfaces(&cyl, "e0", &rect, "t", None), Err(Error::InvalidArgument(_))));
    assert!(matches!(glue_self(&rect, "t", "t", None), Err(Error::InvalidArgument(_))));
    assert!(matches!(glue_self(&rect, "t", "zz", None), Err(Error::InvalidArgument(_))));
}

#[test]
fn boundary_components() {
    let rs = su2_rs();
    let gs = cylinder_surface(&[w(2), w(2)], &[0.5, 0.5]).unwrap();
    let state = evaluate_partition(&gs, &rs, &BoundaryData::<f64>::new(), None, 10.0).unwrap();
    assert_eq!(state.components.len(), 2);
    assert!(state.components.iter().all(|c| c.vertices.len() == 2 && c.edges.len() == 2));
    let disc = evaluate_partition(&disc_surface(1.0, 0), &rs, &BoundaryData::<f64>::new(), None, 10.0).unwrap();
    assert!(disc.components[0].is_circle());
}

#[test]
fn holonomy_fields_are_read() {
    let mut gs = disc_surface(0.5, 0);
    gs.edges[0].holonomy = Some([0.6, 0.0, 0.0, 0.8]);
    let data = BoundaryData::<f64>::from_surface(&gs).unwrap();
    assert!((data.get("b").unwrap().trace().re - 1.2).abs() < 1e-15);
    gs.edges[0].holonomy = Some([1.0, 1.0, 0.0, 0.0]);
    assert!(BoundaryData::<f64>::from_surface(&gs).is_err());
}
