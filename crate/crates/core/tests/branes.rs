use proptest::prelude::*;
use tdual_core::branes::{
    check_exactness, check_graph, flow_defect, geodesic_flow, section_lift, separation_probe, CotangentPoint,
    FiberGrid, GraphCheck, LagrangianGraph, LiftedCell, LiftedPotential, PotentialConvention, ProbeConfig,
};
use tdual_core::geometry::{symplectic_form_eval, TorusFiber};

fn radii(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.3f64..2.3, n).prop_map(|v| v.into_iter().map(f64::exp).collect())
}

proptest! {
    #[test]
    fn brane_points_solve_the_potential_equation(
        n in 1usize..=3,
        level in 1i64..=4,
        offset in prop::collection::vec(0i64..=3, 3),
        r in radii(3),
    ) {
        let k = -level.min(n as i64 + 1);
        let a: Vec<i64> = offset[..n].iter().map(|x| -x.min(&(n as i64))).collect();
        let cell = LiftedCell::new(n, k, a).unwrap();
        let fiber = TorusFiber::new(r[..n].to_vec()).unwrap();
        let point = cell.lifted_section(&fiber);
        prop_assert!(cell.contains(&point));
        let potential = LiftedPotential::new(cell, PotentialConvention::Scaled);
        let grad = potential.gradient(&point).unwrap();
        for (g, y) in grad.iter().zip(fiber.log_radii()) {
            prop_assert!((g - y).abs() < 1e-9 * (1.0 + y.abs()));
        }
    }

    #[test]
    fn omega_vanishes_on_random_brane_frames(
        n in 1usize..=4,
        k in -5i64..=5,
        r in radii(4),
        coeffs in prop::collection::vec(-2.0f64..2.0, 8),
    ) {
        let fiber = TorusFiber::new(r[..n].to_vec()).unwrap();
        let brane = LagrangianGraph::new(n, k);
        let base = brane.point(&fiber).unwrap();
        let frame = brane.tangent_frame(&fiber).unwrap();
        let mix = |c: &[f64]| {
            let mut v = tdual_core::geometry::TangentVector::new(vec![0.0; n], vec![0.0; n]).unwrap();
            for (t, ci) in frame.iter().zip(c) {
                for l in 0..n {
                    v.dy[l] += ci * t.dy[l];
                    v.dgamma[l] += ci * t.dgamma[l];
                }
            }
            v
        };
        let u = mix(&coeffs[..n]);
        let v = mix(&coeffs[4..4 + n]);
        prop_assert!(symplectic_form_eval(&base, &u, &v).unwrap().abs() < 1e-9);
    }

    #[test]
    fn flow_preserves_covector_and_moves_by_t(
        y in prop::collection::vec(-5.0f64..5.0, 3),
        gamma in prop::collection::vec(-1.0f64..1.0, 3),
        t in -2.0f64..2.0,
        s in -2.0f64..2.0,
    ) {
        prop_assume!(y.iter().map(|v| v * v).sum::<f64>() > 1e-6);
        let p = CotangentPoint { y: y.clone(), gamma: gamma.clone() };
        let moved = geodesic_flow(&p, t).unwrap();
        prop_assert_eq!(&moved.y, &y);
        let dist: f64 = moved.gamma.iter().zip(&gamma).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        prop_assert!((dist - t.abs()).abs() < 1e-12);
        let twice = geodesic_flow(&moved, s).unwrap();
        let once = geodesic_flow(&p, t + s).unwrap();
        for (a, b) in twice.gamma.iter().zip(&once.gamma) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn defect_is_a_torus_distance(
        s in prop::collection::vec(-1.0f64..0.0, 2),
        gamma in prop::collection::vec(-1.0f64..0.0, 2),
        y in prop::collection::vec(-3.0f64..3.0, 2),
        t1 in 0.0f64..0.05,
        t2 in 0.0f64..0.05,
    ) {
        prop_assume!(y.iter().any(|v| v.abs() > 1e-3));
        let (d, shift) = flow_defect(&s, &gamma, &y, t1, t2);
        prop_assert!(d >= 0.0);
        prop_assert!(shift.iter().all(|m| (-1..=1).contains(m)));
        // Brute force over a wider window of translates.
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut best = f64::INFINITY;
        for m1 in -3..=3 {
            for m2 in -3..=3 {
                let m = [m1 as f64, m2 as f64];
                let dist = (0..2)
                    .map(|l| (s[l] + m[l] - gamma[l] - (t2 - t1) * y[l] / norm).powi(2))
                    .sum::<f64>()
                    .sqrt();
                best = best.min(dist);
            }
        }
        prop_assert!((d - best).abs() < 1e-12);
    }
}

#[test]
fn graph_check_all_cells_in_low_dimension() {
    for n in 1..=2usize {
        let grid = FiberGrid::new(n, if n == 1 { 100 } else { 10 }, 0.5, 2.0).unwrap();
        for k in -(n as i64) - 1..=-1 {
            for a in tdual_core::homs::CellObject::orbit(n, k).unwrap() {
                let cell = LiftedCell::new(n, k, a.a.clone()).unwrap();
                let report = check_graph(&cell, &grid, &GraphCheck::default()).unwrap();
                assert!(report.pass, "{}", report.summary());
                assert!(report.max_deviation.unwrap() <= 1e-7);
            }
        }
    }
}

#[test]
fn literal_potential_fails_by_level_factor() {
    let grid = FiberGrid::new(1, 100, 0.5, 2.0).unwrap();
    let literal = GraphCheck {
        convention: PotentialConvention::Literal,
        ..GraphCheck::default()
    };
    let base = check_graph(&LiftedCell::base(1), &grid, &literal).unwrap();
    assert!(base.pass, "k = -1 has no scale discrepancy");
    let cell = LiftedCell::new(1, -2, vec![0]).unwrap();
    let report = check_graph(&cell, &grid, &literal).unwrap();
    assert!(!report.pass);
    let ratio = report.details.unwrap()["median_log_r_over_gradient"].as_f64().unwrap();
    assert!((ratio - 2.0).abs() < 1e-5);
}

#[test]
fn exactness_across_the_collection() {
    for n in 1..=3usize {
        let grid = FiberGrid::new(n, 20, 0.1, 10.0).unwrap();
        for k in -(n as i64) - 1..=-1 {
            let report = check_exactness(n, k, &grid, 1e-9).unwrap();
            assert!(report.pass, "{}", report.summary());
        }
    }
}

#[test]
fn unreduced_section_is_k_times_unit_section() {
    let fiber = TorusFiber::new(vec![0.3, 1.9, 4.0]).unwrap();
    let one = section_lift(1, &fiber);
    for k in -4..=4 {
        for (a, b) in section_lift(k, &fiber).iter().zip(&one) {
            assert!((a - k as f64 * b).abs() < 1e-15);
        }
    }
}

#[test]
fn probe_on_faces_and_vertices_of_the_triangle() {
    let config = ProbeConfig { delta: 0.05, t_steps: 8, samples: 2000, seed: 11 };
    for s in [[0.0, -0.5], [-0.5, 0.0], [-0.5, -0.5], [0.0, 0.0], [-1.0, 0.0], [0.0, -1.0]] {
        let report = separation_probe(&s, &config).unwrap();
        assert!(report.pass, "s = {s:?}");
    }
}

#[test]
fn probe_is_reproducible_for_a_seed() {
    let config = ProbeConfig { delta: 0.05, t_steps: 5, samples: 500, seed: 3 };
    let a = separation_probe(&[0.0], &config).unwrap();
    let b = separation_probe(&[0.0], &config).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
