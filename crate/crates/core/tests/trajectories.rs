use approx::assert_abs_diff_eq;
use kinetic_emst::random::{poly_range, random_polynomial_scenario, random_unit_poly, seeded};
use kinetic_emst::trajectories::*;
use proptest::prelude::*;

fn dense_event_oracle(sc: &KineticScenario, t_ref: f64, k: f64) -> Option<f64> {
    // Plain scan on a fine grid, then bisection to 1e-12.
    let horizon = sc.horizon();
    let moved = |t: f64| sc.input_distance(t_ref, t).unwrap() >= k - 1e-12;
    let steps = 20_000;
    let mut prev = t_ref;
    for j in 1..=steps {
        let t = t_ref + (horizon - t_ref) * j as f64 / steps as f64;
        if moved(t) {
            let (mut lo, mut hi) = (prev, t);
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                if moved(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Some(hi);
        }
        prev = t;
    }
    None
}

#[test]
fn event_matches_dense_oracle_on_random_scenarios() {
    let mut rng = seeded(11);
    let mut compared = 0;
    for i in 0..100 {
        let sc = random_polynomial_scenario(&mut rng, format!("r{i}"), 3, 2, 4, 1.0).unwrap();
        let k = 0.05 + 0.01 * (i % 10) as f64;
        let t_ref = 0.01 * (i % 7) as f64;
        let fast = sc.next_displacement_event(t_ref, k).unwrap();
        let slow = dense_event_oracle(&sc, t_ref, k);
        match (fast, slow) {
            (Some(a), Some(b)) => {
                assert!((a - b).abs() < 1e-8, "scenario {i}: {a} vs {b}");
                compared += 1;
            }
            (None, None) => {}
            other => panic!("scenario {i}: {other:?}"),
        }
    }
    assert!(compared > 50);
}

#[test]
fn chebyshev_first_event_pinned() {
    // (1 - cos(acos(0.8) / 3)) / 2
    let sc = gen_chebyshev(3, 11, 1.0).unwrap();
    let t = sc.next_displacement_event(0.0, 0.1).unwrap().unwrap();
    assert_abs_diff_eq!(t, 0.011458566438862, epsilon = 1e-12);
}

#[test]
fn chebyshev_sweeps_match_degree() {
    for s in 1..=6 {
        let traj = chebyshev_trajectory(s, 2.0).unwrap();
        assert_eq!(traj.monotone_sweeps(0).unwrap(), s);
    }
}

#[test]
fn chebyshev_endpoints_and_midpoint() {
    let cheb3 = chebyshev_trajectory(3, 1.0).unwrap();
    assert_abs_diff_eq!(cheb3.evaluate(0.0).unwrap()[0], 0.0, epsilon = 1e-15);
    assert_abs_diff_eq!(cheb3.evaluate(1.0).unwrap()[0], 1.0, epsilon = 1e-15);
    let cheb2 = chebyshev_trajectory(2, 4.0).unwrap();
    assert_abs_diff_eq!(cheb2.evaluate(2.0).unwrap()[0], 0.0, epsilon = 1e-15);
    assert_abs_diff_eq!(chebyshev_trajectory(4, 1.0).unwrap().max_speed().unwrap(), 16.0, epsilon = 1e-6);
}

#[test]
fn split_edge_length_follows_hyperbola() {
    let n = 8;
    let sc = gen_split(n).unwrap();
    let c0 = sc.config_at(0.0).unwrap();
    assert_abs_diff_eq!(c0.dist(0, 1), 1.0 / n as f64, epsilon = 1e-15);
    for t in [0.1, 0.5, 1.0] {
        let c = sc.config_at(t).unwrap();
        let x = 3.0 / n as f64;
        assert_abs_diff_eq!(c.dist(0, 3), (x * x + t * t).sqrt(), epsilon = 1e-14);
    }
    let c1 = sc.config_at(1.0).unwrap();
    assert_abs_diff_eq!((c1.point(1)[0] - c1.point(0)[0]).abs(), 1.0, epsilon = 1e-15);
}

#[test]
fn circle_is_even_at_critical_time() {
    let (sc, t_mid) = gen_circle(16, 0.1).unwrap();
    let cfg = sc.config_at(t_mid).unwrap();
    let mut angles: Vec<f64> = (0..16).map(|i| cfg.point(i)[1].atan2(cfg.point(i)[0])).collect();
    angles.sort_by(f64::total_cmp);
    let gaps: Vec<f64> = angles.windows(2).map(|w| w[1] - w[0]).collect();
    for g in gaps {
        assert_abs_diff_eq!(g, std::f64::consts::TAU / 16.0, epsilon = 1e-12);
    }
    // 15 chords of angle 2 pi / 16 on the unit circle
    assert_abs_diff_eq!(
        kinetic_emst::spanning::emst_length(&cfg),
        5.852709660483846,
        epsilon = 1e-12
    );
}

#[test]
fn appendix_bump_peak_is_one() {
    let sc = gen_appendix_rational(8, 4).unwrap();
    let center = rational_bump_center(1, 0, 8);
    assert_abs_diff_eq!(center, 20.0, epsilon = 0.0);
    let p = sc.config_at(center).unwrap();
    // neighbouring bumps are 10 away and add at most 1e-4 each before clamping
    assert_abs_diff_eq!(p.point(1)[0], 1.0, epsilon = 0.0);
    let quiet = sc.config_at(5.0).unwrap();
    assert!(quiet.point(1)[0] <= 3.0 / 1e4);
}

#[test]
fn scenario_file_round_trip_of_generators() {
    for spec in [
        GeneratorSpec::Chebyshev { s: 3, n: 5, horizon: 1.0 },
        GeneratorSpec::Split { n: 6 },
        GeneratorSpec::UnitSquareSwap,
    ] {
        let sc = spec.build().unwrap();
        let text = scenario_to_toml(&sc).unwrap();
        let back = parse_scenario(&text).unwrap();
        for t in [0.0, 0.3, sc.horizon()] {
            assert_eq!(sc.config_at(t).unwrap(), back.config_at(t).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn input_distance_is_pseudometric(seed in any::<u64>(), a in 0.0..1.0f64, b in 0.0..1.0f64, c in 0.0..1.0f64) {
        let sc = random_polynomial_scenario(&mut seeded(seed), "pm", 4, 2, 3, 1.0).unwrap();
        let d = |x, y| sc.input_distance(x, y).unwrap();
        prop_assert_eq!(d(a, a), 0.0);
        prop_assert!((d(a, b) - d(b, a)).abs() < 1e-15);
        prop_assert!(d(a, c) <= d(a, b) + d(b, c) + 1e-12);
    }

    #[test]
    fn markov_bound_on_unit_range_polynomials(seed in any::<u64>(), s in 1usize..=6, horizon in 0.5..4.0f64) {
        let p = random_unit_poly(&mut seeded(seed), s, horizon).unwrap();
        let dp = p.derivative();
        let bound = (s * s) as f64 / horizon;
        let (lo, hi) = poly_range(&dp, 0.0, horizon);
        prop_assert!(lo.abs().max(hi.abs()) <= bound + 1e-6);
    }
}

#[test]
fn generator_form_keeps_construction() {
    let spec = GeneratorSpec::Split { n: 6 };
    let sc = spec.build().unwrap().with_lipschitz(2.0);
    let back = parse_scenario(&generator_to_toml(&spec, &sc).unwrap()).unwrap();
    assert_eq!(back, sc);
    let random = GeneratorSpec::RandomPolynomial { n: 5, d: 2, s: 3, horizon: 1.0, seed: 9 };
    assert_eq!(random.build().unwrap(), random.build().unwrap());
}
