use approx::assert_abs_diff_eq;
use kinetic_emst::lipschitz::*;
use kinetic_emst::spanning::{emst, tree_length};
use kinetic_emst::trajectories::gen_split;
use kinetic_emst::Error;
use proptest::prelude::*;

#[test]
fn closed_form_examples() {
    let ln = integrate(|t: f64| 1.0 / (1.0 + t * t).sqrt(), 0.0, 1.0, 1e-12);
    assert_abs_diff_eq!(ln, (1.0 + 2f64.sqrt()).ln(), epsilon = 1e-10);
    let t = completion_time(1.0, 2.0, 0.0, 1.0).unwrap().unwrap();
    assert_abs_diff_eq!(t, 0.5f64.sinh(), epsilon = 1e-12);
    assert_abs_diff_eq!(budget_integral(2.0, |s| (1.0 + s * s).sqrt(), 0.0, t), 1.0, epsilon = 1e-9);
    assert!(matches!(completion_time(0.0, 1.0, 0.0, 1.0), Err(Error::Parameter(_))));
    assert!(matches!(completion_time(1.0, -1.0, 0.0, 1.0), Err(Error::Parameter(_))));
}

#[test]
fn no_completion_certificate_matches_simulation() {
    for n in [8usize, 16, 32, 64, 128] {
        for c in [0.1, 0.25, 0.5] {
            let budget = c / (n as f64).ln();
            let x_min = 1.0 / n as f64;
            let reach = budget * (1.0 / x_min + (1.0 + 1.0 / (x_min * x_min)).sqrt()).ln();
            assert!(reach < 1.0, "n={n} c={c}");
            assert!(split_no_completion(n, budget));
            for j in 1..n {
                let x = j as f64 / n as f64;
                assert_eq!(completion_time(x, budget, 0.0, 1.0).unwrap(), None);
            }
            if n <= 64 {
                let run = run_lipschitz_regime(&gen_split(n).unwrap(), budget, None, 11).unwrap();
                assert_eq!(run.completed, 0, "n={n} c={c}");
            }
        }
    }
}

#[test]
fn generous_budget_completes_slides() {
    let n = 8;
    let run = run_lipschitz_regime(&gen_split(n).unwrap(), 10.0 * n as f64, None, 101).unwrap();
    assert!(run.completed >= 1);
    assert_abs_diff_eq!(run.ratio, 1.604344518384, epsilon = 1e-9);
    for s in run.slides.iter().filter(|s| s.end.is_some()) {
        assert!((s.budget_used - 1.0).abs() <= 1e-6, "{}", s.budget_used);
    }
}

#[test]
fn tight_budget_run_pinned() {
    let n = 64;
    let run = run_lipschitz_regime(&gen_split(n).unwrap(), 0.1 / (n as f64).ln(), None, 101).unwrap();
    assert_eq!(run.completed, 0);
    assert_abs_diff_eq!(run.ratio, 20.217209983012, epsilon = 1e-9);
    assert!(run.ratio >= n as f64 / 8.0);
    assert_abs_diff_eq!(run.records[0].ratio, 1.0, epsilon = 1e-12);
    assert_eq!(run.final_tree, emst(&gen_split(n).unwrap().config_at(0.0).unwrap()).unwrap());
}

#[test]
fn csv_header() {
    let run = run_lipschitz_regime(&gen_split(6).unwrap(), 1.0, None, 5).unwrap();
    let mut out = Vec::new();
    run.write_csv(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "time,active_slides,completed_slides,tree_length,opt_length,ratio"
    );
}

#[test]
fn emst_passes_any_tree_audit() {
    let sc = gen_split(10).unwrap();
    let cfg = sc.config_at(1.0).unwrap();
    let t = emst(&cfg).unwrap();
    let r = any_tree_bound_audit(&cfg, &t).unwrap();
    assert_abs_diff_eq!(r.ratio, 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(r.total, tree_length(&cfg, &t).unwrap(), epsilon = 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn completion_monotone_in_budget_and_span(x in 0.01..2.0f64, budget in 0.1..20.0f64, t0 in 0.0..0.5f64) {
        let at = |x: f64, k: f64| completion_time(x, k, t0, f64::INFINITY).unwrap().unwrap();
        prop_assert!(at(x, budget * 1.5) <= at(x, budget));
        prop_assert!(at(x * 1.5, budget) >= at(x, budget));
    }

    #[test]
    fn closed_form_matches_quadrature(x in 0.01..2.0f64, budget in 0.5..20.0f64, t0 in 0.0..0.5f64) {
        let t = completion_time(x, budget, t0, f64::INFINITY).unwrap().unwrap();
        let numeric = budget_integral(budget, |s| (x * x + s * s).sqrt(), t0, t);
        prop_assert!((numeric - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn scaling_doubles_both_metrics(x in 0.05..1.0f64, t1 in 0.1..1.0f64, p in 0.0..1.0f64) {
        let sc = gen_split(6).unwrap();
        let (a, b) = (sc.config_at(0.0).unwrap(), sc.config_at(t1).unwrap());
        let d_in = a.max_displacement(&b);
        prop_assert!((a.scaled(2.0).max_displacement(&b.scaled(2.0)) - 2.0 * d_in).abs() < 1e-12);
        let knots = [(0.0, 0.0), (t1 / 2.0, p), (t1, 1.0)];
        let carrier = Carrier::Hyperbolic { x };
        let cost = slide_cost(&knots, |t| carrier.length(t));
        let doubled = slide_cost(&knots, |t| 2.0 * carrier.length(t));
        prop_assert!((doubled - 2.0 * cost).abs() <= 1e-9 * cost.max(1.0));
    }
}
