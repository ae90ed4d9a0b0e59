use std::f64::consts::{PI, TAU};

use arcsupport::build_profile;
use arcsupport::fuzz::{random_simple_arc, safe_range, FuzzConfig};
use arcsupport::oracle::{monotone_chain_hull, oracle_touch_set, same_cycle};
use arcsupport::{
    ccw_gap, corollary_check, enumerate_triples, eval_piecewise, find_pair, interval_sub,
    melkman_hull, orient, scan_ledger, unique_crossing_continuous, verify_triple, Angle, Interval,
    Orientation, Point2, PolygonalArc, ScanMode, SupportProfile, Tolerances,
};
use proptest::prelude::*;

fn fuzz_arc(trial: u64) -> (PolygonalArc, SupportProfile) {
    let cfg = FuzzConfig {
        seed: 7,
        ..Default::default()
    };
    let arc = random_simple_arc(&cfg, trial).unwrap();
    let profile = build_profile(&melkman_hull(&arc, arc.tolerances()).unwrap()).unwrap();
    (arc, profile)
}

fn point() -> impl Strategy<Value = Point2> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| Point2::new(x, y))
}

fn mode() -> impl Strategy<Value = ScanMode> {
    prop_oneof![Just(ScanMode::Mountain), Just(ScanMode::Valley)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ccw_gaps_sum_to_zero_or_full_turn(a in 0.0..TAU, b in 0.0..TAU) {
        let (a, b) = (Angle::new(a), Angle::new(b));
        let s = ccw_gap(a, b) + ccw_gap(b, a);
        prop_assert!(s.abs() < 1e-12 || (s - TAU).abs() < 1e-12, "{}", s);
    }

    #[test]
    fn interval_sub_contains_differences(
        a in -5.0..5.0f64, b in -5.0..5.0f64, c in -5.0..5.0f64, d in -5.0..5.0f64,
        u in 0.0..=1.0f64, v in 0.0..=1.0f64,
    ) {
        let (i, j) = (Interval::new(a, b), Interval::new(c, d));
        let k = interval_sub(i, j);
        prop_assert!(k.lo <= k.hi);
        let x = i.lo + u * (i.hi - i.lo);
        let y = j.lo + v * (j.hi - j.lo);
        prop_assert!(k.contains(x - y, 1e-12));
    }

    #[test]
    fn orient_is_antisymmetric(p in point(), q in point(), r in point()) {
        let tol = Tolerances::default();
        let a = orient(p, q, r, &tol);
        let b = orient(p, r, q, &tol);
        if a != Orientation::Collinear && b != Orientation::Collinear {
            prop_assert_eq!(a.sign(), -b.sign());
        }
    }

    #[test]
    fn rotation_shifts_steps(trial in 0u64..500, phi in 0.0..TAU) {
        let (arc, p) = fuzz_arc(trial);
        let rot = arc.rotated(phi).unwrap();
        let q = build_profile(&melkman_hull(&rot, rot.tolerances()).unwrap()).unwrap();
        prop_assert_eq!(p.levels().len(), q.levels().len());
        for (a, b) in p.levels().iter().zip(q.levels()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        for (s, t) in p.steps.iter().zip(&q.steps) {
            prop_assert!(Angle::new(s.start + phi).distance(Angle::new(t.start)) < 1e-9);
        }
    }

    #[test]
    fn scaling_keeps_angles(trial in 0u64..500, m in mode()) {
        let (arc, p) = fuzz_arc(trial);
        let unit = arc.scale_to_unit();
        let q = build_profile(&melkman_hull(&unit, unit.tolerances()).unwrap()).unwrap();
        prop_assert!((p.delta_1 - q.delta_1).abs() < 1e-9 && (p.delta_n - q.delta_n).abs() < 1e-9);
        let a = find_pair(&p, &arc, PI, m).unwrap();
        let b = find_pair(&q, &unit, PI, m).unwrap();
        prop_assert!(a.theta_single.distance(b.theta_single) < 1e-9);
        prop_assert!(a.theta_double.distance(b.theta_double) < 1e-9);
        for (s, t) in a.triple().iter().zip(b.triple()) {
            prop_assert!((s / arc.length() - t).abs() < 1e-9);
        }
    }

    #[test]
    fn eval_t_is_periodic(trial in 0u64..500, theta in 0.0..TAU) {
        let (_, p) = fuzz_arc(trial);
        prop_assert_eq!(p.eval_t(Angle::new(theta)), p.eval_t(Angle::new(theta + TAU)));
    }

    #[test]
    fn profile_matches_projection_oracle(trial in 0u64..500, theta in 0.0..TAU) {
        let (arc, p) = fuzz_arc(trial);
        let theta = Angle::new(theta);
        prop_assert_eq!(p.eval_t(theta).params(), oracle_touch_set(&arc, theta, arc.tolerances()).params());
        for j in &p.jumps {
            let want = oracle_touch_set(&arc, j.angle, arc.tolerances());
            prop_assert_eq!(p.eval_t(j.angle).params(), want.params());
        }
    }

    #[test]
    fn melkman_matches_monotone_chain(trial in 0u64..500) {
        let (arc, _) = fuzz_arc(trial);
        let mel = melkman_hull(&arc, arc.tolerances()).unwrap().points();
        let mc = monotone_chain_hull(arc.vertices(), arc.tolerances()).unwrap();
        prop_assert!(same_cycle(&mel, &mc));
    }

    #[test]
    fn cross_sections_are_short(trial in 0u64..500) {
        let (_, p) = fuzz_arc(trial);
        for s in p.levels() {
            let c = p.cross_section(s).unwrap();
            prop_assert!(c.width() < PI - p.tol.eps_angle);
        }
        prop_assert!(p.delta_1 > 0.0 && p.delta_1 < PI && p.delta_n > 0.0 && p.delta_n < PI);
    }

    #[test]
    fn levels_rise_then_fall(trial in 0u64..500) {
        let (_, p) = fuzz_arc(trial);
        let lv = p.levels();
        prop_assert!(lv[..=p.apex_step].windows(2).all(|w| w[0] < w[1]));
        prop_assert!(lv[p.apex_step..].windows(2).all(|w| w[0] > w[1]));
        prop_assert!((p.width_sum() - TAU).abs() < lv.len() as f64 * 1e-9);
    }

    #[test]
    fn ledger_is_monotone_and_filled(trial in 0u64..500, m in mode()) {
        let (_, p) = fuzz_arc(trial);
        let ledger = scan_ledger(&p, m);
        prop_assert!((ledger.last().unwrap().gap_interval.hi - TAU).abs() < 1e-9);
        for w in ledger.windows(2) {
            // the scan moves away from the pivot level, so gaps only grow
            prop_assert!(w[1].gap_interval.lo >= w[0].gap_interval.lo - 1e-12);
            prop_assert!(w[1].gap_interval.hi >= w[0].gap_interval.hi - 1e-12);
            prop_assert!((w[1].gap_interval.lo - w[0].gap_interval.hi).abs() < 1e-9);
        }
    }

    #[test]
    fn safe_range_pairs_are_strict_and_verified(trial in 0u64..500, m in mode(), u in 0.0..=1.0f64) {
        let (arc, p) = fuzz_arc(trial);
        let (lo, hi) = safe_range(&p, m, 1e-3);
        let delta = lo + u * (hi - lo);
        let pair = find_pair(&p, &arc, delta, m).unwrap();
        prop_assert!(pair.strict && pair.guaranteed);
        prop_assert!(verify_triple(&arc, &pair, arc.tolerances()).unwrap().passed());
        let configs = enumerate_triples(&p, &arc, delta).unwrap();
        prop_assert!(configs.iter().any(|c| c.same_configuration(&pair, p.tol.eps_angle, p.param_tol)));
    }

    #[test]
    fn every_pair_verifies(trial in 0u64..500, m in mode(), delta in 0.01..(TAU - 0.01)) {
        let (arc, p) = fuzz_arc(trial);
        let pair = find_pair(&p, &arc, delta, m).unwrap();
        prop_assert!(verify_triple(&arc, &pair, arc.tolerances()).unwrap().passed());
    }

    #[test]
    fn corollary_holds_at_pi(trial in 0u64..500) {
        let (arc, p) = fuzz_arc(trial);
        prop_assert!(corollary_check(&p, &arc, PI).unwrap().identical);
    }

    #[test]
    fn tent_crossing_is_closed_form(peak in 0.3..6.0f64, delta in 0.01..(TAU - 0.01)) {
        let f = vec![(0.0, 0.0), (peak, 1.0), (TAU, 0.0)];
        let x = unique_crossing_continuous(&f, delta).unwrap();
        let g = |x: f64| eval_piecewise(&f, x) - eval_piecewise(&f, x + delta);
        prop_assert!(g(x).abs() < 1e-10, "residual {}", g(x));
        if (peak - PI).abs() < 1e-12 {
            prop_assert!((x - (TAU - delta) / 2.0).abs() < 1e-10);
        }
    }
}

#[test]
fn symmetric_tent_closed_form() {
    let f = vec![(0.0, 0.0), (PI, 1.0), (TAU, 0.0)];
    for k in 1..100 {
        let delta = TAU * k as f64 / 100.0;
        let x = unique_crossing_continuous(&f, delta).unwrap();
        assert!((x - (TAU - delta) / 2.0).abs() < 1e-10);
    }
}

#[test]
fn continuous_sweep_finds_one_crossing() {
    for (peak, delta) in [(PI, PI), (PI / 2.0, PI), (2.0, 1.0), (4.5, 5.0)] {
        let f = vec![(0.0, 0.0), (peak, 1.0), (TAU, 0.0)];
        let g = |x: f64| eval_piecewise(&f, x) - eval_piecewise(&f, x + delta);
        let n = ((TAU - delta) / 1e-4) as usize;
        let changes = (1..=n)
            .filter(|&k| g((k - 1) as f64 * 1e-4) * g(k as f64 * 1e-4) < 0.0)
            .count();
        let touches = (0..=n).filter(|&k| g(k as f64 * 1e-4) == 0.0).count();
        assert_eq!(changes + touches, 1, "peak {peak} delta {delta}");
    }
}
