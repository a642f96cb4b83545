use proptest::prelude::*;

use lfvm::array::{calibrate_power_model, inaccessible_fraction, retention_power, ArrayConfig, GateLeakLaw, ModelShape, Tech, TechParams};
use lfvm::cell::{parse_script, CellOp};
use lfvm::lgd::{equilibria, free_energy, step_quasistatic, AfeBranchState, LgdParams};
use lfvm::reliability::{fit_endurance, fit_line, fit_retention};

fn lgd_params() -> impl Strategy<Value = LgdParams> {
    (0.05f64..3.0, -4.0f64..4.0, 0.05f64..3.0).prop_map(|(a, b, x)| LgdParams::new(a, b, x, 1.0, 1.0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stable_roots_are_local_energy_minima(params in lgd_params(), e in -2.0f64..2.0) {
        let eq = equilibria(&params, e).unwrap();
        prop_assert!(eq.windows(2).all(|w| w[0].p < w[1].p));
        prop_assert!(eq.iter().any(|q| q.stable));
        for q in eq.iter().filter(|q| q.stable) {
            let g = free_energy(&params, q.p, e);
            for dp in [-1e-3, 1e-3] {
                prop_assert!(free_energy(&params, q.p + dp, e) >= g);
            }
        }
    }

    #[test]
    fn continuation_stays_on_a_stable_branch(params in lgd_params(), fields in prop::collection::vec(-1.5f64..1.5, 1..40)) {
        let mut state = AfeBranchState::virgin(&params).unwrap();
        for e in fields {
            state = step_quasistatic(&state, &params, e).state;
            prop_assert!(state.is_valid(&params), "{state:?}");
        }
    }

    #[test]
    fn zero_field_step_is_identity(params in lgd_params()) {
        let s = AfeBranchState::virgin(&params).unwrap();
        let next = step_quasistatic(&s, &params, 0.0);
        prop_assert_eq!(next.state, s);
        prop_assert!(!next.switched);
    }

    #[test]
    fn line_fit_recovers_exact_lines(slope in -3.0f64..3.0, intercept in -5.0f64..5.0, n in 3usize..20) {
        let xs: Vec<f64> = (0..n).map(|k| k as f64 * 0.7 - 1.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| intercept + slope * x).collect();
        let fit = fit_line(&xs, &ys).unwrap();
        prop_assert!((fit.slope - slope).abs() < 1e-9);
        prop_assert!((fit.intercept - intercept).abs() < 1e-9);
    }

    #[test]
    fn endurance_crossing_matches_closed_form(mw0 in 0.5f64..2.0, per_decade in 0.01f64..0.2) {
        let pts: Vec<(f64, f64)> = (0..=8).map(|k| (10f64.powi(k), mw0 - per_decade * k as f64)).collect();
        let fit = fit_endurance(&pts, mw0).unwrap();
        let expect = 10f64.powf(0.5 * mw0 / per_decade);
        prop_assert!((fit.crossing.unwrap() / expect - 1.0).abs() < 1e-6);
    }

    #[test]
    fn retention_crossing_matches_closed_form(r0 in 2.0f64..6.0, a in 0.0f64..0.2, b in 0.01f64..0.3) {
        // log10(ratio) = r0 - (a + b) log10 t falls to 1 at t = 10^((r0 - 1) / (a + b)).
        let ts: Vec<f64> = (0..10).map(|k| 10f64.powf(0.5 * k as f64)).collect();
        let on: Vec<(f64, f64)> = ts.iter().map(|&t| (t, 10f64.powf(r0 - 9.0) * t.powf(-a))).collect();
        let off: Vec<(f64, f64)> = ts.iter().map(|&t| (t, 1e-9 * t.powf(b))).collect();
        let fit = fit_retention(&on, &off, 10.0).unwrap();
        let expect = 10f64.powf((r0 - 1.0) / (a + b));
        prop_assert!((fit.crossing.unwrap() / expect - 1.0).abs() < 1e-6);
    }

    #[test]
    fn two_term_model_recovers_its_coefficients(p_cell in 1e-13f64..1e-9, c in 1e-15f64..1e-12) {
        let truth = TechParams { tech: Tech::Af2T1, p_cell, c_parasitic: c, e_refresh_row: 0.0, t_retention_cell: 0.0, t_refresh_row: 0.0 };
        let ends: Vec<(usize, f64)> = [1024usize, 262_144]
            .iter()
            .map(|&n| (n, retention_power(&truth, &ArrayConfig::with_bits(n).unwrap())))
            .collect();
        let fit = calibrate_power_model(&truth, &ends, ModelShape::LinearSuperlinear).unwrap();
        prop_assert!((fit.params.p_cell / p_cell - 1.0).abs() < 1e-9);
        prop_assert!((fit.params.c_parasitic / c - 1.0).abs() < 1e-9);
        prop_assert!(fit.max_rel_residual < 1e-9);
    }

    #[test]
    fn power_grows_with_size(k in 0u32..8) {
        let techs = lfvm::calibration::tech();
        let small = ArrayConfig::with_bits(1024 << k).unwrap();
        let big = ArrayConfig::with_bits(2048 << k).unwrap();
        for t in &techs {
            prop_assert!(retention_power(t, &big) > retention_power(t, &small));
        }
    }

    #[test]
    fn refresh_occupancy_is_linear_in_rows(rows in 1usize..4096, cols in 1usize..64) {
        let techs = lfvm::calibration::tech();
        let edram = techs.iter().find(|t| t.tech == Tech::Edram2T).unwrap();
        let af = techs.iter().find(|t| t.tech == Tech::Af2T1).unwrap();
        let one = inaccessible_fraction(edram, &ArrayConfig::new(1, cols).unwrap());
        let many = inaccessible_fraction(edram, &ArrayConfig::new(rows, cols).unwrap());
        prop_assert!((many - rows as f64 * one).abs() <= 1e-12 * many.abs());
        prop_assert_eq!(inaccessible_fraction(af, &ArrayConfig::new(rows, cols).unwrap()), 0.0);
    }

    #[test]
    fn leak_law_passes_through_anchors(v1 in 0.5f64..1.4, dv in 0.1f64..1.0, p1 in 1e-13f64..1e-10, growth in 1.1f64..10.0) {
        let (a, b) = ((v1, p1), (v1 + dv, p1 * growth));
        let law = GateLeakLaw::calibrate(1024, a, b).unwrap();
        for (v, p) in [a, b] {
            prop_assert!((1024.0 * law.current(v) * v / p - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn script_display_round_trips(ops in prop::collection::vec(op(), 0..20)) {
        let text: String = ops.iter().map(|o| format!("{o}\n")).collect();
        prop_assert_eq!(parse_script(&text).unwrap(), ops);
    }
}

fn op() -> impl Strategy<Value = CellOp> {
    prop_oneof![
        (0usize..64, 0usize..64, any::<bool>()).prop_map(|(row, col, bit)| CellOp::Write { row, col, bit }),
        (0usize..64, 0usize..64).prop_map(|(row, col)| CellOp::Erase { row, col }),
        (0usize..64, 0usize..64).prop_map(|(row, col)| CellOp::Read { row, col }),
        (0.0f64..1e6, prop::option::of(-1.0f64..3.0)).prop_map(|(seconds, v_m)| CellOp::Hold { seconds, v_m }),
    ]
}
