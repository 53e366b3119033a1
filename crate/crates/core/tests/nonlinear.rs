mod common;

use fracvoigt::gamma::rgamma;
use fracvoigt::nonlinear::{
    apply_t, check_hypotheses, residual, solve_nonlinear, BuiltinLaw, ConstitutiveLaw, LawTable,
    ProbeConfig,
};
use fracvoigt::voigt::linear_strain;
use fracvoigt::{Grid, Signal, SolverConfig, VoigtParams};
use proptest::prelude::*;

fn unit(n: usize) -> Grid {
    Grid::new(1.0, n).unwrap()
}

fn example() -> VoigtParams {
    VoigtParams::new(1.0, 2.0, 0.5).unwrap()
}

fn reciprocal() -> ConstitutiveLaw {
    ConstitutiveLaw::expression("1/(1+eps)").unwrap()
}

#[test]
fn first_iterate_is_the_unit_stress_strain() {
    let g = unit(128);
    let t0 = apply_t(&example(), &reciprocal(), &Signal::zeros(g)).unwrap();
    let unit_strain = linear_strain(&example(), &Signal::from_fn(g, |_| 1.0).unwrap()).unwrap();
    assert_eq!(t0, unit_strain);
}

#[test]
fn worked_example_solution_is_positive_and_bounded() {
    let r = solve_nonlinear(
        &example(),
        &reciprocal(),
        unit(256),
        &SolverConfig::default(),
    )
    .unwrap();
    assert!(r.converged);
    let v = r.solution.values();
    assert_eq!(v[0], 0.0);
    assert!(v[1..].iter().all(|&x| x > 0.0));
    assert!(r.solution.sup_norm() <= rgamma(1.5));
    let res = residual(&example(), &reciprocal(), &r.solution).unwrap();
    assert!(res <= 10.0 * 1e-8, "{res}");
}

#[test]
fn builtin_and_expression_laws_agree() {
    let cfg = SolverConfig::default();
    let a = solve_nonlinear(&example(), &reciprocal(), unit(64), &cfg).unwrap();
    let b = solve_nonlinear(
        &example(),
        &ConstitutiveLaw::builtin(BuiltinLaw::Reciprocal),
        unit(64),
        &cfg,
    )
    .unwrap();
    assert_eq!(a.solution, b.solution);
}

#[test]
fn order_one_matches_rk4() {
    let p = VoigtParams::new(1.0, 2.0, 1.0).unwrap();
    for (law, f) in [
        (
            BuiltinLaw::Reciprocal,
            (|y: f64| 1.0 / (1.0 + y) - 2.0 * y) as fn(f64) -> f64,
        ),
        (BuiltinLaw::ExpDecay, |y: f64| (-y).exp() - 2.0 * y),
    ] {
        let r = solve_nonlinear(
            &p,
            &ConstitutiveLaw::builtin(law),
            unit(512),
            &SolverConfig::default(),
        )
        .unwrap();
        let reference = common::rk4_on_grid(f, 1.0, 512, 196);
        let err = r
            .solution
            .values()
            .iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-3, "{law:?}: {err}");
    }
}

#[test]
fn damping_reaches_the_same_solution() {
    let plain = solve_nonlinear(
        &example(),
        &reciprocal(),
        unit(64),
        &SolverConfig::default(),
    )
    .unwrap();
    let cfg = SolverConfig {
        damping: 0.5,
        ..Default::default()
    };
    let damped = solve_nonlinear(&example(), &reciprocal(), unit(64), &cfg).unwrap();
    assert!(damped.converged);
    assert!(damped.iterations > plain.iterations);
    assert!(plain.solution.sup_distance(&damped.solution).unwrap() < 1e-7);
}

#[test]
fn non_convergence_is_reported_not_raised() {
    let cfg = SolverConfig {
        max_iter: 2,
        ..Default::default()
    };
    let r = solve_nonlinear(&example(), &reciprocal(), unit(64), &cfg).unwrap();
    assert!(!r.converged);
    assert_eq!(r.iterations, 2);
    assert!(r.final_diff >= cfg.tol);
}

#[test]
fn law_errors_propagate() {
    // σ(ε) = log(ε) is undefined at the initial iterate ε ≡ 0
    let law = ConstitutiveLaw::expression("log(eps)").unwrap();
    assert!(solve_nonlinear(&example(), &law, unit(16), &SolverConfig::default()).is_err());
    let table = ConstitutiveLaw::table(LawTable::new(vec![0.0, 0.1], vec![1.0, 0.9]).unwrap());
    let eps = Signal::from_fn(unit(4), |t| t).unwrap();
    assert!(apply_t(&example(), &table, &eps).is_err());
}

#[test]
fn tabulated_law_tracks_the_expression() {
    let xs: Vec<f64> = (0..=400).map(|k| k as f64 / 200.0).collect();
    let ys: Vec<f64> = xs.iter().map(|x| 1.0 / (1.0 + x)).collect();
    let table = ConstitutiveLaw::table(LawTable::new(xs, ys).unwrap());
    let cfg = SolverConfig::default();
    let a = solve_nonlinear(&example(), &table, unit(128), &cfg).unwrap();
    let b = solve_nonlinear(&example(), &reciprocal(), unit(128), &cfg).unwrap();
    assert!(a.solution.sup_distance(&b.solution).unwrap() < 1e-5);
}

#[test]
fn hypothesis_checks() {
    let probe = ProbeConfig::default();
    let r = check_hypotheses(&reciprocal(), &probe).unwrap();
    assert!(r.is_decreasing && r.is_convex && r.verdict);
    assert_eq!(r.sigma_at_zero, 1.0);
    assert!(r.e0_estimate > 1e7 && r.e_inf_estimate < 1e-15);

    let r = check_hypotheses(&ConstitutiveLaw::expression("eps").unwrap(), &probe).unwrap();
    assert!(!r.is_decreasing && !r.verdict);

    let r = check_hypotheses(&ConstitutiveLaw::expression("exp(-eps)").unwrap(), &probe).unwrap();
    assert!(r.is_decreasing && r.is_convex && r.verdict);

    // decreasing and convex but σ(ε)/ε stays bounded near 0
    let r = check_hypotheses(&ConstitutiveLaw::builtin(BuiltinLaw::Zero), &probe).unwrap();
    assert!(r.is_decreasing && r.is_convex && !r.verdict);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn operator_preserves_positivity(
        alpha in 0.1f64..=1.0,
        a in 0.0f64..5.0,
        w in 0.0f64..20.0,
        law in prop_oneof![Just(BuiltinLaw::Reciprocal), Just(BuiltinLaw::ExpDecay), Just(BuiltinLaw::Unit)],
    ) {
        let p = VoigtParams::new(1.0, 2.0, alpha).unwrap();
        let eps = Signal::from_fn(unit(64), |t| a * (w * t).sin().powi(2)).unwrap();
        let out = apply_t(&p, &ConstitutiveLaw::builtin(law), &eps).unwrap();
        prop_assert!(out.values().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn operator_is_antitone_for_decreasing_laws(
        alpha in 0.1f64..=1.0,
        base in prop::collection::vec(0.0f64..3.0, 65),
        bump in prop::collection::vec(0.0f64..1.0, 65),
    ) {
        let p = VoigtParams::new(1.0, 2.0, alpha).unwrap();
        let lo = Signal::new(unit(64), base.clone()).unwrap();
        let hi = Signal::new(unit(64), base.iter().zip(&bump).map(|(x, d)| x + d).collect()).unwrap();
        let law = reciprocal();
        let (t_lo, t_hi) = (apply_t(&p, &law, &lo).unwrap(), apply_t(&p, &law, &hi).unwrap());
        for (a, b) in t_lo.values().iter().zip(t_hi.values()) {
            prop_assert!(a + 1e-15 >= *b);
        }
    }
}
