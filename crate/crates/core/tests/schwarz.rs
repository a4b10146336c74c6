mod common;

use pentablock::domains::{in_penta, Criterion, Mode};
use pentablock::gamma_inner::gamma_fraction;
use pentablock::penta_inner::{verify_penta_map, PentaMap};
use pentablock::sampling::{circle_point, disc_point};
use pentablock::schwarz::{
    feasibility, radius_match_blaschke, schwarz_special, solve, triangular_contraction_check, ConstructionPath,
    SchwarzError, SchwarzProblem, COND_A, COND_F, COND_S,
};
use pentablock::{Complex, PentaPoint};
use proptest::prelude::*;
use rand::Rng;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solutions_interpolate(seed in any::<u64>()) {
        let p = common::feasible_problem(&mut common::seeded(seed));
        match solve(&p) {
            Ok(sol) => {
                let zero = c(0.0, 0.0);
                prop_assert!(sol.x.eval(zero).distance(&PentaPoint::new(zero, zero, zero)) <= 1e-12);
                prop_assert!(sol.x.eval(p.lambda0).distance(&p.target) <= 1e-8);
                prop_assert!(sol.x.verify().passed());
                prop_assert!(p.target.a.norm() <= sol.aux.reach + 1e-9);
            }
            // Only the reach of the constructed Γ-interpolant may fall short.
            Err(SchwarzError::OutOfReach { a_abs, reach, bound }) => {
                prop_assert!(a_abs > reach && reach <= bound + 1e-9);
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn reach_is_always_attained(seed in any::<u64>(), frac in 0.0f64..=1.0) {
        // Any |a0| up to |λ0|·|A/D(λ0)| is solvable, the extreme value included.
        let mut rng = common::seeded(seed);
        let mut p = common::feasible_problem(&mut rng);
        p.target.a = c(0.0, 0.0);
        let reach = solve(&p).unwrap().aux.reach;
        p.target.a = frac * reach * circle_point(&mut rng);
        let sol = solve(&p).unwrap();
        prop_assert!(sol.x.eval(p.lambda0).distance(&p.target) <= 1e-8);
        if frac == 1.0 {
            prop_assert!(sol.aux.gamma.is_some());
        }
    }

    #[test]
    fn infeasible_problems_name_the_condition(seed in any::<u64>(), kind in 0usize..3) {
        let p = common::infeasible_problem(&mut common::seeded(seed), kind);
        match solve(&p) {
            Err(SchwarzError::Infeasible(cert)) => prop_assert_eq!(cert.binding, [COND_S, COND_F, COND_A][kind]),
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn special_matches_contraction_check(seed in any::<u64>()) {
        let mut rng = common::seeded(seed);
        let l0 = disc_point(&mut rng, 0.95);
        prop_assume!(l0.norm() > 0.05);
        let (l1, l2, a0) = (disc_point(&mut rng, 1.0), disc_point(&mut rng, 1.0), disc_point(&mut rng, 1.0));
        let ok = triangular_contraction_check(l1 / l0, l2 / l0, a0 / l0);
        let f = schwarz_special(l0, l1, l2, a0);
        prop_assert_eq!(ok, f.is_ok());
        if let Ok(f) = f {
            prop_assert!(f.eval(l0).distance(&PentaPoint::new(a0, l1 + l2, l1 * l2)) <= 1e-12);
            prop_assert!(in_penta(f.eval(disc_point(&mut rng, 1.0)), Mode::Closed, Criterion::Beta, 1e-9).inside);
        }
    }

    #[test]
    fn radius_match_postcondition(seed in any::<u64>(), frac in 0.0f64..=1.0) {
        let mut rng = common::seeded(seed);
        let l0 = disc_point(&mut rng, 0.99);
        prop_assume!(l0.norm() > 1e-3);
        let rho = frac * l0.norm();
        let m = radius_match_blaschke(l0, rho).unwrap();
        prop_assert!(m.degree() <= 2);
        prop_assert!(m.eval(c(0.0, 0.0)).unwrap().norm() <= 1e-15);
        prop_assert!((m.eval(l0).unwrap() - rho * l0 / l0.norm()).norm() <= 1e-12);
    }
}

#[test]
fn spec_examples() {
    let r = |x: f64| c(x, 0.0);
    let sol = solve(&SchwarzProblem::new(r(0.5), PentaPoint::new(r(0.5), r(0.0), r(0.25))).unwrap()).unwrap();
    assert!(sol.x.eval(r(0.5)).distance(&PentaPoint::new(r(0.5), r(0.0), r(0.25))) <= 1e-8);
    let sol = solve(&SchwarzProblem::new(r(0.5), PentaPoint::new(r(0.25), r(0.0), r(0.5))).unwrap()).unwrap();
    assert_eq!(sol.path, ConstructionPath::EqualityPEq);
    let sol = solve(&SchwarzProblem::new(r(0.3), PentaPoint::new(r(0.0), r(0.6), r(0.09))).unwrap()).unwrap();
    assert_eq!(sol.path, ConstructionPath::EqualityPLt);
}

#[test]
fn sufficient_bound_overshoots_in_the_interior() {
    // F < |λ0| and |a0| < |λ0|√(1 − ¼|s0|²), yet |a0| exceeds the necessary
    // β-form bound |λ0|·β-bound = 0.455, so no interpolant exists.
    let r = |x: f64| c(x, 0.0);
    let p = SchwarzProblem::new(r(0.5), PentaPoint::new(r(0.47), r(0.6), r(0.09))).unwrap();
    let cert = feasibility(&p);
    assert!(cert.feasible);
    assert!(gamma_fraction(r(0.6), r(0.09)) < 0.5);
    assert!(!cert.beta_bound_ok && (cert.a_bound_beta - 0.455).abs() < 1e-12);
    assert!(matches!(solve(&p), Err(SchwarzError::OutOfReach { .. })));
}

#[test]
fn special_map_is_inner_only_when_extremal() {
    // λ·I gives (0, 2λ, λ²).
    let f = schwarz_special(c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)).unwrap();
    assert!(verify_penta_map(&f, 256, 16).passed());
    let mut rng = common::rng(31);
    let _ = rng.gen::<u8>();
    let g = schwarz_special(c(0.5, 0.0), c(0.2, 0.0), c(0.1, 0.0), c(0.1, 0.0)).unwrap();
    assert!(!verify_penta_map(&g, 256, 16).passed());
}
