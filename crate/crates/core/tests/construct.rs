mod common;

use pentablock::construct::{build, e_polynomial, roundtrip_check, royal_target, ConstructError, ConstructionData};
use pentablock::penta_inner::APart;
use pentablock::sampling::{circle, disc_grid};
use pentablock::Complex;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_data_builds_and_round_trips(seed in any::<u64>()) {
        let data = common::construction_data(&mut common::seeded(seed), 4, 3);
        let res = build(&data).unwrap();
        prop_assert!(res.report.passed(), "{}", res.report);
        let rt = roundtrip_check(&res);
        prop_assert!(rt.passed(), "{rt}");
        let h = res.x.gamma();
        for z in circle(128) {
            prop_assert!(h.e().eval(z).norm() <= 2.0 * h.d().eval(z).norm() + 1e-9);
        }
    }

    #[test]
    fn royal_polynomial_identity(seed in any::<u64>()) {
        let data = common::construction_data(&mut common::seeded(seed), 4, 0);
        let res = build(&data).unwrap();
        let h = res.x.gamma();
        let r = royal_target(&data);
        let rh = &(&h.d() .scale_real(4.0) * &h.d_tilde()) - &(h.e() * h.e());
        prop_assert!(rh.distance(&r) <= 1e-6 * r.max_abs_coeff());
        prop_assert!(h.e().distance(&e_polynomial(&data)) <= 1e-12 * h.e().max_abs_coeff());
    }

    #[test]
    fn joint_rescaling_is_invisible(seed in any::<u64>()) {
        // (t₊, t) ↦ (4t₊, 2t) doubles E, D and A together.
        let data = common::construction_data(&mut common::seeded(seed), 4, 2);
        let mut scaled = data.clone();
        scaled.t_plus *= 4.0;
        scaled.t *= 2.0;
        let (x, y) = (build(&data).unwrap().x, build(&scaled).unwrap().x);
        prop_assert!(y.gamma().d().distance(&x.gamma().d().scale_real(2.0)) <= 1e-9 * y.gamma().d().max_abs_coeff());
        if let (APart::Outer { a: ax, .. }, APart::Outer { a: ay, .. }) = (x.a_part(), y.a_part()) {
            prop_assert!(ay.distance(&ax.scale_real(2.0)) <= 1e-9 * ay.max_abs_coeff());
        }
        for z in disc_grid(6) {
            prop_assert!(x.eval(z).distance(&y.eval(z)) <= 1e-9);
        }
    }
}

#[test]
fn t_plus_alone_changes_the_function() {
    // With t fixed, E is unchanged while D is not rescaled by 2, so
    // t₊ ↦ 4t₊ alone is not a symmetry.
    let c = |re: f64| Complex::new(re, 0.0);
    let data = ConstructionData::new(vec![], vec![c(1.0)], vec![], vec![c(0.0)]);
    let mut scaled = data.clone();
    scaled.t_plus *= 4.0;
    let (x, y) = (build(&data).unwrap().x, build(&scaled).unwrap().x);
    assert!(x.eval(c(0.5)).distance(&y.eval(c(0.5))) > 1e-3);
}

#[test]
fn rejects_inconsistent_counts() {
    let c = |re: f64| Complex::new(re, 0.0);
    let data = ConstructionData::new(vec![c(0.1)], vec![], vec![], vec![c(0.0)]);
    assert!(matches!(build(&data), Err(ConstructError::Data(_))));
}
