mod common;

use pentablock::sampling::{circle, disc_point};
use pentablock::{BlaschkeProduct, Complex, ComplexPoly};
use proptest::prelude::*;
use rand::Rng;

fn poly(seed: u64, deg: usize) -> ComplexPoly {
    let mut rng = common::seeded(seed);
    ComplexPoly::new((0..=deg).map(|_| disc_point(&mut rng, 2.0)).collect())
}

proptest! {
    #[test]
    fn involution_is_involutive(seed in any::<u64>(), deg in 0usize..8, extra in 0usize..3) {
        let g = poly(seed, deg);
        let n = deg + extra;
        let back = g.involution(n).unwrap().involution(n).unwrap();
        prop_assert!(back.distance(&g) <= 1e-12 * g.max_abs_coeff().max(1.0));
    }

    #[test]
    fn roots_evaluate_to_zero(seed in any::<u64>(), deg in 1usize..12) {
        let p = poly(seed, deg);
        prop_assume!(p.degree() == Some(deg));
        let roots = p.roots().unwrap();
        prop_assert_eq!(roots.len(), deg);
        for r in roots {
            let scale: f64 = p.coeffs().iter().rev().fold(0.0, |acc, c| acc * r.norm() + c.norm());
            prop_assert!(p.eval(r).norm() <= 1e-9 * (1.0 + scale), "|p({r})| = {}", p.eval(r).norm());
        }
    }

    #[test]
    fn roots_rebuild_polynomial(seed in any::<u64>(), deg in 1usize..8) {
        let mut rng = common::seeded(seed);
        let want: Vec<Complex> = (0..deg).map(|_| disc_point(&mut rng, 3.0)).collect();
        let p = ComplexPoly::from_roots(&want);
        let got = p.roots().unwrap();
        prop_assert!(pentablock::construct::multiset_distance(&got, &want) <= 1e-6);
    }

    #[test]
    fn product_evaluates_pointwise(s1 in any::<u64>(), s2 in any::<u64>(), d1 in 0usize..6, d2 in 0usize..6) {
        let (f, g) = (poly(s1, d1), poly(s2, d2));
        let z = disc_point(&mut common::seeded(s1 ^ s2), 1.0);
        let lhs = (&f * &g).eval(z);
        prop_assert!((lhs - f.eval(z) * g.eval(z)).norm() <= 1e-10 * (1.0 + lhs.norm()));
        let sum = (&f + &g).eval(z);
        prop_assert!((sum - f.eval(z) - g.eval(z)).norm() <= 1e-12 * (1.0 + sum.norm()));
    }

    #[test]
    fn blaschke_is_unimodular_on_circle(seed in any::<u64>(), deg in 0usize..=6) {
        let b = common::blaschke(&mut common::seeded(seed), deg, 0.95);
        for z in circle(256) {
            prop_assert!((b.eval(z).unwrap().norm() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn compose_rational_matches_naive(seed in any::<u64>(), deg in 0usize..5, extra in 0usize..2) {
        let mut rng = common::seeded(seed);
        let g = poly(seed, deg);
        let k = deg + extra;
        let num = ComplexPoly::new(vec![disc_point(&mut rng, 1.0), disc_point(&mut rng, 1.0)]);
        let den = ComplexPoly::new(vec![Complex::new(1.0, 0.0), disc_point(&mut rng, 0.5)]);
        let comp = g.compose_rational(k, &num, &den).unwrap();
        for _ in 0..64 {
            let z = disc_point(&mut rng, 1.0);
            let d = den.eval(z);
            let naive = g.eval(num.eval(z) / d) * d.powi(k as i32);
            prop_assert!((comp.eval(z) - naive).norm() <= 1e-9 * naive.norm().max(1.0));
        }
    }
}

#[test]
fn blaschke_product_multiplies() {
    let mut rng = common::rng(11);
    let a = common::blaschke(&mut rng, 2, 0.9);
    let b = common::blaschke(&mut rng, 3, 0.9);
    let ab = a.mul(&b);
    assert_eq!(ab.degree(), 5);
    for _ in 0..32 {
        let z = disc_point(&mut rng, 1.0);
        let want = a.eval(z).unwrap() * b.eval(z).unwrap();
        assert!((ab.eval(z).unwrap() - want).norm() < 1e-12);
    }
    assert!(BlaschkeProduct::new(Complex::new(1.0, 0.0), vec![Complex::new(1.0, 0.0)]).is_err());
    let _ = rng.gen::<u8>();
}

#[test]
fn outer_detection() {
    assert!(ComplexPoly::from_real(&[2.0, -1.0]).is_outer().unwrap());
    assert!(ComplexPoly::from_real(&[1.0, -1.0]).is_outer().unwrap());
    assert!(!ComplexPoly::from_real(&[0.5, -1.0]).is_outer().unwrap());
}
