use gausslab::expsum;
use gausslab::gauss::GaussInt;
use gausslab::sieve::{self, Dist, LsKind, LsParams, QForm};
use gausslab::C64;
use proptest::prelude::*;

#[test]
fn sequences_are_seeded() {
    let a = sieve::coeff_gen(4.0, Dist::Gaussian, 3).unwrap();
    let b = sieve::coeff_gen(4.0, Dist::Gaussian, 3).unwrap();
    let c = sieve::coeff_gen(4.0, Dist::Gaussian, 4).unwrap();
    assert_eq!(a.entries(), b.entries());
    assert_ne!(a.entries(), c.entries());
    let u = sieve::coeff_gen(4.0, Dist::Unit, 0).unwrap();
    assert!(u.entries().iter().all(|e| e.1.abs() == 1.0));
}

#[test]
fn zero_frequency_term_matches_split() {
    let a = sieve::coeff_gen(1.5, Dist::Gaussian, 2).unwrap();
    let split = sieve::poisson_split(&a, 4.0, 1.5).unwrap();
    let z = sieve::zero_freq_z(&a, 4.0, 1.5).unwrap();
    assert!((split.z - z).abs() < 1e-9 * (1.0 + z.abs()), "{} vs {z}", split.z);
    assert!(split.residual < split.budget, "{split:?}");
}

#[test]
fn q_forms_on_small_instance() {
    let a = sieve::coeff_band(1.5, 3.0, Dist::Gaussian, 5, 0).unwrap();
    let k = sieve::q_main(&a, 4.0, 3.0, QForm::Kloosterman).unwrap();
    let s = sieve::q_main(&a, 4.0, 3.0, QForm::Shifted).unwrap();
    assert!((k - s).abs() < 1e-8 * k.abs());
}

#[test]
fn ratios_are_reproducible() {
    let p = LsParams { c_max: 3.0, n: 10.0, width: 10.0, ..LsParams::default() };
    for kind in LsKind::ALL {
        let a = sieve::ls_ratios(kind, &p, 3, 9).unwrap();
        let b = sieve::ls_ratios(kind, &p, 3, 9).unwrap();
        assert_eq!(a.stable_json(), b.stable_json(), "{}", kind.name());
        assert!(a.lhs.is_finite(), "{}", kind.name());
    }
}

fn any_gauss(r: i64) -> impl Strategy<Value = GaussInt> {
    (-r..=r, -r..=r).prop_map(|(a, b)| GaussInt::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ramanujan_divisor_formula(n in any_gauss(12), c in any_gauss(5)) {
        prop_assume!(!c.is_zero());
        let fast = sieve::ramanujan_fast(n, c).unwrap();
        let direct = expsum::ramanujan(n, c).unwrap().value();
        prop_assert!((fast - direct.re).abs() < 1e-9 && direct.im.abs() < 1e-9);
    }

    #[test]
    fn disc_integral_forms(r in 0.0f64..6.0, phi in -3.0f64..3.0, rho in 0.2f64..2.0) {
        let a = sieve::disc_integral(r, rho);
        let b = sieve::disc_integral_polar(C64::from_polar(r, phi), rho);
        prop_assert!((a - b).abs() < 1e-9 * (1.0 + a.abs()));
    }

    #[test]
    fn eisenstein_weight_identity(r in 0.2f64..2.5, th in -3.0f64..3.0, t in 3.0f64..6.0) {
        prop_assert!(sieve::weight_identity_residual(C64::from_polar(r, th), t).unwrap() < 1e-8);
    }
}
