use std::f64::consts::TAU;

use gausslab::expsum;
use gausslab::gauss::{self, GaussInt, UNITS};
use gausslab::C64;
use proptest::prelude::*;

fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

// Brute-force oracle: residues picked from the box [0, N)², classes
// compared through (x − y)·c̄ ≡ 0 mod N in both coordinates.
struct Naive {
    c: GaussInt,
    n: i64,
    elems: Vec<(i64, i64)>,
}

impl Naive {
    fn new(c: GaussInt) -> Self {
        let n = c.re * c.re + c.im * c.im;
        let mut elems: Vec<(i64, i64)> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if !elems.iter().any(|&e| Self::same(c, n, e, (a, b))) {
                    elems.push((a, b));
                }
            }
        }
        assert_eq!(elems.len() as i64, n);
        Naive { c, n, elems }
    }

    fn same(c: GaussInt, n: i64, x: (i64, i64), y: (i64, i64)) -> bool {
        let (dr, di) = (x.0 - y.0, x.1 - y.1);
        let (pr, pi) = (dr * c.re + di * c.im, di * c.re - dr * c.im);
        pr.rem_euclid(n) == 0 && pi.rem_euclid(n) == 0
    }

    fn inverse(&self, x: (i64, i64)) -> Option<(i64, i64)> {
        self.elems.iter().copied().find(|&y| Self::same(self.c, self.n, (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0), (1, 0)))
    }

    /// e[z/c] for z = (re, im).
    fn e(&self, z: (i64, i64)) -> C64 {
        // Re(z/c) = Re(z c̄)/N
        let re = (z.0 * self.c.re + z.1 * self.c.im) as f64 / self.n as f64;
        C64::from_polar(1.0, TAU * re)
    }

    fn kloosterman(&self, m: GaussInt, n: GaussInt) -> C64 {
        let mul = |a: (i64, i64), b: GaussInt| (a.0 * b.re - a.1 * b.im, a.0 * b.im + a.1 * b.re);
        self.elems
            .iter()
            .filter_map(|&x| self.inverse(x).map(|xi| (x, xi)))
            .map(|(x, xi)| {
                let (p, q) = (mul(x, m), mul(xi, n));
                self.e((p.0 + q.0, p.1 + q.1))
            })
            .sum()
    }
}

fn small_modulus() -> impl Strategy<Value = GaussInt> {
    (-4i64..=4, -4i64..=4).prop_filter("nonzero", |&(a, b)| (a, b) != (0, 0) && a * a + b * b <= 20).prop_map(|(a, b)| g(a, b))
}

fn any_gauss(r: i64) -> impl Strategy<Value = GaussInt> {
    (-r..=r, -r..=r).prop_map(|(a, b)| g(a, b))
}

#[test]
fn frozen_values() {
    assert_eq!(expsum::kloosterman(g(1, 0), g(1, 0), g(1, 1)).unwrap().value(), C64::new(1.0, 0.0));
    // S(n,0;π) for a split prime π: N(π) − 1 when π | n, else −1
    let p = g(2, 1);
    assert!((expsum::ramanujan(g(2, 1), p).unwrap().re - 4.0).abs() < 1e-12);
    assert!((expsum::ramanujan(g(1, 0), p).unwrap().re + 1.0).abs() < 1e-12);
    // inert prime 3: N = 9
    assert!((expsum::ramanujan(g(3, 3), g(3, 0)).unwrap().re - 8.0).abs() < 1e-12);
    assert!((expsum::ramanujan(g(1, 0), g(3, 0)).unwrap().re + 1.0).abs() < 1e-12);
    assert_eq!(gauss::tau_div(g(5, 0)).unwrap(), 4);
    assert_eq!(gauss::divisors(g(2, 0)).unwrap().len(), 3);
}

#[test]
fn oracle_agrees_on_every_small_modulus() {
    for c in gauss::annulus(0.0, 20f64.sqrt()).unwrap() {
        let naive = Naive::new(c.gen());
        for (m, n) in [(g(1, 0), g(1, 0)), (g(2, -1), g(0, 3)), (g(0, 0), g(1, 1))] {
            let fast = expsum::kloosterman(m, n, c.gen()).unwrap().value();
            assert!((fast - naive.kloosterman(m, n)).norm() < 1e-9, "c={c} m={m} n={n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kloosterman_matches_oracle(c in small_modulus(), m in any_gauss(6), n in any_gauss(6)) {
        let fast = expsum::kloosterman(m, n, c).unwrap().value();
        prop_assert!((fast - Naive::new(c).kloosterman(m, n)).norm() < 1e-9);
    }

    #[test]
    fn kloosterman_is_real_and_symmetric(c in small_modulus(), m in any_gauss(8), n in any_gauss(8)) {
        let s = expsum::kloosterman(m, n, c).unwrap().value();
        let t = expsum::kloosterman(n, m, c).unwrap().value();
        prop_assert!(s.im.abs() < 1e-9);
        prop_assert!((s - t).norm() < 1e-9);
        // depends on m, n only mod c
        let s2 = expsum::kloosterman(m + c * g(2, -1), n - c, c).unwrap().value();
        prop_assert!((s - s2).norm() < 1e-9);
    }

    #[test]
    fn associate_moduli_agree(c in small_modulus(), m in any_gauss(5), n in any_gauss(5)) {
        let s = expsum::kloosterman(m, n, c).unwrap().value();
        // S(m,n;εc) = S(m, ε⁻²n; c) and ε⁻² = ±1
        for (k, u) in UNITS.into_iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let t = expsum::kloosterman(m, n * g(sign, 0), c * u).unwrap().value();
            prop_assert!((s - t).norm() < 1e-9, "unit {u}");
        }
    }

    #[test]
    fn weil_and_ramanujan_bounds(c in small_modulus(), m in any_gauss(10), n in any_gauss(10)) {
        prop_assume!(!(m.is_zero() && n.is_zero()));
        prop_assert!(expsum::weil_margin(m, n, c).unwrap() <= 1.0 + 1e-9);
        prop_assert!(expsum::ramanujan_margin(n, c).unwrap() <= 1.0 + 1e-9);
    }

    #[test]
    fn v_dft_and_decomposition(c in small_modulus(), m in any_gauss(5), n in any_gauss(5), q in any_gauss(5)) {
        let norm = c.norm().unwrap() as f64;
        prop_assert!(expsum::v_dft_residual(m, n, q, c).unwrap() < 1e-9 * norm);
        prop_assert!(expsum::decomposition_residual(m, n, c).unwrap() < 1e-9 * norm);
    }

    #[test]
    fn gcd_and_inverse(a in any_gauss(40), c in any_gauss(40)) {
        prop_assume!(!c.is_zero());
        let d = gauss::gcd(a, c).unwrap().gen();
        prop_assert!(d.divides(a) && d.divides(c));
        if gauss::coprime(a, c) {
            let x = gauss::inverse(a, c).unwrap();
            prop_assert!((a * x).congruent(g(1, 0), c).unwrap());
        }
        let r = a.rem(c).unwrap();
        prop_assert!(r.norm().unwrap() < c.norm().unwrap());
        prop_assert!((a - r).congruent(g(0, 0), c).unwrap());
    }

    #[test]
    fn canonical_is_idempotent(z in any_gauss(50)) {
        prop_assume!(!z.is_zero());
        let c = gauss::canonical(z).unwrap();
        prop_assert_eq!(gauss::canonical(c.gen()).unwrap(), c);
        prop_assert!(UNITS.iter().any(|&u| z * u == c.gen()));
    }

    #[test]
    fn factorization_multiplies_back(z in any_gauss(60)) {
        prop_assume!(!z.is_zero());
        let prod = gauss::factor(z).unwrap().into_iter().fold(g(1, 0), |acc, (p, e)| acc * p.gen().pow(e).unwrap());
        prop_assert_eq!(gauss::canonical(prod).unwrap(), gauss::canonical(z).unwrap());
    }
}
