//! Unitary characters of ℂ×, the Hecke ζ(s,p) and divisor functions.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expsum::{KahanC, ResidueRing};
use crate::gauss::{self, GaussInt, IdealRep, ZERO};
use crate::C64;

/// χ_{iκ,p}(z) = |z|^{iκ} (z/|z|)^p.
pub fn chi(kappa: f64, p: i64, z: C64) -> Result<C64> {
    if z.norm() == 0.0 {
        return Err(Error::Zero("character argument"));
    }
    Ok(C64::from_polar(1.0, kappa * z.norm().ln() + p as f64 * z.arg()))
}

/// χ_{0,k}(n) for a Gaussian integer; for k ≡ 0 mod 4 it only depends on (n).
pub fn chi_angle(k: i64, n: GaussInt) -> C64 {
    C64::from_polar(1.0, k as f64 * (n.im as f64).atan2(n.re as f64))
}

/// |n|^{2s} = exp(s·ln N(n)).
fn abs_pow2(n: GaussInt, s: C64) -> C64 {
    (s * (n.norm_wide() as f64).ln()).exp()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ZetaValue {
    pub re: f64,
    pub im: f64,
    /// Size of the neglected tail Σ_{|n|>X}|n|^{−2σ}, estimated by its integral.
    pub tail: f64,
    pub terms: usize,
}

impl ZetaValue {
    pub fn value(&self) -> C64 {
        C64::new(self.re, self.im)
    }
}

/// Partial sum of ζ(s,p) = Σ_{(n)} χ_{4p}(n) |n|^{−2s} over |n| ≤ cutoff.
pub fn zeta_hecke(s: C64, p: i64, cutoff: f64) -> Result<ZetaValue> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!("ζ(s,p) needs Re s > 1, got {s}")));
    }
    if cutoff < 1.0 {
        return Err(Error::Domain("cutoff must be ≥ 1".into()));
    }
    let ideals = gauss::annulus(0.0, cutoff)?;
    let acc: KahanC = ideals.iter().map(|n| chi_angle(4 * p, n.gen()) * abs_pow2(n.gen(), -s)).collect();
    let tail = PI / 4.0 * cutoff.powf(2.0 - 2.0 * s.re) / (s.re - 1.0);
    let v = acc.value();
    Ok(ZetaValue { re: v.re, im: v.im, tail, terms: ideals.len() })
}

/// ζ(s,p) with the integral tail added for p = 0 (for p ≠ 0 the angular
/// character integrates to zero over the tail).
pub fn zeta_hecke_corrected(s: C64, p: i64, cutoff: f64) -> Result<C64> {
    let z = zeta_hecke(s, p, cutoff)?;
    if p == 0 {
        let t = PI / 4.0 * ((2.0 - 2.0 * s) * cutoff.ln()).exp() / (s - 1.0);
        Ok(z.value() + t)
    } else {
        Ok(z.value())
    }
}

/// (τ_{s,p}(n), σ_{s,p}(n)).
pub fn tau_sigma(s: C64, p: i64, n: GaussInt) -> Result<(C64, C64)> {
    let divs = gauss::divisors(n)?;
    let mut tau = KahanC::new();
    let mut sigma = KahanC::new();
    for a in &divs {
        let b = gauss::canonical(n.div_exact(a.gen())?)?;
        let ratio = a.gen().to_c64() / b.gen().to_c64();
        tau.add(chi(0.0, 4 * p, ratio)? * (s * 2.0 * ratio.norm().ln()).exp());
        sigma.add(chi_angle(4 * p, a.gen()) * abs_pow2(a.gen(), s));
    }
    Ok((tau.value(), sigma.value()))
}

pub fn sigma(s: C64, p: i64, n: GaussInt) -> Result<C64> {
    Ok(tau_sigma(s, p, n)?.1)
}

/// Default exponent in the truncation log|c| ≤ Y^ε.
pub const RAMANUJAN_EPS: f64 = 0.3;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RamanujanCheck {
    pub residual: f64,
    pub c_radius: f64,
    pub zeta_tail: f64,
}

/// |σ_{1−s,p}(n)/ζ(s,p) − Σ_{log|c| ≤ Y^ε} S(n,0;c) χ_{4p}(c) |c|^{−2s}|.
pub fn ramanujan_residual(s: C64, p: i64, n: GaussInt, y: f64, eps: f64) -> Result<RamanujanCheck> {
    if n.is_zero() {
        return Err(Error::Zero("n"));
    }
    if y < 2.0 {
        return Err(Error::Domain("Y must be ≥ 2".into()));
    }
    if s.re < 1.0 {
        return Err(Error::Domain(format!("Re s must be ≥ 1, got {s}")));
    }
    let radius = y.powf(eps).exp();
    let mut acc = KahanC::new();
    for c in gauss::annulus(0.0, radius)? {
        let ram = ResidueRing::new(c.gen())?.kloosterman(n, ZERO).value();
        acc.add(ram * chi_angle(4 * p, c.gen()) * abs_pow2(c.gen(), -s));
    }
    // ζ needs to be far more accurate than the truncated series
    let cutoff = 600.0;
    let zeta = if s.re > 1.0 {
        zeta_hecke_corrected(s, p, cutoff)?
    } else {
        return Err(Error::Domain("ζ on Re s = 1 is monitored, not evaluated".into()));
    };
    let rhs = sigma(1.0 - s, p, n)? / zeta;
    Ok(RamanujanCheck {
        residual: (rhs - acc.value()).norm(),
        c_radius: radius,
        zeta_tail: PI / 4.0 * cutoff.powf(1.0 - 2.0 * s.re),
    })
}

/// Sorted ideal divisors as (a, n/a) pairs.
pub fn divisor_pairs(n: GaussInt) -> Result<Vec<(IdealRep, IdealRep)>> {
    gauss::divisors(n)?
        .into_iter()
        .map(|a| Ok((a, gauss::canonical(n.div_exact(a.gen())?)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn character_examples() {
        assert!((chi(0.0, 0, c(2.0, 3.0)).unwrap() - 1.0).norm() < 1e-15);
        assert!((chi(0.0, 4, c(1.0, 1.0)).unwrap() + 1.0).norm() < 1e-14);
        let z = c(0.7, -1.9);
        let a = chi(1.3, 3, 1.0 / z).unwrap();
        let b = chi(-1.3, -3, z).unwrap();
        assert!((a - b).norm() < 1e-14);
        assert!(chi(1.0, 1, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn zeta_at_two() {
        // ζ_{Q(i)}(2) = ζ(2)·β(2) = (π²/6)·Catalan
        let exact = PI * PI / 6.0 * 0.915_965_594_177_219_015;
        assert!((exact - 1.506_703_009_915_8).abs() < 1e-11);
        let z = zeta_hecke_corrected(c(2.0, 0.0), 0, 300.0).unwrap();
        assert!((z.re - exact).abs() < 1e-6, "{z}");
        let raw = zeta_hecke(c(2.0, 0.0), 0, 300.0).unwrap();
        assert!((raw.re - exact).abs() < 1.5 * raw.tail);
    }

    #[test]
    fn zeta_conjugation() {
        let s = c(1.7, 2.3);
        let a = zeta_hecke(s, 1, 50.0).unwrap().value();
        let b = zeta_hecke(s.conj(), -1, 50.0).unwrap().value();
        assert!((a - b.conj()).norm() < 1e-12);
    }

    #[test]
    fn divisor_function_examples() {
        let (t, s) = tau_sigma(c(0.3, 0.2), 1, GaussInt::new(1, 0)).unwrap();
        assert!((t - 1.0).norm() < 1e-15 && (s - 1.0).norm() < 1e-15);
        let n = GaussInt::new(12, 9);
        let s = c(0.4, -1.1);
        let (t1, _) = tau_sigma(s, 2, n).unwrap();
        let (t2, _) = tau_sigma(-s, -2, n).unwrap();
        assert!((t1 - t2).norm() < 1e-12);
    }

    #[test]
    fn ramanujan_identity_decays() {
        let s = c(2.0, 0.0);
        let mut last = f64::INFINITY;
        for y in [10.0, 20.0, 40.0] {
            let r = ramanujan_residual(s, 0, GaussInt::new(1, 0), y, RAMANUJAN_EPS).unwrap();
            assert!(r.residual <= 3.0 / y, "Y={y}: {}", r.residual);
            assert!(r.residual < last);
            last = r.residual;
        }
    }
}
