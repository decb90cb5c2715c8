//! The smooth cutoff η, the Fourier integral f(w;v) and its transform f̂(u;v).
//!
//! Both f and f̂ are radial in each argument, so the plane integrals reduce
//! to one-dimensional Hankel integrals against J₀:
//!
//! f(w;v)  = 2π|w|² ∫_{1/2}^∞ η(ρ) e^{−|w|²/(Tρ)²} ρ^{−3} J₀(2π|v|ρ) dρ
//! f̂(u;v) = 2π ∫₀^∞ f(ρ;v) J₀(2π|u|ρ) ρ dρ              (direct)
//!        = 2π²T⁴ ∫_{1/2}^∞ η(ρ) ρ (1 − a²ρ²) e^{−a²ρ²} J₀(2π|v|ρ) dρ,
//!          a = πT|u|                                        (formula)
//!
//! with the convention f̂(u;v) = ∫∫ f(w;v) e[−uw] dw.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expsum::Kahan;
use crate::quad;
use crate::special::j0;
use crate::C64;

fn bump(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Smooth step: 0 on (−∞, ½], 1 on [1, ∞).
pub fn eta(x: f64) -> f64 {
    let s = 2.0 * (x - 0.5);
    if s <= 0.0 {
        return 0.0;
    }
    if s >= 1.0 {
        return 1.0;
    }
    let a = bump(s);
    a / (a + bump(1.0 - s))
}

/// ψ(x) = η(1/x) − 1: 0 on (0,1], −1 on [2,∞).
pub fn psi(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain("ψ needs x > 0".into()));
    }
    Ok(eta(1.0 / x) - 1.0)
}

/// η′(x), closed form.
pub fn eta_prime(x: f64) -> f64 {
    let s = 2.0 * (x - 0.5);
    if s <= 0.0 || s >= 1.0 {
        return 0.0;
    }
    let (a, b) = (bump(s), bump(1.0 - s));
    // d/ds a = a/s², d/ds b = −b/(1−s)²
    let da = a / (s * s);
    let db = -b / ((1.0 - s) * (1.0 - s));
    2.0 * (da * b - a * db) / ((a + b) * (a + b))
}

/// Panels per unit length for the smooth part on [½, 1].
const ETA_PANELS: usize = 8;
const TAIL_PANELS: usize = 48;

/// ∫_{1/2}^∞ g(ρ) J₀(bρ) dρ for g smooth on [½,1] (with η) and slowly
/// varying beyond. `reach` is where the envelope of g peaks or ends.
fn hankel_from_half(g: impl Fn(f64) -> f64, b: f64, reach: f64) -> f64 {
    let inner = quad::gl_panels(|r| eta(r) * g(r) * j0(b * r), 0.5, 1.0, ETA_PANELS);
    if b == 0.0 {
        return inner;
    }
    let half = PI / b;
    let n_mid = ((reach - 1.0).max(0.0) / half).ceil() as usize;
    let mid_end = 1.0 + n_mid as f64 * half;
    let mid = quad::gl_panels(|r| g(r) * j0(b * r), 1.0, mid_end, n_mid.max(1));
    let mid = if n_mid == 0 { 0.0 } else { mid };
    let tail = quad::oscillatory_tail(|r| g(r) * j0(b * r), mid_end, half, TAIL_PANELS);
    inner + mid + tail
}

/// f(w;v) for real T ≥ 1. Depends on |w| and |v| only.
pub fn f_kernel(w: C64, v: C64, t: f64) -> Result<f64> {
    if t < 1.0 {
        return Err(Error::Domain("T must be ≥ 1".into()));
    }
    let (wa, va) = (w.norm(), v.norm());
    if wa == 0.0 {
        return Ok(0.0);
    }
    let a = (wa / t).powi(2);
    if va == 0.0 {
        let inner = quad::gl_panels(|r| eta(r) * (-a / (r * r)).exp() / r.powi(3), 0.5, 1.0, ETA_PANELS);
        // ∫_1^∞ e^{−a/ρ²} ρ^{−3} dρ = (1 − e^{−a})/(2a)
        let tail = -(-a).exp_m1() / (2.0 * a);
        return Ok(2.0 * PI * wa * wa * (inner + tail));
    }
    let g = |r: f64| (-a / (r * r)).exp() / r.powi(3);
    // the envelope e^{−a/ρ²}ρ^{−3} peaks at ρ = √(2a/3); integrate well past it
    let reach = 1.0 + 4.0 * a.sqrt();
    Ok(2.0 * PI * wa * wa * hankel_from_half(g, 2.0 * PI * va, reach))
}

/// f(w;0) through the rewriting πT² + πT² ∫₁² ψ′(x) e^{−|wx/T|²} dx.
pub fn f_kernel_zero_rewritten(w: C64, t: f64) -> f64 {
    let a = (w.norm() / t).powi(2);
    // ψ′(x) = −η′(1/x)/x²
    let corr = quad::gl_panels(|x| -eta_prime(1.0 / x) / (x * x) * (-a * x * x).exp(), 1.0, 2.0, 16);
    PI * t * t * (1.0 + corr)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FhatMethod {
    Formula,
    Direct,
}

/// Inner radius for the formula route near u = 0.
pub const U_FLOOR: f64 = 1e-8;

/// f̂(u;v).
pub fn f_hat(u: C64, v: C64, t: f64, method: FhatMethod) -> Result<f64> {
    if t < 1.0 {
        return Err(Error::Domain("T must be ≥ 1".into()));
    }
    let (ua, va) = (u.norm().max(U_FLOOR), v.norm());
    match method {
        FhatMethod::Formula => {
            let a2 = (PI * t * ua).powi(2);
            let g = |r: f64| r * (1.0 - a2 * r * r) * (-a2 * r * r).exp();
            // Gaussian envelope e^{−a²ρ²} is negligible beyond ρ = 7/a
            let end = (0.5 + 7.5 / a2.sqrt()).max(1.0);
            let b = 2.0 * PI * va;
            let inner = quad::gl_panels(|r| eta(r) * g(r) * j0(b * r), 0.5, 1.0, ETA_PANELS);
            let panels = (((end - 1.0) * (b / PI + 2.0 * a2.sqrt())).ceil() as usize).max(4);
            if panels > 1_000_000 {
                return Err(Error::Cost { estimate: panels as f64, limit: 1e6 });
            }
            let outer = quad::gl_panels(|r| g(r) * j0(b * r), 1.0, end, panels);
            Ok(2.0 * PI * PI * t.powi(4) * (inner + outer))
        }
        FhatMethod::Direct => {
            if va == 0.0 {
                // f(·;0) → πT²; its transform away from u = 0 comes from the
                // decaying remainder only
                let c0 = PI * t * t;
                return direct_transform(|r| f_kernel(C64::new(r, 0.0), v, t).map(|f| f - c0), ua, t);
            }
            direct_transform(|r| f_kernel(C64::new(r, 0.0), v, t), ua, t)
        }
    }
}

/// Panel size below which the direct transform counts a block as quiet.
const DIRECT_ABS_TOL: f64 = 1e-10;

/// 2π ∫₀^R F(ρ) J₀(2π|u|ρ) ρ dρ on panels of half a unit, stopping once a
/// run of panels contributes nothing relative to the running total.
fn direct_transform(f: impl Fn(f64) -> Result<f64> + Sync, ua: f64, t: f64) -> Result<f64> {
    let b = 2.0 * PI * ua;
    let width = 0.5f64.min(PI / b.max(1e-300));
    let block = 32usize;
    let mut acc = Kahan::default();
    let mut start = 0usize;
    let mut quiet = 0;
    let max_panels = (200.0 * t / width) as usize + 400;
    loop {
        let sums: Vec<Result<f64>> = (start..start + block)
            .into_par_iter()
            .map(|k| {
                let (a, c) = (k as f64 * width, (k + 1) as f64 * width);
                let (xs, ws) = quad::gl20();
                let (h, m) = ((c - a) / 2.0, (a + c) / 2.0);
                let mut s = Kahan::default();
                for (x, w) in xs.iter().zip(ws) {
                    let r = m + h * x;
                    s.add(w * f(r)? * j0(b * r) * r);
                }
                Ok(h * s.value())
            })
            .collect();
        let mut block_mag = 0.0f64;
        for s in sums {
            let s = s?;
            block_mag = block_mag.max(s.abs());
            acc.add(s);
        }
        start += block;
        // the envelope of f is not monotone near the origin; wait for two quiet blocks
        if block_mag <= (1e-13 * acc.value().abs()).max(DIRECT_ABS_TOL) {
            quiet += 1;
            if quiet == 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        if start > max_panels {
            return Err(Error::Convergence("direct f̂ transform did not settle".into()));
        }
    }
    Ok(2.0 * PI * acc.value())
}

/// Ratio |f̂(u/π;v)| / (T⁴ e^{−T²|u/2|²}) for |u| > 1/T.
pub fn fhat_decay_margin(u: C64, v: C64, t: f64) -> Result<f64> {
    if u.norm() * t <= 1.0 {
        return Err(Error::Domain("decay bound needs |u| > 1/T".into()));
    }
    let fh = f_hat(u / PI, v, t, FhatMethod::Formula)?;
    Ok(fh.abs() / (t.powi(4) * (-(t * u.norm() / 2.0).powi(2)).exp()))
}

/// |f̂(u/π;v)| · |u|² / T², bounded uniformly.
pub fn fhat_uniform_margin(u: C64, v: C64, t: f64) -> Result<f64> {
    let fh = f_hat(u / PI, v, t, FhatMethod::Formula)?;
    Ok(fh.abs() * u.norm_sqr() / (t * t))
}

/// |f̂(u/π;v)|·|v|²/T² / (1 + log(1 + 2/(T|u|))).
pub fn fhat_log_margin(u: C64, v: C64, t: f64) -> Result<f64> {
    let fh = f_hat(u / PI, v, t, FhatMethod::Formula)?;
    Ok(fh.abs() * v.norm_sqr() / (t * t) / (1.0 + (1.0 + 2.0 / (t * u.norm())).ln()))
}

/// |f(w;v)| / min{|w|²/|v|^{2γ}, T²(T/|vw|)^{2γ}}.
pub fn f_bound_margin(w: C64, v: C64, t: f64, gamma: i32) -> Result<f64> {
    let f = f_kernel(w, v, t)?;
    let (wa, va) = (w.norm(), v.norm());
    let b1 = wa * wa / va.powi(2 * gamma);
    let b2 = t * t * (t / (va * wa)).powi(2 * gamma);
    Ok(f.abs() / b1.min(b2))
}

/// Fourier pair of the plane Gaussian k(z) = πT² e^{−T²|z|²} under
/// ∫∫ k(z) e[−uz] dz, evaluated by a polar quadrature; the exact
/// transform is π² e^{−π²|u|²/T²}·... scaled back onto k.
pub fn gaussian_self_dual_residual(u: C64, t: f64) -> f64 {
    // radial reduction: 2π ∫ k(ρ) J₀(2π|u|ρ) ρ dρ
    let b = 2.0 * PI * u.norm();
    let end = 9.0 / t;
    let num = 2.0 * PI * quad::gl_panels(|r| PI * t * t * (-(t * r).powi(2)).exp() * j0(b * r) * r, 0.0, end, 24);
    let exact = PI * PI * (-(PI * u.norm() / t).powi(2)).exp();
    (num - exact).abs()
}

/// Truncated Taylor series c₀ + c₁h + … + c₄h⁴ for exact derivatives of the
/// test profiles.
#[derive(Clone, Copy, Debug)]
struct Jet([f64; 5]);

impl Jet {
    fn var(x: f64) -> Jet {
        Jet([x, 1.0, 0.0, 0.0, 0.0])
    }

    fn cst(x: f64) -> Jet {
        Jet([x, 0.0, 0.0, 0.0, 0.0])
    }

    fn add(self, o: Jet) -> Jet {
        Jet(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }

    fn scale(self, a: f64) -> Jet {
        Jet(self.0.map(|x| a * x))
    }

    fn mul(self, o: Jet) -> Jet {
        Jet(std::array::from_fn(|k| (0..=k).map(|j| self.0[j] * o.0[k - j]).sum()))
    }

    fn div(self, o: Jet) -> Jet {
        let mut q = [0.0; 5];
        for k in 0..5 {
            let s: f64 = (1..=k).map(|j| o.0[j] * q[k - j]).sum();
            q[k] = (self.0[k] - s) / o.0[0];
        }
        Jet(q)
    }

    fn exp(self) -> Jet {
        let mut h = [0.0; 5];
        h[0] = self.0[0].exp();
        for k in 1..5 {
            h[k] = (1..=k).map(|j| j as f64 * self.0[j] * h[k - j]).sum::<f64>() / k as f64;
        }
        Jet(h)
    }

    /// Taylor jet of the derivative (one order shorter, padded with 0).
    fn deriv(self) -> Jet {
        Jet(std::array::from_fn(|k| if k < 4 { (k + 1) as f64 * self.0[k + 1] } else { 0.0 }))
    }
}

fn bump_jet(t: Jet) -> Jet {
    if t.0[0] > 0.0 {
        Jet::cst(-1.0).div(t).exp()
    } else {
        Jet::cst(0.0)
    }
}

fn eta_jet(x: Jet) -> Jet {
    let s = x.add(Jet::cst(-0.5)).scale(2.0);
    if s.0[0] <= 0.0 {
        return Jet::cst(0.0);
    }
    if s.0[0] >= 1.0 {
        return Jet::cst(1.0);
    }
    let a = bump_jet(s);
    let b = bump_jet(Jet::cst(1.0).add(s.scale(-1.0)));
    a.div(a.add(b))
}

/// Radial test family for the integration-by-parts check:
/// φ(ρ) = η(ρ/ρ₀)·(1 − η(ρ/(2ρ₀)))·e^{−(ρ/ρ₀)²}, supported in [ρ₀/2, 2ρ₀].
fn ibp_profile(rho0: f64, r: Jet) -> Jet {
    let x = r.scale(1.0 / rho0);
    let cut = eta_jet(x).mul(Jet::cst(1.0).add(eta_jet(x.scale(0.5)).scale(-1.0)));
    cut.mul(x.mul(x).scale(-1.0).exp())
}

/// Δ = ∂²/∂z∂z̄ of a radial jet: ¼(φ″ + φ′/ρ), as a jet two orders shorter.
fn radial_laplacian(phi: Jet, r: Jet) -> Jet {
    let d1 = phi.deriv();
    d1.deriv().add(d1.div(r)).scale(0.25)
}

/// |∫∫ φ e[−vz] dz − (πi|v|)^{−2γ} ∫∫ Δ^γ φ e[−vz] dz| with Δ = ∂²/∂z∂z̄,
/// for the built-in profile at scale ρ₀. Derivatives are exact (Taylor
/// jets); the plane integrals are radial.
pub fn ibp_residual(v: C64, rho: f64, gamma: u32) -> Result<f64> {
    if gamma > 2 {
        return Err(Error::Domain("γ must be 0, 1 or 2".into()));
    }
    if gamma > 0 && v.norm() == 0.0 {
        return Err(Error::Zero("v"));
    }
    let b = 2.0 * PI * v.norm();
    let profile = |r: f64, g: u32| {
        let rj = Jet::var(r);
        let mut phi = ibp_profile(rho, rj);
        for _ in 0..g {
            phi = radial_laplacian(phi, rj);
        }
        phi.0[0]
    };
    let radial = |g: u32| {
        2.0 * PI * quad::gl_panels(|r| profile(r, g) * j0(b * r) * r, 0.5 * rho, 2.0 * rho, 96)
    };
    let lhs = radial(0);
    if gamma == 0 {
        return Ok(0.0);
    }
    let rhs = radial(gamma) / (-(PI * v.norm()).powi(2)).powi(gamma as i32);
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn cutoff_contract() {
        assert_eq!(eta(0.4), 0.0);
        assert_eq!(eta(1.2), 1.0);
        assert!((eta(0.75) - 0.5).abs() < 1e-15);
        for k in 1..100 {
            let x = 0.5 + k as f64 / 200.0;
            assert!(eta(x) <= eta(x + 0.005));
        }
        assert_eq!(psi(0.9).unwrap(), 0.0);
        assert_eq!(psi(2.5).unwrap(), -1.0);
        assert!(psi(0.0).is_err());
        let h = 1e-6;
        for x in [0.55, 0.7, 0.9] {
            let fd = (eta(x + h) - eta(x - h)) / (2.0 * h);
            assert!((fd - eta_prime(x)).abs() < 1e-7);
        }
    }

    // mpmath references at T = 4
    const F_REF: [(f64, f64, f64); 10] = [
        (0.5, 1.0, 0.000_563_864_591_270_214_2),
        (1.0, 1.0, 0.016_617_239_309_906_48),
        (3.0, 1.0, 0.738_442_290_097_861_1),
        (10.0, 1.0, -0.123_026_728_400_239_4),
        (30.0, 1.0, 0.000_150_423_711_538_004_6),
        (0.5, 0.0, 1.426_940_024_638_046),
        (1.0, 0.0, 5.457_943_321_382_897),
        (3.0, 0.0, 31.982_309_169_334_77),
        (10.0, 0.0, 50.262_028_848_805_21),
        (30.0, 0.0, 50.265_482_457_436_69),
    ];

    #[test]
    fn f_matches_reference() {
        for (w, v, want) in F_REF {
            let got = f_kernel(c(w, 0.0), c(v, 0.0), 4.0).unwrap();
            assert!((got - want).abs() < 1e-11 * (1.0 + want.abs()), "w={w} v={v}: {got} vs {want}");
        }
        assert_eq!(f_kernel(c(0.0, 0.0), c(1.0, 1.0), 4.0).unwrap(), 0.0);
    }

    #[test]
    fn f_radial_and_real() {
        let a = f_kernel(c(2.0, 1.0), c(0.3, -0.4), 4.0).unwrap();
        let b = f_kernel(c(-1.0, 2.0), c(0.5, 0.0), 4.0).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn f_zero_frequency_rewrite() {
        for w in [0.3, 1.0, 4.0, 9.0] {
            let direct = f_kernel(c(w, 0.0), c(0.0, 0.0), 4.0).unwrap();
            let rew = f_kernel_zero_rewritten(c(w, 0.0), 4.0);
            assert!((direct - rew).abs() < 1e-6 * direct.abs(), "w={w}");
        }
    }

    #[test]
    fn fhat_reference_and_dual() {
        let want = [(2f64.sqrt(), -7.581_814_874_224_264), (1.0, 4.177_730_712_300_35)];
        for (v, w) in want {
            let f = f_hat(c(0.2, 0.0), c(v, 0.0), 4.0, FhatMethod::Formula).unwrap();
            assert!((f - w).abs() < 1e-10, "formula v={v}: {f}");
            let d = f_hat(c(0.2, 0.0), c(v, 0.0), 4.0, FhatMethod::Direct).unwrap();
            assert!((d - w).abs() < 1e-6, "direct v={v}: {d}");
        }
    }

    #[test]
    fn gaussian_is_self_dual() {
        for u in [0.0, 0.3, 1.0, 2.5] {
            assert!(gaussian_self_dual_residual(c(u, 0.0), 4.0) < 1e-10);
        }
    }

    #[test]
    fn ibp_identity() {
        assert_eq!(ibp_residual(c(2.0, 0.0), 1.0, 0).unwrap(), 0.0);
        assert!(ibp_residual(c(2.0, 0.0), 1.0, 1).unwrap() < 1e-6);
        assert!(ibp_residual(c(1.5, 1.0), 2.0, 2).unwrap() < 1e-6);
    }
}
