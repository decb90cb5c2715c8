//! Bessel kernels of complex order and the Bessel integrals 𝓗(z;u), 𝓘(v,w).
//!
//! Dual coordinates (r, ω) carry the hyperbolic traces
//! trh = cosh r cos ω + i sinh r sin ω and trh′ = sinh r cos ω + i cosh r sin ω.
//! Double integrals over (r, ω) use Gauss–Legendre panels whose width
//! shrinks with the local phase speed, truncated where the Gaussian weight
//! in r is negligible.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expsum::{Kahan, KahanC};
use crate::fourier::eta;
use crate::quad::{self, QuadSpec};
use crate::special::{bessel_jn, series_j, SERIES_RADIUS};
use crate::C64;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Widths K, P of the spectral weight h(κ,p) = exp(−(κ/K)² − (p/P)²), and
/// the square-case parameter T.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct SpectralParams {
    pub k: f64,
    pub p: f64,
    pub t: f64,
}

impl SpectralParams {
    pub fn new(k: f64, p: f64) -> Result<Self> {
        if !(k > 0.0 && p > 0.0) {
            return Err(Error::Domain("K and P must be positive".into()));
        }
        Ok(SpectralParams { k, p, t: k.max(p) })
    }

    pub fn square(t: f64) -> Result<Self> {
        if t <= 0.0 {
            return Err(Error::Domain("T must be positive".into()));
        }
        Ok(SpectralParams { k: t, p: t, t })
    }

    pub fn is_square(&self) -> bool {
        self.k == self.p && self.p == self.t
    }

    /// h(κ,p).
    pub fn h(&self, kappa: f64, p: i64) -> f64 {
        (-(kappa / self.k).powi(2) - (p as f64 / self.p).powi(2)).exp()
    }

    /// h(κ,p;u) = h(κ,p)·cos(2κ log|u| + 2p arg u).
    pub fn h_u(&self, kappa: f64, p: i64, u: C64) -> f64 {
        self.h(kappa, p) * (2.0 * kappa * u.norm().ln() + 2.0 * p as f64 * u.arg()).cos()
    }
}

/// Point of the dual space; ω is reduced into [0, π).
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct DualPoint {
    pub r: f64,
    pub omega: f64,
}

impl DualPoint {
    pub fn new(r: f64, omega: f64) -> Self {
        DualPoint { r, omega: omega.rem_euclid(PI) }
    }
}

pub fn trh(r: f64, omega: f64) -> C64 {
    C64::new(r.cosh() * omega.cos(), r.sinh() * omega.sin())
}

pub fn trh_prime(r: f64, omega: f64) -> C64 {
    C64::new(r.sinh() * omega.cos(), r.cosh() * omega.sin())
}

/// k(r) = √π K e^{−(Kr)²} and its second derivative.
pub fn k_weight(r: f64, k: f64) -> (f64, f64) {
    let x = k * r;
    let e = SQRT_PI * k * (-x * x).exp();
    (e, e * (4.0 * x * x - 2.0) * k * k)
}

/// θ(ω) = √π P Σ_j e^{−(P(ω+πj))²} and its second derivative.
pub fn theta_weight(omega: f64, p: f64) -> (f64, f64) {
    let jmax = (7.0 / (PI * p)).ceil() as i64 + 1;
    let base = omega - PI * (omega / PI).round();
    let mut th = Kahan::default();
    let mut th2 = Kahan::default();
    for j in -jmax..=jmax {
        let x = p * (base + PI * j as f64);
        let e = (-x * x).exp();
        th.add(e);
        th2.add(e * (4.0 * x * x - 2.0));
    }
    (SQRT_PI * p * th.value(), SQRT_PI * p * p * p * th2.value())
}

/// f(r,ω) = −k″(r)θ(ω) − k(r)θ″(ω).
pub fn f_weight(r: f64, omega: f64, sp: &SpectralParams) -> f64 {
    let (k, k2) = k_weight(r, sp.k);
    let (th, th2) = theta_weight(omega, sp.p);
    -k2 * th - k * th2
}

/// f_♮(r,ω) = −k″(r)k(ω) − k(r)k″(ω) with k at width T.
pub fn f_natural(r: f64, omega: f64, t: f64) -> f64 {
    let (a, a2) = k_weight(r, t);
    let (b, b2) = k_weight(omega, t);
    -a2 * b - a * b2
}

/// Default ε for the cutoff radius T^ε/T.
pub const CUTOFF_EPS: f64 = 0.3;

/// τ(r,ω): 1 on [−a,a]², 0 outside [−2a,2a]², a = T^ε/T.
pub fn tau_cut(r: f64, omega: f64, t: f64, eps: f64) -> f64 {
    let a = t.powf(eps) / t;
    eta((3.0 - r.abs() / a) / 2.0) * eta((3.0 - omega.abs() / a) / 2.0)
}

/// g(r,ω;v,w) = (sinh²r + sin²ω)|v|² + (cosh²r − sin²ω)|w|² − Re((sinh 2r + i sin 2ω) v w̄).
pub fn g_weight(r: f64, omega: f64, v: C64, w: C64) -> f64 {
    let (g0, x) = g_parts(r, omega, v, w);
    g0 - x
}

/// (non-cross part, cross part) of g.
fn g_parts(r: f64, omega: f64, v: C64, w: C64) -> (f64, f64) {
    let (sh, ch, s) = (r.sinh(), r.cosh(), omega.sin());
    let g0 = (sh * sh + s * s) * v.norm_sqr() + (ch * ch - s * s) * w.norm_sqr();
    let x = (C64::new((2.0 * r).sinh(), (2.0 * omega).sin()) * v * w.conj()).re;
    (g0, x)
}

/// All weights at one dual point.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Weights {
    pub k: f64,
    pub theta: f64,
    pub f: f64,
    pub f_nat: f64,
    pub tau_cut: f64,
}

pub fn weights(pt: DualPoint, sp: &SpectralParams) -> Weights {
    let (k, _) = k_weight(pt.r, sp.k);
    let (theta, _) = theta_weight(pt.omega, sp.p);
    Weights {
        k,
        theta,
        f: f_weight(pt.r, pt.omega, sp),
        f_nat: f_natural(pt.r, pt.omega, sp.t),
        tau_cut: tau_cut(pt.r, pt.omega, sp.t, CUTOFF_EPS),
    }
}

/// |(∂²_r + ∂²_ω) cos φ + g cos φ| with φ = Re(v trh − w trh′), by central
/// differences.
pub fn laplacian_residual(r: f64, omega: f64, v: C64, w: C64) -> f64 {
    let phase = |r: f64, o: f64| (v * trh(r, o) - w * trh_prime(r, o)).re.cos();
    let h = 1e-3;
    // fourth-order five-point stencil in each direction
    let d2 = |f: &dyn Fn(f64) -> f64| {
        (-f(-2.0 * h) + 16.0 * f(-h) - 30.0 * f(0.0) + 16.0 * f(h) - f(2.0 * h)) / (12.0 * h * h)
    };
    let lap = d2(&|d| phase(r + d, omega)) + d2(&|d| phase(r, omega + d));
    (lap + g_weight(r, omega, v, w) * phase(r, omega)).abs()
}

// ---------------------------------------------------------------- kernels

/// J_{ν,p}(z) = J_{ν+p}(z) J_{ν−p}(z̄), written branch-free as
/// |z/2|^{2ν} e^{2ip arg z} S_{ν+p}(z) S_{ν−p}(z̄).
pub fn kernel_j_nu(nu: C64, p: i64, z: C64) -> Result<C64> {
    if z.norm() == 0.0 {
        return Err(Error::Zero("kernel argument"));
    }
    if z.norm() > SERIES_RADIUS {
        return Err(Error::Domain(format!("|z| = {} beyond series radius", z.norm())));
    }
    let pf = p as f64;
    let a = series_j(nu + pf, z)?;
    let b = series_j(nu - pf, z.conj())?;
    let lead = (2.0 * nu * (z.norm() / 2.0).ln()).exp() * C64::from_polar(1.0, 2.0 * pf * z.arg());
    Ok(lead * a * b)
}

/// J_{iκ,p}(z).
pub fn kernel_j(kappa: f64, p: i64, z: C64) -> Result<C64> {
    kernel_j_nu(C64::new(0.0, kappa), p, z)
}

fn bold_j_nu(nu: C64, p: i64, z: C64) -> Result<C64> {
    let diff = kernel_j_nu(-nu, -p, z)? - kernel_j_nu(nu, p, z)?;
    Ok(2.0 * PI * PI / (PI * nu).sin() * diff)
}

/// Below this |κ| the removable singularity of 𝑱 at ν = 0 is bridged.
pub const KAPPA_SMALL: f64 = 1e-3;
const KAPPA_BRIDGE: f64 = 1e-4;

/// 𝑱_{iκ,p}(z) = (2π²/sin πν)(J_{−ν,−p}(z) − J_{ν,p}(z)), ν = iκ.
pub fn bold_j(kappa: f64, p: i64, z: C64) -> Result<C64> {
    if kappa.abs() < KAPPA_SMALL {
        let a = bold_j_nu(C64::new(0.0, KAPPA_BRIDGE), p, z)?;
        let b = bold_j_nu(C64::new(0.0, -KAPPA_BRIDGE), p, z)?;
        return Ok((a + b) / 2.0);
    }
    bold_j_nu(C64::new(0.0, kappa), p, z)
}

/// Flat part of the window ends where the Bessel argument 2x|cosh| hits this.
const LINE_FLAT_ARG: f64 = 400.0;
const LINE_TAPER: f64 = 3.0;

/// 4π i^{2p} ∫ χ̄_{2p}(cosh(r+iφ)) J_{2p}(2x|cosh(r+iφ)|) e^{2irκ} dr.
///
/// The integrand only decays like e^{−|r|/2} while its phase speed grows like
/// x e^{|r|}; it is multiplied by a C^∞ window, flat until the Bessel
/// argument reaches a few hundred, and integrated on phase-resolving panels.
pub fn bold_j_line(kappa: f64, p: i64, x: f64, phi: f64, spec: &QuadSpec) -> Result<C64> {
    if !(x > 0.0) {
        return Err(Error::Domain("x must be positive".into()));
    }
    let r_flat = (LINE_FLAT_ARG / (2.0 * x)).max(1.0).acosh();
    let r_end = r_flat + LINE_TAPER;
    let window = |r: f64| {
        let s = (r.abs() - r_flat) / LINE_TAPER;
        1.0 - eta(0.5 + s / 2.0)
    };
    let integrand = |r: f64| {
        let ch = C64::new(r, phi).cosh();
        let m = ch.norm();
        let chi_bar = C64::from_polar(1.0, -2.0 * p as f64 * ch.arg());
        chi_bar * bessel_jn(2 * p as i32, 2.0 * x * m) * C64::from_polar(1.0, 2.0 * r * kappa) * window(r)
    };
    let budget = 2.0 * PI * 20.0 / spec.steps_per_period as f64;
    let edges = phase_edges(r_end, |r| 2.0 * x * r.cosh() + 2.0 * kappa.abs() + 1.0, budget, 0.25);
    let sum = integrate_symmetric_1d(&edges, integrand);
    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    Ok(4.0 * PI * sign * sum)
}

/// |𝑱 − line representation|.
pub fn boldj_line_rep_residual(kappa: f64, p: i64, x: f64, phi: f64, spec: &QuadSpec) -> Result<f64> {
    let direct = bold_j(kappa, p, C64::from_polar(x, phi))?;
    Ok((direct - bold_j_line(kappa, p, x, phi, spec)?).norm())
}

/// |χ̄_{2p}(a) J_{2p}(|a|) − (1/2π i^{2p}) ∫₀^{2π} exp(2ipω + i Re(a e^{iω})) dω|.
pub fn circle_formula_residual(p: i64, a: C64) -> f64 {
    let lhs = if a.norm() == 0.0 {
        C64::new(if p == 0 { 1.0 } else { 0.0 }, 0.0)
    } else {
        C64::from_polar(1.0, -2.0 * p as f64 * a.arg()) * bessel_jn(2 * p as i32, a.norm())
    };
    let n = 64 + 4 * (a.norm().ceil() as usize + 2 * p.unsigned_abs() as usize);
    let h = 2.0 * PI / n as f64;
    let acc: KahanC = (0..n)
        .map(|k| {
            let om = k as f64 * h;
            C64::from_polar(1.0, 2.0 * p as f64 * om + (a * C64::from_polar(1.0, om)).re)
        })
        .collect();
    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    let rhs = acc.value() * h / (2.0 * PI) * sign;
    (lhs - rhs).norm()
}

/// |Σ_p cos(2ωp) e^{−(p/P)²} − √π P Σ_p e^{−(P(ω+πp))²}|.
pub fn poisson_theta_residual(omega: f64, p: f64) -> f64 {
    let pmax = (p * 6.5).ceil() as i64 + 1;
    let lhs: Kahan = (-pmax..=pmax).map(|q| (2.0 * omega * q as f64).cos() * (-(q as f64 / p).powi(2)).exp()).collect();
    (lhs.value() - theta_weight(omega, p).0).abs()
}

// ------------------------------------------------------- dual quadrature

/// Panel edges on [0, end] whose widths keep the phase advance per panel
/// under `budget`, given a local phase speed.
fn phase_edges(end: f64, speed: impl Fn(f64) -> f64, budget: f64, max_width: f64) -> Vec<f64> {
    let mut edges = vec![0.0];
    let mut r = 0.0;
    while r < end {
        let mut w = max_width.min(budget / speed(r));
        // check the speed at the far edge as well
        w = w.min(budget / speed(r + w));
        r = (r + w).min(end);
        edges.push(r);
    }
    edges
}

fn integrate_symmetric_1d(edges: &[f64], f: impl Fn(f64) -> C64 + Sync) -> C64 {
    let (xs, ws) = quad::gl20();
    let parts: Vec<C64> = edges
        .par_windows(2)
        .map(|e| {
            let (h, m) = ((e[1] - e[0]) / 2.0, (e[0] + e[1]) / 2.0);
            let mut s = KahanC::new();
            for (x, w) in xs.iter().zip(ws) {
                let r = m + h * x;
                s.add(*w * (f(r) + f(-r)));
            }
            s.value() * h
        })
        .collect();
    parts.into_iter().collect::<KahanC>().value()
}

/// Region for a double integral over (r, ω).
#[derive(Clone, Copy, Debug)]
pub struct DualRegion {
    pub r_max: f64,
    pub omega_lo: f64,
    pub omega_hi: f64,
    /// Widths of the Gaussian factors in r and ω (≈ K and P).
    pub r_scale: f64,
    pub omega_scale: f64,
    /// |v| + |w|: the phase grows like amp·cosh r in both directions.
    pub amp: f64,
}

/// ∫∫ F(r,ω) dr dω over the region, on panels in r (mirrored about 0) and,
/// at every r node, panels in ω sized to that node's phase speed.
pub fn integrate_dual(region: &DualRegion, spec: &QuadSpec, f: impl Fn(f64, f64) -> C64 + Sync) -> C64 {
    let budget = 2.0 * PI * 20.0 / spec.steps_per_period as f64;
    let amp = region.amp;
    let r_edges = phase_edges(region.r_max, |r| amp * r.cosh() + 1.0, budget, 0.25 / region.r_scale);
    let (xs, ws) = quad::gl20();
    let span = region.omega_hi - region.omega_lo;
    let omega_line = |r: f64| -> C64 {
        let speed = amp * r.cosh() + 1.0;
        let width = (budget / speed).min(0.25 / region.omega_scale);
        let n = (span / width).ceil().max(1.0) as usize;
        let hw = span / n as f64 / 2.0;
        let mut s = KahanC::new();
        for k in 0..n {
            let m = region.omega_lo + (2 * k + 1) as f64 * hw;
            for (x, w) in xs.iter().zip(ws) {
                s.add(*w * f(r, m + hw * x));
            }
        }
        s.value() * hw
    };
    let parts: Vec<C64> = r_edges
        .par_windows(2)
        .map(|e| {
            let (h, m) = ((e[1] - e[0]) / 2.0, (e[0] + e[1]) / 2.0);
            let mut s = KahanC::new();
            for (x, w) in xs.iter().zip(ws) {
                let r = m + h * x;
                s.add(*w * (omega_line(r) + omega_line(-r)));
            }
            s.value() * h
        })
        .collect();
    parts.into_iter().collect::<KahanC>().value()
}

// ------------------------------------------------------------ 𝓗 and 𝓘

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HMethod {
    Direct,
    Rep1,
    Rep2,
}

impl std::str::FromStr for HMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(HMethod::Direct),
            "rep1" => Ok(HMethod::Rep1),
            "rep2" => Ok(HMethod::Rep2),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// v = zu + z/u, w = zu − z/u.
pub fn vw_of(z: C64, u: C64) -> (C64, C64) {
    (z * u + z / u, z * u - z / u)
}

fn dual_reach(spec: &QuadSpec, scale: f64) -> f64 {
    spec.reach / scale
}

/// κ step of the midpoint rule in the direct 𝓗 integral.
pub const KAPPA_STEP: f64 = 0.1;

/// 𝓗(z;u) by the requested method.
pub fn h_bessel(z: C64, u: C64, sp: &SpectralParams, spec: &QuadSpec, method: HMethod) -> Result<f64> {
    if z.norm() == 0.0 || u.norm() == 0.0 {
        return Err(Error::Zero("z and u must be nonzero"));
    }
    let (v, w) = vw_of(z, u);
    match method {
        HMethod::Direct => h_direct(z, u, sp, spec),
        HMethod::Rep1 => {
            let region = DualRegion {
                r_max: dual_reach(spec, sp.k),
                omega_lo: 0.0,
                omega_hi: PI,
                r_scale: sp.k,
                omega_scale: sp.p,
                amp: v.norm() + w.norm(),
            };
            Ok(integrate_dual(&region, spec, |r, o| {
                let ph = (v * trh(r, o) - w * trh_prime(r, o)).re;
                C64::new(ph.cos() * f_weight(r, o, sp), 0.0)
            })
            .re)
        }
        HMethod::Rep2 => {
            let region = DualRegion {
                r_max: dual_reach(spec, sp.k),
                omega_lo: 0.0,
                omega_hi: PI,
                r_scale: sp.k,
                omega_scale: sp.p,
                amp: v.norm() + w.norm(),
            };
            Ok(integrate_dual(&region, spec, |r, o| {
                let ph = (v * trh(r, o) - w * trh_prime(r, o)).re;
                let (k, _) = k_weight(r, sp.k);
                let (th, _) = theta_weight(o, sp.p);
                C64::new(ph.cos() * g_weight(r, o, v, w) * k * th, 0.0)
            })
            .re)
        }
    }
}

fn h_direct(z: C64, u: C64, sp: &SpectralParams, spec: &QuadSpec) -> Result<f64> {
    if sp.k > 4.0 || sp.p > 4.0 {
        return Err(Error::Domain("direct 𝓗 is limited to K, P ≤ 4".into()));
    }
    let cut = (1.0 / spec.tol.min(1e-12)).ln().sqrt();
    let pmax = (sp.p * cut).ceil() as i64 + spec.p_extra;
    let nk = (sp.k * cut / KAPPA_STEP).ceil() as i64;
    let rows: Vec<Result<f64>> = (-pmax..=pmax)
        .into_par_iter()
        .map(|p| {
            let mut acc = Kahan::default();
            for j in -nk..nk {
                let kappa = (j as f64 + 0.5) * KAPPA_STEP;
                let h = sp.h_u(kappa, p, u);
                if h == 0.0 {
                    continue;
                }
                let bj = bold_j(kappa, p, z)?;
                acc.add(h * bj.re * (kappa * kappa + (p * p) as f64));
            }
            Ok(acc.value() * KAPPA_STEP)
        })
        .collect();
    let mut acc = Kahan::default();
    for r in rows {
        acc.add(r?);
    }
    Ok(acc.value())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IForm {
    First,
    Second,
    Natural,
    Main,
}

impl std::str::FromStr for IForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(IForm::First),
            "second" => Ok(IForm::Second),
            "natural" => Ok(IForm::Natural),
            "main" => Ok(IForm::Main),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// |πw|² e^{−|w|²/(4T²)}.
pub fn i_main(w: C64, t: f64) -> f64 {
    (PI * w.norm()).powi(2) * (-(w.norm() / (2.0 * t)).powi(2)).exp()
}

/// The variant Bessel integral 𝓘(v,w) in the requested form. ω runs over
/// [−π/2, π/2), one period of θ centred on 0.
pub fn i_variant(v: C64, w: C64, sp: &SpectralParams, spec: &QuadSpec, form: IForm) -> Result<C64> {
    let base = DualRegion {
        r_max: dual_reach(spec, sp.k),
        omega_lo: -FRAC_PI_2,
        omega_hi: FRAC_PI_2,
        r_scale: sp.k,
        omega_scale: sp.p,
        amp: v.norm() + w.norm(),
    };
    let osc = |r: f64, o: f64| C64::from_polar(1.0, (v * (trh(r, o) - 1.0)).re);
    match form {
        IForm::First => Ok(integrate_dual(&base, spec, |r, o| {
            osc(r, o) * (w * trh_prime(r, o)).re.cos() * f_weight(r, o, sp)
        })),
        IForm::Second => Ok(integrate_dual(&base, spec, |r, o| {
            let psi = (w * trh_prime(r, o)).re;
            let (g0, x) = g_parts(r, o, v, w);
            let (k, _) = k_weight(r, sp.k);
            let (th, _) = theta_weight(o, sp.p);
            osc(r, o) * C64::new(g0 * psi.cos(), x * psi.sin()) * k * th
        })),
        IForm::Natural => {
            if !sp.is_square() {
                return Err(Error::Domain("natural form needs K = P = T".into()));
            }
            let a = sp.t.powf(CUTOFF_EPS) / sp.t;
            let region = DualRegion { r_max: 2.0 * a, omega_lo: -2.0 * a, omega_hi: 2.0 * a, ..base };
            Ok(integrate_dual(&region, spec, |r, o| {
                osc(r, o) * (w * trh_prime(r, o)).re.cos() * f_natural(r, o, sp.t) * tau_cut(r, o, sp.t, CUTOFF_EPS)
            }))
        }
        IForm::Main => {
            if !sp.is_square() {
                return Err(Error::Domain("main term needs K = P = T".into()));
            }
            Ok(C64::new(i_main(w, sp.t), 0.0))
        }
    }
}

/// |∫∫_{ℝ²} cos(Re(w(r+iω))) f_♮ dr dω − |πw|² e^{−(|w|/2T)²}|.
pub fn gaussian_ft_residual(w: C64, t: f64, spec: &QuadSpec) -> f64 {
    let reach = spec.reach.max(6.5) / t;
    let panels = ((2.0 * reach * (w.norm() + t) / 4.0).ceil() as usize).max(8);
    let (xs, ws) = quad::gl20();
    let h = reach / panels as f64;
    let nodes: Vec<(f64, f64)> = (0..2 * panels)
        .flat_map(|k| {
            let m = -reach + (k as f64 + 0.5) * h;
            xs.iter().zip(ws).map(move |(x, wt)| (m + h / 2.0 * x, wt * h / 2.0))
        })
        .collect();
    let rows: Vec<f64> = nodes
        .par_iter()
        .map(|&(r, wr)| {
            let mut s = Kahan::default();
            for &(o, wo) in &nodes {
                s.add(wo * (w.re * r - w.im * o).cos() * f_natural(r, o, t));
            }
            wr * s.value()
        })
        .collect();
    let lhs: Kahan = rows.into_iter().collect();
    (lhs.value() - i_main(w, t)).abs()
}

/// |𝓘_♮(v,w)| / [T² (T/|w| + |v|²/(T|w|³))^{2γ}].
pub fn i_natural_decay_margin(v: C64, w: C64, sp: &SpectralParams, spec: &QuadSpec, gamma: u32) -> Result<f64> {
    if gamma > 0 && w.norm() == 0.0 {
        return Err(Error::Zero("w must be nonzero for γ ≥ 1"));
    }
    let t = sp.t;
    let val = i_variant(v, w, sp, spec, IForm::Natural)?.norm();
    let base = if gamma == 0 { 1.0 } else { t / w.norm() + v.norm_sqr() / (t * w.norm().powi(3)) };
    Ok(val / (t * t * base.powi(2 * gamma as i32)))
}

/// |𝓘(v,w) − |πw|²h(w/2)| / (|v| + |w|), the constant of the asymptotic.
pub fn i_asymptotic_constant(v: C64, w: C64, sp: &SpectralParams, spec: &QuadSpec) -> Result<f64> {
    let first = i_variant(v, w, sp, spec, IForm::First)?;
    Ok((first - i_main(w, sp.t)).norm() / (v.norm() + w.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn traces() {
        assert!((trh(0.0, 0.0) - 1.0).norm() < 1e-15);
        assert!(trh_prime(0.0, 0.0).norm() < 1e-15);
        assert!((trh(0.7, 0.0) - 0.7f64.cosh()).norm() < 1e-15);
        assert!((trh_prime(0.7, 0.0) - 0.7f64.sinh()).norm() < 1e-15);
        for (r, o) in [(0.3, 1.1), (-1.2, 2.9), (2.0, -0.4)] {
            let d = trh(r, o).powi(2) - trh_prime(r, o).powi(2);
            assert!((d - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn weight_basics() {
        let sp = SpectralParams::new(2.0, 3.0).unwrap();
        let w = weights(DualPoint::new(0.0, 0.0), &sp);
        assert!((w.k - SQRT_PI * 2.0).abs() < 1e-14);
        assert!(w.theta >= SQRT_PI * 3.0);
        assert!((g_weight(0.0, 0.0, c(1.3, 0.2), c(0.4, -2.0)) - c(0.4, -2.0).norm_sqr()).abs() < 1e-14);
        assert_eq!(DualPoint::new(0.0, PI + 0.5).omega, 0.5);
    }

    #[test]
    fn cutoff_support() {
        let t: f64 = 8.0;
        let a = t.powf(CUTOFF_EPS) / t;
        assert_eq!(tau_cut(0.99 * a, -0.5 * a, t, CUTOFF_EPS), 1.0);
        assert_eq!(tau_cut(2.01 * a, 0.0, t, CUTOFF_EPS), 0.0);
        assert_eq!(tau_cut(0.0, -2.5 * a, t, CUTOFF_EPS), 0.0);
        let mid = tau_cut(1.5 * a, 0.0, t, CUTOFF_EPS);
        assert!(mid > 0.0 && mid < 1.0);
    }

    #[test]
    fn laplacian_identity() {
        for (r, o, v, w) in [
            (0.3, 0.4, c(1.0, -0.5), c(0.2, 0.9)),
            (-0.8, 2.0, c(-1.4, 0.3), c(0.7, 0.1)),
            (0.1, -1.0, c(0.5, 0.5), c(-1.0, 1.2)),
        ] {
            assert!(laplacian_residual(r, o, v, w) < 1e-6);
        }
    }

    #[test]
    fn kernel_symmetries() {
        let z = c(0.9, 0.6);
        let j = kernel_j(0.7, 2, z).unwrap();
        let jc = kernel_j(-0.7, -2, z).unwrap();
        assert!((j.conj() - jc).norm() < 1e-13 * (1.0 + j.norm()));
        let phi = z.arg();
        let a = kernel_j(0.8, 2, C64::from_polar(z.norm(), phi)).unwrap();
        let b = kernel_j(0.8, 2, C64::from_polar(z.norm(), phi + 2.0 * PI)).unwrap();
        assert!((a - b).norm() < 1e-10);
        let x = bold_j(1.2, 1, z).unwrap();
        let y = bold_j(-1.2, -1, z).unwrap();
        assert!((x - y).norm() < 1e-9);
        // the bridge at κ = 0 is continuous
        let near = (bold_j(2e-3, 1, z).unwrap() + bold_j(-2e-3, 1, z).unwrap()) / 2.0;
        let at = bold_j(0.0, 1, z).unwrap();
        assert!((near - at).norm() < 1e-5 * (1.0 + at.norm()), "{near} {at}");
    }

    #[test]
    fn circle_formula() {
        assert!(circle_formula_residual(0, c(1.0, 0.0)) < 1e-12);
        assert!(circle_formula_residual(1, c(0.0, 2.0)) < 1e-10);
        assert!(circle_formula_residual(3, c(1.0, 1.0)) < 1e-10);
    }

    #[test]
    fn theta_poisson() {
        assert!(poisson_theta_residual(0.0, 1.0) < 1e-10);
        assert!(poisson_theta_residual(FRAC_PI_2, 3.0) < 1e-10);
        let (a, b) = (theta_weight(0.4, 2.0).0, theta_weight(0.4 + PI, 2.0).0);
        assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn line_representation_examples() {
        let spec = QuadSpec::default();
        assert!(boldj_line_rep_residual(1.0, 0, 1.0, 0.0, &spec).unwrap() < 1e-6);
        assert!(boldj_line_rep_residual(0.5, 1, 2.0, PI / 3.0, &spec).unwrap() < 1e-6);
        assert!(boldj_line_rep_residual(2.0, 2, 5.0, 0.0, &spec).unwrap() < 1e-5);
    }

    #[test]
    fn h_three_way_reference() {
        let spec = QuadSpec::default();
        let sp = SpectralParams::new(1.0, 1.0).unwrap();
        let cases = [
            (c(1.0, 0.0), c(1.0, 0.0), -8.291_723_901_640_6),
            (C64::from_polar(0.8, 0.5), C64::from_polar(1.3, 0.4), 2.353_504_343_976_9),
        ];
        for (z, u, want) in cases {
            for m in [HMethod::Direct, HMethod::Rep1, HMethod::Rep2] {
                let got = h_bessel(z, u, &sp, &spec, m).unwrap();
                assert!((got - want).abs() < 1e-8 * want.abs(), "{m:?}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn i_forms_reference() {
        let spec = QuadSpec::default();
        let sp = SpectralParams::square(4.0).unwrap();
        let (v, w) = (c(3.0, 1.0), c(0.0, 2.0));
        let want = c(41.896_991_883_72, -5.973_093_828_06);
        let a = i_variant(v, w, &sp, &spec, IForm::First).unwrap();
        let b = i_variant(v, w, &sp, &spec, IForm::Second).unwrap();
        assert!((a - want).norm() < 1e-8 * want.norm(), "{a}");
        assert!((b - want).norm() < 1e-8 * want.norm(), "{b}");
        assert_eq!(i_variant(v, c(0.0, 0.0), &sp, &spec, IForm::Main).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn h_from_i() {
        // 𝓗(z;u) = Re(e^{i Re v} 𝓘(v,w)) in the square case
        let spec = QuadSpec::default();
        let sp = SpectralParams::square(3.0).unwrap();
        let (z, u) = (C64::from_polar(1.1, 0.3), C64::from_polar(1.2, -0.2));
        let (v, w) = vw_of(z, u);
        let h = h_bessel(z, u, &sp, &spec, HMethod::Rep1).unwrap();
        let i = i_variant(v, w, &sp, &spec, IForm::First).unwrap();
        assert!((h - (C64::from_polar(1.0, v.re) * i).re).abs() < 1e-9 * (1.0 + h.abs()));
    }

    #[test]
    fn gaussian_fourier() {
        let spec = QuadSpec::default();
        assert!(gaussian_ft_residual(c(0.0, 0.0), 4.0, &spec) < 1e-12);
        assert!(gaussian_ft_residual(c(3.0, 0.0), 4.0, &spec) < 1e-8 * 10.0);
        assert!(gaussian_ft_residual(c(4.0, 4.0), 8.0, &spec) < 1e-8 * 33.0);
    }
}
