//! Complex Γ and Bessel functions of the first kind.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::C64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos sum for Re z ≥ ½, returned as (log prefactor, series).
fn lanczos(z: C64) -> (C64, C64) {
    let z = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    ((z + 0.5) * t.ln() - t + 0.5 * (2.0 * PI).ln(), x)
}

/// Γ(z), with reflection for Re z < ½.
pub fn gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        PI / ((PI * z).sin() * gamma(1.0 - z))
    } else {
        let (l, x) = lanczos(z);
        l.exp() * x
    }
}

/// 1/Γ(z); entire, exactly zero at the poles of Γ.
pub fn rgamma(z: C64) -> C64 {
    if z.re < 0.5 {
        if z.im == 0.0 && z.re == z.re.round() {
            return C64::new(0.0, 0.0);
        }
        (PI * z).sin() * gamma(1.0 - z) / PI
    } else {
        let (l, x) = lanczos(z);
        (-l).exp() / x
    }
}

/// Default radius beyond which the power series is refused.
pub const SERIES_RADIUS: f64 = 40.0;

/// Σ_k (−w²/4)^k / (k! Γ(μ+k+1)); entire in both μ and w, so that
/// J_μ(w) = (w/2)^μ · series_j(μ, w).
pub fn series_j(mu: C64, w: C64) -> Result<C64> {
    let x = -(w * w) / 4.0;
    let mut term = rgamma(mu + 1.0);
    let mut sum = term;
    let mut k = 0usize;
    let mut peak = term.norm();
    if term.norm() == 0.0 {
        // μ+1 is a non-positive integer; start past the zeros
        let first = (-(mu.re + 1.0)).round() as usize + 1;
        let mut t = C64::new(1.0, 0.0);
        for j in 1..=first {
            t *= x / j as f64;
        }
        term = t * rgamma(mu + 1.0 + first as f64);
        sum = term;
        k = first;
        peak = term.norm();
    }
    loop {
        let next = term * x / ((k as f64 + 1.0) * (mu + k as f64 + 1.0));
        k += 1;
        term = next;
        sum += term;
        peak = peak.max(term.norm());
        if k as f64 > x.norm().sqrt() && term.norm() <= 1e-17 * sum.norm().max(1e-300) {
            return Ok(sum);
        }
        if term.norm() == 0.0 && k as f64 > x.norm().sqrt() {
            return Ok(sum);
        }
        if k > 500 {
            return Err(Error::Convergence(format!("J series at mu={mu}, z={w} (peak {peak:e})")));
        }
    }
}

/// J_ν(z) by the power series, principal branch of (z/2)^ν.
pub fn bessel_j(nu: C64, z: C64) -> Result<C64> {
    if z.norm() > SERIES_RADIUS {
        return Err(Error::Domain(format!("|z| = {} beyond series radius", z.norm())));
    }
    if nu.im == 0.0 && nu.re < 0.0 && nu.re == nu.re.round() {
        let n = -nu.re;
        let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(bessel_j(C64::new(n, 0.0), z)? * sign);
    }
    if z.norm() == 0.0 {
        return Ok(if nu.norm() == 0.0 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
    }
    Ok((z / 2.0).powc(nu) * series_j(nu, z)?)
}

/// J_n(x) for integer n and real x, accurate across the whole real line:
/// Miller backward recurrence for moderate x, Hankel asymptotics beyond.
pub fn bessel_jn(n: i32, x: f64) -> f64 {
    if n < 0 {
        let v = bessel_jn(-n, x);
        return if n % 2 == 0 { v } else { -v };
    }
    if x < 0.0 {
        let v = bessel_jn(n, -x);
        return if n % 2 == 0 { v } else { -v };
    }
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let nf = n as f64;
    if x >= 30.0 + nf * nf {
        return hankel_jn(n, x);
    }
    miller_jn(n, x)
}

fn hankel_jn(n: i32, x: f64) -> f64 {
    let mu = 4.0 * (n as f64).powi(2);
    // P ~ Σ (−1)^k a_{2k}/x^{2k}, Q ~ Σ (−1)^k a_{2k+1}/x^{2k+1}
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        a *= (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
        if a.abs() >= last || a.abs() < 1e-18 {
            if a.abs() < 1e-18 {
                match k % 4 {
                    1 => q += a,
                    2 => p -= a,
                    3 => q -= a,
                    _ => p += a,
                }
            }
            break;
        }
        last = a.abs();
        match k % 4 {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
    }
    let chi = x - (n as f64 / 2.0 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn miller_jn(n: i32, x: f64) -> f64 {
    let top = (n as f64).max(x);
    let mut m = (top + 30.0 + 10.0 * top.sqrt()) as usize;
    m += m % 2;
    let (mut jp1, mut j) = (0.0f64, 1e-300f64);
    let mut norm = 0.0;
    let mut want = 0.0;
    for k in (0..m).rev() {
        // J_{k} = (2(k+1)/x) J_{k+1} − J_{k+2}
        let jm1 = 2.0 * (k + 1) as f64 / x * j - jp1;
        jp1 = j;
        j = jm1;
        if k % 2 == 0 && k > 0 {
            norm += 2.0 * j;
        }
        if k == n as usize {
            want = j;
        }
        if j.abs() > 1e250 {
            jp1 *= 1e-250;
            j *= 1e-250;
            norm *= 1e-250;
            want *= 1e-250;
        }
    }
    norm += j;
    want / norm
}

pub fn j0(x: f64) -> f64 {
    bessel_jn(0, x)
}
