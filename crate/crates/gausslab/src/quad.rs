//! Quadrature building blocks: Gauss–Legendre panels, Wynn's ε-algorithm
//! for oscillatory tails, and a periodic trapezoid.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::expsum::Kahan;

/// Knobs for the oscillatory integrals.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct QuadSpec {
    /// Truncation radius in units of the Gaussian width (r_max = reach / K).
    pub reach: f64,
    /// Nodes per phase period of the fastest oscillation.
    pub steps_per_period: usize,
    pub tol: f64,
    /// Extra slack added to the p-sum truncation.
    pub p_extra: i64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec { reach: 6.0, steps_per_period: 16, tol: 1e-8, p_extra: 1 }
    }
}

impl QuadSpec {
    /// Same spec with half the step sizes.
    pub fn refined(self) -> Self {
        QuadSpec { steps_per_period: self.steps_per_period * 2, reach: self.reach + 1.0, ..self }
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                (p0, p1) = (p1, ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf);
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[i] = -x;
        xs[n - 1 - i] = x;
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

/// Cached 20-point rule.
pub fn gl20() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(20))
}

/// ∫_a^b f with the 20-point rule on one panel.
pub fn gl_panel(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> f64 {
    let (xs, ws) = gl20();
    let (h, m) = ((b - a) / 2.0, (a + b) / 2.0);
    let mut s = Kahan::default();
    for (x, w) in xs.iter().zip(ws) {
        s.add(w * f(m + h * x));
    }
    h * s.value()
}

/// ∫_a^b f over `n` equal panels.
pub fn gl_panels(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = Kahan::default();
    for k in 0..n {
        s.add(gl_panel(&mut f, a + k as f64 * h, a + (k + 1) as f64 * h));
    }
    s.value()
}

/// Limit of a slowly converging sequence of partial sums by Wynn's
/// ε-algorithm. Returns the even-column estimate whose last two entries
/// agree best.
pub fn wynn_epsilon(partial: &[f64]) -> f64 {
    let n = partial.len();
    if n < 3 {
        return *partial.last().unwrap_or(&0.0);
    }
    let mut best = partial[n - 1];
    let mut best_err = (partial[n - 1] - partial[n - 2]).abs();
    let mut prev = vec![0.0; n + 1];
    let mut cur = partial.to_vec();
    for k in 1..n {
        if cur.len() < 2 {
            break;
        }
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let d = cur[j + 1] - cur[j];
            if d.abs() <= 1e-15 * cur[j + 1].abs().max(f64::MIN_POSITIVE) {
                // converged column: the entry itself is the limit
                return if k % 2 == 1 { cur[j + 1] } else { best };
            }
            next.push(prev[j + 1] + 1.0 / d);
        }
        prev = cur;
        cur = next;
        if k % 2 == 0 && cur.len() >= 2 {
            let err = (cur[cur.len() - 1] - cur[cur.len() - 2]).abs();
            if err < best_err {
                best = cur[cur.len() - 1];
                best_err = err;
            }
        }
    }
    best
}

/// ∫_a^∞ g(ρ) J-like oscillation with half-period `half`: panels of one
/// half-period, summed and accelerated by Wynn's ε.
pub fn oscillatory_tail(mut f: impl FnMut(f64) -> f64, a: f64, half: f64, panels: usize) -> f64 {
    let mut partial = Vec::with_capacity(panels);
    let mut acc = Kahan::default();
    for k in 0..panels {
        acc.add(gl_panel(&mut f, a + k as f64 * half, a + (k + 1) as f64 * half));
        partial.push(acc.value());
    }
    wynn_epsilon(&partial)
}

/// Trapezoid over one period [a, a+period) with n nodes.
pub fn periodic_trapezoid(mut f: impl FnMut(f64) -> f64, a: f64, period: f64, n: usize) -> f64 {
    let h = period / n as f64;
    let s: Kahan = (0..n).map(|k| f(a + k as f64 * h)).collect();
    s.value() * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_exactness() {
        let (xs, ws) = gauss_legendre(20);
        let total: f64 = ws.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        // degree 38 polynomial integrates exactly
        let m: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(38)).sum();
        assert!((m - 2.0 / 39.0).abs() < 1e-14);
        let (x5, _) = gauss_legendre(5);
        assert!((x5[4] - 0.906_179_845_938_664).abs() < 1e-14);
    }

    #[test]
    fn panels_integrate_smooth() {
        let v = gl_panels(|x| x.exp(), 0.0, 3.0, 3);
        assert!((v - (3f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        // ln 2 = 1 − 1/2 + 1/3 − …
        let mut s = 0.0;
        let partial: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        assert!((wynn_epsilon(&partial) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_tail_sine_integral() {
        // ∫_1^∞ sin x / x dx = π/2 − Si(1)
        let si1 = 0.946_083_070_367_183_0;
        let v = oscillatory_tail(|x| x.sin() / x, 1.0, PI, 30);
        assert!((v - (PI / 2.0 - si1)).abs() < 1e-12);
    }

    #[test]
    fn trapezoid_spectral_on_periodic() {
        // (1/2π)∫ e^{cos x} dx = I0(1)
        let v = periodic_trapezoid(|x| x.cos().exp(), 0.0, 2.0 * PI, 32) / (2.0 * PI);
        assert!((v - 1.266_065_877_752_008_4).abs() < 1e-15);
    }
}
