//! Seeded verification sweeps. Each returns [`Report`]s whose `lhs` is the
//! worst residual (or fitted constant) and `rhs_budget` its tolerance.

use std::f64::consts::{FRAC_PI_4, PI};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::expsum::{self, ResidueRing};
use crate::fourier::{self, FhatMethod};
use crate::gauss::{self, GaussInt};
use crate::kernels::{self, HMethod, SpectralParams};
use crate::quad::QuadSpec;
use crate::report::{Report, Worst};
use crate::sieve::{self, Dist, LsKind, LsParams, QForm};
use crate::C64;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform point of the box [−r, r]².
pub fn random_gauss(rng: &mut impl Rng, r: i64) -> GaussInt {
    GaussInt::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

fn moduli(max_norm: u64) -> Result<Vec<GaussInt>> {
    Ok(gauss::annulus(0.0, (max_norm as f64).sqrt())?.into_iter().map(|c| c.gen()).collect())
}

fn merge_all(parts: Vec<Result<Worst>>) -> Result<Worst> {
    let mut w = Worst::default();
    for p in parts {
        w = w.merge(p?);
    }
    Ok(w)
}

/// Σ_α V_α e[αq/c] = S(m,q;c)S(n,q;c) for every ideal c with N(c) ≤ max_norm.
pub fn v_dft(max_norm: u64, trials: u64, seed: u64) -> Result<Report> {
    let start = Instant::now();
    let cs = moduli(max_norm)?;
    let parts: Vec<Result<Worst>> = cs
        .par_iter()
        .enumerate()
        .map(|(k, &c)| {
            let ring = ResidueRing::new(c)?;
            let mut rng = rng_for(seed, k as u64);
            let mut w = Worst::default();
            let r = c.abs().ceil() as i64 + 3;
            for _ in 0..trials {
                let (m, n, q) = (random_gauss(&mut rng, r), random_gauss(&mut rng, r), random_gauss(&mut rng, r));
                let table = ring.v_table(m, n);
                let res = expsum::v_dft_residual_with(&ring, &table, m, n, q);
                w.push(res, 1e-9 * ring.n as f64, || format!("m={m} n={n} q={q} c={c}"));
            }
            Ok(w)
        })
        .collect();
    Ok(merge_all(parts)?
        .report("v_dft")
        .param("max_norm", max_norm)
        .param("trials", trials)
        .param("seed", seed)
        .timed(start))
}

/// S(m,n;c)e[(m+n)/c] against the sum over ideal divisors of the V-sums.
pub fn decomposition(max_norm: u64, trials: u64, seed: u64) -> Result<Report> {
    let start = Instant::now();
    let cs = moduli(max_norm)?;
    let parts: Vec<Result<Worst>> = cs
        .par_iter()
        .enumerate()
        .map(|(k, &c)| {
            let mut rng = rng_for(seed ^ 0x5a5a, k as u64);
            let mut w = Worst::default();
            let r = c.abs().ceil() as i64 + 3;
            for _ in 0..trials {
                let (m, n) = (random_gauss(&mut rng, r), random_gauss(&mut rng, r));
                let res = expsum::decomposition_residual(m, n, c)?;
                w.push(res, 1e-9 * c.norm()? as f64, || format!("m={m} n={n} c={c}"));
            }
            Ok(w)
        })
        .collect();
    Ok(merge_all(parts)?
        .report("decomposition")
        .param("max_norm", max_norm)
        .param("trials", trials)
        .param("seed", seed)
        .timed(start))
}

/// Weil margin ≤ 1 + 1e-9 and |S(n,0;c)| ≤ N(gcd(n,c)), both with rounding slack 1e-9.
pub fn weil_ramanujan(max_norm: u64, trials: u64, seed: u64) -> Result<Vec<Report>> {
    let start = Instant::now();
    let cs = moduli(max_norm)?;
    let parts: Vec<Result<(Worst, Worst)>> = cs
        .par_iter()
        .enumerate()
        .map(|(k, &c)| {
            let ring = ResidueRing::new(c)?;
            let mut rng = rng_for(seed ^ 0xa5a5, k as u64);
            let (mut weil, mut ram) = (Worst::default(), Worst::default());
            let r = c.abs().ceil() as i64 + 3;
            for t in 0..trials {
                let (m, n) = (random_gauss(&mut rng, r), random_gauss(&mut rng, r));
                // every third draw shares a factor with c
                let (m, n) = if t % 3 == 0 { (m * c, n) } else { (m, n) };
                if !(m.is_zero() && n.is_zero()) {
                    let s = ring.kloosterman(m, n).value().norm();
                    let g = gauss::gcd3(m, n, c)?.gen().abs();
                    let margin = s / (gauss::tau_div(c)? as f64 * g * c.abs());
                    weil.push(margin, 1.0 + 1e-9, || format!("m={m} n={n} c={c}"));
                }
                let s = ring.kloosterman(n, gauss::ZERO).value().norm();
                let g = if n.is_zero() { gauss::canonical(c)? } else { gauss::gcd(n, c)? };
                ram.push(s, g.norm() as f64 * (1.0 + 1e-9), || format!("n={n} c={c}"));
            }
            Ok((weil, ram))
        })
        .collect();
    let (mut weil, mut ram) = (Worst::default(), Worst::default());
    for p in parts {
        let (a, b) = p?;
        weil = weil.merge(a);
        ram = ram.merge(b);
    }
    Ok(vec![
        weil.report("weil_bound").param("max_norm", max_norm).param("seed", seed).timed(start),
        ram.report("ramanujan_bound").param("max_norm", max_norm).param("seed", seed).timed(start),
    ])
}

/// Line representation of 𝑱 on κ ∈ {0.5,1,2}, p ∈ {0,1,2}, x ∈ {0.5,1,2,5}, φ ∈ {0,π/4}.
pub fn line_representation(spec: &QuadSpec) -> Result<Report> {
    let start = Instant::now();
    let mut grid = Vec::new();
    for kappa in [0.5, 1.0, 2.0] {
        for p in 0..=2 {
            for x in [0.5, 1.0, 2.0, 5.0] {
                for phi in [0.0, FRAC_PI_4] {
                    grid.push((kappa, p, x, phi));
                }
            }
        }
    }
    let mut w = Worst::default();
    for (kappa, p, x, phi) in grid {
        let r = kernels::boldj_line_rep_residual(kappa, p, x, phi, spec)?;
        w.push(r, 1e-5, || format!("kappa={kappa} p={p} x={x} phi={phi}"));
    }
    Ok(w.report("line_representation").timed(start))
}

/// Circle formula for p = 0..4 on a polar grid with |a| ≤ 10.
pub fn circle_formula() -> Report {
    let start = Instant::now();
    let mut w = Worst::default();
    for p in 0..=4 {
        for k in 0..=20 {
            let r = 0.5 * k as f64;
            for j in 0..8 {
                let a = C64::from_polar(r, j as f64 * PI / 4.0 + 0.1);
                w.push(kernels::circle_formula_residual(p, a), 1e-10, || format!("p={p} a={a}"));
            }
        }
    }
    w.report("circle_formula").timed(start)
}

/// Poisson summation for θ over ω ∈ [0, π) and P ∈ {0.5, 1, 2, 3, 5}.
pub fn theta_poisson() -> Report {
    let start = Instant::now();
    let mut w = Worst::default();
    for p in [0.5, 1.0, 2.0, 3.0, 5.0] {
        for k in 0..16 {
            let om = k as f64 * PI / 16.0;
            w.push(kernels::poisson_theta_residual(om, p), 1e-10, || format!("omega={om} P={p}"));
        }
    }
    w.report("theta_poisson").timed(start)
}

/// Gaussian double-Fourier identity, tolerance 1e-8·(1+|w|²).
pub fn gaussian_ft(t: f64, spec: &QuadSpec) -> Report {
    let start = Instant::now();
    let mut w = Worst::default();
    for r in [0.0, 0.5, 1.0, 2.0, 4.0, 6.0] {
        for th in [0.0, 0.7, 2.0] {
            let x = C64::from_polar(r, th);
            w.push(kernels::gaussian_ft_residual(x, t, spec), 1e-8 * (1.0 + r * r), || format!("w={x}"));
        }
    }
    w.report("gaussian_ft").param("T", t).timed(start)
}

/// Largest relative spread of 𝓗 among its three evaluations, over
/// K = P ∈ `ks`, |z| ∈ {0.5, 1, 2}, u ∈ {1, 1.3e^{0.4i}, 0.7e^{−1.1i}}.
pub fn h_three_way(ks: &[f64], spec: &QuadSpec) -> Result<Report> {
    let start = Instant::now();
    let mut grid = Vec::new();
    for &k in ks {
        for za in [0.5, 1.0, 2.0] {
            for u in [C64::new(1.0, 0.0), C64::from_polar(1.3, 0.4), C64::from_polar(0.7, -1.1)] {
                grid.push((k, C64::from_polar(za, 0.3), u));
            }
        }
    }
    let mut w = Worst::default();
    for (k, z, u) in grid {
        let sp = SpectralParams::new(k, k)?;
        let vals = [HMethod::Direct, HMethod::Rep1, HMethod::Rep2]
            .map(|m| kernels::h_bessel(z, u, &sp, spec, m));
        let vals = [vals[0].clone()?, vals[1].clone()?, vals[2].clone()?];
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let scale = vals.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1e-300);
        w.push((hi - lo) / scale, 1e-5, || format!("K=P={k} z={z} u={u} values={vals:?}"));
    }
    Ok(w.report("h_three_way").timed(start))
}

/// Fitted constant of |𝓘 − |πw|²h(w/2)| ≤ C(|v|+|w|) over |v|,|w| ≤ reach.
pub fn asymptotic_constant(t: f64, reach: f64, steps: usize, spec: &QuadSpec) -> Result<Report> {
    let start = Instant::now();
    let sp = SpectralParams::square(t)?;
    let mut pts = Vec::new();
    for i in 0..=steps {
        for j in 0..=steps {
            let (a, b) = (reach * i as f64 / steps as f64, reach * j as f64 / steps as f64);
            if a + b > 0.0 {
                pts.push((C64::from_polar(a, 0.3), C64::from_polar(b, 1.1)));
            }
        }
    }
    let mut w = Worst::default();
    for (v, x) in pts {
        let c = kernels::i_asymptotic_constant(v, x, &sp, spec)?;
        w.push(c, 50.0, || format!("v={v} w={x}"));
    }
    Ok(w.report("asymptotic_constant").param("T", t).param("reach", reach).timed(start))
}

/// f̂ by the closed formula against the direct transform, and the decay margin.
pub fn fhat_checks(t: f64) -> Result<Vec<Report>> {
    let start = Instant::now();
    let us = [0.1, 0.2, 0.3, 0.5, 0.8];
    let vs = [0.5, 0.8, 1.0, 2f64.sqrt(), 2.0];
    let mut grid = Vec::new();
    for &u in &us {
        for &v in &vs {
            grid.push((u, v));
        }
    }
    let diffs: Vec<Result<(f64, f64, f64)>> = grid
        .par_iter()
        .map(|&(u, v)| {
            let (uc, vc) = (C64::new(u, 0.0), C64::from_polar(v, 0.6));
            let a = fourier::f_hat(uc, vc, t, FhatMethod::Formula)?;
            let b = fourier::f_hat(uc, vc, t, FhatMethod::Direct)?;
            Ok((u, v, (a - b).abs()))
        })
        .collect();
    let mut agree = Worst::default();
    for d in diffs {
        let (u, v, e) = d?;
        agree.push(e, 1e-4, || format!("u={u} v={v}"));
    }
    let agree = agree.report("fhat_methods").param("T", t).timed(start);
    let start = Instant::now();
    let mut decay = Worst::default();
    for k in 1..=24 {
        let ua = (1.0 + 0.25 * k as f64) / t;
        for v in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let m = fourier::fhat_decay_margin(C64::new(ua, 0.0), C64::new(v, 0.0), t)?;
            decay.push(m, 10.0, || format!("|u|={ua} |v|={v}"));
        }
    }
    Ok(vec![agree, decay.report("fhat_decay").param("T", t).timed(start)])
}

/// q-Poisson identity on `pairs` random (c, m, n) with N(c) ≤ max_norm.
pub fn poisson_qsum(max_norm: u64, pairs: u64, t: f64, seed: u64) -> Result<Report> {
    let start = Instant::now();
    let cs = moduli(max_norm)?;
    let mut rng = rng_for(seed, 0);
    let mut w = Worst::default();
    for _ in 0..pairs {
        let c = cs[rng.gen_range(0..cs.len())];
        let (m, n) = loop {
            let (m, n) = (random_gauss(&mut rng, 6), random_gauss(&mut rng, 6));
            if m != n && !m.is_zero() && !n.is_zero() {
                break (m, n);
            }
        };
        let r = sieve::poisson_qsum(c, m, n, t)?;
        w.push(r.residual, r.budget, || format!("c={c} m={m} n={n} lhs={} rhs={}", r.lhs.re, r.rhs));
    }
    Ok(w.report("poisson_qsum").param("max_norm", max_norm).param("T", t).param("seed", seed).timed(start))
}

/// Q(𝒂;X) = Z(𝒂;X) + S(𝒂;X) on the five ideals with 1.5 < |n| ≤ 3.
pub fn poisson_split(t: f64, x: f64, seed: u64) -> Result<Report> {
    let start = Instant::now();
    let a = sieve::coeff_gen(1.5, Dist::Gaussian, seed)?;
    let s = sieve::poisson_split(&a, t, x)?;
    Ok(Report::new("q_equals_z_plus_s", s.residual, s.budget)
        .param("Q", s.q)
        .param("Z", s.z)
        .param("S", s.s)
        .param("ideals", a.len() as u64)
        .param("T", t)
        .param("X", x)
        .param("seed", seed)
        .timed(start))
}

/// Kloosterman and shifted forms of Q over the complete range |c|² ≤ max_norm.
pub fn q_forms(max_norm: u64, t: f64, seed: u64) -> Result<Report> {
    let start = Instant::now();
    let x = (max_norm as f64).sqrt();
    let mut w = Worst::default();
    for (n, trial) in [(1.5, 0), (2.0, 1), (3.0, 2)] {
        let a = sieve::coeff_band(n, 2.0 * n, Dist::Gaussian, seed, trial)?;
        let k = sieve::q_main(&a, t, x, QForm::Kloosterman)?;
        let v = sieve::q_main(&a, t, x, QForm::Shifted)?;
        w.push((k - v).abs() / k.abs().max(1e-300), 1e-8, || format!("N={n} Kloosterman={k} shifted={v}"));
    }
    Ok(w.report("q_forms").param("max_norm", max_norm).param("T", t).param("seed", seed).timed(start))
}

/// Default large-sieve parameters per kind.
pub fn ls_defaults(kind: LsKind) -> LsParams {
    match kind {
        LsKind::Classical | LsKind::Quadform | LsKind::MeanValue | LsKind::RamanujanIneq => LsParams::default(),
        _ => LsParams { n: 20.0, width: 20.0, ..LsParams::default() },
    }
}

/// Empirical constants for the classical, hybrid, cor1 and cor2 kinds.
pub fn large_sieve(trials: u64, seed: u64) -> Result<Vec<Report>> {
    [LsKind::Classical, LsKind::Hybrid, LsKind::Cor1, LsKind::Cor2]
        .into_iter()
        .map(|k| sieve::ls_ratios(k, &ls_defaults(k), trials, seed))
        .collect()
}

/// Weight identity over a few z.
pub fn weight_identity(t: f64) -> Result<Report> {
    let start = Instant::now();
    let mut w = Worst::default();
    for r in [0.5, 1.0, 1.3, 2.0] {
        for th in [0.0, 0.4, 1.2, 2.5] {
            let z = C64::from_polar(r, th);
            w.push(sieve::weight_identity_residual(z, t)?, 1e-8, || format!("z={z}"));
        }
    }
    Ok(w.report("eisenstein_weight_identity").param("T", t).timed(start))
}

/// E₀/(Σ/32) for each T; the report counts the steps where the ratio
/// moves away from 1.
pub fn e_zero_trend(ts: &[f64], n: f64, c_max: f64, seed: u64) -> Result<Report> {
    let start = Instant::now();
    let a = sieve::coeff_gen(n, Dist::Gaussian, seed)?;
    let mut ratios = Vec::new();
    for &t in ts {
        ratios.push(sieve::e_zero_split(&a, t, c_max)?.ratio);
    }
    let away = ratios.windows(2).filter(|p| (p[1] - 1.0).abs() > (p[0] - 1.0).abs()).count();
    Ok(Report::new("e_zero_trend", away as f64, 0.5)
        .param("T", ts.to_vec())
        .param("ratios", ratios)
        .param("N", n)
        .param("c_max", c_max)
        .param("seed", seed)
        .timed(start))
}

/// The exact finite identities, cheap enough for a quick run.
pub fn quick(seed: u64) -> Result<Vec<Report>> {
    Ok(vec![v_dft(400, 20, seed)?, decomposition(400, 20, seed)?, circle_formula(), theta_poisson()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_suites_small() {
        for r in [v_dft(30, 3, 1).unwrap(), decomposition(30, 3, 1).unwrap(), circle_formula(), theta_poisson()] {
            assert!(r.passed(), "{}", r.stable_json());
        }
        for r in weil_ramanujan(30, 5, 2).unwrap() {
            assert!(r.passed(), "{}", r.stable_json());
        }
    }

    #[test]
    fn sweeps_are_reproducible() {
        let a = v_dft(20, 4, 9).unwrap();
        let b = v_dft(20, 4, 9).unwrap();
        assert_eq!(a.stable_json(), b.stable_json());
    }
}
