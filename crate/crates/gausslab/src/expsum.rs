//! Additive character, Kloosterman sums and the V-sums.
//!
//! All sums are brute force over a residue system. Phases are exact
//! integers mod N(c), looked up in a table of N-th roots of unity and
//! accumulated with compensated summation in a fixed residue order.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss::{self, GaussInt, ONE, UNITS, ZERO};
use crate::C64;

/// e[z] = exp(2πi Re z).
pub fn e_of(z: C64) -> C64 {
    C64::from_polar(1.0, TAU * z.re)
}

/// Compensated complex accumulator.
#[derive(Clone, Copy, Default, Debug)]
pub struct KahanC {
    sum: C64,
    comp: C64,
}

impl KahanC {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: C64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> C64 {
        self.sum
    }
}

impl FromIterator<C64> for KahanC {
    fn from_iter<I: IntoIterator<Item = C64>>(it: I) -> Self {
        let mut k = KahanC::new();
        for x in it {
            k.add(x);
        }
        k
    }
}

/// Compensated real accumulator.
#[derive(Clone, Copy, Default, Debug)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

impl FromIterator<f64> for Kahan {
    fn from_iter<I: IntoIterator<Item = f64>>(it: I) -> Self {
        let mut k = Kahan::default();
        for x in it {
            k.add(x);
        }
        k
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExpSumResult {
    pub re: f64,
    pub im: f64,
    pub terms: u64,
}

impl ExpSumResult {
    fn from(v: C64, terms: u64) -> Self {
        ExpSumResult { re: v.re, im: v.im, terms }
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re, self.im)
    }
}

/// ℤ[i]/(c) with an index on residue classes, unit mask, inverses and a
/// table of N-th roots of unity.
pub struct ResidueRing {
    pub c: GaussInt,
    pub n: u64,
    g: i64,
    width: i64,
    shift: i64,
    elems: Vec<GaussInt>,
    inv: Vec<Option<u32>>,
    roots: Vec<C64>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        // a = (a div b)·b + a mod b
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl ResidueRing {
    pub fn new(c: GaussInt) -> Result<Self> {
        Self::with_cap(c, gauss::ENUM_CAP)
    }

    pub fn with_cap(c: GaussInt, cap: u64) -> Result<Self> {
        let elems = gauss::residues_capped(c, cap)?;
        let n = elems.len() as u64;
        let (a, b) = (c.re, c.im);
        // u·b + v·a = g picks the lattice vector u·c + v·(ic) with im = g
        let (g, v, u) = ext_gcd(a, b);
        let g = g.abs();
        let width = n as i64 / g;
        let shift = (u as i128 * a as i128 - v as i128 * b as i128).rem_euclid(width as i128) as i64;
        let roots = (0..n).map(|k| C64::from_polar(1.0, TAU * k as f64 / n as f64)).collect();
        let mut ring = ResidueRing { c, n, g, width, shift, elems, inv: Vec::new(), roots };
        let mut inv = vec![None; n as usize];
        for (k, &x) in ring.elems.iter().enumerate() {
            if inv[k].is_some() {
                continue;
            }
            if let Ok(y) = gauss::inverse(x, c) {
                let j = ring.index(y);
                inv[k] = Some(j as u32);
                inv[j] = Some(k as u32);
            }
        }
        ring.inv = inv;
        Ok(ring)
    }

    /// Position of the class of `z` in [`Self::elems`].
    pub fn index(&self, z: GaussInt) -> usize {
        let y = z.im.rem_euclid(self.g);
        let k = (z.im - y) / self.g;
        let x = (z.re as i128 - k as i128 * self.shift as i128).rem_euclid(self.width as i128) as i64;
        (y * self.width + x) as usize
    }

    pub fn elems(&self) -> &[GaussInt] {
        &self.elems
    }

    pub fn inverse_index(&self, k: usize) -> Option<usize> {
        self.inv[k].map(|j| j as usize)
    }

    pub fn is_unit(&self, k: usize) -> bool {
        self.inv[k].is_some()
    }

    /// Integer phase t with e[z/c] = exp(2πi t/N).
    pub fn phase(&self, z: GaussInt) -> u64 {
        let cb = self.c.conj();
        let re = z.re as i128 * cb.re as i128 - z.im as i128 * cb.im as i128;
        re.rem_euclid(self.n as i128) as u64
    }

    /// e[z/c].
    pub fn e(&self, z: GaussInt) -> C64 {
        self.roots[self.phase(z) as usize]
    }

    pub fn root(&self, t: u64) -> C64 {
        self.roots[(t % self.n) as usize]
    }

    /// Phase helper for linear forms: precompute Re(x·c̄) on the fly.
    fn phase_pair(&self, a: GaussInt, m: GaussInt, b: GaussInt, n: GaussInt) -> u64 {
        let cb = self.c.conj();
        let mc = (m.re as i128 * cb.re as i128 - m.im as i128 * cb.im as i128, m.re as i128 * cb.im as i128 + m.im as i128 * cb.re as i128);
        let nc = (n.re as i128 * cb.re as i128 - n.im as i128 * cb.im as i128, n.re as i128 * cb.im as i128 + n.im as i128 * cb.re as i128);
        let t = a.re as i128 * mc.0 - a.im as i128 * mc.1 + b.re as i128 * nc.0 - b.im as i128 * nc.1;
        t.rem_euclid(self.n as i128) as u64
    }

    /// S(m,n;c) = Σ_{α coprime} e[(αm + ᾱn)/c].
    pub fn kloosterman(&self, m: GaussInt, n: GaussInt) -> ExpSumResult {
        let mut acc = KahanC::new();
        let mut terms = 0;
        for (k, &a) in self.elems.iter().enumerate() {
            if let Some(j) = self.inverse_index(k) {
                acc.add(self.roots[self.phase_pair(a, m, self.elems[j], n) as usize]);
                terms += 1;
            }
        }
        ExpSumResult::from(acc.value(), terms)
    }

    /// V_q(m,n;c) = Σ_{α: (α(q−α),c)=1} e[(ᾱm + (q−α)⁻¹n)/c].
    pub fn v_sum(&self, q: GaussInt, m: GaussInt, n: GaussInt) -> ExpSumResult {
        let mut acc = KahanC::new();
        let mut terms = 0;
        for (k, &a) in self.elems.iter().enumerate() {
            let Some(ia) = self.inverse_index(k) else { continue };
            let Some(ib) = self.inverse_index(self.index(q - a)) else { continue };
            acc.add(self.roots[self.phase_pair(self.elems[ia], m, self.elems[ib], n) as usize]);
            terms += 1;
        }
        ExpSumResult::from(acc.value(), terms)
    }

    /// V_α(m,n;c) for every residue α, in residue order.
    pub fn v_table(&self, m: GaussInt, n: GaussInt) -> Vec<C64> {
        self.elems.iter().map(|&q| self.v_sum(q, m, n).value()).collect()
    }
}

pub fn kloosterman(m: GaussInt, n: GaussInt, c: GaussInt) -> Result<ExpSumResult> {
    Ok(ResidueRing::new(c)?.kloosterman(m, n))
}

pub fn ramanujan(n: GaussInt, c: GaussInt) -> Result<ExpSumResult> {
    kloosterman(n, ZERO, c)
}

pub fn v_sum(q: GaussInt, m: GaussInt, n: GaussInt, c: GaussInt) -> Result<ExpSumResult> {
    Ok(ResidueRing::new(c)?.v_sum(q, m, n))
}

/// |Σ_α V_α(m,n;c) e[αq/c] − S(m,q;c) S(n,q;c)|.
pub fn v_dft_residual(m: GaussInt, n: GaussInt, q: GaussInt, c: GaussInt) -> Result<f64> {
    let ring = ResidueRing::new(c)?;
    let table = ring.v_table(m, n);
    Ok(v_dft_residual_with(&ring, &table, m, n, q))
}

/// Residual using a precomputed V table (reused across several q).
pub fn v_dft_residual_with(ring: &ResidueRing, table: &[C64], m: GaussInt, n: GaussInt, q: GaussInt) -> f64 {
    let lhs: KahanC = ring.elems().iter().zip(table).map(|(&a, &v)| v * ring.e(a * q)).collect();
    let rhs = ring.kloosterman(m, q).value() * ring.kloosterman(n, q).value();
    (lhs.value() - rhs).norm()
}

/// Right-hand side of the decomposition identity:
/// ¼ Σ_{(q)|(c)} Σ_{ε unit} V_{εq}(m,n; c/(εq)).
pub fn decomposition_rhs(m: GaussInt, n: GaussInt, c: GaussInt) -> Result<C64> {
    let mut acc = KahanC::new();
    for q in gauss::divisors(c)? {
        for u in UNITS {
            let qq = q.gen() * u;
            let d = c.div_exact(qq)?;
            acc.add(ResidueRing::new(d)?.v_sum(qq, m, n).value());
        }
    }
    Ok(acc.value() * 0.25)
}

/// |S(m,n;c)·e[(m+n)/c] − decomposition_rhs|.
pub fn decomposition_residual(m: GaussInt, n: GaussInt, c: GaussInt) -> Result<f64> {
    let ring = ResidueRing::new(c)?;
    let lhs = ring.kloosterman(m, n).value() * ring.e(m + n);
    Ok((lhs - decomposition_rhs(m, n, c)?).norm())
}

/// |S(m,n;c)| / (τ(c)·|gcd(m,n,c)|·|c|).
pub fn weil_margin(m: GaussInt, n: GaussInt, c: GaussInt) -> Result<f64> {
    if m.is_zero() && n.is_zero() {
        return Err(Error::Zero("weil_margin needs (m,n) ≠ (0,0)"));
    }
    let s = kloosterman(m, n, c)?.value().norm();
    let g = gauss::gcd3(m, n, c)?.gen().abs();
    Ok(s / (gauss::tau_div(c)? as f64 * g * c.abs()))
}

/// |S(n,0;c)| / N(gcd(n,c)); the Ramanujan-sum bound says this is ≤ 1.
pub fn ramanujan_margin(n: GaussInt, c: GaussInt) -> Result<f64> {
    let s = ramanujan(n, c)?.value().norm();
    let g = if n.is_zero() { gauss::canonical(c)? } else { gauss::gcd(n, c)? };
    Ok(s / g.norm() as f64)
}

pub fn is_unit_modulus(c: GaussInt) -> bool {
    c.is_unit() || c == ONE
}
