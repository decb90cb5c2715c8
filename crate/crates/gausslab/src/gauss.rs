//! Exact arithmetic in the Gaussian integers.
//!
//! Every operation is checked: overflow is reported as an error instead of
//! wrapping. Products go through `i128` before being narrowed back.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on the number of residue classes or annulus points enumerated.
pub const ENUM_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
pub const I: GaussInt = GaussInt { re: 0, im: 1 };
pub const UNITS: [GaussInt; 4] = [
    GaussInt { re: 1, im: 0 },
    GaussInt { re: 0, im: 1 },
    GaussInt { re: -1, im: 0 },
    GaussInt { re: 0, im: -1 },
];

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

impl GaussInt {
    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.re.abs() + self.im.abs() == 1
    }

    /// re² + im², as u128 so it never overflows.
    pub fn norm_wide(self) -> u128 {
        let a = self.re as i128;
        let b = self.im as i128;
        (a * a + b * b) as u128
    }

    pub fn norm(self) -> Result<u64> {
        u64::try_from(self.norm_wide()).map_err(|_| Error::Overflow)
    }

    pub fn abs(self) -> f64 {
        (self.re as f64).hypot(self.im as f64)
    }

    pub fn conj(self) -> Self {
        GaussInt::new(self.re, -self.im)
    }

    pub fn checked_add(self, o: Self) -> Result<Self> {
        Ok(GaussInt::new(
            self.re.checked_add(o.re).ok_or(Error::Overflow)?,
            self.im.checked_add(o.im).ok_or(Error::Overflow)?,
        ))
    }

    pub fn checked_sub(self, o: Self) -> Result<Self> {
        Ok(GaussInt::new(
            self.re.checked_sub(o.re).ok_or(Error::Overflow)?,
            self.im.checked_sub(o.im).ok_or(Error::Overflow)?,
        ))
    }

    pub fn checked_mul(self, o: Self) -> Result<Self> {
        let (a, b, c, d) = (self.re as i128, self.im as i128, o.re as i128, o.im as i128);
        Ok(GaussInt::new(narrow(a * c - b * d)?, narrow(a * d + b * c)?))
    }

    pub fn checked_neg(self) -> Result<Self> {
        ZERO.checked_sub(self)
    }

    /// Quotient of rounded division: each component is ceil(x − ½), so the
    /// remainder lies in c·(−½, ½]².
    pub fn div_round(self, c: Self) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Zero("divisor"));
        }
        let n = c.norm_wide() as i128;
        let (a, b, x, y) = (self.re as i128, self.im as i128, c.re as i128, c.im as i128);
        // self * conj(c)
        let pr = a * x + b * y;
        let pi = b * x - a * y;
        Ok(GaussInt::new(narrow(round_half_down(pr, n))?, narrow(round_half_down(pi, n))?))
    }

    /// Remainder in the fundamental domain c·(−½, ½]².
    pub fn rem(self, c: Self) -> Result<Self> {
        let q = self.div_round(c)?;
        let (a, b) = (self.re as i128, self.im as i128);
        let (qr, qi, x, y) = (q.re as i128, q.im as i128, c.re as i128, c.im as i128);
        Ok(GaussInt::new(
            narrow(a - (qr * x - qi * y))?,
            narrow(b - (qr * y + qi * x))?,
        ))
    }

    /// Exact division; errors when `c` does not divide `self`.
    pub fn div_exact(self, c: Self) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Zero("divisor"));
        }
        let n = c.norm_wide() as i128;
        let (a, b, x, y) = (self.re as i128, self.im as i128, c.re as i128, c.im as i128);
        let pr = a * x + b * y;
        let pi = b * x - a * y;
        if pr % n != 0 || pi % n != 0 {
            return Err(Error::NotDivisible);
        }
        Ok(GaussInt::new(narrow(pr / n)?, narrow(pi / n)?))
    }

    pub fn divides(self, n: Self) -> bool {
        if self.is_zero() {
            return n.is_zero();
        }
        n.div_exact(self).is_ok()
    }

    pub fn congruent(self, o: Self, c: Self) -> Result<bool> {
        Ok(self.checked_sub(o)?.rem(c)?.is_zero())
    }

    pub fn to_c64(self) -> crate::C64 {
        crate::C64::new(self.re as f64, self.im as f64)
    }

    pub fn pow(self, e: u32) -> Result<Self> {
        let mut acc = ONE;
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }
}

// ceil(p/n − 1/2) = floor((2p − n)/(2n)) + 1 unless exact; computed as
// −floor((n − 2p)/(2n)).
fn round_half_down(p: i128, n: i128) -> i128 {
    -(n - 2 * p).div_euclid(2 * n)
}

impl std::ops::Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: Self) -> Self {
        self.checked_add(o).expect("gaussian overflow")
    }
}

impl std::ops::Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: Self) -> Self {
        self.checked_sub(o).expect("gaussian overflow")
    }
}

impl std::ops::Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(o).expect("gaussian overflow")
    }
}

impl std::ops::Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> Self {
        self.checked_neg().expect("gaussian overflow")
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < 0 {
            write!(f, "{}-{}i", self.re, self.im.unsigned_abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `a+bi` / `a-bi`, a bare integer `a`, or a bare imaginary `bi`.
impl FromStr for GaussInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let t = s.trim();
        if t.is_empty() || t.contains(char::is_whitespace) {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return t.parse::<i64>().map(|re| GaussInt::new(re, 0)).map_err(|_| bad());
        };
        // split at the last sign that is not in leading position
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, ch)| ch == '+' || ch == '-')
            .map(|(k, _)| k)
            .last();
        let (re_s, im_s) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let digits = |x: &str| {
            let d = x.trim_start_matches(['+', '-']);
            !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && x.len() - d.len() <= 1
        };
        if !digits(re_s) || !digits(im_s) {
            return Err(bad());
        }
        let re = re_s.parse::<i64>().map_err(|_| bad())?;
        let im = im_s.trim_start_matches('+').parse::<i64>().map_err(|_| bad())?;
        Ok(GaussInt::new(re, im))
    }
}

impl Serialize for GaussInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonical generator of a nonzero principal ideal: re > 0, im ≥ 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IdealRep(GaussInt);

impl IdealRep {
    pub fn gen(self) -> GaussInt {
        self.0
    }

    pub fn norm(self) -> u64 {
        self.0.norm().expect("canonical norm fits")
    }
}

impl fmt::Display for IdealRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl PartialOrd for IdealRep {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Order by (norm, re), the enumeration order used throughout.
impl Ord for IdealRep {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.0.norm_wide(), self.0.re).cmp(&(o.0.norm_wide(), o.0.re))
    }
}

pub fn canonical(z: GaussInt) -> Result<IdealRep> {
    if z.is_zero() {
        return Err(Error::Zero("canonical"));
    }
    let mut w = z;
    for _ in 0..4 {
        if w.re > 0 && w.im >= 0 {
            return Ok(IdealRep(w));
        }
        // multiply by −i: (a+bi)(−i) = b − ai
        w = GaussInt::new(w.im, w.re.checked_neg().ok_or(Error::Overflow)?);
    }
    unreachable!("one associate lies in the first quadrant")
}

pub fn gcd(a: GaussInt, b: GaussInt) -> Result<IdealRep> {
    let (mut x, mut y) = (a, b);
    while !y.is_zero() {
        let r = x.rem(y)?;
        x = y;
        y = r;
    }
    canonical(x).map_err(|_| Error::Zero("gcd of two zeros"))
}

pub fn gcd3(a: GaussInt, b: GaussInt, c: GaussInt) -> Result<IdealRep> {
    if a.is_zero() && b.is_zero() {
        return canonical(c);
    }
    gcd(gcd(a, b)?.gen(), c)
}

pub fn coprime(a: GaussInt, c: GaussInt) -> bool {
    matches!(gcd(a, c), Ok(g) if g.gen() == ONE)
}

fn int_gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// A complete residue system mod `c`, each element in c·(−½,½]².
///
/// The lattice c·ℤ[i] has Hermite basis {(N/g, 0), (s, g)} with
/// g = gcd(re c, im c), so the box 0 ≤ x < N/g, 0 ≤ y < g hits every class
/// once. Order is the box order (y outer, x inner).
pub fn residues(c: GaussInt) -> Result<Vec<GaussInt>> {
    residues_capped(c, ENUM_CAP)
}

pub fn residues_capped(c: GaussInt, cap: u64) -> Result<Vec<GaussInt>> {
    if c.is_zero() {
        return Err(Error::Zero("modulus"));
    }
    let n = c.norm()?;
    if n > cap {
        return Err(Error::Cap { what: "residues", count: n, cap });
    }
    let g = int_gcd(c.re, c.im);
    let width = n as i64 / g;
    let mut out = Vec::with_capacity(n as usize);
    for y in 0..g {
        for x in 0..width {
            out.push(GaussInt::new(x, y).rem(c)?);
        }
    }
    Ok(out)
}

/// Multiplicative inverse mod `c` via the extended Euclidean algorithm.
pub fn inverse(a: GaussInt, c: GaussInt) -> Result<GaussInt> {
    if c.is_zero() {
        return Err(Error::Zero("modulus"));
    }
    let (mut r0, mut r1) = (c, a.rem(c)?);
    let (mut s0, mut s1) = (ZERO, ONE);
    while !r1.is_zero() {
        let q = r0.div_round(r1)?;
        (r0, r1) = (r1, r0.checked_sub(q.checked_mul(r1)?)?);
        (s0, s1) = (s1, s0.checked_sub(q.checked_mul(s1)?)?);
        // keep coefficients small
        s1 = s1.rem(c)?;
    }
    if !r0.is_unit() {
        return Err(Error::NotCoprime { a, c });
    }
    // r0 = s0·a mod c is a unit u; the inverse is s0·u⁻¹ = s0·conj(u)
    s0.checked_mul(r0.conj())?.rem(c)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = int_gcd(x.abs_diff(y) as i64, n as i64) as u64;
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Rational prime factorization, ascending primes.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    fn rec(n: u64, out: &mut Vec<u64>) {
        if n == 1 {
            return;
        }
        if is_prime_u64(n) {
            out.push(n);
            return;
        }
        let d = pollard_rho(n);
        rec(d, out);
        rec(n / d, out);
    }
    let mut ps = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5, 7, 11, 13] {
        while m % p == 0 {
            ps.push(p);
            m /= p;
        }
    }
    rec(m, &mut ps);
    ps.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in ps {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// x with x² ≡ −1 (mod p) for a prime p ≡ 1 (mod 4).
fn sqrt_minus_one(p: u64) -> u64 {
    for a in 2..p {
        // a is a non-residue iff a^((p−1)/2) ≡ −1
        if pow_mod(a, (p - 1) / 2, p) == p - 1 {
            return pow_mod(a, (p - 1) / 4, p);
        }
    }
    unreachable!("p ≡ 1 mod 4 has a non-residue")
}

/// Prime factorization in ℤ[i]: canonical primes with exponents, sorted by
/// (norm, re). The product of prime powers equals `n` up to a unit.
pub fn factor(n: GaussInt) -> Result<Vec<(IdealRep, u32)>> {
    if n.is_zero() {
        return Err(Error::Zero("factor"));
    }
    let mut out = Vec::new();
    let mut rest = n;
    for (p, e) in factor_u64(n.norm()?) {
        if p == 2 {
            out.push((canonical(GaussInt::new(1, 1))?, e));
        } else if p % 4 == 3 {
            out.push((canonical(GaussInt::new(p as i64, 0))?, e / 2));
        } else {
            let x = sqrt_minus_one(p);
            let pi = gcd(GaussInt::new(p as i64, 0), GaussInt::new(x as i64, 1))?;
            for prime in [pi, canonical(pi.gen().conj())?] {
                let mut k = 0;
                while let Ok(q) = rest.div_exact(prime.gen()) {
                    rest = q;
                    k += 1;
                }
                if k > 0 {
                    out.push((prime, k));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All ideal divisors of (n), sorted by (norm, re).
pub fn divisors(n: GaussInt) -> Result<Vec<IdealRep>> {
    let mut gens = vec![ONE];
    for (p, e) in factor(n)? {
        let mut next = Vec::with_capacity(gens.len() * (e as usize + 1));
        for g in &gens {
            let mut acc = *g;
            next.push(acc);
            for _ in 0..e {
                acc = acc.checked_mul(p.gen())?;
                next.push(acc);
            }
        }
        gens = next;
    }
    let mut out = gens.into_iter().map(canonical).collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

pub fn tau_div(n: GaussInt) -> Result<u64> {
    Ok(factor(n)?.iter().map(|&(_, e)| e as u64 + 1).product())
}

/// Ideal representatives with n1 < |gen| ≤ n2, sorted by (norm, re).
pub fn annulus(n1: f64, n2: f64) -> Result<Vec<IdealRep>> {
    annulus_capped(n1, n2, ENUM_CAP)
}

pub fn annulus_capped(n1: f64, n2: f64, cap: u64) -> Result<Vec<IdealRep>> {
    if !(n1 >= 0.0 && n2 > n1) {
        return Err(Error::Domain(format!("annulus needs 0 ≤ N1 < N2, got {n1}, {n2}")));
    }
    let estimate = (std::f64::consts::FRAC_PI_4 * (n2 * n2 - n1 * n1)).ceil() as u64;
    if estimate > cap {
        return Err(Error::Cap { what: "annulus", count: estimate, cap });
    }
    let lo2 = n1 * n1;
    let hi2 = n2 * n2;
    let r = n2.floor() as i64;
    let mut out = Vec::new();
    for a in 1..=r {
        for b in 0..=r {
            let nn = (a * a + b * b) as f64;
            if nn > lo2 && nn <= hi2 {
                out.push(IdealRep(GaussInt::new(a, b)));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every nonzero Gaussian integer with |z| ≤ r (all associates), sorted by
/// (norm, re, im).
pub fn disc_points(r: f64) -> Vec<GaussInt> {
    let m = r.floor() as i64;
    let r2 = r * r;
    let mut out = Vec::new();
    for a in -m..=m {
        for b in -m..=m {
            if (a, b) != (0, 0) && ((a * a + b * b) as f64) <= r2 {
                out.push(GaussInt::new(a, b));
            }
        }
    }
    out.sort_by_key(|z| (z.norm_wide(), z.re, z.im));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussInt {
        GaussInt::new(a, b)
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical(g(3, 0)).unwrap().gen(), g(3, 0));
        assert_eq!(canonical(g(0, -2)).unwrap().gen(), g(2, 0));
        assert_eq!(canonical(g(-1, -1)).unwrap().gen(), g(1, 1));
        assert_eq!(canonical(g(0, 5)).unwrap().gen(), g(5, 0));
        assert!(canonical(ZERO).is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(g(1, 1), g(2, 0)).unwrap().gen(), g(1, 1));
        assert_eq!(gcd(g(3, 0), g(5, 0)).unwrap().gen(), ONE);
        assert_eq!(gcd(g(2, 3), g(2, 3)).unwrap().gen(), canonical(g(2, 3)).unwrap().gen());
        assert_eq!(gcd(g(-4, 2), ZERO).unwrap(), canonical(g(-4, 2)).unwrap());
        assert!(gcd(ZERO, ZERO).is_err());
    }

    #[test]
    fn rounding_tie_break() {
        // 1/2 rounds to 0, −1/2 rounds to −1
        assert_eq!(g(1, 0).div_round(g(2, 0)).unwrap(), ZERO);
        assert_eq!(g(-1, 0).div_round(g(2, 0)).unwrap(), g(-1, 0));
        assert_eq!(g(3, 1).div_round(g(2, 0)).unwrap(), g(1, 0));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residues(ONE).unwrap(), vec![ZERO]);
        assert_eq!(residues(g(1, 1)).unwrap().len(), 2);
        let r2 = residues(g(2, 0)).unwrap();
        assert_eq!(r2.len(), 4);
        for (k, a) in r2.iter().enumerate() {
            for b in &r2[k + 1..] {
                assert!(!a.congruent(*b, g(2, 0)).unwrap());
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(ONE, g(3, 2)).unwrap(), ONE);
        let x = inverse(I, g(2, 1)).unwrap();
        assert!(I.checked_mul(x).unwrap().congruent(ONE, g(2, 1)).unwrap());
        assert!(matches!(inverse(g(1, 1), g(2, 0)), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn factor_examples() {
        let f2 = factor(g(2, 0)).unwrap();
        assert_eq!(f2, vec![(canonical(g(1, 1)).unwrap(), 2)]);
        let f5 = factor(g(5, 0)).unwrap();
        assert_eq!(f5.len(), 2);
        let prod = f5[0].0.gen() * f5[1].0.gen();
        assert_eq!(canonical(prod).unwrap().gen(), g(5, 0));
        assert_eq!(factor(g(3, 0)).unwrap(), vec![(canonical(g(3, 0)).unwrap(), 1)]);
    }

    #[test]
    fn factor_large_norm() {
        // norm = 1000000007² + 4·… exercise Pollard rho on a semiprime norm
        let z = g(999_983, 1_000_003);
        let f = factor(z).unwrap();
        let mut acc = ONE;
        for (p, e) in f {
            acc = acc * p.gen().pow(e).unwrap();
        }
        assert_eq!(canonical(acc).unwrap(), canonical(z).unwrap());
    }

    #[test]
    fn divisor_examples() {
        let d = divisors(g(1, 1)).unwrap();
        assert_eq!(d.iter().map(|x| x.gen()).collect::<Vec<_>>(), vec![ONE, g(1, 1)]);
        assert_eq!(tau_div(g(1, 1)).unwrap(), 2);
        assert_eq!(tau_div(g(2, 0)).unwrap(), 3);
    }

    #[test]
    fn annulus_examples() {
        let a = annulus(0.0, 1.5).unwrap();
        assert_eq!(a.iter().map(|x| x.gen()).collect::<Vec<_>>(), vec![ONE, g(1, 1)]);
        let b = annulus(1.0, 2.0).unwrap();
        assert_eq!(b.iter().map(|x| x.gen()).collect::<Vec<_>>(), vec![g(1, 1), g(2, 0)]);
    }

    #[test]
    fn parse_literals() {
        assert_eq!("3+4i".parse::<GaussInt>().unwrap(), g(3, 4));
        assert_eq!("-3-4i".parse::<GaussInt>().unwrap(), g(-3, -4));
        assert_eq!("7".parse::<GaussInt>().unwrap(), g(7, 0));
        assert_eq!("-2i".parse::<GaussInt>().unwrap(), g(0, -2));
        assert_eq!("1+0i".parse::<GaussInt>().unwrap(), ONE);
        for bad in ["1+", "", "1 + 2i", "i", "1+-2i", "a+bi", "++1i"] {
            assert!(bad.parse::<GaussInt>().is_err(), "{bad}");
        }
        assert_eq!(g(2, -5).to_string(), "2-5i");
    }

    #[test]
    fn overflow_is_loud() {
        let big = g(i64::MAX, 0);
        assert!(matches!(big.checked_mul(g(2, 0)), Err(Error::Overflow)));
        assert!(big.checked_add(ONE).is_err());
    }
}
