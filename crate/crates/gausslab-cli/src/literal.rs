//! Command-line literals.
//!
//! Gaussian integers: `[+-]?digits[+-]digits i` with no spaces (`3+4i`,
//! `-2-1i`), a bare integer (`5`) or a bare imaginary (`7i`).
//! Complex floats: the same shapes with decimal parts (`0.2+1.5i`), or polar
//! `mod@arg` with the argument in radians (`2@0.785`).

use gausslab::{GaussInt, C64};

pub fn gauss_int(s: &str) -> Result<GaussInt, String> {
    s.parse::<GaussInt>().map_err(|e| e.to_string())
}

fn real(s: &str) -> Option<f64> {
    if s.is_empty() || s.contains(char::is_whitespace) {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

pub fn complex(s: &str) -> Result<C64, String> {
    let bad = || format!("malformed complex literal `{s}` (expected a+bi or mod@arg)");
    if let Some((m, a)) = s.split_once('@') {
        let (m, a) = (real(m).ok_or_else(bad)?, real(a).ok_or_else(bad)?);
        if m < 0.0 {
            return Err(bad());
        }
        return Ok(C64::from_polar(m, a));
    }
    let Some(body) = s.strip_suffix('i') else {
        return real(s).map(|x| C64::new(x, 0.0)).ok_or_else(bad);
    };
    // last sign not in leading position and not part of an exponent
    let b = body.as_bytes();
    let split = (1..b.len()).rev().find(|&k| (b[k] == b'+' || b[k] == b'-') && !matches!(b[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k]).ok_or_else(bad)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => real(x.strip_prefix('+').unwrap_or(x)).ok_or_else(bad)?,
    };
    Ok(C64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_literals() {
        assert_eq!(gauss_int("1+1i").unwrap(), GaussInt::new(1, 1));
        assert_eq!(gauss_int("-3-12i").unwrap(), GaussInt::new(-3, -12));
        assert_eq!(gauss_int("5").unwrap(), GaussInt::new(5, 0));
        for bad in ["1+", "1+i+", "1 + 2i", "", "a+bi", "1.5+2i"] {
            assert!(gauss_int(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn complex_literals() {
        assert_eq!(complex("0.2+1.5i").unwrap(), C64::new(0.2, 1.5));
        assert_eq!(complex("-1e-3-2i").unwrap(), C64::new(-1e-3, -2.0));
        assert_eq!(complex("3").unwrap(), C64::new(3.0, 0.0));
        assert_eq!(complex("-i").unwrap(), C64::new(0.0, -1.0));
        let p = complex("2@0.5").unwrap();
        assert!((p - C64::from_polar(2.0, 0.5)).norm() < 1e-15);
        for bad in ["1+", "2@", "@1", "-1@0", "1+2j", "x"] {
            assert!(complex(bad).is_err(), "{bad}");
        }
    }
}
