//! Poisson summation over q for a fixed modulus: the windowed V-sum side
//! against the Kloosterman side with its zero frequency split off.

use gausslab::sieve;
use gausslab::GaussInt;

fn main() -> gausslab::Result<()> {
    let t = 4.0;
    for (c, m, n) in [("2+1i", "1", "1+1i"), ("3", "2-1i", "-1"), ("3+3i", "1+2i", "-2")] {
        let (c, m, n): (GaussInt, GaussInt, GaussInt) = (c.parse()?, m.parse()?, n.parse()?);
        let r = sieve::poisson_qsum(c, m, n, t)?;
        println!(
            "c = {c:<4} m = {m:<4} n = {n:<4} lhs = {:>12.6} rhs = {:>12.6} zero term = {:>10.6} residual {:.1e} (budget {:.1e})",
            r.lhs.re, r.rhs, r.zero_term, r.residual, r.budget
        );
    }
    Ok(())
}
