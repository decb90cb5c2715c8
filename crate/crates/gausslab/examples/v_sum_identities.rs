//! The V-sums: their DFT against products of Kloosterman sums, and the
//! decomposition of S(m,n;c)e[(m+n)/c] over ideal divisors of c.

use gausslab::expsum;
use gausslab::suites;
use gausslab::GaussInt;

fn main() -> gausslab::Result<()> {
    let (m, n, q) = (GaussInt::new(1, 2), GaussInt::new(-3, 1), GaussInt::new(2, 0));
    for c in ["3+2i", "4", "5+5i"] {
        let c: GaussInt = c.parse()?;
        println!(
            "c = {c:<4} V_q = {:>9.4}  DFT residual {:.1e}  decomposition residual {:.1e}",
            expsum::v_sum(q, m, n, c)?.re,
            expsum::v_dft_residual(m, n, q, c)?,
            expsum::decomposition_residual(m, n, c)?
        );
    }
    // every ideal with N(c) ≤ 100, five random triples each
    for r in [suites::v_dft(100, 5, 1)?, suites::decomposition(100, 5, 1)?] {
        println!("{}", r.stable_json());
    }
    Ok(())
}
