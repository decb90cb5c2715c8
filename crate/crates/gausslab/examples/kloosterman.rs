//! Kloosterman and Ramanujan sums over ℤ[i], with the Weil bound margin.

use gausslab::expsum;
use gausslab::GaussInt;

fn main() -> gausslab::Result<()> {
    let one = GaussInt::new(1, 0);
    println!("S(1,1;1+i) = {}", expsum::kloosterman(one, one, GaussInt::new(1, 1))?.re);
    for c in ["3", "2+1i", "5+2i", "6+6i"] {
        let c: GaussInt = c.parse()?;
        let m = GaussInt::new(2, -1);
        let n = GaussInt::new(3, 4);
        let s = expsum::kloosterman(m, n, c)?;
        println!(
            "c = {c:<5} S(m,n;c) = {:>10.5}  Weil margin = {:.4}  S(n,0;c) = {:>7.3}",
            s.re,
            expsum::weil_margin(m, n, c)?,
            expsum::ramanujan(n, c)?.re
        );
    }
    Ok(())
}
