//! Hecke zeta functions ζ(s,p), divisor sums σ and the Ramanujan expansion.

use gausslab::hecke;
use gausslab::{GaussInt, C64};

fn main() -> gausslab::Result<()> {
    let s = C64::new(2.0, 0.5);
    for p in 0..3 {
        let z = hecke::zeta_hecke(s, p, 60.0)?;
        println!("ζ({s}, {p}) ≈ {:.8}{:+.8}i  ({} ideals, tail ≈ {:.1e})", z.re, z.im, z.terms, z.tail);
    }
    let n = GaussInt::new(6, 2);
    let (tau, sigma) = hecke::tau_sigma(s, 1, n)?;
    println!("τ_(s,1)({n}) = {tau:.6}, σ_(s,1)({n}) = {sigma:.6}");
    let r = hecke::ramanujan_residual(C64::new(1.5, 0.0), 0, n, 40.0, hecke::RAMANUJAN_EPS)?;
    println!("Ramanujan expansion residual {:.2e} over |c| ≤ {:.1}", r.residual, r.c_radius);
    Ok(())
}
