//! The Eisenstein contribution: the weight identity, E with its 1/ζ
//! truncation caveat, and E₀ against Σ/32 as T grows.

use gausslab::sieve::{self, Dist};
use gausslab::C64;

fn main() -> gausslab::Result<()> {
    let z = C64::from_polar(1.3, 0.4);
    println!("weight identity residual {:.1e}", sieve::weight_identity_residual(z, 4.0)?);
    let a = sieve::coeff_gen(6.0, Dist::Gaussian, 1)?;
    let e = sieve::eisenstein_e(&a, 4.0)?;
    println!("E = {:.8} (1/ζ truncated at radius {:.1}, caveat {:.1e})", e.value, e.zeta_radius, e.zeta_caveat);
    let a = sieve::coeff_gen(10.0, Dist::Gaussian, 1)?;
    for t in [3.0, 4.0, 5.0, 6.0] {
        let s = sieve::e_zero_split(&a, t, 60.0)?;
        println!("T = {t}: E₀ = {:.6e}, Σ/32 = {:.6e}, ratio {:.4}", s.e0, s.sigma_over_32, s.ratio);
    }
    Ok(())
}
