//! Bessel kernels of complex order: J_{iκ,p}, its line representation and
//! the circle formula.

use std::f64::consts::FRAC_PI_4;

use gausslab::kernels;
use gausslab::quad::QuadSpec;
use gausslab::C64;

fn main() -> gausslab::Result<()> {
    let spec = QuadSpec::default();
    let z = C64::from_polar(2.0, 0.6);
    for (kappa, p) in [(0.5, 0), (1.0, 1), (2.0, 2)] {
        println!("J_(i{kappa},{p})({z:.3}) = {:.8}", kernels::kernel_j(kappa, p, z)?);
    }
    for x in [0.5, 2.0, 5.0] {
        let res = kernels::boldj_line_rep_residual(1.0, 1, x, FRAC_PI_4, &spec)?;
        println!("line representation at x = {x}: residual {res:.1e}");
    }
    for p in 0..3 {
        println!("circle formula p = {p}: residual {:.1e}", kernels::circle_formula_residual(p, C64::new(3.0, -4.0)));
    }
    Ok(())
}
