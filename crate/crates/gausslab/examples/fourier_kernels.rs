//! The cutoff η and the Fourier kernels f, f̂: closed formula against the
//! direct transform, and the decay margin.

use gausslab::fourier::{self, FhatMethod};
use gausslab::C64;

fn main() -> gausslab::Result<()> {
    let t = 4.0;
    for x in [0.4, 0.6, 0.75, 0.9, 1.0] {
        println!("η({x}) = {:.6}", fourier::eta(x));
    }
    let v = C64::new(0.8, 0.0);
    for w in [0.0, 0.5, 1.0, 2.0] {
        println!("f({w}; {v}) = {:.8}", fourier::f_kernel(C64::new(w, 0.0), v, t)?);
    }
    for u in [0.1, 0.2, 0.5] {
        let u = C64::new(u, 0.0);
        let a = fourier::f_hat(u, v, t, FhatMethod::Formula)?;
        let b = fourier::f_hat(u, v, t, FhatMethod::Direct)?;
        println!("f̂({u}; {v}): formula {a:.10e}  direct {b:.10e}");
    }
    // the decay bound is stated for |u| > 1/T
    for u in [0.3, 0.5, 1.0] {
        let m = fourier::fhat_decay_margin(C64::new(u, 0.0), v, t)?;
        println!("decay margin at |u| = {u}: {m:.3}");
    }
    Ok(())
}
