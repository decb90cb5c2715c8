//! The integral 𝓗(z;u) by its spectral definition and two geometric
//! representations.

use gausslab::kernels::{self, HMethod, SpectralParams};
use gausslab::quad::QuadSpec;
use gausslab::C64;

fn main() -> gausslab::Result<()> {
    let spec = QuadSpec::default();
    let sp = SpectralParams::new(2.0, 2.0)?;
    let (z, u) = (C64::from_polar(1.0, 0.3), C64::from_polar(1.3, 0.4));
    for m in [HMethod::Direct, HMethod::Rep1, HMethod::Rep2] {
        let t = std::time::Instant::now();
        let h = kernels::h_bessel(z, u, &sp, &spec, m)?;
        println!("{m:?}: 𝓗 = {h:.12}  ({:.2?})", t.elapsed());
    }
    Ok(())
}
