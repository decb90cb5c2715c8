//! The variant integral 𝓘(v,w): both forms, the natural cutoff form, its
//! main term and the fitted asymptotic constant.

use gausslab::kernels::{self, IForm, SpectralParams};
use gausslab::quad::QuadSpec;
use gausslab::C64;

fn main() -> gausslab::Result<()> {
    let spec = QuadSpec::default();
    let sp = SpectralParams::square(4.0)?;
    let (v, w) = (C64::from_polar(1.5, 0.3), C64::from_polar(2.0, 1.1));
    for form in [IForm::First, IForm::Second, IForm::Natural, IForm::Main] {
        println!("{form:?}: 𝓘 = {:.8}", kernels::i_variant(v, w, &sp, &spec, form)?);
    }
    println!("|𝓘 − main| / (|v|+|w|) = {:.3}", kernels::i_asymptotic_constant(v, w, &sp, &spec)?);
    println!("Gaussian transform residual {:.1e}", kernels::gaussian_ft_residual(w, 4.0, &spec));
    Ok(())
}
