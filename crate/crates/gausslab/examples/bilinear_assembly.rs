//! The bilinear forms on a seeded sequence: Q in both forms, Σ, the zero
//! frequency part Z and the dual part S.

use gausslab::sieve::{self, Dist, QForm};

fn main() -> gausslab::Result<()> {
    let (t, x) = (4.0, 2.0);
    let a = sieve::coeff_gen(2.0, Dist::Gaussian, 11)?;
    println!("{} ideals, ‖a‖² = {:.4}", a.len(), a.norm_sq());
    let qk = sieve::q_main(&a, t, x, QForm::Kloosterman)?;
    let qs = sieve::q_main(&a, t, x, QForm::Shifted)?;
    println!("Q Kloosterman form {qk:.10}, shifted form {qs:.10}");
    let s = sieve::sigma_bilinear(&a, t, 6.0)?;
    println!("Σ = {:.8} (tail ≤ {:.1e})", s.value, s.tail);
    let z = sieve::zero_freq_z(&a, t, x)?;
    let d = sieve::dual_s(&a, t, x)?;
    println!("Z = {z:.8}, S = {:.8}, S₀ budget {:.3e}", d.value, d.s0_budget);
    Ok(())
}
