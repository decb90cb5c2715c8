//! Exact arithmetic in ℤ[i]: gcd, inverses, factorization, residue systems.

use gausslab::gauss::{self, GaussInt};

fn main() -> gausslab::Result<()> {
    let a: GaussInt = "7+11i".parse()?;
    let c: GaussInt = "4+5i".parse()?;
    println!("N({a}) = {}, N({c}) = {}", a.norm()?, c.norm()?);
    println!("gcd({a}, {c}) = {}", gauss::gcd(a, c)?);
    let inv = gauss::inverse(a, c)?;
    println!("({a})⁻¹ mod {c} = {inv}  (check: {} ≡ 1)", (a * inv).rem(c)?);

    let n: GaussInt = "30".parse()?;
    let f: Vec<String> = gauss::factor(n)?.iter().map(|(p, e)| format!("({p})^{e}")).collect();
    println!("30 = unit · {}", f.join(" "));
    println!("τ(30) = {} ideal divisors", gauss::tau_div(n)?);

    let res = gauss::residues(c)?;
    let units = res.iter().filter(|&&x| gauss::coprime(x, c)).count();
    println!("ℤ[i]/({c}) has {} classes, {units} of them units", res.len());

    let ideals = gauss::annulus(0.0, 3.0)?;
    let shown: Vec<String> = ideals.iter().map(|i| format!("{i}")).collect();
    println!("ideals with |n| ≤ 3: {}", shown.join(", "));
    Ok(())
}
