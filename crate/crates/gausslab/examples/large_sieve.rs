//! Empirical constants of the large-sieve inequalities over seeded trials.

use gausslab::sieve::{self, LsKind};
use gausslab::suites;

fn main() -> gausslab::Result<()> {
    for kind in LsKind::ALL {
        let p = suites::ls_defaults(kind);
        let r = sieve::ls_ratios(kind, &p, 10, 7)?;
        println!("{:<16} max LHS/RHS = {:.4e}  ({:.2}s)", kind.name(), r.lhs, r.elapsed);
    }
    Ok(())
}
