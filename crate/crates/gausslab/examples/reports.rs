//! Seeded verification sweeps as JSON reports, the form the CLI emits.

use gausslab::suites;

fn main() -> gausslab::Result<()> {
    for r in suites::quick(3)? {
        println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
    }
    Ok(())
}
