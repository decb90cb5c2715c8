//! Acceptance criteria 1–12 at their stated tolerances. One line per
//! criterion; exits non-zero if any fails.
//!
//! `cargo test -p gausslab --test acceptance`

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gausslab::quad::QuadSpec;
use gausslab::suites;
use gausslab::{Report, Result};

const SEED: u64 = 20240;

struct Outcome {
    pass: bool,
    detail: String,
}

fn reports(rs: &[Report], limit: Option<Duration>, took: Duration) -> Outcome {
    let mut pass = rs.iter().all(Report::passed);
    let mut detail: Vec<String> = rs.iter().map(|r| format!("{}={:.2e}/{:.1e}", r.name, r.lhs, r.rhs_budget)).collect();
    if let Some(l) = limit {
        pass &= took <= l;
        detail.push(format!("{:.1}s (limit {}s)", took.as_secs_f64(), l.as_secs()));
    } else {
        detail.push(format!("{:.1}s", took.as_secs_f64()));
    }
    Outcome { pass, detail: detail.join(" ") }
}

fn timed(limit: Option<u64>, f: impl FnOnce() -> Result<Vec<Report>>) -> Outcome {
    let start = Instant::now();
    match f() {
        Ok(rs) => reports(&rs, limit.map(Duration::from_secs), start.elapsed()),
        Err(e) => Outcome { pass: false, detail: format!("error: {e}") },
    }
}

fn large_sieve_block() -> Outcome {
    let start = Instant::now();
    let run = || -> Result<_> {
        let a = suites::large_sieve(20, SEED)?;
        let b = suites::large_sieve(20, SEED)?;
        let same = a.iter().zip(&b).all(|(x, y)| x.stable_json() == y.stable_json());
        let mut rs = a;
        rs.push(suites::weight_identity(4.0)?);
        let trend = suites::e_zero_trend(&[3.0, 4.0, 5.0, 6.0], 10.0, 60.0, SEED)?;
        let ratios = trend.params.get("ratios").cloned().unwrap_or_default();
        rs.push(trend);
        Ok((rs, same, ratios))
    };
    match run() {
        Ok((rs, same, ratios)) => {
            let mut o = reports(&rs, None, start.elapsed());
            o.pass &= same;
            o.detail = format!("{} reproducible={same} E0/(Σ/32)={ratios}", o.detail);
            o
        }
        Err(e) => Outcome { pass: false, detail: format!("error: {e}") },
    }
}

fn main() -> ExitCode {
    let spec = QuadSpec::default();
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Outcome>)> = vec![
        ("V-sum DFT identity", Box::new(|| timed(Some(60), || Ok(vec![suites::v_dft(400, 20, SEED)?])))),
        ("Kloosterman decomposition", Box::new(|| timed(Some(60), || Ok(vec![suites::decomposition(400, 20, SEED)?])))),
        ("Weil and Ramanujan bounds", Box::new(|| timed(None, || suites::weil_ramanujan(400, 20, SEED)))),
        ("line representation of J", Box::new(move || timed(Some(300), || Ok(vec![suites::line_representation(&spec)?])))),
        ("circle formula", Box::new(|| timed(None, || Ok(vec![suites::circle_formula()])))),
        ("three-way H agreement", Box::new(move || timed(Some(600), || Ok(vec![suites::h_three_way(&[1.0, 2.0, 3.0], &spec)?])))),
        (
            "theta Poisson and Gaussian transform",
            Box::new(move || timed(None, || Ok(vec![suites::theta_poisson(), suites::gaussian_ft(4.0, &spec)]))),
        ),
        ("asymptotic constant at T=8", Box::new(move || timed(None, || Ok(vec![suites::asymptotic_constant(8.0, 16.0, 4, &spec)?])))),
        ("f-hat formula and decay", Box::new(|| timed(None, || suites::fhat_checks(4.0)))),
        (
            "Poisson q-sum and Q = Z + S",
            Box::new(|| timed(None, || Ok(vec![suites::poisson_qsum(100, 10, 4.0, SEED)?, suites::poisson_split(4.0, 2.0, SEED)?]))),
        ),
        ("Kloosterman and shifted Q forms", Box::new(|| timed(None, || Ok(vec![suites::q_forms(50, 4.0, SEED)?])))),
        ("large sieve constants and Eisenstein", Box::new(large_sieve_block)),
    ];
    let mut failed = 0;
    for (k, (label, run)) in criteria.into_iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2}: {} {label}: {}", k + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of 12 passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
