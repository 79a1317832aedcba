//! One line per acceptance criterion.
//!
//! Exits non-zero on any failure except the documented variant-consistency
//! gap at (p, N) = (3, 2), which is still printed as FAIL.

use dormant::selftest::{run_with, Grid, Outcome};

fn line(o: &Outcome) {
    let limit = o.limit.map_or(String::new(), |l| format!(", limit {} s", l.as_secs()));
    let verdict = if o.ok() { "PASS" } else { "FAIL" };
    let note = if !o.ok() && o.known_gap { " (known gap: no prime-to-p witness for some variants)" } else { "" };
    println!(
        "{verdict} criterion {} {}: {} [{:.1} s{limit}]{note}",
        o.id,
        o.name,
        o.detail,
        o.elapsed.as_secs_f64()
    );
}

fn main() {
    let outcomes = run_with(Grid::Full, line);
    let failed = outcomes.iter().filter(|o| !o.ok()).count();
    let unexpected = outcomes.iter().filter(|o| !o.ok() && (o.passed || !o.known_gap)).count();
    println!("{} of {} criteria passed, {} unexpected failures", outcomes.len() - failed, outcomes.len(), unexpected);
    if unexpected > 0 {
        std::process::exit(1);
    }
}
