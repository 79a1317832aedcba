//! Level-m binomial coefficients and the brace/angle tables.

use dormant::combinatorics::{binom_mod_p, table};
use dormant::{build_table, qr_decompose, LevelParams};

pub fn run() {
    let params = LevelParams::new(3, 1).unwrap();
    let big = params.period();

    // j = p^m q_j + r_j
    for j in [0, 4, 5, 8] {
        let (q, r) = qr_decompose(j, params);
        println!("j = {j}: q = {q}, r = {r}");
    }

    let tab = build_table(params).unwrap();
    println!("brace row j = {big}:");
    let row: Vec<u32> = (0..=big).map(|jp| tab.brace(big, jp)).collect();
    println!("  {row:?}");

    // angle is C(j, j') divided by brace, reduced mod p.
    for (j, jp) in [(4, 1), (6, 3), (9, 3)] {
        let c = binom_mod_p(j as u64, jp as u64, params.p);
        println!("C({j},{jp}) = {c} mod 3, brace = {}, angle = {}", tab.brace(j, jp), tab.angle(j, jp));
    }

    // The global cache hands out the same table.
    assert!(std::sync::Arc::ptr_eq(&table(params), &table(params)));

    // Non-integral angles exist: at p = 2, m = 1 the value at (6, 3) is 10/3, still 2-integral.
    let p2 = LevelParams::new(2, 1).unwrap();
    println!("p = 2, m = 1: angle(6, 3) = {} (10/3 mod 2)", table(p2).angle(6, 3));
    assert_eq!(table(p2).angle(6, 3), 0);
}

#[allow(dead_code)]
fn main() {
    run();
}
