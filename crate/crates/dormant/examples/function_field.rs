//! Rational functions over F_p and their level-m derivations.

use dormant::derivation::recombine;
use dormant::{derive, frobenius_split, LevelParams, RatFunc};

pub fn run() {
    let p = 3;
    let f = RatFunc::parse(p, "t^4 + 2*t / t^2 + 1").unwrap();
    println!("f = {f}");

    // f = Σ g_i(t^3) t^i
    let parts = frobenius_split(&f, 1);
    for (i, g) in parts.iter().enumerate() {
        println!("  component {i}: {g}");
    }
    assert_eq!(recombine(&parts), f);

    let params = LevelParams::new(p, 1).unwrap();
    for j in 0..=4 {
        println!("∂_<{j}> f = {}", derive(&f, j, params, false));
    }
    // t^9 is a constant for every ∂_<j>, j < 9.
    let t9 = RatFunc::monomial(p, 1, 9);
    assert!((1..9).all(|j| derive(&t9, j, params, false).is_zero()));
    // The log derivation keeps t^n an eigenvector.
    println!("log ∂_<3> t^5 = {}", derive(&RatFunc::monomial(p, 1, 5), 3, params, true));
}

#[allow(dead_code)]
fn main() {
    run();
}
