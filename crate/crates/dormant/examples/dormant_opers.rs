//! Ramification triples of dormant PGL2-opers on the three-pointed line.

use dormant::covers::*;

pub fn run() {
    let t = RamTriple::new(3, 3, 3);
    if let Realization::Witness(w) = realizable(&t, 5, 1, DEFAULT_BUDGET).unwrap() {
        println!("{t}: σ0 = {}, σ1 = {}, σ∞ = {}, |G| = {}", w.sigma0, w.sigma1, w.sigma_inf, w.group_order);
    }

    for (p, n) in [(5, 1), (3, 2)] {
        println!("p = {p}, N = {n}:");
        for row in enumerate_opers(p, n, DEFAULT_BUDGET).unwrap() {
            let radii: Vec<u64> = row.radii.iter().map(|r| r.value).collect();
            let variants: Vec<String> = row.variants.iter().map(|(v, s)| format!("{v} {}", s.label())).collect();
            println!(
                "  {} deg {} {} radii {radii:?} consistent {:?}\n    {}",
                row.triple,
                row.degree,
                row.status.label(),
                row.variants_consistent,
                variants.join("; ")
            );
        }
    }
}

#[allow(dead_code)]
fn main() {
    run();
}
