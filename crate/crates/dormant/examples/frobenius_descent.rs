//! Horizontal sections, one level at a time and all the way down.

use dormant::descent::{descend_full, descend_once, unit_counit_checks};
use dormant::random::{field_gauge, rng};
use dormant::{DiffModule, LevelParams};

pub fn run() {
    let params = LevelParams::new(2, 1).unwrap();
    let mut r = rng(4);

    // A pulled-back vector space, disguised by a gauge.
    let space = DiffModule::pullback_of_space(params, 2);
    let module = space.gauge(&field_gauge(&mut r, 2, 2, 1)).unwrap();

    let once = descend_once(&module).unwrap();
    let lower = once.module.unwrap();
    println!("one step: level {} module of rank {}", lower.params().m, lower.rank());

    let full = descend_full(&module).unwrap();
    println!("full descent: {} horizontal sections", full.rank);
    for i in 0..full.rank {
        let col: Vec<String> = full.basis.col(i).iter().map(|x| x.to_string()).collect();
        println!("  {col:?}");
    }
    assert_eq!(module.gauge(&full.basis).unwrap(), space);

    let report = unit_counit_checks(&module).unwrap();
    println!("unit/counit: {report:?}");

    // A module with non-zero curvature has too few sections.
    let p3 = LevelParams::new(3, 0).unwrap();
    let gens = [dormant::Mat::from_ints(3, &[vec![1]])];
    let bad = DiffModule::from_generators(p3, false, &gens).unwrap();
    println!("d/dt + 1 at p = 3: {}", descend_once(&bad).unwrap_err());
}

#[allow(dead_code)]
fn main() {
    run();
}
