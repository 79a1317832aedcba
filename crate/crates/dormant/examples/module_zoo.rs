//! Standard modules, their relations, and what gauges do to them.

use dormant::random::{lattice_gauge, rng};
use dormant::{DiffModule, LevelParams, Mat, Morphism};

pub fn run() {
    let params = LevelParams::new(2, 1).unwrap();
    let mut r = rng(1);

    let zoo = [
        ("trivial rank 3", DiffModule::trivial(params, 3, false)),
        ("nabla_3", DiffModule::nabla(params, 3)),
        ("P (log)", DiffModule::p_module(params, true)),
        ("P (non-log)", DiffModule::p_module(params, false)),
        ("dual of P", DiffModule::p_module(params, true).dual()),
    ];
    for (name, m) in &zoo {
        let report = m.validate();
        println!("{name:<16} rank {} valid {} dormant {}", m.rank(), report.passed(), m.is_dormant());
    }

    // nabla_a ⊗ nabla_b = nabla_(a+b), identity on the basis.
    let t = DiffModule::nabla(params, 1).tensor(&DiffModule::nabla(params, 2)).unwrap();
    let iso = Morphism::new(t, DiffModule::nabla(params, 3), Mat::identity(2, 1)).unwrap();
    println!("nabla_1 ⊗ nabla_2 ≅ nabla_3: {}", iso.is_isomorphism());

    // A gauge change is an isomorphism back to the original.
    let pm = DiffModule::p_module(params, true);
    let g = lattice_gauge(&mut r, 2, pm.rank(), 1);
    let gauged = pm.gauge(&g).unwrap();
    println!("gauged P valid: {}", gauged.validate().passed());
    for i in 0..gauged.rank() {
        let row: Vec<String> = gauged.matrix(1).row(i).iter().map(|x| x.to_string()).collect();
        println!("  A_1 row {i}: {row:?}");
    }
    assert!(Morphism::new(gauged, pm, g).unwrap().is_isomorphism());

    // An idempotent A_1 violates ∇_<1>∇_<1> = 2∇_<2> = 0.
    let mut mats = DiffModule::trivial(params, 2, false).matrices().to_vec();
    mats[1] = Mat::from_ints(2, &[vec![1, 0], vec![0, 0]]);
    let bad = DiffModule::from_matrices(params, false, mats).unwrap();
    println!("perturbed module fails at {} (j, j') pairs", bad.validate().failures.len());
}

#[allow(dead_code)]
fn main() {
    run();
}
