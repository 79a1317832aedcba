//! Exponents and residues of dormant log modules at t = 0.

use dormant::exponent::*;
use dormant::random::{rng, scrambled_nablas};
use dormant::{DiffModule, LevelParams};

pub fn run() {
    let params = LevelParams::new(2, 1).unwrap();
    let mut r = rng(8);

    let pm = DiffModule::p_module(params, true);
    println!("exponent of P: {:?}", exponent(&pm).unwrap().entries());
    println!("residue length {} graded {:?}", residue_length(&pm).unwrap(), residue_graded_lengths(&pm).unwrap());

    // The exponent survives a scrambling lattice gauge.
    let (module, _) = scrambled_nablas(&mut r, params, &[3, 1, 1], 1);
    let e = exponent(&module).unwrap();
    println!("scrambled ∇_3 ⊕ ∇_1 ⊕ ∇_1: exponent {:?}, cyclic {}", e.entries(), is_cyclic_by_exponent(&module).unwrap());

    // Twisting by ∇_a shifts, dualizing negates.
    let shifted = DiffModule::nabla(params, 2).tensor(&module).unwrap();
    println!("after ⊗ ∇_2: {:?}", exponent(&shifted).unwrap().entries());
    println!("dual: {:?}", exponent(&module.dual()).unwrap().entries());

    // Distinct entries need not give a cyclic lattice at m >= 1.
    let e = Exponent::new(params, [0, 2]);
    println!("{{0, 2}} distinct {}, admits cyclic {}", e.is_set(), exponent_admits_cyclic(&e));
    println!("{{0, 1}} admits cyclic {}", exponent_admits_cyclic(&Exponent::new(params, [0, 1])));

    // Radius of a rank-2 exponent at p = 5.
    let e = Exponent::new(LevelParams::new(5, 0).unwrap(), [0, 3]);
    println!("radius of {{0, 3}} mod 5: {}", radius_from_exponent_pair(&e).unwrap().value);
}

#[allow(dead_code)]
fn main() {
    run();
}
