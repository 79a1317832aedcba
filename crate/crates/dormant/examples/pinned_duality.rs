//! Duals of pinned log modules and the double-dual isomorphism.

use dormant::duality::{double_dual_witness, dualize_pinned};
use dormant::exponent::{exponent, exponent_duality};
use dormant::random::{pinned_log, rng};
use dormant::LevelParams;

pub fn run() {
    let params = LevelParams::new(2, 1).unwrap();
    let mut r = rng(12);

    for n in 1..params.period() {
        let pinned = pinned_log(&mut r, params, n);
        let dual = dualize_pinned(&pinned).unwrap();
        let e = exponent(&pinned.module).unwrap();
        let ed = exponent(&dual.module).unwrap();
        println!("rank {n} exponent {:?} -> rank {} exponent {:?}", e.entries(), dual.module.rank(), ed.entries());
        assert_eq!(ed, exponent_duality(&e).unwrap());

        let xi = double_dual_witness(&pinned).unwrap();
        let back = dualize_pinned(&dual).unwrap();
        println!("  double dual iso {}, sends v to v▼▼ {}", xi.is_isomorphism(), xi.image(&pinned.vector) == back.vector);
    }
}

#[allow(dead_code)]
fn main() {
    run();
}
