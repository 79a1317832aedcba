//! Cyclic vectors of non-log modules and the surjection from P.

use dormant::cyclic::{find_cyclic, nu_morphism, wronskian_rank, PinnedModule};
use dormant::random::{field_gauge, rng};
use dormant::{DiffModule, Error, LevelParams};

pub fn run() {
    let params = LevelParams::new(3, 0).unwrap();
    let mut r = rng(5);

    for n in 1..=3 {
        let base = if n == 3 { DiffModule::p_module(params, false) } else { DiffModule::trivial(params, n, false) };
        let module = base.gauge(&field_gauge(&mut r, 3, n, 1)).unwrap();
        let v = find_cyclic(&module).unwrap();
        let shown: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        println!("rank {n}: v = {shown:?}, wronskian rank {}", wronskian_rank(&module, &v));

        let nu = nu_morphism(&PinnedModule::new(module, v).unwrap()).unwrap();
        println!("  ν : P → E intertwines {}, isomorphism {}", nu.intertwines(), nu.is_isomorphism());
    }

    // Past rank p^(m+1) a dormant module has none.
    match find_cyclic(&DiffModule::trivial(params, 4, false)) {
        Err(Error::NoCyclicVector { rank, bound }) => println!("rank {rank} > {bound}: no cyclic vector"),
        other => panic!("unexpected {other:?}"),
    }
}

#[allow(dead_code)]
fn main() {
    run();
}
