use dormant::cyclic::{find_cyclic, nu_morphism, wronskian_rank, PinnedModule};
use dormant::linalg::unit_vector;
use dormant::random::{field_gauge, lattice_gauge, rng};
use dormant::{DiffModule, Error, LevelParams, Mat, Morphism, RatFunc};

fn lp(p: u32, m: u32) -> LevelParams {
    LevelParams::new(p, m).unwrap()
}

#[test]
fn wronskian_examples() {
    let params = lp(2, 0);
    assert_eq!(wronskian_rank(&DiffModule::nabla(params, 1), &[RatFunc::one(2)]), 1);
    let ds = DiffModule::nabla(params, 0).direct_sum(&DiffModule::nabla(params, 0)).unwrap();
    assert_eq!(wronskian_rank(&ds, &[RatFunc::one(2), RatFunc::one(2)]), 1);
    for (p, m) in [(2, 0), (3, 0), (2, 1), (2, 2)] {
        let params = lp(p, m);
        for log in [false, true] {
            let pm = DiffModule::p_module(params, log);
            assert_eq!(wronskian_rank(&pm, &unit_vector(p, pm.rank(), 0)), params.period());
        }
    }
}

#[test]
fn find_cyclic_on_scrambles() {
    let mut r = rng(7);
    for (p, m) in [(3, 0), (2, 1), (2, 2)] {
        let params = lp(p, m);
        for n in 1..=params.period() {
            for _ in 0..3 {
                let base = if n == params.period() {
                    DiffModule::p_module(params, false)
                } else {
                    DiffModule::trivial(params, n, false)
                };
                let g = field_gauge(&mut r, p, n, 1);
                let module = base.gauge(&g).unwrap();
                let v = find_cyclic(&module).unwrap();
                assert_eq!(wronskian_rank(&module, &v), n);
            }
        }
    }
}

#[test]
fn cyclic_over_field_for_equal_exponents() {
    let params = lp(3, 0);
    let mut r = rng(11);
    let ds = DiffModule::nabla(params, 1).direct_sum(&DiffModule::nabla(params, 1)).unwrap();
    let scrambled = ds.gauge(&lattice_gauge(&mut r, 3, 2, 1)).unwrap();
    let nonlog = scrambled.eta_inverse_field().unwrap();
    let v = find_cyclic(&nonlog).unwrap();
    assert_eq!(wronskian_rank(&nonlog, &v), 2);
}

#[test]
fn no_cyclic_vector_beyond_period() {
    let params = lp(2, 0);
    let triv = DiffModule::trivial(params, 3, false);
    assert!(matches!(find_cyclic(&triv), Err(Error::NoCyclicVector { .. })));
    assert!(matches!(find_cyclic(&DiffModule::nabla(params, 1)), Err(Error::NotNonLog)));
    assert_eq!(find_cyclic(&DiffModule::trivial(params, 1, false)).unwrap(), vec![RatFunc::one(2)]);
}

#[test]
fn nu_examples() {
    for (p, m) in [(2, 0), (3, 0), (2, 1)] {
        let params = lp(p, m);
        let big = params.period();
        for log in [false, true] {
            let pm = DiffModule::p_module(params, log);
            let pinned = PinnedModule::new(pm.clone(), unit_vector(p, big, 0)).unwrap();
            let nu = nu_morphism(&pinned).unwrap();
            assert!(nu.matrix.is_identity());
            assert!(nu.intertwines());
        }
        let one = DiffModule::nabla(params, 0).eta_inverse().unwrap();
        let pinned = PinnedModule::new(one, vec![RatFunc::one(p)]).unwrap();
        let nu = nu_morphism(&pinned).unwrap();
        let mut want = Mat::zeros(p, 1, big);
        want.set(0, 0, RatFunc::one(p));
        assert_eq!(nu.matrix, want);
        assert!(nu.intertwines());
    }
}

#[test]
fn nu_is_isomorphism_at_full_rank_and_needs_dormancy() {
    let params = lp(3, 0);
    let mut r = rng(3);
    let module = DiffModule::p_module(params, false).gauge(&field_gauge(&mut r, 3, 3, 1)).unwrap();
    let v = find_cyclic(&module).unwrap();
    let nu = nu_morphism(&PinnedModule::new(module, v).unwrap()).unwrap();
    assert!(nu.is_isomorphism());
    // Rank one with A_1 = 1, i.e. d/dt + 1: its p-curvature is 1.
    let gens = [Mat::from_ints(3, &[vec![1]])];
    let bad = DiffModule::from_generators(params, false, &gens).unwrap();
    assert!(!bad.is_dormant());
    let pinned = PinnedModule::new(bad, vec![RatFunc::one(3)]).unwrap();
    assert!(matches!(nu_morphism(&pinned), Err(Error::NotDormant)));
}

#[test]
fn hom_rigidity() {
    // Two intertwiners from a pinned module that agree on v must coincide.
    let params = lp(2, 1);
    let mut r = rng(5);
    let pm = DiffModule::p_module(params, false);
    let g = field_gauge(&mut r, 2, 4, 1);
    let target = pm.gauge(&g).unwrap();
    let ginv = g.inverse().unwrap();
    let f1 = Morphism::new(pm.clone(), target.clone(), ginv.clone()).unwrap();
    assert!(f1.intertwines());
    let pinned = PinnedModule::new(pm.clone(), unit_vector(2, 4, 0)).unwrap();
    let image = f1.image(&pinned.vector);
    let nu = nu_morphism(&PinnedModule::new(target.clone(), image).unwrap()).unwrap();
    assert_eq!(nu.matrix, f1.matrix);
}
