use dormant::descent::*;
use dormant::random::{field_gauge, rng};
use dormant::{DiffModule, Error, LevelParams, Mat, Morphism, RatFunc};

const GRID: [(u32, u32); 6] = [(2, 0), (3, 0), (5, 0), (2, 1), (3, 1), (2, 2)];

fn lp(p: u32, m: u32) -> LevelParams {
    LevelParams::new(p, m).unwrap()
}

#[test]
fn trivial_descends_to_trivial() {
    for (p, m) in GRID {
        let params = lp(p, m);
        let d = descend_once(&DiffModule::trivial(params, 2, false)).unwrap();
        assert!(d.basis.inverse().unwrap().deflate(p as usize).is_some());
        if let Some(lower) = d.module {
            assert_eq!(lower, DiffModule::trivial(params.lower().unwrap(), 2, false));
        }
        let full = descend_full(&DiffModule::trivial(params, 3, false)).unwrap();
        assert_eq!(full.rank, 3);
        assert!(unit_counit_checks(&DiffModule::trivial(params, 2, false)).unwrap().passed());
    }
}

#[test]
fn twist_by_t_sections_are_multiples_of_t() {
    for p in [2u32, 3, 5] {
        let params = lp(p, 0);
        let tw = DiffModule::trivial(params, 1, false).twist_by_unit(&RatFunc::t(p)).unwrap();
        let d = descend_once(&tw).unwrap();
        let s = d.basis.get(0, 0).clone();
        // s / t lies in F_p(t^p): the horizontal line of the twist is t times a constant line.
        assert!(s.div(&RatFunc::t(p)).deflate(p as usize).is_some(), "{s}");
        assert!(tw.apply(1, &[s]).iter().all(|x| x.is_zero()));
    }
}

#[test]
fn pullback_then_descend_recovers_module() {
    let mut r = rng(13);
    for (p, m) in [(2, 0), (3, 0), (2, 1)] {
        let params = lp(p, m);
        for n in 1..=2 {
            let base = DiffModule::trivial(params, n, false).gauge(&field_gauge(&mut r, p, n, 1)).unwrap();
            let up = base.frobenius_pullback(1).unwrap();
            let d = descend_once(&up).unwrap();
            let lower = d.module.unwrap();
            assert_eq!(lower.params(), params);
            let x = d.basis.inverse().unwrap().deflate(p as usize).unwrap();
            assert!(Morphism::new(base.clone(), lower, x).unwrap().is_isomorphism());
        }
    }
}

#[test]
fn full_descent_round_trip_on_grid() {
    let mut r = rng(17);
    for (p, m) in GRID {
        let params = lp(p, m);
        for n in 1..=3 {
            let space = DiffModule::pullback_of_space(params, n);
            let g = field_gauge(&mut r, p, n, 1);
            let module = space.gauge(&g).unwrap();
            let full = descend_full(&module).unwrap();
            assert_eq!(full.rank, n);
            // The horizontal basis gauges the module back to the pulled-back space.
            assert_eq!(module.gauge(&full.basis).unwrap(), space);
            assert!(unit_counit_checks(&module).unwrap().passed(), "p={p} m={m} n={n}");
        }
    }
}

#[test]
fn p_module_descends_fully() {
    for (p, m) in [(2, 0), (3, 0), (2, 1)] {
        let params = lp(p, m);
        let pm = DiffModule::p_module(params, false);
        assert_eq!(descend_full(&pm).unwrap().rank, params.period());
        assert!(unit_counit_checks(&pm).unwrap().passed());
    }
}

#[test]
fn non_dormant_is_rank_deficient() {
    let params = lp(3, 0);
    let bad = DiffModule::from_generators(params, false, &[Mat::from_ints(3, &[vec![1]])]).unwrap();
    assert!(matches!(descend_once(&bad), Err(Error::DescentRankDeficient { found: 0, expected: 1 })));
    assert!(matches!(descend_once(&DiffModule::nabla(params, 1)), Err(Error::NotNonLog)));
}

#[test]
fn dormancy_transfers_through_tower() {
    let params = lp(2, 1);
    let module = DiffModule::p_module(params, false);
    let d = descend_once(&module).unwrap();
    let lower = d.module.unwrap();
    assert!(lower.is_dormant());
    assert_eq!(module.is_dormant(), lower.frobenius_pullback(1).unwrap().is_dormant());
}
