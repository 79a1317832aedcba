use dormant::module::basis_vector;
use dormant::{DiffModule, LevelParams, Mat, Morphism, RatFunc};

const GRID: [(u32, u32); 6] = [(2, 0), (3, 0), (5, 0), (2, 1), (3, 1), (2, 2)];

fn lp(p: u32, m: u32) -> LevelParams {
    LevelParams::new(p, m).unwrap()
}

fn assert_valid(m: &DiffModule, what: &str) {
    let r = m.validate();
    assert!(r.passed(), "{what}: {:?}", r);
}

#[test]
fn zoo_validates_on_grid() {
    for (p, m) in GRID {
        let params = lp(p, m);
        let big = params.period() as i64;
        for log in [false, true] {
            assert_valid(&DiffModule::trivial(params, 3, log), "trivial");
            let pm = DiffModule::p_module(params, log);
            assert_valid(&pm, &format!("P({p},{m},{log})"));
            assert!(pm.is_dormant());
            assert_valid(&pm.dual(), "dual P");
        }
        for a in 0..big {
            let na = DiffModule::nabla(params, a);
            assert_valid(&na, "nabla");
            assert!(na.is_dormant());
        }
    }
}

#[test]
fn apply_examples() {
    let params = lp(3, 0);
    let triv = DiffModule::trivial(params, 1, false);
    let v = vec![RatFunc::monomial(3, 1, 2)];
    assert_eq!(triv.apply(1, &v), vec![RatFunc::monomial(3, 2, 1)]);
    assert_eq!(triv.apply(0, &v), v);
    let n1 = DiffModule::nabla(lp(2, 0), 1);
    assert_eq!(n1.apply(1, &[RatFunc::one(2)]), vec![RatFunc::one(2)]);
}

#[test]
fn perturbed_module_fails() {
    let params = lp(3, 0);
    let pm = DiffModule::p_module(params, false);
    let mut mats = pm.matrices().to_vec();
    mats[1].set(0, 2, RatFunc::t(3));
    let bad = DiffModule::from_matrices(params, false, mats).unwrap();
    assert!(!bad.validate().passed());
}

#[test]
fn tensor_and_dual_of_rank_one() {
    for (p, m) in GRID {
        let params = lp(p, m);
        let big = params.period() as i64;
        for a in 0..big {
            assert_eq!(DiffModule::nabla(params, a).dual(), DiffModule::nabla(params, -a));
            for b in 0..big {
                let t = DiffModule::nabla(params, a).tensor(&DiffModule::nabla(params, b)).unwrap();
                assert_eq!(t, DiffModule::nabla(params, a + b));
            }
        }
    }
}

#[test]
fn generators_rebuild_modules() {
    for (p, m) in GRID {
        let params = lp(p, m);
        for log in [false, true] {
            let pm = DiffModule::p_module(params, log);
            let gens: Vec<Mat> = (0..=m).map(|l| pm.matrix(params.pow(l)).clone()).collect();
            assert_eq!(DiffModule::from_generators(params, log, &gens).unwrap(), pm);
            let zero: Vec<Mat> = (0..=m).map(|_| Mat::zeros(p, 2, 2)).collect();
            assert_eq!(DiffModule::from_generators(params, log, &zero).unwrap(), DiffModule::trivial(params, 2, log));
        }
    }
    let params = lp(2, 0);
    let one = DiffModule::from_generators(params, true, &[Mat::from_ints(2, &[vec![1]])]).unwrap();
    assert_eq!(one, DiffModule::nabla(params, 1));
}

#[test]
fn inconsistent_generators_rejected() {
    let params = lp(2, 1);
    let g0 = Mat::from_ints(2, &[vec![0, 1], vec![0, 0]]);
    let g1 = Mat::from_ints(2, &[vec![0, 0], vec![1, 0]]);
    let err = DiffModule::from_generators(params, false, &[g0, g1]).unwrap_err();
    assert!(matches!(err, dormant::Error::RelationFailure(_)));
}

fn sample_gauge(p: u32, n: usize) -> Mat {
    let t = RatFunc::t(p);
    Mat::from_fn(p, n, n, |r, c| {
        if r == c {
            RatFunc::constant(p, 1 + (r as u32 % (p - 1)))
        } else if c == r + 1 {
            t.add(&RatFunc::constant(p, 1))
        } else if r == c + 2 {
            t.pow(2)
        } else {
            RatFunc::zero(p)
        }
    })
}

#[test]
fn gauge_is_isomorphism() {
    for (p, m) in [(2, 0), (3, 0), (2, 1)] {
        let params = lp(p, m);
        let pm = DiffModule::p_module(params, true);
        let g = sample_gauge(p, pm.rank());
        let gauged = pm.gauge(&g).unwrap();
        assert_valid(&gauged, "gauged P");
        assert!(gauged.is_dormant());
        let iso = Morphism::new(gauged.clone(), pm.clone(), g.clone()).unwrap();
        assert!(iso.is_isomorphism());
    }
}

#[test]
fn eta_roundtrip_and_trivial() {
    for (p, m) in GRID {
        let params = lp(p, m);
        let triv = DiffModule::trivial(params, 1, false);
        assert_eq!(triv.eta().unwrap(), DiffModule::nabla(params, 0));
        let gauged = DiffModule::trivial(params, 2, false).gauge(&sample_gauge(p, 2)).unwrap();
        let logged = gauged.eta().unwrap();
        assert_valid(&logged, "eta");
        assert_eq!(logged.eta_inverse().unwrap(), gauged);
    }
    let err = DiffModule::nabla(lp(3, 0), 1).eta_inverse().unwrap_err();
    assert!(matches!(err, dormant::Error::EtaNotDivisible { .. }));
}

#[test]
fn pullback_preserves_curvature_and_validity() {
    for (p, m) in [(2, 0), (3, 0), (2, 1)] {
        let params = lp(p, m);
        for l in 1..=2 {
            let Ok(up) = params.raise(l) else { continue };
            let base = DiffModule::p_module(params, false);
            let pulled = base.frobenius_pullback(l).unwrap();
            assert_eq!(pulled.params(), up);
            assert_valid(&pulled, "pullback");
            assert_eq!(pulled.curvature(), &base.curvature().inflate(params.pow(l)));
            let na = DiffModule::nabla(params, 1).frobenius_pullback(l).unwrap();
            assert_valid(&na, "log pullback");
        }
    }
}

#[test]
fn twist_by_units_of_frobenius_field() {
    let params = lp(3, 0);
    let p = 3;
    let base = DiffModule::p_module(params, false);
    let a = RatFunc::parse(p, "t+1").unwrap();
    let c = RatFunc::parse(p, "t^3+2/t^6+1").unwrap();
    let ta = base.twist_by_unit(&a).unwrap();
    let tac = base.twist_by_unit(&a.mul(&c)).unwrap();
    assert_valid(&ta, "twist");
    // Multiplication by c is horizontal between the two twists.
    let mu = Mat::identity(p, base.rank()).scale(&c.inv());
    assert!(Morphism::new(ta.clone(), tac.clone(), mu).unwrap().is_isomorphism());
    let rank1 = DiffModule::trivial(params, 1, false);
    let t1 = rank1.twist_by_unit(&RatFunc::t(p)).unwrap();
    assert_eq!(t1.apply(1, &basis_vector(&t1, 0)), vec![RatFunc::parse(p, "2/t").unwrap()]);
}
