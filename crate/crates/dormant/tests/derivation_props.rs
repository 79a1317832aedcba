use dormant::combinatorics::table;
use dormant::derivation::{derive, frobenius_split, recombine};
use dormant::{LevelParams, Poly, RatFunc};
use proptest::prelude::*;

const GRID: [(u32, u32); 6] = [(2, 0), (3, 0), (5, 0), (2, 1), (3, 1), (2, 2)];

fn ratfunc(p: u32) -> impl Strategy<Value = RatFunc> {
    (prop::collection::vec(0..p, 0..6), prop::collection::vec(0..p, 0..4)).prop_map(move |(n, d)| {
        let mut den = d.clone();
        den.push(1);
        // keep t = 0 a regular point half of the time
        if den.len() > 1 && den[0] == 0 && n.len() % 2 == 0 {
            den[0] = 1;
        }
        RatFunc::new(Poly::from_coeffs(p, n), Poly::from_coeffs(p, den))
    })
}

fn case() -> impl Strategy<Value = (LevelParams, RatFunc, RatFunc)> {
    (0..GRID.len()).prop_flat_map(|k| {
        let (p, m) = GRID[k];
        (Just(LevelParams::new(p, m).unwrap()), ratfunc(p), ratfunc(p))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn split_roundtrip((params, f, _g) in case()) {
        for s in 1..=params.m + 1 {
            prop_assert_eq!(recombine(&frobenius_split(&f, s)), f.clone());
        }
    }

    #[test]
    fn leibniz((params, f, g) in case()) {
        let tab = table(params);
        for log in [false, true] {
            for j in 1..=params.period() {
                let lhs = derive(&f.mul(&g), j, params, log);
                let rhs = (0..=j).fold(RatFunc::zero(params.p), |acc, jp| {
                    let term = derive(&f, jp, params, log).mul(&derive(&g, j - jp, params, log));
                    acc.add(&term.scale(tab.brace(j, jp)))
                });
                prop_assert_eq!(lhs, rhs, "j = {}, log = {}", j, log);
            }
        }
    }

    #[test]
    fn composition((params, f, _g) in case()) {
        let tab = table(params);
        let big = params.period();
        for j in 0..=big {
            for jp in 0..=j {
                let twice = derive(&derive(&f, j - jp, params, false), jp, params, false);
                prop_assert_eq!(twice, derive(&f, j, params, false).scale(tab.angle(j, jp)));
                let twice = derive(&derive(&f, j - jp, params, true), jp, params, true);
                let want = (jp.max(j - jp)..=j).fold(RatFunc::zero(params.p), |acc, jpp| {
                    acc.add(&derive(&f, jpp, params, true).scale(tab.angle_top(j, jp, jpp)))
                });
                prop_assert_eq!(twice, want, "j = {}, j' = {}", j, jp);
            }
        }
    }

    #[test]
    fn eta_compatible_on_monomials(k in 0..GRID.len(), n in 0usize..40) {
        let (p, m) = GRID[k];
        let params = LevelParams::new(p, m).unwrap();
        let mono = RatFunc::monomial(p, 1, n);
        for j in 0..=params.period() {
            let log = derive(&mono, j, params, true);
            let plain = derive(&mono, j, params, false).mul(&RatFunc::monomial(p, 1, j));
            prop_assert_eq!(log, plain);
        }
    }
}
