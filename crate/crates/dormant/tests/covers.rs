use std::collections::HashSet;

use dormant::combinatorics::LevelParams;
use dormant::covers::*;
use dormant::exponent::{Exponent, Radius};
use dormant::Error;

// Images of a permutation as a plain vector; compose applies `b` first.
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn cycle_lengths(s: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; s.len()];
    let mut out = Vec::new();
    for i in 0..s.len() {
        let mut len = 0;
        let mut x = i;
        while !seen[x] {
            seen[x] = true;
            x = s[x];
            len += 1;
        }
        if len > 1 {
            out.push(len);
        }
    }
    out
}

fn is_cycle_of(s: &[usize], len: usize) -> bool {
    let c = cycle_lengths(s);
    if len == 1 { c.is_empty() } else { c == vec![len] }
}

fn all_cycles(d: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(d: usize, len: usize, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if seq.len() == len {
            let mut img: Vec<usize> = (0..d).collect();
            for i in 0..len {
                img[seq[i]] = seq[(i + 1) % len];
            }
            out.push(img);
            return;
        }
        for x in 0..d {
            if x > seq[0] && !seq.contains(&x) {
                seq.push(x);
                go(d, len, seq, out);
                seq.pop();
            }
        }
    }
    let mut out = Vec::new();
    if len == 1 {
        return vec![(0..d).collect()];
    }
    for start in 0..d {
        go(d, len, &mut vec![start], &mut out);
    }
    out
}

fn p_prime_part_of_factorial(d: usize, p: usize) -> usize {
    let mut part = 1;
    for mut k in 1..=d {
        while k % p == 0 {
            k /= p;
        }
        part *= k;
    }
    part
}

// Order of the generated group, or None once it exceeds `cap`.
fn closure_order(gens: &[Vec<usize>], cap: usize) -> Option<usize> {
    let d = gens[0].len();
    let id: Vec<usize> = (0..d).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                stack.push(y);
            }
        }
    }
    Some(seen.len())
}

fn transitive(gens: &[Vec<usize>]) -> bool {
    let d = gens[0].len();
    let mut seen = vec![false; d];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for g in gens {
            if !seen[g[x]] {
                seen[g[x]] = true;
                stack.push(g[x]);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Exhaustive oracle: any λ0-cycle works for σ0 by conjugacy, every λ1-cycle is tried.
fn oracle_realizable(t: [u64; 3], p: u64) -> bool {
    let sum: u64 = t.iter().sum();
    if sum % 2 == 0 {
        return false;
    }
    let d = ((sum - 1) / 2) as usize;
    if t.iter().any(|&x| x == 0 || x as usize > d) {
        return false;
    }
    let mut s0: Vec<usize> = (0..d).collect();
    for i in 0..t[0] as usize {
        s0[i] = (i + 1) % t[0] as usize;
    }
    let cap = p_prime_part_of_factorial(d, p as usize);
    all_cycles(d, t[1] as usize).into_iter().any(|s1| {
        let sinf = compose(&s0, &s1);
        if !is_cycle_of(&sinf, t[2] as usize) {
            return false;
        }
        let gens = [s0.clone(), s1];
        transitive(&gens) && matches!(closure_order(&gens, cap), Some(o) if o % p as usize != 0)
    })
}

fn oracle_bstar(p: u64, n: u32) -> Vec<[u64; 3]> {
    let big = p.pow(n);
    let b: Vec<u64> = (1..big).filter(|a| a % 2 == 1 && a % p != 0).collect();
    let mut out = Vec::new();
    for &x in &b {
        for &y in &b {
            for &z in &b {
                let lo = if x > y { x - y } else { y - x };
                if x + y + z < 2 * big && lo <= z && z <= x + y {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

fn triples(list: &[RamTriple]) -> Vec<[u64; 3]> {
    list.iter().map(RamTriple::as_array).collect()
}

#[test]
fn bstar_small_cases() {
    let five = bstar_enumerate(5, 1).unwrap();
    assert_eq!(triples(&five), vec![[1, 1, 1], [1, 3, 3], [3, 1, 3], [3, 3, 1], [3, 3, 3]]);
    assert_eq!(triples(&bstar_enumerate(3, 1).unwrap()), vec![[1, 1, 1]]);
    for (p, n) in [(3, 2), (5, 2), (7, 1), (11, 1)] {
        assert_eq!(triples(&bstar_enumerate(p, n).unwrap()), oracle_bstar(p, n));
    }
    assert!(matches!(bstar_enumerate(2, 1), Err(Error::EvenCharacteristic)));
}

#[test]
fn degree_formula() {
    assert_eq!(degree(&RamTriple::new(1, 1, 1)).unwrap(), 1);
    assert_eq!(degree(&RamTriple::new(3, 3, 3)).unwrap(), 4);
    assert_eq!(degree(&RamTriple::new(1, 3, 3)).unwrap(), 3);
    assert!(matches!(degree(&RamTriple::new(2, 3, 3)), Err(Error::ParityError)));
    for t in bstar_enumerate(5, 2).unwrap() {
        assert!(degree(&t).unwrap() < 25);
    }
}

#[test]
fn variants_have_one_odd_member() {
    let v = variants(&RamTriple::new(3, 3, 3), 5, 1);
    assert_eq!(triples(&v), vec![[3, 3, 3], [3, 2, 2], [2, 3, 2], [2, 2, 3]]);
    let v = variants(&RamTriple::new(1, 1, 1), 5, 1);
    assert_eq!(triples(&v), vec![[1, 1, 1], [1, 4, 4], [4, 1, 4], [4, 4, 1]]);
    for t in bstar_enumerate(5, 2).unwrap() {
        assert_eq!(variants(&t, 5, 2).iter().filter(|x| x.all_odd()).count(), 1);
    }
}

#[test]
fn documented_witnesses() {
    let Realization::Witness(w) = realizable(&RamTriple::new(1, 1, 1), 5, 1, 10).unwrap() else { panic!() };
    assert_eq!((w.degree, w.group_order), (1, 1));

    let t = RamTriple::new(3, 3, 3);
    let Realization::Witness(w) = realizable(&t, 5, 1, 1000).unwrap() else { panic!() };
    assert_eq!(w.sigma0.to_string(), "(1 2 3)");
    assert_eq!(w.group_order, 12);
    assert!(w.verify(&t, 5));
    // The documented σ1 = (1 3 4) is a witness too.
    let s0 = Perm::from_cycles(4, &[vec![0, 1, 2]]);
    let s1 = Perm::from_cycles(4, &[vec![0, 2, 3]]);
    let alt = Witness { degree: 4, sigma_inf: s0.compose(&s1), sigma0: s0, sigma1: s1, group_order: 12 };
    assert_eq!(alt.sigma_inf.to_string(), "(2 3 4)");
    assert!(alt.verify(&t, 5));
    assert!(!alt.verify(&t, 3));

    let t = RamTriple::new(1, 3, 3);
    let Realization::Witness(w) = realizable(&t, 5, 1, 1000).unwrap() else { panic!() };
    assert_eq!((w.sigma1.to_string().as_str(), w.group_order), ("(1 2 3)", 3));
}

#[test]
fn search_agrees_with_exhaustive_oracle() {
    for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
        for t in bstar_enumerate(p, n).unwrap() {
            for v in variants(&t, p, n) {
                let got = realizable(&v, p, n, DEFAULT_BUDGET).unwrap();
                assert_eq!(got.is_witness(), oracle_realizable(v.as_array(), p), "{v} at p={p} N={n}");
                if let Realization::Witness(w) = got {
                    assert!(w.verify(&v, p));
                }
            }
        }
    }
}

#[test]
fn level_one_triples_are_realizable() {
    for p in [3, 5, 7] {
        let rows = enumerate_opers(p, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(rows.len(), bstar_enumerate(p, 1).unwrap().len());
        for r in &rows {
            assert_eq!(r.status.label(), "witness", "{}", r.triple);
            assert_eq!(r.variants_consistent, Some(true));
            assert!(r.radii.iter().all(|x| x.is_unit(p)));
        }
    }
    assert_eq!(enumerate_opers(5, 1, DEFAULT_BUDGET).unwrap().len(), 5);
}

#[test]
fn level_two_at_three() {
    let rows = enumerate_opers(3, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(rows.len(), 11);
    let witnessed: Vec<[u64; 3]> =
        rows.iter().filter(|r| r.status.label() == "witness").map(|r| r.triple.as_array()).collect();
    assert_eq!(witnessed, vec![[1, 1, 1], [1, 5, 5], [1, 7, 7], [5, 1, 5], [5, 5, 1], [7, 1, 7], [7, 7, 1]]);
    // (8, 5, 4) needs an 8-cycle and a 5-cycle, forcing 40 | |G|; every such
    // transitive group of degree 8 has order divisible by 3.
    let row = rows.iter().find(|r| r.triple == RamTriple::new(1, 5, 5)).unwrap();
    assert_eq!(row.variants[1].0, RamTriple::new(8, 5, 4));
    assert_eq!(row.variants[1].1, Status::NoWitness);
    assert!(rows.iter().all(|r| r.variants_consistent.is_some()));
}

#[test]
fn budget_exhaustion_is_reported() {
    let err = realizable(&RamTriple::new(5, 5, 7), 3, 2, 3).unwrap_err();
    assert!(matches!(err, Error::SearchBudgetExceeded { budget: 3, .. }));
    let rows = enumerate_opers(3, 2, 3).unwrap();
    assert!(rows.iter().any(|r| r.variants_consistent.is_none()));
}

#[test]
fn output_is_deterministic_across_worker_counts() {
    let a = enumerate_opers(7, 1, DEFAULT_BUDGET).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| enumerate_opers(7, 1, DEFAULT_BUDGET).unwrap());
    assert_eq!(a, b);
}

#[test]
fn radii_examples() {
    let r = radii_of_triple(&RamTriple::new(3, 1, 5), 5, 1).unwrap();
    // 3/2 = 9 = 4 ≡ -1, 1/2 = 3 ≡ -2, 5/2 = 0
    assert_eq!(r.map(|x| x.value), [1, 2, 0]);
    assert!(matches!(radii_of_triple(&RamTriple::new(1, 1, 1), 2, 1), Err(Error::EvenCharacteristic)));
}

#[test]
fn pullback_radius_law() {
    for (p, n) in [(3u32, 1u32), (3, 2), (5, 1), (5, 2)] {
        let params = LevelParams::new(p, n - 1).unwrap();
        let big = params.period() as i64;
        let std_pair = Exponent::new(params, [0, 1]);
        for lambda in (1..big).step_by(2) {
            let e = exponent_pullback(&std_pair, lambda).unwrap();
            assert_eq!(e, Exponent::new(params, [0, lambda]));
            let r = dormant::exponent::radius_from_exponent_pair(&e).unwrap();
            // Oracle: search for the half directly.
            let h = (0..big).find(|h| (2 * h) % big == lambda % big).unwrap();
            assert_eq!(r, Radius::new(big as u64, h));
        }
    }
    let params = LevelParams::new(5, 0).unwrap();
    let e = exponent_pullback(&Exponent::new(params, [0, 1]), 3).unwrap();
    assert_eq!(e.entries(), &[0, 3]);
    assert_eq!(dormant::exponent::radius_from_exponent_pair(&e).unwrap().value, 1);
    assert_eq!(exponent_pullback(&Exponent::new(params, [2, 4]), 1).unwrap(), Exponent::new(params, [2, 4]));
}
