//! Frobenius splitting and the extended level-m (log) derivations on F_p(t).
//!
//! On monomials `∂_<j>(t^n) = q_j! C(n, j) t^(n-j)` and the log version keeps
//! `t^n`. Both are `F_p(t^(p^(m+1)))`-linear, so a rational function is first
//! written over the basis `1, t, ..., t^(p^(m+1)-1)` and the monomial rule is
//! applied componentwise.

use crate::combinatorics::{binom_mod_p, table, LevelParams};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// Writes `f = Σ_i g_i(t^(p^s)) t^i`; entry `i` of the result is `g_i` in the variable `u = t^(p^s)`.
pub fn frobenius_split(f: &RatFunc, s: u32) -> Vec<RatFunc> {
    let p = f.p();
    let k = (p as usize).pow(s);
    // den(t)^k = den(t^k), so num * den^(k-1) / den(u) has only Frobenius denominators.
    let h = f.num().mul(&f.den().pow(k - 1));
    (0..k).map(|i| RatFunc::new(h.residue_class(i, k), f.den().clone())).collect()
}

/// Inverse of [`frobenius_split`].
pub fn recombine(parts: &[RatFunc]) -> RatFunc {
    let k = parts.len();
    let p = parts[0].p();
    parts.iter().enumerate().fold(RatFunc::zero(p), |acc, (i, g)| {
        acc.add(&g.inflate(k).mul(&RatFunc::monomial(p, 1, i)))
    })
}

/// Coefficient of the monomial rule: `q_j! C(n, j) mod p`.
pub fn monomial_coeff(params: LevelParams, j: usize, n: usize) -> u32 {
    let fq = table(params).fact_q(j) as u64;
    (fq * binom_mod_p(n as u64, j as u64, params.p) as u64 % params.p as u64) as u32
}

fn derive_numerator(h: &Poly, j: usize, params: LevelParams, log: bool, period: usize) -> Poly {
    let p = params.p;
    if j == 0 {
        return h.clone();
    }
    let tab = table(params);
    if tab.fact_q(j) == 0 {
        return Poly::zero(p);
    }
    let coeffs: Vec<u32> = (0..period).map(|i| monomial_coeff(params, j, i)).collect();
    let mut out = vec![0u32; h.coeffs().len()];
    for (n, &c) in h.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let k = coeffs[n % period];
        if k == 0 {
            continue;
        }
        let v = (c as u64 * k as u64 % p as u64) as u32;
        // C(n % period, j) = 0 whenever n % period < j, so the shift never underflows.
        let target = if log { n } else { n - j };
        out[target] = v;
    }
    Poly::from_coeffs(p, out)
}

/// `∂_<j>(f)` or, with `log`, `∂̆_<j>(f)`.
pub fn derive(f: &RatFunc, j: usize, params: LevelParams, log: bool) -> RatFunc {
    derive_all(f, j, params, log).pop().unwrap()
}

/// `[∂_<0>(f), ..., ∂_<jmax>(f)]` sharing one splitting of `f`.
pub fn derive_all(f: &RatFunc, jmax: usize, params: LevelParams, log: bool) -> Vec<RatFunc> {
    let p = params.p;
    let period = params.period();
    if f.is_zero() || f.as_constant().is_some() {
        let mut out = vec![RatFunc::zero(p); jmax + 1];
        out[0] = f.clone();
        return out;
    }
    let h = if f.is_poly() { f.num().clone() } else { f.num().mul(&f.den().pow(period - 1)) };
    let den = f.den().inflate(period);
    let mut out = Vec::with_capacity(jmax + 1);
    out.push(f.clone());
    for j in 1..=jmax {
        let n = derive_numerator(&h, j, params, log, period);
        out.push(if n.is_zero() { RatFunc::zero(p) } else { RatFunc::new(n, den.clone()) });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::{One, ToPrimitive};

    fn lp(p: u32, m: u32) -> LevelParams {
        LevelParams::new(p, m).unwrap()
    }

    fn rf(p: u32, s: &str) -> RatFunc {
        RatFunc::parse(p, s).unwrap()
    }

    #[test]
    fn split_examples() {
        let parts = frobenius_split(&rf(2, "t^3"), 1);
        assert_eq!(parts, vec![RatFunc::zero(2), RatFunc::t(2)]);
        let parts = frobenius_split(&rf(2, "1/1+t"), 1);
        assert_eq!(parts, vec![rf(2, "1/1+t"), rf(2, "1/1+t")]);
        let parts = frobenius_split(&RatFunc::constant(7, 7 % 7 + 3), 1);
        assert_eq!(parts[0], RatFunc::constant(7, 3));
        assert!(parts[1..].iter().all(|g| g.is_zero()));
    }

    #[test]
    fn split_recombines() {
        let f = rf(3, "2*t^7+t^2+1/t^4+2*t+1");
        for s in 1..=2 {
            assert_eq!(recombine(&frobenius_split(&f, s)), f);
        }
    }

    #[test]
    fn derive_examples() {
        assert_eq!(derive(&rf(3, "t^4"), 1, lp(3, 0), false), rf(3, "t^3"));
        assert_eq!(derive(&rf(2, "t^2"), 2, lp(2, 1), false), RatFunc::one(2));
        for j in 1..=8 {
            assert!(derive(&RatFunc::one(2), j, lp(2, 2), false).is_zero());
        }
    }

    // Exact big-integer evaluation of the monomial rule.
    fn oracle_coeff(params: LevelParams, j: usize, n: usize) -> u32 {
        let q = j / params.pow(params.m);
        let fact = |k: usize| (1..=k).fold(BigUint::one(), |a, i| a * BigUint::from(i));
        if n < j {
            return 0;
        }
        let c = fact(n) / (fact(j) * fact(n - j)) * fact(q);
        (c % BigUint::from(params.p)).to_u32().unwrap()
    }

    #[test]
    fn monomial_rule_matches_exact() {
        for (p, m) in [(2, 0), (3, 0), (2, 1), (3, 1), (2, 2)] {
            let params = lp(p, m);
            for n in 0..40 {
                let mono = RatFunc::monomial(p, 1, n);
                for j in 0..=params.period() {
                    let want = RatFunc::monomial(p, oracle_coeff(params, j, n), n.saturating_sub(j));
                    let want = if n < j { RatFunc::zero(p) } else { want };
                    assert_eq!(derive(&mono, j, params, false), want, "p={p} m={m} n={n} j={j}");
                    let logw = RatFunc::monomial(p, oracle_coeff(params, j, n), n);
                    assert_eq!(derive(&mono, j, params, true), logw);
                }
            }
        }
    }
}
