//! Level-m modified binomial coefficients.
//!
//! For a level `m` write `l = p^m * q_l + r_l` with `0 <= r_l < p^m`. The three
//! coefficient families are
//!
//! * `brace(j, j') = q_j! / (q_{j'}! q_{j-j'}!)`
//! * `angle(j, j') = C(j, j') / brace(j, j')`
//! * `angle_top(j, j', j'') = j''! / ((j-j'')! (j''-j')! (j''+j'-j)!) * q_{j'}! q_{j-j'}! / q_{j''}!`
//!   for `max(j', j-j') <= j'' <= j`.
//!
//! All of them are evaluated as exact rationals with big integers. Each must be
//! p-integral (no factor p left in the reduced denominator); it is then reduced
//! mod p. For `j > p^(m+1)` some values are genuinely fractional, e.g.
//! `angle(6, 3) = 10/3` at `p = 2, m = 1`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Largest supported `p^(m+1)`.
pub const MAX_PERIOD: usize = 512;

/// A prime `p` and a level `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelParams {
    pub p: u32,
    pub m: u32,
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl LevelParams {
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        let mut period: u64 = 1;
        for _ in 0..=m {
            period *= p as u64;
            if period > MAX_PERIOD as u64 {
                return Err(Error::InvalidParams(format!("p^(m+1) exceeds {MAX_PERIOD}")));
            }
        }
        Ok(LevelParams { p, m })
    }

    /// `p^l` as a machine integer.
    pub fn pow(&self, l: u32) -> usize {
        (self.p as usize).pow(l)
    }

    /// `p^(m+1)`, the order of the curvature operator.
    pub fn period(&self) -> usize {
        self.pow(self.m + 1)
    }

    /// Parameters one level down, if any.
    pub fn lower(&self) -> Option<LevelParams> {
        (self.m > 0).then(|| LevelParams { p: self.p, m: self.m - 1 })
    }

    pub fn raise(&self, l: u32) -> Result<LevelParams> {
        LevelParams::new(self.p, self.m + l)
    }
}

/// `(q, r)` with `l = p^m q + r` and `0 <= r < p^m`.
pub fn qr_decompose(l: usize, params: LevelParams) -> (usize, usize) {
    let pm = params.pow(params.m);
    (l / pm, l % pm)
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc: u64 = 1;
    while k > 0 {
        let (nd, kd) = (n % p64, k % p64);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom(nd, kd, p64) % p64;
        n /= p64;
        k /= p64;
    }
    acc as u32
}

fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * pow_mod(den, p - 2, p) % p
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// The three coefficient families reduced mod p, for `0 <= j' <= j <= 2 p^(m+1)`.
#[derive(Debug, Clone)]
pub struct BracketTable {
    pub params: LevelParams,
    size: usize,
    brace: Vec<Vec<u32>>,
    angle: Vec<Vec<u32>>,
    // angle_top[j][j'][k] holds j'' = max(j', j - j') + k.
    angle_top: Vec<Vec<Vec<u32>>>,
    fact_q: Vec<u32>,
}

/// An exact nonnegative rational.
#[derive(Debug, Clone)]
struct Frac {
    num: BigUint,
    den: BigUint,
}

impl Frac {
    fn ratio(num: BigUint, den: BigUint) -> Frac {
        let g = num.gcd(&den);
        Frac { num: num / &g, den: den / g }
    }

    /// Residue mod p, provided the reduced denominator is prime to p.
    fn reduce(&self, p: u32, what: impl FnOnce() -> String) -> Result<u32> {
        let den = reduce(&self.den, p);
        if den == 0 {
            return Err(Error::IntegralityViolation(what()));
        }
        let num = reduce(&self.num, p) as u64;
        Ok((num * pow_mod(den as u64, p as u64 - 2, p as u64) % p as u64) as u32)
    }
}

fn reduce(x: &BigUint, p: u32) -> u32 {
    (x % BigUint::from(p)).to_u32().expect("residue fits")
}

/// Builds the table with exact big-integer factorials.
pub fn build_table(params: LevelParams) -> Result<BracketTable> {
    let p = params.p;
    let size = 2 * params.period();
    let mut fact = vec![BigUint::one()];
    for i in 1..=size {
        let next = &fact[i - 1] * BigUint::from(i);
        fact.push(next);
    }
    let q = |j: usize| qr_decompose(j, params).0;

    let mut brace = Vec::with_capacity(size + 1);
    let mut angle = Vec::with_capacity(size + 1);
    let mut angle_top = Vec::with_capacity(size + 1);
    for j in 0..=size {
        let mut b_row = Vec::with_capacity(j + 1);
        let mut a_row = Vec::with_capacity(j + 1);
        for jp in 0..=j {
            let b = Frac::ratio(fact[q(j)].clone(), &fact[q(jp)] * &fact[q(j - jp)]);
            let binom = &fact[j] / (&fact[jp] * &fact[j - jp]);
            let a = Frac::ratio(binom * &b.den, b.num.clone());
            b_row.push(b.reduce(p, || format!("brace({j},{jp})"))?);
            a_row.push(a.reduce(p, || format!("angle({j},{jp})"))?);
        }
        brace.push(b_row);
        angle.push(a_row);
    }
    for j in 0..=size {
        let mut rows = Vec::with_capacity(j + 1);
        for jp in 0..=j {
            let lo = jp.max(j - jp);
            let mut row = Vec::with_capacity(j - lo + 1);
            for jpp in lo..=j {
                let multi = &fact[jpp] / (&fact[j - jpp] * &fact[jpp - jp] * &fact[jpp + jp - j]);
                let scaled = multi * &fact[q(jp)] * &fact[q(j - jp)];
                let v = Frac::ratio(scaled, fact[q(jpp)].clone());
                row.push(v.reduce(p, || format!("angle_top({j},{jp},{jpp})"))?);
            }
            rows.push(row);
        }
        angle_top.push(rows);
    }
    let fact_q = (0..=size).map(|j| reduce(&fact[q(j)], p)).collect();
    Ok(BracketTable { params, size, brace, angle, angle_top, fact_q })
}

impl BracketTable {
    /// Largest index covered, `2 p^(m+1)`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn brace(&self, j: usize, jp: usize) -> u32 {
        if jp > j { 0 } else { self.brace[j][jp] }
    }

    pub fn angle(&self, j: usize, jp: usize) -> u32 {
        if jp > j { 0 } else { self.angle[j][jp] }
    }

    /// Zero outside `max(j', j-j') <= j'' <= j`.
    pub fn angle_top(&self, j: usize, jp: usize, jpp: usize) -> u32 {
        if jp > j {
            return 0;
        }
        let lo = jp.max(j - jp);
        if jpp < lo || jpp > j { 0 } else { self.angle_top[j][jp][jpp - lo] }
    }

    /// `q_j! mod p`.
    pub fn fact_q(&self, j: usize) -> u32 {
        self.fact_q[j]
    }
}

/// Shared, lazily built table for `params`.
pub fn table(params: LevelParams) -> Arc<BracketTable> {
    static CACHE: OnceLock<Mutex<HashMap<LevelParams, Arc<BracketTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&params) {
        return t.clone();
    }
    let built = Arc::new(build_table(params).expect("bracket coefficients are integral"));
    cache.lock().unwrap().entry(params).or_insert(built).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: u32, m: u32) -> LevelParams {
        LevelParams::new(p, m).unwrap()
    }

    #[test]
    fn qr_examples() {
        assert_eq!(qr_decompose(7, lp(2, 1)), (3, 1));
        assert_eq!(qr_decompose(5, lp(5, 0)), (5, 0));
        assert_eq!(qr_decompose(0, lp(3, 1)), (0, 0));
    }

    #[test]
    fn rejects_bad_params() {
        assert!(LevelParams::new(4, 0).is_err());
        assert!(LevelParams::new(2, 9).is_err());
        assert!(LevelParams::new(2, 8).is_ok());
    }

    #[test]
    fn small_values() {
        let t = build_table(lp(2, 0)).unwrap();
        assert_eq!(t.angle(2, 1), 1);
        let t = build_table(lp(2, 1)).unwrap();
        assert_eq!(t.brace(2, 1), 1);
        assert_eq!(t.angle(2, 1), 0);
    }

    #[test]
    fn fractional_beyond_period() {
        // C(6,3) / brace(6,3) = 20 / 6 = 10/3, and 10/3 = 0 mod 2.
        let t = build_table(lp(2, 1)).unwrap();
        assert_eq!(t.brace(6, 3), 0);
        assert_eq!(t.angle(6, 3), 0);
        let t = build_table(lp(3, 1)).unwrap();
        // C(9,3) = 84 and brace(9,3) = 3!/(1! 2!) = 3, so angle = 28.
        assert_eq!(t.angle(9, 3), 28 % 3);
    }

    #[test]
    fn boundary_identities() {
        for (p, m) in [(2, 0), (3, 0), (5, 0), (2, 1), (3, 1), (2, 2)] {
            let t = build_table(lp(p, m)).unwrap();
            for j in 0..=t.size() {
                assert_eq!(t.brace(j, 0), 1);
                assert_eq!(t.angle(j, 0), 1);
                for jp in 0..=j {
                    assert_eq!(t.angle_top(j, jp, j), t.angle(j, jp));
                    assert_eq!(t.brace(j, jp), t.brace(j, j - jp));
                }
            }
        }
    }

    #[test]
    fn period_step_is_unit() {
        for (p, m) in [(2, 0), (3, 0), (5, 0), (2, 1), (3, 1), (2, 2), (3, 2)] {
            let t = build_table(lp(p, m)).unwrap();
            let big = t.params.period();
            assert_ne!(t.angle(big, t.params.pow(m)), 0);
            for s in big..2 * big {
                assert_ne!(t.angle(s, s - big), 0, "s = {s}");
            }
        }
    }

    #[test]
    fn lucas_matches_exact() {
        for p in [2u32, 3, 5, 7] {
            for n in 0..60u64 {
                let mut c = BigUint::one();
                for k in 0..=n {
                    assert_eq!(binom_mod_p(n, k, p), reduce(&c, p), "C({n},{k}) mod {p}");
                    c = c * BigUint::from(n - k) / BigUint::from(k + 1);
                }
            }
        }
    }
}
