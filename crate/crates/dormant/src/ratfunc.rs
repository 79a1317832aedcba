//! Reduced fractions in F_p(t), with a text form.
//!
//! Text grammar (whitespace is ignored on input):
//!
//! ```text
//! ratfunc := poly [ "/" poly ]
//! poly    := [sign] term { sign term }
//! sign    := "+" | "-"
//! term    := coeff [ "*" mono ] | mono
//! mono    := "t" [ "^" exp ]
//! coeff, exp := decimal digits
//! ```
//!
//! Coefficients are reduced mod p and repeated exponents are summed. The
//! canonical output writes `num/den`, or just `num` when `den = 1`. Terms go by
//! descending exponent, each as `c*t^e` (e >= 2), `c*t` (e = 1) or `c` (e = 0)
//! with `1 <= c < p`, where a coefficient `1` is dropped before `t`; the zero
//! polynomial is `0`. Example: `t^2+2/t+1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{inv_mod, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds and reduces `num / den`; panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero(num.p());
        }
        if den.is_constant() {
            let inv = inv_mod(den.leading(), den.p());
            return RatFunc { num: num.scale(inv), den: Poly::one(den.p()) };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.divrem(&g).0, den.divrem(&g).0) };
        let inv = inv_mod(den.leading(), den.p());
        RatFunc { num: num.scale(inv), den: den.scale(inv) }
    }

    pub fn from_poly(num: Poly) -> Self {
        let p = num.p();
        RatFunc { num, den: Poly::one(p) }
    }

    pub fn zero(p: u32) -> Self {
        RatFunc { num: Poly::zero(p), den: Poly::one(p) }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u32, a: u32) -> Self {
        Self::from_poly(Poly::constant(p, a))
    }

    /// `a t^e`.
    pub fn monomial(p: u32, a: u32, e: usize) -> Self {
        Self::from_poly(Poly::monomial(p, a, e))
    }

    pub fn t(p: u32) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn p(&self) -> u32 {
        self.num.p()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<u32> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.at_zero())
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul(&o.num), den: self.den.clone() };
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, a: u32) -> RatFunc {
        if a % self.p() == 0 {
            return Self::zero(self.p());
        }
        RatFunc { num: self.num.scale(a), den: self.den.clone() }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: usize) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Denominator does not vanish at `t = 0`.
    pub fn regular_at_zero(&self) -> bool {
        self.den.at_zero() != 0
    }

    /// Value at `t = 0`; `None` if there is a pole.
    pub fn at_zero(&self) -> Option<u32> {
        self.regular_at_zero()
            .then(|| (self.num.at_zero() as u64 * inv_mod(self.den.at_zero(), self.p()) as u64 % self.p() as u64) as u32)
    }

    /// The t-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        Some(self.num.valuation()? as i64 - self.den.valuation().unwrap() as i64)
    }

    /// Substitutes `t -> t^k`.
    pub fn inflate(&self, k: usize) -> RatFunc {
        RatFunc { num: self.num.inflate(k), den: self.den.inflate(k) }
    }

    /// Inverse of [`RatFunc::inflate`], if `self` lies in `F_p(t^k)`.
    pub fn deflate(&self, k: usize) -> Option<RatFunc> {
        Some(RatFunc { num: self.num.deflate(k)?, den: self.den.deflate(k)? })
    }

    pub fn parse(p: u32, s: &str) -> Result<RatFunc> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parts = s.splitn(2, '/');
        let num = parse_poly(p, parts.next().unwrap_or(""))?;
        let den = match parts.next() {
            Some(d) => parse_poly(p, d)?,
            None => Poly::one(p),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(RatFunc::new(num, den))
    }
}

fn parse_poly(p: u32, s: &str) -> Result<Poly> {
    let bad = || Error::Parse(format!("malformed polynomial {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let mut neg = false;
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'+' || b == b'-' {
            if i > start {
                terms.push((neg, &s[start..i]));
            } else if i != 0 {
                return Err(bad());
            }
            neg = b == b'-';
            start = i + 1;
        }
    }
    if start >= s.len() {
        return Err(bad());
    }
    terms.push((neg, &s[start..]));
    let mut acc = Poly::zero(p);
    for (neg, term) in terms {
        let (coeff, mono) = match term.split_once('*') {
            Some((c, m)) => (c, Some(m)),
            None if term.starts_with('t') => ("1", Some(term)),
            None => (term, None),
        };
        let c: u64 = coeff.parse().map_err(|_| bad())?;
        let e: usize = match mono {
            None => 0,
            Some("t") => 1,
            Some(m) => m.strip_prefix("t^").ok_or_else(bad)?.parse().map_err(|_| bad())?,
        };
        let c = (c % p as u64) as u32;
        let c = if neg { (p - c) % p } else { c };
        acc = acc.add(&Poly::monomial(p, c, e));
    }
    Ok(acc)
}

pub fn format_poly(f: &Poly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = Vec::new();
    for (e, &c) in f.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 { String::new() } else { format!("{c}*") };
        out.push(match e {
            0 => format!("{c}"),
            1 => format!("{coeff}t"),
            _ => format!("{coeff}t^{e}"),
        });
    }
    out.join("+")
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", format_poly(&self.num))
        } else {
            write!(f, "{}/{}", format_poly(&self.num), format_poly(&self.den))
        }
    }
}
