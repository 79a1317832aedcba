//! Dense polynomials over F_p.

use crate::combinatorics::pow_mod;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    c: Vec<u32>,
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

impl Poly {
    pub fn from_coeffs(p: u32, coeffs: Vec<u32>) -> Self {
        let mut c: Vec<u32> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, c }
    }

    /// Reduces signed integer coefficients mod p.
    pub fn from_signed(p: u32, coeffs: &[i64]) -> Self {
        let pi = p as i64;
        Self::from_coeffs(p, coeffs.iter().map(|&x| x.rem_euclid(pi) as u32).collect())
    }

    pub fn zero(p: u32) -> Self {
        Poly { p, c: Vec::new() }
    }

    pub fn constant(p: u32, a: u32) -> Self {
        Self::from_coeffs(p, vec![a])
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    /// `a t^e`.
    pub fn monomial(p: u32, a: u32, e: usize) -> Self {
        let mut c = vec![0; e + 1];
        c[e] = a;
        Self::from_coeffs(p, c)
    }

    pub fn t(p: u32) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }

    /// Value at `t = 0`.
    pub fn at_zero(&self) -> u32 {
        self.coeff(0)
    }

    /// Order of vanishing at `t = 0`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|&x| x != 0)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs(self.p, (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::from_coeffs(p, (0..n).map(|i| self.coeff(i) + p - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Self::zero(self.p).sub(self)
    }

    pub fn scale(&self, a: u32) -> Poly {
        let p = self.p as u64;
        let a = a as u64 % p;
        Self::from_coeffs(self.p, self.c.iter().map(|&x| (x as u64 * a % p) as u32).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self::from_coeffs(self.p, acc.into_iter().map(|x| x as u32).collect())
    }

    pub fn pow(&self, mut e: usize) -> Poly {
        let mut base = self.clone();
        let mut r = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; e];
        c.extend_from_slice(&self.c);
        Poly { p: self.p, c }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p as u64;
        let inv = inv_mod(d.leading(), self.p) as u64;
        let mut r: Vec<u64> = self.c.iter().map(|&x| x as u64).collect();
        if r.len() <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let lead = r[i] % p;
            if lead == 0 {
                continue;
            }
            let f = lead * inv % p;
            q[i - dd] = f as u32;
            for (k, &dc) in d.c.iter().enumerate() {
                let idx = i - dd + k;
                r[idx] = (r[idx] + p * p - f * dc as u64 % p) % p;
            }
        }
        (
            Self::from_coeffs(self.p, q),
            Self::from_coeffs(self.p, r.into_iter().map(|x| x as u32).collect()),
        )
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Substitutes `t -> t^k`.
    pub fn inflate(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; (self.c.len() - 1) * k + 1];
        for (i, &x) in self.c.iter().enumerate() {
            c[i * k] = x;
        }
        Poly { p: self.p, c }
    }

    /// Inverse of [`Poly::inflate`] when every exponent is divisible by `k`.
    pub fn deflate(&self, k: usize) -> Option<Poly> {
        let mut c = Vec::with_capacity(self.c.len() / k + 1);
        for (i, &x) in self.c.iter().enumerate() {
            if i % k == 0 {
                c.push(x);
            } else if x != 0 {
                return None;
            }
        }
        Some(Self::from_coeffs(self.p, c))
    }

    /// The part of `self` with exponents `≡ r (mod k)`, as a polynomial in `u = t^k`.
    pub fn residue_class(&self, r: usize, k: usize) -> Poly {
        Self::from_coeffs(self.p, self.c.iter().skip(r).step_by(k).copied().collect())
    }

    pub fn eval(&self, x: u32) -> u32 {
        let p = self.p as u64;
        self.c.iter().rev().fold(0u64, |acc, &a| (acc * x as u64 + a as u64) % p) as u32
    }
}
