//! Exponents and residues of dormant log modules at `t = 0`, and radii.

use crate::combinatorics::{binom_mod_p, table, LevelParams};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::module::DiffModule;
use crate::ratfunc::RatFunc;

/// A multiset in `Z / p^(m+1)`, stored sorted with representatives in `[0, p^(m+1))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent {
    pub params: LevelParams,
    entries: Vec<u64>,
}

impl Exponent {
    pub fn new(params: LevelParams, entries: impl IntoIterator<Item = i64>) -> Self {
        let modulus = params.period() as i64;
        let mut entries: Vec<u64> = entries.into_iter().map(|d| d.rem_euclid(modulus) as u64).collect();
        entries.sort_unstable();
        Exponent { params, entries }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn modulus(&self) -> u64 {
        self.params.period() as u64
    }

    /// Adds `a` to every entry.
    pub fn shift(&self, a: i64) -> Self {
        Self::new(self.params, self.entries.iter().map(|&d| d as i64 + a))
    }

    pub fn negate(&self) -> Self {
        Self::new(self.params, self.entries.iter().map(|&d| -(d as i64)))
    }

    pub fn union(&self, o: &Exponent) -> Self {
        Self::new(self.params, self.entries.iter().chain(&o.entries).map(|&d| d as i64))
    }

    pub fn is_set(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] != w[1])
    }

    /// Base-p digit `l` of each entry.
    pub fn digits(&self, l: u32) -> Vec<u64> {
        let p = self.params.p as u64;
        self.entries.iter().map(|d| d / p.pow(l) % p).collect()
    }
}

/// `A_(p^l)(0)` for `l = 0..=m`.
pub fn fiber_matrices(module: &DiffModule) -> Result<Vec<Mat>> {
    if !module.is_log() {
        return Err(Error::NotLog);
    }
    if !module.regular_at_zero() {
        return Err(Error::NotRegularAtZero);
    }
    let params = module.params();
    Ok((0..=params.m).map(|l| module.matrix(params.pow(l)).at_zero().unwrap()).collect())
}

/// Joint eigenspaces over F_p as `(eigenvalue tuple, dimension)`.
fn joint_spectrum(fibers: &[Mat]) -> Result<Vec<(Vec<u32>, usize)>> {
    let p = fibers[0].p();
    let n = fibers[0].rows();
    for a in fibers {
        for b in fibers {
            if a.mul(b) != b.mul(a) {
                return Err(Error::NotDiagonalizable);
            }
        }
    }
    let mut spaces: Vec<(Vec<u32>, Mat)> = vec![(Vec::new(), Mat::identity(p, n))];
    for b in fibers {
        let mut next = Vec::new();
        for (tuple, basis) in spaces {
            let mut found = 0;
            for mu in 0..p {
                let shifted = b.sub(&Mat::identity(p, n).scale_int(mu));
                let coeffs = shifted.mul(&basis).kernel();
                if coeffs.is_empty() {
                    continue;
                }
                found += coeffs.len();
                let c = Mat::from_cols(p, basis.cols(), &coeffs);
                let mut t = tuple.clone();
                t.push(mu);
                next.push((t, basis.mul(&c)));
            }
            if found != basis.cols() {
                return Err(Error::NotDiagonalizable);
            }
        }
        spaces = next;
    }
    Ok(spaces.into_iter().map(|(t, b)| (t, b.cols())).collect())
}

/// Exponent from the joint spectrum of the fiber operators: tuple `(μ_l)` gives `-Σ μ_l p^l`.
pub fn exponent(module: &DiffModule) -> Result<Exponent> {
    let fibers = fiber_matrices(module)?;
    if !module.is_dormant() {
        return Err(Error::NotDormant);
    }
    let params = module.params();
    let mut entries = Vec::with_capacity(module.rank());
    for (tuple, dim) in joint_spectrum(&fibers)? {
        let d: i64 = tuple.iter().enumerate().map(|(l, &mu)| mu as i64 * params.pow(l as u32) as i64).sum();
        entries.extend(std::iter::repeat(-d).take(dim));
    }
    Ok(Exponent::new(params, entries))
}

/// Total length of the residue: `Σ d̃_i`.
pub fn residue_length(module: &DiffModule) -> Result<u64> {
    Ok(exponent(module)?.entries().iter().sum())
}

/// Graded pieces `p^l Σ_i d̃_(i,l)`, `l = 0..=m`.
pub fn residue_graded_lengths(module: &DiffModule) -> Result<Vec<u64>> {
    let e = exponent(module)?;
    let p = e.params.p as u64;
    Ok((0..=e.params.m).map(|l| p.pow(l) * e.digits(l).iter().sum::<u64>()).collect())
}

/// Whether a lattice with exponent `e` has an m-cyclic vector.
///
/// Formally the module is `⊕ ∇_(d_i)` and `∇_<j>(v)` at `t = 0` is
/// `(q_j! C(-d̃_i, j) u_i(0))_i`, so a cyclic vector exists iff the matrix
/// `[q_j! C(-d̃_i, j)]_(i, j < n)` is invertible over F_p. At `m = 0` this is
/// the same as the entries being distinct; at higher level distinct entries are
/// necessary but not sufficient (`{0, 2}` at `p = 2, m = 1`).
pub fn exponent_admits_cyclic(e: &Exponent) -> bool {
    let params = e.params;
    let p = params.p;
    let n = e.entries().len();
    if n > params.period() {
        return false;
    }
    let tab = table(params);
    let fiber = Mat::from_fn(p, n, n, |i, j| {
        let d = e.entries()[i];
        let c = if j == 0 { 1 } else { binom_mod_p(d + j as u64 - 1, j as u64, p) };
        let c = if j % 2 == 1 { (p - c) % p } else { c };
        RatFunc::constant(p, (c as u64 * tab.fact_q(j) as u64 % p as u64) as u32)
    });
    fiber.rank() == n
}

/// Cyclicity of a dormant log lattice, decided from its exponent alone.
pub fn is_cyclic_by_exponent(module: &DiffModule) -> Result<bool> {
    Ok(exponent_admits_cyclic(&exponent(module)?))
}

/// Whether the lattice comes from a non-log module; also checks `t^j | A_j` agrees.
pub fn has_nonlog_origin(module: &DiffModule) -> Result<bool> {
    let by_exponent = exponent(module)?.entries().iter().all(|&d| d == 0);
    let by_division = module.eta_inverse().is_ok();
    if by_exponent != by_division {
        return Err(Error::Shape("exponent and divisibility disagree on non-log origin".into()));
    }
    Ok(by_exponent)
}

/// The `a` with `module ≅ ∇_a`.
pub fn classify_rank1(module: &DiffModule) -> Result<u64> {
    if module.rank() != 1 {
        return Err(Error::Shape("rank-one module expected".into()));
    }
    Ok(exponent(module)?.entries()[0])
}

/// `{-d : d ∉ δ}`.
pub fn exponent_duality(delta: &Exponent) -> Result<Exponent> {
    if !delta.is_set() {
        return Err(Error::Shape("exponent duality needs distinct entries".into()));
    }
    let modulus = delta.modulus();
    let rest = (0..modulus).filter(|d| !delta.entries().contains(d)).map(|d| -(d as i64));
    Ok(Exponent::new(delta.params, rest))
}

/// A class in `(Z / N) / {±1}`, stored by its representative in `[0, N/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Radius {
    pub modulus: u64,
    pub value: u64,
}

impl Radius {
    pub fn new(modulus: u64, a: i64) -> Self {
        let a = a.rem_euclid(modulus as i64) as u64;
        Radius { modulus, value: a.min(modulus - a) }
    }

    /// Whether the class consists of units.
    pub fn is_unit(&self, p: u64) -> bool {
        self.value % p != 0
    }
}

/// `a / 2` in `Z / N` for odd `N`.
pub fn half(a: i64, modulus: u64) -> i64 {
    let inv2 = (modulus as i64 + 1) / 2;
    (a.rem_euclid(modulus as i64) * inv2).rem_euclid(modulus as i64)
}

/// Radius `(d_1 - d_2) / 2` of a two-element exponent.
pub fn radius_from_exponent_pair(e: &Exponent) -> Result<Radius> {
    if e.params.p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let [d1, d2] = e.entries() else {
        return Err(Error::Shape("radius needs a pair".into()));
    };
    let modulus = e.modulus();
    Ok(Radius::new(modulus, half(*d1 as i64 - *d2 as i64, modulus)))
}

