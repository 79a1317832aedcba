//! Level-m differential modules stored as the matrices of all `∇_<j>`, `j <= p^(m+1)`.

use rayon::prelude::*;

use crate::combinatorics::{binom_mod_p, table, LevelParams};
use crate::derivation::derive_all;
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, vec_add, vec_is_zero, Mat, Vector};
use crate::ratfunc::RatFunc;

/// A free module `K^n` with matrices `A_j`; column `i` of `A_j` is `∇_<j>(e_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffModule {
    params: LevelParams,
    log: bool,
    mats: Vec<Mat>,
    regular_at_zero: bool,
}

/// Outcome of [`DiffModule::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub identity_ok: bool,
    /// Violated `(j, j')` pairs, sorted and deduplicated.
    pub failures: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.identity_ok && self.failures.is_empty()
    }
}

/// Shared implementation of the action; `mats` may be a prefix of the full family.
fn apply_all_with(params: LevelParams, log: bool, mats: &[Mat], v: &[RatFunc], jmax: usize) -> Vec<Vector> {
    let p = params.p;
    let n = v.len();
    let tab = table(params);
    let derivs: Vec<Vec<RatFunc>> = v.iter().map(|x| derive_all(x, jmax, params, log)).collect();
    let mut out = Vec::with_capacity(jmax + 1);
    for j in 0..=jmax {
        let mut acc = vec![RatFunc::zero(p); n];
        for jp in 0..=j {
            let b = tab.brace(j, jp);
            if b == 0 {
                continue;
            }
            let dv: Vector = derivs.iter().map(|d| d[jp].clone()).collect();
            if vec_is_zero(&dv) {
                continue;
            }
            let term = mats[j - jp].mul_vec(&dv);
            acc = vec_add(&acc, &term.iter().map(|x| x.scale(b)).collect::<Vec<_>>());
        }
        out.push(acc);
    }
    out
}

impl DiffModule {
    /// Wraps raw matrices after shape checks; relations are not verified here.
    pub fn from_matrices(params: LevelParams, log: bool, mats: Vec<Mat>) -> Result<Self> {
        let big = params.period();
        if mats.len() != big + 1 {
            return Err(Error::Shape(format!("expected {} matrices, got {}", big + 1, mats.len())));
        }
        let n = mats[0].rows();
        if n == 0 || mats.iter().any(|a| a.rows() != n || a.cols() != n || a.p() != params.p) {
            return Err(Error::Shape("matrices must be square of a common size".into()));
        }
        let regular_at_zero = mats.iter().all(|a| a.regular_at_zero());
        Ok(DiffModule { params, log, mats, regular_at_zero })
    }

    pub fn params(&self) -> LevelParams {
        self.params
    }

    pub fn p(&self) -> u32 {
        self.params.p
    }

    pub fn is_log(&self) -> bool {
        self.log
    }

    pub fn rank(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.mats
    }

    pub fn matrix(&self, j: usize) -> &Mat {
        &self.mats[j]
    }

    pub fn regular_at_zero(&self) -> bool {
        self.regular_at_zero
    }

    /// `∇_<j>(v)` in coordinates.
    pub fn apply(&self, j: usize, v: &[RatFunc]) -> Vector {
        self.apply_all(v, j).pop().unwrap()
    }

    /// `[∇_<0>(v), ..., ∇_<jmax>(v)]`.
    pub fn apply_all(&self, v: &[RatFunc], jmax: usize) -> Vec<Vector> {
        assert!(jmax <= self.params.period(), "operator index beyond p^(m+1)");
        apply_all_with(self.params, self.log, &self.mats, v, jmax)
    }

    /// Checks `A_0 = I` and the composition relations on every basis vector.
    pub fn validate(&self) -> ValidationReport {
        let big = self.params.period();
        let n = self.rank();
        let p = self.p();
        let tab = table(self.params);
        let identity_ok = self.mats[0].is_identity();
        let mut failures: Vec<(usize, usize)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut bad = Vec::new();
                for s in 0..=big {
                    let col = self.mats[s].col(i);
                    let images = self.apply_all(&col, big - s);
                    for (jp, lhs) in images.iter().enumerate() {
                        let j = jp + s;
                        let rhs: Vector = if self.log {
                            let lo = jp.max(s);
                            (lo..=j).fold(vec![RatFunc::zero(p); n], |acc, jpp| {
                                let c = tab.angle_top(j, jp, jpp);
                                if c == 0 {
                                    acc
                                } else {
                                    vec_add(&acc, &self.mats[jpp].col(i).iter().map(|x| x.scale(c)).collect::<Vec<_>>())
                                }
                            })
                        } else {
                            self.mats[j].col(i).iter().map(|x| x.scale(tab.angle(j, jp))).collect()
                        };
                        if *lhs != rhs {
                            bad.push((j, jp));
                        }
                    }
                }
                bad
            })
            .collect();
        failures.sort_unstable();
        failures.dedup();
        ValidationReport { identity_ok, failures }
    }

    /// Extends `∇_<p^l>`, `l = 0..=m`, to the full family.
    pub fn from_generators(params: LevelParams, log: bool, gens: &[Mat]) -> Result<Self> {
        let m = params.m as usize;
        if gens.len() != m + 1 {
            return Err(Error::Shape(format!("expected {} generators", m + 1)));
        }
        let n = gens[0].rows();
        let p = params.p;
        let big = params.period();
        let tab = table(params);
        let mut mats = vec![Mat::identity(p, n)];
        for j in 1..=big {
            if let Some(l) = (0..=m).find(|&l| params.pow(l as u32) == j) {
                if gens[l].rows() != n || gens[l].cols() != n {
                    return Err(Error::Shape("generator size mismatch".into()));
                }
                mats.push(gens[l].clone());
                continue;
            }
            let mut l = 0u32;
            while (j / params.pow(l)) % p as usize == 0 {
                l += 1;
            }
            let l = l.min(params.m);
            let jp = params.pow(l);
            let lead = tab.angle(j, jp);
            if lead == 0 {
                return Err(Error::IntegralityViolation(format!("angle({j},{jp}) vanishes")));
            }
            let inv = RatFunc::constant(p, crate::poly::inv_mod(lead, p));
            let rest = j - jp;
            let mut cols = Vec::with_capacity(n);
            for i in 0..n {
                let start = mats[rest].col(i);
                let mut lhs = apply_all_with(params, log, &mats, &start, jp).pop().unwrap();
                if log {
                    for jpp in jp.max(rest)..j {
                        let c = tab.angle_top(j, jp, jpp);
                        if c != 0 {
                            let lower: Vector = mats[jpp].col(i).iter().map(|x| x.scale(p - c)).collect();
                            lhs = vec_add(&lhs, &lower);
                        }
                    }
                }
                cols.push(lhs.iter().map(|x| x.mul(&inv)).collect::<Vector>());
            }
            mats.push(Mat::from_cols(p, n, &cols));
        }
        let module = Self::from_matrices(params, log, mats)?;
        let report = module.validate();
        if !report.passed() {
            return Err(Error::RelationFailure(report.failures.len()));
        }
        Ok(module)
    }

    /// `A_(p^(m+1))`.
    pub fn curvature(&self) -> &Mat {
        &self.mats[self.params.period()]
    }

    pub fn is_dormant(&self) -> bool {
        self.curvature().is_zero()
    }

    pub fn trivial(params: LevelParams, n: usize, log: bool) -> Self {
        let p = params.p;
        let mut mats = vec![Mat::identity(p, n)];
        mats.extend((0..params.period()).map(|_| Mat::zeros(p, n, n)));
        Self::from_matrices(params, log, mats).unwrap()
    }

    /// Rank-one log module with `A_j = q_j! C(-ã, j)`, `ã` the representative of `a` in `[0, p^(m+1))`.
    pub fn nabla(params: LevelParams, a: i64) -> Self {
        let p = params.p;
        let big = params.period();
        let a = a.rem_euclid(big as i64) as u64;
        let tab = table(params);
        let mats = (0..=big)
            .map(|j| {
                // C(-a, j) = (-1)^j C(a + j - 1, j)
                let c = if j == 0 { 1 } else { binom_mod_p(a + j as u64 - 1, j as u64, p) };
                let c = if j % 2 == 1 { (p - c) % p } else { c };
                let v = (c as u64 * tab.fact_q(j) as u64 % p as u64) as u32;
                Mat::from_fn(p, 1, 1, |_, _| RatFunc::constant(p, v))
            })
            .collect();
        Self::from_matrices(params, true, mats).unwrap()
    }

    /// The quotient `𝒟 / 𝒟 ∂_<p^(m+1)>` on the basis `δ_<0>, ..., δ_<p^(m+1)-1>`.
    pub fn p_module(params: LevelParams, log: bool) -> Self {
        let p = params.p;
        let big = params.period();
        let tab = table(params);
        let mats = (0..=big)
            .map(|j| {
                Mat::from_fn(p, big, big, |row, l| {
                    let v = if log {
                        if row >= j.max(l) && row <= j + l { tab.angle_top(j + l, j, row) } else { 0 }
                    } else if row == j + l {
                        tab.angle(j + l, j)
                    } else {
                        0
                    };
                    RatFunc::constant(p, v)
                })
            })
            .collect();
        Self::from_matrices(params, log, mats).unwrap()
    }

    /// The dual module on the dual basis.
    pub fn dual(&self) -> Self {
        let big = self.params.period();
        let p = self.p();
        let tab = table(self.params);
        // Σ_{j'+j''=j} brace(j, j') B_{j'}^T A_{j''} = 0 for j > 0.
        let mut bt: Vec<Mat> = vec![Mat::identity(p, self.rank())];
        for j in 1..=big {
            let mut acc = Mat::zeros(p, self.rank(), self.rank());
            for (jp, b) in bt.iter().enumerate() {
                let c = tab.brace(j, jp);
                if c != 0 {
                    acc = acc.add(&b.mul(&self.mats[j - jp]).scale_int(c));
                }
            }
            bt.push(acc.scale_int(p - 1));
        }
        let mats = bt.iter().map(|b| b.transpose()).collect();
        Self::from_matrices(self.params, self.log, mats).unwrap()
    }

    /// Tensor product on the basis `e_i ⊗ f_k`, index `i * rank(o) + k`.
    pub fn tensor(&self, o: &DiffModule) -> Result<Self> {
        self.same_kind(o)?;
        let big = self.params.period();
        let tab = table(self.params);
        let n = self.rank() * o.rank();
        let mats = (0..=big)
            .map(|j| {
                (0..=j).fold(Mat::zeros(self.p(), n, n), |acc, jp| {
                    let c = tab.brace(j, jp);
                    if c == 0 {
                        acc
                    } else {
                        acc.add(&self.mats[jp].kron(&o.mats[j - jp]).scale_int(c))
                    }
                })
            })
            .collect();
        Self::from_matrices(self.params, self.log, mats)
    }

    pub fn direct_sum(&self, o: &DiffModule) -> Result<Self> {
        self.same_kind(o)?;
        let mats = self.mats.iter().zip(&o.mats).map(|(a, b)| a.block_diag(b)).collect();
        Self::from_matrices(self.params, self.log, mats)
    }

    fn same_kind(&self, o: &DiffModule) -> Result<()> {
        if self.params != o.params || self.log != o.log {
            return Err(Error::Shape("modules differ in level or log flag".into()));
        }
        Ok(())
    }

    /// Change of basis: the new basis vectors are the columns of `g`.
    pub fn gauge(&self, g: &Mat) -> Result<Self> {
        let n = self.rank();
        if g.rows() != n || g.cols() != n {
            return Err(Error::Shape("gauge matrix size".into()));
        }
        let ginv = g.inverse()?;
        let big = self.params.period();
        let images: Vec<Vec<Vector>> = (0..n).map(|i| self.apply_all(&g.col(i), big)).collect();
        let mats = (0..=big)
            .map(|j| {
                let cols: Vec<Vector> = images.iter().map(|im| im[j].clone()).collect();
                ginv.mul(&Mat::from_cols(self.p(), n, &cols))
            })
            .collect();
        Self::from_matrices(self.params, self.log, mats)
    }

    /// Transport along multiplication by a unit `a`: `∇'_<j>(v) = a ∇_<j>(a^{-1} v)`.
    pub fn twist_by_unit(&self, a: &RatFunc) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Singular);
        }
        self.gauge(&Mat::identity(self.p(), self.rank()).scale(&a.inv()))
    }

    /// `A_j ↦ t^j A_j`, turning a non-log module into a log module.
    pub fn eta(&self) -> Result<Self> {
        if self.log {
            return Err(Error::NotNonLog);
        }
        let p = self.p();
        let mats = self.mats.iter().enumerate().map(|(j, a)| a.scale(&RatFunc::monomial(p, 1, j))).collect();
        Self::from_matrices(self.params, true, mats)
    }

    /// Inverse of [`DiffModule::eta`] on lattices: requires `t^j | A_j` in `R`.
    pub fn eta_inverse(&self) -> Result<Self> {
        if !self.log {
            return Err(Error::NotLog);
        }
        for (j, a) in self.mats.iter().enumerate() {
            if a.entries().any(|x| !x.is_zero() && x.valuation().unwrap() < j as i64) {
                return Err(Error::EtaNotDivisible { j });
            }
        }
        self.eta_inverse_field()
    }

    /// Inverse of [`DiffModule::eta`] over `K`, where every `t^j` is invertible.
    pub fn eta_inverse_field(&self) -> Result<Self> {
        if !self.log {
            return Err(Error::NotLog);
        }
        let p = self.p();
        let mats = self
            .mats
            .iter()
            .enumerate()
            .map(|(j, a)| a.scale(&RatFunc::monomial(p, 1, j).inv()))
            .collect();
        Self::from_matrices(self.params, false, mats)
    }

    /// `F^(l)*`: reads `self` as a module over `F_p(u)`, `u = t^(p^l)`, and returns the
    /// pullback at level `m + l`.
    pub fn frobenius_pullback(&self, l: u32) -> Result<Self> {
        let params = self.params.raise(l)?;
        let step = params.pow(l);
        let n = self.rank();
        let mats = (0..=params.period())
            .map(|j| {
                if j % step == 0 {
                    self.mats[j / step].inflate(step)
                } else {
                    Mat::zeros(self.p(), n, n)
                }
            })
            .collect();
        Self::from_matrices(params, self.log, mats)
    }

    /// Pullback through every level: the canonical structure on `K^n` over `K^(m+1)`.
    pub fn pullback_of_space(params: LevelParams, n: usize) -> Self {
        Self::trivial(params, n, false)
    }
}

/// A matrix between two modules, expected to commute with every `∇_<j>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub source: DiffModule,
    pub target: DiffModule,
    pub matrix: Mat,
}

impl Morphism {
    pub fn new(source: DiffModule, target: DiffModule, matrix: Mat) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Shape("morphism matrix size".into()));
        }
        Ok(Morphism { source, target, matrix })
    }

    /// `∇^target_<j> ∘ F = F ∘ ∇^source_<j>` for all `j <= p^(m+1)`.
    pub fn intertwines(&self) -> bool {
        let big = self.source.params().period();
        (0..self.source.rank()).all(|i| {
            let images = self.target.apply_all(&self.matrix.col(i), big);
            images.iter().enumerate().all(|(j, w)| *w == self.matrix.mul_vec(&self.source.matrix(j).col(i)))
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.matrix.inverse().is_ok() && self.intertwines()
    }

    /// Applies the morphism to a coordinate vector.
    pub fn image(&self, v: &[RatFunc]) -> Vector {
        self.matrix.mul_vec(v)
    }
}

/// Standard basis vector `e_i` of `K^n`.
pub fn basis_vector(module: &DiffModule, i: usize) -> Vector {
    unit_vector(module.p(), module.rank(), i)
}
