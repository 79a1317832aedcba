//! m-cyclic vectors, pinned modules and the surjection `ν : P → E`.

use crate::error::{Error, Result};
use crate::linalg::{unit_vector, vec_add, vec_is_zero, Mat, Vector};
use crate::module::{DiffModule, Morphism};
use crate::combinatorics::table;
use crate::derivation::derive;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// A module with a chosen m-cyclic vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinnedModule {
    pub module: DiffModule,
    pub vector: Vector,
}

impl PinnedModule {
    /// Checks that `∇_<0> v, ..., ∇_<n-1> v` is a basis of `K^n`.
    pub fn new(module: DiffModule, vector: Vector) -> Result<Self> {
        if vector.len() != module.rank() {
            return Err(Error::Shape("vector length differs from rank".into()));
        }
        if wronskian_rank(&module, &vector) != module.rank() {
            return Err(Error::NotCyclic);
        }
        Ok(PinnedModule { module, vector })
    }

    /// Columns `∇_<j> v` for `j < n`.
    pub fn wronskian(&self) -> Mat {
        wronskian_matrix(&self.module, &self.vector, self.module.rank())
    }
}

/// Columns `∇_<j> v`, `j < count`.
pub fn wronskian_matrix(module: &DiffModule, v: &[RatFunc], count: usize) -> Mat {
    let cols = module.apply_all(v, count - 1);
    Mat::from_cols(module.p(), module.rank(), &cols)
}

/// Largest `l` with `v, ∇_<1> v, ..., ∇_<l-1> v` linearly independent over `K`.
pub fn wronskian_rank(module: &DiffModule, v: &[RatFunc]) -> usize {
    if vec_is_zero(v) {
        return 0;
    }
    let limit = module.rank().min(module.params().period());
    let images = module.apply_all(v, limit - 1);
    let mut l = 0;
    while l < images.len() {
        if Mat::from_cols(module.p(), module.rank(), &images[..=l]).rank() <= l {
            break;
        }
        l += 1;
    }
    l
}

/// Candidate scalars `λ` in `F_p(t^(p^(m+1)))`: `1, ..., p-1`, then `u, 1+u, 2+u, ...` with `u = t^(p^(m+1))`.
fn lambda_candidates(module: &DiffModule, count: usize) -> Vec<RatFunc> {
    let p = module.p();
    let step = module.params().period();
    (1..=count)
        .map(|mut k| {
            let mut digits = Vec::new();
            while k > 0 {
                digits.push((k % p as usize) as u32);
                k /= p as usize;
            }
            RatFunc::from_poly(Poly::from_coeffs(p, digits).inflate(step))
        })
        .collect()
}

/// An m-cyclic vector of a non-log module, by the constructive rank-raising argument.
pub fn find_cyclic(module: &DiffModule) -> Result<Vector> {
    if module.is_log() {
        return Err(Error::NotNonLog);
    }
    let n = module.rank();
    let p = module.p();
    let params = module.params();
    let big = params.period();
    if n > big {
        return Err(if module.is_dormant() {
            Error::NoCyclicVector { rank: n, bound: big }
        } else {
            Error::RankOutOfRange { rank: n, bound: big + 1 }
        });
    }
    let tab = table(params);
    let mut v = unit_vector(p, n, 0);
    loop {
        let l = wronskian_rank(module, &v);
        if l == n {
            return Ok(v);
        }
        let images = module.apply_all(&v, l);
        let span = Mat::from_cols(p, n, &images[..l]);
        let a = span.solve(&images[l]).expect("∇_<l> v lies in the span of lower images");
        // Complete the span by standard basis vectors, u first.
        let mut basis: Vec<Vector> = images[..l].to_vec();
        let mut u_index = None;
        for k in 0..n {
            let e = unit_vector(p, n, k);
            let mut trial = basis.clone();
            trial.push(e);
            if Mat::from_cols(p, n, &trial).rank() == trial.len() {
                basis = trial;
                u_index.get_or_insert(l);
            }
        }
        let u_pos = u_index.expect("span is proper");
        let u = basis[u_pos].clone();
        let full = Mat::from_cols(p, n, &basis);
        let beta: Vec<RatFunc> = module
            .apply_all(&u, l)
            .iter()
            .map(|w| full.solve(w).expect("basis is complete")[u_pos].clone())
            .collect();
        // L = L_l - Σ_{r<l} a_r L_r with L_r = Σ_i brace(r, i) β_i ∂_<r-i>.
        let apply_l = |z: &RatFunc| -> RatFunc {
            let l_r = |r: usize| -> RatFunc {
                (0..=r).fold(RatFunc::zero(p), |acc, i| {
                    let c = tab.brace(r, i);
                    if c == 0 {
                        return acc;
                    }
                    acc.add(&beta[i].mul(&derive(z, r - i, params, false)).scale(c))
                })
            };
            (0..l).fold(l_r(l), |acc, r| acc.sub(&a[r].mul(&l_r(r))))
        };
        let z = (0..n)
            .map(|i| RatFunc::monomial(p, 1, i))
            .find(|z| !apply_l(z).is_zero())
            .ok_or(Error::AlgorithmStall(l))?;
        let zu: Vector = u.iter().map(|x| x.mul(&z)).collect();
        let next = lambda_candidates(module, l + 2)
            .into_iter()
            .map(|lam| vec_add(&v, &zu.iter().map(|x| x.mul(&lam)).collect::<Vec<_>>()))
            .find(|cand| wronskian_rank(module, cand) > l)
            .ok_or(Error::AlgorithmStall(l))?;
        v = next;
    }
}

/// `ν : P → E`, `δ_<l> ↦ ∇_<l> v`.
pub fn nu_morphism(pinned: &PinnedModule) -> Result<Morphism> {
    let module = &pinned.module;
    if !module.is_dormant() {
        return Err(Error::NotDormant);
    }
    let big = module.params().period();
    let cols = module.apply_all(&pinned.vector, big - 1);
    let matrix = Mat::from_cols(module.p(), module.rank(), &cols);
    let source = DiffModule::p_module(module.params(), module.is_log());
    Morphism::new(source, module.clone(), matrix)
}
