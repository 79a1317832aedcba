//! Frobenius descent of dormant non-log modules by horizontal sections.

use crate::derivation::frobenius_split;
use crate::error::{Error, Result};
use crate::linalg::{vec_is_zero, Mat, Vector};
use crate::module::{DiffModule, Morphism};
use crate::ratfunc::RatFunc;

/// One descent step.
#[derive(Debug, Clone)]
pub struct Descent {
    /// Level `m - 1` structure on the horizontal sections, in `u = t^p`; `None` when `m = 0`.
    pub module: Option<DiffModule>,
    /// Columns: the horizontal sections in the coordinates of the input module.
    pub basis: Mat,
}

/// `E^1 = Ker ∇_<1>` with its induced level `m - 1` structure.
pub fn descend_once(module: &DiffModule) -> Result<Descent> {
    if module.is_log() {
        return Err(Error::NotNonLog);
    }
    let params = module.params();
    let p = params.p;
    let pu = p as usize;
    let n = module.rank();
    // ∇_<1> as an F_p(u)-linear map on the basis t^i e_k, index k p + i.
    let columns: Vec<Vector> = (0..n * pu)
        .map(|idx| {
            let (k, i) = (idx / pu, idx % pu);
            let mut v = vec![RatFunc::zero(p); n];
            v[k] = RatFunc::monomial(p, 1, i);
            let image = module.apply(1, &v);
            image.iter().flat_map(|f| frobenius_split(f, 1)).collect()
        })
        .collect();
    let semilinear = Mat::from_cols(p, n * pu, &columns);
    let kernel = semilinear.kernel();
    if kernel.len() != n {
        return Err(Error::DescentRankDeficient { found: kernel.len(), expected: n });
    }
    let sections: Vec<Vector> = kernel
        .iter()
        .map(|x| {
            (0..n)
                .map(|r| {
                    (0..pu).fold(RatFunc::zero(p), |acc, i| {
                        acc.add(&x[r * pu + i].inflate(pu).mul(&RatFunc::monomial(p, 1, i)))
                    })
                })
                .collect()
        })
        .collect();
    for s in &sections {
        for j in 1..pu.min(params.period() + 1) {
            if !vec_is_zero(&module.apply(j, s)) {
                return Err(Error::DescentRankDeficient { found: 0, expected: n });
            }
        }
    }
    let basis = Mat::from_cols(p, n, &sections);
    let inverse = basis.inverse().map_err(|_| Error::DescentRankDeficient { found: 0, expected: n })?;
    let Some(lower) = params.lower() else {
        return Ok(Descent { module: None, basis });
    };
    let images: Vec<Vec<Vector>> = sections.iter().map(|s| module.apply_all(s, params.period())).collect();
    let mats = (0..=lower.period())
        .map(|j| {
            let cols: Vec<Vector> = images.iter().map(|im| im[j * pu].clone()).collect();
            inverse
                .mul(&Mat::from_cols(p, n, &cols))
                .deflate(pu)
                .ok_or(Error::DescentRankDeficient { found: 0, expected: n })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Descent { module: Some(DiffModule::from_matrices(lower, false, mats)?), basis })
}

/// Result of descending through every level.
#[derive(Debug, Clone)]
pub struct FullDescent {
    pub rank: usize,
    /// Horizontal sections `E^(m+1)` as columns in the original coordinates.
    pub basis: Mat,
}

/// Iterates [`descend_once`] `m + 1` times.
pub fn descend_full(module: &DiffModule) -> Result<FullDescent> {
    let params = module.params();
    let p = params.p as usize;
    let mut basis = Mat::identity(module.p(), module.rank());
    let mut current = module.clone();
    for step in 0..=params.m {
        let d = descend_once(&current)?;
        basis = basis.mul(&d.basis.inflate(p.pow(step)));
        match d.module {
            Some(next) => current = next,
            None => break,
        }
    }
    let big = params.period();
    for i in 0..basis.cols() {
        let images = module.apply_all(&basis.col(i), big);
        if images[1..].iter().any(|w| !vec_is_zero(w)) {
            return Err(Error::DescentRankDeficient { found: i, expected: module.rank() });
        }
    }
    Ok(FullDescent { rank: basis.cols(), basis })
}

/// Unit and counit of the pullback/descent adjunction, checked on one module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitCounitReport {
    /// `F^(m+1)*(E^(m+1)) → E` is an isomorphism of modules.
    pub counit_full: bool,
    /// `F^*(E^1) → E` is an isomorphism of modules.
    pub counit_once: bool,
    /// `E^1 → (F^* E^1)^1` is an isomorphism onto the descended space.
    pub unit_once: bool,
}

impl UnitCounitReport {
    pub fn passed(&self) -> bool {
        self.counit_full && self.counit_once && self.unit_once
    }
}

fn pulled_back_sections_iso(lower: &DiffModule, step: usize) -> Result<bool> {
    let up = lower.frobenius_pullback(1)?;
    let again = descend_once(&up)?;
    let Some(inv) = again.basis.inverse().ok() else { return Ok(false) };
    // 1 ⊗ e_i in the coordinates of the new horizontal basis must lie in F_p(u).
    let Some(x) = inv.deflate(step) else { return Ok(false) };
    let Some(relowered) = again.module else { return Ok(x.inverse().is_ok()) };
    Ok(Morphism::new(lower.clone(), relowered, x)?.is_isomorphism())
}

pub fn unit_counit_checks(module: &DiffModule) -> Result<UnitCounitReport> {
    let params = module.params();
    let p = module.p();
    let full = descend_full(module)?;
    let space = DiffModule::pullback_of_space(params, module.rank());
    let counit_full = Morphism::new(space, module.clone(), full.basis.clone())?.is_isomorphism();
    let once = descend_once(module)?;
    let (counit_once, unit_once) = match &once.module {
        Some(lower) => {
            let pulled = lower.frobenius_pullback(1)?;
            let counit = Morphism::new(pulled, module.clone(), once.basis.clone())?.is_isomorphism();
            (counit, pulled_back_sections_iso(lower, p as usize)?)
        }
        None => {
            let space = DiffModule::pullback_of_space(params, module.rank());
            let counit = Morphism::new(space.clone(), module.clone(), once.basis.clone())?.is_isomorphism();
            let again = descend_once(&space)?;
            let unit = again.basis.inverse().ok().and_then(|m| m.deflate(p as usize)).is_some();
            (counit, unit)
        }
    };
    Ok(UnitCounitReport { counit_full, counit_once, unit_once })
}

