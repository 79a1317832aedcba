//! Duality of dormant pinned modules: `(E, v) ↦ (Ker(ν)^∨, v^▼)`.

use crate::cyclic::{nu_morphism, PinnedModule};
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, Mat, Vector};
use crate::module::{DiffModule, Morphism};
use crate::ratfunc::RatFunc;

/// A basis of `Ker(ν) ∩ R^(p^(m+1))`: columns regular at 0 with independent values there.
pub fn saturate_kernel(nu: &Morphism) -> Result<Mat> {
    let p = nu.matrix.p();
    let size = nu.matrix.cols();
    let mut cols: Vec<Vector> = nu
        .matrix
        .kernel()
        .into_iter()
        .map(|v| {
            let den = v.iter().fold(RatFunc::one(p), |acc, x| {
                let d = RatFunc::from_poly(x.den().clone());
                acc.mul(&d).div(&RatFunc::from_poly(acc.num().gcd(x.den())))
            });
            v.iter().map(|x| x.mul(&den)).collect()
        })
        .collect();
    if cols.is_empty() {
        return Ok(Mat::zeros(p, size, 0));
    }
    let t_inv = RatFunc::t(p).inv();
    loop {
        let at_zero = Mat::from_cols(p, size, &cols).at_zero().expect("columns are regular at 0");
        let relations = at_zero.kernel();
        let Some(c) = relations.first() else { break };
        let pivot = (0..cols.len()).rev().find(|&i| !c[i].is_zero()).unwrap();
        let mut combo = vec![RatFunc::zero(p); size];
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                combo = combo.iter().zip(&cols[k]).map(|(a, b)| a.add(&b.mul(ck))).collect();
            }
        }
        cols[pivot] = combo.iter().map(|x| x.mul(&t_inv)).collect();
    }
    Ok(Mat::from_cols(p, size, &cols))
}

/// The dual pinned module together with the kernel basis used to build it.
#[derive(Debug, Clone)]
pub struct DualData {
    pub pinned: PinnedModule,
    pub kernel_basis: Mat,
    pub nu: Morphism,
}

/// Full construction, keeping the intermediate data.
pub fn dualize_with_data(pinned: &PinnedModule) -> Result<DualData> {
    let module = &pinned.module;
    let params = module.params();
    let big = params.period();
    let n = module.rank();
    if n == 0 || n >= big {
        return Err(Error::RankOutOfRange { rank: n, bound: big });
    }
    let nu = nu_morphism(pinned)?;
    let basis = saturate_kernel(&nu)?;
    let p = module.p();
    let k = basis.cols();
    let pm = &nu.source;
    let images: Vec<Vec<Vector>> = (0..k).map(|i| pm.apply_all(&basis.col(i), big)).collect();
    let mats = (0..=big)
        .map(|j| {
            let cols: Vec<Vector> =
                images.iter().map(|im| basis.solve(&im[j]).expect("kernel is a submodule")).collect();
            Mat::from_cols(p, k, &cols)
        })
        .collect();
    let kernel = DiffModule::from_matrices(params, module.is_log(), mats)?;
    let vector = basis.row(big - 1);
    let pinned = PinnedModule::new(kernel.dual(), vector)?;
    Ok(DualData { pinned, kernel_basis: basis, nu })
}

/// `(E^▼, ∇^▼, v^▼)`, of rank `p^(m+1) - n`.
pub fn dualize_pinned(pinned: &PinnedModule) -> Result<PinnedModule> {
    Ok(dualize_with_data(pinned)?.pinned)
}

/// The isomorphism `E → E^▼▼` obtained by dualizing `E^∨ ≅ Ker(ν_▼)`.
pub fn double_dual_witness(pinned: &PinnedModule) -> Result<Morphism> {
    let module = &pinned.module;
    let p = module.p();
    let params = module.params();
    let big = params.period();
    let first = dualize_with_data(pinned)?;
    let second = dualize_with_data(&first.pinned)?;
    // ν of (P^∨, δ^∨_<P-1>) identifies Ker(ν_▼) with the image of ν^∨.
    let pdual = DiffModule::p_module(params, module.is_log()).dual();
    let dual_pinned = PinnedModule::new(pdual, unit_vector(p, big, big - 1))?;
    let n_mat = nu_morphism(&dual_pinned)?.matrix;
    let theta = n_mat.inverse()?.mul(&first.nu.matrix.transpose());
    let x_cols: Vec<Vector> = (0..theta.cols())
        .map(|i| second.kernel_basis.solve(&theta.col(i)).ok_or(Error::Singular))
        .collect::<Result<_>>()?;
    let x = Mat::from_cols(p, second.kernel_basis.cols(), &x_cols);
    let xi = x.transpose().inverse()?;
    let witness = Morphism::new(module.clone(), second.pinned.module.clone(), xi)?;
    Ok(witness)
}

/// The unique morphism of pinned modules `source → target` sending `v` to `w`, if it intertwines.
pub fn pinned_morphism(source: &PinnedModule, target: &PinnedModule) -> Result<Morphism> {
    let n = source.module.rank();
    let ws = source.wronskian();
    let wt = Mat::from_cols(
        target.module.p(),
        target.module.rank(),
        &target.module.apply_all(&target.vector, n - 1),
    );
    Morphism::new(source.module.clone(), target.module.clone(), wt.mul(&ws.inverse()?))
}

/// For a surjection `f : (E, v) → (E', v')`, the dual `f^▼ : E'^▼ → E^▼`.
pub fn dualize_morphism(f: &Morphism, source: &PinnedModule, target: &PinnedModule) -> Result<Morphism> {
    let ds = dualize_with_data(source)?;
    let dt = dualize_with_data(target)?;
    let p = f.matrix.p();
    // Ker ν_E ⊂ Ker ν_E' inside P.
    let y_cols: Vec<Vector> = (0..ds.kernel_basis.cols())
        .map(|i| dt.kernel_basis.solve(&ds.kernel_basis.col(i)).ok_or(Error::Singular))
        .collect::<Result<_>>()?;
    let y = Mat::from_cols(p, dt.kernel_basis.cols(), &y_cols);
    Morphism::new(dt.pinned.module, ds.pinned.module, y.transpose())
}
