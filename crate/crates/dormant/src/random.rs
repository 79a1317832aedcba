//! Seeded random inputs for property checks and examples.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::LevelParams;
use crate::cyclic::PinnedModule;
use crate::exponent::{exponent_admits_cyclic, Exponent};
use crate::module::DiffModule;
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Polynomial of degree at most `deg` in `t^step`.
pub fn poly_in(rng: &mut TestRng, p: u32, deg: usize, step: usize) -> Poly {
    Poly::from_coeffs(p, (0..=deg).map(|_| rng.gen_range(0..p)).collect()).inflate(step)
}

/// A gauge regular at `t = 0` whose value there is invertible, so it preserves the lattice `R^n`.
///
/// Built as `P L D U` with unipotent triangular factors, a constant diagonal and a permutation.
pub fn lattice_gauge(rng: &mut TestRng, p: u32, n: usize, deg: usize) -> Mat {
    let mut lower = Mat::identity(p, n);
    let mut upper = Mat::identity(p, n);
    for r in 0..n {
        for c in 0..n {
            if r == c || !rng.gen_bool(0.5) {
                continue;
            }
            let f = RatFunc::from_poly(poly_in(rng, p, deg, 1));
            if r > c { lower.set(r, c, f) } else { upper.set(r, c, f) }
        }
    }
    let diag = Mat::from_fn(p, n, n, |r, c| {
        if r == c { RatFunc::constant(p, rng.gen_range(1..p)) } else { RatFunc::zero(p) }
    });
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let pm = Mat::from_fn(p, n, n, |r, c| if perm[c] == r { RatFunc::one(p) } else { RatFunc::zero(p) });
    pm.mul(&lower).mul(&diag).mul(&upper)
}

/// A gauge invertible over `K` only: a lattice gauge with some columns scaled by `t^k` or `1/(1+t)`.
pub fn field_gauge(rng: &mut TestRng, p: u32, n: usize, deg: usize) -> Mat {
    let g = lattice_gauge(rng, p, n, deg);
    let scales: Vec<RatFunc> = (0..n)
        .map(|_| match rng.gen_range(0..3) {
            0 => RatFunc::one(p),
            1 => RatFunc::monomial(p, 1, rng.gen_range(1..3)),
            _ => RatFunc::parse(p, "1/t+1").unwrap(),
        })
        .collect();
    Mat::from_fn(p, n, n, |r, c| g.get(r, c).mul(&scales[c]))
}

/// A nonzero element of `F_p(t^(p^(m+1)))` that is a unit at `t = 0`.
pub fn frobenius_unit(rng: &mut TestRng, params: LevelParams) -> RatFunc {
    let p = params.p;
    let step = params.period();
    let mut num = poly_in(rng, p, 2, step);
    num = num.add(&Poly::constant(p, rng.gen_range(1..p)).sub(&Poly::constant(p, num.at_zero())));
    let mut den = poly_in(rng, p, 1, step);
    den = den.add(&Poly::one(p).sub(&Poly::constant(p, den.at_zero())));
    RatFunc::new(num, den)
}

/// A rational function regular at 0 with nonzero value there.
pub fn unit_at_zero(rng: &mut TestRng, p: u32, deg: usize) -> RatFunc {
    let mut num = poly_in(rng, p, deg, 1);
    num = num.add(&Poly::constant(p, rng.gen_range(1..p)).sub(&Poly::constant(p, num.at_zero())));
    let mut den = poly_in(rng, p, deg, 1);
    den = den.add(&Poly::one(p).sub(&Poly::constant(p, den.at_zero())));
    RatFunc::new(num, den)
}

/// `⊕_d ∇_d` over the given exponents, scrambled by a lattice gauge.
pub fn scrambled_nablas(rng: &mut TestRng, params: LevelParams, ds: &[i64], deg: usize) -> (DiffModule, Mat) {
    let module = ds[1..].iter().fold(DiffModule::nabla(params, ds[0]), |acc, &d| {
        acc.direct_sum(&DiffModule::nabla(params, d)).unwrap()
    });
    let g = lattice_gauge(rng, params.p, ds.len(), deg);
    (module.gauge(&g).unwrap(), g)
}

/// `n` distinct exponents in random order.
pub fn distinct_exponents(rng: &mut TestRng, params: LevelParams, n: usize) -> Vec<i64> {
    let mut all: Vec<i64> = (0..params.period() as i64).collect();
    for i in (1..all.len()).rev() {
        all.swap(i, rng.gen_range(0..=i));
    }
    all.truncate(n);
    all
}

/// `n` distinct exponents for which a lattice cyclic vector exists.
pub fn cyclic_exponents(rng: &mut TestRng, params: LevelParams, n: usize) -> Vec<i64> {
    loop {
        let ds = distinct_exponents(rng, params, n);
        if exponent_admits_cyclic(&Exponent::new(params, ds.clone())) {
            return ds;
        }
    }
}

/// A dormant pinned log module of rank `n`, in a scrambled lattice basis.
pub fn pinned_log(rng: &mut TestRng, params: LevelParams, n: usize) -> PinnedModule {
    let ds = cyclic_exponents(rng, params, n);
    let (module, g) = scrambled_nablas(rng, params, &ds, 1);
    let ones = vec![RatFunc::one(params.p); n];
    let v = g.inverse().unwrap().mul_vec(&ones);
    PinnedModule::new(module, v).expect("distinct exponents give a cyclic vector")
}
