//! Ramification triples of dynamical Belyi maps and their permutation witnesses.
//!
//! A triple `(λ0, λ1, λ∞)` is realized by a tame self-covering of the
//! projective line when there are cyclic permutations `σ0, σ1, σ∞` of the
//! stated lengths with `σ0∘σ1 = σ∞` generating a transitive group. The search
//! here accepts only groups of order prime to `p`, so a negative answer means
//! "no prime-to-p witness", never "no covering".

pub mod perm;
pub mod stabchain;

use std::fmt;

use rayon::prelude::*;

use crate::combinatorics::LevelParams;
use crate::error::{Error, Result};
use crate::exponent::{half, Exponent, Radius};
pub use perm::Perm;
pub use stabchain::{Budget, StabChain};

/// Default per-triple work limit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RamTriple {
    pub l0: u64,
    pub l1: u64,
    pub linf: u64,
}

impl RamTriple {
    pub fn new(l0: u64, l1: u64, linf: u64) -> Self {
        RamTriple { l0, l1, linf }
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.l0, self.l1, self.linf]
    }

    pub fn sum(&self) -> u64 {
        self.l0 + self.l1 + self.linf
    }

    pub fn all_odd(&self) -> bool {
        self.as_array().iter().all(|x| x % 2 == 1)
    }
}

impl fmt::Display for RamTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.l0, self.l1, self.linf)
    }
}

fn check_odd_prime(p: u64, n: u32) -> Result<u64> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if n == 0 {
        return Err(Error::InvalidParams("N must be positive".into()));
    }
    let params = LevelParams::new(p as u32, n - 1)?;
    Ok(params.period() as u64)
}

/// The odd prime-to-p values below `p^N`.
pub fn admissible_values(p: u64, n: u32) -> Result<Vec<u64>> {
    let big = check_odd_prime(p, n)?;
    Ok((1..big).filter(|a| a % 2 == 1 && a % p != 0).collect())
}

/// Odd prime-to-p triples below `p^N` with sum below `2 p^N` obeying the
/// triangle inequalities, in lexicographic order.
pub fn bstar_enumerate(p: u64, n: u32) -> Result<Vec<RamTriple>> {
    let big = check_odd_prime(p, n)?;
    let vals = admissible_values(p, n)?;
    let mut out = Vec::new();
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                if a + b + c >= 2 * big || c < a.abs_diff(b) || c > a + b {
                    continue;
                }
                // Parity makes the triangle inequalities strict.
                assert!(a.abs_diff(b) < c && c < a + b);
                let t = RamTriple::new(a, b, c);
                assert!(degree(&t)? < big);
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// `(λ0 + λ1 + λ∞ - 1) / 2`.
pub fn degree(t: &RamTriple) -> Result<u64> {
    if t.sum() % 2 == 0 {
        return Err(Error::ParityError);
    }
    Ok((t.sum() - 1) / 2)
}

/// The triple itself followed by its three reflections.
pub fn variants(t: &RamTriple, p: u64, n: u32) -> [RamTriple; 4] {
    let big = p.pow(n);
    let r = |x: u64| big - x;
    [
        *t,
        RamTriple::new(t.l0, r(t.l1), r(t.linf)),
        RamTriple::new(r(t.l0), t.l1, r(t.linf)),
        RamTriple::new(r(t.l0), r(t.l1), t.linf),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub degree: usize,
    pub sigma0: Perm,
    pub sigma1: Perm,
    pub sigma_inf: Perm,
    pub group_order: u128,
}

impl Witness {
    /// Rechecks every claimed property without reusing the search state.
    pub fn verify(&self, t: &RamTriple, p: u64) -> bool {
        let d = self.degree;
        let sizes_ok = [&self.sigma0, &self.sigma1, &self.sigma_inf].iter().all(|s| s.degree() == d);
        if !sizes_ok || d as u64 != degree(t).unwrap_or(u64::MAX) {
            return false;
        }
        let shapes = self.sigma0.is_single_cycle(t.l0 as usize)
            && self.sigma1.is_single_cycle(t.l1 as usize)
            && self.sigma_inf.is_single_cycle(t.linf as usize);
        let product = self.sigma0.compose(&self.sigma1) == self.sigma_inf;
        let transitive = perm::is_transitive(d, &[&self.sigma0, &self.sigma1]);
        let gens = [self.sigma0.clone(), self.sigma1.clone()];
        let order_ok = match stabchain::order_by_closure(d, &gens, 50_000) {
            Some(o) => o == self.group_order,
            None => StabChain::new(d, &gens, &mut Budget::new(u64::MAX))
                .map(|c| c.order() == self.group_order)
                .unwrap_or(false),
        };
        shapes && product && transitive && order_ok && self.group_order % p as u128 != 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    Witness(Witness),
    NoWitness,
}

impl Realization {
    pub fn is_witness(&self) -> bool {
        matches!(self, Realization::Witness(_))
    }
}

// Visits every ordered k-subset arrangement and outside-slot layout for σ1.
struct CycleSearch<'a> {
    d: usize,
    l0: usize,
    l1: usize,
    linf: usize,
    p: u64,
    sigma0: &'a Perm,
    budget: &'a mut Budget,
}

impl CycleSearch<'_> {
    fn run(&mut self) -> Result<Option<Witness>> {
        let outside = self.d - self.l0;
        if self.l1 < outside {
            return Ok(None);
        }
        let k = self.l1 - outside;
        if k == 0 || k > self.l0 {
            return Ok(None);
        }
        let mut subset = Vec::with_capacity(k);
        self.subsets(0, k, &mut subset)
    }

    fn subsets(&mut self, from: usize, k: usize, chosen: &mut Vec<u32>) -> Result<Option<Witness>> {
        if chosen.len() == k {
            let first = chosen[0];
            let mut rest: Vec<u32> = chosen[1..].to_vec();
            return self.orders(first, &mut rest, 0);
        }
        for x in from..self.l0 {
            chosen.push(x as u32);
            let found = self.subsets(x + 1, k, chosen)?;
            chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    // Heap-style permutation of the inner σ0-support points.
    fn orders(&mut self, first: u32, rest: &mut Vec<u32>, i: usize) -> Result<Option<Witness>> {
        if i == rest.len() {
            return self.layouts(first, rest);
        }
        for j in i..rest.len() {
            rest.swap(i, j);
            let found = self.orders(first, rest, i + 1)?;
            rest.swap(i, j);
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn layouts(&mut self, first: u32, inner: &[u32]) -> Result<Option<Witness>> {
        let slots = self.l1 - 1;
        let outside = self.d - self.l0;
        let mut positions = Vec::with_capacity(outside);
        self.place(first, inner, slots, outside, 0, &mut positions)
    }

    fn place(
        &mut self,
        first: u32,
        inner: &[u32],
        slots: usize,
        outside: usize,
        from: usize,
        positions: &mut Vec<usize>,
    ) -> Result<Option<Witness>> {
        if positions.len() == outside {
            return self.test(first, inner, positions);
        }
        let remaining = outside - positions.len();
        for s in from..=slots - remaining {
            positions.push(s);
            let found = self.place(first, inner, slots, outside, s + 1, positions)?;
            positions.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn test(&mut self, first: u32, inner: &[u32], positions: &[usize]) -> Result<Option<Witness>> {
        self.budget.tick()?;
        let mut cycle = vec![first];
        let (mut next_out, mut next_in) = (self.l0 as u32, 0);
        let mut pos = positions.iter().peekable();
        for s in 0..self.l1 - 1 {
            if pos.peek() == Some(&&s) {
                pos.next();
                cycle.push(next_out);
                next_out += 1;
            } else {
                cycle.push(inner[next_in]);
                next_in += 1;
            }
        }
        let sigma1 = Perm::from_cycles(self.d, &[cycle]);
        let sigma_inf = self.sigma0.compose(&sigma1);
        if !sigma_inf.is_single_cycle(self.linf) || !perm::is_transitive(self.d, &[self.sigma0, &sigma1]) {
            return Ok(None);
        }
        let chain = StabChain::new(self.d, &[self.sigma0.clone(), sigma1.clone()], self.budget)?;
        let order = chain.order();
        if order % self.p as u128 == 0 {
            return Ok(None);
        }
        Ok(Some(Witness { degree: self.d, sigma0: self.sigma0.clone(), sigma1, sigma_inf, group_order: order }))
    }
}

/// Searches for a prime-to-p permutation witness of `t`.
pub fn realizable(t: &RamTriple, p: u64, n: u32, budget: u64) -> Result<Realization> {
    check_odd_prime(p, n)?;
    let d = degree(t)? as usize;
    if t.as_array().iter().any(|&x| x == 0 || x as usize > d) {
        return Ok(Realization::NoWitness);
    }
    let l0 = t.l0 as usize;
    let sigma0 = Perm::from_cycles(d, &[(0..l0 as u32).collect()]);
    if d == 1 {
        let id = Perm::identity(1);
        return Ok(Realization::Witness(Witness {
            degree: 1,
            sigma0: id.clone(),
            sigma1: id.clone(),
            sigma_inf: id,
            group_order: 1,
        }));
    }
    let mut b = Budget::new(budget);
    let mut search = CycleSearch {
        d,
        l0,
        l1: t.l1 as usize,
        linf: t.linf as usize,
        p,
        sigma0: &sigma0,
        budget: &mut b,
    };
    Ok(match search.run()? {
        Some(w) => Realization::Witness(w),
        None => Realization::NoWitness,
    })
}

/// Halved ramification indices as radii modulo `p^N`.
pub fn radii_of_triple(t: &RamTriple, p: u64, n: u32) -> Result<[Radius; 3]> {
    let big = check_odd_prime(p, n)?;
    Ok(t.as_array().map(|l| Radius::new(big, half(l as i64, big))))
}

/// Exponent after pulling back along `t = s^λ`.
pub fn exponent_pullback(delta: &Exponent, lambda: i64) -> Result<Exponent> {
    if delta.params.p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    Ok(Exponent::new(delta.params, delta.entries().iter().map(|&d| d as i64 * lambda)))
}

/// Search outcome for one triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Witness(Witness),
    NoWitness,
    BudgetExceeded { budget: u64, explored: u64 },
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Witness(_) => "witness",
            Status::NoWitness => "no_prime_to_p_witness",
            Status::BudgetExceeded { .. } => "budget_exceeded",
        }
    }

    pub fn is_complete(&self) -> bool {
        !matches!(self, Status::BudgetExceeded { .. })
    }

    fn from_result(r: Result<Realization>) -> Result<Status> {
        match r {
            Ok(Realization::Witness(w)) => Ok(Status::Witness(w)),
            Ok(Realization::NoWitness) => Ok(Status::NoWitness),
            Err(Error::SearchBudgetExceeded { budget, explored }) => Ok(Status::BudgetExceeded { budget, explored }),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperRow {
    pub triple: RamTriple,
    pub degree: u64,
    pub status: Status,
    pub radii: [Radius; 3],
    pub variants: Vec<(RamTriple, Status)>,
    /// `None` when some variant search ran out of budget.
    pub variants_consistent: Option<bool>,
}

fn thread_count() -> Option<usize> {
    std::env::var("DORMANT_THREADS").ok()?.parse().ok().filter(|&n: &usize| n > 0)
}

fn row_for(t: RamTriple, p: u64, n: u32, budget: u64) -> Result<OperRow> {
    let all = variants(&t, p, n);
    let mut statuses = Vec::with_capacity(4);
    for v in &all {
        let s = Status::from_result(realizable(v, p, n, budget))?;
        if let Status::Witness(w) = &s {
            assert!(w.verify(v, p), "witness for {v} failed its recheck");
        }
        statuses.push(s);
    }
    let variants_consistent = if statuses.iter().all(Status::is_complete) {
        let first = statuses[0].is_witness_status();
        Some(statuses.iter().all(|s| s.is_witness_status() == first))
    } else {
        None
    };
    let status = statuses.remove(0);
    Ok(OperRow {
        triple: t,
        degree: degree(&t)?,
        status,
        radii: radii_of_triple(&t, p, n)?,
        variants: all[1..].iter().copied().zip(statuses).collect(),
        variants_consistent,
    })
}

impl Status {
    fn is_witness_status(&self) -> bool {
        matches!(self, Status::Witness(_))
    }
}

/// One row per triple of `bstar_enumerate(p, N)`, in the same order.
///
/// Runs on `DORMANT_THREADS` workers when that variable is set. Fails with
/// `RadiiCollision` if two realized triples share radii.
pub fn enumerate_opers(p: u64, n: u32, budget: u64) -> Result<Vec<OperRow>> {
    let triples = bstar_enumerate(p, n)?;
    let work = || triples.par_iter().map(|&t| row_for(t, p, n, budget)).collect::<Result<Vec<_>>>();
    let rows = match thread_count() {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::InvalidParams(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    let realized: Vec<&OperRow> = rows.iter().filter(|r| r.status.is_witness_status()).collect();
    for (i, a) in realized.iter().enumerate() {
        for b in &realized[i + 1..] {
            if a.radii == b.radii {
                return Err(Error::RadiiCollision(a.triple.to_string(), b.triple.to_string()));
            }
        }
    }
    Ok(rows)
}
