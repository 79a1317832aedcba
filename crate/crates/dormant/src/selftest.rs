//! Batch checks over the standard parameter grid, shared by the `selftest`
//! subcommand and the acceptance target.

use std::time::{Duration, Instant};

use rand::Rng;

use crate::combinatorics::LevelParams;
use crate::covers::{self, RamTriple, DEFAULT_BUDGET};
use crate::cyclic::{find_cyclic, wronskian_matrix, wronskian_rank};
use crate::descent::{descend_full, unit_counit_checks};
use crate::duality::{double_dual_witness, dualize_pinned};
use crate::error::Result;
use crate::exponent::{
    exponent, exponent_duality, has_nonlog_origin, is_cyclic_by_exponent, radius_from_exponent_pair, residue_length,
    Exponent, Radius,
};
use crate::linalg::Mat;
use crate::module::{DiffModule, Morphism};
use crate::random::{field_gauge, lattice_gauge, pinned_log, rng, scrambled_nablas, TestRng};
use crate::ratfunc::RatFunc;

pub const GRID: [(u32, u32); 6] = [(2, 0), (3, 0), (5, 0), (2, 1), (3, 1), (2, 2)];

/// Sample counts; `Full` is the acceptance configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    Small,
    Full,
}

impl Grid {
    fn gauges(self) -> usize {
        match self {
            Grid::Small => 2,
            Grid::Full => 20,
        }
    }

    fn cases(self) -> usize {
        match self {
            Grid::Small => 3,
            Grid::Full => 25,
        }
    }

    fn pinned(self) -> usize {
        match self {
            Grid::Small => 2,
            Grid::Full => 10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Every failing check is a variant disagreement that prime-to-p
    /// witnesses cannot settle (see the README).
    pub known_gap: bool,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl Outcome {
    /// Passed and, when a limit applies, within it.
    pub fn ok(&self) -> bool {
        self.passed && self.limit.map_or(true, |l| self.elapsed <= l)
    }
}

fn lp(p: u32, m: u32) -> LevelParams {
    LevelParams::new(p, m).expect("grid parameters are valid")
}

// Counts failures with a short description of the first few.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    gaps: usize,
}

struct Verdict {
    passed: bool,
    detail: String,
    known_gap: bool,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn check_result(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", what()));
            }
        }
    }

    // A failure of the kind recorded as unattainable.
    fn gap(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.check(ok, what);
        self.gaps += !ok as usize;
    }

    fn finish(self, extra: String) -> Verdict {
        let mut detail = format!("{} checks, {} failures", self.checks, self.failures.len());
        if !extra.is_empty() {
            detail.push_str("; ");
            detail.push_str(&extra);
        }
        if let Some(first) = self.failures.first() {
            detail.push_str("; first: ");
            detail.push_str(first);
        }
        let known_gap = !self.failures.is_empty() && self.gaps == self.failures.len();
        Verdict { passed: self.failures.is_empty(), detail, known_gap }
    }
}

fn timed(
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    body: impl FnOnce() -> Verdict,
) -> Outcome {
    let start = Instant::now();
    let Verdict { passed, detail, known_gap } = body();
    Outcome { id, name, passed, detail, known_gap, elapsed: start.elapsed(), limit }
}

// Unimodular polynomial gauges keep entries polynomial, which keeps validation cheap.
// Unimodular polynomial gauges keep entries polynomial, which keeps validation cheap.
fn gauged(r: &mut TestRng, m: &DiffModule) -> Result<DiffModule> {
    m.gauge(&lattice_gauge(r, m.p(), m.rank(), 1))
}

fn relation_soundness(grid: Grid) -> Verdict {
    let mut r = rng(101);
    let mut tally = Tally::default();
    for (p, m) in GRID {
        let params = lp(p, m);
        let big = params.period() as i64;
        let mut zoo: Vec<(String, DiffModule)> = Vec::new();
        for log in [false, true] {
            zoo.push((format!("trivial3 log={log}"), DiffModule::trivial(params, 3, log)));
            let pm = DiffModule::p_module(params, log);
            zoo.push((format!("dual P log={log}"), pm.dual()));
            zoo.push((format!("P log={log}"), pm));
        }
        for a in 0..big {
            zoo.push((format!("nabla_{a}"), DiffModule::nabla(params, a)));
        }
        for a in 0..big {
            for b in 0..big {
                let t = DiffModule::nabla(params, a).tensor(&DiffModule::nabla(params, b));
                let iso = t.and_then(|t| {
                    let target = DiffModule::nabla(params, a + b);
                    let ok = t.validate().passed()
                        && Morphism::new(t, target, Mat::identity(p, 1))?.is_isomorphism();
                    Ok(ok)
                });
                tally.check_result(iso, || format!("({p},{m}) nabla_{a} ⊗ nabla_{b} ≅ nabla_{}", a + b));
            }
        }
        for (name, module) in &zoo {
            tally.check(module.validate().passed(), || format!("({p},{m}) {name}"));
            for _ in 0..grid.gauges() {
                let ok = gauged(&mut r, module).map(|g| g.validate().passed());
                tally.check_result(ok, || format!("({p},{m}) gauged {name}"));
            }
        }
        // Random gauges of tensor products.
        for _ in 0..grid.gauges() {
            let (a, b) = (r.gen_range(0..big), r.gen_range(0..big));
            let ok = DiffModule::nabla(params, a)
                .tensor(&DiffModule::nabla(params, b))
                .and_then(|t| gauged(&mut r, &t))
                .map(|g| g.validate().passed());
            tally.check_result(ok, || format!("({p},{m}) gauged nabla_{a} ⊗ nabla_{b}"));
        }
    }
    tally.finish(String::new())
}

fn direct_sum_of_nablas(params: LevelParams, ds: &[i64]) -> DiffModule {
    ds[1..].iter().fold(DiffModule::nabla(params, ds[0]), |acc, &d| {
        acc.direct_sum(&DiffModule::nabla(params, d)).expect("equal levels")
    })
}

/// Whether some constant vector has an invertible wronskian at `t = 0`.
fn brute_force_lattice_cyclic(module: &DiffModule) -> bool {
    let p = module.p();
    let n = module.rank();
    let total = (p as usize).pow(n as u32);
    (1..total).any(|code| {
        let mut c = code;
        let v: Vec<RatFunc> = (0..n)
            .map(|_| {
                let digit = (c % p as usize) as u32;
                c /= p as usize;
                RatFunc::constant(p, digit)
            })
            .collect();
        wronskian_matrix(module, &v, n).at_zero().is_some_and(|w| w.rank() == n)
    })
}

fn cyclic_vectors(grid: Grid) -> Verdict {
    let mut r = rng(202);
    let mut tally = Tally::default();
    let (mut log_cases, mut distinct_not_cyclic) = (0, 0);
    for (p, m) in [(3, 0), (2, 1)] {
        let params = lp(p, m);
        let big = params.period();
        for n in 1..=big {
            for k in 0..grid.cases() {
                let base = if k % 2 == 0 {
                    if n == big {
                        DiffModule::p_module(params, false)
                    } else {
                        DiffModule::trivial(params, n, false)
                    }
                } else {
                    let ds: Vec<i64> = (0..n).map(|_| r.gen_range(0..big as i64)).collect();
                    match direct_sum_of_nablas(params, &ds).eta_inverse_field() {
                        Ok(b) => b,
                        Err(e) => {
                            tally.check(false, || format!("({p},{m}) eta inverse: {e}"));
                            continue;
                        }
                    }
                };
                let ok = base.gauge(&field_gauge(&mut r, p, n, 1)).and_then(|module| {
                    let v = find_cyclic(&module)?;
                    Ok(module.is_dormant() && wronskian_rank(&module, &v) == n)
                });
                tally.check_result(ok, || format!("({p},{m}) find_cyclic rank {n}"));
            }
            for _ in 0..grid.cases() {
                let ds: Vec<i64> = (0..n).map(|_| r.gen_range(0..big as i64)).collect();
                let (module, _) = scrambled_nablas(&mut r, params, &ds, 1);
                let by_exponent = is_cyclic_by_exponent(&module);
                let brute = brute_force_lattice_cyclic(&module);
                log_cases += 1;
                let distinct = Exponent::new(params, ds.clone()).is_set();
                if distinct && !brute {
                    distinct_not_cyclic += 1;
                }
                tally.check_result(by_exponent.map(|b| b == brute), || format!("({p},{m}) log exponents {ds:?}"));
            }
        }
    }
    tally.finish(format!("{log_cases} log cases, {distinct_not_cyclic} with distinct exponents but no cyclic vector"))
}

fn exponents(grid: Grid) -> Verdict {
    let mut r = rng(303);
    let mut tally = Tally::default();
    for (p, m) in GRID {
        let params = lp(p, m);
        let big = params.period() as i64;
        let all: Vec<u64> = (0..big as u64).collect();
        let e = exponent(&DiffModule::p_module(params, true));
        tally.check_result(e.map(|e| e.entries() == &all[..]), || format!("({p},{m}) exponent of P"));
        for a in 0..big {
            let len = residue_length(&DiffModule::nabla(params, a));
            tally.check_result(len.map(|l| l == a as u64), || format!("({p},{m}) residue of nabla_{a}"));
        }
    }
    let pick = |r: &mut TestRng| {
        let (p, m) = GRID[r.gen_range(0..GRID.len())];
        lp(p, m)
    };
    for _ in 0..grid.cases() {
        let params = pick(&mut r);
        let big = params.period() as i64;
        let n = r.gen_range(1..=3);
        let ds: Vec<i64> = (0..n).map(|_| r.gen_range(0..big)).collect();
        let a = r.gen_range(0..big);
        let (module, _) = scrambled_nablas(&mut r, params, &ds, 1);
        let shifted = DiffModule::nabla(params, a).tensor(&module).and_then(|t| exponent(&t));
        let want = Exponent::new(params, ds.clone()).shift(a);
        tally.check_result(shifted.map(|e| e == want), || format!("{params:?} shift of {ds:?} by {a}"));
    }
    let mut from_nonlog = 0;
    for k in 0..grid.cases() {
        let params = pick(&mut r);
        let p = params.p;
        let big = params.period() as i64;
        let n = r.gen_range(1..=3);
        let module = if k % 2 == 0 {
            DiffModule::trivial(params, n, false).gauge(&lattice_gauge(&mut r, p, n, 1)).and_then(|g| g.eta())
        } else {
            let ds: Vec<i64> = (0..n).map(|_| if r.gen_bool(0.3) { 0 } else { r.gen_range(0..big) }).collect();
            Ok(scrambled_nablas(&mut r, params, &ds, 1).0)
        };
        let verdict = module.and_then(|module| {
            let a = residue_length(&module)? == 0;
            let b = exponent(&module)?.entries().iter().all(|&d| d == 0);
            let c = has_nonlog_origin(&module)?;
            from_nonlog += c as usize;
            Ok(a == b && b == c)
        });
        tally.check_result(verdict, || format!("{params:?} residue/exponent/origin equivalence"));
    }
    tally.finish(format!("{from_nonlog} of {} equivalence cases come from non-log modules", grid.cases()))
}

fn duality(grid: Grid) -> Verdict {
    let mut r = rng(404);
    let mut tally = Tally::default();
    for (p, m) in [(2, 1), (3, 0)] {
        let params = lp(p, m);
        let big = params.period();
        for n in 1..big {
            for _ in 0..grid.pinned() {
                let pinned = pinned_log(&mut r, params, n);
                let ok = dualize_pinned(&pinned).and_then(|dual| {
                    let want = exponent_duality(&exponent(&pinned.module)?)?;
                    let xi = double_dual_witness(&pinned)?;
                    Ok(dual.module.rank() == big - n
                        && dual.module.validate().passed()
                        && exponent(&dual.module)? == want
                        && xi.is_isomorphism())
                });
                tally.check_result(ok, || format!("({p},{m}) rank {n}"));
            }
        }
    }
    tally.finish(String::new())
}

fn descent(grid: Grid) -> Verdict {
    let mut r = rng(505);
    let mut tally = Tally::default();
    let reps = if grid == Grid::Full { 2 } else { 1 };
    for (p, m) in GRID {
        let params = lp(p, m);
        for n in 1..=3 {
            for _ in 0..reps {
                let space = DiffModule::pullback_of_space(params, n);
                let ok = space.gauge(&field_gauge(&mut r, p, n, 1)).and_then(|module| {
                    let full = descend_full(&module)?;
                    let report = unit_counit_checks(&module)?;
                    Ok(full.rank == n && module.gauge(&full.basis)? == space && report.passed())
                });
                tally.check_result(ok, || format!("({p},{m}) rank {n}"));
            }
        }
    }
    tally.finish(String::new())
}

fn radii_injective(rows: &[covers::OperRow]) -> bool {
    let radii: Vec<_> = rows.iter().filter(|r| r.status.label() == "witness").map(|r| r.radii).collect();
    radii.iter().enumerate().all(|(i, a)| radii[i + 1..].iter().all(|b| a != b))
}

fn coverings() -> Verdict {
    let mut tally = Tally::default();
    let mut notes = Vec::new();
    for (p, want) in [(5, 5), (3, 1)] {
        let got = covers::bstar_enumerate(p, 1).map(|b| b.len());
        tally.check_result(got.map(|g| g == want), || format!("|B_1| at p={p}"));
    }
    for p in [3, 5, 7] {
        let rows = covers::enumerate_opers(p, 1, DEFAULT_BUDGET);
        tally.check_result(
            rows.map(|rows| rows.iter().all(|r| r.status.label() == "witness") && radii_injective(&rows)),
            || format!("N=1 realizability and injectivity at p={p}"),
        );
    }
    match covers::enumerate_opers(3, 2, DEFAULT_BUDGET) {
        Ok(rows) => {
            tally.check(radii_injective(&rows), || "(3,2) radii injectivity".into());
            let completed = rows.iter().filter(|r| r.variants_consistent.is_some()).count();
            let witnessed = rows.iter().filter(|r| r.status.label() == "witness").count();
            let consistent = rows.iter().filter(|r| r.variants_consistent == Some(true)).count();
            for row in &rows {
                tally.gap(row.variants_consistent != Some(false), || {
                    let bad: Vec<String> = row
                        .variants
                        .iter()
                        .filter(|(_, s)| s.label() != row.status.label())
                        .map(|(t, s)| format!("{t} {}", s.label()))
                        .collect();
                    format!("(3,2) {} {} but {}", row.triple, row.status.label(), bad.join(", "))
                });
            }
            notes.push(format!(
                "(3,2): {completed} of {} triples completed, {witnessed} with a witness, {consistent} variant-consistent",
                rows.len()
            ));
        }
        Err(e) => tally.check(false, || format!("(3,2) enumeration: {e}")),
    }
    tally.finish(notes.join("; "))
}

fn radius_law() -> Verdict {
    let mut tally = Tally::default();
    for p in [3u32, 5] {
        for n in 1..=2 {
            let params = lp(p, n - 1);
            let big = params.period() as i64;
            for lambda in (1..big).step_by(2) {
                let ok = covers::exponent_pullback(&Exponent::new(params, [0, 1]), lambda).and_then(|e| {
                    let radius = radius_from_exponent_pair(&e)?;
                    let h = (0..big).find(|h| 2 * h % big == lambda).expect("2 is invertible");
                    let via_triple = covers::radii_of_triple(&RamTriple::new(lambda as u64, 1, 1), p as u64, n)?[0];
                    Ok(e == Exponent::new(params, [0, lambda])
                        && radius == Radius::new(big as u64, h)
                        && via_triple == radius)
                });
                tally.check_result(ok, || format!("p={p} N={n} λ={lambda}"));
            }
        }
    }
    tally.finish(String::new())
}

/// Runs every criterion in order, reporting each as it finishes.
pub fn run_with(grid: Grid, mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
    let secs = |s| Some(Duration::from_secs(s));
    let full = grid == Grid::Full;
    let mut out = Vec::new();
    let mut push = |o: Outcome| {
        report(&o);
        out.push(o);
    };
    push(timed(1, "relation soundness", if full { secs(60) } else { None }, || relation_soundness(grid)));
    push(timed(2, "cyclic vectors", None, || cyclic_vectors(grid)));
    push(timed(3, "exponents", None, || exponents(grid)));
    push(timed(4, "duality", if full { secs(120) } else { None }, || duality(grid)));
    push(timed(5, "descent", None, || descent(grid)));
    push(timed(6, "coverings", if full { secs(600) } else { None }, coverings));
    push(timed(7, "radius law", None, radius_law));
    out
}

pub fn run(grid: Grid) -> Vec<Outcome> {
    run_with(grid, |_| {})
}
