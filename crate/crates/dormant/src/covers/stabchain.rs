//! Group order by a deterministic Schreier–Sims stabilizer chain.

use std::collections::HashSet;

use crate::covers::perm::Perm;
use crate::error::{Error, Result};

/// A work counter that fails once `limit` is passed.
#[derive(Debug, Clone)]
pub struct Budget {
    pub limit: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::SearchBudgetExceeded { budget: self.limit, explored: self.used });
        }
        Ok(())
    }
}

struct Level {
    point: u32,
    // transversal[β] maps the base point to β
    transversal: Vec<Option<Perm>>,
    orbit: Vec<u32>,
}

/// A base and strong generating set.
pub struct StabChain {
    degree: usize,
    base: Vec<u32>,
    strong: Vec<Perm>,
    levels: Vec<Level>,
}

impl StabChain {
    fn level_gens(&self, i: usize) -> Vec<&Perm> {
        self.strong.iter().filter(|s| self.base[..i].iter().all(|&b| s.apply(b) == b)).collect()
    }

    fn rebuild_levels(&mut self) {
        let levels = (0..self.base.len())
            .map(|i| {
                let point = self.base[i];
                let gens = self.level_gens(i);
                let mut transversal: Vec<Option<Perm>> = vec![None; self.degree];
                transversal[point as usize] = Some(Perm::identity(self.degree));
                let mut orbit = vec![point];
                let mut k = 0;
                while k < orbit.len() {
                    let beta = orbit[k];
                    let u = transversal[beta as usize].clone().unwrap();
                    for g in &gens {
                        let img = g.apply(beta);
                        if transversal[img as usize].is_none() {
                            transversal[img as usize] = Some(g.compose(&u));
                            orbit.push(img);
                        }
                    }
                    k += 1;
                }
                Level { point, transversal, orbit }
            })
            .collect();
        self.levels = levels;
    }

    /// Sifts `g` from level `start`; returns the residue and the level where it stopped.
    fn strip(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for l in start..self.levels.len() {
            let beta = g.apply(self.levels[l].point);
            match &self.levels[l].transversal[beta as usize] {
                None => return (g, l),
                Some(u) => g = u.inverse().compose(&g),
            }
        }
        (g, self.levels.len())
    }

    pub fn new(degree: usize, gens: &[Perm], budget: &mut Budget) -> Result<Self> {
        let mut chain = StabChain { degree, base: Vec::new(), strong: Vec::new(), levels: Vec::new() };
        for g in gens {
            if g.is_identity() || chain.strong.contains(g) {
                continue;
            }
            chain.strong.push(g.clone());
            if chain.base.iter().all(|&b| g.apply(b) == b) {
                chain.base.push(g.first_moved().unwrap());
            }
        }
        chain.rebuild_levels();
        let mut i = chain.base.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let gens: Vec<Perm> = chain.level_gens(lvl).into_iter().cloned().collect();
            let mut seen: HashSet<Perm> = HashSet::new();
            let mut restart = None;
            'scan: for &beta in &chain.levels[lvl].orbit {
                let u = chain.levels[lvl].transversal[beta as usize].clone().unwrap();
                for s in &gens {
                    budget.tick()?;
                    let img = s.apply(beta);
                    let v = chain.levels[lvl].transversal[img as usize].as_ref().unwrap();
                    let schreier = v.inverse().compose(&s.compose(&u));
                    if schreier.is_identity() || !seen.insert(schreier.clone()) {
                        continue;
                    }
                    let (h, j) = chain.strip(schreier, lvl + 1);
                    if !h.is_identity() {
                        if j == chain.base.len() {
                            chain.base.push(h.first_moved().unwrap());
                        }
                        chain.strong.push(h);
                        restart = Some(j);
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(j) => {
                    chain.rebuild_levels();
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        Ok(chain)
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (h, _) = self.strip(g.clone(), 0);
        h.is_identity()
    }
}

/// Order by enumerating every element; only for small groups.
pub fn order_by_closure(degree: usize, gens: &[Perm], cap: usize) -> Option<u128> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let id = Perm::identity(degree);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(seen.len() as u128)
}
