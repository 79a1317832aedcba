//! Permutations of `{0, ..., d-1}`; printed 1-based.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm((0..d as u32).collect())
    }

    /// From the image list; panics unless it is a bijection.
    pub fn from_images(images: Vec<u32>) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!(!std::mem::replace(&mut seen[x as usize], true), "not a permutation");
        }
        Perm(images)
    }

    /// From 0-based cycles.
    pub fn from_cycles(d: usize, cycles: &[Vec<u32>]) -> Self {
        let mut images: Vec<u32> = (0..d as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                images[x as usize] = c[(i + 1) % c.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.0.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i as u32)
    }

    /// Nontrivial cycles, each starting at its smallest point, sorted.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cyc.push(x);
                x = self.0[x as usize];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Whether this is one cycle of length `len` fixing every other point.
    pub fn is_single_cycle(&self, len: usize) -> bool {
        let cycles = self.cycles();
        match len {
            1 => cycles.is_empty(),
            _ => cycles.len() == 1 && cycles[0].len() == len,
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// Whether the generated group acts transitively, by breadth-first search.
pub fn is_transitive(d: usize, gens: &[&Perm]) -> bool {
    let mut seen = vec![false; d];
    let mut queue = vec![0u32];
    seen[0] = true;
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_order() {
        let s0 = Perm::from_cycles(4, &[vec![0, 1, 2]]);
        let s1 = Perm::from_cycles(4, &[vec![0, 2, 3]]);
        let prod = s0.compose(&s1);
        assert_eq!(prod, Perm::from_cycles(4, &[vec![1, 2, 3]]));
        assert_eq!(prod.to_string(), "(2 3 4)");
        assert!(prod.is_single_cycle(3));
        assert!(s0.compose(&s0.inverse()).is_identity());
        assert!(is_transitive(4, &[&s0, &s1]));
    }
}
