//! Deterministic Schreier–Sims.

use num_bigint::BigUint;
use num_traits::One;

use super::perm::Perm;

struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `transversal[pt]` maps `base` to `pt`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level { base, gens: Vec::new(), transversal, orbit: vec![base] }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Perm::identity(degree));
        self.orbit = vec![self.base];
        let mut k = 0;
        while k < self.orbit.len() {
            let pt = self.orbit[k];
            let u = self.transversal[pt].clone().unwrap();
            for g in &self.gens {
                let img = g.apply(pt);
                if self.transversal[img].is_none() {
                    self.transversal[img] = Some(u.mul(g));
                    self.orbit.push(img);
                }
            }
            k += 1;
        }
    }
}

/// Base and strong generating set of a permutation group.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(gens: &[Perm]) -> Self {
        let degree = gens.first().map_or(0, Perm::degree);
        assert!(gens.iter().all(|g| g.degree() == degree), "generators of mixed degree");
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut chain = StabChain { degree, levels: Vec::new() };
        // every strong generator must move some base point
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.base) == l.base) {
                let b = g.first_moved_point().unwrap();
                chain.levels.push(Level::new(b, degree));
            }
        }
        for g in &gens {
            let depth = chain.fixed_depth(g);
            for l in &mut chain.levels[..=depth] {
                l.gens.push(g.clone());
            }
        }
        for l in &mut chain.levels {
            l.recompute_orbit(degree);
        }
        chain.complete();
        chain
    }

    /// Index of the first base point moved by `g`.
    fn fixed_depth(&self, g: &Perm) -> usize {
        self.levels.iter().position(|l| g.apply(l.base) != l.base).expect("moves a base point")
    }

    /// Sifts `g` from level `start`; returns the residue and the level it stopped at.
    fn sift(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (j, l) in self.levels.iter().enumerate().skip(start) {
            let img = g.apply(l.base);
            match &l.transversal[img] {
                Some(u) => g = g.mul(&u.inverse()),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            match self.find_bad_schreier_generator(lvl) {
                None => i -= 1,
                Some((residue, j)) => {
                    if j == self.levels.len() {
                        let b = residue.first_moved_point().unwrap();
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].recompute_orbit(self.degree);
                    }
                    i = j + 1;
                }
            }
        }
    }

    fn find_bad_schreier_generator(&self, lvl: usize) -> Option<(Perm, usize)> {
        let l = &self.levels[lvl];
        for &pt in &l.orbit {
            let u = l.transversal[pt].as_ref().unwrap();
            for s in &l.gens {
                let img = s.apply(pt);
                let h = u.mul(s).mul(&l.transversal[img].as_ref().unwrap().inverse());
                if h.is_identity() {
                    continue;
                }
                let (res, j) = self.sift(h, lvl + 1);
                if !res.is_identity() {
                    return Some((res, j));
                }
            }
        }
        None
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, _) = self.sift(g.clone(), 0);
        res.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }
}

/// Exact order of the group generated by `perms`.
pub fn perm_group_order(perms: &[Perm]) -> BigUint {
    StabChain::new(perms).order()
}
