//! Deterministic Schreier–Sims stabilizer chains.
//!
//! Base points are chosen as the smallest point moved by the element that
//! forces a new level. Transversals are stored explicitly together with
//! their inverses.

use crate::perm::Permutation;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    /// Orbit of `base` in discovery order.
    orbit: Vec<usize>,
    /// `reps[x] = u` with `base^u = x`, for `x` in the orbit.
    reps: Vec<Option<Permutation>>,
    inv_reps: Vec<Option<Permutation>>,
    verified: bool,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            reps: vec![None; degree],
            inv_reps: vec![None; degree],
            verified: false,
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.reps = vec![None; degree];
        self.inv_reps = vec![None; degree];
        let id = Permutation::identity(degree);
        self.reps[self.base] = Some(id.clone());
        self.inv_reps[self.base] = Some(id);
        self.orbit.push(self.base);
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let y = s.apply(x);
                if self.reps[y].is_none() {
                    let u = self.reps[x].as_ref().expect("orbit point has rep").mul(s);
                    self.inv_reps[y] = Some(u.inverse());
                    self.reps[y] = Some(u);
                    self.orbit.push(y);
                }
            }
        }
    }
}

/// A base and strong generating set with transversals.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            if g.is_identity() {
                continue;
            }
            let (residue, depth) = chain.sift_from(g.clone(), 0);
            if !residue.is_identity() {
                chain.insert_strong(residue, depth);
            }
        }
        chain.complete();
        chain
    }

    /// Adds `h` as a strong generator at levels `0..=depth`, creating a new
    /// level if `depth` is past the current end.
    fn insert_strong(&mut self, h: Permutation, depth: usize) {
        if depth == self.levels.len() {
            let base = h.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(base, self.degree));
        }
        for lvl in 0..=depth {
            self.levels[lvl].gens.push(h.clone());
            self.levels[lvl].verified = false;
            self.levels[lvl].rebuild_orbit(self.degree);
        }
    }

    fn complete(&mut self) {
        'outer: loop {
            let Some(i) = (0..self.levels.len()).rev().find(|&i| !self.levels[i].verified) else {
                return;
            };
            let orbit = self.levels[i].orbit.clone();
            let gens = self.levels[i].gens.clone();
            for &x in &orbit {
                for s in &gens {
                    let y = s.apply(x);
                    let ux = self.levels[i].reps[x].as_ref().unwrap();
                    let uy_inv = self.levels[i].inv_reps[y].as_ref().unwrap();
                    let h = ux.mul(s).mul(uy_inv);
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, depth) = self.sift_from(h, i + 1);
                    if !residue.is_identity() {
                        // The residue fixes base points 0..depth.
                        self.insert_strong_below(residue, i + 1, depth);
                        continue 'outer;
                    }
                }
            }
            self.levels[i].verified = true;
        }
    }

    /// Like `insert_strong` but only touches levels `from..=depth`; the
    /// residue also lies in the upper levels' groups already.
    fn insert_strong_below(&mut self, h: Permutation, from: usize, depth: usize) {
        if depth == self.levels.len() {
            let base = h.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(base, self.degree));
        }
        for lvl in from..=depth {
            self.levels[lvl].gens.push(h.clone());
            self.levels[lvl].verified = false;
            self.levels[lvl].rebuild_orbit(self.degree);
        }
    }

    /// Sifts `g` starting at level `start`. Returns the residue and the index
    /// of the level where sifting stopped (`levels.len()` if it passed all).
    fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let x = g.apply(level.base);
            match &level.inv_reps[x] {
                Some(inv) => g = g.mul(inv),
                None => return (g, l),
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift_from(g.clone(), 0);
        residue.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels
            .first()
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    /// Orbit lengths along the chain.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Calls `f` on every group element; elements are products of
    /// transversal representatives, deepest level first.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn rec(
            levels: &[Level],
            depth: usize,
            acc: &Permutation,
            f: &mut dyn FnMut(&Permutation),
        ) {
            if depth == 0 {
                f(acc);
                return;
            }
            let level = &levels[depth - 1];
            for &x in &level.orbit {
                let u = level.reps[x].as_ref().unwrap();
                rec(levels, depth - 1, &acc.mul(u), f);
            }
        }
        let id = Permutation::identity(self.degree);
        rec(&self.levels, self.levels.len(), &id, &mut f);
    }

    /// Uniformly random element from a sequence of orbit indices.
    pub fn element_from_choices(&self, mut choose: impl FnMut(usize) -> usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let idx = choose(level.orbit.len());
            let x = level.orbit[idx];
            acc = acc.mul(level.reps[x].as_ref().unwrap());
        }
        acc
    }

    /// Sifts `g` through the levels whose base point is `< limit`, stopping at
    /// the first level whose base is `>= limit`. Used to read off images
    /// under homomorphisms encoded as graph subgroups.
    pub(crate) fn sift_prefix(&self, g: &Permutation, limit: usize) -> Option<Permutation> {
        let mut g = g.clone();
        for level in &self.levels {
            if level.base >= limit {
                break;
            }
            let x = g.apply(level.base);
            g = g.mul(level.inv_reps[x].as_ref()?);
        }
        Some(g)
    }
}
