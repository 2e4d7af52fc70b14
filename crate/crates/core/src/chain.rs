//! Stabilizer chain with base `0, 1, .., n-1`.
//!
//! Level `l` holds the orbit of point `l` under the pointwise stabilizer of
//! `0..l`, so nontrivial base points are always the smallest point moved by
//! the corresponding stabilizer. That makes greedy lex-least coset
//! representatives available, which the subgroup keys and coset actions use.

use alloc::vec::Vec;

use crate::perm::Permutation;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub orbit: Vec<u32>,
    /// point -> index into `orbit`; empty while the orbit is trivial.
    pos: Vec<u32>,
    /// `reps[k]` maps the level point to `orbit[k]`.
    pub reps: Vec<Permutation>,
    pub inv: Vec<Permutation>,
    gens: Vec<u32>,
    checked: Vec<u32>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Self {
        Level {
            orbit: alloc::vec![point],
            pos: Vec::new(),
            reps: alloc::vec![Permutation::identity(degree)],
            inv: alloc::vec![Permutation::identity(degree)],
            gens: Vec::new(),
            checked: alloc::vec![0],
        }
    }

    #[inline]
    pub fn index_of(&self, p: u32) -> Option<usize> {
        if self.pos.is_empty() {
            if p == self.orbit[0] {
                Some(0)
            } else {
                None
            }
        } else {
            let k = self.pos[p as usize];
            if k == NONE {
                None
            } else {
                Some(k as usize)
            }
        }
    }

    #[inline]
    pub fn is_trivial(&self) -> bool {
        self.orbit.len() == 1
    }

    fn push_point(&mut self, p: u32, rep: Permutation, degree: usize) {
        if self.pos.is_empty() {
            self.pos = alloc::vec![NONE; degree];
            self.pos[self.orbit[0] as usize] = 0;
        }
        self.pos[p as usize] = self.orbit.len() as u32;
        self.orbit.push(p);
        self.inv.push(rep.inverse());
        self.reps.push(rep);
        self.checked.push(0);
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    strong: Vec<Permutation>,
    pub levels: Vec<Level>,
}

impl StabChain {
    pub fn trivial(degree: usize) -> Self {
        StabChain {
            degree,
            strong: Vec::new(),
            levels: (0..degree as u32).map(|p| Level::new(p, degree)).collect(),
        }
    }

    /// Deterministic Schreier–Sims. When `target` is the known group order,
    /// construction stops as soon as the basic orbits account for it.
    pub fn build(degree: usize, gens: &[Permutation], target: Option<u128>) -> Self {
        let mut chain = StabChain::trivial(degree);
        chain.extend(gens, target);
        chain
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Adds generators and completes the chain.
    pub fn extend(&mut self, gens: &[Permutation], target: Option<u128>) {
        let mut added = false;
        for g in gens {
            debug_assert_eq!(g.degree(), self.degree);
            if self.contains(g) {
                continue;
            }
            let f = g.first_moved().expect("non-identity") as usize;
            self.add_strong(g.clone(), 0, f);
            added = true;
            if target == Some(self.order()) {
                return;
            }
        }
        if added {
            self.run(target);
        }
    }

    fn add_strong(&mut self, h: Permutation, from: usize, to: usize) {
        let idx = self.strong.len() as u32;
        self.strong.push(h);
        for l in from..=to {
            self.levels[l].gens.push(idx);
            self.extend_orbit(l, idx);
        }
    }

    fn extend_orbit(&mut self, l: usize, new_gen: u32) {
        let degree = self.degree;
        let strong = &self.strong;
        let level = &mut self.levels[l];
        let s = &strong[new_gen as usize];
        let old_len = level.orbit.len();
        for k in 0..old_len {
            let q = s.apply(level.orbit[k]);
            if level.index_of(q).is_none() {
                let rep = level.reps[k].mul(s);
                level.push_point(q, rep, degree);
            }
        }
        let mut k = old_len;
        while k < level.orbit.len() {
            for gi in 0..level.gens.len() {
                let s = &strong[level.gens[gi] as usize];
                let q = s.apply(level.orbit[k]);
                if level.index_of(q).is_none() {
                    let rep = level.reps[k].mul(s);
                    level.push_point(q, rep, degree);
                }
            }
            k += 1;
        }
    }

    fn run(&mut self, target: Option<u128>) {
        if self.degree == 0 {
            return;
        }
        let n = self.degree;
        let mut i = n as isize - 1;
        'outer: while i >= 0 {
            let l = i as usize;
            let mut k = 0;
            while k < self.levels[l].orbit.len() {
                while (self.levels[l].checked[k] as usize) < self.levels[l].gens.len() {
                    let level = &mut self.levels[l];
                    let m = level.checked[k] as usize;
                    level.checked[k] += 1;
                    let s = &self.strong[level.gens[m] as usize];
                    let img = s.apply(level.orbit[k]);
                    let kk = level.index_of(img).expect("orbit closed");
                    let mut sg = level.reps[k].mul(s);
                    sg.mul_assign(&level.inv[kk]);
                    if sg.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift_from(sg, l + 1);
                    if j < n {
                        self.add_strong(h, l + 1, j);
                        if target == Some(self.order()) {
                            return;
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
                k += 1;
            }
            i -= 1;
        }
    }

    /// Strips `h` through levels `from..`; returns the residue and the level
    /// where it failed (`degree` on success, in which case it is the identity).
    pub fn sift_from(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.degree {
            let b = h.apply(l as u32);
            if b == l as u32 {
                continue;
            }
            match self.levels[l].index_of(b) {
                Some(k) => h.mul_assign(&self.levels[l].inv[k]),
                None => return (h, l),
            }
        }
        (h, self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let mut h = g.clone();
        for l in 0..self.degree {
            let b = h.apply(l as u32);
            if b == l as u32 {
                continue;
            }
            match self.levels[l].index_of(b) {
                Some(k) => h.mul_assign(&self.levels[l].inv[k]),
                None => return false,
            }
        }
        true
    }

    /// Transversal indices of `g` per nontrivial level, deepest last.
    pub fn sift_indices(&self, g: &Permutation) -> Option<Vec<u32>> {
        let mut h = g.clone();
        let mut out = Vec::new();
        for l in 0..self.degree {
            let level = &self.levels[l];
            let b = h.apply(l as u32);
            let k = level.index_of(b)?;
            if !level.is_trivial() {
                out.push(k as u32);
            }
            if k != 0 {
                h.mul_assign(&level.inv[k]);
            }
        }
        Some(out)
    }

    pub fn nontrivial_levels(&self) -> impl Iterator<Item = (usize, &Level)> {
        self.levels.iter().enumerate().filter(|(_, l)| !l.is_trivial())
    }

    /// Lex-least element of the right coset `G^(from) · t`, where `G^(from)`
    /// fixes `0..from` pointwise.
    pub fn lexmin_coset(&self, t: &Permutation, from: usize) -> Permutation {
        let mut cur = t.clone();
        for level in &self.levels[from.min(self.degree)..] {
            if level.is_trivial() {
                continue;
            }
            let mut best = 0;
            let mut best_val = cur.apply(level.orbit[0]);
            for (k, &p) in level.orbit.iter().enumerate().skip(1) {
                let v = cur.apply(p);
                if v < best_val {
                    best_val = v;
                    best = k;
                }
            }
            if best != 0 {
                cur = level.reps[best].mul(&cur);
            }
        }
        cur
    }
}
