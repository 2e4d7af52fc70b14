//! Orbits under a right action, with transversal words and Schreier
//! stabilizers.

use alloc::vec::Vec;
use core::hash::Hash;

use crate::error::{CapKind, Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::util::{new_map, FxHashMap};

/// An orbit `seed^G` stored as points plus a breadth-first spanning tree.
/// `transversal(k)` maps the seed to `points[k]`.
pub struct Orbit<T> {
    points: Vec<T>,
    index: FxHashMap<T, u32>,
    /// (parent index, generator index); the root points to itself.
    parent: Vec<(u32, u32)>,
    gens: Vec<Permutation>,
    degree: usize,
}

impl<T: Clone + Eq + Hash> Orbit<T> {
    /// Breadth-first orbit of `seed` under `gens`. Fails once more than `cap`
    /// points are found.
    pub fn compute<A>(degree: usize, gens: &[Permutation], seed: T, act: A, cap: usize) -> Result<Self>
    where
        A: Fn(&T, &Permutation) -> T,
    {
        Self::compute_until(degree, gens, seed, act, cap, |_| false).map(|(o, _)| o)
    }

    /// As `compute`, stopping early when `stop` accepts a new point; returns
    /// that point's index.
    pub fn compute_until<A, S>(
        degree: usize,
        gens: &[Permutation],
        seed: T,
        act: A,
        cap: usize,
        mut stop: S,
    ) -> Result<(Self, Option<usize>)>
    where
        A: Fn(&T, &Permutation) -> T,
        S: FnMut(&T) -> bool,
    {
        let mut index = new_map();
        index.insert(seed.clone(), 0u32);
        let mut orbit = Orbit {
            points: alloc::vec![seed],
            index,
            parent: alloc::vec![(0, u32::MAX)],
            gens: gens.to_vec(),
            degree,
        };
        if stop(&orbit.points[0]) {
            return Ok((orbit, Some(0)));
        }
        let mut k = 0;
        while k < orbit.points.len() {
            for (gi, g) in gens.iter().enumerate() {
                let q = act(&orbit.points[k], g);
                if orbit.index.contains_key(&q) {
                    continue;
                }
                if orbit.points.len() >= cap {
                    return Err(Error::CapExceeded {
                        kind: CapKind::SubgroupOrbit,
                        limit: cap as u128,
                    });
                }
                let idx = orbit.points.len();
                orbit.index.insert(q.clone(), idx as u32);
                orbit.points.push(q);
                orbit.parent.push((k as u32, gi as u32));
                if stop(&orbit.points[idx]) {
                    return Ok((orbit, Some(idx)));
                }
            }
            k += 1;
        }
        Ok((orbit, None))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn position(&self, p: &T) -> Option<usize> {
        self.index.get(p).map(|&k| k as usize)
    }

    /// Element mapping the seed to `points[k]`, rebuilt from its word.
    pub fn transversal(&self, mut k: usize) -> Permutation {
        let mut word = Vec::new();
        while k != 0 {
            let (parent, gi) = self.parent[k];
            word.push(gi);
            k = parent as usize;
        }
        let mut t = Permutation::identity(self.degree);
        for &gi in word.iter().rev() {
            t.mul_assign(&self.gens[gi as usize]);
        }
        t
    }

    /// Stabilizer of the seed inside `group` (whose generators produced this
    /// orbit), via Schreier generators. Stops once
    /// `|stabilizer| · |orbit| = |group|`.
    pub fn stabilizer<A>(&self, group: &PermGroup, act: A) -> PermGroup
    where
        A: Fn(&T, &Permutation) -> T,
    {
        let target = group.order() / self.len() as u128;
        let mut stab = PermGroup::trivial(self.degree);
        if target == 1 {
            return stab;
        }
        let mut trans: Vec<Option<Permutation>> = alloc::vec![None; self.len()];
        trans[0] = Some(Permutation::identity(self.degree));
        for k in 0..self.len() {
            let tk = match &trans[k] {
                Some(t) => t.clone(),
                None => {
                    let t = self.transversal(k);
                    trans[k] = Some(t.clone());
                    t
                }
            };
            for g in &self.gens {
                let q = act(&self.points[k], g);
                let m = self.index[&q] as usize;
                let tm_inv = match &trans[m] {
                    Some(t) => t.inverse(),
                    None => {
                        let t = self.transversal(m);
                        let inv = t.inverse();
                        trans[m] = Some(t);
                        inv
                    }
                };
                let mut sg = tk.mul(g);
                sg.mul_assign(&tm_inv);
                if !stab.contains(&sg) {
                    stab = stab.extended(core::slice::from_ref(&sg));
                    if stab.order() == target {
                        return stab;
                    }
                }
            }
        }
        debug_assert_eq!(stab.order(), target);
        stab
    }
}

/// Conjugation orbit of an element under the generators of `group`.
pub fn element_orbit(group: &PermGroup, x: &Permutation, cap: usize) -> Result<Orbit<Permutation>> {
    Orbit::compute(group.degree(), group.generators(), x.clone(), |y, g| y.conj(g), cap).map_err(|e| {
        match e {
            Error::CapExceeded { limit, .. } => Error::CapExceeded { kind: CapKind::ClassElements, limit },
            other => other,
        }
    })
}

/// Conjugation orbit of a subgroup under the generators of `group`.
pub fn subgroup_orbit(group: &PermGroup, h: &PermGroup, cap: usize) -> Result<Orbit<PermGroup>> {
    Orbit::compute(group.degree(), group.generators(), h.clone(), |k, g| k.conjugate(g), cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn point_orbit_and_stabilizer() {
        let s5 = named::symmetric(5);
        let o = Orbit::compute(5, s5.generators(), 2u32, |p, g| g.apply(*p), 100).unwrap();
        assert_eq!(o.len(), 5);
        for k in 0..o.len() {
            assert_eq!(o.transversal(k).apply(2), o.points()[k]);
        }
        let st = o.stabilizer(&s5, |p, g| g.apply(*p));
        assert_eq!(st.order(), 24);
        assert!(st.generators().iter().all(|g| g.apply(2) == 2));
    }

    #[test]
    fn cap_is_enforced() {
        let s5 = named::symmetric(5);
        let x = Permutation::parse("(1,2,3,4,5)", 5).unwrap();
        let e = element_orbit(&s5, &x, 10).err().unwrap();
        assert!(matches!(e, Error::CapExceeded { kind: CapKind::ClassElements, limit: 10 }));
    }
}
