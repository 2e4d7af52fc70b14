//! Finitely generated permutation groups.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use once_cell::race::OnceBox;
use rand::Rng;
use rustc_hash::FxHasher;

use crate::chain::StabChain;
use crate::conj::ConjClassTable;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Dedup key of a subgroup: its order plus a hash of a canonical strong
/// generating set (lex-least coset representatives along the canonical
/// stabilizer chain). Equal subgroups have equal keys; equal keys are
/// confirmed by membership before two subgroups are treated as equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupKey {
    pub order: u128,
    pub fingerprint: u64,
}

struct Inner {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabChain,
    order: u128,
    key: OnceBox<SubgroupKey>,
    classes: OnceBox<ConjClassTable>,
}

/// A permutation group on `degree` points. Cloning is cheap; the stabilizer
/// chain and cached data are shared.
#[derive(Clone)]
pub struct PermGroup(Arc<Inner>);

impl PermGroup {
    fn from_parts(degree: usize, gens: Vec<Permutation>, chain: StabChain) -> Self {
        let order = chain.order();
        PermGroup(Arc::new(Inner {
            degree,
            gens,
            chain,
            order,
            key: OnceBox::new(),
            classes: OnceBox::new(),
        }))
    }

    /// Builds the group generated by `gens` (Schreier–Sims).
    pub fn new(degree: usize, gens: &[Permutation]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(Self::generated(degree, gens))
    }

    pub(crate) fn generated(degree: usize, gens: &[Permutation]) -> Self {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let chain = StabChain::build(degree, &gens, None);
        Self::from_parts(degree, gens, chain)
    }

    /// Builds a group whose order is already known, stopping Schreier–Sims early.
    pub(crate) fn with_order(degree: usize, gens: Vec<Permutation>, order: u128) -> Self {
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let chain = StabChain::build(degree, &gens, Some(order));
        debug_assert_eq!(chain.order(), order);
        Self::from_parts(degree, gens, chain)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree, Vec::new(), StabChain::trivial(degree))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn order(&self) -> u128 {
        self.0.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.0.gens
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.0.chain.strong_generators()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.order == 1
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.0.degree)
    }

    /// Membership by sifting. Elements of another degree are never members.
    pub fn contains(&self, g: &Permutation) -> bool {
        self.0.chain.contains(g)
    }

    /// Checked membership test.
    pub fn membership(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree() {
            return Err(Error::DegreeMismatch(self.degree(), g.degree()));
        }
        Ok(self.contains(g))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree()
            && other.order() % self.order() == 0
            && self.generators().iter().all(|g| other.contains(g))
    }

    pub fn is_proper_subgroup_of(&self, other: &PermGroup) -> bool {
        self.order() < other.order() && self.is_subgroup_of(other)
    }

    /// Subgroup generated by `self` and extra elements.
    pub fn extended(&self, extra: &[Permutation]) -> PermGroup {
        let new: Vec<&Permutation> = extra.iter().filter(|g| !self.contains(g)).collect();
        if new.is_empty() {
            return self.clone();
        }
        let mut chain = self.0.chain.clone();
        let mut gens = self.0.gens.clone();
        for g in new {
            if !chain.contains(g) {
                gens.push(g.clone());
                chain.extend(core::slice::from_ref(g), None);
            }
        }
        Self::from_parts(self.degree(), gens, chain)
    }

    /// Subgroup generated by both groups.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        if self.order() >= other.order() {
            Ok(self.extended(other.generators()))
        } else {
            Ok(other.extended(self.generators()))
        }
    }

    /// The conjugate subgroup `H^g`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        if self.is_trivial() {
            return self.clone();
        }
        let gens = self.0.gens.iter().map(|x| x.conj(g)).collect();
        Self::with_order(self.degree(), gens, self.order())
    }

    /// Uniformly random element: a product of random transversal elements.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut x = self.identity();
        for level in self.0.chain.levels.iter().rev() {
            if level.is_trivial() {
                continue;
            }
            let k = rng.random_range(0..level.orbit.len());
            x.mul_assign(&level.reps[k]);
        }
        x
    }

    /// Lengths of the nontrivial basic orbits, base order.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.0.chain.nontrivial_levels().map(|(_, l)| l.orbit.len()).collect()
    }

    /// Base points of the nontrivial levels.
    pub fn base(&self) -> Vec<u32> {
        self.0.chain.nontrivial_levels().map(|(p, _)| p as u32).collect()
    }

    /// Calls `f` on every element, in a fixed order.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        let levels: Vec<_> = self.0.chain.nontrivial_levels().map(|(_, l)| l).collect();
        fn rec<F: FnMut(&Permutation)>(
            levels: &[&crate::chain::Level],
            depth: usize,
            acc: &Permutation,
            f: &mut F,
        ) {
            if depth == 0 {
                f(acc);
                return;
            }
            let level = levels[depth - 1];
            for rep in &level.reps {
                let next = acc.mul(rep);
                rec(levels, depth - 1, &next, f);
            }
        }
        let id = self.identity();
        rec(&levels, levels.len(), &id, &mut f);
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.order() as usize);
        self.for_each_element(|g| out.push(g.clone()));
        out
    }

    /// Mixed-radix index of an element in `0..order`.
    pub fn element_rank(&self, g: &Permutation) -> Option<u128> {
        let idx = self.0.chain.sift_indices(g)?;
        let lens = self.basic_orbit_lengths();
        let mut r = 0u128;
        for (k, len) in idx.iter().zip(lens.iter()) {
            r = r * (*len as u128) + *k as u128;
        }
        Some(r)
    }

    /// Inverse of `element_rank`.
    pub fn element_at(&self, mut rank: u128) -> Permutation {
        let levels: Vec<_> = self.0.chain.nontrivial_levels().map(|(_, l)| l).collect();
        let mut idx = alloc::vec![0usize; levels.len()];
        for d in (0..levels.len()).rev() {
            let len = levels[d].orbit.len() as u128;
            idx[d] = (rank % len) as usize;
            rank /= len;
        }
        let mut x = self.identity();
        for d in (0..levels.len()).rev() {
            x.mul_assign(&levels[d].reps[idx[d]]);
        }
        x
    }

    /// Lex-least element of the right coset `self · g`.
    pub fn coset_rep(&self, g: &Permutation) -> Permutation {
        self.0.chain.lexmin_coset(g, 0)
    }

    /// Orbits on points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        crate::actions::point_orbits(self.degree(), self.generators())
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.orbits().iter().map(|o| o.len()).collect();
        v.sort_unstable();
        v
    }

    pub fn key(&self) -> SubgroupKey {
        *self.0.key.get_or_init(|| Box::new(self.compute_key()))
    }

    fn compute_key(&self) -> SubgroupKey {
        let chain = &self.0.chain;
        let mut h = FxHasher::default();
        self.order().hash(&mut h);
        for (l, level) in chain.nontrivial_levels() {
            l.hash(&mut h);
            let mut sorted: Vec<(u32, usize)> =
                level.orbit.iter().enumerate().map(|(k, &p)| (p, k)).collect();
            sorted.sort_unstable();
            for &(p, k) in &sorted {
                p.hash(&mut h);
                if k != 0 {
                    let m = chain.lexmin_coset(&level.reps[k], l + 1);
                    m.images().hash(&mut h);
                }
            }
        }
        SubgroupKey {
            order: self.order(),
            fingerprint: h.finish(),
        }
    }

    /// Cached conjugacy class table.
    pub(crate) fn class_cache(&self) -> &OnceBox<ConjClassTable> {
        &self.0.classes
    }

    /// Same subgroup (order plus generator membership).
    pub fn same_as(&self, other: &PermGroup) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        self.degree() == other.degree()
            && self.order() == other.order()
            && other.generators().iter().all(|g| self.contains(g))
    }

    /// Ordering used for output: by order, then dedup key.
    pub fn output_cmp(&self, other: &PermGroup) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for PermGroup {}

impl Hash for PermGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<group of order {} on {} points, gens {:?}>", self.order(), self.degree(), self.generators())
    }
}
