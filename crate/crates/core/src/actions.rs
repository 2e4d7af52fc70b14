//! Point orbits, the action on right cosets of a subgroup, and its block
//! systems.

use alloc::vec::Vec;

use crate::error::{CapKind, Error, Result};
use crate::group::PermGroup;
use crate::orbit::Orbit;
use crate::perm::Permutation;
use crate::util::{new_map, new_set, FxHashMap};

/// Orbits of `⟨gens⟩` on `0..degree`, each sorted, ordered by least point.
pub fn point_orbits(degree: usize, gens: &[Permutation]) -> Vec<Vec<u32>> {
    let mut seen = alloc::vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orb = alloc::vec![start as u32];
        let mut k = 0;
        while k < orb.len() {
            for g in gens {
                let q = g.apply(orb[k]);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orb.push(q);
                }
            }
            k += 1;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

/// Orbit of a point with transversal words.
pub fn orbit(g: &PermGroup, point: u32) -> Result<Orbit<u32>> {
    if point as usize >= g.degree() {
        return Err(Error::PointOutOfRange { point: point as usize + 1, degree: g.degree() });
    }
    Orbit::compute(g.degree(), g.generators(), point, |p, s| s.apply(*p), usize::MAX)
}

/// Action of `G` on the right cosets `U g`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    parent: PermGroup,
    point_subgroup: PermGroup,
    /// Lex-least representative of each coset; index 0 is `U` itself.
    transversal: Vec<Permutation>,
    lookup: FxHashMap<Permutation, u32>,
    /// Action of each generator of the parent, in generator order.
    images: Vec<Permutation>,
}

impl CosetAction {
    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn point_subgroup(&self) -> &PermGroup {
        &self.point_subgroup
    }

    pub fn degree(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &[Permutation] {
        &self.transversal
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    /// Index of the coset containing `g`.
    pub fn coset_of(&self, g: &Permutation) -> Option<usize> {
        let rep = self.point_subgroup.coset_rep(g);
        self.lookup.get(&rep).map(|&i| i as usize)
    }

    /// Image of a coset index under an arbitrary element of the parent.
    pub fn act(&self, coset: usize, g: &Permutation) -> usize {
        let t = self.transversal[coset].mul(g);
        self.coset_of(&t).expect("element of the parent group")
    }
}

/// Builds the coset action breadth-first from `U·1`.
pub fn coset_action(g: &PermGroup, u: &PermGroup, cap: u128) -> Result<CosetAction> {
    if !u.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let index = g.order() / u.order();
    if index > cap {
        return Err(Error::CapExceeded { kind: CapKind::CosetIndex, limit: cap });
    }
    let id = g.identity();
    let mut transversal = alloc::vec![u.coset_rep(&id)];
    let mut lookup = new_map();
    lookup.insert(transversal[0].clone(), 0u32);
    let gens = g.generators();
    let mut table: Vec<Vec<u32>> = alloc::vec![Vec::with_capacity(index as usize); gens.len()];
    let mut k = 0;
    while k < transversal.len() {
        for (gi, s) in gens.iter().enumerate() {
            let rep = u.coset_rep(&transversal[k].mul(s));
            let idx = match lookup.get(&rep) {
                Some(&i) => i,
                None => {
                    let i = transversal.len() as u32;
                    lookup.insert(rep.clone(), i);
                    transversal.push(rep);
                    i
                }
            };
            table[gi].push(idx);
        }
        k += 1;
    }
    debug_assert_eq!(transversal.len() as u128, index);
    let images = table
        .into_iter()
        .map(|v| Permutation::from_images(v).expect("coset action is a permutation"))
        .collect();
    Ok(CosetAction {
        parent: g.clone(),
        point_subgroup: u.clone(),
        transversal,
        lookup,
        images,
    })
}

/// A partition of the action domain into blocks of imprimitivity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockSystem {
    /// Block id per point; ids numbered by first occurrence.
    block_of: Vec<u32>,
    num_blocks: usize,
}

impl BlockSystem {
    fn from_labels(labels: &[u32]) -> Self {
        let mut remap = new_map();
        let mut block_of = Vec::with_capacity(labels.len());
        for &l in labels {
            let next = remap.len() as u32;
            block_of.push(*remap.entry(l).or_insert(next));
        }
        BlockSystem { num_blocks: remap.len(), block_of }
    }

    pub fn action_degree(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self) -> &[u32] {
        &self.block_of
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn block_size(&self) -> usize {
        self.block_of.len() / self.num_blocks
    }

    /// Points sharing a block with `p`.
    pub fn block_containing(&self, p: usize) -> Vec<usize> {
        let b = self.block_of[p];
        (0..self.block_of.len()).filter(|&q| self.block_of[q] == b).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.num_blocks == 1 || self.num_blocks == self.block_of.len()
    }

    /// Invariance under the given permutations of the domain.
    pub fn is_invariant(&self, gens: &[Permutation]) -> bool {
        gens.iter().all(|s| {
            let mut image_block = alloc::vec![u32::MAX; self.num_blocks];
            (0..self.block_of.len()).all(|p| {
                let b = self.block_of[p] as usize;
                let t = self.block_of[s.apply(p as u32) as usize];
                if image_block[b] == u32::MAX {
                    image_block[b] = t;
                    true
                } else {
                    image_block[b] == t
                }
            })
        })
    }

    /// Finest partition coarser than both.
    pub fn join(&self, other: &BlockSystem) -> BlockSystem {
        let n = self.block_of.len();
        let mut uf = UnionFind::new(n);
        let mut first_a = alloc::vec![u32::MAX; self.num_blocks];
        let mut first_b = alloc::vec![u32::MAX; other.num_blocks];
        for p in 0..n {
            let a = self.block_of[p] as usize;
            if first_a[a] == u32::MAX {
                first_a[a] = p as u32;
            } else {
                uf.union(first_a[a] as usize, p);
            }
            let b = other.block_of[p] as usize;
            if first_b[b] == u32::MAX {
                first_b[b] = p as u32;
            } else {
                uf.union(first_b[b] as usize, p);
            }
        }
        uf.to_system()
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let gp = self.parent[self.parent[x] as usize];
            self.parent[x] = gp;
            x = gp as usize;
        }
        x
    }

    /// Returns false if already merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        true
    }

    fn to_system(&mut self) -> BlockSystem {
        let labels: Vec<u32> = (0..self.parent.len()).map(|p| self.find(p) as u32).collect();
        BlockSystem::from_labels(&labels)
    }
}

/// Finest block system in which `0` and `seed` share a block
/// (Atkinson's union-find refinement).
pub fn minimal_block(action: &CosetAction, seed: usize) -> Result<BlockSystem> {
    minimal_block_of(action.degree(), action.images(), seed)
}

pub(crate) fn minimal_block_of(degree: usize, gens: &[Permutation], seed: usize) -> Result<BlockSystem> {
    if seed == 0 || seed >= degree {
        return Err(Error::SeedOutOfRange(seed));
    }
    let mut uf = UnionFind::new(degree);
    uf.union(0, seed);
    let mut queue = alloc::vec![(0usize, seed)];
    while let Some((a, b)) = queue.pop() {
        for s in gens {
            let (sa, sb) = (s.apply(a as u32) as usize, s.apply(b as u32) as usize);
            let (ra, rb) = (uf.find(sa), uf.find(sb));
            if ra != rb {
                uf.union(ra, rb);
                queue.push((ra, rb));
            }
        }
    }
    Ok(uf.to_system())
}

/// All nontrivial block systems of a transitive action.
pub fn all_block_systems(action: &CosetAction) -> Result<Vec<BlockSystem>> {
    all_block_systems_of(action.degree(), action.images())
}

pub(crate) fn all_block_systems_of(degree: usize, gens: &[Permutation]) -> Result<Vec<BlockSystem>> {
    if point_orbits(degree, gens).len() != 1 {
        return Err(Error::NotTransitive);
    }
    let mut seen = new_set();
    let mut minimal: Vec<BlockSystem> = Vec::new();
    for seed in 1..degree {
        let sys = minimal_block_of(degree, gens, seed)?;
        if seen.insert(sys.block_of.clone()) && sys.num_blocks > 1 {
            minimal.push(sys);
        }
    }
    let mut all = minimal.clone();
    let mut k = 0;
    while k < all.len() {
        for m in &minimal {
            let j = all[k].join(m);
            if seen.insert(j.block_of.clone()) && j.num_blocks > 1 {
                all.push(j);
            }
        }
        k += 1;
    }
    Ok(all)
}

/// Subgroup corresponding to a block system: the stabilizer of the block
/// through coset `U`.
pub fn subgroup_from_block(action: &CosetAction, sys: &BlockSystem) -> PermGroup {
    let u = action.point_subgroup();
    let target = u.order() * sys.block_size() as u128;
    let mut v = u.clone();
    for beta in sys.block_containing(0) {
        if v.order() == target {
            break;
        }
        let t = &action.transversal()[beta];
        if !v.contains(t) {
            v = v.extended(core::slice::from_ref(t));
        }
    }
    debug_assert_eq!(v.order(), target);
    v
}
