//! Brute-force ground truth: every subgroup of a small group by closing
//! cyclic subgroups under joins, maximal subgroups from that lattice or from
//! a data library, and the filtered interval.

use alloc::collections::BinaryHeap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::config::Caps;
use crate::error::{CapKind, Error, Result};
use crate::group::PermGroup;
use crate::lattice::LatticeInterval;
use crate::orbit::subgroup_orbit;
use crate::perm::Permutation;
use crate::util::{new_map, new_set, FxHashMap};

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: PermGroup,
    pub normalizer: PermGroup,
    pub orbit_size: u128,
}

/// All subgroups of a group, by conjugacy class.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group: PermGroup,
    classes: Vec<SubgroupClass>,
    /// Every subgroup with its class index.
    members: Vec<(PermGroup, usize)>,
    maximal_under: Vec<(usize, usize)>,
}

impl SubgroupLattice {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Classes in discovery order; class 0 is the trivial subgroup.
    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn members(&self) -> &[(PermGroup, usize)] {
        &self.members
    }

    /// `(i, j)`: some conjugate of class `i` is maximal in the representative of class `j`.
    pub fn maximal_under(&self) -> &[(usize, usize)] {
        &self.maximal_under
    }

    pub fn total(&self) -> u128 {
        self.classes.iter().map(|c| c.orbit_size).sum()
    }

    /// Class index of the whole group.
    pub fn top_class(&self) -> usize {
        self.members.iter().find(|m| m.0.order() == self.group.order()).map(|m| m.1).expect("group is its own subgroup")
    }
}

/// Non-identity elements, one per cyclic subgroup.
fn cyclic_generators(g: &PermGroup) -> Vec<Permutation> {
    let mut seen = new_set();
    let mut out = Vec::new();
    g.for_each_element(|x| {
        if x.is_identity() || seen.contains(x) {
            return;
        }
        let ord = x.order();
        let mut y = x.clone();
        for k in 1..=ord {
            if crate::util::gcd(k, ord) == 1 {
                seen.insert(y.clone());
            }
            y.mul_assign(x);
        }
        out.push(x.clone());
    });
    out
}

/// Maximal members of `candidates`, which must be proper subgroups of one
/// group sorted by descending order.
fn maximal_among(candidates: &[&PermGroup]) -> Vec<usize> {
    let mut found: Vec<usize> = Vec::new();
    for (i, m) in candidates.iter().enumerate() {
        let covered = found.iter().any(|&j| {
            let big = candidates[j];
            big.order() > m.order() && big.order() % m.order() == 0 && m.is_subgroup_of(big)
        });
        if !covered {
            found.push(i);
        }
    }
    found
}

pub fn all_subgroups(g: &PermGroup, caps: &Caps) -> Result<SubgroupLattice> {
    if g.order() > caps.oracle_order {
        return Err(Error::CapExceeded { kind: CapKind::OracleOrder, limit: caps.oracle_order });
    }
    let cyclic = cyclic_generators(g);
    let mut index: FxHashMap<PermGroup, usize> = new_map();
    let mut members: Vec<(PermGroup, usize)> = Vec::new();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    let mut heap = BinaryHeap::new();

    let register = |h: PermGroup,
                        index: &mut FxHashMap<PermGroup, usize>,
                        members: &mut Vec<(PermGroup, usize)>,
                        classes: &mut Vec<SubgroupClass>|
     -> Result<usize> {
        let orbit = subgroup_orbit(g, &h, caps.subgroup_orbit)?;
        let cls = classes.len();
        for k in orbit.points() {
            index.insert(k.clone(), members.len());
            members.push((k.clone(), cls));
        }
        let normalizer = orbit.stabilizer(g, |k, s| k.conjugate(s));
        classes.push(SubgroupClass {
            representative: h,
            normalizer,
            orbit_size: orbit.len() as u128,
        });
        Ok(cls)
    };

    let first = register(PermGroup::trivial(g.degree()), &mut index, &mut members, &mut classes)?;
    heap.push(Reverse((1u128, first)));
    while let Some(Reverse((_, cls))) = heap.pop() {
        let rep = classes[cls].representative.clone();
        for z in &cyclic {
            if rep.contains(z) {
                continue;
            }
            let j = rep.extended(core::slice::from_ref(z));
            if index.contains_key(&j) {
                continue;
            }
            let order = j.order();
            let new_cls = register(j, &mut index, &mut members, &mut classes)?;
            heap.push(Reverse((order, new_cls)));
        }
    }

    let mut maximal_under = Vec::new();
    for (j, cj) in classes.iter().enumerate() {
        let top = &cj.representative;
        let mut below: Vec<&(PermGroup, usize)> = members
            .iter()
            .filter(|(m, _)| m.order() < top.order() && top.order() % m.order() == 0 && m.is_subgroup_of(top))
            .collect();
        below.sort_by(|a, b| b.0.order().cmp(&a.0.order()));
        let groups: Vec<&PermGroup> = below.iter().map(|m| &m.0).collect();
        let mut pairs: Vec<(usize, usize)> = maximal_among(&groups).into_iter().map(|i| (below[i].1, j)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        maximal_under.extend(pairs);
    }
    maximal_under.sort_unstable();

    Ok(SubgroupLattice {
        group: g.clone(),
        classes,
        members,
        maximal_under,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximalSource {
    Oracle,
    Datafile,
}

/// One representative per conjugacy class of maximal subgroups of `parent`.
#[derive(Clone, Debug)]
pub struct MaximalClasses {
    pub parent: PermGroup,
    pub reps: Vec<PermGroup>,
    pub source: MaximalSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalRecord {
    pub order: u128,
    pub generators: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalEntry {
    pub label: String,
    pub order: u128,
    pub degree: usize,
    pub maximals: Vec<MaximalRecord>,
}

/// Curated maximal-subgroup lists for groups too large for the oracle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MaximalLibrary {
    pub entries: Vec<MaximalEntry>,
}

impl MaximalLibrary {
    /// Entry whose stored subgroups all lie in `t` with the recorded orders.
    pub fn lookup(&self, t: &PermGroup) -> Result<MaximalClasses> {
        'entries: for e in &self.entries {
            if e.order != t.order() || e.degree != t.degree() {
                continue;
            }
            let mut reps = Vec::with_capacity(e.maximals.len());
            for m in &e.maximals {
                if !m.generators.iter().all(|x| x.degree() == t.degree() && t.contains(x)) {
                    continue 'entries;
                }
                let h = PermGroup::generated(t.degree(), &m.generators);
                if h.order() != m.order || h.order() == t.order() {
                    continue 'entries;
                }
                reps.push(h);
            }
            return Ok(MaximalClasses {
                parent: t.clone(),
                reps,
                source: MaximalSource::Datafile,
            });
        }
        Err(Error::DatafileMiss)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Provider<'a> {
    Oracle,
    Datafile(&'a MaximalLibrary),
}

pub fn maximal_subgroups(t: &PermGroup, provider: Provider<'_>, caps: &Caps) -> Result<MaximalClasses> {
    match provider {
        Provider::Datafile(lib) => lib.lookup(t),
        Provider::Oracle => {
            if t.is_trivial() {
                return Ok(MaximalClasses { parent: t.clone(), reps: Vec::new(), source: MaximalSource::Oracle });
            }
            let lattice = all_subgroups(t, caps)?;
            let top = lattice.top_class();
            let mut reps: Vec<PermGroup> = lattice
                .maximal_under()
                .iter()
                .filter(|&&(_, j)| j == top)
                .map(|&(i, _)| lattice.classes()[i].representative.clone())
                .collect();
            reps.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.output_cmp(b)));
            Ok(MaximalClasses { parent: t.clone(), reps, source: MaximalSource::Oracle })
        }
    }
}

/// Every subgroup strictly between `u` and `g`, from the full lattice.
pub fn intermediate_oracle(g: &PermGroup, u: &PermGroup, caps: &Caps) -> Result<LatticeInterval> {
    if !u.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if u.order() == g.order() {
        return Ok(LatticeInterval::degenerate(g));
    }
    let lattice = all_subgroups(g, caps)?;
    Ok(interval_from_lattice(&lattice, u))
}

/// As `intermediate_oracle`, reusing an existing lattice of the top group.
pub fn interval_from_lattice(lattice: &SubgroupLattice, u: &PermGroup) -> LatticeInterval {
    let g = lattice.group();
    if u.order() == g.order() {
        return LatticeInterval::degenerate(g);
    }
    let subs: Vec<PermGroup> = lattice
        .members()
        .iter()
        .map(|m| &m.0)
        .filter(|v| {
            v.order() > u.order() && v.order() < g.order() && v.order() % u.order() == 0 && u.is_subgroup_of(v)
        })
        .cloned()
        .collect();
    LatticeInterval::with_containment_edges(u, g, subs)
}
