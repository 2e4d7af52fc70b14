//! The interval `[U, G]`: proper intermediate subgroups plus maximality
//! inclusions, indexed with `0 = U` and `len + 1 = G`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::group::PermGroup;
use crate::util::{new_map, FxHashMap};

#[derive(Clone, Debug)]
pub struct LatticeInterval {
    bottom: PermGroup,
    top: PermGroup,
    subgroups: Vec<PermGroup>,
    inclusions: Vec<(usize, usize)>,
}

/// Fixed-width bitset over node indices.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(alloc::vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

/// Covering pairs of the containment order on `nodes`, which must be sorted
/// by ascending order.
pub fn containment_edges(nodes: &[PermGroup]) -> Vec<(usize, usize)> {
    let n = nodes.len();
    let mut below: Vec<Bits> = Vec::with_capacity(n);
    for j in 0..n {
        let mut b = Bits::new(n);
        for i in 0..j {
            if nodes[i].order() < nodes[j].order() && nodes[i].is_subgroup_of(&nodes[j]) {
                b.set(i);
            }
        }
        below.push(b);
    }
    let mut edges = Vec::new();
    for j in 0..n {
        let mut covered = Bits::new(n);
        for k in 0..j {
            if below[j].get(k) {
                covered.or_assign(&below[k]);
            }
        }
        for i in 0..j {
            if below[j].get(i) && !covered.get(i) {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    edges
}

impl LatticeInterval {
    /// Empty interval, used when `U = G`.
    pub fn degenerate(group: &PermGroup) -> Self {
        LatticeInterval {
            bottom: group.clone(),
            top: group.clone(),
            subgroups: Vec::new(),
            inclusions: Vec::new(),
        }
    }

    /// Sorts the subgroups and computes maximality edges by containment.
    pub fn with_containment_edges(bottom: &PermGroup, top: &PermGroup, mut subgroups: Vec<PermGroup>) -> Self {
        if bottom.order() == top.order() {
            return Self::degenerate(top);
        }
        subgroups.sort_by(|a, b| a.output_cmp(b));
        let mut nodes = Vec::with_capacity(subgroups.len() + 2);
        nodes.push(bottom.clone());
        nodes.extend(subgroups.iter().cloned());
        nodes.push(top.clone());
        let inclusions = containment_edges(&nodes);
        LatticeInterval {
            bottom: bottom.clone(),
            top: top.clone(),
            subgroups,
            inclusions,
        }
    }

    /// Builds an interval from unsorted subgroups and edges given in terms of
    /// positions in that unsorted list (`None` standing for `U` or `G`).
    pub(crate) fn from_unsorted(
        bottom: &PermGroup,
        top: &PermGroup,
        subgroups: Vec<PermGroup>,
        edges: &[(Option<usize>, Option<usize>)],
    ) -> Self {
        let mut order: Vec<usize> = (0..subgroups.len()).collect();
        order.sort_by(|&a, &b| subgroups[a].output_cmp(&subgroups[b]));
        let mut new_index = alloc::vec![0usize; subgroups.len()];
        for (pos, &old) in order.iter().enumerate() {
            new_index[old] = pos + 1;
        }
        let top_index = subgroups.len() + 1;
        let mut inclusions: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                (
                    a.map_or(0, |i| new_index[i]),
                    b.map_or(top_index, |i| new_index[i]),
                )
            })
            .collect();
        inclusions.sort_unstable();
        inclusions.dedup();
        let sorted = order.into_iter().map(|i| subgroups[i].clone()).collect();
        LatticeInterval {
            bottom: bottom.clone(),
            top: top.clone(),
            subgroups: sorted,
            inclusions,
        }
    }

    pub fn bottom(&self) -> &PermGroup {
        &self.bottom
    }

    pub fn top(&self) -> &PermGroup {
        &self.top
    }

    /// Proper intermediate subgroups, ascending by order then key.
    pub fn subgroups(&self) -> &[PermGroup] {
        &self.subgroups
    }

    pub fn inclusions(&self) -> &[(usize, usize)] {
        &self.inclusions
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Node by index: `0` is the bottom, `len + 1` the top.
    pub fn node(&self, index: usize) -> &PermGroup {
        if index == 0 {
            &self.bottom
        } else if index == self.subgroups.len() + 1 {
            &self.top
        } else {
            &self.subgroups[index - 1]
        }
    }

    /// Checks the type invariants; returns a description of the first failure.
    pub fn validate(&self) -> Result<(), String> {
        if self.bottom.order() == self.top.order() {
            return if self.subgroups.is_empty() && self.inclusions.is_empty() {
                Ok(())
            } else {
                Err(String::from("degenerate interval carries data"))
            };
        }
        for (i, v) in self.subgroups.iter().enumerate() {
            if !(self.bottom.is_proper_subgroup_of(v) && v.is_proper_subgroup_of(&self.top)) {
                return Err(alloc::format!("subgroup {} is not strictly between bottom and top", i + 1));
            }
        }
        for w in self.subgroups.windows(2) {
            if w[0].output_cmp(&w[1]) != core::cmp::Ordering::Less {
                return Err(String::from("subgroups not sorted or not distinct"));
            }
        }
        let mut nodes = Vec::with_capacity(self.len() + 2);
        nodes.push(self.bottom.clone());
        nodes.extend(self.subgroups.iter().cloned());
        nodes.push(self.top.clone());
        for &(i, j) in &self.inclusions {
            if j >= nodes.len() || nodes[j].order() % nodes[i].order() != 0 || nodes[i].order() == nodes[j].order() {
                return Err(alloc::format!("edge ({i},{j}) is not a strict divisibility"));
            }
        }
        let expected = containment_edges(&nodes);
        if expected != self.inclusions {
            let mut msg = String::new();
            let _ = write!(msg, "edges differ from containment covers: expected {:?}, got {:?}", expected, self.inclusions);
            return Err(msg);
        }
        Ok(())
    }

    /// Same subgroups (under subgroup equality) and the same edges.
    pub fn same_as(&self, other: &LatticeInterval) -> bool {
        self.diff(other).is_none()
    }

    /// Human-readable description of the first difference.
    pub fn diff(&self, other: &LatticeInterval) -> Option<String> {
        if self.len() != other.len() {
            return Some(alloc::format!("subgroup counts differ: {} vs {}", self.len(), other.len()));
        }
        let index: FxHashMap<PermGroup, usize> = {
            let mut m = new_map();
            for (i, g) in other.subgroups.iter().enumerate() {
                m.insert(g.clone(), i + 1);
            }
            m
        };
        let mut map = alloc::vec![0usize; self.len() + 2];
        map[self.len() + 1] = other.len() + 1;
        for (i, g) in self.subgroups.iter().enumerate() {
            match index.get(g) {
                Some(&j) => map[i + 1] = j,
                None => return Some(alloc::format!("subgroup {} ({:?}) missing from the other interval", i + 1, g)),
            }
        }
        let mut mine: Vec<(usize, usize)> = self.inclusions.iter().map(|&(a, b)| (map[a], map[b])).collect();
        mine.sort_unstable();
        if mine != other.inclusions {
            return Some(alloc::format!("edges differ: {:?} vs {:?}", mine, other.inclusions));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::perm::Permutation;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        let gens: Vec<Permutation> = gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect();
        PermGroup::new(n, &gens).unwrap()
    }

    #[test]
    fn chain_edges() {
        let s4 = named::symmetric(4);
        let c4 = group(4, &["(1,2,3,4)"]);
        let d8 = group(4, &["(1,2,3,4)", "(1,3)"]);
        let iv = LatticeInterval::with_containment_edges(&c4, &s4, alloc::vec![d8.clone()]);
        assert_eq!(iv.inclusions(), &[(0, 1), (1, 2)]);
        iv.validate().unwrap();
        let direct = LatticeInterval::with_containment_edges(&d8, &s4, Vec::new());
        assert_eq!(direct.inclusions(), &[(0, 1)]);
        let deg = LatticeInterval::with_containment_edges(&s4, &s4, Vec::new());
        assert!(deg.is_empty() && deg.inclusions().is_empty());
        deg.validate().unwrap();
    }

    #[test]
    fn diamond() {
        let k4 = named::elementary_abelian_2(2);
        let t = PermGroup::trivial(4);
        let subs = alloc::vec![group(4, &["(1,2)"]), group(4, &["(3,4)"]), group(4, &["(1,2)(3,4)"])];
        let iv = LatticeInterval::with_containment_edges(&t, &k4, subs.clone());
        assert_eq!(iv.inclusions().len(), 6);
        iv.validate().unwrap();
        let mut rev = subs;
        rev.reverse();
        let iv2 = LatticeInterval::with_containment_edges(&t, &k4, rev);
        assert!(iv.same_as(&iv2));
        let iv3 = LatticeInterval::with_containment_edges(&t, &k4, alloc::vec![group(4, &["(1,2)"])]);
        assert!(iv.diff(&iv3).is_some());
    }
}
