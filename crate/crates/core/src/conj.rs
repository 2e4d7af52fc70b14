//! Conjugacy classes, centralizers, normalizers and conjugacy tests, all by
//! orbit–stabilizer on the conjugation action.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::config::Caps;
use crate::error::{CapKind, Error, Result};
use crate::group::PermGroup;
use crate::orbit::{element_orbit, subgroup_orbit, Orbit};
use crate::perm::Permutation;
use crate::util::{map_with_capacity, FxHashMap};

/// Above this group order, class tables do not keep an element index.
const MEMBER_INDEX_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: Permutation,
    pub centralizer: PermGroup,
    pub size: u128,
}

/// Conjugacy classes of a group. Obtained from the group handle, which caches it.
#[derive(Debug)]
pub struct ConjClassTable {
    classes: Vec<ConjClass>,
    members: Option<FxHashMap<Permutation, u32>>,
}

impl ConjClassTable {
    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Sum of class sizes (equals the group order).
    pub fn total(&self) -> u128 {
        self.classes.iter().map(|c| c.size).sum()
    }

    /// Index of the class containing `y` (an element of the group).
    pub fn class_of(&self, group: &PermGroup, y: &Permutation) -> Option<usize> {
        if let Some(m) = &self.members {
            return m.get(y).map(|&k| k as usize);
        }
        if !group.contains(y) {
            return None;
        }
        let ct = y.cycle_type();
        let ord = y.order();
        for (k, c) in self.classes.iter().enumerate() {
            if c.representative.order() != ord || c.representative.cycle_type() != ct {
                continue;
            }
            if conjugator(group, &c.representative, y, usize::MAX).ok()?.is_some() {
                return Some(k);
            }
        }
        None
    }
}

/// Conjugacy classes, seeded by sweeping the elements in rank order.
pub fn conjugacy_classes<'a>(g: &'a PermGroup, caps: &Caps) -> Result<&'a ConjClassTable> {
    g.class_cache()
        .get_or_try_init(|| build_classes(g, caps).map(Box::new))
}

fn build_classes(g: &PermGroup, caps: &Caps) -> Result<ConjClassTable> {
    let order = g.order();
    if order > caps.class_elements {
        return Err(Error::CapExceeded { kind: CapKind::ClassElements, limit: caps.class_elements });
    }
    let n = order as usize;
    let mut marked = alloc::vec![0u64; n.div_ceil(64)];
    let mut members = if order <= MEMBER_INDEX_LIMIT { Some(map_with_capacity(n)) } else { None };
    let mut classes = Vec::new();
    let mut covered: u128 = 0;
    for r in 0..n {
        if covered == order {
            break;
        }
        if marked[r / 64] >> (r % 64) & 1 == 1 {
            continue;
        }
        let x = g.element_at(r as u128);
        let orbit = element_orbit(g, &x, usize::MAX)?;
        let idx = classes.len() as u32;
        for y in orbit.points() {
            let ry = g.element_rank(y).expect("conjugate lies in the group") as usize;
            marked[ry / 64] |= 1 << (ry % 64);
            if let Some(m) = members.as_mut() {
                m.insert(y.clone(), idx);
            }
        }
        let centralizer = orbit.stabilizer(g, |y, s| y.conj(s));
        covered += orbit.len() as u128;
        classes.push(ConjClass {
            representative: x,
            centralizer,
            size: orbit.len() as u128,
        });
    }
    Ok(ConjClassTable { classes, members })
}

/// `C_G(x)`.
pub fn centralizer(g: &PermGroup, x: &Permutation) -> Result<PermGroup> {
    if !g.membership(x)? {
        return Err(Error::NotMember);
    }
    Ok(centralizer_unchecked(g, x))
}

/// Centralizer of an arbitrary permutation of the same degree inside `g`.
pub(crate) fn centralizer_unchecked(g: &PermGroup, x: &Permutation) -> PermGroup {
    if g.generators().iter().all(|s| x.mul(s) == s.mul(x)) {
        return g.clone();
    }
    let orbit = element_orbit(g, x, usize::MAX).expect("uncapped");
    orbit.stabilizer(g, |y, s| y.conj(s))
}

/// `C_G(x_1, .., x_k)`, folding left.
pub fn centralizer_chain(g: &PermGroup, xs: &[Permutation]) -> Result<PermGroup> {
    let mut c = g.clone();
    for x in xs {
        if !g.membership(x)? {
            return Err(Error::NotMember);
        }
        c = centralizer_unchecked(&c, x);
    }
    Ok(c)
}

/// Some `d ∈ G` with `x^d = y`.
pub fn is_conjugate(g: &PermGroup, x: &Permutation, y: &Permutation) -> Result<Option<Permutation>> {
    if !g.membership(x)? || !g.membership(y)? {
        return Err(Error::NotMember);
    }
    conjugator(g, x, y, usize::MAX)
}

/// Conjugacy test under `g` for arbitrary permutations of its degree.
pub(crate) fn conjugator(g: &PermGroup, x: &Permutation, y: &Permutation, cap: usize) -> Result<Option<Permutation>> {
    if x == y {
        return Ok(Some(g.identity()));
    }
    if x.cycle_type() != y.cycle_type() {
        return Ok(None);
    }
    let (orbit, hit) = Orbit::compute_until(g.degree(), g.generators(), x.clone(), |z, s| z.conj(s), cap, |z| z == y)
        .map_err(|e| match e {
            Error::CapExceeded { limit, .. } => Error::CapExceeded { kind: CapKind::ClassElements, limit },
            other => other,
        })?;
    Ok(hit.map(|k| orbit.transversal(k)))
}

/// `H` is normalized by every generator of `G`.
pub fn is_normal(g: &PermGroup, h: &PermGroup) -> bool {
    g.generators()
        .iter()
        .all(|s| h.generators().iter().all(|x| h.contains(&x.conj(s))))
}

/// `N_G(H)` as the stabilizer of `H` under conjugation.
pub fn normalizer(g: &PermGroup, h: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    Ok(normalizer_unchecked(g, h, caps)?)
}

/// Normalizer of any subgroup of the same degree inside `g`.
pub(crate) fn normalizer_unchecked(g: &PermGroup, h: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    if is_normal(g, h) {
        return Ok(g.clone());
    }
    let orbit = subgroup_orbit(g, h, caps.subgroup_orbit)?;
    Ok(orbit.stabilizer(g, |k, s| k.conjugate(s)))
}

/// Some `g ∈ G` with `H^g = K`.
pub fn is_subgroup_conjugate(g: &PermGroup, h: &PermGroup, k: &PermGroup, caps: &Caps) -> Result<Option<Permutation>> {
    if !h.is_subgroup_of(g) || !k.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    subgroup_conjugator(g, h, k, caps)
}

pub(crate) fn subgroup_conjugator(g: &PermGroup, h: &PermGroup, k: &PermGroup, caps: &Caps) -> Result<Option<Permutation>> {
    if h.order() != k.order() || h.orbit_lengths() != k.orbit_lengths() {
        return Ok(None);
    }
    if h == k {
        return Ok(Some(g.identity()));
    }
    let (orbit, hit) = Orbit::compute_until(
        g.degree(),
        g.generators(),
        h.clone(),
        |x, s| x.conjugate(s),
        caps.subgroup_orbit,
        |x| x == k,
    )?;
    Ok(hit.map(|i| orbit.transversal(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::util::new_set;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        let gens: Vec<Permutation> = gens.iter().map(|s| p(s, n)).collect();
        PermGroup::new(n, &gens).unwrap()
    }

    /// Partition of all elements by brute-force conjugation.
    fn brute_classes(g: &PermGroup) -> Vec<usize> {
        let els = g.elements();
        let mut seen = new_set();
        let mut sizes = Vec::new();
        for x in &els {
            if seen.contains(x) {
                continue;
            }
            let mut class = new_set();
            for y in &els {
                class.insert(x.conj(y));
            }
            sizes.push(class.len());
            seen.extend(class);
        }
        sizes.sort();
        sizes
    }

    fn check_table(g: &PermGroup) {
        let t = conjugacy_classes(g, &Caps::default()).unwrap();
        assert_eq!(t.total(), g.order());
        for c in t.classes() {
            assert_eq!(c.size * c.centralizer.order(), g.order());
            for s in c.centralizer.generators() {
                assert_eq!(c.representative.conj(s), c.representative);
            }
        }
        for (i, a) in t.classes().iter().enumerate() {
            for b in &t.classes()[i + 1..] {
                assert!(conjugator(g, &a.representative, &b.representative, usize::MAX).unwrap().is_none());
            }
        }
        let mut sizes: Vec<usize> = t.classes().iter().map(|c| c.size as usize).collect();
        sizes.sort();
        assert_eq!(sizes, brute_classes(g));
    }

    #[test]
    fn class_tables() {
        let triv = PermGroup::trivial(3);
        let t = conjugacy_classes(&triv, &Caps::default()).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.classes()[0].size, 1);
        let s4 = named::symmetric(4);
        let t = conjugacy_classes(&s4, &Caps::default()).unwrap();
        let mut sizes: Vec<u128> = t.classes().iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, alloc::vec![1, 3, 6, 6, 8]);
        check_table(&s4);
        let s6 = named::symmetric(6);
        assert_eq!(conjugacy_classes(&s6, &Caps::default()).unwrap().len(), 11);
        check_table(&s6);
        check_table(&named::alternating(5));
        check_table(&named::quaternion());
        check_table(&named::direct_product(&named::symmetric(3), &named::symmetric(3)));
        let caps = Caps { class_elements: 100, ..Caps::default() };
        assert!(conjugacy_classes(&named::alternating(6), &caps).unwrap_err().is_cap());
    }

    #[test]
    fn class_lookup() {
        let a5 = named::alternating(5);
        let t = conjugacy_classes(&a5, &Caps::default()).unwrap();
        for x in a5.elements() {
            let k = t.class_of(&a5, &x).unwrap();
            assert!(conjugator(&a5, &t.classes()[k].representative, &x, usize::MAX).unwrap().is_some());
        }
        assert!(t.class_of(&a5, &p("(1,2)", 5)).is_none());
    }

    #[test]
    fn centralizers() {
        let s4 = named::symmetric(4);
        assert_eq!(centralizer(&s4, &s4.identity()).unwrap(), s4);
        let c = centralizer(&s4, &p("(1,2)", 4)).unwrap();
        assert_eq!(c.order(), 4);
        let direct = s4.elements().into_iter().filter(|g| g.mul(&p("(1,2)", 4)) == p("(1,2)", 4).mul(g)).count();
        assert_eq!(direct, 4);
        let cc = centralizer_chain(&s4, &[p("(1,2)", 4), p("(3,4)", 4)]).unwrap();
        assert_eq!(cc, group(4, &["(1,2)", "(3,4)"]));
        let a4 = named::alternating(4);
        assert_eq!(centralizer(&a4, &p("(1,2)", 4)), Err(Error::NotMember));
    }

    #[test]
    fn conjugacy_tests() {
        let s4 = named::symmetric(4);
        let x = p("(1,2)", 4);
        assert_eq!(is_conjugate(&s4, &x, &x).unwrap(), Some(s4.identity()));
        let d = is_conjugate(&s4, &x, &p("(3,4)", 4)).unwrap().unwrap();
        assert_eq!(x.conj(&d), p("(3,4)", 4));
        let a4 = named::alternating(4);
        assert_eq!(is_conjugate(&a4, &p("(1,2,3)", 4), &p("(1,3,2)", 4)).unwrap(), None);
        let orbit = element_orbit(&a4, &p("(1,2,3)", 4), 100).unwrap();
        assert_eq!(orbit.len(), 4);
    }

    #[test]
    fn normalizers() {
        let caps = Caps::default();
        let s4 = named::symmetric(4);
        let a4 = named::alternating(4);
        assert_eq!(normalizer(&s4, &a4, &caps).unwrap(), s4);
        let t = group(4, &["(1,2)"]);
        let n = normalizer(&s4, &t, &caps).unwrap();
        assert_eq!(n.order(), 4);
        let direct = s4.elements().into_iter().filter(|g| t.conjugate(g) == t).count();
        assert_eq!(direct, 4);
        let s5 = named::symmetric(5);
        let p5 = named::cyclic(5);
        let n = normalizer(&s5, &p5, &caps).unwrap();
        assert_eq!(n.order(), 20);
        assert!(p5.is_subgroup_of(&n));
        for s in n.generators() {
            assert_eq!(p5.conjugate(s), p5);
        }
        assert_eq!(normalizer(&a4, &t, &caps), Err(Error::NotSubgroup));
    }

    #[test]
    fn subgroup_conjugacy() {
        let caps = Caps::default();
        let s4 = named::symmetric(4);
        let h = group(4, &["(1,2)", "(1,2,3)"]);
        assert_eq!(is_subgroup_conjugate(&s4, &h, &h, &caps).unwrap(), Some(s4.identity()));
        let k = group(4, &["(2,3)", "(2,3,4)"]);
        let w = is_subgroup_conjugate(&s4, &h, &k, &caps).unwrap().unwrap();
        assert_eq!(h.conjugate(&w), k);
        let a = group(4, &["(1,2)"]);
        let b = group(4, &["(1,2)(3,4)"]);
        assert_eq!(is_subgroup_conjugate(&s4, &a, &b, &caps).unwrap(), None);
    }
}
