//! Standard permutation groups used by tests, fixtures and the CLI.

use alloc::vec::Vec;

use crate::group::PermGroup;
use crate::perm::Permutation;

fn cycle(n: usize, pts: &[u32]) -> Permutation {
    Permutation::from_cycles(n, &[pts]).expect("valid cycle")
}

/// `S_n` on `n` points.
pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n.max(1));
    }
    let all: Vec<u32> = (0..n as u32).collect();
    PermGroup::generated(n, &[cycle(n, &all), cycle(n, &[0, 1])])
}

/// `A_n` on `n` points.
pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let gens: Vec<Permutation> = (2..n as u32).map(|k| cycle(n, &[0, 1, k])).collect();
    PermGroup::generated(n, &gens)
}

/// Cyclic group generated by an `n`-cycle.
pub fn cyclic(n: usize) -> PermGroup {
    let all: Vec<u32> = (0..n as u32).collect();
    PermGroup::generated(n, &[cycle(n, &all)])
}

/// Dihedral group of order `2n` acting on the `n` vertices of a polygon.
pub fn dihedral(n: usize) -> PermGroup {
    let all: Vec<u32> = (0..n as u32).collect();
    let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    let refl = Permutation::from_images(refl).expect("bijection");
    PermGroup::generated(n, &[cycle(n, &all), refl])
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> PermGroup {
    // elements 1,i,j,k,-1,-i,-j,-k as points 0..8; right multiplication by i and j
    let i = Permutation::from_images(alloc::vec![1, 4, 7, 2, 5, 0, 3, 6]).expect("bijection");
    let j = Permutation::from_images(alloc::vec![2, 3, 4, 5, 6, 7, 0, 1]).expect("bijection");
    PermGroup::generated(8, &[i, j])
}

/// Elementary abelian `2^k` generated by `k` disjoint transpositions.
pub fn elementary_abelian_2(k: usize) -> PermGroup {
    let n = 2 * k;
    let gens: Vec<Permutation> = (0..k as u32).map(|i| cycle(n, &[2 * i, 2 * i + 1])).collect();
    PermGroup::generated(n, &gens)
}

/// Shifts a permutation on `src.degree()` points to act on `offset..` in a
/// domain of `degree` points.
pub fn shift(src: &Permutation, offset: usize, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (p, &q) in src.images().iter().enumerate() {
        images[p + offset] = q + offset as u32;
    }
    Permutation::from_images(images).expect("bijection")
}

/// Direct product acting on the disjoint union of the two domains.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let n = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| shift(g, 0, n)).collect();
    gens.extend(b.generators().iter().map(|g| shift(g, a.degree(), n)));
    PermGroup::generated(n, &gens)
}

/// Right regular representation of `g` on its own elements.
pub fn regular(g: &PermGroup) -> PermGroup {
    let els = g.elements();
    let index: crate::util::FxHashMap<Permutation, u32> =
        els.iter().cloned().enumerate().map(|(i, x)| (x, i as u32)).collect();
    let gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|s| {
            let images = els.iter().map(|x| index[&x.mul(s)]).collect();
            Permutation::from_images(images).expect("bijection")
        })
        .collect();
    PermGroup::generated(els.len(), &gens)
}

/// `G` acting simultaneously on its natural domain and regularly.
pub fn natural_plus_regular(g: &PermGroup) -> PermGroup {
    let els = g.elements();
    let index: crate::util::FxHashMap<Permutation, u32> =
        els.iter().cloned().enumerate().map(|(i, x)| (x, i as u32)).collect();
    let n = g.degree() + els.len();
    let gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|s| {
            let mut images: Vec<u32> = s.images().to_vec();
            images.extend(els.iter().map(|x| index[&x.mul(s)] + g.degree() as u32));
            Permutation::from_images(images).expect("bijection")
        })
        .collect();
    PermGroup::generated(n, &gens)
}

/// Wreath product `G ≀ S_2` in product-free imprimitive action on `2n` points.
pub fn wreath_s2(g: &PermGroup) -> PermGroup {
    let n = g.degree();
    let mut gens: Vec<Permutation> = g.generators().iter().map(|x| shift(x, 0, 2 * n)).collect();
    let swap: Vec<u32> = (0..2 * n as u32).map(|i| (i + n as u32) % (2 * n as u32)).collect();
    gens.push(Permutation::from_images(swap).expect("bijection"));
    PermGroup::generated(2 * n, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(6).order(), 720);
        assert_eq!(alternating(7).order(), 2520);
        assert_eq!(cyclic(12).order(), 12);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(elementary_abelian_2(3).order(), 8);
        assert_eq!(direct_product(&symmetric(3), &symmetric(3)).order(), 36);
        let s4 = symmetric(4);
        let both = natural_plus_regular(&s4);
        assert_eq!(both.degree(), 28);
        assert_eq!(both.order(), 24);
        assert_eq!(regular(&s4).order(), 24);
        assert_eq!(wreath_s2(&symmetric(5)).order(), 28800);
    }

    #[test]
    fn quaternion_is_not_dihedral() {
        // Q8 has a single involution
        let q = quaternion();
        let involutions = q.elements().iter().filter(|x| x.order() == 2).count();
        assert_eq!(involutions, 1);
    }
}
