//! Permutations of `{0, .., degree-1}` stored as image vectors.
//!
//! Composition is left-to-right: `a.compose(&b)` applies `a` first, then
//! `b`. Conjugation follows the same convention, `x^g = g⁻¹ x g`.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A permutation given by its point images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::NotABijection);
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = alloc::vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let p_us = p as usize;
                if p_us >= degree {
                    return Err(Error::PointOutOfRange { point: p as usize + 1, degree });
                }
                if used[p_us] {
                    return Err(Error::RepeatedPoint(p as usize + 1));
                }
                used[p_us] = true;
                images[p_us] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses disjoint-cycle notation with 1-based points, e.g. `(1,2,3)(4,5)`.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let malformed = || Error::Malformed(String::from(text));
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(malformed());
        }
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(malformed)?;
            let close = inner.find(')').ok_or_else(malformed)?;
            let body = inner[..close].trim();
            rest = inner[close + 1..].trim_start();
            if body.is_empty() {
                continue;
            }
            let mut cycle = Vec::new();
            for tok in body.split(',') {
                let p: usize = tok.trim().parse().map_err(|_| malformed())?;
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                cycle.push((p - 1) as u32);
            }
            cycles.push(cycle);
        }
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a point.
    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.images[p as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// Smallest point moved, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &p)| *i as u32 != p)
            .map(|(i, _)| i as u32)
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        Ok(self.mul(other))
    }

    /// Unchecked left-to-right product.
    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    /// In-place `self = self * other`.
    #[inline]
    pub(crate) fn mul_assign(&mut self, other: &Self) {
        for p in self.images.iter_mut() {
            *p = other.images[*p as usize];
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0u32; self.degree()].into_boxed_slice();
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `x^g = g⁻¹ x g`, checked.
    pub fn conj_elem(&self, g: &Self) -> Result<Self> {
        self.check_degree(g)?;
        Ok(self.conj(g))
    }

    /// Unchecked conjugate `g⁻¹ self g`: maps `g(p)` to `g(self(p))`.
    #[inline]
    pub fn conj(&self, g: &Self) -> Self {
        let mut out = alloc::vec![0u32; self.degree()].into_boxed_slice();
        for (p, &q) in self.images.iter().enumerate() {
            out[g.images[p] as usize] = g.images[q as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc.mul_assign(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length > 1, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start as u32;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.images[p as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Sorted cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<u32> {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            if len > 0 {
                out.push(len);
            }
        }
        out.sort_unstable();
        out
    }

    /// Element order: lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| crate::util::lcm(acc, l as u64))
    }

    /// 1-based cycle notation, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        use core::fmt::Write;
        let cycles = self.cycles();
        if cycles.is_empty() {
            return String::from("()");
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{}", p + 1);
            }
            s.push(')');
        }
        s
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn parse_identity_and_cycles() {
        assert!(p("()", 4).is_identity());
        assert_eq!(p("()", 4).degree(), 4);
        assert_eq!(p("(1,2,3)", 3).images(), &[1, 2, 0]);
        assert_eq!(p("(1,2)(3,4,5)", 5).order(), 6);
    }

    #[test]
    fn order_by_repeated_composition() {
        let x = p("(1,2)(3,4,5)", 5);
        let mut acc = x.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.mul(&x);
            k += 1;
        }
        assert_eq!(k, 6);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Permutation::parse("(1,2", 3), Err(Error::Malformed(_))));
        assert!(matches!(Permutation::parse("1,2)", 3), Err(Error::Malformed(_))));
        assert!(matches!(Permutation::parse("(1,a)", 3), Err(Error::Malformed(_))));
        assert!(matches!(Permutation::parse("(1,2)(2,3)", 3), Err(Error::RepeatedPoint(2))));
        assert!(matches!(
            Permutation::parse("(1,4)", 3),
            Err(Error::PointOutOfRange { point: 4, degree: 3 })
        ));
        assert!(matches!(Permutation::parse("", 3), Err(Error::Malformed(_))));
    }

    #[test]
    fn compose_inverse_conj() {
        let a = p("(1,2,3)", 4);
        let b = p("(2,4)", 4);
        // a then b: 1->2->4
        assert_eq!(a.compose(&b).unwrap().apply(0), 3);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert_eq!(a.conj_elem(&Permutation::identity(4)).unwrap(), a);
        assert_eq!(p("(1,2)", 3).conj_elem(&p("(2,3)", 3)).unwrap(), p("(1,3)", 3));
        let g = p("(1,4,2)", 4);
        assert_eq!(a.conj(&g), g.inverse().mul(&a).mul(&g));
        assert!(matches!(a.compose(&p("()", 3)), Err(Error::DegreeMismatch(4, 3))));
    }

    #[test]
    fn cycle_string_round_trip() {
        let x = p("(2,5)(1,3,4)", 6);
        assert_eq!(x.to_cycle_string(), "(1,3,4)(2,5)");
        assert_eq!(p(&x.to_cycle_string(), 6), x);
        assert_eq!(x.cycle_type(), vec![1, 2, 3]);
    }
}
