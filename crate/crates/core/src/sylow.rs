//! Sylow subgroups, derived subgroups and normal closures.

use alloc::vec::Vec;

use rand::Rng;

use crate::config::Caps;
use crate::conj::normalizer_unchecked;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::util::is_prime;

/// Attempts per growth step before giving up.
const MAX_DRAWS: usize = 20_000;

/// A Sylow `p`-subgroup, grown one `p`-element at a time inside the
/// normalizer of the current `p`-subgroup.
pub fn sylow_subgroup<R: Rng + ?Sized>(g: &PermGroup, p: u64, rng: &mut R, caps: &Caps) -> Result<PermGroup> {
    let order = g.order();
    if !is_prime(p as u128) || order % p as u128 != 0 {
        return Err(Error::PrimeNotDividing(p));
    }
    let mut target = 1u128;
    let mut rest = order;
    while rest % p as u128 == 0 {
        rest /= p as u128;
        target *= p as u128;
    }
    let mut sub = PermGroup::trivial(g.degree());
    while sub.order() < target {
        let n = normalizer_unchecked(g, &sub, caps)?;
        let mut grown = None;
        for _ in 0..MAX_DRAWS {
            let x = n.random_element(rng);
            let h = p_part(&x, p);
            if !sub.contains(&h) {
                grown = Some(sub.extended(&[h]));
                break;
            }
        }
        sub = grown.ok_or(Error::InvalidArgument("no p-element found outside the current p-subgroup"))?;
    }
    Ok(sub)
}

/// The power of `x` that keeps exactly the `p`-part of its order.
fn p_part(x: &Permutation, p: u64) -> Permutation {
    let mut m = x.order();
    while m % p == 0 {
        m /= p;
    }
    x.pow(m)
}

/// Smallest normal subgroup of `g` containing `gens` (which must lie in `g`).
pub fn normal_closure(g: &PermGroup, gens: &[Permutation]) -> PermGroup {
    let mut h = PermGroup::trivial(g.degree()).extended(gens);
    loop {
        let mut extra = Vec::new();
        let probe = h.clone();
        for x in probe.generators() {
            for s in g.generators() {
                let y = x.conj(s);
                if !h.contains(&y) {
                    h = h.extended(core::slice::from_ref(&y));
                    extra.push(y);
                }
            }
        }
        if extra.is_empty() {
            return h;
        }
    }
}

/// `[G, G]`, as the normal closure of commutators of generators.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.inverse().mul(&b.inverse()).mul(a).mul(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(g, &comms)
}
