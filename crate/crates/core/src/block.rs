//! Intermediate subgroups from the block systems of the action on the
//! cosets of `U`.

use alloc::vec::Vec;

use crate::actions::{all_block_systems, coset_action, subgroup_from_block};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::LatticeInterval;
use crate::util::new_set;

pub fn intermediate_by_blocks(g: &PermGroup, u: &PermGroup, caps: &Caps) -> Result<LatticeInterval> {
    if !u.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if u.order() == g.order() {
        return Ok(LatticeInterval::degenerate(g));
    }
    let action = coset_action(g, u, caps.coset_index)?;
    let mut seen = new_set();
    let mut subs = Vec::new();
    for sys in all_block_systems(&action)? {
        let v = subgroup_from_block(&action, &sys);
        if seen.insert(v.clone()) {
            subs.push(v);
        }
    }
    Ok(LatticeInterval::with_containment_edges(u, g, subs))
}
