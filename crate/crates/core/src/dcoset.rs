//! Double cosets `D \ G / B` as `B`-orbits on the right cosets of `D`.

use alloc::vec::Vec;

use crate::actions::{coset_action, point_orbits};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct DoubleCosetDecomp {
    left: PermGroup,
    right: PermGroup,
    ambient: PermGroup,
    reps: Vec<(Permutation, u128)>,
}

impl DoubleCosetDecomp {
    pub fn left(&self) -> &PermGroup {
        &self.left
    }

    pub fn right(&self) -> &PermGroup {
        &self.right
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    /// (representative, size) per double coset, ordered by least coset index.
    pub fn reps(&self) -> &[(Permutation, u128)] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn total(&self) -> u128 {
        self.reps.iter().map(|r| r.1).sum()
    }
}

pub fn double_cosets(d: &PermGroup, g: &PermGroup, b: &PermGroup, coset_cap: u128) -> Result<DoubleCosetDecomp> {
    if !b.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let action = coset_action(g, d, coset_cap)?;
    let b_images: Vec<Permutation> = b
        .generators()
        .iter()
        .map(|s| {
            let images = (0..action.degree()).map(|c| action.act(c, s) as u32).collect();
            Permutation::from_images(images).expect("coset action")
        })
        .collect();
    let reps = point_orbits(action.degree(), &b_images)
        .into_iter()
        .map(|orb| (action.transversal()[orb[0] as usize].clone(), orb.len() as u128 * d.order()))
        .collect();
    Ok(DoubleCosetDecomp {
        left: d.clone(),
        right: b.clone(),
        ambient: g.clone(),
        reps,
    })
}

/// Inverted representatives; they represent `B \ G / D`.
pub fn inverse_reps(dc: &DoubleCosetDecomp) -> Vec<Permutation> {
    dc.reps.iter().map(|(r, _)| r.inverse()).collect()
}
