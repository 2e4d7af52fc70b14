/// Limits on every enumeration that can blow up. Exceeding one is a typed
/// error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest coset action degree `[G:U]`.
    pub coset_index: u128,
    /// Largest number of group elements touched while building class tables.
    pub class_elements: u128,
    /// Largest conjugation orbit of subgroups (normalizers, conjugacy tests).
    pub subgroup_orbit: usize,
    /// Largest group order handed to the brute-force subgroup oracle.
    pub oracle_order: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            coset_index: 200_000,
            class_elements: 10_000_000,
            subgroup_orbit: 100_000,
            oracle_order: 50_000,
        }
    }
}
