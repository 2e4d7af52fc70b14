use interval_core::maximal::{intermediate_subgroups, IntervalOptions};
use interval_core::{named, PermGroup, Permutation};

#[test]
fn s6_over_trivial() {
    let s6 = named::symmetric(6);
    let iv = intermediate_subgroups(&s6, &PermGroup::trivial(6), &IntervalOptions::default()).unwrap();
    assert_eq!(iv.len(), 1453);
}

#[test]
fn a7_over_double_transposition() {
    let a7 = named::alternating(7);
    let u = PermGroup::new(7, &[Permutation::parse("(1,2)(3,4)", 7).unwrap()]).unwrap();
    let iv = intermediate_subgroups(&a7, &u, &IntervalOptions::default()).unwrap();
    assert_eq!(iv.len(), 156);
}
