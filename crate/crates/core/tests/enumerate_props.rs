//! Enumeration invariants beyond the oracle comparisons.

use udg_core::enumerate::{level_is_family_free, EnumerateConfig, LevelStore};
use udg_core::pipeline::full_family;

#[test]
fn known_level_counts() {
    let mut store = LevelStore::new(full_family(), EnumerateConfig::default());
    // the diamond is the only family-free graph with 4 vertices and 5 edges
    assert_eq!(store.level(4, 5).unwrap().len(), 1);
    assert_eq!(store.level(6, 9).unwrap().len(), 4);
    assert!(store.level(8, 15).unwrap().is_empty());
    assert_eq!(store.level(8, 14).unwrap().len(), 3);
}

#[test]
fn known_max_densities() {
    let mut store = LevelStore::new(full_family(), EnumerateConfig::default());
    let (u7, w7) = store.max_density(7).unwrap();
    assert_eq!((u7, w7.len()), (12, 1));
    let (u11, w11) = store.max_density(11).unwrap();
    assert_eq!((u11, w11.len()), (23, 2));
    let (u12, w12) = store.max_density(12).unwrap();
    assert_eq!((u12, w12.len()), (27, 1));
}

#[test]
fn max_density_is_monotone() {
    let mut store = LevelStore::new(full_family(), EnumerateConfig::default());
    let mut prev = 0usize;
    for n in 1..=10 {
        let (u, _) = store.max_density(n).unwrap();
        assert!(u >= prev, "u_bar({n}) dropped");
        assert!(u <= prev + n, "u_bar({n}) grew by more than n");
        prev = u;
    }
}

#[test]
fn levels_are_family_free_by_direct_recheck() {
    let family = full_family();
    let mut store = LevelStore::new(family.clone(), EnumerateConfig::default());
    // spot-check a spread of levels with the independent subgraph search
    for (n, m) in [(5, 7), (6, 9), (7, 11), (8, 13), (9, 16), (10, 20)] {
        let level = store.level(n, m).unwrap();
        assert!(level_is_family_free(&level, &family), "level ({n}, {m})");
    }
}

#[test]
fn degenerate_levels_are_empty_not_errors() {
    let mut store = LevelStore::new(full_family(), EnumerateConfig::default());
    // more edges than the vertex count supports
    assert!(store.level(4, 7).unwrap().is_empty());
    assert!(store.level(2, 3).unwrap().is_empty());
    // vertex counts below any family member: everything survives
    assert_eq!(store.level(3, 3).unwrap().len(), 1);
}

#[test]
fn budget_errors_carry_the_level() {
    let mut store = LevelStore::new(
        full_family(),
        EnumerateConfig {
            level_cap: Some(2),
            ..EnumerateConfig::default()
        },
    );
    let err = store.max_density(6).unwrap_err();
    match err {
        udg_core::enumerate::EnumerateError::Budget { cap: 2, .. } => {}
        other => panic!("expected a budget error, got {other}"),
    }
    // previously sealed levels remain usable
    assert_eq!(store.level(4, 5).unwrap().len(), 1);
}
