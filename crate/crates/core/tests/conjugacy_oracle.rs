mod common;

use aspherical_core::{are_conjugate, classify};
use common::{grid, inv, mul, to_matrix, ConjugacyOracle};

#[test]
fn grid_agrees_with_brute_force_search() {
    let g = grid(5);
    let oracle = ConjugacyOracle::build(&g, 50);
    let matrices: Vec<_> = g.iter().map(|&m| to_matrix(m)).collect();
    let mut disagreements = Vec::new();
    for (i, &a) in g.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            let found = oracle.conjugator(a, b);
            if let Some(q) = found {
                assert_eq!(mul(mul(inv(q), a), q), b, "oracle conjugator is wrong");
            }
            if found.is_some() != are_conjugate(&matrices[i], &matrices[j]) {
                disagreements.push((a, b));
            }
        }
    }
    assert!(
        disagreements.is_empty(),
        "{} disagreements, e.g. {:?}",
        disagreements.len(),
        &disagreements[..disagreements.len().min(5)]
    );
}

#[test]
fn oracle_is_stable_in_the_bound() {
    let g = grid(5);
    let small = ConjugacyOracle::build(&g, 30);
    let large = ConjugacyOracle::build(&g, 80);
    assert_eq!(small.roots.len(), large.roots.len());
    for &a in &g {
        for &b in &g {
            assert_eq!(
                small.conjugator(a, b).is_some(),
                large.conjugator(a, b).is_some()
            );
        }
    }
}

#[test]
fn class_count_on_grid() {
    let g = grid(5);
    assert_eq!(g.len(), 308);
    let mut classes: Vec<String> = g
        .iter()
        .map(|&m| classify(&to_matrix(m)).to_string())
        .collect();
    classes.sort();
    classes.dedup();
    assert_eq!(classes.len(), ConjugacyOracle::build(&g, 50).roots.len());
}

#[test]
fn reference_pairs() {
    let r = to_matrix([1, 1, 0, 1]);
    let b = to_matrix([1, 0, -1, 1]);
    assert!(are_conjugate(&r, &b));
    assert!(!are_conjugate(&r, &r.inverse()));
    let s = to_matrix([0, -1, 1, 0]);
    assert!(!are_conjugate(&s, &s.inverse()));
}
