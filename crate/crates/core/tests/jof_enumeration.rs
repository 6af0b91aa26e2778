mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use sumsys::jof::{self, Entry, Jof, TargetTuple, Violation};

/// Every ordered tuple (any m) with entries >= 2 and product <= max_n.
fn all_tuples(max_n: u64) -> Vec<TargetTuple> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for m in 1..=omega(n) as usize {
            for parts in ordered_tuples(n, m) {
                out.push(TargetTuple::new(parts).unwrap());
            }
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn enumeration_closed_form_and_oracle_agree() {
    let tuples = all_tuples(200);
    assert!(tuples.len() > 1000);
    for t in &tuples {
        let listed = jof::enumerate(t).unwrap();
        let closed = jof::count_for_tuple(t).unwrap();
        assert_eq!(listed.len() as i128, closed, "tuple ({t})");
        assert_eq!(jof_count(t.parts()) as i128, closed, "tuple ({t})");
    }
}

#[test]
fn every_enumerated_jof_is_valid_and_reconstructs_the_tuple() {
    for t in all_tuples(120) {
        for j in jof::enumerate(&t).unwrap() {
            assert_eq!(j.validate(&t), Ok(()));
            assert_eq!(j.target().unwrap(), t);
            for (part, &n) in t.parts().iter().enumerate() {
                let prod: u64 = j
                    .entries()
                    .iter()
                    .filter(|e| e.part == part + 1)
                    .map(|e| e.factor)
                    .product();
                assert_eq!(prod, n);
            }
            let pp = j.partial_products().unwrap();
            assert_eq!(pp[0], 1);
            assert_eq!(*pp.last().unwrap(), t.product());
        }
    }
}

#[test]
fn copying_a_neighbours_part_breaks_validity() {
    for t in all_tuples(96) {
        for j in jof::enumerate(&t).unwrap() {
            let entries = j.entries();
            for i in 0..entries.len() {
                for nb in [i.wrapping_sub(1), i + 1] {
                    if nb >= entries.len() {
                        continue;
                    }
                    let mut mutated = entries.to_vec();
                    mutated[i] = Entry::new(entries[nb].part, entries[i].factor);
                    let v = Jof::new(mutated).validate(&t);
                    assert!(v.is_err(), "{j} mutated at {i}");
                    assert!(matches!(
                        v,
                        Err(Violation::AdjacentSamePart { .. })
                    ));
                }
            }
        }
    }
}

#[test]
fn relabelling_parts_permutes_the_enumeration() {
    for t in all_tuples(200).into_iter().filter(|t| t.len() <= 4) {
        let base = jof::enumerate(&t).unwrap();
        for perm in permutations(t.len()) {
            let permuted = t.permuted(&perm).unwrap();
            assert_eq!(
                jof::count_for_tuple(&permuted).unwrap(),
                jof::count_for_tuple(&t).unwrap()
            );
            // Old part perm[i] + 1 becomes new part i + 1.
            let mut map = vec![0; t.len()];
            for (new, &old) in perm.iter().enumerate() {
                map[old] = new + 1;
            }
            let image: BTreeSet<Jof> = base.iter().map(|j| j.relabel(&map)).collect();
            let direct: BTreeSet<Jof> = jof::enumerate(&permuted).unwrap().into_iter().collect();
            assert_eq!(image, direct, "tuple ({t}) under {perm:?}");
        }
    }
}

#[test]
fn enumeration_order_is_deterministic_and_sorted() {
    let t = TargetTuple::new(vec![8, 6, 4]).unwrap();
    let a = jof::enumerate(&t).unwrap();
    let b = jof::enumerate(&t).unwrap();
    assert_eq!(a, b);
    let mut sorted = a.clone();
    sorted.sort();
    assert_eq!(a, sorted);
    assert_eq!(jof::enumerate_prefix(&t, 10).unwrap(), a[..10].to_vec());
}

proptest! {
    #[test]
    fn closed_form_matches_enumeration(parts in prop::collection::vec(2u64..=12, 1..=4)) {
        let t = TargetTuple::new(parts.clone()).unwrap();
        prop_assert_eq!(
            jof::count_for_tuple(&t).unwrap(),
            jof::count_by_enumeration(&t, usize::MAX).unwrap() as i128
        );
        prop_assert_eq!(
            jof::count_by_enumeration(&t, usize::MAX).unwrap(),
            jof_count(&parts)
        );
    }
}
