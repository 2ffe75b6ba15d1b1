mod common;

use proptest::prelude::*;
use rtp_core::cycle::{laufer_run, minimal_cycle_bruteforce, Selection};
use rtp_core::quiver::{reduce_to_core, reflect, rep_dimension, replay, tits_form, DimensionVector, Quiver};
use rtp_core::roots::{enumerate_roots_box, is_root};
use rtp_core::tree::{catalog_instances, Divisor, WeightedTree};

/// Random tree: vertex i > 0 hangs off a random earlier vertex.
fn tree() -> impl Strategy<Value = WeightedTree> {
    (2usize..=9)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            (prop::collection::vec(2u32..=4, n), parents)
        })
        .prop_map(|(w, parents)| {
            let edges: Vec<(usize, usize)> = parents.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            WeightedTree::new(w, &edges).unwrap()
        })
        .prop_filter("negative definite", |t| t.is_negative_definite())
}

fn triple_tree() -> impl Strategy<Value = WeightedTree> {
    let pool: Vec<WeightedTree> = catalog_instances(9)
        .into_iter()
        .filter(|(f, _, _)| f.is_triple())
        .map(|(_, _, t)| t)
        .collect();
    prop::sample::select(pool)
}

/// A triple tree, an orientation and one of its positive roots.
fn rooted_quiver() -> impl Strategy<Value = (Quiver, DimensionVector)> {
    (triple_tree(), any::<u64>(), any::<prop::sample::Index>()).prop_map(|(t, bits, pick)| {
        let roots = enumerate_roots_box(&t).unwrap();
        let pos: Vec<&Divisor> = roots.positive().collect();
        let y = pos[pick.index(pos.len())].clone();
        let mask = (1u64 << t.edges().len()) - 1;
        (Quiver::from_bits(t, bits & mask), DimensionVector::from_divisor(&y))
    })
}

#[test]
fn laufer_matches_bruteforce() {
    common::runner(128, 11)
        .run(&tree(), |t| {
            let low = laufer_run(&t, Selection::LowestId, false).unwrap().cycle;
            let high = laufer_run(&t, Selection::HighestId, false).unwrap().cycle;
            prop_assert_eq!(&low, &high);
            if let Ok(brute) = minimal_cycle_bruteforce(&t, 10) {
                prop_assert_eq!(&low, &brute);
            }
            for i in 0..t.len() {
                prop_assert!(t.pairing_with_vertex(&low, i) <= 0);
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn root_set_invariants() {
    common::runner(64, 12)
        .run(&triple_tree(), |t| {
            let roots = enumerate_roots_box(&t).unwrap();
            let z = laufer_run(&t, Selection::LowestId, false).unwrap().cycle;
            prop_assert_eq!(roots.highest(), Some(z.clone()));
            for i in 0..t.len() {
                prop_assert!(roots.contains(&Divisor::unit(t.len(), i)));
            }
            let heavy = t.heavy_vertices()[0];
            for y in roots.iter() {
                prop_assert!(roots.contains(&y.neg()));
                prop_assert!(is_root(&t, y).unwrap());
                prop_assert!(y.abs().le(&z));
                let a0 = y.coeffs()[heavy];
                prop_assert!(a0.abs() <= 1);
                prop_assert_eq!(t.self_intersection(y), if a0 == 0 { -2 } else { -3 });
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn tits_identity() {
    common::runner(256, 13)
        .run(&rooted_quiver(), |(q, a)| {
            let y = Divisor(a.as_slice().to_vec());
            let t = q.tree();
            let extra: i64 = (0..t.len()).map(|i| (t.weight(i) as i64 - 2) * y.coeffs()[i].pow(2)).sum();
            prop_assert_eq!(2 * tits_form(&q, &a), -t.self_intersection(&y) - extra);
            prop_assert_eq!(tits_form(&q, &a), 1);
            Ok(())
        })
        .unwrap();
}

#[test]
fn reflection_is_an_involution() {
    common::runner(256, 14)
        .run(&rooted_quiver(), |(q, a)| {
            for v in 0..q.len() {
                if let Ok((q2, a2)) = reflect(&q, &a, v) {
                    prop_assert_eq!(tits_form(&q2, &a2), tits_form(&q, &a));
                    prop_assert_eq!(reflect(&q2, &a2, v).unwrap(), (q.clone(), a.clone()));
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn reduction_terminates_and_keeps_the_form() {
    common::runner(128, 15)
        .run(&rooted_quiver(), |(q, a)| {
            let trail = reduce_to_core(&q, &a).unwrap();
            prop_assert!(trail.is_complete(), "{:?}", trail.diagnostic);
            prop_assert!(trail.steps.len() as i64 <= a.sum() * q.len() as i64 + q.len() as i64);
            let (q2, a2) = replay(&q, &a, &trail.steps).unwrap();
            prop_assert_eq!(&a2, &trail.final_dims);
            prop_assert_eq!(tits_form(&q2, &a2), 1);
            prop_assert!(rep_dimension(&q2, &a2) <= rep_dimension(&q, &a));
            prop_assert!(trail.core.iter().all(|p| p.dynkin.is_some()));
            Ok(())
        })
        .unwrap();
}
