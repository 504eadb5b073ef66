//! Property tests for the structural invariants, with independent test-local
//! oracles where the library has an optimized path.

use proptest::prelude::*;
use std::collections::BTreeSet;
use unref_core::bijection::{phi, phi_inv, psi, psi_inv, ReducedCtx, ReducedForm};
use unref_core::partition::{triangular, triangular_form, DeltaRecord, Partition};

fn arb_parts(max_value: i64, max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(1..=max_value, 2..=max_len)
        .prop_map(|s| s.into_iter().collect::<Vec<i64>>())
}

/// Plain triple-loop refinability scan, the definition read off directly;
/// deliberately ignorant of the library's search order tricks.
fn witness_by_scan(parts: &[i64]) -> Option<(usize, usize, usize)> {
    let set: BTreeSet<i64> = parts.iter().copied().collect();
    let last = *parts.last().unwrap();
    let missing: Vec<i64> = (1..=last).filter(|v| !set.contains(v)).collect();
    for (l, &p) in parts.iter().enumerate() {
        for i in 0..missing.len() {
            for j in i + 1..missing.len() {
                if missing[i] + missing[j] == p {
                    return Some((l + 1, i + 1, j + 1));
                }
            }
        }
    }
    None
}

proptest! {
    #[test]
    fn parts_and_missing_partition_the_prefix(parts in arb_parts(80, 12)) {
        let p = Partition::new(parts).unwrap();
        let missing = p.missing_parts();
        let mut all: Vec<i64> = p.parts().to_vec();
        all.extend_from_slice(missing.values());
        all.sort_unstable();
        let expect: Vec<i64> = (1..=p.last_part()).collect();
        prop_assert_eq!(all, expect);
        // disjoint by construction
        prop_assert!(missing.values().iter().all(|&v| !p.contains(v)));
    }

    #[test]
    fn witness_matches_plain_scan(parts in arb_parts(60, 10)) {
        let p = Partition::new(parts).unwrap();
        let scanned = witness_by_scan(p.parts());
        let witnessed = p.refinability_witness()
            .map(|w| (w.part_index, w.missing_pair.0, w.missing_pair.1));
        prop_assert_eq!(witnessed, scanned);
        prop_assert_eq!(p.is_unrefinable(), scanned.is_none());
        if let Some((l, i, j)) = scanned {
            let missing = p.missing_parts();
            prop_assert_eq!(
                missing.values()[i - 1] + missing.values()[j - 1],
                p.parts()[l - 1]
            );
        }
    }

    #[test]
    fn delta_preserves_total_and_inverts(parts in arb_parts(50, 10), mask in any::<u16>()) {
        let p = Partition::new(parts).unwrap();
        let removed: Vec<i64> = p.parts().iter().enumerate()
            .filter(|(i, _)| mask & (1 << (i % 16)) != 0)
            .map(|(_, &v)| v)
            .collect();
        prop_assume!(!removed.is_empty() && removed.len() < p.len());
        let added = vec![removed.iter().sum::<i64>()];
        prop_assume!(!p.contains(added[0]) && !removed.contains(&added[0]));

        let delta = DeltaRecord::new(removed.clone(), added.clone()).unwrap();
        let Ok(q) = p.apply_delta(&delta) else {
            // removal can leave a single part; nothing more to check
            return Ok(());
        };
        prop_assert_eq!(q.total(), p.total());
        let inverse = DeltaRecord::new(added, removed).unwrap();
        prop_assert_eq!(q.apply_delta(&inverse).unwrap(), p);
    }

    #[test]
    fn psi_round_trip(parts in arb_parts(40, 8)) {
        prop_assume!(parts.len() % 2 == 0);
        let p = Partition::new(parts).unwrap();
        let sigma = psi(&p).unwrap();
        prop_assert!(sigma.parts().iter().all(|v| v % 2 == 1));
        prop_assert_eq!(sigma.len(), p.len());
        prop_assert_eq!(sigma.total(), 2 * p.total() - p.len() as i64);
        prop_assert_eq!(psi_inv(&sigma), p);
    }

    #[test]
    fn triangular_form_round_trip(total in 3i64..200_000) {
        let tf = triangular_form(total).unwrap();
        prop_assert_eq!(tf.total(), total);
        prop_assert!(tf.d() >= 0 && tf.d() < tf.n());
        prop_assert_eq!(tf.is_triangular(), triangular(tf.n()) == total);
    }

    #[test]
    fn phi_round_trip(n in 11i64..40, raw in prop::collection::btree_set(1i64..37, 0..6)) {
        let d_candidates: Vec<i64> = (3..n).collect();
        let d = d_candidates[raw.len() % d_candidates.len()];
        let ctx = ReducedCtx::new(n, d).unwrap();
        let values: Vec<i64> = raw.into_iter().filter(|&v| v <= n - 3).collect();
        let eta = ReducedForm::new(values, ctx).unwrap();
        let rho = phi(&eta);
        prop_assert_eq!(phi_inv(&rho, &ctx).unwrap(), eta);
    }
}
