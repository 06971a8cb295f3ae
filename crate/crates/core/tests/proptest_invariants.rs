//! Generative invariants: serialization round trips and the neighborhood
//! algebra, driven by proptest.

use proptest::prelude::*;

use support_varieties::gcd::GcdGraph;
use support_varieties::ideal::{Mask, SquareFreeIdeal};
use support_varieties::{mask_string, parse_mask};

fn arb_ideal() -> impl Strategy<Value = SquareFreeIdeal> {
    (2usize..=6, proptest::collection::vec(1u32..64, 1..8)).prop_map(|(n, raw)| {
        let full: Mask = (1 << n) - 1;
        let mut types: Vec<Mask> = raw.into_iter().map(|m| (m & full).max(1)).collect();
        for i in 0..n {
            for j in 0..n {
                if i != j && !types.iter().any(|t| t >> i & 1 == 1 && t >> j & 1 == 0) {
                    types.push(1 << i);
                }
            }
        }
        SquareFreeIdeal::validate_types(n, &types).expect("repaired type set is valid")
    })
}

proptest! {
    #[test]
    fn json_round_trip(ideal in arb_ideal()) {
        let json = ideal.to_json_string();
        let back = SquareFreeIdeal::from_json_str(&json).unwrap();
        prop_assert_eq!(&back, &ideal);
        prop_assert_eq!(back.to_json_string(), json);
    }

    #[test]
    fn mask_strings_round_trip(mask in 0u32..(1 << 12)) {
        let s = mask_string(mask, 12);
        prop_assert_eq!(parse_mask(&s).unwrap(), mask);
    }

    #[test]
    fn neighborhood_union_law(ideal in arb_ideal(), sigma in 0u32..64, theta in 0u32..64) {
        let g = GcdGraph::build(&ideal);
        let full = g.full_mask();
        let (s, t) = (sigma & full, theta & full);
        prop_assert_eq!(g.neighborhood(s | t), g.neighborhood(s) | g.neighborhood(t));
        // The neighborhood of anything avoids nothing it should: every
        // member is adjacent to some generator of sigma.
        let n = g.n();
        for i in 0..n {
            if g.neighborhood(s) >> i & 1 == 1 {
                prop_assert!((0..n).any(|j| s >> j & 1 == 1 && g.has_edge(i + 1, j + 1)));
            }
        }
    }

    #[test]
    fn validate_after_normalize_succeeds(ideal in arb_ideal()) {
        // Rebuild named generators from the type set and renormalize.
        let n = ideal.n();
        let names: Vec<String> = ideal.type_masks().map(|m| format!("v{m}")).collect();
        let gens: Vec<Vec<&str>> = (0..n)
            .map(|i| {
                ideal
                    .type_masks()
                    .enumerate()
                    .filter(|(_, m)| m >> i & 1 == 1)
                    .map(|(k, _)| names[k].as_str())
                    .collect()
            })
            .collect();
        let again = SquareFreeIdeal::normalize_types(&gens).unwrap();
        // Degrees of merged duplicates are not recoverable from names; the
        // type sets must match exactly.
        prop_assert_eq!(
            again.type_masks().collect::<Vec<_>>(),
            ideal.type_masks().collect::<Vec<_>>()
        );
    }
}
