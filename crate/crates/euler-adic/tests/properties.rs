//! Property tests for the structural invariants: codec round trips,
//! successor/predecessor inversion, statistic bookkeeping, and formula
//! against graph counting on random queries.

use proptest::prelude::*;

use euler_adic::adic::{compare, predecessor, successor};
use euler_adic::codec::{path_to_perm, perm_to_path, project, Permutation};
use euler_adic::combinatorics::{falls, rises};
use euler_adic::dimension::{dim_formula, dim_oracle_graph, DimQuery, FormulaVariant};
use euler_adic::graph::{bundle_size, Cylinder, Orientation, Turn, Vertex};
use euler_adic::measure::{cylinder_measure, MeasureSpec};
use euler_adic::BigRational;

use num_bigint::BigInt;
use num_traits::One;
use std::cmp::Ordering;

fn arb_permutation(max_len: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_len).prop_flat_map(|m| {
        Just((1..=m as u32).collect::<Vec<u32>>())
            .prop_shuffle()
            .prop_map(|entries| Permutation::new(entries).unwrap())
    })
}

// Raw (turn, index seed) pairs become a valid cylinder by reducing each
// seed modulo the bundle size at the growing terminal vertex.
fn arb_cylinder(max_len: usize) -> impl Strategy<Value = Cylinder> {
    proptest::collection::vec((any::<bool>(), any::<u32>()), 0..=max_len).prop_map(|steps| {
        let mut cylinder = Cylinder::empty();
        for (right, seed) in steps {
            let turn = if right { Turn::Right } else { Turn::Left };
            let bundle = bundle_size(cylinder.terminal(), turn, Orientation::Standard);
            cylinder.push(turn, 1 + seed % bundle).unwrap();
        }
        cylinder
    })
}

proptest! {
    #[test]
    fn codec_round_trip(cylinder in arb_cylinder(20)) {
        let perm = path_to_perm(&cylinder);
        prop_assert_eq!(perm.len(), cylinder.len() + 1);
        prop_assert_eq!(perm.rises(), cylinder.terminal().column() as usize);
        prop_assert_eq!(perm_to_path(&perm).unwrap(), cylinder);
    }

    #[test]
    fn perm_round_trip(perm in arb_permutation(24)) {
        let cylinder = perm_to_path(&perm).unwrap();
        prop_assert_eq!(path_to_perm(&cylinder), perm);
    }

    #[test]
    fn rises_and_falls_partition_adjacencies(perm in arb_permutation(40)) {
        let r = rises(perm.entries()).unwrap();
        let f = falls(perm.entries()).unwrap();
        prop_assert_eq!(r + f, perm.len() - 1);
        prop_assert_eq!(r, perm.rises());
        prop_assert_eq!(f, perm.falls());
    }

    #[test]
    fn projection_commutes_with_edge_dropping(cylinder in arb_cylinder(16)) {
        prop_assume!(!cylinder.is_empty());
        let perm = path_to_perm(&cylinder);
        let dropped = cylinder.truncated(cylinder.len() - 1);
        prop_assert_eq!(project(&perm).unwrap(), path_to_perm(&dropped));
    }

    #[test]
    fn successor_and_predecessor_are_inverse(cylinder in arb_cylinder(14)) {
        if let Some(next) = successor(&cylinder) {
            prop_assert_eq!(compare(&cylinder, &next).unwrap(), Ordering::Less);
            prop_assert_eq!(predecessor(&next).unwrap(), cylinder.clone());
        }
        if let Some(prev) = predecessor(&cylinder) {
            prop_assert_eq!(compare(&prev, &cylinder).unwrap(), Ordering::Less);
            prop_assert_eq!(successor(&prev).unwrap(), cylinder);
        }
    }

    #[test]
    fn cylinder_text_round_trip(cylinder in arb_cylinder(16)) {
        let text = cylinder.to_string();
        prop_assert_eq!(text.parse::<Cylinder>().unwrap(), cylinder);
    }

    #[test]
    fn permutation_text_round_trip(perm in arb_permutation(14)) {
        let text = perm.to_string();
        prop_assert_eq!(text.parse::<Permutation>().unwrap(), perm);
    }

    #[test]
    fn symmetric_measure_depends_only_on_length(cylinder in arb_cylinder(12)) {
        let measure = cylinder_measure(&MeasureSpec::Symmetric, &cylinder).unwrap();
        let factorial: BigInt = (1..=cylinder.len() as i64 + 1).map(BigInt::from).product();
        prop_assert_eq!(measure, BigRational::new(BigInt::one(), factorial));
    }

    #[test]
    fn formula_matches_graph_oracle(
        cylinder in arb_cylinder(5).prop_filter("non-empty", |c| !c.is_empty()),
        extra in 0u32..6,
        k in 0u32..11,
    ) {
        let n = cylinder.len() as u32 + extra;
        prop_assume!(k <= n);
        let query = DimQuery::new(cylinder, Vertex::new(n, k).unwrap()).unwrap();
        prop_assert_eq!(
            dim_formula(&query, FormulaVariant::SlotCorrected),
            dim_oracle_graph(&query)
        );
    }
}
