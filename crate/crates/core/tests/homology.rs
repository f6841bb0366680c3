use proptest::prelude::*;

use dtc_core::algebra::{F2, Q};
use dtc_core::homology::{betti, bounds_report, cohomology_ring, fixtures, ring_invariants, SimplicialComplex};
use dtc_core::symsquare::{dold_check, expected_euler_characteristic, SymmetricSquare};

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    (3usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::btree_set(0..n, 1..=3), 1..8)))
        .prop_map(|(n, faces)| SimplicialComplex::new(n, faces.into_iter().map(|s| s.into_iter().collect()).collect()).unwrap())
}

fn graph() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 1..6)))
        .prop_map(|(n, edges)| {
            let faces = edges.into_iter().map(|(a, b)| if a == b { vec![a] } else { vec![a, b] }).collect();
            SimplicialComplex::new(n, faces).unwrap()
        })
}

fn euler(b: &[usize]) -> i64 {
    b.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

fn kunneth(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_characteristic_from_betti(k in complex()) {
        prop_assert_eq!(euler(&betti::<Q>(&k)), k.euler_characteristic());
        prop_assert_eq!(euler(&betti::<F2>(&k)), k.euler_characteristic());
    }

    #[test]
    fn invariants_ignore_vertex_order(k in complex(), rot in 0usize..6) {
        let n = k.vertex_count();
        let perm: Vec<usize> = (0..n).map(|v| (v + rot) % n).collect();
        let r = k.relabeled(&perm).unwrap();
        prop_assert_eq!(ring_invariants::<Q>(&k).unwrap(), ring_invariants::<Q>(&r).unwrap());
        prop_assert_eq!(ring_invariants::<F2>(&k).unwrap(), ring_invariants::<F2>(&r).unwrap());
    }

    #[test]
    fn cup_length_bounds(k in complex()) {
        let inv = ring_invariants::<Q>(&k).unwrap();
        prop_assert!(inv.cup_length <= k.dim());
        prop_assert!(inv.zero_divisor_cup_length <= 2 * k.dim());
        prop_assert!(inv.cup_length <= inv.zero_divisor_cup_length);
        prop_assert_eq!(inv.zero_divisor_cup_length, inv.basic_zero_divisor_cup_length);
        prop_assert!(cohomology_ring::<Q>(&k).is_ok());
    }

    #[test]
    fn product_betti_follow_kunneth(a in graph(), b in graph()) {
        let p = fixtures::product(&a, &b);
        let expected = kunneth(&betti::<Q>(&a), &betti::<Q>(&b));
        let mut got = betti::<Q>(&p);
        got.resize(expected.len(), 0);
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn symmetric_square_of_graphs(k in graph()) {
        let sp = SymmetricSquare::new(&k, None).unwrap();
        prop_assert!(sp.is_complete());
        prop_assert_eq!(sp.complex().chain_complex().euler_characteristic(), expected_euler_characteristic(&k));
        let r = dold_check::<Q>(&k, 0).unwrap();
        prop_assert!(r.pass);
    }
}

#[test]
fn bounds_for_fixtures() {
    let expect = [("S1", 1, 1), ("S2", 1, 2), ("S3", 1, 1), ("T2", 2, 2), ("Sigma2", 2, 4), ("figure_eight", 1, 2)];
    for (name, dcat, dtc) in expect {
        let r = bounds_report(&fixtures::by_name(name).unwrap()).unwrap();
        assert_eq!((r.dcat_lower, r.dtc_lower), (dcat, dtc), "{name}");
        assert!(r.vertex_order_check, "{name}");
    }
    let rp2 = bounds_report(&fixtures::projective_plane()).unwrap();
    assert_eq!((rp2.dcat_lower, rp2.dtc_lower), (0, 0));
    assert_eq!(rp2.classical_cat_lower_z2, 2);
}
