use super::*;
use crate::algebra::{F2, Q};
use crate::homology::fixtures::*;

#[test]
fn product_cell_counts() {
    let p = product_poset_complex(&circle());
    assert_eq!(p.cell_count(), 36);
    assert_eq!(p.cells_by_dim(), vec![9, 18, 9]);
    assert_eq!(product_poset_complex(&sphere(2)).cell_count(), 196);
    assert!((0..36).all(|c| p.swap(p.swap(c)) == c));
}

#[test]
fn subdivided_torus_has_kunneth_betti() {
    let d = barycentric_poset_subdivision(&product_poset_complex(&circle()), 2).unwrap();
    assert_eq!(d.chain_complex().betti::<Q>(), vec![1, 2, 1]);
    assert!(d.face_identities_hold());
    let p = product_poset_complex(&circle());
    let fixed: Vec<usize> = (0..d.counts()[0]).filter(|&j| d.swap_simplex(0, j) == Some(j)).collect();
    let diagonal: Vec<usize> = (0..d.counts()[0])
        .filter(|&j| {
            let (a, b) = p.parts(d.simplex(0, j)[0]);
            a == b
        })
        .collect();
    assert_eq!(fixed, diagonal);
}

#[test]
fn quotient_of_point_and_two_points() {
    let sp = SymmetricSquare::new(&point(), None).unwrap();
    assert_eq!(sp.complex().counts(), vec![1]);
    let sp = SymmetricSquare::new(&two_points(), None).unwrap();
    assert_eq!(sp.complex().counts(), vec![3]);
}

#[test]
fn quotient_from_subdivision_matches_direct_orbits() {
    let p = product_poset_complex(&circle());
    let sub = barycentric_poset_subdivision(&p, 2).unwrap();
    let (q, map) = z2_quotient(&sub).unwrap();
    let direct = symmetric_chains(&p, 2).unwrap();
    assert_eq!(q.counts(), direct.counts());
    assert_eq!(q.chain_complex().betti::<Q>(), vec![1, 1, 0]);
    assert!(q.face_identities_hold());
    assert_eq!(map.degrees(), 3);
}

#[test]
fn sp2_of_circle_and_sphere() {
    let s1 = SymmetricSquare::new(&circle(), None).unwrap();
    assert_eq!(s1.betti::<Q>(), vec![1, 1]);
    let s2 = SymmetricSquare::new(&sphere(2), None).unwrap();
    assert_eq!(s2.betti::<Q>(), vec![1, 0, 1, 0, 1]);
    for (k, sp) in [(circle(), &s1), (sphere(2), &s2)] {
        assert_eq!(sp.complex().chain_complex().euler_characteristic(), expected_euler_characteristic(&k));
    }
}

#[test]
fn diagonal_in_degree_zero() {
    let sp = SymmetricSquare::new(&circle(), None).unwrap();
    let d = sp.diagonal_map().unwrap();
    assert_eq!(d.rank_on_homology::<Q>(0), 1);
}

#[test]
fn dold_and_diagonal_on_small_fixtures() {
    for k in [circle(), sphere(2)] {
        assert!(dold_check::<Q>(&k, 0).unwrap().pass);
        assert!(dold_check::<F2>(&k, 0).unwrap().pass);
        assert!(diagonal_check::<Q>(&k).unwrap().surjective);
    }
}

#[test]
fn basepoint_must_be_a_vertex() {
    let sp = SymmetricSquare::new(&circle(), None).unwrap();
    assert!(sp.basepoint_map(3).is_err());
}

#[test]
fn sphere_bound_not_certified() {
    let r = sp2_bound_check::<Q>(&sphere(2)).unwrap();
    assert!(!r.certifies_dcat_ge_2);
}
