//! Simplicial cohomology over ℚ and ℤ/p with cup products, cup-length and
//! zero-divisor cup-length, and the lower bounds they give for dcat and dTC.

mod chain;
mod cohomology;
mod complex;
pub mod fixtures;
mod ring;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{F2, Q};

pub use chain::{normalize_int, to_field, ChainComplex, ChainMap, IntColumn};
pub use cohomology::{betti, cohomology_ring, cup_cochains, pair};
pub use complex::SimplicialComplex;
pub use ring::{GradedRing, TensorSquareRing};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HomologyError {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("not a simplex: {0}")]
    NonSimplex(String),
    #[error("not a chain complex: {0}")]
    NotAChainComplex(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("ring axiom fails: {0}")]
    RingAxiom(String),
    #[error("too large: {0}")]
    TooLarge(String),
}

/// Cup-length and zero-divisor cup-length of one ring, the latter computed
/// by iterated span and by exhaustive products of basic classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingInvariants {
    pub field: String,
    pub betti: Vec<usize>,
    pub cup_length: usize,
    pub zero_divisor_cup_length: usize,
    pub basic_zero_divisor_cup_length: usize,
}

pub fn ring_invariants<F: crate::algebra::Field>(k: &SimplicialComplex) -> Result<RingInvariants, HomologyError> {
    let ring = cohomology_ring::<F>(k)?;
    let square = ring.tensor_square();
    Ok(RingInvariants {
        field: F::name(),
        betti: ring.graded_dims(),
        cup_length: ring.cup_length(),
        zero_divisor_cup_length: square.zero_divisor_cuplength(),
        basic_zero_divisor_cup_length: square.basic_zero_divisor_cuplength(),
    })
}

/// Lower bounds for dcat and dTC. Only the rational values bound the
/// distributional invariants; the ℤ/2 values bound the classical cat and TC.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    #[serde(rename = "dTC_lower")]
    pub dtc_lower: usize,
    pub dcat_lower: usize,
    #[serde(rename = "classical_TC_lower_Z2")]
    pub classical_tc_lower_z2: usize,
    #[serde(rename = "classical_cat_lower_Z2")]
    pub classical_cat_lower_z2: usize,
    pub dim: usize,
    pub euler_characteristic: i64,
    #[serde(rename = "Q")]
    pub rational: RingInvariants,
    #[serde(rename = "Z2")]
    pub mod2: RingInvariants,
    /// invariants agree when recomputed with the vertex order reversed
    pub vertex_order_check: bool,
    pub note: String,
}

pub fn bounds_report(k: &SimplicialComplex) -> Result<BoundsReport, HomologyError> {
    let rational = ring_invariants::<Q>(k)?;
    let mod2 = ring_invariants::<F2>(k)?;
    let reversed = k.reversed();
    let vertex_order_check = ring_invariants::<Q>(&reversed)? == rational && ring_invariants::<F2>(&reversed)? == mod2;
    Ok(BoundsReport {
        dtc_lower: rational.zero_divisor_cup_length,
        dcat_lower: rational.cup_length,
        classical_tc_lower_z2: mod2.zero_divisor_cup_length,
        classical_cat_lower_z2: mod2.cup_length,
        dim: k.dim(),
        euler_characteristic: k.euler_characteristic(),
        rational,
        mod2,
        vertex_order_check,
        note: "Z2 values bound the classical cat and TC only".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::algebra::Field;

    #[test]
    fn fixture_betti_numbers() {
        assert_eq!(betti::<Q>(&circle()), vec![1, 1]);
        assert_eq!(betti::<Q>(&sphere(2)), vec![1, 0, 1]);
        assert_eq!(betti::<Q>(&sphere(3)), vec![1, 0, 0, 1]);
        assert_eq!(betti::<Q>(&torus()), vec![1, 2, 1]);
        assert_eq!(betti::<Q>(&projective_plane()), vec![1, 0, 0]);
        assert_eq!(betti::<F2>(&projective_plane()), vec![1, 1, 1]);
        assert_eq!(betti::<Q>(&genus_two()), vec![1, 4, 1]);
        assert_eq!(betti::<Q>(&complex_projective_plane()), vec![1, 0, 1, 0, 1]);
        assert_eq!(betti::<F2>(&complex_projective_plane()), vec![1, 0, 1, 0, 1]);
        assert_eq!(betti::<Q>(&figure_eight()), vec![1, 2]);
        assert_eq!(betti::<Q>(&product(&circle(), &circle())), vec![1, 2, 1]);
    }

    #[test]
    fn euler_matches_face_count() {
        for name in fixtures::FIXTURE_NAMES {
            let k = by_name(name).unwrap();
            for b in [betti::<Q>(&k), betti::<F2>(&k)] {
                let chi: i64 = b.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
                assert_eq!(chi, k.euler_characteristic(), "{name}");
            }
        }
    }

    #[test]
    fn torus_ring() {
        let r = cohomology_ring::<Q>(&torus()).unwrap();
        assert_eq!(r.graded_dims(), vec![1, 2, 1]);
        let (a, b) = (r.basis_vector(1), r.basis_vector(2));
        let ab = r.mul(&a, &b);
        assert!(ab.iter().any(|x| !x.is_zero()));
        assert_eq!(r.mul(&b, &a), ab.iter().map(|x| x.neg()).collect::<Vec<_>>());
        assert!(r.mul(&a, &a).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rp2_square_is_nonzero_mod_two() {
        let r = cohomology_ring::<F2>(&projective_plane()).unwrap();
        let w = r.basis_vector(1);
        assert!(r.mul(&w, &w).iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn cup_lengths_of_fixtures() {
        let cases: [(&str, usize, usize); 9] = [
            ("S1", 1, 1),
            ("S2", 1, 2),
            ("S3", 1, 1),
            ("T2", 2, 2),
            ("Sigma2", 2, 4),
            ("CP2", 2, 4),
            ("figure_eight", 1, 2),
            ("S1xS1", 2, 2),
            ("S1xS1xS1", 3, 3),
        ];
        for (name, cl, zcl) in cases {
            let inv = ring_invariants::<Q>(&by_name(name).unwrap()).unwrap();
            assert_eq!((inv.cup_length, inv.zero_divisor_cup_length), (cl, zcl), "{name}");
            assert_eq!(inv.basic_zero_divisor_cup_length, zcl, "{name}");
        }
        let rp2 = ring_invariants::<F2>(&projective_plane()).unwrap();
        assert_eq!(rp2.cup_length, 2);
        let rp2q = ring_invariants::<Q>(&projective_plane()).unwrap();
        assert_eq!((rp2q.cup_length, rp2q.zero_divisor_cup_length), (0, 0));
    }

    #[test]
    fn s2_report() {
        let r = bounds_report(&sphere(2)).unwrap();
        assert_eq!((r.dcat_lower, r.dtc_lower), (1, 2));
        assert!(r.vertex_order_check);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["dTC_lower"], 2);
    }
}
