//! Lévy-Prokhorov distance against a brute-force oracle written from the
//! definition, and the measure-level properties.

use num::{BigRational, One, Zero};
use proptest::prelude::*;

use dtc_core::measure::{
    half_separation, in_basis_neighborhood, lp_distance, lp_feasible, lp_semidistance, FiniteMetric,
    FiniteSupportMeasure,
};
use dtc_core::rational::ratio;

type M = FiniteSupportMeasure<usize>;

/// ρ^ℓ(μ,ν) by enumeration. The feasible set of ε is an up-ray whose left
/// end is either a distance d(x,y) (where a point of ν enters C^ε) or a mass
/// gap μ(C) − ν(S). So the infimum is the least candidate c ≥ 0 for which
/// every c' > c is feasible, i.e. μ(C) ≤ ν({y : d(y,C) ≤ c}) + c for all C.
fn oracle_left(mu: &M, nu: &M, d: &FiniteMetric) -> BigRational {
    let mu_atoms = mu.atoms();
    let nu_atoms = nu.atoms();
    let dm = d.matrix();
    let mass = |atoms: &[dtc_core::measure::Atom<usize>], mask: usize| -> BigRational {
        atoms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(BigRational::zero(), |s, (_, a)| s + &a.weight)
    };
    let mut candidates = vec![BigRational::zero()];
    for a in mu_atoms {
        for b in nu_atoms {
            candidates.push(dm[a.elem][b.elem].clone());
        }
    }
    for c in 1..(1usize << mu_atoms.len()) {
        for s in 0..(1usize << nu_atoms.len()) {
            let gap = mass(mu_atoms, c) - mass(nu_atoms, s);
            if gap > BigRational::zero() {
                candidates.push(gap);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let closed_ok = |eps: &BigRational| {
        (1..(1usize << mu_atoms.len())).all(|c| {
            let covered = nu_atoms
                .iter()
                .enumerate()
                .filter(|(_, y)| mu_atoms.iter().enumerate().any(|(i, x)| c >> i & 1 == 1 && dm[x.elem][y.elem] <= *eps))
                .fold(0usize, |m, (j, _)| m | 1 << j);
            mass(mu_atoms, c) <= mass(nu_atoms, covered) + eps
        })
    };
    candidates.into_iter().find(closed_ok).expect("ε = 1 is always feasible")
}

fn oracle(mu: &M, nu: &M, d: &FiniteMetric) -> BigRational {
    oracle_left(mu, nu, d).max(oracle_left(nu, mu, d))
}

fn metric_from_edges(n: usize, edges: &[(i64, i64)]) -> FiniteMetric {
    let mut d = vec![vec![BigRational::zero(); n]; n];
    let mut e = edges.iter().cycle();
    for i in 0..n {
        for j in i + 1..n {
            let (p, q) = *e.next().unwrap();
            d[i][j] = ratio(p, q);
            d[j][i] = ratio(p, q);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    FiniteMetric::new(d)
}

fn measure(n: usize, raw: &[(usize, i64)]) -> M {
    M::from_pairs(raw.iter().map(|&(i, w)| (i % n, ratio(w, 1))), true).unwrap()
}

fn edges() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((1i64..=12, 1i64..=6), 10)
}

fn atoms() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..5, 1i64..=9), 1..=5)
}

#[test]
fn dirac_pairs_are_truncated_distance() {
    for (num, den) in [(3, 10), (2, 1), (1, 1), (7, 8), (5, 3)] {
        let d = metric_from_edges(2, &[(num, den)]);
        let got = lp_distance(&M::dirac(0), &M::dirac(1), &d).unwrap();
        assert_eq!(got, ratio(num, den).min(BigRational::one()));
        assert_eq!(got, oracle(&M::dirac(0), &M::dirac(1), &d));
    }
}

#[test]
fn half_and_half_against_dirac() {
    let d = metric_from_edges(2, &[(1, 1)]);
    let mu = M::from_pairs([(0, ratio(1, 2)), (1, ratio(1, 2))], false).unwrap();
    let nu = M::dirac(0);
    assert_eq!(lp_semidistance(&mu, &nu, &d).unwrap(), ratio(1, 2));
    assert_eq!(lp_distance(&mu, &nu, &d).unwrap(), ratio(1, 2));
    assert_eq!(oracle(&mu, &nu, &d), ratio(1, 2));
}

#[test]
fn merging_and_mixing() {
    let m = M::from_pairs([(0, ratio(1, 2)), (0, ratio(1, 4)), (1, ratio(1, 4))], false).unwrap();
    assert_eq!((m.weight_of(&0), m.weight_of(&1)), (ratio(3, 4), ratio(1, 4)));
    let z = M::from_pairs([(0, BigRational::zero()), (1, BigRational::one())], false).unwrap();
    assert!(z.is_dirac());
    let half = M::dirac(0).mix(&ratio(1, 2), &M::dirac(1)).unwrap();
    assert_eq!((half.weight_of(&0), half.weight_of(&1)), (ratio(1, 2), ratio(1, 2)));
    let merged = M::from_pairs([(0, ratio(1, 3)), (1, ratio(1, 3)), (2, ratio(1, 3))], false)
        .unwrap()
        .pushforward(|&i| if i < 2 { 0 } else { 1 });
    assert_eq!(merged.weight_of(&0), ratio(2, 3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matches_oracle(n in 2usize..=5, e in edges(), a in atoms(), b in atoms()) {
        let d = metric_from_edges(n, &e);
        let (mu, nu) = (measure(n, &a), measure(n, &b));
        prop_assert_eq!(lp_semidistance(&mu, &nu, &d).unwrap(), oracle_left(&mu, &nu, &d));
        prop_assert_eq!(lp_distance(&mu, &nu, &d).unwrap(), oracle(&mu, &nu, &d));
    }

    #[test]
    fn metric_axioms(n in 2usize..=5, e in edges(), a in atoms(), b in atoms(), c in atoms()) {
        let d = metric_from_edges(n, &e);
        let (mu, nu, xi) = (measure(n, &a), measure(n, &b), measure(n, &c));
        let mn = lp_distance(&mu, &nu, &d).unwrap();
        prop_assert!(lp_distance(&mu, &mu, &d).unwrap().is_zero());
        prop_assert_eq!(mn.is_zero(), mu == nu);
        prop_assert_eq!(&mn, &lp_distance(&nu, &mu, &d).unwrap());
        prop_assert!(lp_distance(&mu, &xi, &d).unwrap() <= mn + lp_distance(&nu, &xi, &d).unwrap());
    }

    #[test]
    fn feasibility_is_monotone(n in 2usize..=5, e in edges(), a in atoms(), b in atoms(), steps in prop::collection::vec(0i64..=24, 2..8)) {
        let d = metric_from_edges(n, &e);
        let (mu, nu) = (measure(n, &a), measure(n, &b));
        let mut eps: Vec<BigRational> = steps.iter().map(|&s| ratio(s, 12)).collect();
        eps.sort();
        let flags: Vec<bool> = eps.iter().map(|x| lp_feasible(&mu, &nu, &d, x).unwrap()).collect();
        prop_assert!(flags.windows(2).all(|w| !w[0] || w[1]));
        let rho = lp_semidistance(&mu, &nu, &d).unwrap();
        for (x, ok) in eps.iter().zip(&flags) {
            if *x > rho {
                prop_assert!(*ok);
            }
        }
    }

    #[test]
    fn pushforward_is_one_lipschitz(n in 2usize..=5, e in edges(), a in atoms(), b in atoms(), map in prop::collection::vec(0usize..5, 5)) {
        let d = metric_from_edges(n, &e);
        let (mu, nu) = (measure(n, &a), measure(n, &b));
        let dm = d.matrix();
        let f = |i: &usize| map[*i] % n;
        let lipschitz = (0..n).all(|i| (0..n).all(|j| dm[f(&i)][f(&j)] <= dm[i][j]));
        let constant = |_: &usize| 0usize;
        let before = lp_distance(&mu, &nu, &d).unwrap();
        prop_assert!(lp_distance(&mu.pushforward(constant), &nu.pushforward(constant), &d).unwrap().is_zero());
        if lipschitz {
            prop_assert!(lp_distance(&mu.pushforward(f), &nu.pushforward(f), &d).unwrap() <= before);
        }
    }

    #[test]
    fn basis_sets_lie_in_balls(n in 2usize..=5, e in edges(), a in atoms(), b in atoms(), frac in 1i64..=11) {
        let d = metric_from_edges(n, &e);
        let (mu, nu) = (measure(n, &a), measure(n, &b));
        let eps = match half_separation(&mu, &d) {
            Some(h) => h * ratio(frac, 12),
            None => ratio(frac, 12),
        };
        prop_assert!(in_basis_neighborhood(&mu, &mu, &eps, &d).unwrap());
        if in_basis_neighborhood(&nu, &mu, &eps, &d).unwrap() {
            prop_assert!(lp_distance(&mu, &nu, &d).unwrap() < eps);
        }
    }
}
