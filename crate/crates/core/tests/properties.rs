mod common;

use std::collections::BTreeMap;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zxl::chainkit::{is_equivalence, mapping_cone, n_dual, ChainMap, FreeComplex};
use zxl::hoengine::{hocolim, hocolim_to_colim, is_reedy_cofibrant, FiniteDiagram};
use zxl::intlin::{homology_of_pair, smith_normal_form_with_inverse, Int, SparseIntMat};
use zxl::simpkit::{barycentric, SimpComplex};

fn dense(max: usize) -> impl Strategy<Value = (usize, usize, Dense)> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        (
            Just(r),
            Just(c),
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r),
        )
    })
}

fn complex_from(d_hi: &Dense, p: usize, d_lo: &Dense, q: usize, mid: usize) -> FreeComplex {
    let ranks = BTreeMap::from([(0, q), (1, mid), (2, p)]);
    let diffs = BTreeMap::from([(1, to_sparse(d_lo, q, mid)), (2, to_sparse(d_hi, mid, p))]);
    FreeComplex::from_maps(&ranks, &diffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization((r, c, a) in dense(5)) {
        let m = to_sparse(&a, r, c);
        let s = smith_normal_form_with_inverse(&m);
        let d = s.u.mul(&m).unwrap().mul(&s.v).unwrap();
        prop_assert_eq!(&d, &s.diagonal());
        for w in s.divisors.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        prop_assert!(s.divisors.iter().all(|x| x.signum() > 0));
        prop_assert_eq!(det(&to_i64(&s.u)).abs(), 1);
        prop_assert_eq!(det(&to_i64(&s.v)).abs(), 1);
        prop_assert_eq!(s.u_inv.unwrap().mul(&s.u).unwrap(), SparseIntMat::identity(r));
        let oracle: Vec<String> = invariant_factors(&a, c).iter().map(|x| x.to_string()).collect();
        let got: Vec<String> = s.divisors.iter().map(|x| x.to_string()).collect();
        prop_assert_eq!(got, oracle);
    }

    #[test]
    fn homology_agrees_with_minors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d_hi, p, d_lo, q, mid) = random_pair(&mut rng);
        let h = homology_of_pair(&to_sparse(&d_hi, mid, p), &to_sparse(&d_lo, q, mid)).unwrap();
        let (betti, torsion) = homology_oracle(&d_hi, p, &d_lo, mid);
        prop_assert_eq!(h.betti, betti);
        let t: Vec<String> = h.torsion.iter().map(Int::to_string).collect();
        prop_assert_eq!(t, torsion.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }

    #[test]
    fn cones_and_duals(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d_hi, p, d_lo, q, mid) = random_pair(&mut rng);
        let c = complex_from(&d_hi, p, &d_lo, q, mid);
        prop_assert!(mapping_cone(&ChainMap::identity(&c)).is_acyclic());
        prop_assert!(is_equivalence(&ChainMap::identity(&c)));
        // double dual is the complex itself up to signs: same homology
        let dd = n_dual(&n_dual(&c, 3), 3);
        prop_assert_eq!(dd.homology_all(), c.homology_all());
        prop_assert_eq!(c.euler_characteristic(), q as i64 - mid as i64 + p as i64);
    }

    #[test]
    fn colimits_of_random_forests(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = FiniteDiagram::random(&mut rng, 4);
        let h = hocolim(&d).unwrap();
        prop_assert!(h.validate().is_ok());
        if is_reedy_cofibrant(&d) {
            prop_assert!(is_equivalence(&hocolim_to_colim(&d).unwrap()));
        }
    }

    #[test]
    fn subdivision_keeps_homology(facets in proptest::collection::btree_set(proptest::collection::btree_set(0usize..5, 1..=3), 1..5)) {
        let f: Vec<Vec<usize>> = facets.into_iter().map(|s| s.into_iter().collect()).collect();
        let k = SimpComplex::from_facets(&f).unwrap();
        let s = barycentric(&k);
        prop_assert_eq!(s.sd.chains().homology_all(), k.chains().homology_all());
        prop_assert!(is_equivalence(&s.sd_map()));
    }
}
