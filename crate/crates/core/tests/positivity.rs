use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qgr_core::grassmann::subsets;
use qgr_core::tnn::{det_elimination, det_laplace, RationalMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check_identities(a: &RationalMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let c = a.cyc_act();
    let w = a.w0_act();
    for i in subsets(n, m) {
        let v = a.minor_value(&i).unwrap();
        assert_eq!(c.minor_value(&i.shift(1, n)).unwrap(), v);
        assert_eq!(w.minor_value(&i.w0(n)).unwrap(), v);
    }
    assert!(a.dihedral_relation_check());
    let mut p = a.clone();
    for _ in 0..n {
        p = p.cyc_act();
    }
    let sign = BigRational::from_integer(BigInt::from(if m % 2 == 1 { 1 } else { -1 }));
    assert_eq!(p, a.scale(&sign));
    assert_eq!(p.rank(), a.rank());
}

#[test]
fn random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (m, n) in [(2, 4), (2, 5), (3, 5)] {
        for _ in 0..100 {
            check_identities(&RationalMatrix::random(&mut rng, m, n));
        }
    }
}

#[test]
fn witness_preservation() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (m, n) in [(2, 4), (2, 5), (3, 5)] {
        for _ in 0..60 {
            let (a, tp) = RationalMatrix::tnn_witness(&mut rng, m, n);
            assert!(a.is_tnn());
            assert!(a.cyc_act().is_tnn() && a.w0_act().is_tnn() && a.cyc_inv_act().is_tnn());
            if tp {
                assert!(a.is_tp());
                assert!(a.cyc_act().is_tp() && a.w0_act().is_tp());
            }
        }
    }
}

#[test]
fn special_matrices() {
    for (m, n) in [(2, 4), (3, 5)] {
        let z = RationalMatrix::zeros(m, n);
        assert!(z.dihedral_relation_check());
        let id = RationalMatrix::identity_padded(m, n);
        assert!(id.dihedral_relation_check());
        assert!(id.is_tnn());
        check_identities(&id);
    }
    let w = RationalMatrix::from_ints(&[vec![1, 2], vec![3, 4]]).unwrap().w0_act();
    assert_eq!(w, RationalMatrix::from_ints(&[vec![-2, -1], vec![4, 3]]).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 150, ..ProptestConfig::default() })]

    #[test]
    fn determinants_agree(entries in prop::collection::vec((-6i64..=6, 1i64..=4), 16)) {
        let rows: Vec<Vec<BigRational>> = entries
            .chunks(4)
            .map(|r| r.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect())
            .collect();
        let mut copy = rows.clone();
        prop_assert_eq!(det_elimination(&mut copy), det_laplace(&rows));
    }

    #[test]
    fn identities_for_arbitrary_seeds(seed in any::<u64>(), shape in prop::sample::select(vec![(1usize, 3usize), (2, 4), (2, 5), (3, 5), (3, 6)])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        check_identities(&RationalMatrix::random(&mut rng, shape.0, shape.1));
    }
}
