use proptest::prelude::*;
use qgr_core::grassmann::{subsets, Grassmannian};
use qgr_core::scalars::Laurent;
use qgr_core::twist::{
    cocycle_condition_check, cocycle_exp, gamma_gamma_identity, tower_exp, twisted_product, CocycleKind, TwistedElement,
};

fn triple(n: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>, Vec<i64>)> {
    let v = || prop::collection::vec(-6i64..=6, n);
    (v(), v(), v())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 250, ..ProptestConfig::default() })]

    #[test]
    fn cocycle_condition((s, t, v) in (3usize..=6).prop_flat_map(triple)) {
        for kind in [CocycleKind::Gamma, CocycleKind::SmallGamma] {
            prop_assert!(cocycle_condition_check(kind, &s, &t, &v).unwrap());
        }
    }

    #[test]
    fn cocycles_are_bicharacters((s, t, v) in (3usize..=6).prop_flat_map(triple)) {
        let sum: Vec<i64> = s.iter().zip(&t).map(|(a, b)| a + b).collect();
        for kind in [CocycleKind::Gamma, CocycleKind::SmallGamma] {
            let lhs = cocycle_exp(kind, &sum, &v).unwrap();
            let rhs = cocycle_exp(kind, &s, &v).unwrap() + cocycle_exp(kind, &t, &v).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tower_levels_cancel_in_pairs((s, t, _) in (3usize..=6).prop_flat_map(triple), level in 1i64..=6) {
        // Level 0 is untwisted.
        prop_assert_eq!(tower_exp(0, &s, &t).unwrap(), 0);
        let a = tower_exp(level, &s, &t).unwrap();
        let b = tower_exp(level + 1, &s, &t).unwrap();
        let step = cocycle_exp(CocycleKind::SmallGamma, &qgr_core::twist::rotate(&s, -level), &qgr_core::twist::rotate(&t, -level)).unwrap();
        prop_assert_eq!(b - a, step);
    }
}

#[test]
fn mismatched_lengths_are_rejected() {
    assert!(cocycle_exp(CocycleKind::Gamma, &[1, 2], &[1, 2, 3]).is_err());
}

#[test]
fn gamma_gamma_on_minors() {
    for (m, n) in [(1, 3), (2, 4), (2, 5), (3, 6)] {
        for i in subsets(n, m) {
            for j in subsets(n, m) {
                assert!(gamma_gamma_identity(&i, &j, n).unwrap(), "({m},{n}) {i} {j}");
            }
        }
    }
}

#[test]
fn twisted_products_are_associative() {
    let g = Grassmannian::new(2, 4).unwrap();
    let alg = g.algebra();
    let sets = subsets(4, 2);
    let picks = [(0, 3, 5), (1, 4, 2), (5, 5, 0), (2, 1, 3)];
    for level in -3..=3 {
        for &(a, b, c) in &picks {
            let e = |k: usize| TwistedElement::new(level, g.minor(&sets[k]).unwrap());
            let ab = twisted_product(alg, level, &e(a), &e(b)).unwrap();
            let left = twisted_product(alg, level, &ab, &e(c)).unwrap();
            let bc = twisted_product(alg, level, &e(b), &e(c)).unwrap();
            let right = twisted_product(alg, level, &e(a), &bc).unwrap();
            assert_eq!(left, right, "level {level}");
        }
        // sums of minors too
        let s = g.minor(&sets[0]).unwrap().add(&g.minor(&sets[4]).unwrap()).unwrap();
        let x = TwistedElement::new(level, s);
        let y = TwistedElement::new(level, g.minor(&sets[2]).unwrap());
        let left = twisted_product(alg, level, &twisted_product(alg, level, &x, &y).unwrap(), &x).unwrap();
        let right = twisted_product(alg, level, &x, &twisted_product(alg, level, &y, &x).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn twisted_unit() {
    let g = Grassmannian::new(2, 4).unwrap();
    let one = TwistedElement::new(2, g.algebra().one());
    let x = TwistedElement::new(2, g.minor(&"13".parse().unwrap()).unwrap());
    assert_eq!(twisted_product(g.algebra(), 2, &one, &x).unwrap(), x);
    assert_eq!(twisted_product(g.algebra(), 2, &x, &one).unwrap(), x);
    let other = TwistedElement::new(1, g.algebra().scalar(Laurent::one()));
    assert!(twisted_product(g.algebra(), 2, &other, &x).is_err());
}

#[test]
fn twisted_products_of_nonzero_minors_are_nonzero() {
    let g = Grassmannian::new(2, 5).unwrap();
    for level in -3..=3 {
        for i in subsets(5, 2) {
            for j in subsets(5, 2) {
                let a = TwistedElement::new(level, g.minor(&i).unwrap());
                let b = TwistedElement::new(level, g.minor(&j).unwrap());
                assert!(!twisted_product(g.algebra(), level, &a, &b).unwrap().value.is_zero());
            }
        }
    }
}

#[test]
fn level_one_structure_constants() {
    let g = Grassmannian::new(2, 4).unwrap();
    for i in subsets(4, 2) {
        for j in subsets(4, 2) {
            let a = TwistedElement::new(1, g.minor(&i).unwrap());
            let b = TwistedElement::new(1, g.minor(&j).unwrap());
            let prod = twisted_product(g.algebra(), 1, &a, &b).unwrap();
            let s = qgr_core::twist::minor_tower_scalar(1, &i, &j, 4).unwrap();
            assert_eq!(prod.value, g.product(&i, &j).unwrap().scale(&s));
            // One step of each tower applied to shifted gradings cancels.
            let up = cocycle_exp(
                CocycleKind::SmallGamma,
                &i.shift(1, 4).content(4),
                &j.shift(1, 4).content(4),
            )
            .unwrap();
            let down = cocycle_exp(CocycleKind::Gamma, &i.content(4), &j.content(4)).unwrap();
            assert_eq!(up + down, 0);
        }
    }
}
