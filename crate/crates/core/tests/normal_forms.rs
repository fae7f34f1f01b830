use std::collections::BTreeMap;

use proptest::prelude::*;
use qgr_core::qmatrix::{Gen, NcPoly, QuantumMatrixAlgebra, Word};
use qgr_core::scalars::Laurent;

/// Straightforward rewriting: repeatedly fix the leftmost descending pair
/// of some term, using the defining relations written out directly.
fn naive_normal_form(q_exp: i64, word: &[Gen]) -> BTreeMap<Word, Laurent> {
    let q = Laurent::u_pow(q_exp);
    let qi = Laurent::u_pow(-q_exp);
    let mut done: BTreeMap<Word, Laurent> = BTreeMap::new();
    let mut todo: Vec<(Word, Laurent)> = vec![(word.to_vec(), Laurent::one())];
    while let Some((w, c)) = todo.pop() {
        let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) else {
            let slot = done.entry(w.clone()).or_default();
            *slot += &c;
            if slot.is_zero() {
                done.remove(&w);
            }
            continue;
        };
        // w[k] = X[a,b] > w[k+1] = X[r,s]
        let (hi, lo) = (w[k], w[k + 1]);
        let with = |pair: [Gen; 2]| {
            let mut v = w.clone();
            v[k] = pair[0];
            v[k + 1] = pair[1];
            v
        };
        if hi.row == lo.row || hi.col == lo.col {
            todo.push((with([lo, hi]), &c * &qi));
        } else if hi.col > lo.col {
            // X[k,l] X[i,j] = X[i,j] X[k,l] - (q - q^-1) X[i,l] X[k,j]
            todo.push((with([lo, hi]), c.clone()));
            let corr = Gen {
                row: lo.row,
                col: hi.col,
            };
            let other = Gen {
                row: hi.row,
                col: lo.col,
            };
            todo.push((with([corr, other]), -(&c * &(&q - &qi))));
        } else {
            todo.push((with([lo, hi]), c));
        }
    }
    done
}

fn gen_strategy(rows: u16, cols: u16) -> impl Strategy<Value = Gen> {
    (1..=rows, 1..=cols).prop_map(|(row, col)| Gen { row, col })
}

fn word_strategy(rows: u16, cols: u16) -> impl Strategy<Value = Word> {
    prop::collection::vec(gen_strategy(rows, cols), 0..=4)
}

fn shape_strategy() -> impl Strategy<Value = (u16, u16)> {
    prop::sample::select(vec![(2u16, 2u16), (2, 3), (3, 3)])
}

fn nf(alg: &QuantumMatrixAlgebra, w: &[Gen]) -> NcPoly {
    alg.normal_form(w, Laurent::one()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn memoized_normal_form_matches_naive_rewriting(
        (w, q_exp) in shape_strategy().prop_flat_map(|(r, c)| (prop::collection::vec(gen_strategy(r, c), 0..=6), 1..=3i64)),
    ) {
        let alg = QuantumMatrixAlgebra::new(3, 3, q_exp).unwrap();
        let fast = nf(&alg, &w);
        let slow = naive_normal_form(q_exp, &w);
        let fast_map: BTreeMap<Word, Laurent> = fast.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        prop_assert_eq!(fast_map, slow);
    }

    #[test]
    fn normal_form_is_associative(
        (r, c, a, b, d) in shape_strategy().prop_flat_map(|(r, c)| (Just(r), Just(c), word_strategy(r, c), word_strategy(r, c), word_strategy(r, c))),
    ) {
        let alg = QuantumMatrixAlgebra::new(r as usize, c as usize, 1).unwrap();
        let (pa, pb, pd) = (nf(&alg, &a), nf(&alg, &b), nf(&alg, &d));
        let left = alg.mul(&alg.mul(&pa, &pb).unwrap(), &pd).unwrap();
        let right = alg.mul(&pa, &alg.mul(&pb, &pd).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normal_form_is_idempotent(
        (r, c, w) in shape_strategy().prop_flat_map(|(r, c)| (Just(r), Just(c), word_strategy(r, c))),
    ) {
        let alg = QuantumMatrixAlgebra::new(r as usize, c as usize, 2).unwrap();
        let once = nf(&alg, &w);
        let twice = alg.normalize_terms(once.terms().map(|(w, c)| (w.as_slice(), c.clone()))).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn classical_limit_is_commutative(
        (r, c, a, b) in shape_strategy().prop_flat_map(|(r, c)| (Just(r), Just(c), word_strategy(r, c), word_strategy(r, c))),
    ) {
        let alg = QuantumMatrixAlgebra::new(r as usize, c as usize, 1).unwrap();
        let (pa, pb) = (nf(&alg, &a), nf(&alg, &b));
        let ab = alg.mul(&pa, &pb).unwrap();
        let ba = alg.mul(&pb, &pa).unwrap();
        prop_assert_eq!(ab.at_one(), ba.at_one());
    }
}

#[test]
fn two_by_two_relations() {
    let alg = QuantumMatrixAlgebra::new(2, 2, 1).unwrap();
    let g = |i, j| Gen::new(i, j);
    let q = Laurent::u_pow(1);
    let qi = Laurent::u_pow(-1);
    // d a = a d - (q - q^-1) b c
    let da = nf(&alg, &[g(2, 2), g(1, 1)]);
    let mut expect = BTreeMap::new();
    expect.insert(vec![g(1, 1), g(2, 2)], Laurent::one());
    expect.insert(vec![g(1, 2), g(2, 1)], -(&q - &qi));
    let got: BTreeMap<Word, Laurent> = da.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    assert_eq!(got, expect);
    // c b = b c
    assert_eq!(nf(&alg, &[g(2, 1), g(1, 2)]).coeff(&[g(1, 2), g(2, 1)]), Laurent::one());
    // b a = q^-1 a b
    assert_eq!(nf(&alg, &[g(1, 2), g(1, 1)]).coeff(&[g(1, 1), g(1, 2)]), qi);
}
