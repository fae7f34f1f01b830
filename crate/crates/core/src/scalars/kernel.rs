//! Right kernels of matrices over Z[u, u^-1] by fraction-free Gauss-Jordan
//! elimination.
//!
//! Every step replaces `a[i][j]` with `(piv * a[i][j] - a[i][c] * a[r][j]) / prev`
//! where `prev` is the previous pivot. The division is exact over any integral
//! domain, so no fractions are ever formed. At the end every pivot column holds
//! the same scalar `d` in its pivot row, and the kernel vector of a free column
//! `f` is `d` at `f` and `-a[i][f]` at the pivot column of row `i`.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::Laurent;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<Laurent>>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Right kernel of `mat` (given as rows, each of length `ncols`).
///
/// Vectors come out in increasing order of their free column, and each is
/// normalized: the polynomial gcd of its entries is divided out, the lowest
/// `u`-exponent is shifted to zero, and the first nonzero entry has a positive
/// lowest-degree coefficient.
pub fn ff_kernel(mat: &[Vec<Laurent>], ncols: usize) -> KernelBasis {
    let mut a: Vec<Vec<Laurent>> = mat
        .iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    for row in &a {
        assert_eq!(row.len(), ncols, "ragged matrix passed to ff_kernel");
    }
    let rows = a.len();
    let mut prev = Laurent::one();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for j in 0..ncols {
                let num = &(&piv * &row[j]) - &(&f * &pivot_row[j]);
                row[j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination step must divide exactly");
            }
        }
        prev = piv;
        pivot_cols.push(c);
        r += 1;
    }

    let mut vectors = Vec::new();
    for f in 0..ncols {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![Laurent::zero(); ncols];
        v[f] = prev.clone();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&a[i][f];
        }
        vectors.push(normalize(v));
    }
    KernelBasis { vectors }
}

pub(crate) fn normalize(mut v: Vec<Laurent>) -> Vec<Laurent> {
    let g = v
        .iter()
        .fold(Laurent::zero(), |acc, x| if x.is_zero() { acc } else { acc.gcd(x) });
    if g.is_zero() {
        return v;
    }
    for x in v.iter_mut() {
        *x = x.div_exact(&g).expect("gcd divides every entry");
    }
    let lo = v.iter().filter_map(|x| x.min_exp()).min().unwrap_or(0);
    for x in v.iter_mut() {
        *x = x.shift(-lo);
    }
    let negate = v
        .iter()
        .find(|x| !x.is_zero())
        .and_then(|x| x.terms().next().map(|(_, c)| c.is_negative()))
        .unwrap_or(false);
    if negate {
        for x in v.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
    v
}
