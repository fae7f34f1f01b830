//! Exact rational matrices and the dihedral action on them.
//!
//! `c·A = ((-1)^{m-1} v_n, v_1, …, v_{n-1})` and
//! `w0·A = R_m (v_n, …, v_1)` with `R_m = diag((-1)^{⌊m/2⌋}, 1, …, 1)`.
//! Both satisfy `Δ_I(A) = Δ_{g(I)}(g·A)`.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grassmann::{subsets, IndexSet};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigRational>>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![vec![BigRational::zero(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<BigRational>>) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_ints(data: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            data.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }

    /// `(I_m | 0)`.
    pub fn identity_padded(m: usize, n: usize) -> Self {
        let mut a = Self::zeros(m, n);
        for i in 0..m.min(n) {
            a.data[i][i] = BigRational::one();
        }
        a
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i][j]
    }

    pub fn data(&self) -> &[Vec<BigRational>] {
        &self.data
    }

    fn column(&self, j: usize) -> Vec<BigRational> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    fn from_columns(rows: usize, cols: Vec<Vec<BigRational>>) -> Self {
        let n = cols.len();
        let data = (0..rows)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect();
        Self { rows, cols: n, data }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|x| x * s).collect()).collect(),
        }
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        Ok(out)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            eliminate_below(&mut a, r, c);
            r += 1;
        }
        r
    }

    /// Sign-corrected right rotation of the columns.
    pub fn cyc_act(&self) -> Self {
        let m = self.rows;
        let n = self.cols;
        let sign = if m % 2 == 1 { rat(1, 1) } else { rat(-1, 1) };
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        cols.push(self.column(n - 1).into_iter().map(|x| x * &sign).collect());
        for j in 0..n - 1 {
            cols.push(self.column(j));
        }
        Self::from_columns(m, cols)
    }

    /// Inverse of [`Self::cyc_act`].
    pub fn cyc_inv_act(&self) -> Self {
        let m = self.rows;
        let n = self.cols;
        let sign = if m % 2 == 1 { rat(1, 1) } else { rat(-1, 1) };
        let mut cols: Vec<Vec<BigRational>> = (1..n).map(|j| self.column(j)).collect();
        cols.push(self.column(0).into_iter().map(|x| x * &sign).collect());
        Self::from_columns(m, cols)
    }

    /// Column reversal followed by `R_m`.
    pub fn w0_act(&self) -> Self {
        let cols: Vec<Vec<BigRational>> = (0..self.cols).rev().map(|j| self.column(j)).collect();
        let mut out = Self::from_columns(self.rows, cols);
        if (self.rows / 2) % 2 == 1 && self.rows > 0 {
            for x in out.data[0].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        out
    }

    /// `Δ_I(A)`, by elimination on the chosen columns.
    pub fn minor_value(&self, i: &IndexSet) -> Result<BigRational> {
        if i.len() != self.rows {
            return Err(Error::WrongCardinality {
                set: i.to_string(),
                found: i.len(),
                expected: self.rows,
            });
        }
        if i.max().is_some_and(|x| x > self.cols) {
            return Err(Error::InvalidIndexSet(format!("{i} exceeds n={}", self.cols)));
        }
        let mut a: Vec<Vec<BigRational>> = self
            .data
            .iter()
            .map(|r| i.elems().iter().map(|&j| r[j - 1].clone()).collect())
            .collect();
        Ok(det_elimination(&mut a))
    }

    pub fn minors(&self) -> Vec<(IndexSet, BigRational)> {
        subsets(self.cols, self.rows)
            .into_iter()
            .map(|i| {
                let v = self.minor_value(&i).expect("subset sizes match");
                (i, v)
            })
            .collect()
    }

    pub fn is_tnn(&self) -> bool {
        self.minors().iter().all(|(_, v)| !v.is_negative())
    }

    pub fn is_tp(&self) -> bool {
        self.minors().iter().all(|(_, v)| v.is_positive())
    }

    /// `(w0 c w0)·A = c^-1·A`.
    pub fn dihedral_relation_check(&self) -> bool {
        self.w0_act().cyc_act().w0_act() == self.cyc_inv_act()
    }

    /// Entries `a/b` with `a` in `-5..=5` and `b` in `1..=5`.
    pub fn random<R: Rng>(rng: &mut R, m: usize, n: usize) -> Self {
        let data = (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=5)))
                    .collect()
            })
            .collect();
        Self { rows: m, cols: n, data }
    }

    /// A totally nonnegative matrix: a positive Vandermonde block or `(I|0)`,
    /// times random nonnegative elementary bidiagonal matrices and a positive
    /// diagonal. Returns whether the start was totally positive too.
    pub fn tnn_witness<R: Rng>(rng: &mut R, m: usize, n: usize) -> (Self, bool) {
        let vandermonde = rng.gen_bool(0.5);
        let mut a = if vandermonde {
            let mut nodes: Vec<i64> = (1..=n as i64 + 3).collect();
            nodes.retain(|_| rng.gen_bool(0.8));
            while nodes.len() < n {
                nodes.push(nodes.last().copied().unwrap_or(0) + 1);
            }
            nodes.truncate(n);
            let data = (0..m)
                .map(|i| nodes.iter().map(|&x| rat(x.pow(i as u32), 1)).collect())
                .collect();
            Self { rows: m, cols: n, data }
        } else {
            Self::identity_padded(m, n)
        };
        for _ in 0..rng.gen_range(0..=2 * n) {
            let j = rng.gen_range(0..n - 1);
            let t = rat(rng.gen_range(0..=3), rng.gen_range(1..=3));
            let mut e = Self::identity_padded(n, n);
            if rng.gen_bool(0.5) {
                e.data[j][j + 1] = t;
            } else {
                e.data[j + 1][j] = t;
            }
            a = a.mul(&e).expect("square factor");
        }
        let mut d = Self::zeros(n, n);
        for j in 0..n {
            d.data[j][j] = rat(rng.gen_range(1..=4), rng.gen_range(1..=4));
        }
        (a.mul(&d).expect("square factor"), vandermonde)
    }
}

/// Clears column `c` below the pivot row `r`.
fn eliminate_below(a: &mut [Vec<BigRational>], r: usize, c: usize) {
    let (top, bottom) = a.split_at_mut(r + 1);
    let pivot = &top[r];
    for row in bottom {
        if !row[c].is_zero() {
            let f = &row[c] / &pivot[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= &f * p;
            }
        }
    }
}

/// Determinant by fraction-carrying Gaussian elimination.
pub fn det_elimination(a: &mut [Vec<BigRational>]) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        eliminate_below(a, c, c);
    }
    det
}

/// Determinant by Laplace expansion along the first row.
pub fn det_laplace(a: &[Vec<BigRational>]) -> BigRational {
    let n = a.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut acc = BigRational::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<BigRational>> = a[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &a[0][j] * det_laplace(&sub);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Exact integer determinant of a small matrix by permutation expansion.
pub fn det_i64(a: &[&[i64]]) -> i64 {
    let n = a.len();
    match n {
        0 => 1,
        1 => a[0][0],
        2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
        _ => (0..n)
            .permutations(n)
            .map(|p| {
                let inv = (0..n).tuple_combinations().filter(|&(x, y)| p[x] > p[y]).count();
                let prod: i64 = (0..n).map(|r| a[r][p[r]]).product();
                if inv % 2 == 0 {
                    prod
                } else {
                    -prod
                }
            })
            .sum(),
    }
}

fn fmt_rat(x: &BigRational) -> String {
    if x.is_integer() {
        format!("{}/1", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (a, b) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let a: BigInt = a.trim().parse().map_err(|_| bad())?;
    let b: BigInt = b.trim().parse().map_err(|_| bad())?;
    if b.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(a, b))
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = self.data.iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<Vec<String>> = Vec::deserialize(d)?;
        let rows = v
            .iter()
            .map(|r| r.iter().map(|x| parse_rat(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        RationalMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            writeln!(f, "{}", r.iter().map(fmt_rat).join(" "))?;
        }
        Ok(())
    }
}
