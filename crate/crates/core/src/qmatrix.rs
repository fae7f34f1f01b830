//! The quantum matrix algebra `O_q(M_{m,n})` as a rewriting system over PBW
//! words.
//!
//! Generators are ordered row-major (`X[1,1] < X[1,2] < ... < X[2,1] < ...`)
//! and a word is normal when it is nondecreasing. Each descending adjacent
//! pair `A B` (with `A > B`) rewrites as follows, where `B = X[i,j]`:
//!
//! | `A`        | rewrite of `A B`                             |
//! |------------|----------------------------------------------|
//! | `X[i,l]`, `l > j` | `q^-1 B A`                            |
//! | `X[k,j]`, `k > i` | `q^-1 B A`                            |
//! | `X[k,l]`, `k > i, l > j` | `B A - (q - q^-1) X[i,l] X[k,j]` |
//! | `X[k,l]`, `k > i, l < j` | `B A`                          |
//!
//! Normal forms are computed by inserting letters one at a time into an
//! already-normal word. Insertions are memoized per algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{monomial_ratio, Laurent};

/// The generator `X[row, col]`, 1-based. The derived order is row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gen {
    pub row: u16,
    pub col: u16,
}

impl Gen {
    pub fn new(row: usize, col: usize) -> Self {
        Self {
            row: row as u16,
            col: col as u16,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X[{},{}]", self.row, self.col)
    }
}

pub type Word = Vec<Gen>;

pub fn format_word(w: &[Gen]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(|g| g.to_string()).collect()
}

/// Parses `X[1,2]X[2,1]`; `1` is the empty word.
pub fn parse_word(s: &str) -> Result<Word> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "1" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix("X[")
            .ok_or_else(|| Error::Parse(format!("expected X[ at {rest:?}")))?;
        let close = body
            .find(']')
            .ok_or_else(|| Error::Parse(format!("unterminated generator in {s:?}")))?;
        let (i, j) = body[..close]
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected X[i,j] in {s:?}")))?;
        let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad row in {s:?}")))?;
        let j: usize = j.parse().map_err(|_| Error::Parse(format!("bad column in {s:?}")))?;
        out.push(Gen::new(i, j));
        rest = &body[close + 1..];
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub rows: usize,
    pub cols: usize,
}

/// A noncommutative polynomial stored in PBW normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NcPoly {
    shape: Shape,
    terms: BTreeMap<Word, Laurent>,
}

impl NcPoly {
    pub fn zero(shape: Shape) -> Self {
        Self {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Laurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[Gen]) -> Laurent {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(&Word, &Laurent)> {
        self.terms.iter().next()
    }

    fn add_term(&mut self, w: Word, c: Laurent) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        let mut out = Self::zero(self.shape);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &NcPoly) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NcPoly) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        Ok(out)
    }

    /// In-place `self += c * other`.
    pub fn add_scaled(&mut self, other: &NcPoly, c: &Laurent) -> Result<()> {
        self.check_shape(other)?;
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
        Ok(())
    }

    fn check_shape(&self, other: &NcPoly) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ContextMismatch(format!(
                "{}x{} vs {}x{}",
                self.shape.rows, self.shape.cols, other.shape.rows, other.shape.cols
            )));
        }
        Ok(())
    }

    /// Column content: entry `j-1` counts occurrences of column `j`.
    pub fn word_content(shape: Shape, w: &[Gen]) -> Vec<i64> {
        let mut c = vec![0i64; shape.cols];
        for g in w {
            c[g.col as usize - 1] += 1;
        }
        c
    }

    /// Splits by column content.
    pub fn homogeneous_parts(&self) -> BTreeMap<Vec<i64>, NcPoly> {
        let mut parts: BTreeMap<Vec<i64>, NcPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            parts
                .entry(Self::word_content(self.shape, w))
                .or_insert_with(|| NcPoly::zero(self.shape))
                .add_term(w.clone(), c.clone());
        }
        parts
    }

    /// The column content if every term shares it.
    pub fn content(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|w| Self::word_content(self.shape, w));
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    /// Specialization at `u = 1`; normal words are sorted, so this is the
    /// commutative polynomial with each word read as a monomial.
    pub fn at_one(&self) -> BTreeMap<Word, BigInt> {
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), c.eval_at_one()))
            .filter(|(_, c)| *c != BigInt::from(0))
            .collect()
    }

    /// `Some(s)` with `self = s * other`, when the two are proportional.
    pub fn ratio_to(&self, other: &NcPoly) -> Option<Laurent> {
        if self.shape != other.shape || other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let (w, c) = other.leading()?;
        let s = self.coeff(w).div_exact(c)?;
        (other.scale(&s) == *self).then_some(s)
    }

    pub fn from_terms(shape: Shape, terms: impl IntoIterator<Item = (Word, Laurent)>) -> Self {
        let mut out = Self::zero(shape);
        for (w, c) in terms {
            debug_assert!(w.windows(2).all(|p| p[0] <= p[1]), "from_terms needs normal words");
            out.add_term(w, c);
        }
        out
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) * {}", format_word(w))?;
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPoly[{}x{}]({self})", self.shape.rows, self.shape.cols)
    }
}

type Insertion = Arc<Vec<(Word, Laurent)>>;

/// `O_q(M_{rows,cols})` with `q = u^q_exp`.
pub struct QuantumMatrixAlgebra {
    shape: Shape,
    q_exp: i64,
    q_inv: Laurent,
    q_diff: Laurent,
    cache: RwLock<HashMap<(Word, Gen), Insertion>>,
}

impl fmt::Debug for QuantumMatrixAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuantumMatrixAlgebra")
            .field("shape", &self.shape)
            .field("q_exp", &self.q_exp)
            .finish()
    }
}

/// One rewrite of a descending pair: `coeff * first * second`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRewrite {
    pub coeff: Laurent,
    pub first: Gen,
    pub second: Gen,
}

impl QuantumMatrixAlgebra {
    pub fn new(rows: usize, cols: usize, q_exp: i64) -> Result<Self> {
        if rows == 0 || cols == 0 || q_exp == 0 {
            return Err(Error::InvalidContext(format!(
                "quantum matrix {rows}x{cols} with q=u^{q_exp}"
            )));
        }
        let q = Laurent::u_pow(q_exp);
        let q_inv = Laurent::u_pow(-q_exp);
        Ok(Self {
            shape: Shape { rows, cols },
            q_exp,
            q_diff: &q - &q_inv,
            q_inv,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn q_exp(&self) -> i64 {
        self.q_exp
    }

    pub fn q(&self) -> Laurent {
        Laurent::u_pow(self.q_exp)
    }

    pub fn check_gen(&self, g: Gen) -> Result<()> {
        let (r, c) = (g.row as usize, g.col as usize);
        if r == 0 || c == 0 || r > self.shape.rows || c > self.shape.cols {
            return Err(Error::IndexOutOfBounds {
                row: r,
                col: c,
                rows: self.shape.rows,
                cols: self.shape.cols,
            });
        }
        Ok(())
    }

    pub fn one(&self) -> NcPoly {
        NcPoly::from_terms(self.shape, [(Vec::new(), Laurent::one())])
    }

    pub fn scalar(&self, c: Laurent) -> NcPoly {
        NcPoly::from_terms(self.shape, [(Vec::new(), c)])
    }

    pub fn generator(&self, row: usize, col: usize) -> Result<NcPoly> {
        let g = Gen::new(row, col);
        self.check_gen(g)?;
        Ok(NcPoly::from_terms(self.shape, [(vec![g], Laurent::one())]))
    }

    /// The rewrite of `a b` for a descending pair `a > b`.
    pub fn rewrite_pair(&self, a: Gen, b: Gen) -> Vec<PairRewrite> {
        debug_assert!(a > b);
        let one = || Laurent::one();
        if a.row == b.row || a.col == b.col {
            vec![PairRewrite {
                coeff: self.q_inv.clone(),
                first: b,
                second: a,
            }]
        } else if a.col > b.col {
            // a = X[k,l], b = X[i,j] with k > i, l > j
            vec![
                PairRewrite {
                    coeff: one(),
                    first: b,
                    second: a,
                },
                PairRewrite {
                    coeff: -&self.q_diff,
                    first: Gen { row: b.row, col: a.col },
                    second: Gen { row: a.row, col: b.col },
                },
            ]
        } else {
            vec![PairRewrite {
                coeff: one(),
                first: b,
                second: a,
            }]
        }
    }

    /// Normal form of `normal_word * g`.
    fn insert(&self, word: &[Gen], g: Gen) -> Insertion {
        match word.last() {
            None => return Arc::new(vec![(vec![g], Laurent::one())]),
            Some(&last) if last <= g => {
                let mut w = word.to_vec();
                w.push(g);
                return Arc::new(vec![(w, Laurent::one())]);
            }
            _ => {}
        }
        let key = (word.to_vec(), g);
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let (prefix, last) = word.split_at(word.len() - 1);
        let mut acc: BTreeMap<Word, Laurent> = BTreeMap::new();
        for rw in self.rewrite_pair(last[0], g) {
            for (w1, c1) in self.insert(prefix, rw.first).iter() {
                let c1 = c1 * &rw.coeff;
                for (w2, c2) in self.insert(w1, rw.second).iter() {
                    let c = &c1 * c2;
                    let slot = acc.entry(w2.clone()).or_default();
                    *slot += &c;
                }
            }
        }
        let result: Insertion = Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.cache.write().unwrap().insert(key, result.clone());
        result
    }

    /// PBW normal form of `coeff * word`.
    pub fn normal_form(&self, word: &[Gen], coeff: Laurent) -> Result<NcPoly> {
        for &g in word {
            self.check_gen(g)?;
        }
        let mut cur: BTreeMap<Word, Laurent> = BTreeMap::new();
        if coeff.is_zero() {
            return Ok(NcPoly::zero(self.shape));
        }
        cur.insert(Vec::new(), coeff);
        for &g in word {
            let mut next: BTreeMap<Word, Laurent> = BTreeMap::new();
            for (w, c) in &cur {
                for (w2, c2) in self.insert(w, g).iter() {
                    *next.entry(w2.clone()).or_default() += &(c * c2);
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        Ok(NcPoly {
            shape: self.shape,
            terms: cur,
        })
    }

    /// Normal form of an arbitrary linear combination of words.
    pub fn normalize_terms<'a>(&self, terms: impl IntoIterator<Item = (&'a [Gen], Laurent)>) -> Result<NcPoly> {
        let mut out = NcPoly::zero(self.shape);
        for (w, c) in terms {
            let nf = self.normal_form(w, c)?;
            out.add_scaled(&nf, &Laurent::one())?;
        }
        Ok(out)
    }

    fn check_poly(&self, a: &NcPoly) -> Result<()> {
        if a.shape != self.shape {
            return Err(Error::ContextMismatch(format!(
                "polynomial over {}x{} used in the {}x{} algebra",
                a.shape.rows, a.shape.cols, self.shape.rows, self.shape.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
        self.check_poly(a)?;
        self.check_poly(b)?;
        let mut out: BTreeMap<Word, Laurent> = BTreeMap::new();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let mut cur: BTreeMap<Word, Laurent> = BTreeMap::new();
                cur.insert(wa.clone(), ca * cb);
                for &g in wb {
                    let mut next: BTreeMap<Word, Laurent> = BTreeMap::new();
                    for (w, c) in &cur {
                        for (w2, c2) in self.insert(w, g).iter() {
                            *next.entry(w2.clone()).or_default() += &(c * c2);
                        }
                    }
                    next.retain(|_, c| !c.is_zero());
                    cur = next;
                }
                for (w, c) in cur {
                    *out.entry(w).or_default() += &c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(NcPoly {
            shape: self.shape,
            terms: out,
        })
    }

    pub fn product(&self, factors: &[&NcPoly]) -> Result<NcPoly> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `r` with `b a = q^r a b`, if the two quasi-commute.
    pub fn quasi_commutation_exponent(&self, a: &NcPoly, b: &NcPoly) -> Result<Option<i64>> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroInput("quasi_commutation_exponent"));
        }
        let ab = self.mul(a, b)?;
        let ba = self.mul(b, a)?;
        Ok(quasi_ratio(&ab, &ba, self.q_exp))
    }

    /// Parses `term (+ term)*` with `term := [(scalar) *] word`.
    pub fn parse_expr(&self, s: &str) -> Result<NcPoly> {
        let mut out = NcPoly::zero(self.shape);
        for raw in split_top_level(s, '+') {
            let t = raw.trim();
            if t.is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            let (coeff, word) = if let Some(rest) = t.strip_prefix('(') {
                let close = rest
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {t:?}")))?;
                let c: Laurent = rest[..close].parse()?;
                let tail = rest[close + 1..].trim();
                let tail = tail.strip_prefix('*').unwrap_or(tail).trim();
                (c, if tail.is_empty() { "1" } else { tail })
            } else if let Some(rest) = t.strip_prefix('-') {
                (-Laurent::one(), rest.trim())
            } else {
                (Laurent::one(), t)
            };
            let w = parse_word(word)?;
            let nf = self.normal_form(&w, coeff)?;
            out.add_scaled(&nf, &Laurent::one())?;
        }
        Ok(out)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().unwrap().len()
    }
}

/// `r` with `ba = q^r ab` given both normal forms.
pub fn quasi_ratio(ab: &NcPoly, ba: &NcPoly, q_exp: i64) -> Option<i64> {
    let (w, c) = ab.leading()?;
    let r = monomial_ratio(c, &ba.coeff(w), q_exp).ok()??;
    (ab.scale(&Laurent::u_pow(r * q_exp)) == *ba).then_some(r)
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (r, c) = s
            .split_once('x')
            .ok_or_else(|| Error::Parse(format!("expected RxC, got {s:?}")))?;
        Ok(Shape {
            rows: r.parse().map_err(|_| Error::Parse(s.into()))?,
            cols: c.parse().map_err(|_| Error::Parse(s.into()))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(m: usize, n: usize) -> QuantumMatrixAlgebra {
        QuantumMatrixAlgebra::new(m, n, m as i64).unwrap()
    }

    fn x(i: usize, j: usize) -> Gen {
        Gen::new(i, j)
    }

    #[test]
    fn same_row_pair() {
        let a = alg(2, 2);
        let nf = a.normal_form(&[x(1, 2), x(1, 1)], Laurent::one()).unwrap();
        let expect = NcPoly::from_terms(a.shape(), [(vec![x(1, 1), x(1, 2)], Laurent::u_pow(-2))]);
        assert_eq!(nf, expect);
    }

    #[test]
    fn antidiagonal_pair_commutes() {
        let a = alg(2, 2);
        let nf = a.normal_form(&[x(2, 1), x(1, 2)], Laurent::one()).unwrap();
        let expect = NcPoly::from_terms(a.shape(), [(vec![x(1, 2), x(2, 1)], Laurent::one())]);
        assert_eq!(nf, expect);
    }

    #[test]
    fn diagonal_pair() {
        let a = alg(2, 2);
        let nf = a.normal_form(&[x(2, 2), x(1, 1)], Laurent::one()).unwrap();
        let q = a.q();
        let qd = &q - &Laurent::u_pow(-2);
        let expect = NcPoly::from_terms(
            a.shape(),
            [(vec![x(1, 1), x(2, 2)], Laurent::one()), (vec![x(1, 2), x(2, 1)], -qd)],
        );
        assert_eq!(nf, expect);
    }

    #[test]
    fn out_of_bounds_rejected() {
        let a = alg(2, 2);
        assert!(matches!(
            a.normal_form(&[x(3, 1)], Laurent::one()),
            Err(Error::IndexOutOfBounds { .. })
        ));
        assert!(a.generator(1, 0).is_err());
    }

    #[test]
    fn normal_input_is_fixed() {
        let a = alg(2, 3);
        let w = vec![x(1, 1), x(1, 3), x(2, 2), x(2, 2)];
        let nf = a.normal_form(&w, Laurent::one()).unwrap();
        assert_eq!(nf, NcPoly::from_terms(a.shape(), [(w, Laurent::one())]));
    }

    #[test]
    fn context_mismatch() {
        let a = alg(2, 2);
        let b = alg(2, 3);
        let g = b.generator(1, 3).unwrap();
        assert!(matches!(a.mul(&a.one(), &g), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn unit_and_normal_products() {
        let a = alg(2, 4);
        let g = a.generator(2, 3).unwrap();
        assert_eq!(a.mul(&a.one(), &g).unwrap(), g);
        let p = a.mul(&a.generator(1, 1).unwrap(), &a.generator(1, 2).unwrap()).unwrap();
        assert_eq!(
            p,
            NcPoly::from_terms(a.shape(), [(vec![x(1, 1), x(1, 2)], Laurent::one())])
        );
    }

    #[test]
    fn word_text_roundtrip() {
        let w = vec![x(1, 2), x(2, 1)];
        assert_eq!(format_word(&w), "X[1,2]X[2,1]");
        assert_eq!(parse_word("X[1,2]X[2,1]").unwrap(), w);
        assert_eq!(parse_word("1").unwrap(), Vec::<Gen>::new());
        assert!(parse_word("X[1,2").is_err());
        assert!(parse_word("Y[1,2]").is_err());
    }

    #[test]
    fn expression_parsing() {
        let a = alg(2, 2);
        let p = a.parse_expr("X[2,2]X[1,1] + -X[1,1]X[2,2]").unwrap();
        let qd = &a.q() - &Laurent::u_pow(-2);
        assert_eq!(p, NcPoly::from_terms(a.shape(), [(vec![x(1, 2), x(2, 1)], -qd)]));
        let p2 = a.parse_expr("(2 + u) * X[1,2]").unwrap();
        assert_eq!(p2.to_string(), "(2 + 1*u) * X[1,2]");
        assert_eq!(a.parse_expr(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn quasi_commuting_generators() {
        let a = alg(2, 2);
        let x11 = a.generator(1, 1).unwrap();
        let x12 = a.generator(1, 2).unwrap();
        let x22 = a.generator(2, 2).unwrap();
        // X12 X11 = q^-1 X11 X12
        assert_eq!(a.quasi_commutation_exponent(&x11, &x12).unwrap(), Some(-1));
        assert_eq!(a.quasi_commutation_exponent(&x11, &x22).unwrap(), None);
        assert!(a.quasi_commutation_exponent(&NcPoly::zero(a.shape()), &x11).is_err());
    }
}
