use std::collections::BTreeMap;
use std::fmt;

use super::Dehom;
use crate::error::Result;
use crate::grassmann::tilde;
use crate::qmatrix::{format_word, Gen, NcPoly, Word};
use crate::scalars::Laurent;

/// An element of `A_α`: `Σ c · w · y^k` with `w` a PBW word in the `x`'s.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewElement {
    pub alpha_t: usize,
    terms: BTreeMap<(Word, i64), Laurent>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkewLetter {
    X(Gen),
    /// `y^k`
    Y(i64),
}

impl SkewElement {
    pub fn zero(alpha_t: usize) -> Self {
        Self {
            alpha_t,
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, i64), &Laurent)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&mut self, w: Word, k: i64, c: Laurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((w.clone(), k)).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&(w, k));
        }
    }

    /// `x-part * y^k`.
    pub fn from_matrix_part(alpha_t: usize, x: &NcPoly, k: i64) -> Self {
        let mut out = Self::zero(alpha_t);
        for (w, c) in x.terms() {
            out.add(w.clone(), k, c.clone());
        }
        out
    }
}

impl fmt::Display for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, ((w, k), c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let word = if w.is_empty() && *k != 0 {
                String::new()
            } else {
                format_word(w)
            };
            write!(f, "({c}) * {word}")?;
            if *k != 0 {
                write!(f, "y^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewElement[α~={}]({self})", self.alpha_t)
    }
}

impl Dehom {
    /// The exponent of `q` picked up by moving `y^k` right across `w`.
    fn y_shift(&self, alpha: i64, k: i64, w: &[Gen]) -> Result<i64> {
        let mut e = 0;
        for g in w {
            e += self.sigma_exponent(alpha, g.row as usize, g.col as usize)?;
        }
        Ok(k * e)
    }

    pub fn skew_mul(&self, alpha: i64, a: &SkewElement, b: &SkewElement) -> Result<SkewElement> {
        let q = self.m as i64;
        let mut out = SkewElement::zero(tilde(alpha, self.n));
        for ((w1, k1), c1) in &a.terms {
            for ((w2, k2), c2) in &b.terms {
                let shift = self.y_shift(alpha, *k1, w2)?;
                let coeff = &(c1 * c2) * &Laurent::u_pow(shift * q);
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                let nf = self.xalg.normal_form(&w, coeff)?;
                for (wn, cn) in nf.terms() {
                    out.add(wn.clone(), k1 + k2, cn.clone());
                }
            }
        }
        Ok(out)
    }

    /// Normal form of `coeff * l_1 l_2 ⋯` with `y` powers moved right.
    pub fn skew_normal_form(&self, alpha: i64, letters: &[SkewLetter], coeff: Laurent) -> Result<SkewElement> {
        let at = tilde(alpha, self.n);
        let mut acc = SkewElement::zero(at);
        acc.add(Vec::new(), 0, coeff);
        for l in letters {
            let f = match *l {
                SkewLetter::X(g) => {
                    self.check_ij(g.row as usize, g.col as usize)?;
                    let mut e = SkewElement::zero(at);
                    e.add(vec![g], 0, Laurent::one());
                    e
                }
                SkewLetter::Y(k) => {
                    let mut e = SkewElement::zero(at);
                    e.add(Vec::new(), k, Laurent::one());
                    e
                }
            };
            acc = self.skew_mul(alpha, &acc, &f)?;
        }
        Ok(acc)
    }

    /// The quantum minor `[K|L]` of the `x` matrix.
    pub fn x_minor(&self, k: &[usize], l: &[usize]) -> NcPoly {
        use itertools::Itertools;
        let t = k.len();
        let neg_q = -self.xalg.q();
        let terms = (0..t).permutations(t).map(|sigma| {
            let inv = (0..t)
                .tuple_combinations()
                .filter(|&(a, b)| sigma[a] > sigma[b])
                .count();
            let word: Word = (0..t).map(|r| Gen::new(k[r], l[sigma[r]])).collect();
            (word, neg_q.pow(inv as u32))
        });
        NcPoly::from_terms(self.xalg.shape(), terms)
    }
}
