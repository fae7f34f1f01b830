//! Laurent polynomials in one variable `u` with arbitrary-precision integer
//! coefficients.
//!
//! The representation is a sparse map from exponent to coefficient. It is
//! canonical: zero coefficients are never stored, so the zero polynomial is
//! the empty map and structural equality is mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * u^exp`; zero when `coeff` is zero.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn u_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((c, e))` when the value is the single term `c*u^e`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    /// Exponent `e` when the value is exactly `u^e`.
    pub fn unit_exponent(&self) -> Option<i64> {
        match self.as_monomial() {
            Some((c, e)) if c.is_one() => Some(e),
            _ => None,
        }
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiply by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Integer content (gcd of coefficients, nonnegative).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Inverse of a unit `±u^e`; `None` for anything else.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        if c.abs().is_one() {
            Some(Self::monomial(c.clone(), -e))
        } else {
            None
        }
    }

    /// Value at `u = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn eval(&self, u: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = pow_rational(u, *e);
            acc += p * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Dense coefficient vector of `u^{-min} * self`, lowest degree first.
    fn dense(&self) -> (i64, Vec<BigInt>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap_or(lo);
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(lo: i64, v: &[BigInt]) -> Self {
        Self::from_terms(v.iter().enumerate().map(|(i, c)| (lo + i as i64, c.clone())))
    }

    /// Exact quotient `self / divisor` in Z[u, u^-1], if it exists.
    pub fn div_exact(&self, divisor: &Laurent) -> Option<Laurent> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((c, e)) = divisor.as_monomial() {
            let mut terms = BTreeMap::new();
            for (x, y) in &self.terms {
                let (q, r) = y.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                terms.insert(x - e, q);
            }
            return Some(Self { terms });
        }
        let (lo_a, a) = self.dense();
        let (lo_b, b) = divisor.dense();
        let q = poly_div_exact(&a, &b)?;
        Some(Self::from_dense(lo_a - lo_b, &q))
    }

    /// Greatest common divisor in Z[u, u^-1], normalized to a polynomial with
    /// constant term nonzero and positive leading coefficient.
    pub fn gcd(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.normalized_unit();
        }
        if other.is_zero() {
            return self.normalized_unit();
        }
        let (_, a) = self.dense();
        let (_, b) = other.dense();
        let g = poly_gcd(&a, &b);
        Self::from_dense(0, &g)
    }

    fn normalized_unit(&self) -> Laurent {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let s = self.shift(-lo);
        match s.terms.values().next_back() {
            Some(c) if c.is_negative() => -s,
            _ => s,
        }
    }
}

fn pow_rational(u: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { u.recip() } else { u.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    if b.is_empty() {
        return None;
    }
    if rem.len() < b.len() {
        return if rem.is_empty() { Some(Vec::new()) } else { None };
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigInt::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let (c, r) = rem.last().unwrap().div_rem(&lead);
        if !r.is_zero() {
            return None;
        }
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        q[shift] = c;
        trim(&mut rem);
    }
    if rem.is_empty() {
        Some(q)
    } else {
        None
    }
}

fn poly_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let c = poly_content(v);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x / &c).collect();
    trim(&mut out);
    out
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let top = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= &lead;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &top * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive-PRS gcd over Z[u], stripped of factors of `u`.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let cont = poly_content(a).gcd(&poly_content(b));
    let mut p = primitive(a);
    let mut r = primitive(b);
    if p.len() < r.len() {
        std::mem::swap(&mut p, &mut r);
    }
    while !r.is_empty() {
        let rem = prem(&p, &r);
        p = r;
        r = primitive(&rem);
    }
    let mut g = primitive(&p);
    while g.first().is_some_and(|c| c.is_zero()) {
        g.remove(0);
    }
    if g.last().is_some_and(|c| c.is_negative()) {
        for c in g.iter_mut() {
            *c = -c.clone();
        }
    }
    g.iter().map(|c| c * &cont).collect()
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(mut self) -> Laurent {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl MulAssign<&Laurent> for Laurent {
    fn mul_assign(&mut self, rhs: &Laurent) {
        *self = &*self * rhs;
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Laurent {
            type Output = Laurent;
            fn $f(self, rhs: Laurent) -> Laurent {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Laurent> for Laurent {
            type Output = Laurent;
            fn $f(self, rhs: &Laurent) -> Laurent {
                (&self).$f(rhs)
            }
        }
        impl $tr<Laurent> for &Laurent {
            type Output = Laurent;
            fn $f(self, rhs: Laurent) -> Laurent {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Laurent {
    fn sum<I: Iterator<Item = Laurent>>(iter: I) -> Laurent {
        iter.fold(Laurent::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl std::iter::Product for Laurent {
    fn product<I: Iterator<Item = Laurent>>(iter: I) -> Laurent {
        iter.fold(Laurent::one(), |acc, x| &acc * &x)
    }
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Self {
        Laurent::constant(c)
    }
}

/// Terms in ascending exponent order joined by `" + "`, for example
/// `-1*u^-2 + 3 + 2*u^4`. Signs stay on the coefficients.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match *e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*u")?,
                _ => write!(f, "{c}*u^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl FromStr for Laurent {
    type Err = Error;

    /// Accepts the display grammar and a little more: `u`, `-u^3`, `2u`,
    /// and binary `-` between terms.
    fn from_str(s: &str) -> Result<Self> {
        let raw: Vec<char> = s.chars().collect();
        for w in raw.windows(3) {
            if w[1].is_whitespace() && w[0].is_ascii_alphanumeric() && w[2].is_ascii_alphanumeric() {
                return Err(Error::Parse(format!("juxtaposed tokens in {s:?}")));
            }
        }
        let chars: Vec<char> = raw.into_iter().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut pos = 0;
        let mut out = Laurent::zero();
        let mut first = true;
        while pos < chars.len() {
            let mut sign = BigInt::one();
            let mut saw_op = false;
            while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
                if chars[pos] == '-' {
                    sign = -sign;
                }
                saw_op = true;
                pos += 1;
            }
            if !first && !saw_op {
                return Err(Error::Parse(format!("expected '+' or '-' in {s:?}")));
            }
            first = false;
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: BigInt = if pos > start {
                chars[start..pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {s:?}")))?
            } else {
                BigInt::one()
            };
            let had_digits = pos > start;
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
            }
            let mut exp = 0i64;
            if pos < chars.len() && chars[pos] == 'u' {
                pos += 1;
                exp = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let mut neg = false;
                    if pos < chars.len() && chars[pos] == '-' {
                        neg = true;
                        pos += 1;
                    }
                    let st = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if st == pos {
                        return Err(Error::Parse(format!("missing exponent in {s:?}")));
                    }
                    let v: i64 = chars[st..pos]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
                    exp = if neg { -v } else { v };
                }
            } else if !had_digits {
                return Err(Error::Parse(format!("unexpected input in {s:?}")));
            }
            out.add_term(exp, sign * coeff);
        }
        Ok(out)
    }
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
