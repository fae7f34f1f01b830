use std::fmt;

use super::Dehom;
use crate::error::{Error, Result};
use crate::grassmann::{tilde, IndexSet};
use crate::qmatrix::NcPoly;
use crate::scalars::Laurent;

/// `numerator · [M_α]^-k` in the localization at `[M_α]`.
#[derive(Clone, Debug)]
pub struct LocalizedElement {
    pub alpha_t: usize,
    pub numerator: NcPoly,
    pub denom_power: u32,
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) * [M]^-{}", self.numerator, self.denom_power)
    }
}

impl Dehom {
    pub fn m_minor(&self, alpha: i64) -> NcPoly {
        self.g
            .minor(&self.data(alpha).m_set)
            .expect("consecutive sets have m elements")
    }

    fn m_power(&self, alpha: i64, k: u32) -> Result<NcPoly> {
        let mm = self.m_minor(alpha);
        let mut acc = self.g.algebra().one();
        for _ in 0..k {
            acc = self.g.algebra().mul(&acc, &mm)?;
        }
        Ok(acc)
    }

    pub fn loc_from_poly(&self, alpha: i64, numerator: NcPoly, denom_power: u32) -> LocalizedElement {
        LocalizedElement {
            alpha_t: tilde(alpha, self.n),
            numerator,
            denom_power,
        }
    }

    pub fn loc_minor(&self, alpha: i64, i: &IndexSet) -> Result<LocalizedElement> {
        Ok(self.loc_from_poly(alpha, self.g.minor(i)?, 0))
    }

    /// `[M_α]^-1 · ... ` moved across: returns `[M_α]^-k N [M_α]^k`.
    fn conjugate(&self, alpha: i64, k: u32, nume: &NcPoly) -> Result<NcPoly> {
        if k == 0 {
            return Ok(nume.clone());
        }
        let mm = self.m_minor(alpha);
        let mut out = NcPoly::zero(nume.shape());
        let q = self.m as i64;
        for (_, part) in nume.homogeneous_parts() {
            // [M] P = q^r P [M]  =>  [M]^-k P = q^{-kr} P [M]^-k
            let r = self
                .g
                .algebra()
                .quasi_commutation_exponent(&part, &mm)?
                .ok_or_else(|| {
                    Error::Consistency("consecutive minor fails to quasi-commute with a homogeneous part".into())
                })?;
            out.add_scaled(&part, &Laurent::u_pow(-(k as i64) * r * q))?;
        }
        Ok(out)
    }

    pub fn loc_mul(&self, alpha: i64, a: &LocalizedElement, b: &LocalizedElement) -> Result<LocalizedElement> {
        self.check_alpha(alpha, a)?;
        self.check_alpha(alpha, b)?;
        let moved = self.conjugate(alpha, a.denom_power, &b.numerator)?;
        let numerator = self.g.algebra().mul(&a.numerator, &moved)?;
        Ok(self.loc_from_poly(alpha, numerator, a.denom_power + b.denom_power))
    }

    pub fn loc_add(
        &self,
        alpha: i64,
        a: &LocalizedElement,
        b: &LocalizedElement,
        scale_b: &Laurent,
    ) -> Result<LocalizedElement> {
        let k = a.denom_power.max(b.denom_power);
        let na = self
            .g
            .algebra()
            .mul(&a.numerator, &self.m_power(alpha, k - a.denom_power)?)?;
        let nb = self
            .g
            .algebra()
            .mul(&b.numerator, &self.m_power(alpha, k - b.denom_power)?)?;
        let mut n = na;
        n.add_scaled(&nb, scale_b)?;
        Ok(self.loc_from_poly(alpha, n, k))
    }

    /// `a = b`, decided by lifting both to a common denominator.
    pub fn loc_eq(&self, alpha: i64, a: &LocalizedElement, b: &LocalizedElement) -> Result<bool> {
        Ok(self.loc_add(alpha, a, b, &-Laurent::one())?.numerator.is_zero())
    }

    /// `s` with `a = s · b`, when such a scalar exists.
    pub fn loc_ratio(&self, alpha: i64, a: &LocalizedElement, b: &LocalizedElement) -> Result<Option<Laurent>> {
        let k = a.denom_power.max(b.denom_power);
        let na = self
            .g
            .algebra()
            .mul(&a.numerator, &self.m_power(alpha, k - a.denom_power)?)?;
        let nb = self
            .g
            .algebra()
            .mul(&b.numerator, &self.m_power(alpha, k - b.denom_power)?)?;
        Ok(na.ratio_to(&nb))
    }

    fn check_alpha(&self, alpha: i64, e: &LocalizedElement) -> Result<()> {
        let at = tilde(alpha, self.n);
        if e.alpha_t != at {
            return Err(Error::ContextMismatch(format!(
                "element localized at α~={} used at α~={at}",
                e.alpha_t
            )));
        }
        Ok(())
    }

    /// `x^α_ij` as a localized element.
    pub fn loc_x(&self, alpha: i64, i: usize, j: usize) -> Result<LocalizedElement> {
        let set = self.x_numerator_set(alpha, i, j)?;
        Ok(self.loc_from_poly(alpha, self.g.minor(&set)?, 1))
    }

    /// `y_α^k` as a localized element.
    pub fn loc_y(&self, alpha: i64, k: i64) -> Result<LocalizedElement> {
        if k >= 0 {
            Ok(self.loc_from_poly(alpha, self.m_power(alpha, k as u32)?, 0))
        } else {
            Ok(self.loc_from_poly(alpha, self.g.algebra().one(), (-k) as u32))
        }
    }
}
