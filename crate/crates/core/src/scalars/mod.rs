//! Exact scalars: Laurent polynomials in `u`, the named monomials `q` and
//! `p`, and fraction-free kernels of Laurent matrices.

mod kernel;
mod laurent;

pub use kernel::{ff_kernel, KernelBasis};
pub use laurent::Laurent;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fixes `q = u^m` and `p = u^2`, so `p^m = q^2` holds as an identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScalarContext {
    m: usize,
    n: usize,
}

impl ScalarContext {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::InvalidContext(format!("need 1 <= m < n, got m={m}, n={n}")));
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exponent of `u` in `q`.
    pub fn q_exp(&self) -> i64 {
        self.m as i64
    }

    pub fn q(&self) -> Laurent {
        self.q_pow(1)
    }

    pub fn p(&self) -> Laurent {
        self.p_pow(1)
    }

    pub fn q_pow(&self, k: i64) -> Laurent {
        Laurent::u_pow(k * self.q_exp())
    }

    pub fn p_pow(&self, k: i64) -> Laurent {
        Laurent::u_pow(2 * k)
    }

    pub fn monomial_ratio(&self, a: &Laurent, b: &Laurent) -> Result<Option<i64>> {
        monomial_ratio(a, b, self.q_exp())
    }
}

/// The integer `r` with `b = q^r * a`, where `q = u^q_exp`, if one exists.
pub fn monomial_ratio(a: &Laurent, b: &Laurent, q_exp: i64) -> Result<Option<i64>> {
    if a.is_zero() {
        return Err(Error::ZeroInput("monomial_ratio denominator"));
    }
    let Some(e) = b.div_exact(a).and_then(|r| r.unit_exponent()) else {
        return Ok(None);
    };
    if e % q_exp == 0 {
        Ok(Some(e / q_exp))
    } else {
        Ok(None)
    }
}
