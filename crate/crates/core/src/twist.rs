//! The cocycles `Γ` and `γ` on `Z^n` and the twisted products of the towers
//! `T^ℓ` and `τ^ℓ`.
//!
//! Positive levels are the `γ`-tower: `τ^ℓ(A)`. Negative levels are the
//! `Γ`-tower: `T^{|ℓ|}(A)`. Each twist regrades its result: `τ([I])` gets the
//! content of `[I-1]` and `T([I])` the content of `[I+1]`, and the next stage
//! twists with respect to that grading. So the scalar at level `ℓ` is a product
//! of `|ℓ|` stage cocycles evaluated at rotated copies of the base contents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::IndexSet;
use crate::qmatrix::{NcPoly, QuantumMatrixAlgebra};
use crate::scalars::Laurent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CocycleKind {
    /// `Γ(s,t) = p^{s_n Σ_{j≠n} t_j}`
    #[serde(rename = "Gamma")]
    Gamma,
    /// `γ(s,t) = p^{-s_1 Σ_{j≠1} t_j}`
    #[serde(rename = "gamma")]
    SmallGamma,
}

impl std::str::FromStr for CocycleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Gamma" | "G" => Ok(Self::Gamma),
            "gamma" | "g" => Ok(Self::SmallGamma),
            _ => Err(Error::Parse(format!("unknown cocycle {s:?}"))),
        }
    }
}

/// The exponent of `p` in `χ(s, t)`.
pub fn cocycle_exp(kind: CocycleKind, s: &[i64], t: &[i64]) -> Result<i64> {
    if s.len() != t.len() {
        return Err(Error::LengthMismatch {
            expected: s.len(),
            found: t.len(),
        });
    }
    if s.is_empty() {
        return Ok(0);
    }
    let total: i64 = t.iter().sum();
    Ok(match kind {
        CocycleKind::Gamma => {
            let n = s.len() - 1;
            s[n] * (total - t[n])
        }
        CocycleKind::SmallGamma => -s[0] * (total - t[0]),
    })
}

pub fn p_pow(e: i64) -> Laurent {
    Laurent::u_pow(2 * e)
}

pub fn eval_cocycle(kind: CocycleKind, s: &[i64], t: &[i64]) -> Result<Laurent> {
    Ok(p_pow(cocycle_exp(kind, s, t)?))
}

/// `χ(s,t+v) χ(t,v) = χ(s,t) χ(s+t,v)`.
pub fn cocycle_condition_check(kind: CocycleKind, s: &[i64], t: &[i64], v: &[i64]) -> Result<bool> {
    let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    if t.len() != s.len() || v.len() != s.len() {
        return Err(Error::LengthMismatch {
            expected: s.len(),
            found: if t.len() != s.len() { t.len() } else { v.len() },
        });
    }
    let lhs = cocycle_exp(kind, s, &add(t, v))? + cocycle_exp(kind, t, v)?;
    let rhs = cocycle_exp(kind, s, t)? + cocycle_exp(kind, &add(s, t), v)?;
    Ok(lhs == rhs)
}

/// Moves the entry at index `i` to index `(i+k)~`.
pub fn rotate(c: &[i64], k: i64) -> Vec<i64> {
    let n = c.len() as i64;
    let mut out = vec![0; c.len()];
    for (i, &x) in c.iter().enumerate() {
        out[(i as i64 + k).rem_euclid(n) as usize] = x;
    }
    out
}

/// Exponent of `p` in the structure scalar of level `level` for base
/// contents `a`, `b`.
pub fn tower_exp(level: i64, a: &[i64], b: &[i64]) -> Result<i64> {
    let mut e = 0;
    if level > 0 {
        for s in 0..level {
            e += cocycle_exp(CocycleKind::SmallGamma, &rotate(a, -s), &rotate(b, -s))?;
        }
    } else {
        for s in 0..-level {
            e += cocycle_exp(CocycleKind::Gamma, &rotate(a, s), &rotate(b, s))?;
        }
    }
    Ok(e)
}

pub fn tower_scalar(level: i64, a: &[i64], b: &[i64]) -> Result<Laurent> {
    Ok(p_pow(tower_exp(level, a, b)?))
}

/// Structure scalar at `level` for the ordered product `[I][J]`.
pub fn minor_tower_scalar(level: i64, i: &IndexSet, j: &IndexSet, n: usize) -> Result<Laurent> {
    tower_scalar(level, &i.content(n), &j.content(n))
}

/// The grading that level `level` carries on the image of `[I]`.
pub fn level_content(level: i64, i: &IndexSet, n: usize) -> Vec<i64> {
    i.shift(-level, n).content(n)
}

/// `γ([I+1],[J+1]) Γ([I],[J]) = 1`.
pub fn gamma_gamma_identity(i: &IndexSet, j: &IndexSet, n: usize) -> Result<bool> {
    let g = cocycle_exp(CocycleKind::Gamma, &i.content(n), &j.content(n))?;
    let sg = cocycle_exp(
        CocycleKind::SmallGamma,
        &i.shift(1, n).content(n),
        &j.shift(1, n).content(n),
    )?;
    Ok(g + sg == 0)
}

/// An element of the level-`level` twist, stored through the vector-space
/// identification with the base algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedElement {
    pub level: i64,
    pub value: NcPoly,
}

impl TwistedElement {
    pub fn new(level: i64, value: NcPoly) -> Self {
        Self { level, value }
    }

    /// Homogeneous parts keyed by base column content.
    pub fn parts(&self) -> Vec<(Vec<i64>, NcPoly)> {
        self.value.homogeneous_parts().into_iter().collect()
    }
}

/// The product in `τ^ℓ` / `T^{|ℓ|}` of the matrix algebra `alg`.
pub fn twisted_product(
    alg: &QuantumMatrixAlgebra,
    level: i64,
    a: &TwistedElement,
    b: &TwistedElement,
) -> Result<TwistedElement> {
    for x in [a, b] {
        if x.level != level {
            return Err(Error::LevelMismatch {
                expected: level,
                found: x.level,
            });
        }
    }
    let mut out = NcPoly::zero(alg.shape());
    let bp = b.parts();
    for (ca, pa) in a.parts() {
        for (cb, pb) in &bp {
            let s = tower_scalar(level, &ca, cb)?;
            out.add_scaled(&alg.mul(&pa, pb)?, &s)?;
        }
    }
    Ok(TwistedElement::new(level, out))
}
