use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::Dehom;
use crate::error::Result;
use crate::grassmann::tilde;
use crate::qmatrix::Gen;
use crate::scalars::Laurent;
use crate::twist::{eval_cocycle, CocycleKind};

/// How a descending pair `A B` (with `A > B`) of `x` generators rewrites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PairRelation {
    /// `A B = ratio · B A`
    QuasiCommute { ratio: Laurent },
    /// `A B = ratio · B A + coeff · X[i,l] X[k,j]`
    Diagonal { ratio: Laurent, coeff: Laurent },
}

/// Commutation data of a skew-Laurent algebra over the `m x (n-m)` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewTables {
    pub alpha_t: usize,
    #[serde(serialize_with = "ser_pairs")]
    pub pairs: BTreeMap<(Gen, Gen), PairRelation>,
    /// `y x = value · x y`
    #[serde(serialize_with = "ser_y")]
    pub y: BTreeMap<Gen, Laurent>,
}

fn ser_pairs<S: Serializer>(m: &BTreeMap<(Gen, Gen), PairRelation>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|((a, b), r)| (format!("{a}{b}"), r)))
}

fn ser_y<S: Serializer>(m: &BTreeMap<Gen, Laurent>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(g, v)| (g.to_string(), v)))
}

impl Dehom {
    fn gens(&self) -> Vec<Gen> {
        let mut v = Vec::new();
        for i in 1..=self.m {
            for j in 1..=self.n - self.m {
                v.push(Gen::new(i, j));
            }
        }
        v
    }

    fn gamma(&self, s: &[i64], t: &[i64]) -> Laurent {
        eval_cocycle(CocycleKind::Gamma, s, t).expect("contents share length n")
    }

    fn xc(&self, alpha: i64, g: Gen) -> Vec<i64> {
        self.x_content(alpha, g.row as usize, g.col as usize)
    }

    /// Tables of `A_α`.
    pub fn skew_tables(&self, alpha: i64) -> Result<SkewTables> {
        let gens = self.gens();
        let mut pairs = BTreeMap::new();
        for &a in &gens {
            for &b in &gens {
                if a > b {
                    let rw = self.xalg.rewrite_pair(a, b);
                    let rel = if rw.len() == 1 {
                        PairRelation::QuasiCommute {
                            ratio: rw[0].coeff.clone(),
                        }
                    } else {
                        PairRelation::Diagonal {
                            ratio: rw[0].coeff.clone(),
                            coeff: rw[1].coeff.clone(),
                        }
                    };
                    pairs.insert((a, b), rel);
                }
            }
        }
        let mut y = BTreeMap::new();
        for &g in &gens {
            let e = self.sigma_exponent(alpha, g.row as usize, g.col as usize)?;
            y.insert(g, Laurent::u_pow(e * self.m as i64));
        }
        Ok(SkewTables {
            alpha_t: tilde(alpha, self.n),
            pairs,
            y,
        })
    }

    /// Tables of `T(A_α)` on the generators `T(x^α_ij)`, `T(y_α)`.
    pub fn twisted_skew_tables(&self, alpha: i64) -> Result<SkewTables> {
        let base = self.skew_tables(alpha)?;
        let yc = self.y_content(alpha);
        let mut pairs = BTreeMap::new();
        for (&(a, b), rel) in &base.pairs {
            let (ca, cb) = (self.xc(alpha, a), self.xc(alpha, b));
            let gab = self.gamma(&ca, &cb);
            let factor = &gab * &self.gamma(&cb, &ca).unit_inverse().expect("unit");
            let twisted = match rel {
                PairRelation::QuasiCommute { ratio } => PairRelation::QuasiCommute { ratio: ratio * &factor },
                PairRelation::Diagonal { ratio, coeff } => {
                    let x = Gen { row: b.row, col: a.col };
                    let z = Gen { row: a.row, col: b.col };
                    let gxz = self.gamma(&self.xc(alpha, x), &self.xc(alpha, z));
                    PairRelation::Diagonal {
                        ratio: ratio * &factor,
                        coeff: &(coeff * &gab) * &gxz.unit_inverse().expect("unit"),
                    }
                }
            };
            pairs.insert((a, b), twisted);
        }
        let mut y = BTreeMap::new();
        for (&g, v) in &base.y {
            let cx = self.xc(alpha, g);
            let f = &self.gamma(&yc, &cx) * &self.gamma(&cx, &yc).unit_inverse().expect("unit");
            y.insert(g, v * &f);
        }
        Ok(SkewTables {
            alpha_t: base.alpha_t,
            pairs,
            y,
        })
    }

    /// `T(A_α)` and `A_{α+1}` have identical tables under
    /// `T(x^α_ij) ↦ x^{α+1}_ij`, `T(y_α) ↦ y_{α+1}`.
    pub fn theta_alpha_check(&self, alpha: i64) -> Result<bool> {
        let tw = self.twisted_skew_tables(alpha)?;
        let next = self.skew_tables(alpha + 1)?;
        Ok(tw.pairs == next.pairs && tw.y == next.y)
    }

    /// The `x^α_ij`, realized as `[N_ij][M_α]^-1`, satisfy every rewrite of
    /// the `q`-quantum matrix and the `y` table of `A_α`.
    pub fn x_relations_check(&self, alpha: i64) -> Result<bool> {
        let tables = self.skew_tables(alpha)?;
        let x = |g: Gen| self.loc_x(alpha, g.row as usize, g.col as usize);
        for (&(a, b), rel) in &tables.pairs {
            let lhs = self.loc_mul(alpha, &x(a)?, &x(b)?)?;
            let ba = self.loc_mul(alpha, &x(b)?, &x(a)?)?;
            let rhs = match rel {
                PairRelation::QuasiCommute { ratio } => {
                    self.loc_from_poly(alpha, ba.numerator.scale(ratio), ba.denom_power)
                }
                PairRelation::Diagonal { ratio, coeff } => {
                    let p = Gen { row: b.row, col: a.col };
                    let r = Gen { row: a.row, col: b.col };
                    let pr = self.loc_mul(alpha, &x(p)?, &x(r)?)?;
                    let scaled = self.loc_from_poly(alpha, ba.numerator.scale(ratio), ba.denom_power);
                    self.loc_add(alpha, &scaled, &pr, coeff)?
                }
            };
            if !self.loc_eq(alpha, &lhs, &rhs)? {
                return Ok(false);
            }
        }
        let y = self.loc_y(alpha, 1)?;
        for (&g, v) in &tables.y {
            let yx = self.loc_mul(alpha, &y, &x(g)?)?;
            let xy = self.loc_mul(alpha, &x(g)?, &y)?;
            if self.loc_ratio(alpha, &yx, &xy)? != Some(v.clone()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
