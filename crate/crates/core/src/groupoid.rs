//! Generator images of the rotations `Θ_ℓ` and reflections `Ω_ℓ` between
//! twisted quantum Grassmannians, and their transport of the degree-2
//! relation basis.
//!
//! Levels follow [`crate::twist`]: `Θ_ℓ` goes from level `ℓ-1` to level `ℓ`
//! for every integer `ℓ` (so `Θ_0` is the map out of `T(O_q G)`), and `Ω_ℓ`
//! goes from level `-ℓ` to level `ℓ` and reverses products.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{Grassmannian, IndexSet, QuadRelation};
use crate::qmatrix::NcPoly;
use crate::scalars::{monomial_ratio, Laurent};
use crate::twist::minor_tower_scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorImage {
    pub scalar: Laurent,
    pub set: IndexSet,
    pub level: i64,
}

/// Scalars live in `Z[u^±]` with `q = u^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dihedral {
    pub m: usize,
    pub n: usize,
}

impl Dihedral {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::InvalidContext(format!("need 1 <= m < n, got m={m}, n={n}")));
        }
        Ok(Self { m, n })
    }

    fn q_pow(&self, k: i64) -> Laurent {
        Laurent::u_pow(k * self.m as i64)
    }

    /// `λ_I`: `q^-2` when `n ∈ I`, else `1`.
    pub fn lambda(&self, i: &IndexSet) -> Laurent {
        if i.contains(self.n) {
            self.q_pow(-2)
        } else {
            Laurent::one()
        }
    }

    /// `Λ_I(r) = Π_{s=0}^{r-1} λ_{I+s}`.
    pub fn big_lambda(&self, i: &IndexSet, r: usize) -> Laurent {
        (0..r).map(|s| self.lambda(&i.shift(s as i64, self.n))).product()
    }

    /// Image of level-`ℓ-1` `[I]` under `Θ_ℓ`.
    pub fn theta_image(&self, level: i64, i: &IndexSet) -> GeneratorImage {
        GeneratorImage {
            scalar: self.lambda(i),
            set: i.shift(1, self.n),
            level,
        }
    }

    /// `Θ_{start+count-1} ∘ ⋯ ∘ Θ_start` on level-`start-1` `[I]`.
    pub fn compose_theta(&self, start: i64, count: usize, i: &IndexSet) -> GeneratorImage {
        GeneratorImage {
            scalar: self.big_lambda(i, count),
            set: i.shift(count as i64, self.n),
            level: start + count as i64 - 1,
        }
    }

    /// Image of level-`-ℓ` `[I]` under `Ω_ℓ`.
    pub fn omega_image(&self, level: usize, i: &IndexSet) -> GeneratorImage {
        let l = level as i64;
        let turned = i.shift(l, self.n).w0(self.n);
        GeneratorImage {
            scalar: &self.big_lambda(i, level) * &self.big_lambda(&turned, level),
            set: i.w0(self.n),
            level: l,
        }
    }

    /// The scalar of the rotation built from the `α`-th dehomogenization.
    pub fn lambda_alpha(&self, alpha: i64, i: &IndexSet) -> Laurent {
        let at = crate::grassmann::tilde(alpha, self.n);
        let has_n = i.contains(self.n);
        if at <= self.n - self.m {
            if has_n {
                self.q_pow(-2)
            } else {
                Laurent::one()
            }
        } else if !has_n {
            // q^2 / p
            &self.q_pow(2) * &Laurent::u_pow(-2)
        } else {
            Laurent::one()
        }
    }

    /// Chains `Θ_{-ℓ+1}, …, Θ_0`, then `Ω_0`, then `Θ_1, …, Θ_ℓ` and
    /// compares with `omega_image(ℓ, I)`.
    pub fn dihedral_scalar_check(&self, level: usize, i: &IndexSet, bound: i64) -> Result<bool> {
        let l = level as i64;
        let mut cur = GeneratorImage {
            scalar: Laurent::one(),
            set: i.clone(),
            level: -l,
        };
        let mut chain: Vec<MapSpec> = (-l + 1..=0).map(|k| MapSpec::new(MapKind::Theta(k), bound)).collect();
        chain.push(MapSpec::new(MapKind::Omega(0), bound));
        chain.extend((1..=l).map(|k| MapSpec::new(MapKind::Theta(k), bound)));
        for map in &chain {
            let img = map.apply(self, cur.level, &cur.set)?;
            cur = GeneratorImage {
                scalar: &cur.scalar * &img.scalar,
                set: img.set,
                level: img.level,
            };
        }
        Ok(cur == self.omega_image(level, i))
    }

    pub fn is_q_power(&self, x: &Laurent) -> bool {
        matches!(monomial_ratio(&Laurent::one(), x, self.m as i64), Ok(Some(_)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "arg")]
pub enum MapKind {
    Theta(i64),
    Omega(usize),
    ThetaRun {
        start: i64,
        count: usize,
    },
    /// The map out of `T(O_q G)` obtained from the `α`-th dehomogenization.
    ThetaAlpha(i64),
    /// `Θ_ℓ` with `λ_I` dropped on the single generator `[1,…,m-1,n]`.
    ///
    /// Dropping `λ` everywhere would not be detectable: `λ_I` depends only on
    /// the content of `[I]`, so it is a character of the grading and the bare
    /// map is again an isomorphism.
    ThetaUncorrected(i64),
}

impl FromStr for MapKind {
    type Err = Error;
    /// `theta1`, `theta-2`, `omega0`, `omega3`, `thetarun0x4`, `thetaalpha3`, `theta1-bare`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown map {s:?}"));
        let t = s.to_ascii_lowercase();
        if let Some(r) = t.strip_prefix("thetarun") {
            let (a, b) = r.split_once('x').ok_or_else(bad)?;
            return Ok(Self::ThetaRun {
                start: a.parse().map_err(|_| bad())?,
                count: b.parse().map_err(|_| bad())?,
            });
        }
        if let Some(r) = t.strip_prefix("thetaalpha") {
            return Ok(Self::ThetaAlpha(r.parse().map_err(|_| bad())?));
        }
        if let Some(r) = t.strip_prefix("theta") {
            if let Some(r) = r.strip_suffix("-bare") {
                return Ok(Self::ThetaUncorrected(r.parse().map_err(|_| bad())?));
            }
            return Ok(Self::Theta(r.parse().map_err(|_| bad())?));
        }
        if let Some(r) = t.strip_prefix("omega") {
            return Ok(Self::Omega(r.parse().map_err(|_| bad())?));
        }
        Err(bad())
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Theta(l) => write!(f, "theta{l}"),
            Self::Omega(l) => write!(f, "omega{l}"),
            Self::ThetaRun { start, count } => write!(f, "thetarun{start}x{count}"),
            Self::ThetaAlpha(a) => write!(f, "thetaalpha{a}"),
            Self::ThetaUncorrected(l) => write!(f, "theta{l}-bare"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub kind: MapKind,
    pub source_level: i64,
    pub target_level: i64,
    pub anti: bool,
    pub level_bound: i64,
}

impl MapSpec {
    pub fn new(kind: MapKind, level_bound: i64) -> Self {
        let (source_level, target_level, anti) = match kind {
            MapKind::Theta(l) | MapKind::ThetaUncorrected(l) => (l - 1, l, false),
            MapKind::Omega(l) => (-(l as i64), l as i64, true),
            MapKind::ThetaRun { start, count } => (start - 1, start + count as i64 - 1, false),
            MapKind::ThetaAlpha(_) => (-1, 0, false),
        };
        Self {
            kind,
            source_level,
            target_level,
            anti,
            level_bound,
        }
    }

    fn check_bound(&self) -> Result<()> {
        for level in [self.source_level, self.target_level] {
            if level.abs() > self.level_bound {
                return Err(Error::LevelOutOfBound {
                    level,
                    bound: self.level_bound,
                });
            }
        }
        Ok(())
    }

    /// The image of `[I]` sitting at level `level`.
    pub fn apply(&self, d: &Dihedral, level: i64, i: &IndexSet) -> Result<GeneratorImage> {
        self.check_bound()?;
        if level != self.source_level {
            return Err(Error::LevelMismatch {
                expected: self.source_level,
                found: level,
            });
        }
        Ok(match self.kind {
            MapKind::Theta(l) => d.theta_image(l, i),
            MapKind::Omega(l) => d.omega_image(l, i),
            MapKind::ThetaRun { start, count } => d.compose_theta(start, count, i),
            MapKind::ThetaAlpha(a) => GeneratorImage {
                scalar: d.lambda_alpha(a, i),
                set: i.shift(1, d.n),
                level: 0,
            },
            MapKind::ThetaUncorrected(l) => {
                let img = d.theta_image(l, i);
                let mut special: Vec<usize> = (1..d.m).collect();
                special.push(d.n);
                if i.elems() == special.as_slice() {
                    GeneratorImage {
                        scalar: Laurent::one(),
                        ..img
                    }
                } else {
                    img
                }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationResidual {
    pub relation: usize,
    pub residual: String,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportReport {
    pub map: String,
    pub m: usize,
    pub n: usize,
    pub source_level: i64,
    pub target_level: i64,
    pub anti: bool,
    pub relations: usize,
    pub zero_residuals: usize,
    pub nonzero_residuals: usize,
    pub residuals: Vec<RelationResidual>,
    pub notes: Vec<String>,
}

impl TransportReport {
    pub fn passed(&self) -> bool {
        self.nonzero_residuals == 0
    }

    pub fn first_failure(&self) -> Option<&RelationResidual> {
        self.residuals.iter().find(|r| !r.zero)
    }
}

/// The image of one relation, as a residual in the target algebra.
pub fn transport_residual(g: &Grassmannian, d: &Dihedral, map: &MapSpec, rel: &QuadRelation) -> Result<NcPoly> {
    let n = g.n();
    let mut acc = NcPoly::zero(g.algebra().shape());
    for t in &rel.terms {
        let src = minor_tower_scalar(map.source_level, &t.left, &t.right, n)?;
        let src_inv = src
            .unit_inverse()
            .ok_or_else(|| Error::Consistency("cocycle value is not a unit".into()))?;
        let a = map.apply(d, map.source_level, &t.left)?;
        let b = map.apply(d, map.source_level, &t.right)?;
        let (first, second) = if map.anti { (&b, &a) } else { (&a, &b) };
        let tgt = minor_tower_scalar(map.target_level, &first.set, &second.set, n)?;
        let coeff = &(&(&t.coeff * &src_inv) * &(&a.scalar * &b.scalar)) * &tgt;
        acc.add_scaled(&g.product(&first.set, &second.set)?, &coeff)?;
    }
    Ok(acc)
}

pub fn verify_transport(g: &Grassmannian, map: &MapSpec, rels: &[QuadRelation]) -> Result<TransportReport> {
    let d = Dihedral::new(g.m(), g.n())?;
    map.check_bound()?;
    let residuals: Vec<NcPoly> = rels
        .par_iter()
        .map(|r| transport_residual(g, &d, map, r))
        .collect::<Result<_>>()?;
    let residuals: Vec<RelationResidual> = residuals
        .into_iter()
        .enumerate()
        .map(|(k, r)| RelationResidual {
            relation: k,
            zero: r.is_zero(),
            residual: r.to_string(),
        })
        .collect();
    let zero = residuals.iter().filter(|r| r.zero).count();
    Ok(TransportReport {
        map: map.kind.to_string(),
        m: g.m(),
        n: g.n(),
        source_level: map.source_level,
        target_level: map.target_level,
        anti: map.anti,
        relations: rels.len(),
        zero_residuals: zero,
        nonzero_residuals: rels.len() - zero,
        residuals,
        notes: vec![
            "checked against the degree-2 relation basis only".into(),
            format!("twist levels materialized up to |level| <= {}", map.level_bound),
        ],
    })
}
