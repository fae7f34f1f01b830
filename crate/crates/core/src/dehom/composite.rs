use serde::Serialize;

use super::{AlphaCase, Dehom, LocalizedElement, SkewElement};
use crate::error::{Error, Result};
use crate::grassmann::{tilde, IndexSet};
use crate::groupoid::Dihedral;
use crate::qmatrix::Gen;
use crate::scalars::Laurent;
use crate::twist::{eval_cocycle, CocycleKind};

/// Row and column sets of the `x`-minor in `φ_α([I]) = [K|L]_α y_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiSets {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositeOutcome {
    pub alpha: i64,
    pub set: IndexSet,
    pub image: IndexSet,
    /// The computed `λ` with composite(`[I]`) = `λ [I+1]`.
    pub scalar: Laurent,
    pub expected: Laurent,
    /// `Γ([K|L]_α, y_α)` from contents, and its closed form.
    pub mu: Laurent,
    pub mu_closed: Laurent,
    pub phi_sets: PhiSets,
    /// The sets of `φ_α([I])` and `φ_{α+1}([I+1])` coincide.
    pub cycle_sets: bool,
}

impl CompositeOutcome {
    pub fn passed(&self) -> bool {
        self.scalar == self.expected && self.mu == self.mu_closed && self.cycle_sets
    }
}

fn add(a: &mut [i64], b: &[i64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

impl Dehom {
    pub fn phi_sets(&self, alpha: i64, i: &IndexSet) -> Result<PhiSets> {
        self.g.check_set(i)?;
        let d = self.data(alpha);
        let top = (d.alpha_t + self.m) as i64;
        let ir = i.intersection(&d.m_set);
        let ic = i.difference(&ir);
        let mut rows: Vec<usize> = d
            .m_set
            .difference(&ir)
            .elems()
            .iter()
            .map(|&x| tilde(top - x as i64, self.n))
            .collect();
        let mut cols: Vec<usize> = ic
            .elems()
            .iter()
            .map(|&c| tilde(c as i64 - (top - 1), self.n))
            .collect();
        rows.sort_unstable();
        cols.sort_unstable();
        Ok(PhiSets { rows, cols })
    }

    /// `φ_α([I])`.
    pub fn phi_alpha(&self, alpha: i64, i: &IndexSet) -> Result<SkewElement> {
        let s = self.phi_sets(alpha, i)?;
        let minor = self.x_minor(&s.rows, &s.cols);
        Ok(SkewElement::from_matrix_part(tilde(alpha, self.n), &minor, 1))
    }

    /// `ρ_α([K|L] y^e)` from the set formula.
    pub fn rho_alpha(&self, alpha: i64, rows: &[usize], cols: &[usize], ypow: i64) -> Result<LocalizedElement> {
        if rows.len() != cols.len() {
            return Err(Error::LengthMismatch {
                expected: rows.len(),
                found: cols.len(),
            });
        }
        let d = self.data(alpha);
        let top = (d.alpha_t + self.m) as i64;
        let removed = IndexSet::new(rows.iter().map(|&k| tilde(top - k as i64, self.n)).collect())?;
        let added = IndexSet::new(cols.iter().map(|&l| tilde(top - 1 + l as i64, self.n)).collect())?;
        let set = d.m_set.difference(&removed).union(&added);
        let base = self.loc_from_poly(alpha, self.g.minor(&set)?, 1);
        self.loc_mul(alpha, &base, &self.loc_y(alpha, ypow)?)
    }

    /// `ρ_α` applied letter by letter as an algebra map.
    pub fn rho_hom(&self, alpha: i64, e: &SkewElement) -> Result<LocalizedElement> {
        let mut acc = self.loc_from_poly(alpha, crate::qmatrix::NcPoly::zero(self.g.algebra().shape()), 0);
        for ((w, k), c) in e.terms() {
            let mut t = self.loc_y(alpha, 0)?;
            for g in w {
                t = self.loc_mul(alpha, &t, &self.loc_x(alpha, g.row as usize, g.col as usize)?)?;
            }
            t = self.loc_mul(alpha, &t, &self.loc_y(alpha, *k)?)?;
            acc = self.loc_add(alpha, &acc, &t, c)?;
        }
        Ok(acc)
    }

    fn minor_content(&self, alpha: i64, s: &PhiSets) -> Vec<i64> {
        let mut c = vec![0i64; self.n];
        for (&k, &l) in s.rows.iter().zip(&s.cols) {
            add(&mut c, &self.x_content(alpha, k, l));
        }
        c
    }

    /// The closed form of `Γ([K|L]_α, y_α)`.
    pub fn mu_closed_form(&self, alpha: i64, s: &PhiSets) -> Laurent {
        let at = tilde(alpha, self.n);
        let q2 = Laurent::u_pow(2 * self.m as i64);
        match self.alpha_case(alpha) {
            AlphaCase::Low if s.cols.contains(&(self.n - self.m - at + 1)) => q2,
            AlphaCase::High if s.rows.contains(&(at - (self.n - self.m))) => {
                // p q^-2
                &Laurent::u_pow(2) * &q2.unit_inverse().expect("unit")
            }
            _ => Laurent::one(),
        }
    }

    /// Runs `ρ_{α+1} ∘ θ_α ∘ T ∘ φ_α` on `[I]` and extracts `λ` with
    /// image `λ [I+1]`.
    pub fn composite_cycle_scalar(&self, alpha: i64, i: &IndexSet) -> Result<CompositeOutcome> {
        if !self.theta_alpha_check(alpha)? {
            return Err(Error::Consistency(format!(
                "T(A_α) and A_(α+1) have different tables at α={alpha}"
            )));
        }
        let phi = self.phi_alpha(alpha, i)?;
        let yc = self.y_content(alpha);
        let next = alpha + 1;
        let mut acc = self.loc_from_poly(next, crate::qmatrix::NcPoly::zero(self.g.algebra().shape()), 0);
        for ((w, k), c) in phi.terms() {
            // T(g_1 ⋯ g_r) = Π Γ(prefix, g_i)^-1 · T(g_1) ⋆ ⋯ ⋆ T(g_r)
            let mut letters: Vec<(Option<Gen>, Vec<i64>)> = w
                .iter()
                .map(|&g| (Some(g), self.x_content(alpha, g.row as usize, g.col as usize)))
                .collect();
            if *k < 0 {
                return Err(Error::Consistency("φ produced a negative y power".into()));
            }
            for _ in 0..*k {
                letters.push((None, yc.clone()));
            }
            let mut prefix = vec![0i64; self.n];
            let mut e = 0i64;
            let mut t = self.loc_y(next, 0)?;
            for (g, content) in &letters {
                let gamma = eval_cocycle(CocycleKind::Gamma, &prefix, content)?;
                e += gamma.unit_exponent().expect("cocycle values are monomials");
                add(&mut prefix, content);
                let image = match g {
                    Some(g) => self.loc_x(next, g.row as usize, g.col as usize)?,
                    None => self.loc_y(next, 1)?,
                };
                t = self.loc_mul(next, &t, &image)?;
            }
            acc = self.loc_add(next, &acc, &t, &(c * &Laurent::u_pow(-e)))?;
        }
        let image = i.shift(1, self.n);
        let target = self.loc_minor(next, &image)?;
        let scalar = self
            .loc_ratio(next, &acc, &target)?
            .ok_or_else(|| Error::Consistency(format!("composite image of {i} is not a multiple of {image}")))?;
        let sets = self.phi_sets(alpha, i)?;
        let mu = eval_cocycle(CocycleKind::Gamma, &self.minor_content(alpha, &sets), &yc)?;
        let mu_closed = self.mu_closed_form(alpha, &sets);
        let cycle_sets = sets == self.phi_sets(next, &image)?;
        let expected = Dihedral::new(self.m, self.n)?.lambda_alpha(alpha, i);
        Ok(CompositeOutcome {
            alpha,
            set: i.clone(),
            image,
            scalar,
            expected,
            mu,
            mu_closed,
            phi_sets: sets,
            cycle_sets,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::subsets;

    fn s(x: &str) -> IndexSet {
        x.parse().unwrap()
    }

    #[test]
    fn phi_examples() {
        let d = Dehom::new(2, 4).unwrap();
        assert_eq!(
            d.phi_sets(1, &s("12")).unwrap(),
            PhiSets {
                rows: vec![],
                cols: vec![]
            }
        );
        assert_eq!(
            d.phi_sets(1, &s("13")).unwrap(),
            PhiSets {
                rows: vec![1],
                cols: vec![1]
            }
        );
        assert_eq!(
            d.phi_sets(1, &s("34")).unwrap(),
            PhiSets {
                rows: vec![1, 2],
                cols: vec![1, 2]
            }
        );
        let rho = d.rho_alpha(1, &[1], &[1], 0).unwrap();
        assert!(d
            .loc_eq(
                1,
                &rho,
                &d.loc_from_poly(1, d.grassmannian().minor(&s("13")).unwrap(), 1)
            )
            .unwrap());
        let rho = d.rho_alpha(3, &[], &[], 1).unwrap();
        assert!(d.loc_eq(3, &rho, &d.loc_minor(3, &s("34")).unwrap()).unwrap());
    }

    #[test]
    fn rho_inverts_phi() {
        let d = Dehom::new(2, 4).unwrap();
        for alpha in 1..=4 {
            for i in subsets(4, 2) {
                let back = d.rho_hom(alpha, &d.phi_alpha(alpha, &i).unwrap()).unwrap();
                assert!(d.loc_eq(alpha, &back, &d.loc_minor(alpha, &i).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn rho_formula_matches_homomorphism() {
        let d = Dehom::new(2, 4).unwrap();
        let rows_choices: Vec<Vec<usize>> = vec![vec![], vec![1], vec![2], vec![1, 2]];
        for alpha in 1..=4 {
            for k in &rows_choices {
                for l in &rows_choices {
                    if k.len() != l.len() {
                        continue;
                    }
                    let minor = d.x_minor(k, l);
                    let e = SkewElement::from_matrix_part(tilde(alpha, 4), &minor, 0);
                    let hom = d.rho_hom(alpha, &e).unwrap();
                    let formula = d.rho_alpha(alpha, k, l, 0).unwrap();
                    assert!(d.loc_eq(alpha, &hom, &formula).unwrap(), "α={alpha} K={k:?} L={l:?}");
                }
            }
        }
    }

    #[test]
    fn composite_examples() {
        let d = Dehom::new(2, 4).unwrap();
        let c = d.composite_cycle_scalar(1, &s("24")).unwrap();
        assert_eq!(c.scalar, Laurent::u_pow(-4));
        assert!(c.passed());
        let c = d.composite_cycle_scalar(3, &s("12")).unwrap();
        // q^2 / p = u^4 / u^2
        assert_eq!(c.scalar, Laurent::u_pow(2));
        assert!(c.passed());
        let c = d.composite_cycle_scalar(3, &s("24")).unwrap();
        assert_eq!(c.scalar, Laurent::one());
        assert!(c.passed());
    }
}
