//! Index sets, quantum minors, Muir's law and the degree-2 relation basis of
//! the quantum Grassmannian.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmatrix::{Gen, NcPoly, QuantumMatrixAlgebra, Word};
use crate::scalars::{ff_kernel, Laurent};

/// The residue of `k` in `1..=n`.
pub fn tilde(k: i64, n: usize) -> usize {
    (k - 1).rem_euclid(n as i64) as usize + 1
}

/// A sorted set of distinct positive integers, printed `[2,4]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut v: Vec<usize>) -> Result<Self> {
        v.sort_unstable();
        if v.contains(&0) {
            return Err(Error::InvalidIndexSet(format!("{v:?} contains 0")));
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet(format!("{v:?} has repeated entries")));
        }
        Ok(Self(v))
    }

    /// Builds the set and checks that it lies in `1..=n`.
    pub fn within(v: Vec<usize>, n: usize) -> Result<Self> {
        let s = Self::new(v)?;
        if s.0.last().is_some_and(|&x| x > n) {
            return Err(Error::InvalidIndexSet(format!("{s} exceeds n={n}")));
        }
        Ok(s)
    }

    pub fn range(lo: usize, hi: usize) -> Self {
        Self((lo..=hi).collect())
    }

    pub fn elems(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.iter().chain(&other.0).copied().sorted().dedup().collect())
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&x| !other.contains(x)).collect())
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    /// `{ (i+a)~ : i in I }`.
    pub fn shift(&self, a: i64, n: usize) -> IndexSet {
        IndexSet(self.0.iter().map(|&i| tilde(i as i64 + a, n)).sorted().collect())
    }

    /// `{ n-i+1 : i in I }`.
    pub fn w0(&self, n: usize) -> IndexSet {
        IndexSet(self.0.iter().rev().map(|&i| n + 1 - i).collect())
    }

    pub fn content(&self, n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n];
        for &i in &self.0 {
            c[i - 1] += 1;
        }
        c
    }

    /// `{ x - k : x in I }`, asserting every entry stays positive.
    pub fn offset_down(&self, k: usize) -> IndexSet {
        IndexSet(self.0.iter().map(|&x| x - k).collect())
    }

    pub fn offset_up(&self, k: usize) -> IndexSet {
        IndexSet(self.0.iter().map(|&x| x + k).collect())
    }

    /// `{ a - x : x in I }`.
    pub fn reflect(&self, a: usize) -> IndexSet {
        IndexSet(self.0.iter().rev().map(|&x| a - x).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

impl FromStr for IndexSet {
    type Err = Error;
    /// Accepts `[2,4]`, `2,4`, or the compact `24` when every entry is a digit.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['[', '{']).trim_end_matches([']', '}']);
        if t.trim().is_empty() {
            return Ok(IndexSet::default());
        }
        let v: Vec<usize> = if t.contains(',') {
            t.split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad index set {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad index set {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        IndexSet::new(v)
    }
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<IndexSet> {
    (1..=n).combinations(k).map(IndexSet).collect()
}

/// `O_q(G(m,n))` inside `O_q(M_{m,n})`, with `q = u^q_exp`.
#[derive(Debug)]
pub struct Grassmannian {
    m: usize,
    n: usize,
    alg: QuantumMatrixAlgebra,
    minors: BTreeMap<IndexSet, NcPoly>,
}

impl Grassmannian {
    /// The standard context `q = u^m`.
    pub fn new(m: usize, n: usize) -> Result<Self> {
        Self::with_q_exp(m, n, m as i64)
    }

    pub fn with_q_exp(m: usize, n: usize, q_exp: i64) -> Result<Self> {
        if m == 0 || m > n {
            return Err(Error::InvalidContext(format!("need 1 <= m <= n, got m={m}, n={n}")));
        }
        let alg = QuantumMatrixAlgebra::new(m, n, q_exp)?;
        let q = alg.q();
        let minors = subsets(n, m)
            .into_iter()
            .map(|i| {
                let p = minor_in(&alg, &q, &i);
                (i, p)
            })
            .collect();
        Ok(Self { m, n, alg, minors })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q_exp(&self) -> i64 {
        self.alg.q_exp()
    }

    pub fn q(&self) -> Laurent {
        self.alg.q()
    }

    pub fn algebra(&self) -> &QuantumMatrixAlgebra {
        &self.alg
    }

    pub fn sets(&self) -> Vec<IndexSet> {
        self.minors.keys().cloned().collect()
    }

    pub fn check_set(&self, i: &IndexSet) -> Result<()> {
        if i.len() != self.m {
            return Err(Error::WrongCardinality {
                set: i.to_string(),
                found: i.len(),
                expected: self.m,
            });
        }
        if i.max().is_some_and(|x| x > self.n) {
            return Err(Error::InvalidIndexSet(format!("{i} exceeds n={}", self.n)));
        }
        Ok(())
    }

    /// The quantum minor `[I]` on rows `1..m`.
    pub fn minor(&self, i: &IndexSet) -> Result<NcPoly> {
        self.check_set(i)?;
        Ok(self.minors[i].clone())
    }

    pub fn minor_ref(&self, i: &IndexSet) -> Result<&NcPoly> {
        self.check_set(i)?;
        Ok(&self.minors[i])
    }

    /// Normal form of `[I][J]`.
    pub fn product(&self, i: &IndexSet, j: &IndexSet) -> Result<NcPoly> {
        self.alg.mul(self.minor_ref(i)?, self.minor_ref(j)?)
    }

    /// `r` with `[J][I] = q^r [I][J]`.
    pub fn qcomm(&self, i: &IndexSet, j: &IndexSet) -> Result<Option<i64>> {
        self.alg
            .quasi_commutation_exponent(self.minor_ref(i)?, self.minor_ref(j)?)
    }

    /// `Σ c [left][right]` in normal form.
    pub fn evaluate(&self, rel: &QuadRelation) -> Result<NcPoly> {
        if rel.m != self.m || rel.n != self.n || rel.q_exp != self.q_exp() {
            return Err(Error::ContextMismatch(format!(
                "relation over Gr({},{}) q=u^{} evaluated in Gr({},{}) q=u^{}",
                rel.m,
                rel.n,
                rel.q_exp,
                self.m,
                self.n,
                self.q_exp()
            )));
        }
        let mut acc = NcPoly::zero(self.alg.shape());
        for t in &rel.terms {
            acc.add_scaled(&self.product(&t.left, &t.right)?, &t.coeff)?;
        }
        Ok(acc)
    }

    /// A basis of all linear dependences among the products `[I][J]`.
    ///
    /// Product coordinates are ordered lexicographically by `(I, J)`; the
    /// kernel is assembled block by block over column content, which gives
    /// the same normalized vectors as one global elimination.
    pub fn quadratic_relations(&self) -> Result<Vec<QuadRelation>> {
        let sets = self.sets();
        let pairs: Vec<(IndexSet, IndexSet)> = sets
            .iter()
            .cartesian_product(sets.iter())
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect();
        let products: Vec<NcPoly> = pairs
            .par_iter()
            .map(|(a, b)| self.product(a, b))
            .collect::<Result<_>>()?;
        let mut blocks: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (k, (a, b)) in pairs.iter().enumerate() {
            let c: Vec<i64> = a
                .content(self.n)
                .iter()
                .zip(b.content(self.n))
                .map(|(x, y)| x + y)
                .collect();
            blocks.entry(c).or_default().push(k);
        }
        let blocks: Vec<Vec<usize>> = blocks.into_values().filter(|b| b.len() > 1).collect();
        let found: Vec<Vec<(usize, Vec<Laurent>)>> = blocks
            .par_iter()
            .map(|cols| {
                let words: Vec<&Word> = cols
                    .iter()
                    .flat_map(|&k| products[k].terms().map(|(w, _)| w))
                    .sorted()
                    .dedup()
                    .collect();
                let mat: Vec<Vec<Laurent>> = words
                    .iter()
                    .map(|w| cols.iter().map(|&k| products[k].coeff(w)).collect())
                    .collect();
                let kernel = ff_kernel(&mat, cols.len());
                kernel
                    .vectors
                    .into_iter()
                    .map(|v| {
                        let free = v
                            .iter()
                            .rposition(|x| !x.is_zero())
                            .expect("kernel vectors are nonzero");
                        (cols[free], v)
                    })
                    .collect()
            })
            .collect();
        let mut out: Vec<(usize, QuadRelation)> = Vec::new();
        for (cols, vecs) in blocks.iter().zip(found) {
            for (free, v) in vecs {
                let terms = cols
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&k, coeff)| RelTerm {
                        coeff,
                        left: pairs[k].0.clone(),
                        right: pairs[k].1.clone(),
                    })
                    .collect();
                out.push((
                    free,
                    QuadRelation {
                        m: self.m,
                        n: self.n,
                        q_exp: self.q_exp(),
                        terms,
                    },
                ));
            }
        }
        out.sort_by_key(|(f, _)| *f);
        Ok(out.into_iter().map(|(_, r)| r).collect())
    }

    /// `(M_α, w, z)` for the consecutive minor starting at `α~`.
    pub fn consecutive_data(&self, alpha: i64) -> ConsecutiveData {
        ConsecutiveData::new(self.m, self.n, alpha)
    }
}

fn minor_in(alg: &QuantumMatrixAlgebra, q: &Laurent, i: &IndexSet) -> NcPoly {
    let m = i.len();
    let cols = i.elems();
    let neg_q = -q;
    let terms = (0..m).permutations(m).map(|sigma| {
        let inv = (0..m)
            .tuple_combinations()
            .filter(|&(a, b)| sigma[a] > sigma[b])
            .count();
        let word: Word = (0..m).map(|r| Gen::new(r + 1, cols[sigma[r]])).collect();
        (word, neg_q.pow(inv as u32))
    });
    NcPoly::from_terms(alg.shape(), terms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelTerm {
    pub coeff: Laurent,
    pub left: IndexSet,
    pub right: IndexSet,
}

/// `Σ coeff [left][right] = 0` in `O_q(G(m,n))` with `q = u^q_exp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadRelation {
    pub m: usize,
    pub n: usize,
    pub q_exp: i64,
    pub terms: Vec<RelTerm>,
}

impl QuadRelation {
    pub fn sets(&self) -> impl Iterator<Item = &IndexSet> {
        self.terms.iter().flat_map(|t| [&t.left, &t.right])
    }

    /// Replaces every set `S` with `S ⊔ ({1..n} ∖ P)` and checks the result
    /// in the larger Grassmannian.
    pub fn muir_extend(&self, p: &IndexSet) -> Result<QuadRelation> {
        let all = IndexSet::range(1, self.n);
        if !p.is_subset(&all) {
            return Err(Error::InvalidIndexSet(format!("{p} exceeds n={}", self.n)));
        }
        for s in self.sets() {
            if !s.is_subset(p) {
                return Err(Error::ContainmentViolated {
                    set: s.to_string(),
                    within: p.to_string(),
                });
            }
        }
        let pbar = all.difference(p);
        let ext = QuadRelation {
            m: self.m + pbar.len(),
            n: self.n,
            q_exp: self.q_exp,
            terms: self
                .terms
                .iter()
                .map(|t| RelTerm {
                    coeff: t.coeff.clone(),
                    left: t.left.union(&pbar),
                    right: t.right.union(&pbar),
                })
                .collect(),
        };
        let g = Grassmannian::with_q_exp(ext.m, ext.n, ext.q_exp)?;
        let res = g.evaluate(&ext)?;
        if !res.is_zero() {
            return Err(Error::Consistency(format!(
                "extended relation {ext} leaves residual {res}"
            )));
        }
        Ok(ext)
    }
}

impl fmt::Display for QuadRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .terms
            .iter()
            .map(|t| format!("({}) {}{}", t.coeff, t.left, t.right))
            .join(" + ");
        write!(f, "{body} = 0")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsecutiveData {
    pub alpha: i64,
    /// `α~`.
    pub alpha_t: usize,
    pub m_set: IndexSet,
    /// `w[i-1] = (α+m-i)~` for `i = 1..m`.
    pub w: Vec<usize>,
    /// `z[j-1] = (j+α+m-1)~` for `j = 1..n-m`.
    pub z: Vec<usize>,
}

impl ConsecutiveData {
    pub fn new(m: usize, n: usize, alpha: i64) -> Self {
        let (mi, ni) = (m as i64, n as i64);
        let m_set = IndexSet((0..mi).map(|k| tilde(alpha + k, n)).sorted().collect());
        let w = (1..=mi).map(|i| tilde(alpha + mi - i, n)).collect();
        let z = (1..=ni - mi).map(|j| tilde(j + alpha + mi - 1, n)).collect();
        Self {
            alpha,
            alpha_t: tilde(alpha, n),
            m_set,
            w,
            z,
        }
    }
}
