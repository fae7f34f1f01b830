//! Dihedral combinatorics on vanishing patterns of minors.
//!
//! Torus-invariant primes of the quantum Grassmannian are modeled by the set
//! of quantum minors they contain. The model is only known to be faithful for
//! `Gr(2,4)`; reports say so.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{subsets, IndexSet};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VanishingPattern {
    pub vanishing: BTreeSet<IndexSet>,
    /// The augmentation pattern: every minor vanishes.
    pub full: bool,
}

impl VanishingPattern {
    pub fn new(vanishing: impl IntoIterator<Item = IndexSet>) -> Self {
        Self {
            vanishing: vanishing.into_iter().collect(),
            full: false,
        }
    }

    pub fn augmentation(m: usize, n: usize) -> Self {
        Self {
            vanishing: subsets(n, m).into_iter().collect(),
            full: true,
        }
    }

    pub fn len(&self) -> usize {
        self.vanishing.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vanishing.is_empty()
    }
}

impl fmt::Display for VanishingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.full {
            return write!(f, "{{all}}");
        }
        write!(f, "{{{}}}", self.vanishing.iter().join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DihedralGen {
    #[serde(rename = "c")]
    C,
    #[serde(rename = "w0")]
    W0,
}

impl fmt::Display for DihedralGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DihedralGen::C => "c",
            DihedralGen::W0 => "w0",
        })
    }
}

impl FromStr for DihedralGen {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c" => Ok(DihedralGen::C),
            "w0" => Ok(DihedralGen::W0),
            _ => Err(Error::Parse(format!("unknown dihedral generator {s:?}"))),
        }
    }
}

pub fn act_on_set(g: DihedralGen, i: &IndexSet, n: usize) -> IndexSet {
    match g {
        DihedralGen::C => i.shift(1, n),
        DihedralGen::W0 => i.w0(n),
    }
}

pub fn act_on_pattern(g: DihedralGen, p: &VanishingPattern, n: usize) -> VanishingPattern {
    VanishingPattern {
        vanishing: p.vanishing.iter().map(|i| act_on_set(g, i, n)).collect(),
        full: p.full,
    }
}

/// Maximal-minor evaluator for small integer matrices.
struct IntMinors {
    m: usize,
    n: usize,
    cols: Vec<Vec<usize>>,
    perms: Vec<(Vec<usize>, i64)>,
}

impl IntMinors {
    fn new(m: usize, n: usize) -> Self {
        let cols = subsets(n, m)
            .into_iter()
            .map(|s| s.elems().iter().map(|&c| c - 1).collect())
            .collect();
        let perms = (0..m)
            .permutations(m)
            .map(|p| {
                let inv = (0..m).tuple_combinations().filter(|&(a, b)| p[a] > p[b]).count();
                let sign = if inv % 2 == 0 { 1 } else { -1 };
                (p, sign)
            })
            .collect();
        Self { m, n, cols, perms }
    }

    /// Bitmask of vanishing minors, or `None` when some minor is negative
    /// or all of them vanish.
    fn pattern(&self, a: &[i64]) -> Option<u64> {
        let mut mask = 0u64;
        for (k, c) in self.cols.iter().enumerate() {
            let det: i64 = self
                .perms
                .iter()
                .map(|(p, s)| s * (0..self.m).map(|r| a[r * self.n + c[p[r]]]).product::<i64>())
                .sum();
            if det < 0 {
                return None;
            }
            if det == 0 {
                mask |= 1 << k;
            }
        }
        (mask.count_ones() as usize != self.cols.len()).then_some(mask)
    }

    fn decode(&self, mask: u64) -> VanishingPattern {
        let sets = subsets(self.n, self.m);
        VanishingPattern::new(
            sets.into_iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, s)| s),
        )
    }
}

fn fill(digits: usize, base: i64, offset: i64, mut k: u64, buf: &mut [i64]) {
    for x in buf.iter_mut().take(digits) {
        *x = (k % base as u64) as i64 + offset;
        k /= base as u64;
    }
}

/// Vanishing patterns of rank-`m` totally nonnegative `m x n` integer
/// matrices with entries in `0..=grid`, together with every sign matrix
/// (entries in `{-1,0,1}`). Sign matrices reach cells whose witnesses need
/// anti-parallel columns.
pub fn enumerate_tnn_vanishing_patterns(m: usize, n: usize, grid: u32) -> Result<BTreeSet<VanishingPattern>> {
    if m == 0 || m > n {
        return Err(Error::InvalidContext(format!("need 1 <= m <= n, got m={m}, n={n}")));
    }
    let binom = subsets(n, m).len();
    if binom > 64 || m * n > 20 {
        return Err(Error::InvalidContext(format!(
            "({m},{n}) is too large for the grid oracle"
        )));
    }
    let minors = IntMinors::new(m, n);
    let digits = m * n;
    let scan = |base: i64, offset: i64| -> HashSet<u64> {
        let total = (base as u64).pow(digits as u32);
        (0..total)
            .into_par_iter()
            .fold(
                || (vec![0i64; digits], HashSet::new()),
                |(mut buf, mut seen), k| {
                    fill(digits, base, offset, k, &mut buf);
                    if let Some(p) = minors.pattern(&buf) {
                        seen.insert(p);
                    }
                    (buf, seen)
                },
            )
            .map(|(_, s)| s)
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    };
    let mut masks = scan(grid as i64 + 1, 0);
    masks.extend(scan(3, -1));
    Ok(masks.into_iter().map(|k| minors.decode(k)).collect())
}

/// Le diagrams: 0/1 fillings of Young shapes in the `m x (n-m)` box with no
/// 0 that has a 1 above it and a 1 to its left.
pub fn count_le_diagrams(m: usize, n: usize) -> u64 {
    if m > n {
        return 0;
    }
    let w = n - m;
    let mut total = 0;
    for shape in shapes(m, w) {
        total += count_fillings(&shape);
    }
    total
}

/// Partitions with at most `rows` parts, each at most `width`.
fn shapes(rows: usize, width: usize) -> Vec<Vec<usize>> {
    fn go(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == rows {
            out.push(cur.clone());
            return;
        }
        for p in 0..=max {
            cur.push(p);
            go(rows, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, width, &mut Vec::new(), &mut out);
    out
}

fn count_fillings(shape: &[usize]) -> u64 {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut count = 0;
    for bits in 0u64..1 << cells.len() {
        let at = |r: usize, c: usize| -> bool {
            let k = cells.iter().position(|&x| x == (r, c)).expect("cell in shape");
            bits >> k & 1 == 1
        };
        let ok = cells
            .iter()
            .all(|&(r, c)| at(r, c) || !((0..r).any(|rr| at(rr, c)) && (0..c).any(|cc| at(r, cc))));
        if ok {
            count += 1;
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub generators: Vec<DihedralGen>,
    /// Indices into the input pattern list; each orbit sorted, orbits ordered
    /// by their least index.
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

pub fn dihedral_orbits(patterns: &[VanishingPattern], generators: &[DihedralGen], n: usize) -> Result<OrbitPartition> {
    let index: BTreeMap<&VanishingPattern, usize> = patterns.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let mut orbit_of = vec![usize::MAX; patterns.len()];
    let mut orbits = Vec::new();
    for start in 0..patterns.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        orbit_of[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            for &g in generators {
                let image = act_on_pattern(g, &patterns[k], n);
                let &j = index.get(&image).ok_or_else(|| {
                    Error::ClosureViolation(format!("{g}·{} = {image} is not in the set", patterns[k]))
                })?;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    orbit.push(j);
                    queue.push_back(j);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(OrbitPartition {
        generators: generators.to_vec(),
        orbits,
    })
}

/// No cyclically ordered `a < b < c < d` with `a, c ∈ I∖J` and `b, d ∈ J∖I`.
pub fn weakly_separated(i: &IndexSet, j: &IndexSet, n: usize) -> bool {
    let labels: Vec<bool> = (1..=n)
        .filter_map(|x| match (i.contains(x), j.contains(x)) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            _ => None,
        })
        .collect();
    if labels.is_empty() {
        return true;
    }
    let changes = (0..labels.len())
        .filter(|&k| labels[k] != labels[(k + 1) % labels.len()])
        .count();
    changes <= 2
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub m: usize,
    pub n: usize,
    pub grid: u32,
    pub tnn_patterns: usize,
    pub le_diagrams: u64,
    /// Includes the augmentation pattern.
    pub patterns: Vec<VanishingPattern>,
    pub cycle_orbits: OrbitPartition,
    pub dihedral_orbits: OrbitPartition,
    pub note: String,
}

impl SpectrumReport {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.patterns.len(), self.cycle_orbits.len(), self.dihedral_orbits.len())
    }

    /// Realizable patterns and Le diagrams agree in number.
    pub fn complete(&self) -> bool {
        self.tnn_patterns as u64 == self.le_diagrams
    }
}

pub fn spectrum_report(m: usize, n: usize, grid: u32) -> Result<SpectrumReport> {
    let found = enumerate_tnn_vanishing_patterns(m, n, grid)?;
    let tnn_patterns = found.len();
    let mut patterns: Vec<VanishingPattern> = found.into_iter().collect();
    patterns.push(VanishingPattern::augmentation(m, n));
    let cycle_orbits = dihedral_orbits(&patterns, &[DihedralGen::C], n)?;
    let dih = dihedral_orbits(&patterns, &[DihedralGen::C, DihedralGen::W0], n)?;
    let note = if (m, n) == (2, 4) {
        "patterns model H-primes: at (2,4) every H-prime is generated by the minors it contains".to_string()
    } else {
        "vanishing patterns only; the identification with H-primes is established for (2,4) alone".to_string()
    };
    Ok(SpectrumReport {
        m,
        n,
        grid,
        tnn_patterns,
        le_diagrams: count_le_diagrams(m, n),
        patterns,
        cycle_orbits,
        dihedral_orbits: dih,
        note,
    })
}
