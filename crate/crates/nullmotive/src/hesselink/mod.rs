//! The Hesselink stratification of the nullcone: strata indexed by balanced
//! dominant coweights (equivalently, tuples of leveled dimension vectors on
//! the integral level quiver), the phi exponent, semistable-locus motives via
//! the Harder-Narasimhan recursion, the positive sum formula, and the ordered
//! star-product wall-crossing identity.

mod hn;
mod strata;
mod wall;

pub use hn::SemistableCalculator;
pub use strata::{enumerate_strata, enumerate_strata_slope_only, BalanceMode};
pub use wall::{star_mul, wall_crossing_check, wall_crossing_series, StarSeries};

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::motive::{group_motive, LaurentPoly, MotiveRat};
use crate::quiver::{DimVector, Quiver};

pub type Rational = Ratio<i64>;

/// A finitely supported dimension vector on the integral level quiver:
/// `(level, vertex) -> multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LeveledDimVector {
    entries: BTreeMap<(i64, usize), u32>,
}

impl LeveledDimVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = ((i64, usize), u32)>>(iter: I) -> Self {
        let mut v = Self::new();
        for ((a, i), m) in iter {
            v.insert(a, i, m);
        }
        v
    }

    pub fn insert(&mut self, level: i64, vertex: usize, mult: u32) {
        if mult == 0 {
            return;
        }
        *self.entries.entry((level, vertex)).or_insert(0) += mult;
    }

    pub fn get(&self, level: i64, vertex: usize) -> u32 {
        self.entries.get(&(level, vertex)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, usize), u32)> + '_ {
        self.entries.iter().map(|(&k, &m)| (k, m))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total dimension (sum of all multiplicities).
    pub fn total_dim(&self) -> u32 {
        self.entries.values().sum()
    }

    /// `theta(e) = -sum a * e_{i,a}` for the stability `theta(i,a) = -a`.
    pub fn theta(&self) -> i64 {
        -self
            .entries
            .iter()
            .map(|(&(a, _), &m)| a * m as i64)
            .sum::<i64>()
    }

    /// Slope `sigma = theta / dim`; `None` for the zero vector.
    pub fn slope(&self) -> Option<Rational> {
        let dim = self.total_dim();
        (dim > 0).then(|| Rational::new(self.theta(), dim as i64))
    }

    /// Projection to a dimension vector of the base quiver.
    pub fn project(&self, n: usize) -> DimVector {
        let mut d = vec![0u32; n];
        for (&(_, i), &m) in &self.entries {
            d[i] += m;
        }
        DimVector::new(d)
    }

    /// The k-shift: `(tau^k e)_{i,a} = e_{i,a+k}` (support moves down by k).
    pub fn shift(&self, k: i64) -> Self {
        LeveledDimVector {
            entries: self
                .entries
                .iter()
                .map(|(&(a, i), &m)| ((a - k, i), m))
                .collect(),
        }
    }

    pub fn add(&self, other: &LeveledDimVector) -> Self {
        let mut out = self.clone();
        for (&(a, i), &m) in &other.entries {
            out.insert(a, i, m);
        }
        out
    }

    pub fn checked_sub(&self, other: &LeveledDimVector) -> Option<Self> {
        let mut out = self.clone();
        for (&k, &m) in &other.entries {
            let cur = out.entries.get_mut(&k)?;
            if *cur < m {
                return None;
            }
            *cur -= m;
            if *cur == 0 {
                out.entries.remove(&k);
            }
        }
        Some(out)
    }

    pub fn min_level(&self) -> Option<i64> {
        self.entries.keys().map(|&(a, _)| a).min()
    }

    pub fn max_level(&self) -> Option<i64> {
        self.entries.keys().map(|&(a, _)| a).max()
    }

    /// Shift normalization: minimum occupied level moved to 0. Semistable
    /// motives are shift-invariant, so this is the memoization key.
    pub fn normalized(&self) -> Self {
        match self.min_level() {
            None => self.clone(),
            Some(lo) => self.shift(lo),
        }
    }

    /// All componentwise sub-vectors, the zero vector first.
    pub fn sub_vectors(&self) -> Vec<LeveledDimVector> {
        let keys: Vec<((i64, usize), u32)> = self.entries().collect();
        let mut out = vec![LeveledDimVector::new()];
        for (key, bound) in keys {
            let mut next = Vec::with_capacity(out.len() * (bound as usize + 1));
            for v in &out {
                for m in 0..=bound {
                    let mut w = v.clone();
                    w.insert(key.0, key.1, m);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    /// Maximal runs of consecutive occupied levels.
    pub fn runs(&self) -> Vec<LeveledDimVector> {
        let mut levels: Vec<i64> = self.entries.keys().map(|&(a, _)| a).collect();
        levels.dedup();
        if levels.is_empty() {
            return Vec::new();
        }
        let mut groups: Vec<Vec<i64>> = vec![vec![levels[0]]];
        for &a in &levels[1..] {
            let last = groups.last_mut().expect("nonempty");
            if a == *last.last().expect("nonempty") + 1 {
                last.push(a);
            } else {
                groups.push(vec![a]);
            }
        }
        groups
            .into_iter()
            .map(|levs| LeveledDimVector {
                entries: self
                    .entries
                    .iter()
                    .filter(|(&(a, _), _)| levs.contains(&a))
                    .map(|(&k, &m)| (k, m))
                    .collect(),
            })
            .collect()
    }
}

/// Euler form of the integral level quiver, restricted to finite supports:
/// `<e,f> = sum_{i,a} e_{i,a} f_{i,a} - sum_{arrows i->j} sum_a e_{i,a} f_{j,a+1}`.
pub fn level_euler_form(quiver: &Quiver, e: &LeveledDimVector, f: &LeveledDimVector) -> i64 {
    let mut s: i64 = 0;
    for ((a, i), m) in e.entries() {
        s += m as i64 * f.get(a, i) as i64;
        for j in 0..quiver.vertex_count() {
            let r = quiver.arrow_mult(i, j);
            if r > 0 {
                s -= r as i64 * m as i64 * f.get(a + 1, j) as i64;
            }
        }
    }
    s
}

/// Representation-space dimension on the integral level quiver.
pub fn level_rep_dim(quiver: &Quiver, e: &LeveledDimVector) -> i64 {
    let mut s: i64 = 0;
    for ((a, i), m) in e.entries() {
        for j in 0..quiver.vertex_count() {
            let r = quiver.arrow_mult(i, j);
            if r > 0 {
                s += r as i64 * m as i64 * e.get(a + 1, j) as i64;
            }
        }
    }
    s
}

/// `[G_e]` for a leveled dimension vector (a general linear group per cell).
pub fn level_group_motive(e: &LeveledDimVector) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for (_, m) in e.entries() {
        p = &p * &crate::motive::gl_motive(m);
    }
    p
}

/// A dominant coweight, grouped into vertex intervals: weakly increasing
/// rationals per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coweight {
    per_vertex: Vec<Vec<Rational>>,
}

impl Coweight {
    pub fn new(per_vertex: Vec<Vec<Rational>>) -> Result<Self> {
        for entries in &per_vertex {
            if entries.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::NotDominant(format!("{entries:?}")));
            }
        }
        Ok(Coweight { per_vertex })
    }

    pub fn per_vertex(&self) -> &[Vec<Rational>] {
        &self.per_vertex
    }

    /// Flat entry list in vertex-interval order.
    pub fn flat(&self) -> Vec<Rational> {
        self.per_vertex.iter().flatten().copied().collect()
    }

    /// Segments: maximal value classes stepping by 0 or 1. Entries from
    /// different fractional classes never share a segment; within a class,
    /// occupied values split at gaps larger than 1.
    pub fn segments(&self) -> Vec<Vec<Rational>> {
        let mut by_frac: BTreeMap<Rational, Vec<Rational>> = BTreeMap::new();
        for x in self.flat() {
            by_frac.entry(fractional_part(x)).or_default().push(x);
        }
        let mut out = Vec::new();
        for (_, mut vals) in by_frac {
            vals.sort();
            let mut cur: Vec<Rational> = Vec::new();
            for v in vals {
                match cur.last() {
                    Some(&prev) if v - prev > Rational::from_integer(1) => {
                        out.push(std::mem::take(&mut cur));
                        cur.push(v);
                    }
                    _ => cur.push(v),
                }
            }
            if !cur.is_empty() {
                out.push(cur);
            }
        }
        out
    }

    /// Balanced: every segment sums to zero.
    pub fn is_balanced(&self) -> bool {
        self.segments()
            .iter()
            .all(|seg| seg.iter().sum::<Rational>() == Rational::from_integer(0))
    }
}

pub fn fractional_part(x: Rational) -> Rational {
    x - x.floor()
}

/// A Hesselink stratum: slope-indexed leveled dimension vectors, slopes
/// strictly increasing in `[0,1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stratum {
    parts: Vec<(Rational, LeveledDimVector)>,
}

impl Stratum {
    pub fn from_parts(mut parts: Vec<(Rational, LeveledDimVector)>) -> Self {
        parts.retain(|(_, e)| !e.is_zero());
        parts.sort_by_key(|(mu, _)| *mu);
        assert!(
            parts.windows(2).all(|w| w[0].0 < w[1].0),
            "stratum slopes must be strictly increasing"
        );
        Stratum { parts }
    }

    pub fn parts(&self) -> &[(Rational, LeveledDimVector)] {
        &self.parts
    }

    pub fn total_projection(&self, n: usize) -> DimVector {
        let mut d = DimVector::zeros(n);
        for (_, e) in &self.parts {
            d = d.add(&e.project(n));
        }
        d
    }
}

/// Builds the stratum of a balanced dominant coweight: each entry `a + mu`
/// (with `mu` the fractional part) adds one unit at level `a = floor` of the
/// slope-`mu` component.
pub fn stratum_from_coweight(quiver: &Quiver, d: &DimVector, s: &Coweight) -> Result<Stratum> {
    if s.per_vertex().len() != quiver.vertex_count() {
        return Err(Error::VertexMismatch(
            "coweight vertex groups do not match the quiver".into(),
        ));
    }
    for (i, entries) in s.per_vertex().iter().enumerate() {
        if entries.len() != d[i] as usize {
            return Err(Error::VertexMismatch(format!(
                "vertex {i}: {} coweight entries for dimension {}",
                entries.len(),
                d[i]
            )));
        }
    }
    if !s.is_balanced() {
        return Err(Error::NotBalanced(format!("{:?}", s.flat())));
    }
    let mut by_mu: BTreeMap<Rational, LeveledDimVector> = BTreeMap::new();
    for (i, entries) in s.per_vertex().iter().enumerate() {
        for &x in entries {
            let a = x.floor().to_integer();
            let mu = fractional_part(x);
            by_mu.entry(mu).or_default().insert(a, i, 1);
        }
    }
    Ok(Stratum::from_parts(by_mu.into_iter().collect()))
}

/// The inverse construction: per vertex, `e_{i,a}` copies of the entry
/// `a + mu`, weakly ascending.
pub fn coweight_from_stratum(quiver: &Quiver, st: &Stratum) -> Coweight {
    let n = quiver.vertex_count();
    let mut per_vertex: Vec<Vec<Rational>> = vec![Vec::new(); n];
    for (mu, e) in st.parts() {
        for ((a, i), m) in e.entries() {
            for _ in 0..m {
                per_vertex[i].push(Rational::from_integer(a) + mu);
            }
        }
    }
    for entries in &mut per_vertex {
        entries.sort();
    }
    Coweight::new(per_vertex).expect("sorted entries are dominant")
}

/// The stratum exponent, computed two independent ways (they must agree):
///
/// * from rational level values:
///   `sum_{arrows i->j} sum_{y-x>1} e_{i,x} e_{j,y} - sum_i sum_{x<y} e_{i,x} e_{i,y}`
/// * from k-shifts on the integral level quiver:
///   `-sum_{k>0} sum_{mu,mu'} <e_mu, tau^k e_mu'> - sum_{mu<mu'} <e_mu, e_mu'>`
pub fn phi(quiver: &Quiver, st: &Stratum) -> i64 {
    let a = phi_rational_levels(quiver, st);
    let b = phi_shift_form(quiver, st);
    assert_eq!(a, b, "phi formulas disagree on {st:?}");
    a
}

pub fn phi_rational_levels(quiver: &Quiver, st: &Stratum) -> i64 {
    // collect (rational value, vertex) -> multiplicity
    let mut vals: Vec<(Rational, usize, i64)> = Vec::new();
    for (mu, e) in st.parts() {
        for ((a, i), m) in e.entries() {
            vals.push((Rational::from_integer(a) + mu, i, m as i64));
        }
    }
    let mut bundle: i64 = 0;
    let mut parabolic: i64 = 0;
    for &(x, i, m1) in &vals {
        for &(y, j, m2) in &vals {
            if quiver.arrow_mult(i, j) > 0 && y - x > Rational::from_integer(1) {
                bundle += quiver.arrow_mult(i, j) as i64 * m1 * m2;
            }
            if i == j && x < y {
                parabolic += m1 * m2;
            }
        }
    }
    bundle - parabolic
}

pub fn phi_shift_form(quiver: &Quiver, st: &Stratum) -> i64 {
    let parts = st.parts();
    // <e1, tau^k e2> vanishes once k exceeds max_level(e2) - min_level(e1),
    // so the global level extremes across all parts bound the shifts
    let lo = parts
        .iter()
        .filter_map(|(_, e)| e.min_level())
        .min()
        .unwrap_or(0);
    let hi = parts
        .iter()
        .filter_map(|(_, e)| e.max_level())
        .max()
        .unwrap_or(0);
    let mut s: i64 = 0;
    for (_, e1) in parts {
        for (_, e2) in parts {
            for k in 1..=(hi - lo).max(0) {
                s -= level_euler_form(quiver, e1, &e2.shift(k));
            }
        }
    }
    for (k1, (_, e1)) in parts.iter().enumerate() {
        for (_, e2) in parts.iter().skip(k1 + 1) {
            s -= level_euler_form(quiver, e1, e2);
        }
    }
    s
}

/// The positive sum formula: `[N_d] = [G_d] * sum_strata L^phi prod_mu
/// [R^sst_{e_mu}]/[G_{e_mu}]`. Errors if the sum fails to reduce to a
/// polynomial (which would signal a bug).
pub fn hesselink_motive(quiver: &Quiver, d: &DimVector) -> Result<LaurentPoly> {
    hesselink_motive_with_mode(quiver, d, BalanceMode::PerRun)
}

pub fn hesselink_motive_with_mode(
    quiver: &Quiver,
    d: &DimVector,
    mode: BalanceMode,
) -> Result<LaurentPoly> {
    let strata = match mode {
        BalanceMode::PerRun => enumerate_strata(quiver, d),
        BalanceMode::SlopeOnly { window } => enumerate_strata_slope_only(quiver, d, window),
    };
    let calc = SemistableCalculator::new(quiver.clone());
    let total = strata
        .par_iter()
        .map(|st| stratum_contribution(quiver, &calc, st))
        .reduce(MotiveRat::zero, |a, b| a.add(&b));
    let total = total.mul_poly(&group_motive(d));
    match total.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::NonPolynomial(format!(
            "hesselink motive at {d}: {total}"
        ))),
    }
}

/// `L^phi * prod_mu [R^sst_{e_mu}]/[G_{e_mu}]` for one stratum.
pub fn stratum_contribution(
    quiver: &Quiver,
    calc: &SemistableCalculator,
    st: &Stratum,
) -> MotiveRat {
    let mut term = MotiveRat::from_poly(LaurentPoly::lefschetz(phi(quiver, st)));
    for (_, e) in st.parts() {
        term = term.mul(&calc.semistable_ratio(e));
        if term.is_zero() {
            break;
        }
    }
    term
}
