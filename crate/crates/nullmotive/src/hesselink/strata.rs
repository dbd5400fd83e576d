//! Enumeration of Hesselink strata as tuples of leveled dimension vectors.
//!
//! The default mode enforces balance per maximal run of consecutive occupied
//! levels, matching the per-segment balance of coweights exactly (so the
//! stratum <-> coweight bijection holds). The slope-only mode keeps just the
//! aggregate condition sigma(e_mu) = mu inside a caller-given level window;
//! it enumerates a strictly larger index set whose extra strata are expected
//! to carry empty semistable loci.

use std::collections::BTreeSet;

use num_rational::Ratio;

use super::{LeveledDimVector, Rational, Stratum};
use crate::quiver::{DimVector, Quiver};

/// Which balance condition the enumeration imposes per slope component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BalanceMode {
    /// Per-run balance (the coweight-segment condition). Default.
    PerRun,
    /// Aggregate slope only, levels confined to `[-window, window]`.
    SlopeOnly { window: i64 },
}

/// A placed balanced run: slope, level interval, leveled content.
#[derive(Debug, Clone)]
struct Run {
    mu: Rational,
    lo: i64,
    hi: i64,
    content: LeveledDimVector,
}

/// All balanced runs carrying exactly the vertex mass `part`.
///
/// A run over a window of `w` consecutive levels needs every level occupied,
/// and its balance `sum (a + mu) * M_j = 0` pins the absolute position: with
/// `v0 = -sum(j * M_j)/N`, the window starts at `a0 = floor(v0)` and
/// `mu = v0 - a0`.
fn run_shapes(quiver: &Quiver, part: &DimVector) -> Vec<Run> {
    let n = quiver.vertex_count();
    let total: u32 = part.total_dim();
    let mut out = Vec::new();
    for w in 1..=total as usize {
        // distribute each vertex's mass over w slots
        let per_vertex: Vec<Vec<Vec<u32>>> = (0..n).map(|i| compositions(part[i], w)).collect();
        let mut combo = vec![0usize; n];
        'window: loop {
            let slots: Vec<&Vec<u32>> = (0..n).map(|i| &per_vertex[i][combo[i]]).collect();
            let level_mass: Vec<u32> = (0..w).map(|j| slots.iter().map(|s| s[j]).sum()).collect();
            if level_mass.iter().all(|&m| m > 0) {
                let weighted: i64 = level_mass
                    .iter()
                    .enumerate()
                    .map(|(j, &m)| j as i64 * m as i64)
                    .sum();
                let v0 = Ratio::new(-weighted, total as i64);
                let a0 = v0.floor().to_integer();
                let mu = v0 - v0.floor();
                let mut content = LeveledDimVector::new();
                for (i, slot) in slots.iter().enumerate() {
                    for (j, &m) in slot.iter().enumerate() {
                        content.insert(a0 + j as i64, i, m);
                    }
                }
                out.push(Run {
                    mu,
                    lo: a0,
                    hi: a0 + w as i64 - 1,
                    content,
                });
            }
            // advance the mixed-radix counter
            let mut k = 0;
            loop {
                if k == n {
                    break 'window;
                }
                combo[k] += 1;
                if combo[k] < per_vertex[k].len() {
                    break;
                }
                combo[k] = 0;
                k += 1;
            }
        }
    }
    out
}

/// All ways to write `total` as an ordered sum of `slots` nonnegative parts.
fn compositions(total: u32, slots: usize) -> Vec<Vec<u32>> {
    if slots == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for x in 0..=total {
        for mut rest in compositions(total - x, slots - 1) {
            let mut v = vec![x];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Unordered decompositions of `d` into nonzero parts (parts non-increasing).
fn multiset_decompositions(d: &DimVector) -> Vec<Vec<DimVector>> {
    fn go(
        rem: &DimVector,
        max_part: Option<&DimVector>,
        acc: &mut Vec<DimVector>,
        out: &mut Vec<Vec<DimVector>>,
    ) {
        if rem.is_zero() {
            out.push(acc.clone());
            return;
        }
        for p in rem.sub_vectors() {
            if p.is_zero() {
                continue;
            }
            if let Some(mx) = max_part {
                if &p > mx {
                    continue;
                }
            }
            let rest = rem.checked_sub(&p).expect("p <= rem");
            acc.push(p.clone());
            go(&rest, Some(&p), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(d, None, &mut Vec::new(), &mut out);
    out
}

/// Complete, duplicate-free list of per-run-balanced strata for `d`, in a
/// deterministic order.
pub fn enumerate_strata(quiver: &Quiver, d: &DimVector) -> Vec<Stratum> {
    let mut found: BTreeSet<Stratum> = BTreeSet::new();
    for parts in multiset_decompositions(d) {
        let shape_lists: Vec<Vec<Run>> = parts.iter().map(|p| run_shapes(quiver, p)).collect();
        if shape_lists.iter().any(|l| l.is_empty()) {
            continue;
        }
        let mut pick = vec![0usize; shape_lists.len()];
        'combos: loop {
            let runs: Vec<&Run> = pick
                .iter()
                .enumerate()
                .map(|(k, &i)| &shape_lists[k][i])
                .collect();
            if runs_compatible(&runs) {
                let mut by_mu: std::collections::BTreeMap<Rational, LeveledDimVector> =
                    std::collections::BTreeMap::new();
                for r in &runs {
                    let entry = by_mu.entry(r.mu).or_default();
                    *entry = entry.add(&r.content);
                }
                found.insert(Stratum::from_parts(by_mu.into_iter().collect()));
            }
            let mut k = 0;
            loop {
                if k == pick.len() {
                    break 'combos;
                }
                pick[k] += 1;
                if pick[k] < shape_lists[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }
    found.into_iter().collect()
}

/// Runs of the same slope must stay separated by at least one empty level,
/// otherwise they would merge into a single run and the configuration is
/// already enumerated by the merged shape.
fn runs_compatible(runs: &[&Run]) -> bool {
    for (k, a) in runs.iter().enumerate() {
        for b in runs.iter().skip(k + 1) {
            if a.mu == b.mu {
                let (first, second) = if a.lo <= b.lo { (a, b) } else { (b, a) };
                if second.lo <= first.hi + 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Slope-only enumeration: each slope component needs only the aggregate
/// condition `sigma(e_mu) = mu`, with occupied levels confined to
/// `[-window, window]`. Strictly contains the per-run set once the window
/// covers it (any window >= dim d does).
pub fn enumerate_strata_slope_only(quiver: &Quiver, d: &DimVector, window: i64) -> Vec<Stratum> {
    let n = quiver.vertex_count();
    let mut found: BTreeSet<Stratum> = BTreeSet::new();
    for parts in multiset_decompositions(d) {
        let arrangement_lists: Vec<Vec<(Rational, LeveledDimVector)>> =
            parts.iter().map(|p| arrangements(n, p, window)).collect();
        if arrangement_lists.iter().any(|l| l.is_empty()) {
            continue;
        }
        let mut pick = vec![0usize; arrangement_lists.len()];
        'combos: loop {
            let chosen: Vec<&(Rational, LeveledDimVector)> = pick
                .iter()
                .enumerate()
                .map(|(k, &i)| &arrangement_lists[k][i])
                .collect();
            let mut by_mu: std::collections::BTreeMap<Rational, LeveledDimVector> =
                std::collections::BTreeMap::new();
            for (mu, e) in &chosen {
                let entry = by_mu.entry(*mu).or_default();
                *entry = entry.add(e);
            }
            // merging can change the aggregate slope; keep only valid tuples
            if by_mu.iter().all(|(mu, e)| e.slope() == Some(*mu)) {
                found.insert(Stratum::from_parts(by_mu.into_iter().collect()));
            }
            let mut k = 0;
            loop {
                if k == pick.len() {
                    break 'combos;
                }
                pick[k] += 1;
                if pick[k] < arrangement_lists[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }
    found.into_iter().collect()
}

/// All placements of the vertex mass `part` on levels `[-window, window]`
/// whose aggregate slope lands in `[0, 1)`.
fn arrangements(n: usize, part: &DimVector, window: i64) -> Vec<(Rational, LeveledDimVector)> {
    let levels: Vec<i64> = (-window..=window).collect();
    // per vertex: distribute part[i] over the levels
    let per_vertex: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|i| compositions(part[i], levels.len()))
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; n];
    loop {
        let mut e = LeveledDimVector::new();
        for i in 0..n {
            for (k, &m) in per_vertex[i][pick[i]].iter().enumerate() {
                e.insert(levels[k], i, m);
            }
        }
        if let Some(mu) = e.slope() {
            if mu >= Rational::from_integer(0) && mu < Rational::from_integer(1) {
                out.push((mu, e));
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            pick[k] += 1;
            if pick[k] < per_vertex[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}
