//! The motive of the nullcone `[N_d]` by its two explicit routes: the
//! sub-vector recursion and the resolved sum over ordered decompositions,
//! plus closed forms for special cases, the leading term for symmetric
//! quivers, and the predicted monomial support for loop quivers.

use std::collections::{BTreeSet, HashMap};
use std::sync::RwLock;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::motive::{gauss_binomial_dim, gauss_multinomial, multinomial_coefficient, LaurentPoly};
use crate::quiver::{DimVector, Quiver};

/// Memoizing calculator for `[N_d]` over a fixed quiver.
///
/// The recursion revisits the sub-vector lattice heavily, so results are
/// cached per dimension vector. The cache is behind an `RwLock`; inserts are
/// idempotent (recomputation yields identical polynomials), so concurrent
/// use is safe.
pub struct NullconeCalculator {
    quiver: Quiver,
    memo: RwLock<HashMap<DimVector, LaurentPoly>>,
}

impl NullconeCalculator {
    pub fn new(quiver: Quiver) -> Self {
        NullconeCalculator {
            quiver,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// `[N_d]` by the recursion
    /// `[N_d] = -sum_{e < d} (-1)^{dim d - dim e}
    ///          L^{sum_i (C(d_i,2) - C(e_i,2)) - <e, d-e>} [d over e]_L [N_e]`
    /// with `[N_0] = 1`.
    pub fn motive_recursive(&self, d: &DimVector) -> LaurentPoly {
        if let Some(hit) = self.memo.read().expect("memo lock").get(d) {
            return hit.clone();
        }
        let result = if d.is_zero() {
            LaurentPoly::one()
        } else {
            let dim_d = d.total_dim() as i64;
            let c2 = |x: u32| (x as i64) * (x as i64 - 1) / 2;
            let mut acc = LaurentPoly::zero();
            for e in d.proper_sub_vectors() {
                let diff = d.checked_sub(&e).expect("e <= d");
                let exp: i64 = d
                    .entries()
                    .iter()
                    .zip(e.entries())
                    .map(|(&di, &ei)| c2(di) - c2(ei))
                    .sum::<i64>()
                    - self.quiver.euler_form(&e, &diff);
                debug_assert!(exp >= 0, "recursion exponent must be nonnegative");
                let sign = if (dim_d - e.total_dim() as i64) % 2 == 0 {
                    1
                } else {
                    -1
                };
                let term = &gauss_binomial_dim(d, &e) * &self.motive_recursive(&e);
                acc = &acc + &term.shifted(exp).scaled_i64(sign);
            }
            -&acc
        };
        self.memo
            .write()
            .expect("memo lock")
            .insert(d.clone(), result.clone());
        result
    }

    /// Snapshot of the memo table, sorted by dimension vector.
    pub fn memo_snapshot(&self) -> Vec<(DimVector, LaurentPoly)> {
        let mut rows: Vec<_> = self
            .memo
            .read()
            .expect("memo lock")
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        rows
    }

    /// Preloads previously computed entries (e.g. from a cache file).
    pub fn preload(&self, entries: Vec<(DimVector, LaurentPoly)>) {
        let mut memo = self.memo.write().expect("memo lock");
        for (k, v) in entries {
            memo.insert(k, v);
        }
    }
}

/// `[N_d]` by the resolved sum over ordered decompositions:
/// `(-1)^{dim d} L^{sum_i C(d_i,2)} sum_{d*} (-1)^s
///  L^{-sum_{k<l} <d^k, d^l>} [d over d^1,...,d^s]_L`.
pub fn motive_resolved(quiver: &Quiver, d: &DimVector) -> LaurentPoly {
    if d.is_zero() {
        return LaurentPoly::one();
    }
    let pre: i64 = d
        .entries()
        .iter()
        .map(|&x| (x as i64) * (x as i64 - 1) / 2)
        .sum();
    let decomps: Vec<Vec<DimVector>> = d.ordered_decompositions().expect("d is nonzero").collect();
    let total = decomps
        .par_iter()
        .map(|parts| {
            let s = parts.len();
            let mut twist: i64 = 0;
            for k in 0..s {
                for l in k + 1..s {
                    twist -= quiver.euler_form(&parts[k], &parts[l]);
                }
            }
            let sign = if s % 2 == 0 { 1 } else { -1 };
            gauss_multinomial(d, parts).shifted(twist).scaled_i64(sign)
        })
        .reduce(LaurentPoly::zero, |a, b| &a + &b);
    let sign = if d.total_dim().is_multiple_of(2) {
        1
    } else {
        -1
    };
    total.shifted(pre).scaled_i64(sign)
}

/// `[N_d] = [R_d] = L^{dim R_d}` for acyclic quivers.
pub fn motive_acyclic(quiver: &Quiver, d: &DimVector) -> Result<LaurentPoly> {
    if !quiver.is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    Ok(LaurentPoly::lefschetz(quiver.rep_space_dim(d) as i64))
}

/// Default cap on the expanded arrow count for [`motive_dim_one`].
pub const DIM_ONE_ARROW_CAP: usize = 20;

/// `[N_1] = sum over acyclic arrow subsets F of (L-1)^{|F|}`, at the
/// all-ones dimension vector. Subset enumeration is exponential in the
/// expanded arrow count, so it is guarded by `cap`.
pub fn motive_dim_one(quiver: &Quiver, cap: Option<usize>) -> Result<LaurentPoly> {
    let arrows = quiver.expanded_arrows();
    let cap = cap.unwrap_or(DIM_ONE_ARROW_CAP);
    if arrows.len() > cap {
        return Err(Error::ArrowCapExceeded(arrows.len(), cap));
    }
    let n = quiver.vertex_count();
    let l_minus_1 = crate::motive::poly(&[(1, 1), (0, -1)]);
    let mut acc = LaurentPoly::zero();
    for mask in 0u64..(1u64 << arrows.len()) {
        let subset: Vec<(usize, usize)> = arrows
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        if !subquiver_acyclic(n, &subset) {
            continue;
        }
        let mut term = LaurentPoly::one();
        for _ in 0..subset.len() {
            term = &term * &l_minus_1;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

fn subquiver_acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    // cycle detection on the support digraph; parallel edges are irrelevant,
    // loops are cycles
    if edges.iter().any(|&(i, j)| i == j) {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        adj[i].push(j);
    }
    let mut color = vec![0u8; n]; // 0 unvisited, 1 in progress, 2 done
    fn dfs(u: usize, adj: &[Vec<usize>], color: &mut [u8]) -> bool {
        color[u] = 1;
        for &v in &adj[u] {
            if color[v] == 1 {
                return false;
            }
            if color[v] == 0 && !dfs(v, adj, color) {
                return false;
            }
        }
        color[u] = 2;
        true
    }
    (0..n).all(|u| color[u] != 0 || dfs(u, &adj, &mut color))
}

/// Leading term `(dim d)!/prod d_i! * L^{sum_i (r_ii+1) C(d_i,2) + sum_{i<j} r_ij d_i d_j}`
/// of `n_d` for a symmetric quiver.
///
/// The closed form holds when every vertex with `d_i >= 2` carries a loop;
/// without a loop, refinements inside that vertex do not raise the degree
/// and the top coefficient can drop below the multinomial count.
pub fn leading_term_symmetric(quiver: &Quiver, d: &DimVector) -> Result<(BigUint, i64)> {
    if !quiver.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = quiver.vertex_count();
    let mut exp: i64 = 0;
    for i in 0..n {
        let di = d[i] as i64;
        exp += (quiver.arrow_mult(i, i) as i64 + 1) * di * (di - 1) / 2;
        for j in i + 1..n {
            exp += quiver.arrow_mult(i, j) as i64 * di * d[j] as i64;
        }
    }
    Ok((multinomial_coefficient(d), exp))
}

/// Predicted exponent support of `[N_d]` for the m-loop quiver:
/// `{ km + l : k = 0 or d-1 <= k <= C(d,2), C(d,2)-k <= l <= C(d,2) }`.
///
/// The `k = 0` row contributes the single exponent `C(d,2)` (the `-L^{C(d,2)}`
/// tail visible in every worked value, e.g. `[N_2] = L^{m+1} + L^m - L`).
/// The set equals the true support whenever no two `(k,l)` cells collide with
/// cancelling coefficients; that is guaranteed for m > C(d,2) and observed
/// for m = 3, d <= 4, while m = 2 cancels at d = 3 (exponent 7) and d = 4
/// (exponents 11, 15), and m = 1 collapses much further.
pub fn monomial_support_loop(m: u32, d: u32) -> BTreeSet<i64> {
    let m = m as i64;
    let c = (d as i64) * (d as i64 - 1) / 2;
    let mut out = BTreeSet::new();
    let mut rows: Vec<i64> = vec![0];
    rows.extend((d as i64 - 1).max(0)..=c);
    for k in rows {
        if k != 0 && k < d as i64 - 1 {
            continue;
        }
        for l in (c - k)..=c {
            out.insert(k * m + l);
        }
    }
    out
}

/// Reference closed forms for the m-loop quiver, d <= 4.
pub mod reference {
    use crate::motive::LaurentPoly;

    /// `[N_d]` for the quiver with one vertex and `m` loops, for `d <= 4`.
    ///
    /// Each row is `(k, l, coefficient)` for the monomial `c * L^{km+l}`.
    /// Coefficients of colliding exponents merge on instantiation (at m = 1,
    /// for example, `L^{m+1} + L^m - L` collapses to `L^2`).
    pub fn loop_motive(m: u32, d: u32) -> Option<LaurentPoly> {
        let m = m as i64;
        let rows: &[(i64, i64, i64)] = match d {
            0 | 1 => &[(0, 0, 1)],
            // L^{m+1} + L^m - L
            2 => &[(1, 1, 1), (1, 0, 1), (0, 1, -1)],
            3 => &[
                (3, 3, 1),
                (3, 2, 2),
                (3, 1, 2),
                (3, 0, 1),
                (2, 3, -2),
                (2, 2, -2),
                (2, 1, -2),
                (0, 3, 1),
            ],
            4 => &[
                (6, 6, 1),
                (6, 5, 3),
                (6, 4, 5),
                (6, 3, 6),
                (6, 2, 5),
                (6, 1, 3),
                (6, 0, 1),
                (5, 6, -3),
                (5, 5, -6),
                (5, 4, -9),
                (5, 3, -9),
                (5, 2, -6),
                (5, 1, -3),
                (4, 6, 1),
                (4, 5, 1),
                (4, 4, 2),
                (4, 3, 1),
                (4, 2, 1),
                (3, 6, 2),
                (3, 5, 2),
                (3, 4, 2),
                (3, 3, 2),
                (0, 6, -1),
            ],
            _ => return None,
        };
        let mut p = LaurentPoly::zero();
        for &(k, l, c) in rows {
            p = &p + &LaurentPoly::monomial(k * m + l, c);
        }
        Some(p)
    }
}
