//! Semistable-locus motives on the integral level quiver via the
//! Harder-Narasimhan recursion.
//!
//! With the slope `sigma = theta/dim`, `theta(i,a) = -a`, the definitional
//! identity decomposes `[R_e]/[G_e]` over tuples `(f^1,...,f^s)` of nonzero
//! sub-vectors summing to `e` with strictly decreasing slopes:
//!
//! `[R_e]/[G_e] = sum L^{-sum_{k<l} <f^l, f^k>} prod [R^sst_{f^k}]/[G_{f^k}]`
//!
//! solved for the `s = 1` term. The twist pairs later parts against earlier
//! ones; the orientation is pinned by the worked small cases (`L^m - 1` for
//! the two-level loop column, `(L^m-1)(L^m-L)` for the (1,2) column).

use std::collections::HashMap;
use std::sync::RwLock;

use super::{level_euler_form, level_group_motive, level_rep_dim, LeveledDimVector};
use crate::motive::{LaurentPoly, MotiveRat};
use crate::quiver::Quiver;

/// Memoizing calculator for `[R^sst_e]/[G_e]`.
///
/// Semistability is shift-invariant (shifting all levels moves every slope by
/// the same constant), so entries are cached with the support normalized to
/// start at level 0.
pub struct SemistableCalculator {
    quiver: Quiver,
    memo: RwLock<HashMap<LeveledDimVector, MotiveRat>>,
}

impl SemistableCalculator {
    pub fn new(quiver: Quiver) -> Self {
        SemistableCalculator {
            quiver,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// `[R^sst_e]/[G_e]`.
    pub fn semistable_ratio(&self, e: &LeveledDimVector) -> MotiveRat {
        if e.is_zero() {
            return MotiveRat::one();
        }
        let key = e.normalized();
        if let Some(hit) = self.memo.read().expect("memo lock").get(&key) {
            return hit.clone();
        }
        let full = MotiveRat::from_poly(LaurentPoly::lefschetz(level_rep_dim(&self.quiver, &key)))
            .mul(
                &MotiveRat::from_poly(level_group_motive(&key))
                    .invert()
                    .expect("group motive is a unit"),
            );
        // subtract all HN types with at least two parts
        let mut correction = MotiveRat::zero();
        let mut parts: Vec<LeveledDimVector> = Vec::new();
        self.hn_types(&key, None, &mut parts, &mut correction);
        let result = full.sub(&correction);
        self.memo
            .write()
            .expect("memo lock")
            .insert(key, result.clone());
        result
    }

    /// `[R^sst_e]`, the semistable-locus motive itself.
    pub fn semistable_locus(&self, e: &LeveledDimVector) -> MotiveRat {
        self.semistable_ratio(e).mul_poly(&level_group_motive(e))
    }

    fn hn_types(
        &self,
        remaining: &LeveledDimVector,
        prev_slope: Option<super::Rational>,
        parts: &mut Vec<LeveledDimVector>,
        acc: &mut MotiveRat,
    ) {
        if remaining.is_zero() {
            if parts.len() >= 2 {
                let mut twist: i64 = 0;
                for k in 0..parts.len() {
                    for l in k + 1..parts.len() {
                        twist -= level_euler_form(&self.quiver, &parts[l], &parts[k]);
                    }
                }
                let mut term = MotiveRat::from_poly(LaurentPoly::lefschetz(twist));
                for f in parts.iter() {
                    term = term.mul(&self.semistable_ratio(f));
                    if term.is_zero() {
                        break;
                    }
                }
                *acc = acc.add(&term);
            }
            return;
        }
        for f in remaining.sub_vectors() {
            if f.is_zero() {
                continue;
            }
            let slope = f.slope().expect("nonzero");
            if let Some(prev) = prev_slope {
                if slope >= prev {
                    continue;
                }
            }
            let rest = remaining.checked_sub(&f).expect("f <= remaining");
            parts.push(f);
            self.hn_types(&rest, Some(slope), parts, acc);
            parts.pop();
        }
    }

    /// Definitional sanity check: summing over all HN types (including the
    /// semistable one) reconstructs `[R_e]/[G_e]`.
    pub fn hn_reconstructs_full(&self, e: &LeveledDimVector) -> bool {
        if e.is_zero() {
            return true;
        }
        let mut acc = self.semistable_ratio(e);
        let mut parts = Vec::new();
        self.hn_types(e, None, &mut parts, &mut acc);
        let full = MotiveRat::from_poly(LaurentPoly::lefschetz(level_rep_dim(&self.quiver, e)))
            .mul(
                &MotiveRat::from_poly(level_group_motive(e))
                    .invert()
                    .expect("group motive is a unit"),
            );
        acc == full
    }
}
