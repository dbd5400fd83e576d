//! The truncated twisted power series ring with basis `t^d` and product
//! `t^d · t^e = L^{-<d,e>} t^{d+e}`, truncated by total dimension.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::motive::{group_motive_inverse, pochhammer_dim_factors, LaurentPoly, MotiveRat};
use crate::nullcone::NullconeCalculator;
use crate::quiver::{DimVector, Quiver};

/// Which generating series to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `sum_d t^d / (L)_d`.
    PochhammerInverse,
    /// `sum_d [N_d]/[G_d] t^d`.
    Nullcone,
    /// `sum_d [R_d]/[G_d] t^d = sum_d L^{dim R_d}/[G_d] t^d`.
    RepSpace,
}

/// A series over the motive ring, truncated to `dim d <= bound`.
#[derive(Debug, Clone)]
pub struct TwistedSeries {
    quiver: Quiver,
    bound: u32,
    coeffs: BTreeMap<DimVector, MotiveRat>,
}

impl TwistedSeries {
    pub fn new(quiver: Quiver, bound: u32) -> Self {
        TwistedSeries {
            quiver,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(quiver: Quiver, bound: u32) -> Self {
        let mut s = Self::new(quiver, bound);
        let zero = DimVector::zeros(s.quiver.vertex_count());
        s.coeffs.insert(zero, MotiveRat::one());
        s
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coeff(&self, d: &DimVector) -> MotiveRat {
        self.coeffs.get(d).cloned().unwrap_or_else(MotiveRat::zero)
    }

    pub fn set_coeff(&mut self, d: DimVector, value: MotiveRat) {
        assert!(d.total_dim() <= self.bound, "coefficient beyond the bound");
        if value.is_zero() {
            self.coeffs.remove(&d);
        } else {
            self.coeffs.insert(d, value);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<DimVector, MotiveRat> {
        &self.coeffs
    }

    /// All dimension vectors with `dim d <= bound`, graded-lexicographic.
    pub fn index_set(&self) -> Vec<DimVector> {
        dim_vectors_up_to(self.quiver.vertex_count(), self.bound)
    }

    fn check_compatible(&self, other: &TwistedSeries) -> Result<()> {
        if self.quiver != other.quiver || self.bound != other.bound {
            return Err(Error::SeriesMismatch);
        }
        Ok(())
    }

    /// Twisted product: coefficient of `t^d` is
    /// `sum_{e <= d} L^{-<e, d-e>} f_e g_{d-e}`.
    pub fn mul(&self, other: &TwistedSeries) -> Result<TwistedSeries> {
        self.check_compatible(other)?;
        let mut out = TwistedSeries::new(self.quiver.clone(), self.bound);
        for (e, fe) in &self.coeffs {
            for (h, gh) in &other.coeffs {
                let d = e.add(h);
                if d.total_dim() > self.bound {
                    continue;
                }
                let twist = -self.quiver.euler_form(e, h);
                let term = fe.mul(gh).shifted(twist);
                let cur = out.coeff(&d).add(&term);
                out.set_coeff(d, cur);
            }
        }
        Ok(out)
    }

    /// Two-sided inverse in the truncated filtered ring, degree by degree.
    ///
    /// The constant coefficient must be invertible (a unit such as `±L^a`).
    pub fn invert(&self) -> Result<TwistedSeries> {
        let zero = DimVector::zeros(self.quiver.vertex_count());
        let f0 = self.coeff(&zero);
        if f0.is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let f0_inv = f0.invert().map_err(|_| Error::NonUnitConstantTerm)?;
        let mut out = TwistedSeries::new(self.quiver.clone(), self.bound);
        out.set_coeff(zero.clone(), f0_inv.clone());
        // increasing total dimension: solve sum_{e <= d} L^{-<e,d-e>} f_e g_{d-e} = 0
        for d in self.index_set() {
            if d.is_zero() {
                continue;
            }
            let mut acc = MotiveRat::zero();
            for e in d.sub_vectors() {
                if e.is_zero() {
                    continue;
                }
                let rest = d.checked_sub(&e).expect("e <= d");
                let fe = self.coeff(&e);
                if fe.is_zero() {
                    continue;
                }
                let ge = out.coeff(&rest);
                if ge.is_zero() {
                    continue;
                }
                let twist = -self.quiver.euler_form(&e, &rest);
                acc = acc.add(&fe.mul(&ge).shifted(twist));
            }
            out.set_coeff(d, acc.neg().mul(&f0_inv));
        }
        Ok(out)
    }

    /// True iff the series is exactly `1`.
    pub fn is_one(&self) -> bool {
        let zero = DimVector::zeros(self.quiver.vertex_count());
        self.coeffs.iter().all(|(d, c)| {
            if *d == zero {
                c == &MotiveRat::one()
            } else {
                c.is_zero()
            }
        }) && self.coeff(&zero) == MotiveRat::one()
    }
}

/// Dimension vectors with `dim d <= bound` in graded-lexicographic order.
pub fn dim_vectors_up_to(n: usize, bound: u32) -> Vec<DimVector> {
    let mut out = Vec::new();
    let full = DimVector::new(vec![bound; n]);
    for d in full.sub_vectors() {
        if d.total_dim() <= bound {
            out.push(d);
        }
    }
    out.sort_by_key(|d| (d.total_dim(), d.clone()));
    out
}

/// Builds one of the named generating series up to the bound.
pub fn exp_series(calc: &NullconeCalculator, bound: u32, kind: SeriesKind) -> TwistedSeries {
    let quiver = calc.quiver().clone();
    let mut s = TwistedSeries::new(quiver.clone(), bound);
    for d in dim_vectors_up_to(quiver.vertex_count(), bound) {
        let coeff = match kind {
            SeriesKind::PochhammerInverse => {
                MotiveRat::new(LaurentPoly::one(), pochhammer_dim_factors(&d))
            }
            SeriesKind::Nullcone => {
                let n = calc.motive_recursive(&d);
                group_motive_inverse(&d).mul_poly(&n)
            }
            SeriesKind::RepSpace => {
                let r = LaurentPoly::lefschetz(quiver.rep_space_dim(&d) as i64);
                group_motive_inverse(&d).mul_poly(&r)
            }
        };
        s.set_coeff(d, coeff);
    }
    s
}

/// The generating-function identity: nullcone series times Pochhammer-inverse
/// series equals 1, exactly, up to the bound.
pub fn generating_identity_holds(calc: &NullconeCalculator, bound: u32) -> bool {
    let n = exp_series(calc, bound, SeriesKind::Nullcone);
    let p = exp_series(calc, bound, SeriesKind::PochhammerInverse);
    match n.mul(&p) {
        Ok(prod) => prod.is_one(),
        Err(_) => false,
    }
}
