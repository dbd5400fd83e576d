//! Motivic Donaldson-Thomas invariants of symmetric quivers via plethystic
//! Exp/Log on truncated commutative series in x^d with coefficients in the
//! half-power ring.
//!
//! For a symmetric quiver the rescaled variables `x^d = (-w)^{-<d,d>} t^d`
//! commute, so the representation series lives in an ordinary truncated
//! series ring. DT invariants are extracted by the plethystic logarithm:
//! `sum_d (-w)^{<d,d>} [R_d]/[G_d] x^d = Exp((w^{-1}-w)^{-1} sum DT_d x^d)`.
//!
//! Exactness strategy: the coefficients are rational (they carry `1/[G_d]`),
//! so the logarithm is computed through the Adams/Moebius formula
//! `Log f = sum_j (mu(j)/j) psi_j(log f)` with one global integer scale
//! `N = lcm(1..bound)` clearing every scalar denominator; no power-series
//! expansion of `1/(1-L^i)` ever happens, and the final division by the
//! scale doubles as the integrality assertion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::motive::{HalfPoly, HalfRat, LaurentPoly};
use crate::nullcone::NullconeCalculator;
use crate::quiver::{DimVector, Quiver};
use crate::series::dim_vectors_up_to;

/// Truncated commutative series over the half-power ring, indexed by
/// dimension vectors with `dim d <= bound`.
#[derive(Debug, Clone)]
pub struct SymSeries {
    quiver: Quiver,
    bound: u32,
    coeffs: BTreeMap<DimVector, HalfRat>,
}

impl SymSeries {
    pub fn new(quiver: Quiver, bound: u32) -> Result<Self> {
        if !quiver.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(SymSeries {
            quiver,
            bound,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn one(quiver: Quiver, bound: u32) -> Result<Self> {
        let mut s = Self::new(quiver, bound)?;
        let zero = DimVector::zeros(s.quiver.vertex_count());
        s.coeffs.insert(zero, HalfRat::one());
        Ok(s)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coeff(&self, d: &DimVector) -> HalfRat {
        self.coeffs.get(d).cloned().unwrap_or_else(HalfRat::zero)
    }

    pub fn set_coeff(&mut self, d: DimVector, value: HalfRat) {
        assert!(d.total_dim() <= self.bound);
        if value.is_zero() {
            self.coeffs.remove(&d);
        } else {
            self.coeffs.insert(d, value);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<DimVector, HalfRat> {
        &self.coeffs
    }

    fn check_compatible(&self, other: &SymSeries) -> Result<()> {
        if self.quiver != other.quiver || self.bound != other.bound {
            return Err(Error::SeriesMismatch);
        }
        Ok(())
    }

    /// Commutative product (`x^d x^e = x^{d+e}`), truncated.
    pub fn mul(&self, other: &SymSeries) -> Result<SymSeries> {
        self.check_compatible(other)?;
        let mut out = SymSeries::new(self.quiver.clone(), self.bound)?;
        for (e, ce) in &self.coeffs {
            for (f, cf) in &other.coeffs {
                let d = e.add(f);
                if d.total_dim() > self.bound {
                    continue;
                }
                let term = ce.mul(cf);
                let cur = out.coeff(&d).add(&term);
                out.set_coeff(d, cur);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &SymSeries) -> Result<SymSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            let cur = out.coeff(d).add(c);
            out.set_coeff(d.clone(), cur);
        }
        Ok(out)
    }

    pub fn scaled(&self, s: &BigInt) -> SymSeries {
        let mut out = self.clone();
        out.coeffs = self
            .coeffs
            .iter()
            .map(|(d, c)| (d.clone(), c.scaled(s)))
            .collect();
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    /// Adams operation: `x^d -> x^{jd}`, `w -> w^j` on coefficients.
    pub fn psi(&self, j: u32) -> SymSeries {
        let mut out = SymSeries {
            quiver: self.quiver.clone(),
            bound: self.bound,
            coeffs: BTreeMap::new(),
        };
        for (d, c) in &self.coeffs {
            let mut jd = DimVector::zeros(d.len());
            for _ in 0..j {
                jd = jd.add(d);
            }
            if jd.total_dim() <= self.bound {
                out.coeffs.insert(jd, c.psi(j));
            }
        }
        out
    }

    pub fn eq_coefficients(&self, other: &SymSeries) -> bool {
        let n = self.quiver.vertex_count();
        dim_vectors_up_to(n, self.bound)
            .into_iter()
            .all(|d| self.coeff(&d) == other.coeff(&d))
    }
}

/// The representation series `sum_d (-w)^{<d,d>} L^{dim R_d} / [G_d] x^d`.
pub fn rep_series(quiver: &Quiver, bound: u32) -> Result<SymSeries> {
    series_from_motives(quiver, bound, |_, d| {
        LaurentPoly::lefschetz(quiver.rep_space_dim(d) as i64)
    })
}

/// The nullcone series `sum_d (-w)^{<d,d>} [N_d] / [G_d] x^d`.
pub fn nullcone_series(calc: &NullconeCalculator, bound: u32) -> Result<SymSeries> {
    series_from_motives(calc.quiver(), bound, |_, d| calc.motive_recursive(d))
}

fn series_from_motives(
    quiver: &Quiver,
    bound: u32,
    motive: impl Fn(&Quiver, &DimVector) -> LaurentPoly,
) -> Result<SymSeries> {
    let mut s = SymSeries::new(quiver.clone(), bound)?;
    for d in dim_vectors_up_to(quiver.vertex_count(), bound) {
        let pairing = quiver.euler_form(&d, &d);
        // (-w)^{<d,d>} * numerator / [G_d], with
        // 1/[G_d] = (-1)^{dim d} L^{-sum C(d_i,2)} / (L)_d
        let c2_sum: i64 = d
            .entries()
            .iter()
            .map(|&x| (x as i64) * (x as i64 - 1) / 2)
            .sum();
        let dim = d.total_dim() as i64;
        let sign = if (pairing + dim).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        let num = HalfPoly::from_laurent(&motive(quiver, &d))
            .shifted(pairing - 2 * c2_sum)
            .scaled(&BigInt::from(sign));
        let den: BTreeMap<u32, u32> = crate::motive::pochhammer_dim_factors(&d)
            .into_iter()
            .collect();
        let coeff = HalfRat::new(num, den);
        // every w-exponent in the coefficient of x^d has the parity of <d,d>
        assert!(
            coeff.has_parity(pairing),
            "series coefficient parity violated at {d}"
        );
        s.set_coeff(d, coeff);
    }
    Ok(s)
}

/// Plethystic exponential by the product formula:
/// `Exp(sum c_{d,k} w^k x^d) = prod (1 - w^k x^d)^{-c_{d,k}}`.
///
/// Requires a zero constant term and Laurent-polynomial coefficients.
pub fn pleth_exp(a: &SymSeries) -> Result<SymSeries> {
    let n = a.quiver.vertex_count();
    let zero = DimVector::zeros(n);
    if !a.coeff(&zero).is_zero() {
        return Err(Error::NonUnitConstantTerm);
    }
    let mut out = SymSeries::one(a.quiver.clone(), a.bound)?;
    for (d, c) in &a.coeffs {
        let c = c.clone().reduced();
        let Some(p) = c.as_poly() else {
            return Err(Error::NonIntegerPlethysticCoefficient(format!(
                "coefficient at {d} is not polynomial: {c}"
            )));
        };
        for (&k, coeff) in p.terms() {
            let c_int = bigint_to_i64(coeff).ok_or_else(|| {
                Error::NonIntegerPlethysticCoefficient(format!("huge exponent count at {d}"))
            })?;
            out = mul_exp_factor(&out, d, k, -c_int)?;
        }
    }
    Ok(out)
}

/// Multiplies by `(1 - w^k x^d)^{power}` on the truncated ring.
fn mul_exp_factor(s: &SymSeries, d: &DimVector, k: i64, power: i64) -> Result<SymSeries> {
    if power == 0 {
        return Ok(s.clone());
    }
    let factor_once = |s: &SymSeries, negate: bool| -> Result<SymSeries> {
        // 1 - w^k x^d, or its truncated inverse 1 + w^k x^d + w^2k x^2d + ...
        let mut f = SymSeries::one(s.quiver.clone(), s.bound)?;
        if negate {
            let steps = if d.total_dim() == 0 {
                0
            } else {
                s.bound / d.total_dim()
            };
            let mut key = DimVector::zeros(d.len());
            for j in 1..=steps as i64 {
                key = key.add(d);
                f.set_coeff(
                    key.clone(),
                    HalfRat::from_poly(HalfPoly::monomial(k * j, 1)),
                );
            }
        } else {
            f.set_coeff(d.clone(), HalfRat::from_poly(HalfPoly::monomial(k, -1)));
        }
        s.mul(&f)
    };
    let mut out = s.clone();
    for _ in 0..power.unsigned_abs() {
        out = factor_once(&out, power < 0)?;
    }
    Ok(out)
}

fn bigint_to_i64(x: &BigInt) -> Option<i64> {
    i64::try_from(x.clone()).ok()
}

/// Plethystic logarithm by factor peeling, the inverse of [`pleth_exp`]:
/// processes dimension vectors in graded order, reads off the integer
/// exponents `c_{d,k}` from the residual coefficient at `x^d`, divides the
/// factors back out, and continues. Errors if a residual coefficient fails
/// to be an integer Laurent polynomial in w.
pub fn pleth_log(f: &SymSeries) -> Result<SymSeries> {
    let n = f.quiver.vertex_count();
    let zero = DimVector::zeros(n);
    if !(f.coeff(&zero) == HalfRat::one()) {
        return Err(Error::NonUnitConstantTerm);
    }
    let mut residual = f.clone();
    let mut out = SymSeries::new(f.quiver.clone(), f.bound)?;
    for d in dim_vectors_up_to(n, f.bound) {
        if d.is_zero() {
            continue;
        }
        let c = residual.coeff(&d).reduced();
        if c.is_zero() {
            continue;
        }
        let Some(p) = c.as_poly().cloned() else {
            return Err(Error::NonIntegerPlethysticCoefficient(format!(
                "residual at {d}: {c}"
            )));
        };
        for (&k, coeff) in p.terms() {
            let c_int = bigint_to_i64(coeff).ok_or_else(|| {
                Error::NonIntegerPlethysticCoefficient(format!("huge exponent count at {d}"))
            })?;
            residual = mul_exp_factor(&residual, &d, k, c_int)?;
        }
        out.set_coeff(d, HalfRat::from_poly(p));
    }
    Ok(out)
}

fn lcm_up_to(bound: u32) -> BigInt {
    let mut l = BigInt::one();
    for j in 1..=bound.max(1) as i64 {
        l = l.lcm(&BigInt::from(j));
    }
    l
}

fn moebius(n: u32) -> i64 {
    if n == 1 {
        return 1;
    }
    let mut x = n;
    let mut m = 1i64;
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            x /= p;
            if x.is_multiple_of(p) {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if x > 1 {
        m = -m;
    }
    m
}

/// `N^2 * Log(f)` for `N = lcm(1..bound)`, on rational coefficients.
///
/// `log f = sum_m (-1)^{m-1} (f-1)^m / m` terminates at `m = bound` on the
/// truncated ring, and `Log f = sum_j (mu(j)/j) psi_j(log f)`; the scale
/// `N^2` clears both scalar denominators.
pub fn pleth_log_scaled(f: &SymSeries) -> Result<(SymSeries, BigInt)> {
    let n = f.quiver.vertex_count();
    let zero = DimVector::zeros(n);
    if !(f.coeff(&zero) == HalfRat::one()) {
        return Err(Error::NonUnitConstantTerm);
    }
    let big_n = lcm_up_to(f.bound);
    // g = f - 1
    let mut g = f.clone();
    g.set_coeff(zero.clone(), f.coeff(&zero).sub(&HalfRat::one()));
    // F = N log f
    let mut log_scaled = SymSeries::new(f.quiver.clone(), f.bound)?;
    let mut g_pow = SymSeries::one(f.quiver.clone(), f.bound)?;
    for m in 1..=f.bound.max(1) {
        g_pow = g_pow.mul(&g)?;
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let scalar = &big_n / BigInt::from(m) * BigInt::from(sign);
        log_scaled = log_scaled.add(&g_pow.scaled(&scalar))?;
    }
    // A = sum_j mu(j)/j psi_j(F/N): scaled by N^2
    let mut out = SymSeries::new(f.quiver.clone(), f.bound)?;
    for j in 1..=f.bound.max(1) {
        let mu = moebius(j);
        if mu == 0 {
            continue;
        }
        let scalar = &big_n / BigInt::from(j) * BigInt::from(mu);
        out = out.add(&log_scaled.psi(j).scaled(&scalar))?;
    }
    Ok((out, &big_n * &big_n))
}

/// Plethystic exponential on rational coefficients through the Adams
/// formula `Exp(A) = sum_m (sum_j psi_j(A)/j)^m / m!`, with one global
/// integer scale cleared at the end (the clearing doubles as an exactness
/// assertion).
pub fn pleth_exp_rational(a: &SymSeries) -> Result<SymSeries> {
    let n = a.quiver.vertex_count();
    let zero = DimVector::zeros(n);
    if !a.coeff(&zero).is_zero() {
        return Err(Error::NonUnitConstantTerm);
    }
    let bound = a.bound.max(1);
    let big_n = lcm_up_to(bound);
    // U_scaled = N * sum_j psi_j(A)/j
    let mut u_scaled = SymSeries::new(a.quiver.clone(), a.bound)?;
    for j in 1..=bound {
        let scalar = &big_n / BigInt::from(j);
        u_scaled = u_scaled.add(&a.psi(j).scaled(&scalar))?;
    }
    // M = N^bound * bound!; result = (sum_m (M / (m! N^m)) U_scaled^m) / M
    let mut big_m = BigInt::one();
    for _ in 0..bound {
        big_m *= &big_n;
    }
    let mut fact = BigInt::one();
    for m in 1..=bound {
        fact *= BigInt::from(m);
    }
    big_m *= &fact;
    let mut acc = SymSeries::one(a.quiver.clone(), a.bound)?.scaled(&big_m);
    let mut u_pow = SymSeries::one(a.quiver.clone(), a.bound)?;
    let mut m_fact = BigInt::one();
    let mut n_pow = BigInt::one();
    for m in 1..=bound {
        u_pow = u_pow.mul(&u_scaled)?;
        m_fact *= BigInt::from(m);
        n_pow *= &big_n;
        let scalar = &big_m / (&m_fact * &n_pow);
        acc = acc.add(&u_pow.scaled(&scalar))?;
    }
    // divide out the global scale exactly
    let mut out = SymSeries::new(a.quiver.clone(), a.bound)?;
    for (d, c) in acc.coeffs() {
        let c = c.clone().reduced();
        let divided = c.div_scalar_exact(&big_m).ok_or_else(|| {
            Error::NonIntegerPlethysticCoefficient(format!(
                "exponential scale division failed at {d}"
            ))
        })?;
        out.set_coeff(d.clone(), divided);
    }
    Ok(out)
}

/// Motivic DT invariants per nonzero dimension vector, as Laurent
/// polynomials in w = L^(1/2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DtResult {
    pub bound: u32,
    pub invariants: BTreeMap<DimVector, HalfPoly>,
}

impl DtResult {
    /// All invariants re-expressed in v = -w have nonnegative coefficients.
    pub fn all_nonnegative_in_minus_w(&self) -> bool {
        self.invariants.values().all(|p| p.nonnegative_in_minus_w())
    }

    pub fn to_json(&self, quiver: &Quiver) -> serde_json::Value {
        serde_json::Value::Array(
            self.invariants
                .iter()
                .map(|(d, p)| {
                    serde_json::json!({
                        "d": d.to_map(quiver),
                        "dt": p.to_json_terms(),
                    })
                })
                .collect(),
        )
    }
}

/// Extracts `DT_d` from the representation series of a symmetric quiver:
/// `DT_d = (w^{-1} - w) * Log(rep series)_d`, asserted to be a Laurent
/// polynomial in w with the parity of `<d,d>` + 1.
pub fn dt_invariants(quiver: &Quiver, bound: u32) -> Result<DtResult> {
    if !quiver.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let f = rep_series(quiver, bound)?;
    let (log_scaled, scale) = pleth_log_scaled(&f)?;
    let prefactor = HalfPoly::from_terms(
        [(-1i64, BigInt::one()), (1, BigInt::from(-1))]
            .into_iter()
            .collect(),
    );
    let mut invariants = BTreeMap::new();
    for d in dim_vectors_up_to(quiver.vertex_count(), bound) {
        if d.is_zero() {
            continue;
        }
        let c = log_scaled.coeff(&d).mul_poly(&prefactor).reduced();
        let poly = c.as_poly().ok_or_else(|| {
            Error::NonPolynomial(format!("DT at {d} has a residual denominator: {c}"))
        })?;
        let dt = poly.div_scalar_exact(&scale).ok_or_else(|| {
            Error::NonIntegerPlethysticCoefficient(format!("DT at {d} is not integral"))
        })?;
        assert!(
            dt.has_parity(quiver.euler_form(&d, &d) + 1),
            "DT parity violated at {d}"
        );
        invariants.insert(d, dt);
    }
    Ok(DtResult { bound, invariants })
}

/// The nullcone-DT identity for symmetric quivers:
/// `sum (-w)^{<d,d>} [N_d]/[G_d] x^d = Exp((w^{-1}-w)^{-1} sum DT_d(w^{-1}) x^d)`.
pub fn nullcone_dt_check(quiver: &Quiver, bound: u32) -> Result<bool> {
    let calc = NullconeCalculator::new(quiver.clone());
    let lhs = nullcone_series(&calc, bound)?;
    let dt = dt_invariants(quiver, bound)?;
    // argument: DT_d(w -> w^{-1}) * w/(1-w^2)
    let mut arg = SymSeries::new(quiver.clone(), bound)?;
    for (d, p) in &dt.invariants {
        let num = p.invert_w().shifted(1);
        arg.set_coeff(d.clone(), HalfRat::new(num, [(1u32, 1u32)].into()));
    }
    let rhs = pleth_exp_rational(&arg)?;
    Ok(lhs.eq_coefficients(&rhs))
}

/// Round trip: re-expanding the extracted DT data reproduces the
/// representation series exactly.
pub fn dt_round_trip(quiver: &Quiver, bound: u32) -> Result<bool> {
    let f = rep_series(quiver, bound)?;
    let dt = dt_invariants(quiver, bound)?;
    let mut arg = SymSeries::new(quiver.clone(), bound)?;
    for (d, p) in &dt.invariants {
        arg.set_coeff(d.clone(), HalfRat::new(p.shifted(1), [(1u32, 1u32)].into()));
    }
    let back = pleth_exp_rational(&arg)?;
    Ok(f.eq_coefficients(&back))
}
