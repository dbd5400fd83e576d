//! The half-power extension: polynomials in w with w^2 = L, and fractions
//! over the factored denominators `prod (1 - L^i)` rewritten in w.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::laurent::LaurentPoly;
use super::polymap::{self, Terms};
use crate::error::{Error, Result};

/// Laurent polynomial in the formal square root w of L.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HalfPoly {
    terms: Terms,
}

impl HalfPoly {
    pub fn zero() -> Self {
        HalfPoly {
            terms: Terms::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * w^e`.
    pub fn monomial(exp: i64, coeff: i64) -> Self {
        Self::monomial_big(exp, BigInt::from(coeff))
    }

    pub fn monomial_big(exp: i64, coeff: BigInt) -> Self {
        let mut terms = Terms::new();
        polymap::add_term(&mut terms, exp, coeff);
        HalfPoly { terms }
    }

    pub fn from_terms(terms: Terms) -> Self {
        HalfPoly { terms }
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    /// Embeds a polynomial in L by doubling exponents.
    pub fn from_laurent(p: &LaurentPoly) -> Self {
        HalfPoly {
            terms: polymap::stretch(p.terms(), 2),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Substitution `w -> -w`: negates coefficients of odd exponents.
    pub fn negate_w(&self) -> Self {
        HalfPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, if e.rem_euclid(2) == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Substitution `w -> w^{-1}`: inverts exponents.
    pub fn invert_w(&self) -> Self {
        HalfPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitution `w^2 -> L`; fails if any exponent is odd.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        let mut out = Terms::new();
        for (&e, c) in &self.terms {
            if e.rem_euclid(2) != 0 {
                return Err(Error::OddHalfExponent(e));
            }
            out.insert(e / 2, c.clone());
        }
        Ok(LaurentPoly::from_terms(out))
    }

    /// Adams substitution `w -> w^j`.
    pub fn stretch(&self, j: i64) -> Self {
        HalfPoly {
            terms: polymap::stretch(&self.terms, j),
        }
    }

    pub fn shifted(&self, k: i64) -> Self {
        HalfPoly {
            terms: polymap::shift(&self.terms, k),
        }
    }

    pub fn scaled(&self, s: &BigInt) -> Self {
        HalfPoly {
            terms: polymap::scale(&self.terms, s),
        }
    }

    /// `1 - w^k`.
    pub fn one_minus_w(k: u32) -> Self {
        let mut terms = Terms::new();
        terms.insert(0, BigInt::from(1));
        polymap::add_term(&mut terms, k as i64, BigInt::from(-1));
        HalfPoly { terms }
    }

    pub fn div_exact(&self, divisor: &HalfPoly) -> Option<HalfPoly> {
        polymap::div_exact(&self.terms, &divisor.terms).map(|terms| HalfPoly { terms })
    }

    pub fn div_scalar_exact(&self, s: &BigInt) -> Option<HalfPoly> {
        polymap::div_scalar_exact(&self.terms, s).map(|terms| HalfPoly { terms })
    }

    /// All exponents congruent to `parity` mod 2.
    pub fn has_parity(&self, parity: i64) -> bool {
        let parity = parity.rem_euclid(2);
        self.terms.keys().all(|&e| e.rem_euclid(2) == parity)
    }

    /// Nonnegative coefficients after substituting v = -w.
    pub fn nonnegative_in_minus_w(&self) -> bool {
        self.negate_w().terms.values().all(|c| !c.is_negative())
    }

    pub fn to_json_terms(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&e, c)| serde_json::json!([e, c.to_string()]))
                .collect(),
        )
    }
}

impl fmt::Display for HalfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", polymap::display(&self.terms, "w"))
    }
}

impl std::ops::Add for &HalfPoly {
    type Output = HalfPoly;
    fn add(self, rhs: &HalfPoly) -> HalfPoly {
        HalfPoly {
            terms: polymap::add(&self.terms, &rhs.terms),
        }
    }
}

impl std::ops::Sub for &HalfPoly {
    type Output = HalfPoly;
    fn sub(self, rhs: &HalfPoly) -> HalfPoly {
        HalfPoly {
            terms: polymap::sub(&self.terms, &rhs.terms),
        }
    }
}

impl std::ops::Mul for &HalfPoly {
    type Output = HalfPoly;
    fn mul(self, rhs: &HalfPoly) -> HalfPoly {
        HalfPoly {
            terms: polymap::mul(&self.terms, &rhs.terms),
        }
    }
}

impl std::ops::Neg for &HalfPoly {
    type Output = HalfPoly;
    fn neg(self) -> HalfPoly {
        HalfPoly {
            terms: polymap::neg(&self.terms),
        }
    }
}

/// Fraction `num / prod (1-L^i)^{m_i}` with a half-power numerator.
/// The denominator factor `i` stands for `1 - w^{2i}`.
#[derive(Debug, Clone)]
pub struct HalfRat {
    num: HalfPoly,
    den: BTreeMap<u32, u32>,
}

impl HalfRat {
    pub fn zero() -> Self {
        HalfRat {
            num: HalfPoly::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        HalfRat {
            num: HalfPoly::one(),
            den: BTreeMap::new(),
        }
    }

    pub fn from_poly(num: HalfPoly) -> Self {
        HalfRat {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn new(num: HalfPoly, den: BTreeMap<u32, u32>) -> Self {
        HalfRat { num, den }.reduced()
    }

    pub fn num(&self) -> &HalfPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn den_poly(&self) -> HalfPoly {
        let mut p = HalfPoly::one();
        for (&i, &m) in &self.den {
            let f = HalfPoly::one_minus_w(2 * i);
            for _ in 0..m {
                p = &p * &f;
            }
        }
        p
    }

    pub fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let keys: Vec<u32> = self.den.keys().copied().collect();
        for i in keys {
            let f = HalfPoly::one_minus_w(2 * i);
            while self.den.get(&i).copied().unwrap_or(0) > 0 {
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&i).expect("factor present");
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&i);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn as_poly(&self) -> Option<&HalfPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn add(&self, other: &HalfRat) -> HalfRat {
        let mut den = BTreeMap::new();
        for (&i, &m) in self.den.iter().chain(other.den.iter()) {
            let cur = den.entry(i).or_insert(0);
            *cur = (*cur).max(m);
        }
        let lift = |x: &HalfRat| {
            let mut num = x.num.clone();
            for (&i, &m) in &den {
                let have = x.den.get(&i).copied().unwrap_or(0);
                let f = HalfPoly::one_minus_w(2 * i);
                for _ in have..m {
                    num = &num * &f;
                }
            }
            num
        };
        HalfRat::new(&lift(self) + &lift(other), den)
    }

    pub fn sub(&self, other: &HalfRat) -> HalfRat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HalfRat {
        HalfRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &HalfRat) -> HalfRat {
        let mut den = self.den.clone();
        for (&i, &m) in &other.den {
            *den.entry(i).or_insert(0) += m;
        }
        HalfRat::new(&self.num * &other.num, den)
    }

    pub fn mul_poly(&self, p: &HalfPoly) -> HalfRat {
        HalfRat::new(&self.num * p, self.den.clone())
    }

    pub fn scaled(&self, s: &BigInt) -> HalfRat {
        HalfRat {
            num: self.num.scaled(s),
            den: if s.is_zero() {
                BTreeMap::new()
            } else {
                self.den.clone()
            },
        }
    }

    /// Adams operation: `w -> w^j` on the numerator, `i -> i*j` on the
    /// denominator factors (`1 - w^{2i} -> 1 - w^{2ij}`).
    pub fn psi(&self, j: u32) -> HalfRat {
        HalfRat {
            num: self.num.stretch(j as i64),
            den: self.den.iter().map(|(&i, &m)| (i * j, m)).collect(),
        }
    }

    /// Exact scalar division of the numerator coefficients.
    pub fn div_scalar_exact(&self, s: &BigInt) -> Option<HalfRat> {
        Some(HalfRat {
            num: self.num.div_scalar_exact(s)?,
            den: self.den.clone(),
        })
    }

    /// Exponent parity of all numerator terms (denominators are even).
    pub fn has_parity(&self, parity: i64) -> bool {
        self.num.has_parity(parity)
    }
}

impl PartialEq for HalfRat {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den_poly() == &other.num * &self.den_poly()
    }
}

impl Eq for HalfRat {}

impl fmt::Display for HalfRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (k, (&i, &m)) in self.den.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            if m == 1 {
                write!(f, "(1-w^{})", 2 * i)?;
            } else {
                write!(f, "(1-w^{})^{m}", 2 * i)?;
            }
        }
        write!(f, ")")
    }
}
