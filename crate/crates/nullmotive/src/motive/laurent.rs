//! Laurent polynomials in the Lefschetz motive L with big-integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::polymap::{self, Terms};
use crate::error::{Error, Result};

/// An exact Laurent polynomial in L.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Terms,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: Terms::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * L^e`.
    pub fn monomial(exp: i64, coeff: i64) -> Self {
        Self::monomial_big(exp, BigInt::from(coeff))
    }

    pub fn monomial_big(exp: i64, coeff: BigInt) -> Self {
        let mut terms = Terms::new();
        polymap::add_term(&mut terms, exp, coeff);
        LaurentPoly { terms }
    }

    /// The Lefschetz power `L^e`.
    pub fn lefschetz(exp: i64) -> Self {
        Self::monomial(exp, 1)
    }

    pub fn from_terms(terms: Terms) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        polymap::is_one(&self.terms)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Largest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        polymap::max_exp(&self.terms)
    }

    /// Smallest exponent, `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<i64> {
        polymap::min_exp(&self.terms)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.degree().and_then(|d| self.terms.get(&d))
    }

    /// Multiplies by `L^k`.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentPoly {
            terms: polymap::shift(&self.terms, k),
        }
    }

    pub fn scaled(&self, s: &BigInt) -> Self {
        LaurentPoly {
            terms: polymap::scale(&self.terms, s),
        }
    }

    pub fn scaled_i64(&self, s: i64) -> Self {
        self.scaled(&BigInt::from(s))
    }

    /// Exact division; `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        polymap::div_exact(&self.terms, &divisor.terms).map(|terms| LaurentPoly { terms })
    }

    /// `1 - L^k`.
    pub fn one_minus_l(k: u32) -> Self {
        let mut terms = Terms::new();
        terms.insert(0, BigInt::one());
        terms.insert(k as i64, BigInt::from(-1));
        LaurentPoly { terms }
    }

    /// Exact evaluation at a positive integer; rational when negative
    /// exponents are present.
    pub fn eval(&self, q: u32) -> BigRational {
        let q = BigRational::from_integer(BigInt::from(q));
        let mut acc = BigRational::zero();
        for (&e, c) in &self.terms {
            let p = if e >= 0 {
                num_traits::pow::Pow::pow(q.clone(), e as u64 as u128)
            } else {
                num_traits::pow::Pow::pow(q.clone(), (-e) as u64 as u128).recip()
            };
            acc += BigRational::from_integer(c.clone()) * p;
        }
        acc
    }

    /// Exponent set of the nonzero monomials.
    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// JSON list `[[exponent, "coefficient"], ...]`, exponents ascending.
    pub fn to_json_terms(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&e, c)| serde_json::json!([e, c.to_string()]))
                .collect(),
        )
    }

    pub fn from_json_terms(value: &serde_json::Value) -> Result<Self> {
        let rows: Vec<(i64, String)> = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("polynomial JSON: {e}")))?;
        let mut terms = Terms::new();
        for (e, c) in rows {
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            polymap::add_term(&mut terms, e, c);
        }
        Ok(LaurentPoly { terms })
    }

    /// LaTeX rendering, monomials in descending exponent.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = abs.is_one();
            match (e, unit) {
                (0, _) => out.push_str(&abs.to_string()),
                (1, true) => out.push_str("\\mathbb{L}"),
                (1, false) => out.push_str(&format!("{abs}\\mathbb{{L}}")),
                (_, true) => out.push_str(&format!("\\mathbb{{L}}^{{{e}}}")),
                (_, false) => out.push_str(&format!("{abs}\\mathbb{{L}}^{{{e}}}")),
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", polymap::display(&self.terms, "L"))
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: polymap::add(&self.terms, &rhs.terms),
        }
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: polymap::sub(&self.terms, &rhs.terms),
        }
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: polymap::mul(&self.terms, &rhs.terms),
        }
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: polymap::neg(&self.terms),
        }
    }
}

/// Builds a polynomial from `(exponent, coefficient)` pairs, merging duplicates.
pub fn poly(pairs: &[(i64, i64)]) -> LaurentPoly {
    let mut terms = Terms::new();
    for &(e, c) in pairs {
        polymap::add_term(&mut terms, e, BigInt::from(c));
    }
    LaurentPoly::from_terms(terms)
}
