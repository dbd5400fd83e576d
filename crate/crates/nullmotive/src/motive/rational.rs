//! Elements of the localized motive ring R = K0(Var)[L^±1, (1-L^i)^-1].
//!
//! A value is a Laurent-polynomial numerator over a denominator kept in
//! factored form `prod_i (1 - L^i)^{m_i}`. Every denominator arising from the
//! group motives and Pochhammer symbols has this shape, so reduction is
//! repeated exact division and no polynomial gcd is needed. The canonical
//! form (no denominator factor divides the numerator) is idempotent under
//! `reduce`; mathematical equality is decided by cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Factored denominator: exponent map `i -> m_i` for `prod (1-L^i)^{m_i}`.
pub type DenFactors = BTreeMap<u32, u32>;

#[derive(Debug, Clone)]
pub struct MotiveRat {
    num: LaurentPoly,
    den: DenFactors,
}

impl MotiveRat {
    pub fn zero() -> Self {
        MotiveRat {
            num: LaurentPoly::zero(),
            den: DenFactors::new(),
        }
    }

    pub fn one() -> Self {
        MotiveRat {
            num: LaurentPoly::one(),
            den: DenFactors::new(),
        }
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        MotiveRat {
            num,
            den: DenFactors::new(),
        }
    }

    /// `num / prod (1-L^i)^{m_i}`, reduced to canonical form.
    pub fn new(num: LaurentPoly, den: DenFactors) -> Self {
        Self { num, den }.reduced()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &DenFactors {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Expanded denominator polynomial.
    pub fn den_poly(&self) -> LaurentPoly {
        den_poly(&self.den)
    }

    /// Canonical form: no stored factor `1-L^i` exactly divides the numerator.
    pub fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let keys: Vec<u32> = self.den.keys().copied().collect();
        for i in keys {
            let f = LaurentPoly::one_minus_l(i);
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

    /// The numerator as a Laurent polynomial when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn add(&self, other: &MotiveRat) -> MotiveRat {
        let mut den = DenFactors::new();
        for (&i, &m) in self.den.iter().chain(other.den.iter()) {
            let cur = den.entry(i).or_insert(0);
            *cur = (*cur).max(m);
        }
        let lift = |x: &MotiveRat| {
            let mut num = x.num.clone();
            for (&i, &m) in &den {
                let have = x.den.get(&i).copied().unwrap_or(0);
                let f = LaurentPoly::one_minus_l(i);
                for _ in have..m {
                    num = &num * &f;
                }
            }
            num
        };
        MotiveRat::new(&lift(self) + &lift(other), den)
    }

    pub fn sub(&self, other: &MotiveRat) -> MotiveRat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MotiveRat {
        MotiveRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &MotiveRat) -> MotiveRat {
        let mut den = self.den.clone();
        for (&i, &m) in &other.den {
            *den.entry(i).or_insert(0) += m;
        }
        MotiveRat::new(&self.num * &other.num, den)
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> MotiveRat {
        MotiveRat::new(&self.num * p, self.den.clone())
    }

    /// Multiplies by `L^k`.
    pub fn shifted(&self, k: i64) -> MotiveRat {
        MotiveRat {
            num: self.num.shifted(k),
            den: self.den.clone(),
        }
    }

    /// Inverts an element whose numerator is `±L^v * prod (1-L^i)`.
    ///
    /// The factors are recognized by exact division, largest candidate first;
    /// a residual other than `±L^v` means the element is not a unit of the
    /// representable fraction family and an error is returned.
    pub fn invert(&self) -> Result<MotiveRat> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let reduced = self.clone().reduced();
        let (sign, shift, factors) = unit_factorization(&reduced.num).ok_or_else(|| {
            Error::NonUnitDivisor(format!("numerator {} is not ±L^a·∏(1-L^i)", reduced.num))
        })?;
        // 1 / (s·L^v·F / D) = s·L^{-v}·D / F
        let num = den_poly(&reduced.den).shifted(-shift).scaled_i64(sign);
        Ok(MotiveRat::new(num, factors))
    }

    pub fn div(&self, other: &MotiveRat) -> Result<MotiveRat> {
        Ok(self.mul(&other.invert()?))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num": self.num.to_json_terms(),
            "den": self.den.iter().map(|(&i, &m)| serde_json::json!([i, m])).collect::<Vec<_>>(),
        })
    }
}

/// Mathematical equality via cross-multiplication.
impl PartialEq for MotiveRat {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den_poly() == &other.num * &self.den_poly()
    }
}

impl Eq for MotiveRat {}

impl fmt::Display for MotiveRat {
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
                write!(f, "(1-L^{i})")?;
            } else {
                write!(f, "(1-L^{i})^{m}")?;
            }
        }
        write!(f, ")")
    }
}

pub fn den_poly(den: &DenFactors) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for (&i, &m) in den {
        let f = LaurentPoly::one_minus_l(i);
        for _ in 0..m {
            p = &p * &f;
        }
    }
    p
}

/// Writes `p = sign * L^shift * prod (1-L^i)^{m_i}` if possible.
///
/// Greedy, largest factor first: if the factorization exists, the largest
/// cyclotomic index present can only come from the largest factor, so the
/// greedy strip is sound.
pub fn unit_factorization(p: &LaurentPoly) -> Option<(i64, i64, DenFactors)> {
    let shift = p.valuation()?;
    let mut core = p.shifted(-shift);
    let mut sign = 1i64;
    if core.coeff(0).is_negative() {
        core = core.scaled_i64(-1);
        sign = -1;
    }
    let mut factors = DenFactors::new();
    loop {
        if core.is_one() {
            return Some((sign, shift, factors));
        }
        let deg = core.degree()? as u32;
        let mut stripped = false;
        for i in (1..=deg).rev() {
            if let Some(q) = core.div_exact(&LaurentPoly::one_minus_l(i)) {
                core = q;
                *factors.entry(i).or_insert(0) += 1;
                stripped = true;
                break;
            }
        }
        if !stripped {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motive::laurent::poly;
    use crate::motive::qfun::{gl_motive, pochhammer};

    fn over(num: LaurentPoly, den: &[(u32, u32)]) -> MotiveRat {
        MotiveRat::new(num, den.iter().copied().collect())
    }

    #[test]
    fn add_cancels() {
        // 1/(1-L) + (-L)/(1-L) = 1
        let a = over(LaurentPoly::one(), &[(1, 1)]);
        let b = over(LaurentPoly::monomial(1, -1), &[(1, 1)]);
        assert_eq!(a.add(&b), MotiveRat::one());
    }

    #[test]
    fn reduce_exact_division() {
        // (1-L^2)/(1-L) = 1+L with empty denominator
        let r = over(LaurentPoly::one_minus_l(2), &[(1, 1)]);
        assert_eq!(r.as_poly(), Some(&poly(&[(0, 1), (1, 1)])));
    }

    #[test]
    fn eq_is_cross_multiplied() {
        // (1+L)/(1-L^2) equals 1/(1-L) despite distinct canonical shapes
        let a = over(poly(&[(0, 1), (1, 1)]), &[(2, 1)]);
        let b = over(LaurentPoly::one(), &[(1, 1)]);
        assert_eq!(a, b);
        assert_ne!(a, MotiveRat::one());
    }

    #[test]
    fn gl_motive_eq() {
        let r = MotiveRat::from_poly(gl_motive(2));
        assert_eq!(r.as_poly().unwrap(), &gl_motive(2));
    }

    #[test]
    fn invert_units() {
        for p in [
            gl_motive(1),
            gl_motive(2),
            gl_motive(3),
            pochhammer(4),
            // (L^3-1)(L^3-L) = L (1-L^3)(1-L^2)
            &poly(&[(3, 1), (0, -1)]) * &poly(&[(3, 1), (1, -1)]),
        ] {
            let r = MotiveRat::from_poly(p);
            let inv = r.invert().unwrap();
            assert_eq!(r.mul(&inv), MotiveRat::one());
        }
    }

    #[test]
    fn invert_rejects_non_units() {
        let r = MotiveRat::from_poly(poly(&[(0, 1), (1, 1), (2, 1)])); // 1+L+L^2
        assert!(r.invert().is_err());
        assert!(MotiveRat::zero().invert().is_err());
    }

    #[test]
    fn reduce_idempotent() {
        let r = over(pochhammer(3), &[(1, 2), (2, 2), (3, 1)]);
        let once = r.clone().reduced();
        let twice = once.clone().reduced();
        assert_eq!(once.num(), twice.num());
        assert_eq!(once.den_factors(), twice.den_factors());
    }

    #[test]
    fn arithmetic_consistency() {
        let a = over(poly(&[(0, 2), (3, -1)]), &[(1, 1), (2, 1)]);
        let b = over(poly(&[(1, 5)]), &[(3, 2)]);
        let c = over(poly(&[(-2, 1), (0, 1)]), &[(1, 1)]);
        // distributivity through cross-multiplied equality
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert_eq!(a.sub(&a), MotiveRat::zero());
    }
}
