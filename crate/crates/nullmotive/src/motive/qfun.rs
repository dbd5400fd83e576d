//! q-combinatorics in L: Pochhammer symbols, general-linear-group motives,
//! Gaussian binomials and multinomials.
//!
//! Gaussian binomials are computed by exact polynomial division. The division
//! can never fail (divisibility is a theorem), so a failed division panics
//! rather than returning an error: it signals an implementation bug.

use num_bigint::BigUint;

use super::laurent::LaurentPoly;
use super::rational::{DenFactors, MotiveRat};
use crate::quiver::DimVector;

/// `(L)_n = (1-L)(1-L^2)...(1-L^n)`; the empty product is 1.
pub fn pochhammer(n: u32) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for k in 1..=n {
        p = &p * &LaurentPoly::one_minus_l(k);
    }
    p
}

/// `(L)_d = prod_i (L)_{d_i}`.
pub fn pochhammer_dim(d: &DimVector) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for &x in d.entries() {
        p = &p * &pochhammer(x);
    }
    p
}

/// Denominator factors of `1/(L)_d`: factor `1-L^k` with multiplicity
/// `#{i : d_i >= k}`.
pub fn pochhammer_dim_factors(d: &DimVector) -> DenFactors {
    let mut den = DenFactors::new();
    for &x in d.entries() {
        for k in 1..=x {
            *den.entry(k).or_insert(0) += 1;
        }
    }
    den
}

/// `[GL_n] = (-1)^n L^{n(n-1)/2} (L)_n`.
pub fn gl_motive(n: u32) -> LaurentPoly {
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    pochhammer(n)
        .shifted((n as i64 * (n as i64 - 1)) / 2)
        .scaled_i64(sign)
}

/// `[G_d] = prod_i [GL_{d_i}]`.
pub fn group_motive(d: &DimVector) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for &x in d.entries() {
        p = &p * &gl_motive(x);
    }
    p
}

/// `1/[G_d]` as a reduced fraction: `(-1)^{dim d} L^{-sum C(d_i,2)} / (L)_d`.
pub fn group_motive_inverse(d: &DimVector) -> MotiveRat {
    let dim = d.total_dim() as i64;
    let shift: i64 = d
        .entries()
        .iter()
        .map(|&x| (x as i64) * (x as i64 - 1) / 2)
        .sum();
    let sign = if dim % 2 == 0 { 1 } else { -1 };
    MotiveRat::new(
        LaurentPoly::monomial(-shift, sign),
        pochhammer_dim_factors(d),
    )
}

/// The Gaussian binomial `[n over k]_L = (L)_n / ((L)_k (L)_{n-k})`.
///
/// Returns zero for `k < 0` or `k > n` by convention.
pub fn gauss_binomial(n: i64, k: i64) -> LaurentPoly {
    if k < 0 || k > n {
        return LaurentPoly::zero();
    }
    let (n, k) = (n as u32, k as u32);
    // (L)_n/(L)_k is the literal subproduct over k+1..n; dividing out
    // (L)_{n-k} factor by factor stays exact at every step.
    let mut p = LaurentPoly::one();
    for j in k + 1..=n {
        p = &p * &LaurentPoly::one_minus_l(j);
    }
    for j in 1..=n - k {
        p = p
            .div_exact(&LaurentPoly::one_minus_l(j))
            .expect("Gaussian binomial division is exact");
    }
    p
}

/// `[d over e]_L = prod_i [d_i over e_i]_L`.
pub fn gauss_binomial_dim(d: &DimVector, e: &DimVector) -> LaurentPoly {
    assert_eq!(d.len(), e.len());
    let mut p = LaurentPoly::one();
    for i in 0..d.len() {
        p = &p * &gauss_binomial(d[i] as i64, e[i] as i64);
        if p.is_zero() {
            return p;
        }
    }
    p
}

/// `[d over d^1,...,d^s]_L = prod_i (L)_{d_i} / prod_k (L)_{d^k_i}`.
///
/// Panics if the parts do not sum to `d`.
pub fn gauss_multinomial(d: &DimVector, parts: &[DimVector]) -> LaurentPoly {
    let mut sum = DimVector::zeros(d.len());
    for p in parts {
        sum = sum.add(p);
    }
    assert_eq!(&sum, d, "parts must sum to d");
    let mut out = LaurentPoly::one();
    for i in 0..d.len() {
        // iterated binomials: [d_i over d^1_i] [d_i - d^1_i over d^2_i] ...
        let mut rem = d[i] as i64;
        for p in parts {
            out = &out * &gauss_binomial(rem, p[i] as i64);
            rem -= p[i] as i64;
        }
    }
    out
}

/// `(dim d)! / prod d_i!` as a big integer.
pub fn multinomial_coefficient(d: &DimVector) -> BigUint {
    let mut acc = BigUint::from(1u32);
    let mut seen = 0u32;
    for &x in d.entries() {
        // multiply C(seen + x, x)
        for t in 1..=x {
            acc = acc * BigUint::from(seen + t) / BigUint::from(t);
        }
        seen += x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motive::laurent::poly;

    #[test]
    fn pochhammer_values() {
        assert!(pochhammer(0).is_one());
        assert_eq!(pochhammer(1), poly(&[(0, 1), (1, -1)]));
        // (1-L)(1-L^2) = 1 - L - L^2 + L^3
        assert_eq!(pochhammer(2), poly(&[(0, 1), (1, -1), (2, -1), (3, 1)]));
    }

    #[test]
    fn pochhammer_dim_values() {
        assert!(pochhammer_dim(&DimVector::zeros(2)).is_one());
        let d = DimVector::new(vec![1, 1]);
        assert_eq!(pochhammer_dim(&d), &pochhammer(1) * &pochhammer(1));
        assert_eq!(pochhammer_dim(&DimVector::new(vec![2])), pochhammer(2));
    }

    #[test]
    fn gl_values() {
        assert!(gl_motive(0).is_one());
        assert_eq!(gl_motive(1), poly(&[(1, 1), (0, -1)]));
        // (L^2-1)(L^2-L)
        let expect = &poly(&[(2, 1), (0, -1)]) * &poly(&[(2, 1), (1, -1)]);
        assert_eq!(gl_motive(2), expect);
    }

    #[test]
    fn group_motive_values() {
        let d = DimVector::new(vec![1, 1]);
        assert_eq!(group_motive(&d), &gl_motive(1) * &gl_motive(1));
        assert_eq!(group_motive(&DimVector::new(vec![2])), gl_motive(2));
        assert!(group_motive(&DimVector::zeros(3)).is_one());
        for d in [DimVector::new(vec![2, 1]), DimVector::new(vec![3])] {
            let inv = group_motive_inverse(&d);
            assert_eq!(
                inv.mul(&MotiveRat::from_poly(group_motive(&d))),
                MotiveRat::one()
            );
        }
    }

    #[test]
    fn gauss_values() {
        assert_eq!(gauss_binomial(2, 1), poly(&[(0, 1), (1, 1)]));
        assert!(gauss_binomial(5, 0).is_one());
        assert!(gauss_binomial(5, 5).is_one());
        assert_eq!(
            gauss_binomial(4, 2),
            poly(&[(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)])
        );
        assert!(gauss_binomial(3, -1).is_zero());
        assert!(gauss_binomial(3, 4).is_zero());
    }

    #[test]
    fn gauss_symmetry_and_pascal() {
        for n in 0..=12i64 {
            for k in 0..=n {
                assert_eq!(gauss_binomial(n, k), gauss_binomial(n, n - k));
                if n > 0 {
                    // [n,k] = [n-1,k-1] + L^k [n-1,k]
                    let rhs = &gauss_binomial(n - 1, k - 1) + &gauss_binomial(n - 1, k).shifted(k);
                    assert_eq!(gauss_binomial(n, k), rhs);
                }
            }
        }
    }

    #[test]
    fn gauss_alternating_identity() {
        // sum_a (-1)^a L^{a(a-1)/2} [m over a] = delta_{m,0} for m <= 12
        for m in 0..=12i64 {
            let mut acc = LaurentPoly::zero();
            for a in 0..=m {
                let sign = if a % 2 == 0 { 1 } else { -1 };
                let term = gauss_binomial(m, a)
                    .shifted(a * (a - 1) / 2)
                    .scaled_i64(sign);
                acc = &acc + &term;
            }
            if m == 0 {
                assert!(acc.is_one());
            } else {
                assert!(acc.is_zero(), "m={m}: {acc}");
            }
        }
    }

    #[test]
    fn multinomial_values() {
        let d = DimVector::new(vec![2]);
        let parts = vec![DimVector::new(vec![1]), DimVector::new(vec![1])];
        assert_eq!(gauss_multinomial(&d, &parts), gauss_binomial(2, 1));

        let d = DimVector::new(vec![1, 1]);
        let parts = vec![DimVector::new(vec![1, 0]), DimVector::new(vec![0, 1])];
        assert!(gauss_multinomial(&d, &parts).is_one());

        let d = DimVector::new(vec![3]);
        assert!(gauss_multinomial(&d, std::slice::from_ref(&d)).is_one());
    }

    #[test]
    fn multinomial_coefficients() {
        assert_eq!(
            multinomial_coefficient(&DimVector::new(vec![2, 1])),
            BigUint::from(3u32)
        );
        assert_eq!(
            multinomial_coefficient(&DimVector::new(vec![2, 2])),
            BigUint::from(6u32)
        );
        assert_eq!(
            multinomial_coefficient(&DimVector::new(vec![4])),
            BigUint::from(1u32)
        );
    }
}
