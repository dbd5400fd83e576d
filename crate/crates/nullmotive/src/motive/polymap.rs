//! Shared arithmetic on sparse exponent -> coefficient maps.
//!
//! Both the Laurent polynomials in L and the half-power polynomials in
//! w = L^(1/2) are thin wrappers around these maps; no zero coefficients are
//! ever stored.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub type Terms = BTreeMap<i64, BigInt>;

pub fn add_term(terms: &mut Terms, exp: i64, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(exp) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn add(a: &Terms, b: &Terms) -> Terms {
    let mut r = a.clone();
    for (&e, c) in b {
        add_term(&mut r, e, c.clone());
    }
    r
}

pub fn neg(a: &Terms) -> Terms {
    a.iter().map(|(&e, c)| (e, -c)).collect()
}

pub fn sub(a: &Terms, b: &Terms) -> Terms {
    let mut r = a.clone();
    for (&e, c) in b {
        add_term(&mut r, e, -c);
    }
    r
}

pub fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut r = Terms::new();
    for (&e1, c1) in a {
        for (&e2, c2) in b {
            add_term(&mut r, e1 + e2, c1 * c2);
        }
    }
    r
}

pub fn shift(a: &Terms, k: i64) -> Terms {
    a.iter().map(|(&e, c)| (e + k, c.clone())).collect()
}

pub fn scale(a: &Terms, s: &BigInt) -> Terms {
    if s.is_zero() {
        return Terms::new();
    }
    a.iter().map(|(&e, c)| (e, c * s)).collect()
}

/// Substitutes the variable by its j-th power.
pub fn stretch(a: &Terms, j: i64) -> Terms {
    a.iter().map(|(&e, c)| (e * j, c.clone())).collect()
}

/// Exact division, or `None` when the remainder is nonzero.
///
/// Works from the lowest exponent up, so the divisor's trailing coefficient
/// must be a unit (all divisors in this crate are products of `1 - X^k`,
/// whose trailing coefficient is 1).
pub fn div_exact(a: &Terms, b: &Terms) -> Option<Terms> {
    if a.is_empty() {
        return Some(Terms::new());
    }
    assert!(!b.is_empty(), "division by the zero polynomial");
    let (&vb, tb) = b.iter().next().expect("nonempty");
    assert!(
        *tb == BigInt::from(1) || *tb == BigInt::from(-1),
        "divisor trailing coefficient must be a unit"
    );
    let deg_bound = max_exp(a).expect("nonempty") - max_exp(b).expect("nonempty");
    let mut q = Terms::new();
    let mut r = a.clone();
    while let Some((&vr, cr)) = r.iter().next() {
        let qe = vr - vb;
        if qe > deg_bound {
            return None;
        }
        let qc = if *tb == BigInt::from(1) {
            cr.clone()
        } else {
            -cr.clone()
        };
        // r -= qc * X^qe * b
        for (&e, c) in b {
            add_term(&mut r, e + qe, -(&qc * c));
        }
        q.insert(qe, qc);
    }
    Some(q)
}

/// Divides every coefficient by the integer `s`; `None` if any is not divisible.
pub fn div_scalar_exact(a: &Terms, s: &BigInt) -> Option<Terms> {
    assert!(!s.is_zero());
    let mut r = Terms::new();
    for (&e, c) in a {
        let (q, rem) = num_integer::Integer::div_rem(c, s);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            r.insert(e, q);
        }
    }
    Some(r)
}

pub fn min_exp(a: &Terms) -> Option<i64> {
    a.keys().next().copied()
}

pub fn max_exp(a: &Terms) -> Option<i64> {
    a.keys().next_back().copied()
}

pub fn is_one(a: &Terms) -> bool {
    a.len() == 1 && a.get(&0).map(|c| *c == BigInt::from(1)).unwrap_or(false)
}

/// Renders with a caller-chosen variable symbol, highest exponent first.
pub fn display(a: &Terms, var: &str) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (&e, c)) in a.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff_is_one = abs == BigInt::from(1);
        match (e, coeff_is_one) {
            (0, _) => out.push_str(&abs.to_string()),
            (1, true) => out.push_str(var),
            (1, false) => out.push_str(&format!("{abs}*{var}")),
            (_, true) => out.push_str(&format!("{var}^{e}")),
            (_, false) => out.push_str(&format!("{abs}*{var}^{e}")),
        }
    }
    out
}
