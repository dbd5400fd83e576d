//! Brute-force counting of nilpotent representations over small prime fields.
//!
//! This is the independent oracle for the motive formulas: by polynomiality
//! of `[N_d]`, evaluating the computed polynomial at q must reproduce the
//! point count of the nullcone over F_q.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::motive::LaurentPoly;
use crate::quiver::{DimVector, Quiver};

/// Default cap on the number of representations enumerated.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Row-major matrix over the prime field F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FqMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u32>, p: u32) -> Self {
        assert_eq!(data.len(), rows * cols);
        let data = data.into_iter().map(|x| x % p).collect();
        FqMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    /// `self * other` over F_p.
    pub fn mul(&self, other: &FqMatrix, p: u32) -> FqMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = FqMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] =
                        ((out.data[idx] as u64 + a * other.at(k, c) as u64) % p as u64) as u32;
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination over F_p.
    pub fn rank(&self, p: u32) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let p64 = p as u64;
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| !m[r * cols + c].is_multiple_of(p)) else {
                continue;
            };
            for k in 0..cols {
                m.swap(rank * cols + k, piv * cols + k);
            }
            let inv = mod_inverse(m[rank * cols + c], p) as u64;
            for k in 0..cols {
                m[rank * cols + k] = ((m[rank * cols + k] as u64 * inv) % p64) as u32;
            }
            for r in 0..rows {
                if r != rank && m[r * cols + c] != 0 {
                    let f = m[r * cols + c] as u64;
                    for k in 0..cols {
                        let sub = (f * m[rank * cols + k] as u64) % p64;
                        m[r * cols + k] = ((m[r * cols + k] as u64 + p64 - sub) % p64) as u32;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p for prime p
    let mut base = (a % p) as u64;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    (2..)
        .take_while(|x| x * x <= q)
        .all(|x| !q.is_multiple_of(x))
}

/// A representation of a quiver over F_q: per expanded arrow `i -> j`, a
/// `d_j x d_i` matrix.
#[derive(Debug, Clone)]
pub struct FqRep {
    pub q: u32,
    pub dims: DimVector,
    /// `(source, target, matrix)` per expanded arrow.
    pub mats: Vec<(usize, usize, FqMatrix)>,
}

impl FqRep {
    /// The zero representation.
    pub fn zero(quiver: &Quiver, d: &DimVector, q: u32) -> Self {
        let mats = quiver
            .expanded_arrows()
            .into_iter()
            .map(|(i, j)| (i, j, FqMatrix::zeros(d[j] as usize, d[i] as usize)))
            .collect();
        FqRep {
            q,
            dims: d.clone(),
            mats,
        }
    }
}

/// Nilpotency test via the ascending chain `U_0 = 0`,
/// `U_{k+1, i} = intersection over arrows i -> j of V_alpha^{-1}(U_{k, j})`
/// (vertices with no outgoing arrows get the full space). The representation
/// is nilpotent iff the chain reaches the full space at every vertex. Each
/// `U_i` is kept dually as the null space of a constraint matrix, so the
/// preimage is a matrix product and the intersection a row stack.
pub fn is_nilpotent(rep: &FqRep) -> bool {
    let q = rep.q;
    let n = rep.dims.len();
    let dims: Vec<usize> = rep.dims.entries().iter().map(|&x| x as usize).collect();
    let total: usize = dims.iter().sum();
    // U_0 = 0 = null(identity)
    let mut constraints: Vec<FqMatrix> = (0..n)
        .map(|i| {
            let mut m = FqMatrix::zeros(dims[i], dims[i]);
            for k in 0..dims[i] {
                m.data[k * dims[i] + k] = 1;
            }
            m
        })
        .collect();
    let mut subspace_dims = vec![0usize; n];
    let has_outgoing: Vec<bool> = (0..n)
        .map(|i| rep.mats.iter().any(|&(src, _, _)| src == i))
        .collect();
    // the chain stabilizes within dim d steps
    for _ in 0..=total {
        let mut next: Vec<FqMatrix> = (0..n).map(|i| FqMatrix::zeros(0, dims[i])).collect();
        for (src, dst, mat) in &rep.mats {
            // preimage of null(M_dst) under mat is null(M_dst * mat)
            let stacked = constraints[*dst].mul(mat, q);
            let cur = &mut next[*src];
            let mut data = std::mem::take(&mut cur.data);
            data.extend_from_slice(&stacked.data);
            let rows = cur.rows + stacked.rows;
            *cur = FqMatrix {
                rows,
                cols: dims[*src],
                data,
            };
        }
        for i in 0..n {
            if !has_outgoing[i] {
                next[i] = FqMatrix::zeros(0, dims[i]); // full space
            }
        }
        let new_dims: Vec<usize> = (0..n).map(|i| dims[i] - next[i].rank(q)).collect();
        constraints = next;
        if new_dims == subspace_dims {
            break;
        }
        subspace_dims = new_dims;
        if subspace_dims == dims {
            return true;
        }
    }
    subspace_dims == dims
}

/// Number of F_q-points of the representation space.
pub fn search_space(quiver: &Quiver, d: &DimVector, q: u32) -> u128 {
    let entries = quiver.rep_space_dim(d);
    (q as u128).checked_pow(entries as u32).unwrap_or(u128::MAX)
}

/// Brute-force count of nilpotent representations over F_q (q prime).
pub fn count_nilpotent_fq(
    quiver: &Quiver,
    d: &DimVector,
    q: u32,
    budget: Option<u128>,
) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let space = search_space(quiver, d, q);
    if space > budget {
        return Err(Error::BudgetExceeded(space, budget));
    }
    let shapes: Vec<(usize, usize, usize, usize)> = quiver
        .expanded_arrows()
        .into_iter()
        .map(|(i, j)| (i, j, d[j] as usize, d[i] as usize))
        .collect();
    let total_entries: usize = shapes.iter().map(|&(_, _, r, c)| r * c).sum();
    let mut digits = vec![0u32; total_entries];
    let mut count = 0u64;
    loop {
        // assemble and test
        let mut mats = Vec::with_capacity(shapes.len());
        let mut pos = 0;
        for &(i, j, rows, cols) in &shapes {
            let data = digits[pos..pos + rows * cols].to_vec();
            pos += rows * cols;
            mats.push((i, j, FqMatrix { rows, cols, data }));
        }
        let rep = FqRep {
            q,
            dims: d.clone(),
            mats,
        };
        if is_nilpotent(&rep) {
            count += 1;
        }
        // advance odometer
        let mut k = 0;
        loop {
            if k == total_entries {
                return Ok(count);
            }
            digits[k] += 1;
            if digits[k] < q {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Evaluates the motive polynomial at the prime q, exactly.
pub fn eval_motive(p: &LaurentPoly, q: u32) -> BigRational {
    p.eval(q)
}

/// `true` iff the brute-force count equals the polynomial evaluation.
pub fn oracle_matches(
    quiver: &Quiver,
    d: &DimVector,
    q: u32,
    motive: &LaurentPoly,
) -> Result<bool> {
    let count = count_nilpotent_fq(quiver, d, q, None)?;
    Ok(eval_equals_count(motive, q, count))
}

/// Compares the exact evaluation of `p` at `q` with an integer count.
pub fn eval_equals_count(p: &LaurentPoly, q: u32, count: u64) -> bool {
    p.eval(q) == BigRational::from_integer(BigInt::from(count))
}
