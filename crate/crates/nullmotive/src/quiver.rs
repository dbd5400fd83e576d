//! Quivers and dimension vectors.
//!
//! A quiver is stored as an ordered vertex list plus a multiplicity matrix
//! `r[i][j]` counting arrows `i -> j`. Every formula downstream consumes only
//! these multiplicities, so parallel arrows are never materialized as
//! individual objects. The vertex order is fixed at construction and used for
//! all deterministic iteration; results are independent of it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite quiver: ordered vertices and arrow multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Vec<u32>>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and an arrow list `(source, target, multiplicity)`.
    pub fn new(vertices: Vec<String>, arrow_list: &[(usize, usize, u32)]) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex id {v:?}")));
            }
        }
        let mut arrows = vec![vec![0u32; n]; n];
        for &(i, j, m) in arrow_list {
            if i >= n || j >= n {
                return Err(Error::InvalidQuiver(format!(
                    "arrow ({i},{j}) out of range for {n} vertices"
                )));
            }
            arrows[i][j] += m;
        }
        Ok(Quiver { vertices, arrows })
    }

    /// The quiver with a single vertex `v` and `m` loops.
    pub fn loop_quiver(m: u32) -> Self {
        Quiver {
            vertices: vec!["v".into()],
            arrows: vec![vec![m]],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    /// Number of arrows `i -> j`.
    pub fn arrow_mult(&self, i: usize, j: usize) -> u32 {
        self.arrows[i][j]
    }

    /// All arrows with multiplicity expanded, as `(source, target)` pairs.
    pub fn expanded_arrows(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for _ in 0..self.arrows[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Arrow pairs `(i, j)` with nonzero multiplicity.
    pub fn arrow_pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let n = self.vertex_count();
        (0..n).flat_map(move |i| {
            (0..n).filter_map(move |j| {
                let m = self.arrows[i][j];
                (m > 0).then_some((i, j, m))
            })
        })
    }

    /// The Euler form `<d,e> = sum_i d_i e_i - sum_{arrows i->j} d_i e_j`.
    ///
    /// Panics if `d` or `e` does not match the vertex count; validate at the
    /// input boundary with [`Quiver::dim_vector_from_map`].
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> i64 {
        let n = self.vertex_count();
        assert_eq!(d.len(), n, "dimension vector does not match quiver");
        assert_eq!(e.len(), n, "dimension vector does not match quiver");
        let mut s: i64 = 0;
        for i in 0..n {
            s += d[i] as i64 * e[i] as i64;
            for j in 0..n {
                s -= self.arrows[i][j] as i64 * d[i] as i64 * e[j] as i64;
            }
        }
        s
    }

    /// True iff `r_ij = r_ji` for all vertex pairs.
    pub fn is_symmetric(&self) -> bool {
        let n = self.vertex_count();
        (0..n).all(|i| (0..n).all(|j| self.arrows[i][j] == self.arrows[j][i]))
    }

    /// True iff the quiver has no oriented cycle; loops count as cycles.
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count();
        if (0..n).any(|i| self.arrows[i][i] > 0) {
            return false;
        }
        // Kahn's algorithm on the support digraph.
        let mut indeg = vec![0usize; n];
        for row in &self.arrows {
            for (j, &m) in row.iter().enumerate() {
                if m > 0 {
                    indeg[j] += 1;
                }
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop() {
            removed += 1;
            for (j, &m) in self.arrows[v].iter().enumerate() {
                if m > 0 {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        queue.push(j);
                    }
                }
            }
        }
        removed == n
    }

    /// `dim R_d = sum_{arrows i->j} d_i d_j`.
    pub fn rep_space_dim(&self, d: &DimVector) -> u64 {
        let n = self.vertex_count();
        assert_eq!(d.len(), n, "dimension vector does not match quiver");
        let mut s: u64 = 0;
        for i in 0..n {
            for j in 0..n {
                s += self.arrows[i][j] as u64 * d[i] as u64 * d[j] as u64;
            }
        }
        s
    }

    /// Validates a vertex-keyed map against this quiver and orders it.
    pub fn dim_vector_from_map(&self, map: &BTreeMap<String, u32>) -> Result<DimVector> {
        for key in map.keys() {
            if self.vertex_index(key).is_none() {
                return Err(Error::VertexMismatch(format!("unknown vertex {key:?}")));
            }
        }
        let entries = self
            .vertices
            .iter()
            .map(|v| map.get(v).copied().unwrap_or(0))
            .collect();
        Ok(DimVector::new(entries))
    }

    /// Deterministic content key, stable across runs. Used for cache files.
    pub fn content_key(&self) -> u64 {
        // FNV-1a over the canonical serialization.
        let bytes = serde_json::to_vec(&QuiverJson::from(self)).expect("serialize quiver");
        let mut h: u64 = 0xcbf29ce484222325;
        for b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quiver[{}]", self.vertices.join(","))
    }
}

/// JSON form: `{"vertices":["i","j"],"arrows":[["i","j",2]]}`.
#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<(String, String, u32)>,
}

impl From<&Quiver> for QuiverJson {
    fn from(q: &Quiver) -> Self {
        let mut arrows = Vec::new();
        for (i, j, m) in q.arrow_pairs() {
            arrows.push((q.vertices[i].clone(), q.vertices[j].clone(), m));
        }
        QuiverJson {
            vertices: q.vertices.clone(),
            arrows,
        }
    }
}

impl Quiver {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(QuiverJson::from(self)).expect("serialize quiver")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let parsed: QuiverJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("quiver JSON: {e}")))?;
        let vertices = parsed.vertices;
        let mut arrow_list = Vec::new();
        for (src, dst, m) in &parsed.arrows {
            let i = vertices
                .iter()
                .position(|v| v == src)
                .ok_or_else(|| Error::Parse(format!("arrow source {src:?} not a vertex")))?;
            let j = vertices
                .iter()
                .position(|v| v == dst)
                .ok_or_else(|| Error::Parse(format!("arrow target {dst:?} not a vertex")))?;
            arrow_list.push((i, j, *m));
        }
        Quiver::new(vertices, &arrow_list)
    }
}

/// A dimension vector, aligned with a quiver's vertex order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `dim d = sum_i d_i`.
    pub fn total_dim(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &DimVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if !other.leq(self) {
            return None;
        }
        Some(DimVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        assert_eq!(self.len(), other.len());
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All `e` with `0 <= e_i <= d_i`, in ascending lexicographic order.
    /// Yields exactly `prod (d_i + 1)` vectors.
    pub fn sub_vectors(&self) -> SubVectors {
        SubVectors {
            bounds: self.0.clone(),
            next: Some(vec![0; self.0.len()]),
        }
    }

    /// All proper sub-vectors `e` with `e <= d` componentwise and `e != d`.
    pub fn proper_sub_vectors(&self) -> impl Iterator<Item = DimVector> + '_ {
        let d = self.clone();
        self.sub_vectors().filter(move |e| *e != d)
    }

    /// All ordered tuples of nonzero vectors summing to `d`, lazily.
    pub fn ordered_decompositions(&self) -> Result<OrderedDecompositions> {
        if self.is_zero() {
            return Err(Error::ZeroDimVector);
        }
        Ok(OrderedDecompositions::new(self.clone()))
    }

    pub fn to_map(&self, quiver: &Quiver) -> BTreeMap<String, u32> {
        quiver
            .vertex_ids()
            .iter()
            .cloned()
            .zip(self.0.iter().copied())
            .collect()
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Odometer over the box `[0,d_1] x ... x [0,d_n]`, last coordinate fastest.
pub struct SubVectors {
    bounds: Vec<u32>,
    next: Option<Vec<u32>>,
}

impl Iterator for SubVectors {
    type Item = DimVector;

    fn next(&mut self) -> Option<DimVector> {
        let cur = self.next.take()?;
        let out = DimVector(cur.clone());
        let mut cur = cur;
        for k in (0..cur.len()).rev() {
            if cur[k] < self.bounds[k] {
                cur[k] += 1;
                for item in cur.iter_mut().skip(k + 1) {
                    *item = 0;
                }
                self.next = Some(cur);
                return Some(out);
            }
        }
        // box exhausted; this was the last element
        Some(out)
    }
}

/// Stack-driven lazy enumeration of ordered decompositions into nonzero parts.
pub struct OrderedDecompositions {
    // Each frame holds the remaining vector before its part is chosen and the
    // iterator over candidate parts.
    stack: Vec<(DimVector, SubVectors)>,
    parts: Vec<DimVector>,
    done: bool,
}

impl OrderedDecompositions {
    fn new(d: DimVector) -> Self {
        let it = d.sub_vectors();
        OrderedDecompositions {
            stack: vec![(d, it)],
            parts: Vec::new(),
            done: false,
        }
    }
}

impl Iterator for OrderedDecompositions {
    type Item = Vec<DimVector>;

    fn next(&mut self) -> Option<Vec<DimVector>> {
        if self.done {
            return None;
        }
        loop {
            let Some((remaining, iter)) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            let remaining = remaining.clone();
            match iter.next() {
                None => {
                    self.stack.pop();
                    self.parts.pop();
                }
                Some(part) => {
                    if part.is_zero() {
                        continue;
                    }
                    let rest = remaining
                        .checked_sub(&part)
                        .expect("sub-vector exceeds remainder");
                    self.parts.push(part);
                    if rest.is_zero() {
                        let snapshot = self.parts.clone();
                        self.parts.pop();
                        return Some(snapshot);
                    }
                    let it = rest.sub_vectors();
                    self.stack.push((rest, it));
                }
            }
        }
    }
}

/// Parses `{"i":1,"j":2}` JSON against a quiver.
pub fn dim_vector_from_json(quiver: &Quiver, value: &serde_json::Value) -> Result<DimVector> {
    let map: BTreeMap<String, u32> = serde_json::from_value(value.clone())
        .map_err(|e| Error::Parse(format!("dimension vector JSON: {e}")))?;
    quiver.dim_vector_from_map(&map)
}
