//! Sparse Gaussian elimination over ℚ.
//!
//! Vectors are sparse maps from an arbitrary ordered row key to a nonzero
//! rational. Everything here is exact.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::graded::Q;

pub type SparseVec<R> = BTreeMap<R, Q>;

/// Incremental row echelon form of a set of vectors.
///
/// Each stored vector is keyed by its pivot (smallest key) and normalised so
/// the pivot coefficient is one. Every stored vector also remembers how it
/// was combined from the inserted vectors, which gives kernels and
/// solutions for free.
pub struct Echelon<R: Ord + Clone> {
    rows: BTreeMap<R, (SparseVec<R>, Vec<Q>)>,
    inserted: usize,
}

fn axpy<R: Ord + Clone>(y: &mut SparseVec<R>, a: &Q, x: &SparseVec<R>) {
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(Q::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

fn axpy_dense(y: &mut Vec<Q>, a: &Q, x: &[Q]) {
    if y.len() < x.len() {
        y.resize(x.len(), Q::zero());
    }
    for (i, v) in x.iter().enumerate() {
        if !v.is_zero() {
            y[i] += a * v;
        }
    }
}

impl<R: Ord + Clone> Default for Echelon<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Ord + Clone> Echelon<R> {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows. Returns the residual and the
    /// combination of inserted vectors that was subtracted.
    pub fn reduce(&self, v: &SparseVec<R>) -> (SparseVec<R>, Vec<Q>) {
        let mut v = v.clone();
        let mut combo: Vec<Q> = Vec::new();
        let mut cursor: Option<R> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next().cloned(),
                Some(c) => v.range(c.clone()..).map(|(k, _)| k.clone()).find(|k| k > c),
            };
            let Some(k) = next else { break };
            if let Some((row, rc)) = self.rows.get(&k) {
                let a = -v[&k].clone();
                axpy(&mut v, &a, row);
                axpy_dense(&mut combo, &a, rc);
                // the pivot key is now gone; continue after it
            }
            cursor = Some(k);
        }
        (v, combo)
    }

    /// Inserts `v`; returns `None` if it was independent, otherwise the
    /// dependency: coefficients `c` with `v = Σ c_i · inserted_i`.
    pub fn insert(&mut self, v: &SparseVec<R>) -> Option<Vec<Q>> {
        let idx = self.inserted;
        self.inserted += 1;
        let (residual, combo) = self.reduce(v);
        if residual.is_empty() {
            let mut dep: Vec<Q> = combo.iter().map(|c| -c.clone()).collect();
            dep.resize(idx, Q::zero());
            return Some(dep);
        }
        let (pivot, pv) = residual.iter().next().map(|(k, v)| (k.clone(), v.clone())).unwrap();
        let inv = Q::one() / pv;
        let row: SparseVec<R> = residual.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        let mut rc = combo;
        rc.resize(idx + 1, Q::zero());
        rc[idx] += Q::one();
        let rc: Vec<Q> = rc.into_iter().map(|c| c * &inv).collect();
        self.rows.insert(pivot, (row, rc));
        None
    }

    pub fn contains(&self, v: &SparseVec<R>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coefficients `c` with `v = Σ c_i · inserted_i`, if `v` is in the span.
    pub fn express(&self, v: &SparseVec<R>) -> Option<Vec<Q>> {
        let (residual, combo) = self.reduce(v);
        if !residual.is_empty() {
            return None;
        }
        let mut c: Vec<Q> = combo.iter().map(|c| -c.clone()).collect();
        c.resize(self.inserted, Q::zero());
        Some(c)
    }
}

/// Basis of `{c : Σ c_i · columns_i = 0}`.
pub fn kernel<R: Ord + Clone>(columns: &[SparseVec<R>]) -> Vec<Vec<Q>> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        if let Some(dep) = ech.insert(col) {
            let mut k: Vec<Q> = dep.into_iter().map(|c| -c).collect();
            k.resize(columns.len(), Q::zero());
            k[i] = Q::one();
            out.push(k);
        }
    }
    out
}

pub fn rank<R: Ord + Clone>(columns: &[SparseVec<R>]) -> usize {
    let mut ech = Echelon::new();
    for c in columns {
        ech.insert(c);
    }
    ech.rank()
}

/// Solution of `Σ x_i · columns_i = rhs` together with the dimension of the
/// solution space's direction (the kernel).
pub struct Solution {
    pub particular: Vec<Q>,
    pub free_dimension: usize,
}

pub fn solve<R: Ord + Clone>(columns: &[SparseVec<R>], rhs: &SparseVec<R>) -> Option<Solution> {
    let mut ech = Echelon::new();
    let mut free = 0;
    for c in columns {
        if ech.insert(c).is_some() {
            free += 1;
        }
    }
    ech.express(rhs).map(|particular| Solution { particular, free_dimension: free })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::q;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, q(c))).collect()
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (2, -1)])];
        let k = kernel(&cols);
        assert_eq!(k.len(), 1);
        let mut sum: SparseVec<u32> = BTreeMap::new();
        for (i, c) in k[0].iter().enumerate() {
            axpy(&mut sum, c, &cols[i]);
        }
        assert!(sum.is_empty());
        assert_eq!(rank(&cols), 2);
    }

    #[test]
    fn solve_and_express() {
        let cols = vec![v(&[(0, 2)]), v(&[(1, 3)])];
        let s = solve(&cols, &v(&[(0, 4), (1, 3)])).unwrap();
        assert_eq!(s.particular, vec![q(2), q(1)]);
        assert_eq!(s.free_dimension, 0);
        assert!(solve(&cols, &v(&[(2, 1)])).is_none());
    }
}
