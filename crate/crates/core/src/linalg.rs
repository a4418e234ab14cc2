//! Exact linear algebra over [`Scalar`]: reduced row echelon forms, kernels,
//! inverses and canonical subspaces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;
pub type SparseVector = BTreeMap<usize, Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `dst += factor * src`
fn axpy(dst: &mut [Scalar], factor: &Scalar, src: &[Scalar]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += &(factor * s);
        }
    }
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vector>, ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = -&row[col];
            axpy(row, &factor, &pivot_row);
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    let mut b = EchelonBuilder::new(ncols);
    for row in rows {
        b.insert(to_sparse(row));
    }
    b.rank()
}

/// Basis of `{x : A x = 0}` where `A` is given by its rows.
pub fn right_kernel(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (red, pivots) = rref(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zero_vector(ncols);
            v[f] = Scalar::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Basis of `{λ : Σ λ_i rows_i = 0}`.
pub fn left_kernel(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let n = rows.len();
    let transposed: Vec<Vector> = (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect();
    right_kernel(&transposed, n)
}

pub fn inverse(matrix: &[Vector]) -> Result<Vec<Vector>> {
    let n = matrix.len();
    let augmented: Vec<Vector> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(Error::Dimension("inverse of a non-square matrix".into()));
            }
            let mut r = row.clone();
            r.extend(unit_vector(n, i));
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let (red, pivots) = rref(augmented, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::DivisionByZero);
    }
    Ok(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Scalar], m: &[Vector]) -> Vector {
    let ncols = m.first().map_or(0, Vec::len);
    let mut out = zero_vector(ncols);
    for (x, row) in v.iter().zip(m) {
        if !x.is_zero() {
            axpy(&mut out, x, row);
        }
    }
    out
}

pub fn to_sparse(v: &[Scalar]) -> SparseVector {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVector, n: usize) -> Vector {
    let mut out = zero_vector(n);
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

/// Incremental echelon basis for sparse vectors. Rows are kept with leading
/// coefficient 1; only leading terms are reduced.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    ambient: usize,
    rows: BTreeMap<usize, SparseVector>,
}

impl EchelonBuilder {
    pub fn new(ambient: usize) -> Self {
        EchelonBuilder {
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: SparseVector) -> SparseVector {
        v.retain(|_, x| !x.is_zero());
        let mut floor = 0;
        loop {
            let Some((&lead, coef)) = v.range(floor..).next() else {
                return v;
            };
            match self.rows.get(&lead) {
                Some(row) => {
                    let factor = -coef;
                    for (&j, x) in row {
                        let entry = v.entry(j).or_insert_with(Scalar::zero);
                        *entry += &(&factor * x);
                        if entry.is_zero() {
                            v.remove(&j);
                        }
                    }
                }
                None => floor = lead + 1,
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVector) -> bool {
        let r = self.reduce(v);
        let Some((&lead, coef)) = r.iter().next() else {
            return false;
        };
        let inv = coef.inv().expect("nonzero lead");
        let row = r.into_iter().map(|(j, x)| (j, &x * &inv)).collect();
        self.rows.insert(lead, row);
        true
    }

    pub fn contains(&self, v: SparseVector) -> bool {
        self.reduce(v).is_empty()
    }

    /// Leading columns of the rows inserted so far, ascending.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn into_subspace(self) -> Subspace {
        let n = self.ambient;
        Subspace::span(n, self.rows.values().map(|r| to_dense(r, n)).collect())
    }
}

/// A subspace of `k^n` stored by its reduced row echelon basis, which makes
/// equality of subspaces structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::coordinate(ambient, 0..ambient)
    }

    /// Span of standard basis vectors.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        Subspace {
            ambient,
            rows: idx.iter().map(|&i| unit_vector(ambient, i)).collect(),
            pivots: idx,
        }
    }

    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let (rows, pivots) = rref(vectors, ambient);
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn from_rows(ambient: usize, rows: Vec<Vector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::Dimension(format!(
                "row of length {} in a subspace of dimension {ambient}",
                bad.len()
            )));
        }
        Ok(Subspace::span(ambient, rows))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| self.pivots.binary_search(c).is_err())
            .collect()
    }

    /// `v` minus its component along the echelon rows; vanishes at pivots.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let factor = -&out[p];
                axpy(&mut out, &factor, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Coefficients of `v` on the echelon rows, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let rebuilt = self.combine(&c);
        (rebuilt.as_slice() == v).then_some(c)
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.ambient);
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if !c.is_zero() {
                axpy(&mut out, c, row);
            }
        }
        out
    }

    /// Image of `v` in the quotient `k^n / self`, in the basis given by the
    /// non-pivot coordinate vectors.
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vector {
        let r = self.reduce(v);
        self.non_pivots().into_iter().map(|c| r[c].clone()).collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.rows.clone();
        vs.extend(other.rows.iter().cloned());
        Subspace::span(self.ambient, vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Σ a_i u_i = Σ b_j w_j
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r.iter().map(|x| -x).collect()));
        let kernel = left_kernel(&rows, self.ambient);
        let vs = kernel
            .into_iter()
            .map(|lambda| self.combine(&lambda[..self.dim()]))
            .collect();
        Subspace::span(self.ambient, vs)
    }

    /// Echelon rows whose pivots are not pivots of `sub`: a canonical
    /// complement of `sub` inside `self` when `sub ⊆ self`.
    pub fn complement_rows(&self, sub: &Subspace) -> Vec<(usize, Vector)> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .filter(|(_, p)| sub.pivots.binary_search(p).is_err())
            .map(|(r, &p)| (p, r.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_integer(x)).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::span(3, vec![v(&[1, 2, 3]), v(&[2, 4, 7])]);
        let b = Subspace::span(3, vec![v(&[0, 0, 1]), v(&[3, 6, 9])]);
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 2]);
        assert_eq!(a.rows()[0], v(&[1, 2, 0]));
    }

    #[test]
    fn kernels() {
        let rows = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        let k = right_kernel(&rows, 3);
        assert_eq!(k, vec![v(&[1, -1, 1])]);
        let lk = left_kernel(&[v(&[1, 2]), v(&[2, 4]), v(&[0, 1])], 2);
        assert_eq!(lk, vec![v(&[-2, 1, 0])]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![v(&[2, 1]), v(&[1, 1])];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![v(&[1, -1]), v(&[-1, 2])]);
        assert!(inverse(&[v(&[1, 2]), v(&[2, 4])]).is_err());
    }

    #[test]
    fn membership_and_coordinates() {
        let s = Subspace::span(3, vec![v(&[1, 0, 1]), v(&[0, 1, 1])]);
        assert!(s.contains(&v(&[2, 3, 5])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        assert_eq!(s.coords(&v(&[2, 3, 5])), Some(v(&[2, 3])));
        assert_eq!(s.coords(&v(&[2, 3, 4])), None);
        assert_eq!(s.quotient_coords(&v(&[0, 0, 1])), v(&[1]));
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::coordinate(3, [0, 1]);
        let b = Subspace::span(3, vec![v(&[1, 1, 1]), v(&[0, 1, 0])]);
        assert_eq!(a.intersection(&b), Subspace::coordinate(3, [1]));
        assert_eq!(a.sum(&b), Subspace::full(3));
    }

    #[test]
    fn echelon_builder_matches_rref_rank() {
        let rows = vec![v(&[1, 2, 3, 4]), v(&[2, 4, 6, 8]), v(&[0, 1, 0, 1]), v(&[1, 3, 3, 5])];
        let mut b = EchelonBuilder::new(4);
        for r in &rows {
            b.insert(to_sparse(r));
        }
        assert_eq!(b.rank(), 2);
        assert_eq!(b.clone().into_subspace(), Subspace::span(4, rows.clone()));
        assert!(b.contains(to_sparse(&v(&[1, 3, 3, 5]))));
    }
}
