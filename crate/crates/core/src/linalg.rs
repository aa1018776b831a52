//! Dense exact linear algebra over Q(i): row reduction, kernels, subspaces in
//! canonical echelon form, and affine system solving with rank certificates.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational as G;

pub type Vector = Vec<G>;

pub fn zero_vec(n: usize) -> Vector {
    vec![G::zero(); n]
}

pub fn unit_vec(n: usize, k: usize) -> Vector {
    let mut v = zero_vec(n);
    v[k] = G::one();
    v
}

pub fn is_zero_vec(v: &[G]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[G], b: &[G]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[G], b: &[G]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &G, a: &[G]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `acc += c * a`
pub fn axpy(acc: &mut [G], c: &G, a: &[G]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in acc.iter_mut().zip(a) {
        if !y.is_zero() {
            *x += &(c * y);
        }
    }
}

pub fn vec_conj(a: &[G]) -> Vector {
    a.iter().map(G::conj).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<G>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![G::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, G::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must share one length.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned());
        }
        Self { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix columns");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector> =
            rows.iter().map(|r| r.iter().map(|&x| G::from_int(x)).collect()).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &G {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: G) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut G {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[G] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn push_row(&mut self, row: &[G]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row.iter().cloned());
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(G::conj).collect() }
    }

    pub fn scale(&self, c: &G) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c * x).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        self.add(&other.scale(&G::from_int(-1)))
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[G]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = G::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(G::is_real)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n));
        let r = rref(&aug);
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.matrix.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn hstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Output of [`rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form by Gauss-Jordan elimination.
pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a.get(r, c).inv().expect("nonzero pivot");
        for j in c..cols {
            let v = a.get(r, j);
            if !v.is_zero() {
                let scaled = v * &inv;
                a.set(r, j, scaled);
            }
        }
        let pivot_row: Vector = a.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            let row = &mut a.data[i * cols..(i + 1) * cols];
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &(&f * &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    let nonzero: Vec<Vector> = (0..rank).map(|i| a.row(i).to_vec()).collect();
    let zero_rows = vec![zero_vec(cols); rows - rank];
    let mut all = nonzero;
    all.extend(zero_rows);
    Rref { matrix: Matrix::from_rows(cols, &all), rank, pivots }
}

/// Null space of `m` acting on column vectors.
pub fn kernel(m: &Matrix) -> Subspace {
    let r = rref(m);
    let n = m.cols;
    let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
    let vectors: Vec<Vector> = free
        .iter()
        .map(|&f| {
            let mut v = zero_vec(n);
            v[f] = G::one();
            for (i, &p) in r.pivots.iter().enumerate() {
                v[p] = -r.matrix.get(i, f);
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors)
}

/// A linear subspace of `Q(i)^ambient`, stored as its unique RREF basis.
///
/// Two subspaces are equal exactly when their RREF bases are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Matrix::zeros(0, ambient), pivots: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let r = rref(&Matrix::from_rows(ambient, vectors));
        let rows: Vec<Vector> = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        Self { ambient, basis: Matrix::from_rows(ambient, &rows), pivots: r.pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Whether the subspace is closed under complex conjugation.
    pub fn is_real(&self) -> bool {
        self.basis.is_real()
    }

    /// Coefficients of `v` in the RREF basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[G]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient);
        let coeffs: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coeffs.iter().zip(self.basis.row_vectors()) {
            axpy(&mut residual, &-c, &row);
        }
        is_zero_vec(&residual).then_some(coeffs)
    }

    pub fn contains(&self, v: &[G]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.row_vectors().iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Ok(Subspace::span(self.ambient, &vs))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let a = self.vectors();
        let b = other.vectors();
        let mut cols = a.clone();
        cols.extend(b.iter().map(|v| vec_scale(&G::from_int(-1), v)));
        let k = kernel(&Matrix::from_cols(self.ambient, &cols));
        let vs: Vec<Vector> = k
            .vectors()
            .iter()
            .map(|x| {
                let mut v = zero_vec(self.ambient);
                for (c, ai) in x.iter().zip(&a) {
                    axpy(&mut v, c, ai);
                }
                v
            })
            .collect();
        Ok(Subspace::span(self.ambient, &vs))
    }

    pub fn conjugate(&self) -> Subspace {
        Subspace::span(self.ambient, &self.basis.conj().row_vectors())
    }

    /// The coordinate complement: standard unit vectors on the non-pivot columns.
    pub fn complement(&self) -> Subspace {
        let vs: Vec<Vector> = (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .map(|c| unit_vec(self.ambient, c))
            .collect();
        Subspace::span(self.ambient, &vs)
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        let vs: Vec<Vector> = self.vectors().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.rows(), &vs)
    }

    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.vectors().iter().all(|v| self.contains(&m.mul_vec(v)))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

/// Exact rank certificate for an inconsistent system `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub system_rank: usize,
    pub augmented_rank: usize,
}

#[derive(Clone, Debug)]
pub enum AffineSolution {
    /// Solution set `particular + kernel`.
    Feasible { particular: Vector, kernel: Subspace },
    /// `rank(A) < rank([A | b])`.
    Infeasible(RankCertificate),
}

impl AffineSolution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, AffineSolution::Feasible { .. })
    }
}

/// Solves `A x = b` exactly.
pub fn solve_affine(a: &Matrix, b: &[G]) -> Result<AffineSolution> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let n = a.cols();
    let aug = a.hstack(&Matrix::from_cols(a.rows(), &[b.to_vec()]));
    let r = rref(&aug);
    if r.pivots.last() == Some(&n) {
        let system_rank = a.rank();
        return Ok(AffineSolution::Infeasible(RankCertificate {
            system_rank,
            augmented_rank: r.rank,
        }));
    }
    let mut particular = zero_vec(n);
    for (i, &p) in r.pivots.iter().enumerate() {
        particular[p] = r.matrix.get(i, n).clone();
    }
    Ok(AffineSolution::Feasible { particular, kernel: kernel(a) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> G {
        G::complex(re, 1, im, 1)
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(2);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 2);
        let z = Matrix::zeros(2, 3);
        let r = rref(&z);
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_complex_rank_one() {
        // [[1, i], [i, -1]]: second row is i times the first
        let m = Matrix::from_rows(2, &[vec![gi(1, 0), gi(0, 1)], vec![gi(0, 1), gi(-1, 0)]]);
        let r = rref(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(
            r.matrix,
            Matrix::from_rows(2, &[vec![gi(1, 0), gi(0, 1)], vec![gi(0, 0), gi(0, 0)]])
        );
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_edge_cases() {
        assert_eq!(kernel(&Matrix::zeros(3, 3)).dim(), 3);
        let inv = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(kernel(&inv).dim(), 0);
        let m = Matrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        for v in k.vectors() {
            assert!(is_zero_vec(&m.mul_vec(&v)));
        }
    }

    #[test]
    fn subspace_operations() {
        let e1 = Subspace::span(3, &[unit_vec(3, 0)]);
        let e2 = Subspace::span(3, &[unit_vec(3, 1)]);
        let s = e1.sum(&e2).unwrap();
        assert_eq!(s, Subspace::span(3, &[unit_vec(3, 0), unit_vec(3, 1)]));
        assert_eq!(s.intersection(&s).unwrap(), s);
        assert_eq!(e1.intersection(&e2).unwrap().dim(), 0);
        assert!(e1.sum(&Subspace::zero(4)).is_err());

        // conj span{(1, -i)} = span{(1, i)}
        let v = Subspace::span(2, &[vec![gi(1, 0), gi(0, -1)]]);
        assert_eq!(v.conjugate(), Subspace::span(2, &[vec![gi(1, 0), gi(0, 1)]]));
        assert!(!v.is_real());
        assert_eq!(s.complement(), Subspace::span(3, &[unit_vec(3, 2)]));
    }

    #[test]
    fn affine_solutions() {
        let b = vec![gi(3, 1), gi(-2, 0)];
        match solve_affine(&Matrix::identity(2), &b).unwrap() {
            AffineSolution::Feasible { particular, kernel } => {
                assert_eq!(particular, b);
                assert_eq!(kernel.dim(), 0);
            }
            _ => panic!("identity system must be feasible"),
        }
        match solve_affine(&Matrix::zeros(2, 2), &b).unwrap() {
            AffineSolution::Infeasible(c) => {
                assert_eq!(c, RankCertificate { system_rank: 0, augmented_rank: 1 })
            }
            _ => panic!("zero system with nonzero rhs is infeasible"),
        }
        assert!(solve_affine(&Matrix::identity(2), &[gi(1, 0)]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(2, &[vec![gi(1, 1), gi(2, 0)], vec![gi(0, 1), gi(1, -1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
