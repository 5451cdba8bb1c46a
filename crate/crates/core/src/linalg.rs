//! Vectors and matrices with octonion entries.
//!
//! Every matrix-vector and matrix-matrix summand is evaluated as
//! `left entry * right entry`; nothing is re-associated.

use std::ops::{Add, Index, IndexMut, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octonion::Octonion;

/// Column vector of octonions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OctVector(Vec<Octonion>);

impl OctVector {
    pub fn new(entries: Vec<Octonion>) -> Self {
        OctVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        OctVector(vec![Octonion::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Octonion] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Octonion> {
        self.0.iter()
    }

    /// `sqrt(v'v)`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(Octonion::norm_sqr).sum()
    }

    pub fn scale(&self, s: f64) -> OctVector {
        OctVector(self.0.iter().map(|x| *x * s).collect())
    }

    pub fn normalized(&self) -> OctVector {
        self.scale(1.0 / self.norm())
    }

    /// Component-wise `v_i * lambda`.
    pub fn scale_right(&self, lambda: Octonion) -> OctVector {
        OctVector(self.0.iter().map(|x| *x * lambda).collect())
    }

    /// Component-wise `lambda * v_i`.
    pub fn scale_left(&self, lambda: Octonion) -> OctVector {
        OctVector(self.0.iter().map(|x| lambda * *x).collect())
    }

    /// Index of the component with the largest norm.
    pub fn pivot(&self) -> usize {
        let mut best = 0;
        for (i, x) in self.0.iter().enumerate() {
            if x.norm() > self.0[best].norm() {
                best = i;
            }
        }
        best
    }
}

impl Index<usize> for OctVector {
    type Output = Octonion;
    fn index(&self, i: usize) -> &Octonion {
        &self.0[i]
    }
}

impl IndexMut<usize> for OctVector {
    fn index_mut(&mut self, i: usize) -> &mut Octonion {
        &mut self.0[i]
    }
}

impl From<Vec<Octonion>> for OctVector {
    fn from(v: Vec<Octonion>) -> Self {
        OctVector(v)
    }
}

impl Add for &OctVector {
    type Output = OctVector;
    fn add(self, rhs: &OctVector) -> OctVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        OctVector(self.0.iter().zip(&rhs.0).map(|(a, b)| *a + *b).collect())
    }
}

impl Sub for &OctVector {
    type Output = OctVector;
    fn sub(self, rhs: &OctVector) -> OctVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        OctVector(self.0.iter().zip(&rhs.0).map(|(a, b)| *a - *b).collect())
    }
}

/// `sum_i conj(v_i) w_i`, i.e. `v' w`.
pub fn inner(v: &OctVector, w: &OctVector) -> Result<Octonion> {
    check_len(v, w)?;
    Ok(v.iter().zip(w.iter()).map(|(a, b)| a.conj() * *b).sum())
}

/// `v w'`, entry `(i, j) = v_i conj(w_j)`.
pub fn outer(v: &OctVector, w: &OctVector) -> OctMatrix {
    let mut m = OctMatrix::zeros(v.len(), w.len());
    for i in 0..v.len() {
        for j in 0..w.len() {
            m[(i, j)] = v[i] * w[j].conj();
        }
    }
    m
}

fn check_len(v: &OctVector, w: &OctVector) -> Result<()> {
    if v.len() != w.len() {
        return Err(Error::ShapeMismatch(format!(
            "vector lengths {} and {}",
            v.len(),
            w.len()
        )));
    }
    Ok(())
}

/// Row-major rectangular matrix of octonions.
#[derive(Debug, Clone, PartialEq)]
pub struct OctMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Octonion>,
}

impl OctMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        OctMatrix {
            rows,
            cols,
            data: vec![Octonion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = OctMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Octonion::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Octonion>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(OctMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Square matrix with the given columns.
    pub fn from_columns(columns: &[OctVector]) -> Result<Self> {
        let n = columns.first().map_or(0, OctVector::len);
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::ShapeMismatch("columns of unequal length".into()));
        }
        let mut m = OctMatrix::zeros(n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = col[i];
            }
        }
        Ok(m)
    }

    pub fn diagonal(entries: &[Octonion]) -> Self {
        let mut m = OctMatrix::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Octonion] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> OctVector {
        (0..self.rows).map(|i| self[(i, j)]).collect::<Vec<_>>().into()
    }

    pub fn to_rows(&self) -> Vec<Vec<Octonion>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> OctMatrix {
        let mut m = OctMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Octonion {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Entry `(i, k) = sum_j A_ij B_jk`.
    pub fn matmul(&self, other: &OctMatrix) -> Result<OctMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = OctMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..other.cols {
                m[(i, k)] = (0..self.cols).map(|j| self[(i, j)] * other[(j, k)]).sum();
            }
        }
        Ok(m)
    }

    /// Component `i = sum_j A_ij v_j`.
    pub fn matvec(&self, v: &OctVector) -> Result<OctVector> {
        if self.cols != v.len() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v.iter()).map(|(a, x)| *a * *x).sum())
            .collect::<Vec<Octonion>>()
            .into())
    }

    /// Entry-wise `lambda * A_ij`.
    pub fn scale_left(&self, lambda: Octonion) -> OctMatrix {
        OctMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| lambda * *x).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> OctMatrix {
        OctMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| *x * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(Octonion::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && (self - &self.dagger()).data.iter().all(|x| x.max_abs() <= tol)
    }

    /// `A - (tr A) I`.
    pub fn tilde(&self) -> Result<OctMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("tilde of a non-square matrix".into()));
        }
        let tr = self.trace();
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= tr;
        }
        Ok(m)
    }
}

impl Index<(usize, usize)> for OctMatrix {
    type Output = Octonion;
    fn index(&self, (i, j): (usize, usize)) -> &Octonion {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for OctMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Octonion {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &OctMatrix {
    type Output = OctMatrix;
    fn add(self, rhs: &OctMatrix) -> OctMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        OctMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl Sub for &OctMatrix {
    type Output = OctMatrix;
    fn sub(self, rhs: &OctMatrix) -> OctMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        OctMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

/// `[[p, a], [conj(a), m]]` with real `p`, `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Hermitian2 {
    pub p: f64,
    pub m: f64,
    pub a: Octonion,
}

impl Hermitian2 {
    pub fn new(p: f64, m: f64, a: Octonion) -> Self {
        Hermitian2 { p, m, a }
    }

    pub fn to_matrix(&self) -> OctMatrix {
        let mut h = OctMatrix::zeros(2, 2);
        h[(0, 0)] = Octonion::real(self.p);
        h[(0, 1)] = self.a;
        h[(1, 0)] = self.a.conj();
        h[(1, 1)] = Octonion::real(self.m);
        h
    }

    /// Reads the parameters back from a Hermitian 2x2 matrix.
    pub fn from_matrix(h: &OctMatrix, tol: f64) -> Result<Self> {
        if h.rows() != 2 || h.cols() != 2 {
            return Err(Error::ShapeMismatch(format!("{}x{} is not 2x2", h.rows(), h.cols())));
        }
        if !h.is_hermitian(tol) {
            return Err(Error::PreconditionViolated("matrix is not Hermitian".into()));
        }
        Ok(Hermitian2::new(h[(0, 0)].re(), h[(1, 1)].re(), h[(0, 1)]))
    }

    pub fn trace(&self) -> f64 {
        self.p + self.m
    }

    /// `pm - |a|^2`.
    pub fn det(&self) -> f64 {
        self.p * self.m - self.a.norm_sqr()
    }
}

/// `[[p, a, conj(b)], [conj(a), m, c], [b, conj(c), n]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Hermitian3 {
    pub p: f64,
    pub m: f64,
    pub n: f64,
    pub a: Octonion,
    pub b: Octonion,
    pub c: Octonion,
}

/// Trace, second invariant and determinant of a 3x3 Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Invariants3 {
    pub trace: f64,
    pub sigma: f64,
    pub det: f64,
}

impl Hermitian3 {
    pub fn new(p: f64, m: f64, n: f64, a: Octonion, b: Octonion, c: Octonion) -> Self {
        Hermitian3 { p, m, n, a, b, c }
    }

    pub fn to_matrix(&self) -> OctMatrix {
        let mut h = OctMatrix::zeros(3, 3);
        h[(0, 0)] = Octonion::real(self.p);
        h[(1, 1)] = Octonion::real(self.m);
        h[(2, 2)] = Octonion::real(self.n);
        h[(0, 1)] = self.a;
        h[(1, 0)] = self.a.conj();
        h[(0, 2)] = self.b.conj();
        h[(2, 0)] = self.b;
        h[(1, 2)] = self.c;
        h[(2, 1)] = self.c.conj();
        h
    }

    pub fn from_matrix(h: &OctMatrix, tol: f64) -> Result<Self> {
        if h.rows() != 3 || h.cols() != 3 {
            return Err(Error::ShapeMismatch(format!("{}x{} is not 3x3", h.rows(), h.cols())));
        }
        if !h.is_hermitian(tol) {
            return Err(Error::PreconditionViolated("matrix is not Hermitian".into()));
        }
        Ok(Hermitian3::new(
            h[(0, 0)].re(),
            h[(1, 1)].re(),
            h[(2, 2)].re(),
            h[(0, 1)],
            h[(2, 0)],
            h[(1, 2)],
        ))
    }

    /// The real quantity `b(ac) + conj(b(ac))` used by the determinant.
    fn two_re_bac(&self) -> f64 {
        2.0 * (self.b * (self.a * self.c)).re()
    }

    pub fn invariants(&self) -> Invariants3 {
        let (na, nb, nc) = (self.a.norm_sqr(), self.b.norm_sqr(), self.c.norm_sqr());
        Invariants3 {
            trace: self.p + self.m + self.n,
            sigma: self.p * self.m + self.p * self.n + self.m * self.n - na - nb - nc,
            det: self.p * self.m * self.n + self.two_re_bac()
                - self.n * na
                - self.m * nb
                - self.p * nc,
        }
    }

    /// Imaginary part of `b(ac) + conj(b(ac))` evaluated literally; zero up
    /// to rounding.
    pub fn det_imaginary_defect(&self) -> f64 {
        let bac = self.b * (self.a * self.c);
        (bac + bac.conj()).im().norm()
    }
}
