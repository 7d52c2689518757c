//! Exact rational linear algebra: scalars, dense matrices and subspaces kept in
//! reduced row echelon form.
//!
//! Dimensions in this crate are tiny (hom spaces between indecomposables of a
//! Dynkin mesh category rarely exceed six), so everything is dense.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Zero};

/// An exact rational number backed by `i64` numerator and denominator.
///
/// Every operation is overflow-checked; overflow aborts with a panic rather
/// than silently wrapping.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(Ratio::new(numer, denom))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rational(self.0.recip())
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        if rhs.is_zero() {
            return self;
        }
        if self.is_zero() {
            return rhs;
        }
        Rational(self.0.checked_add(&rhs.0).expect("rational overflow in add"))
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = *self + rhs;
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        if rhs.is_zero() {
            return self;
        }
        Rational(self.0.checked_sub(&rhs.0).expect("rational overflow in sub"))
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        if self.is_zero() || rhs.is_zero() {
            return Rational::ZERO;
        }
        if self.is_one() {
            return rhs;
        }
        if rhs.is_one() {
            return self;
        }
        Rational(self.0.checked_mul(&rhs.0).expect("rational overflow in mul"))
    }
}

impl std::ops::Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0.checked_div(&rhs.0).expect("rational overflow in div"))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

pub type Vector = Vec<Rational>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::ZERO; n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::ONE;
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rational], c: Rational, v: &[Rational]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * *x;
        }
    }
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::ONE);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, *x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::ZERO;
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += *a * *x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c);
                        out.set(r, c, cur + a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, c: Rational, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(&mut self.data, c, &other.data);
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(Rational::ZERO, |acc, i| acc + self.get(i, i))
    }

    pub fn rank(&self) -> usize {
        let cols: Vec<Vector> = (0..self.cols).map(|c| self.column(c)).collect();
        Subspace::span(self.rows, cols.iter().map(|v| v.as_slice())).dim()
    }
}

/// A linear subspace of `Q^n`, stored as a reduced row echelon basis.
///
/// Each basis row has a leading one at its pivot column and zeros at every
/// other pivot column, so reduction modulo the subspace is a single pass.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}) {:?}", self.dim(), self.ambient, self.rows)
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<'a, I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a [Rational]>,
    {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo the subspace: zero exactly on pivot columns.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p];
            if !c.is_zero() {
                axpy(&mut out, -c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Adds `v` to the spanning set. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x = *x * inv;
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if !c.is_zero() {
                axpy(row, -c, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    /// Columns that are not pivots; they index a basis of the quotient
    /// `Q^n / self`.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Image of a subspace under a linear map.
    pub fn image(&self, map: &Matrix) -> Subspace {
        assert_eq!(map.cols(), self.ambient);
        let imgs: Vec<Vector> = self.rows.iter().map(|v| map.mul_vec(v)).collect();
        Subspace::span(map.rows(), imgs.iter().map(|v| v.as_slice()))
    }
}

/// Basis of the null space of `m` (vectors `x` with `m x = 0`).
pub fn null_space(m: &Matrix) -> Vec<Vector> {
    // Row-reduce the rows of m; the free columns parametrise the kernel.
    let rows: Vec<Vector> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let rowspace = Subspace::span(m.cols(), rows.iter().map(|v| v.as_slice()));
    let free = rowspace.non_pivots();
    free.iter()
        .map(|&f| {
            let mut x = zero_vector(m.cols());
            x[f] = Rational::ONE;
            for (row, &p) in rowspace.basis().iter().zip(rowspace.pivots()) {
                x[p] = -row[f];
            }
            x
        })
        .collect()
}

/// Given vectors `domain[i]` with images `images[i]` under some linear map,
/// returns a basis of `{ sum c_i domain[i] : sum c_i images[i] in target }`.
pub fn preimage(domain: &[Vector], images: &[Vector], target: &Subspace) -> Vec<Vector> {
    assert_eq!(domain.len(), images.len());
    if domain.is_empty() {
        return Vec::new();
    }
    let residues: Vec<Vector> = images.iter().map(|v| target.reduce(v)).collect();
    let m = Matrix::from_columns(target.ambient(), &residues);
    let n = domain[0].len();
    let mut out = Subspace::zero(n);
    for c in null_space(&m) {
        let mut x = zero_vector(n);
        for (ci, d) in c.iter().zip(domain) {
            axpy(&mut x, *ci, d);
        }
        out.insert(&x);
    }
    out.basis().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rational_arithmetic() {
        let a = Rational::new(1, 2);
        let b = Rational::new(1, 3);
        assert_eq!(a + b, Rational::new(5, 6));
        assert_eq!(a - b, Rational::new(1, 6));
        assert_eq!(a * b, Rational::new(1, 6));
        assert_eq!(a / b, Rational::new(3, 2));
        assert_eq!(-a + a, Rational::ZERO);
    }

    #[test]
    #[should_panic(expected = "rational overflow")]
    fn overflow_panics() {
        let big = Rational::from_int(i64::MAX / 2);
        let _ = big * big;
    }

    #[test]
    fn subspace_reduce_and_contains() {
        let s = Subspace::span(3, [&[q(1), q(1), q(0)][..], &[q(0), q(1), q(1)][..]]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[q(1), q(2), q(1)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
        assert_eq!(s.non_pivots().len(), 1);
        let r = s.reduce(&[q(3), q(-1), q(7)]);
        for &p in s.pivots() {
            assert!(r[p].is_zero());
        }
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = Matrix::from_columns(1, &[vec![q(1)], vec![q(2)], vec![q(3)]]);
        let k = null_space(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vector(&m.mul_vec(v)));
        }
    }

    #[test]
    fn preimage_of_line() {
        // map (x, y) -> (x + y, 0); preimage of zero is the antidiagonal
        let domain = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        let images = vec![vec![q(1), q(0)], vec![q(1), q(0)]];
        let k = preimage(&domain, &images, &Subspace::zero(2));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0] + k[0][1], Rational::ZERO);
    }

    #[test]
    fn matrix_rank_and_trace() {
        let m = Matrix::from_columns(2, &[vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.trace(), q(5));
        assert_eq!(Matrix::identity(3).mul(&Matrix::identity(3)), Matrix::identity(3));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
            proptest::collection::vec(-3i64..=3, n)
        }

        proptest! {
            #[test]
            fn reduce_is_idempotent(vs in proptest::collection::vec(small_vec(4), 0..5), w in small_vec(4)) {
                let vs: Vec<Vector> = vs.into_iter().map(|v| v.into_iter().map(q).collect()).collect();
                let s = Subspace::span(4, vs.iter().map(|v| v.as_slice()));
                let w: Vector = w.into_iter().map(q).collect();
                let r = s.reduce(&w);
                prop_assert_eq!(s.reduce(&r), r.clone());
                for v in &vs {
                    prop_assert!(s.contains(v));
                }
                // w - reduce(w) lies in the subspace
                let diff: Vector = w.iter().zip(&r).map(|(a, b)| *a - *b).collect();
                prop_assert!(s.contains(&diff));
            }
        }
    }
}
