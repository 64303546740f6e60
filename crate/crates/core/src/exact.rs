//! Exact scalars over ℚ and ℚ[i], dense matrices and canonical subspaces.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let err = || ExactError::Parse(s.to_string());
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub type Gq = GaussianRational;

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Self::new(rat(n, 1), Rational::zero())
    }

    pub fn real(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }

    /// `(a/b) + (c/d)i` from machine integers.
    pub fn q(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(rat(a, b), rat(c, d))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_text = |m: &Rational| {
            if m.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", format_rational(m))
            }
        };
        if self.im.is_zero() {
            return write!(f, "{}", format_rational(&self.re));
        }
        if self.re.is_zero() {
            return if self.im.is_negative() {
                write!(f, "-{}", im_text(&-self.im.clone()))
            } else {
                write!(f, "{}", im_text(&self.im))
            };
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}", format_rational(&self.re), sign, im_text(&self.im.abs()))
    }
}

impl FromStr for GaussianRational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, ExactError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(ExactError::Parse(s.to_string()));
        }
        if !t.ends_with('i') {
            return Ok(Self::real(parse_rational(&t)?));
        }
        let split = t
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re_part, im_part) = match split {
            Some(k) => (&t[..k], &t[k..]),
            None => ("0", t.as_str()),
        };
        let coeff = im_part.trim_end_matches('i').trim_end_matches('*');
        let im = match coeff {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            c => parse_rational(c).map_err(|_| ExactError::Parse(s.to_string()))?,
        };
        let re = parse_rational(re_part).map_err(|_| ExactError::Parse(s.to_string()))?;
        Ok(Self::new(re, im))
    }
}

impl<'a> Add<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn add(self, o: &Gq) -> Gq {
        Gq::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn sub(self, o: &Gq) -> Gq {
        Gq::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn mul(self, o: &Gq) -> Gq {
        if self.im.is_zero() && o.im.is_zero() {
            return Gq::real(&self.re * &o.re);
        }
        Gq::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn div(self, o: &Gq) -> Gq {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Gq> for Gq {
            type Output = Gq;
            fn $m(self, o: Gq) -> Gq {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Gq> for Gq {
            type Output = Gq;
            fn $m(self, o: &Gq) -> Gq {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Gq> for &'a Gq {
            type Output = Gq;
            fn $m(self, o: Gq) -> Gq {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Gq> for Gq {
    fn add_assign(&mut self, o: &Gq) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign<Gq> for Gq {
    fn add_assign(&mut self, o: Gq) {
        *self += &o;
    }
}

impl SubAssign<&Gq> for Gq {
    fn sub_assign(&mut self, o: &Gq) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl SubAssign<Gq> for Gq {
    fn sub_assign(&mut self, o: Gq) {
        *self -= &o;
    }
}

impl MulAssign<&Gq> for Gq {
    fn mul_assign(&mut self, o: &Gq) {
        *self = &*self * o;
    }
}

impl From<i64> for Gq {
    fn from(n: i64) -> Self {
        Gq::int(n)
    }
}

impl From<Rational> for Gq {
    fn from(r: Rational) -> Self {
        Gq::real(r)
    }
}

pub fn vec_zero(n: usize) -> Vec<Gq> {
    vec![Gq::zero(); n]
}

pub fn vec_is_zero(v: &[Gq]) -> bool {
    v.iter().all(Gq::is_zero)
}

pub fn vec_add(a: &[Gq], b: &[Gq]) -> Vec<Gq> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Gq], b: &[Gq]) -> Vec<Gq> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Gq], s: &Gq) -> Vec<Gq> {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_conj(a: &[Gq]) -> Vec<Gq> {
    a.iter().map(Gq::conj).collect()
}

/// `acc += s * v`, skipping the work when `s` vanishes.
pub fn axpy(acc: &mut [Gq], s: &Gq, v: &[Gq]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

pub fn format_vec(v: &[Gq]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gq>,
}

/// Affine solution set `particular + kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Gq>,
    pub kernel: Subspace,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec_zero(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Gq::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Gq>>) -> Self {
        Self::from_rows_with_cols(rows.first().map_or(0, Vec::len), rows)
    }

    /// Like `from_rows` but keeps the column count when there are no rows.
    pub fn from_rows_with_cols(cols: usize, rows: Vec<Vec<Gq>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Self { rows: n, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Gq>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Gq::int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Gq {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Gq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Gq> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Gq> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Gq>> {
        (0..self.rows).map(|i| self.row(i)).collect()
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

    pub fn conj_transpose(&self) -> Self {
        let mut t = self.transpose();
        t.data.iter_mut().for_each(|x| *x = x.conj());
        t
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.data)
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix, ExactError> {
        if self.cols != o.rows {
            return Err(ExactError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Gq]) -> Vec<Gq> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Gq::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: vec_add(&self.data, &o.data) }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: vec_sub(&self.data, &o.data) }
    }

    pub fn scale(&self, s: &Gq) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: vec_scale(&self.data, s) }
    }

    /// Commutator `self·o − o·self` of square matrices.
    pub fn commutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).unwrap().sub(&o.mul(self).unwrap())
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Gq] {
        &self.data
    }

    pub fn trace(&self) -> Gq {
        let mut t = Gq::zero();
        for k in 0..self.rows.min(self.cols) {
            t += self.get(k, k);
        }
        t
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            let pivot_row = m.row(r);
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    if !pivot_row[j].is_zero() {
                        let v = m.get(i, j) - &(&f * &pivot_row[j]);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec_zero(self.cols);
                v[f] = Gq::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect();
        Subspace::span(self.cols, basis)
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, (0..self.cols).map(|j| self.col(j)).collect())
    }

    /// Solves `self · x = b`; `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[Gq]) -> Result<Option<Solution>, ExactError> {
        if b.len() != self.rows {
            return Err(ExactError::Shape(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec_zero(self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(Some(Solution { particular: x, kernel: self.kernel() }))
    }
}

/// Linear subspace of `ambient`-space held in canonical reduced echelon form,
/// so two spans of the same space compare equal structurally.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Gq>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Matrix::identity(ambient).image()
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Gq>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let (r, pivots) = Matrix::from_rows_with_cols(ambient, vectors).rref();
        Self { ambient, basis: (0..pivots.len()).map(|i| r.row(i)).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Gq>] {
        &self.basis
    }

    /// Pivot position of each canonical basis vector.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| v.iter().position(|x| !x.is_zero()).unwrap()).collect()
    }

    fn check(&self, n: usize) -> Result<(), ExactError> {
        if self.ambient == n {
            Ok(())
        } else {
            Err(ExactError::DimensionMismatch(self.ambient, n))
        }
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[Gq]) -> Result<Option<Vec<Gq>>, ExactError> {
        self.check(v.len())?;
        let coords: Vec<Gq> = self.pivots().iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec_zero(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut rebuilt, c, b);
        }
        Ok((rebuilt.as_slice() == v).then_some(coords))
    }

    pub fn contains(&self, v: &[Gq]) -> Result<bool, ExactError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_space(&self, o: &Subspace) -> Result<bool, ExactError> {
        self.check(o.ambient)?;
        for v in &o.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace, ExactError> {
        self.check(o.ambient)?;
        let mut all = self.basis.clone();
        all.extend(o.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, all))
    }

    pub fn intersect(&self, o: &Subspace) -> Result<Subspace, ExactError> {
        self.check(o.ambient)?;
        if self.dim() == 0 || o.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let mut cols: Vec<Vec<Gq>> = self.basis.clone();
        cols.extend(o.basis.iter().map(|v| vec_scale(v, &Gq::int(-1))));
        let k = Matrix::from_columns(self.ambient, &cols).kernel();
        let p = self.dim();
        let vectors = k
            .basis
            .iter()
            .map(|x| {
                let mut v = vec_zero(self.ambient);
                for (c, b) in x[..p].iter().zip(&self.basis) {
                    axpy(&mut v, c, b);
                }
                v
            })
            .collect();
        Ok(Subspace::span(self.ambient, vectors))
    }

    /// Image of the space under a linear map given as a matrix.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map domain");
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)).collect())
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn as_columns(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    /// Annihilator rows: functionals vanishing exactly on this space.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        Matrix::from_rows(self.basis.clone()).kernel()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Gq {
        s.parse().unwrap()
    }

    #[test]
    fn scalar_round_trip() {
        for s in ["0", "3", "-1/2", "i", "-i", "1/2+3/4*i", "-5-2*i", "7/3*i", "1-i"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("2/4"), g("1/2"));
        assert_eq!(g("1/2*i"), Gq::q(0, 1, 1, 2));
        assert!("1/0".parse::<Gq>().is_err());
        assert!("x".parse::<Gq>().is_err());
    }

    #[test]
    fn field_ops() {
        let a = g("1+2*i");
        let b = g("3-i");
        assert_eq!(&a * &b, g("5+5*i"));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.norm_sq(), rat(5, 1));
        assert!(Gq::zero().inv().is_none());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(2).kernel().dim(), 0);
        let m = Matrix::from_rows(vec![vec![g("1"), g("i")], vec![g("-i"), g("1")]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[g("-i"), g("1")]).unwrap());
        assert_eq!(Matrix::zeros(3, 3).kernel().dim(), 3);
    }

    #[test]
    fn solve_examples() {
        let b = vec![g("2"), g("-1/3")];
        let s = Matrix::identity(2).solve(&b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert_eq!(s.kernel.dim(), 0);

        let s = Matrix::from_ints(&[&[1, 1]]).solve(&[g("2")]).unwrap().unwrap();
        assert_eq!(s.particular, vec![g("2"), g("0")]);
        assert_eq!(s.kernel, Subspace::span(2, vec![vec![g("1"), g("-1")]]));

        assert!(Matrix::from_ints(&[&[1], &[0]]).solve(&[g("0"), g("1")]).unwrap().is_none());
        assert!(Matrix::identity(2).solve(&[g("1")]).is_err());
    }

    #[test]
    fn lattice_examples() {
        let e = |k: usize| {
            let mut v = vec_zero(3);
            v[k] = Gq::one();
            v
        };
        let s1 = Subspace::span(3, vec![e(0)]);
        let s2 = Subspace::span(3, vec![e(1)]);
        assert_eq!(s1.intersect(&s2).unwrap().dim(), 0);
        assert_eq!(s1.intersect(&s1).unwrap(), s1);
        let a = Subspace::span(3, vec![e(0), e(1)]);
        let b = Subspace::span(3, vec![e(1), e(2)]);
        assert_eq!(a.intersect(&b).unwrap(), s2);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(3));
        assert_eq!(
            s1.intersect(&Subspace::zero(2)),
            Err(ExactError::DimensionMismatch(3, 2))
        );
    }
}
