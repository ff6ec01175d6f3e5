use std::cmp::Ordering;
use std::fmt;
use std::ops::{Deref, Index};

use crate::scalar::{ParseScalarError, Scalar};

/// Coordinate vector in R^{d+1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<T>(Vec<T>);

impl<T: Scalar> Vector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Vector(coords)
    }
    pub fn zeros(n: usize) -> Self {
        Vector(vec![T::zero(); n])
    }
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = T::one();
        v
    }
    /// The unit effect `u = (0, …, 0, 1)`.
    pub fn unit_effect(n: usize) -> Self {
        Self::unit(n, n - 1)
    }
    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| T::from_int(x)).collect())
    }
    pub fn from_ratios(xs: &[(i64, i64)]) -> Self {
        Vector(xs.iter().map(|&(p, q)| T::from_ratio(p, q)).collect())
    }
    pub fn parse(xs: &[&str]) -> Result<Self, ParseScalarError> {
        xs.iter().map(|s| T::parse_str(s)).collect::<Result<_, _>>().map(Vector)
    }
    pub fn from_f64(xs: &[f64]) -> Self {
        Vector(xs.iter().map(|&x| T::from_f64(x)).collect())
    }
    pub fn coords(&self) -> &[T] {
        &self.0
    }
    pub fn into_inner(self) -> Vec<T> {
        self.0
    }
    pub fn dot(&self, other: &[T]) -> T {
        dot(&self.0, other)
    }
    pub fn add(&self, other: &Self) -> Self {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }
    pub fn sub(&self, other: &Self) -> Self {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }
    pub fn scale(&self, s: &T) -> Self {
        Vector(self.0.iter().map(|a| a.clone() * s.clone()).collect())
    }
    pub fn neg(&self) -> Self {
        Vector(self.0.iter().map(|a| -a.clone()).collect())
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero_s())
    }
    pub fn last(&self) -> &T {
        self.0.last().expect("non-empty vector")
    }
    /// Appends a coordinate.
    pub fn extend(&self, x: T) -> Self {
        let mut v = self.0.clone();
        v.push(x);
        Vector(v)
    }
    /// Drops the final coordinate.
    pub fn truncate_last(&self) -> Self {
        Vector(self.0[..self.0.len() - 1].to_vec())
    }
    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|x| x.to_f64()).collect()
    }
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        lex_cmp(&self.0, &other.0)
    }
    pub fn eq_s(&self, other: &Self) -> bool {
        self.len() == other.len() && self.lex_cmp(other) == Ordering::Equal
    }
    /// Divides by the largest absolute coordinate.
    pub fn normalize_max(&self) -> Self {
        Vector(normalize_max(&self.0))
    }
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Vector<U> {
        Vector(self.0.iter().map(f).collect())
    }
    /// Convex combination `Σ wᵢ pᵢ` (weights are not checked).
    pub fn combination(points: &[Self], weights: &[T]) -> Self {
        let n = points[0].len();
        let mut acc = vec![T::zero(); n];
        for (p, w) in points.iter().zip(weights) {
            for (a, x) in acc.iter_mut().zip(p.iter()) {
                *a = a.clone() + w.clone() * x.clone();
            }
        }
        Vector(acc)
    }
    pub fn centroid(points: &[Self]) -> Self {
        let k = T::from_int(points.len() as i64);
        let w = vec![T::one() / k; points.len()];
        Self::combination(points, &w)
    }
}

impl<T> Deref for Vector<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> AsRef<[T]> for Vector<T> {
    fn as_ref(&self) -> &[T] {
        &self.0
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> From<Vec<T>> for Vector<T> {
    fn from(v: Vec<T>) -> Self {
        Vector(v)
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn lex_cmp<T: Scalar>(a: &[T], b: &[T]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp_s(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

pub fn normalize_max<T: Scalar>(v: &[T]) -> Vec<T> {
    let m = v
        .iter()
        .map(|x| x.abs_s())
        .fold(T::zero(), |acc, x| acc.max_s(x));
    if m.is_zero_s() {
        return v.to_vec();
    }
    v.iter().map(|x| x.clone() / m.clone()).collect()
}

/// Sorts lexicographically and removes duplicates (under `cmp_s`).
pub fn sort_dedup<T: Scalar>(points: &mut Vec<Vector<T>>) {
    points.sort_by(|a, b| a.lex_cmp(b));
    points.dedup_by(|a, b| a.lex_cmp(b) == Ordering::Equal);
}

pub fn euclid_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
