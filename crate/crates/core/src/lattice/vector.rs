use std::fmt;
use std::ops::{Add, Deref, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::{dot, Scalar};

/// Integral point (or covector) of `Z^n`. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector<T>(pub Vec<T>);

impl<T: Scalar> LatticeVector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![T::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[axis] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &Self) -> T {
        dot(&self.0, &other.0)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self(self.0.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Coordinates that are nonzero.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.0[i].is_zero()).collect()
    }
}

impl<T> Deref for LatticeVector<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> Index<usize> for LatticeVector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Scalar> Add for &LatticeVector<T> {
    type Output = LatticeVector<T>;
    fn add(self, rhs: Self) -> LatticeVector<T> {
        LatticeVector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

impl<T: Scalar> Sub for &LatticeVector<T> {
    type Output = LatticeVector<T>;
    fn sub(self, rhs: Self) -> LatticeVector<T> {
        LatticeVector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

impl<T: Scalar> Neg for &LatticeVector<T> {
    type Output = LatticeVector<T>;
    fn neg(self) -> LatticeVector<T> {
        LatticeVector(self.0.iter().map(|a| -a.clone()).collect())
    }
}

impl<T: fmt::Display> fmt::Display for LatticeVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
