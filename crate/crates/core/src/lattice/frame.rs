use crate::error::{Error, Result};
use crate::lattice::matrix::{smith_normal_form, IntMatrix};
use crate::lattice::vector::LatticeVector;
use crate::scalar::Scalar;

/// Lattice basis of the saturation `Z^n ∩ span(vectors)`, with the
/// coordinate map onto `Z^rank`.
#[derive(Clone, Debug)]
pub struct SublatticeFrame<T> {
    ambient_dim: usize,
    basis: Vec<LatticeVector<T>>,
    /// First `rank` rows give frame coordinates, remaining rows cut out the span.
    u: IntMatrix<T>,
}

impl<T: Scalar> SublatticeFrame<T> {
    /// Frame of the saturated lattice spanned by `vectors` (may be empty).
    pub fn spanned_by(ambient_dim: usize, vectors: &[LatticeVector<T>]) -> Self {
        if vectors.is_empty() {
            return Self {
                ambient_dim,
                basis: Vec::new(),
                u: IntMatrix::identity(ambient_dim),
            };
        }
        let columns: Vec<Vec<T>> = vectors.iter().map(|v| v.0.clone()).collect();
        let a = IntMatrix::from_columns(&columns, ambient_dim);
        let snf = smith_normal_form(&a);
        let basis = (0..snf.rank())
            .map(|j| LatticeVector(snf.u_inv.column(j)))
            .collect();
        Self {
            ambient_dim,
            basis,
            u: snf.u,
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let units: Vec<_> = (0..ambient_dim)
            .map(|i| LatticeVector::unit(ambient_dim, i))
            .collect();
        Self::spanned_by(ambient_dim, &units)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[LatticeVector<T>] {
        &self.basis
    }

    pub fn contains(&self, v: &LatticeVector<T>) -> bool {
        (self.rank()..self.ambient_dim).all(|i| crate::scalar::dot(&self.u.row(i), v).is_zero())
    }

    /// Frame coordinates of a vector of the saturated lattice.
    pub fn coordinates(&self, v: &LatticeVector<T>) -> Result<Vec<T>> {
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.dim(),
            });
        }
        if !self.contains(v) {
            return Err(Error::NotInSublattice);
        }
        Ok((0..self.rank())
            .map(|i| crate::scalar::dot(&self.u.row(i), v))
            .collect())
    }

    pub fn lift(&self, coords: &[T]) -> LatticeVector<T> {
        debug_assert_eq!(coords.len(), self.rank());
        let mut out = vec![T::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b.iter()) {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
        LatticeVector(out)
    }

    /// Ambient covector agreeing with the frame covector `c` on the sublattice.
    pub fn pull_back(&self, c: &[T]) -> LatticeVector<T> {
        debug_assert_eq!(c.len(), self.rank());
        let mut out = vec![T::zero(); self.ambient_dim];
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.clone() + ci.clone() * self.u.get(i, j).clone();
            }
        }
        LatticeVector(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector<i64> {
        LatticeVector::from_ints(c)
    }

    #[test]
    fn saturation_of_diagonal() {
        let f = SublatticeFrame::spanned_by(2, &[v(&[2, 2])]);
        assert_eq!(f.rank(), 1);
        assert_eq!(f.coordinates(&v(&[1, 1])).unwrap().len(), 1);
        assert_eq!(f.coordinates(&v(&[3, 3])).unwrap()[0].abs(), 3);
        assert_eq!(f.coordinates(&v(&[1, 0])), Err(Error::NotInSublattice));
        let c = f.coordinates(&v(&[5, 5])).unwrap();
        assert_eq!(f.lift(&c), v(&[5, 5]));
    }

    #[test]
    fn pull_back_agrees_on_sublattice() {
        let f = SublatticeFrame::spanned_by(3, &[v(&[1, 2, 0]), v(&[0, 1, 3])]);
        assert_eq!(f.rank(), 2);
        let w = f.pull_back(&[2, -1]);
        for p in [v(&[1, 2, 0]), v(&[0, 1, 3]), v(&[1, 3, 3])] {
            let c = f.coordinates(&p).unwrap();
            assert_eq!(w.dot(&p), 2 * c[0] - c[1]);
        }
    }
}
