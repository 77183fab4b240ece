//! Lattice distance of a face from the origin and lattice heights.

use crate::error::{Error, Result};
use crate::lattice::frame::SublatticeFrame;
use crate::lattice::matrix::{integer_kernel, IntMatrix};
use crate::lattice::polytope::{Face, LatticePolytope};
use crate::lattice::vector::LatticeVector;
use crate::scalar::Scalar;

/// The primitive functional `l` on `M = Z^n ∩ span(face)` with `l(0) = 0`
/// and `l ≡ d` on the face, `d > 0`.
#[derive(Clone, Debug)]
pub struct HeightFunction<T> {
    frame: SublatticeFrame<T>,
    functional: LatticeVector<T>,
    distance: T,
}

impl<T: Scalar> HeightFunction<T> {
    /// `points` are the vertices of a face whose affine span misses the origin.
    pub fn for_points(points: &[LatticeVector<T>]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let n = first.dim();
        let frame = SublatticeFrame::spanned_by(n, points);
        let r = frame.rank();
        if r == 0 {
            return Err(Error::FaceContainsOrigin);
        }
        let coords: Vec<Vec<T>> = points
            .iter()
            .map(|p| frame.coordinates(p).expect("spanning point"))
            .collect();
        let rows: Vec<Vec<T>> = coords[1..]
            .iter()
            .map(|c| {
                c.iter()
                    .zip(&coords[0])
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect()
            })
            .collect();
        let kernel = integer_kernel(&IntMatrix::from_rows(&rows, r));
        if kernel.len() != 1 {
            return Err(Error::FaceContainsOrigin);
        }
        let mut c = kernel.into_iter().next().expect("one kernel vector");
        let mut d = crate::scalar::dot(&c, &coords[0]);
        if d.is_negative() {
            c.iter_mut().for_each(|x| *x = -x.clone());
            d = -d;
        }
        if d.is_zero() {
            return Err(Error::FaceContainsOrigin);
        }
        let functional = frame.pull_back(&c);
        Ok(Self {
            frame,
            functional,
            distance: d,
        })
    }

    pub fn for_face(polytope: &LatticePolytope<T>, face: &Face<T>) -> Result<Self> {
        if face.contains_origin {
            return Err(Error::FaceContainsOrigin);
        }
        Self::for_points(&polytope.face_vertices(face))
    }

    pub fn distance(&self) -> &T {
        &self.distance
    }

    /// Ambient covector representing `l` on `M`.
    pub fn functional(&self) -> &LatticeVector<T> {
        &self.functional
    }

    pub fn frame(&self) -> &SublatticeFrame<T> {
        &self.frame
    }

    /// `ht(v) = d - l(v)`, so `ht(0) = d` and `ht ≡ 0` on the face.
    pub fn height(&self, v: &LatticeVector<T>) -> Result<T> {
        if v.dim() != self.frame.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.frame.ambient_dim(),
                found: v.dim(),
            });
        }
        if !self.frame.contains(v) {
            return Err(Error::NotInSublattice);
        }
        Ok(self.distance.clone() - self.functional.dot(v))
    }

    /// `l(v)` without the membership check.
    pub fn level(&self, v: &LatticeVector<T>) -> T {
        self.functional.dot(v)
    }
}

pub fn lattice_distance<T: Scalar>(polytope: &LatticePolytope<T>, face: &Face<T>) -> Result<T> {
    Ok(HeightFunction::for_face(polytope, face)?.distance)
}

pub fn height<T: Scalar>(
    polytope: &LatticePolytope<T>,
    face: &Face<T>,
    v: &LatticeVector<T>,
) -> Result<T> {
    HeightFunction::for_face(polytope, face)?.height(v)
}

/// Minimal coordinate subspace containing a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateData {
    /// Zero-based coordinate indices.
    pub support: Vec<usize>,
    pub s: usize,
    /// `s - dim - 1`.
    pub m: usize,
}

pub fn coordinate_subspace_data<T: Scalar>(
    polytope: &LatticePolytope<T>,
    face: &Face<T>,
) -> CoordinateData {
    let n = polytope.ambient_dim();
    let support: Vec<usize> = (0..n)
        .filter(|&i| {
            face.vertex_indices
                .iter()
                .any(|&v| !polytope.vertices()[v][i].is_zero())
        })
        .collect();
    let s = support.len();
    assert!(
        s > face.dim,
        "face of dimension {} spans only {} coordinates",
        face.dim,
        s
    );
    CoordinateData {
        support,
        s,
        m: s - face.dim - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector<i64> {
        LatticeVector::from_ints(c)
    }

    #[test]
    fn distances() {
        let h = HeightFunction::for_points(&[v(&[2, 2])]).unwrap();
        assert_eq!(*h.distance(), 2);
        let e = HeightFunction::for_points(&[v(&[3, 0]), v(&[2, 2])]).unwrap();
        assert_eq!(*e.distance(), 6);
        assert_eq!(e.height(&v(&[2, 1])).unwrap(), 1);
        assert_eq!(e.height(&v(&[0, 0])).unwrap(), 6);
        assert_eq!(e.height(&v(&[3, 0])).unwrap(), 0);
        let f = HeightFunction::for_points(&[v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert_eq!(*f.distance(), 2);
    }

    #[test]
    fn errors() {
        assert_eq!(
            HeightFunction::for_points(&[v(&[1, 0]), v(&[-1, 0])]).unwrap_err(),
            Error::FaceContainsOrigin
        );
        let h = HeightFunction::for_points(&[v(&[2, 2])]).unwrap();
        assert_eq!(h.height(&v(&[1, 0])).unwrap_err(), Error::NotInSublattice);
    }

    #[test]
    fn coordinate_data() {
        let p = LatticePolytope::<i64>::from_int_points(&[&[0, 0], &[3, 0], &[0, 3], &[2, 2]]).unwrap();
        let find = |vs: &[usize]| {
            p.faces()
                .iter()
                .find(|f| f.vertex_indices == vs)
                .unwrap()
                .clone()
        };
        // vertices sorted: (0,0),(0,3),(2,2),(3,0)
        let q = find(&[2]);
        assert_eq!(coordinate_subspace_data(&p, &q), CoordinateData { support: vec![0, 1], s: 2, m: 1 });
        let a = find(&[3]);
        assert_eq!(coordinate_subspace_data(&p, &a), CoordinateData { support: vec![0], s: 1, m: 0 });
        let e = find(&[2, 3]);
        assert_eq!(coordinate_subspace_data(&p, &e).m, 0);
        assert_eq!(lattice_distance(&p, &e).unwrap(), 6);
        assert_eq!(lattice_distance(&p, &find(&[0])).unwrap_err(), Error::FaceContainsOrigin);
    }
}
