//! Integral polytopes: convex hull, facets and the face lattice.

use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lattice::frame::SublatticeFrame;
use crate::lattice::matrix::{cofactor_normal, IntMatrix};
use crate::lattice::vector::LatticeVector;
use crate::scalar::{dot, make_primitive, Scalar};

/// Facet inequality `normal · y <= offset` in frame coordinates `y` of
/// `x - base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet<T> {
    pub normal: Vec<T>,
    pub offset: T,
    pub vertices: Vec<usize>,
}

/// A nonempty face, described by the indices of its vertices in the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face<T> {
    pub dim: usize,
    pub vertex_indices: Vec<usize>,
    /// Primitive ambient covector maximized over the parent exactly on this
    /// face (zero for the polytope itself).
    pub functional: LatticeVector<T>,
    pub value: T,
    pub contains_origin: bool,
}

impl<T: Scalar> Face<T> {
    pub fn is_subface_of(&self, other: &Face<T>) -> bool {
        self.vertex_indices
            .iter()
            .all(|v| other.vertex_indices.binary_search(v).is_ok())
    }

    pub fn contains_vertex(&self, index: usize) -> bool {
        self.vertex_indices.binary_search(&index).is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct LatticePolytope<T> {
    ambient_dim: usize,
    vertices: Vec<LatticeVector<T>>,
    frame: SublatticeFrame<T>,
    local: Vec<Vec<T>>,
    facets: Vec<Facet<T>>,
    faces: OnceLock<Vec<Face<T>>>,
}

impl<T: Scalar> LatticePolytope<T> {
    /// Convex hull of a finite point set; vertices come out in lexicographic order.
    pub fn convex_hull(points: &[LatticeVector<T>]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let n = first.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        let pts: Vec<LatticeVector<T>> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let base = pts[0].clone();
        let diffs: Vec<_> = pts.iter().skip(1).map(|p| p - &base).collect();
        let frame = SublatticeFrame::spanned_by(n, &diffs);
        let local: Vec<Vec<T>> = pts
            .iter()
            .map(|p| frame.coordinates(&(p - &base)).expect("point lies in its own span"))
            .collect();
        let r = frame.rank();

        let normals = facet_normals(&local, r);
        let is_vertex: Vec<bool> = (0..pts.len())
            .map(|i| {
                let tight: Vec<Vec<T>> = normals
                    .iter()
                    .filter(|(c, b)| dot(c, &local[i]) == *b)
                    .map(|(c, _)| c.clone())
                    .collect();
                r == 0 || (!tight.is_empty() && IntMatrix::from_rows(&tight, r).rank() == r)
            })
            .collect();
        let keep: Vec<usize> = (0..pts.len()).filter(|&i| is_vertex[i]).collect();
        let vertices: Vec<_> = keep.iter().map(|&i| pts[i].clone()).collect();
        let local: Vec<Vec<T>> = keep.iter().map(|&i| local[i].clone()).collect();
        let facets = normals
            .into_iter()
            .map(|(normal, offset)| {
                let vs = (0..local.len())
                    .filter(|&i| dot(&normal, &local[i]) == offset)
                    .collect();
                Facet {
                    normal,
                    offset,
                    vertices: vs,
                }
            })
            .collect();
        Ok(Self {
            ambient_dim: n,
            vertices,
            frame,
            local,
            facets,
            faces: OnceLock::new(),
        })
    }

    pub fn from_int_points(points: &[&[i64]]) -> Result<Self> {
        let pts: Vec<_> = points.iter().map(|p| LatticeVector::from_ints(p)).collect();
        Self::convex_hull(&pts)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Intrinsic dimension.
    pub fn dim(&self) -> usize {
        self.frame.rank()
    }

    pub fn vertices(&self) -> &[LatticeVector<T>] {
        &self.vertices
    }

    /// Lexicographically smallest vertex, origin of the local frame.
    pub fn base(&self) -> &LatticeVector<T> {
        &self.vertices[0]
    }

    /// Lattice frame of the affine span, relative to [`Self::base`].
    pub fn frame(&self) -> &SublatticeFrame<T> {
        &self.frame
    }

    pub fn facets(&self) -> &[Facet<T>] {
        &self.facets
    }

    pub fn local_vertices(&self) -> &[Vec<T>] {
        &self.local
    }

    pub fn vertex_index(&self, v: &LatticeVector<T>) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Frame coordinates of `v - base`, or `None` when `v` is off the affine span.
    pub fn local_coordinates(&self, v: &LatticeVector<T>) -> Option<Vec<T>> {
        if v.dim() != self.ambient_dim {
            return None;
        }
        self.frame.coordinates(&(v - self.base())).ok()
    }

    pub fn contains(&self, v: &LatticeVector<T>) -> bool {
        self.local_coordinates(v).is_some_and(|y| {
            self.facets
                .iter()
                .all(|f| dot(&f.normal, &y) <= f.offset)
        })
    }

    pub fn relative_interior_contains(&self, v: &LatticeVector<T>) -> bool {
        self.local_coordinates(v).is_some_and(|y| {
            self.facets
                .iter()
                .all(|f| dot(&f.normal, &y) < f.offset)
        })
    }

    /// All nonempty faces, sorted by dimension and then by vertex indices.
    /// The last entry is the polytope itself.
    pub fn faces(&self) -> &[Face<T>] {
        self.faces.get_or_init(|| self.compute_faces())
    }

    pub fn faces_of_dim(&self, dim: usize) -> impl Iterator<Item = &Face<T>> {
        self.faces().iter().filter(move |f| f.dim == dim)
    }

    /// Number of faces in each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim() + 1];
        for f in self.faces() {
            out[f.dim] += 1;
        }
        out
    }

    pub fn face_vertices(&self, face: &Face<T>) -> Vec<LatticeVector<T>> {
        face.vertex_indices
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect()
    }

    /// The face as a polytope in its own right.
    pub fn face_polytope(&self, face: &Face<T>) -> LatticePolytope<T> {
        LatticePolytope::convex_hull(&self.face_vertices(face)).expect("faces are nonempty")
    }

    pub fn whole(&self) -> &Face<T> {
        self.faces().last().expect("face lattice contains the polytope")
    }

    fn compute_faces(&self) -> Vec<Face<T>> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(all.clone());
        let mut work: Vec<Vec<usize>> = Vec::new();
        for f in &self.facets {
            if sets.insert(f.vertices.clone()) {
                work.push(f.vertices.clone());
            }
        }
        while let Some(face) = work.pop() {
            for f in &self.facets {
                let meet: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|v| f.vertices.binary_search(v).is_ok())
                    .collect();
                if !meet.is_empty() && sets.insert(meet.clone()) {
                    work.push(meet);
                }
            }
        }
        let origin = LatticeVector::zero(self.ambient_dim);
        let has_origin = self.contains(&origin);
        let mut faces: Vec<Face<T>> = sets
            .into_iter()
            .map(|vs| {
                let dim = self.affine_rank(&vs);
                let mut local = vec![T::zero(); self.dim()];
                for f in &self.facets {
                    if vs.iter().all(|v| f.vertices.binary_search(v).is_ok()) {
                        for (a, b) in local.iter_mut().zip(&f.normal) {
                            *a = a.clone() + b.clone();
                        }
                    }
                }
                let mut functional = self.frame.pull_back(&local);
                make_primitive(&mut functional.0);
                let value = functional.dot(&self.vertices[vs[0]]);
                let contains_origin = has_origin && value.is_zero();
                Face {
                    dim,
                    vertex_indices: vs,
                    functional,
                    value,
                    contains_origin,
                }
            })
            .collect();
        faces.sort_by(|a, b| {
            (a.dim, &a.vertex_indices).cmp(&(b.dim, &b.vertex_indices))
        });
        faces
    }

    fn affine_rank(&self, vs: &[usize]) -> usize {
        if vs.len() <= 1 || self.dim() == 0 {
            return 0;
        }
        let rows: Vec<Vec<T>> = vs[1..]
            .iter()
            .map(|&i| {
                self.local[i]
                    .iter()
                    .zip(&self.local[vs[0]])
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(&rows, self.dim()).rank()
    }
}

/// Primitive facet inequalities of the hull of full-dimensional points in `Z^r`.
fn facet_normals<T: Scalar>(local: &[Vec<T>], r: usize) -> Vec<(Vec<T>, T)> {
    if r == 0 {
        return Vec::new();
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for subset in (0..local.len()).combinations(r) {
        let p0 = &local[subset[0]];
        let rows: Vec<Vec<T>> = subset[1..]
            .iter()
            .map(|&i| {
                local[i]
                    .iter()
                    .zip(p0)
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect()
            })
            .collect();
        let mut normal = if r == 1 {
            vec![T::one()]
        } else {
            cofactor_normal(&rows, r)
        };
        if normal.iter().all(|x| x.is_zero()) {
            continue;
        }
        make_primitive(&mut normal);
        let own = dot(&normal, p0);
        let values: Vec<T> = local.iter().map(|p| dot(&normal, p)).collect();
        let max = values.iter().max().expect("nonempty").clone();
        let min = values.iter().min().expect("nonempty").clone();
        if min == own {
            let neg: Vec<T> = normal.iter().map(|x| -x.clone()).collect();
            if seen.insert(neg.clone()) {
                out.push((neg, -own.clone()));
            }
        }
        if max == own && seen.insert(normal.clone()) {
            out.push((normal, own));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(points: &[&[i64]]) -> LatticePolytope<i64> {
        LatticePolytope::from_int_points(points).unwrap()
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let p = poly(&[&[0, 0], &[3, 0], &[0, 3], &[2, 2], &[1, 1]]);
        let vs: Vec<_> = p.vertices().iter().map(|v| v.0.clone()).collect();
        assert_eq!(vs, vec![vec![0, 0], vec![0, 3], vec![2, 2], vec![3, 0]]);
        let seg = poly(&[&[0, 0], &[2, 0], &[1, 0]]);
        assert_eq!(seg.vertices().len(), 2);
        assert_eq!(seg.dim(), 1);
        let pt = poly(&[&[0, 0]]);
        assert_eq!(pt.dim(), 0);
        assert_eq!(pt.vertices().len(), 1);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let pts = vec![LatticeVector::<i64>::from_ints(&[0, 0]), LatticeVector::from_ints(&[1])];
        assert!(matches!(
            LatticePolytope::convex_hull(&pts),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            LatticePolytope::<i64>::convex_hull(&[]).unwrap_err(),
            Error::EmptyPointSet
        );
    }

    #[test]
    fn square_and_segment_face_counts() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(sq.f_vector(), vec![4, 4, 1]);
        let seg = poly(&[&[0, 0], &[2, 2]]);
        assert_eq!(seg.f_vector(), vec![2, 1]);
    }

    #[test]
    fn faces_at_infinity_of_newton_polygon() {
        let p = poly(&[&[0, 0], &[3, 0], &[0, 3], &[2, 2]]);
        assert_eq!(p.f_vector(), vec![4, 4, 1]);
        let at_infinity: Vec<_> = p.faces().iter().filter(|f| !f.contains_origin).collect();
        // vertices (3,0), (0,3), (2,2) and the two edges through (2,2)
        assert_eq!(at_infinity.len(), 5);
        assert_eq!(at_infinity.iter().filter(|f| f.dim == 1).count(), 2);
    }

    #[test]
    fn supporting_functionals_cut_out_faces() {
        let p = poly(&[&[0, 0, 0], &[2, 0, 0], &[0, 3, 0], &[0, 0, 1], &[1, 1, 1]]);
        for f in p.faces() {
            assert!(crate::scalar::gcd_all(&f.functional.0) <= 1);
            for (i, v) in p.vertices().iter().enumerate() {
                let val = f.functional.dot(v);
                assert!(val <= f.value);
                assert_eq!(val == f.value, f.contains_vertex(i));
            }
        }
    }

    #[test]
    fn lower_dimensional_polytope_in_space() {
        let p = poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.f_vector(), vec![3, 3, 1]);
        assert!(p.contains(&LatticeVector::from_ints(&[1, 0, 0])));
        assert!(!p.contains(&LatticeVector::from_ints(&[0, 0, 0])));
        assert!(p.faces().iter().all(|f| !f.contains_origin));
    }
}
