use crate::ehrhart::TwistedCharacter;
use crate::error::{Error, Result};
use crate::lattice::{
    coordinate_subspace_data, CoordinateData, Face, HeightFunction, IntMatrix, LatticePolytope,
    LatticeVector,
};
use crate::monodromy::support::SupportSpec;
use crate::scalar::Scalar;

/// A face of the Newton polyhedron at infinity that misses the origin.
#[derive(Clone, Debug)]
pub struct FaceAtInfinity<T> {
    /// Index into the faces of the Newton polyhedron.
    pub index: usize,
    pub face: Face<T>,
    pub vertices: Vec<LatticeVector<T>>,
    pub coords: CoordinateData,
    pub height: HeightFunction<T>,
    /// Lattice distance from the origin.
    pub distance: u64,
}

impl<T: Scalar> FaceAtInfinity<T> {
    pub fn dim(&self) -> usize {
        self.face.dim
    }

    /// Relative interior lies in the open positive orthant.
    pub fn is_interior(&self, n: usize) -> bool {
        self.coords.s == n
    }

    pub fn polytope(&self) -> LatticePolytope<T> {
        LatticePolytope::convex_hull(&self.vertices).expect("nonempty face")
    }

    /// Convex hull of the origin and the face.
    pub fn cone_polytope(&self) -> LatticePolytope<T> {
        let mut pts = vec![LatticeVector::zero(self.vertices[0].dim())];
        pts.extend(self.vertices.iter().cloned());
        LatticePolytope::convex_hull(&pts).expect("nonempty face")
    }

    /// Heights reduced mod the lattice distance.
    pub fn character(&self) -> TwistedCharacter<T> {
        TwistedCharacter::from_height(&self.height).expect("distance fits in u64")
    }
}

/// Newton polyhedron at infinity with its faces at infinity.
#[derive(Clone, Debug)]
pub struct NewtonAtInfinity<T: Scalar> {
    spec: SupportSpec<T>,
    polytope: LatticePolytope<T>,
    faces_at_infinity: Vec<FaceAtInfinity<T>>,
}

pub fn build_gamma_infinity<T: Scalar>(spec: &SupportSpec<T>) -> Result<NewtonAtInfinity<T>> {
    NewtonAtInfinity::new(spec.clone())
}

impl<T: Scalar> NewtonAtInfinity<T> {
    pub fn new(spec: SupportSpec<T>) -> Result<Self> {
        let n = spec.n();
        let mut pts = vec![LatticeVector::zero(n)];
        pts.extend(spec.support().iter().cloned());
        let polytope = LatticePolytope::convex_hull(&pts)?;
        if polytope.vertex_index(&LatticeVector::zero(n)).is_none() {
            return Err(Error::OriginNotVertex);
        }
        let mut faces_at_infinity = Vec::new();
        for (index, face) in polytope.faces().iter().enumerate() {
            if face.contains_origin {
                continue;
            }
            let height = HeightFunction::for_face(&polytope, face)?;
            let distance = height
                .distance()
                .to_u64()
                .ok_or_else(|| Error::Overflow(format!("lattice distance {}", height.distance())))?;
            faces_at_infinity.push(FaceAtInfinity {
                index,
                face: face.clone(),
                vertices: polytope.face_vertices(face),
                coords: coordinate_subspace_data(&polytope, face),
                height,
                distance,
            });
        }
        Ok(Self {
            spec,
            polytope,
            faces_at_infinity,
        })
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn spec(&self) -> &SupportSpec<T> {
        &self.spec
    }

    pub fn polytope(&self) -> &LatticePolytope<T> {
        &self.polytope
    }

    pub fn faces_at_infinity(&self) -> &[FaceAtInfinity<T>] {
        &self.faces_at_infinity
    }

    /// Vertices at infinity in the open orthant.
    pub fn interior_vertices(&self) -> impl Iterator<Item = &FaceAtInfinity<T>> {
        let n = self.n();
        self.faces_at_infinity
            .iter()
            .filter(move |f| f.dim() == 0 && f.is_interior(n))
    }

    /// Edges at infinity whose relative interior is in the open orthant.
    pub fn interior_edges(&self) -> impl Iterator<Item = &FaceAtInfinity<T>> {
        let n = self.n();
        self.faces_at_infinity
            .iter()
            .filter(move |f| f.dim() == 1 && f.is_interior(n))
    }

    /// `dim(Γ ∩ R^S) = #S` for every nonempty coordinate subset `S`.
    pub fn is_convenient(&self) -> bool {
        let n = self.n();
        assert!(n < 32, "too many variables for subset enumeration");
        (1u32..(1 << n)).all(|mask| {
            let inside = |v: &&LatticeVector<T>| {
                (0..n).all(|i| mask & (1 << i) != 0 || v[i].is_zero())
            };
            let rows: Vec<Vec<T>> = self
                .spec
                .support()
                .iter()
                .filter(inside)
                .map(|v| v.coords().to_vec())
                .collect();
            IntMatrix::from_rows(&rows, n).rank() == mask.count_ones() as usize
        })
    }

    pub fn require_convenient(&self) -> Result<()> {
        if self.is_convenient() {
            Ok(())
        } else {
            Err(Error::NotConvenient)
        }
    }
}

pub fn check_convenient<T: Scalar>(newton: &NewtonAtInfinity<T>) -> bool {
    newton.is_convenient()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn newton(points: &[&[i64]]) -> NewtonAtInfinity<i64> {
        let n = points[0].len();
        NewtonAtInfinity::new(SupportSpec::from_int_points(n, points).unwrap()).unwrap()
    }

    #[test]
    fn three_term_curve() {
        let g = newton(&[&[3, 0], &[0, 3], &[2, 2]]);
        assert_eq!(g.polytope().vertices().len(), 4);
        let iv: Vec<_> = g.interior_vertices().collect();
        assert_eq!(iv.len(), 1);
        assert_eq!(iv[0].vertices[0], LatticeVector::from_ints(&[2, 2]));
        assert_eq!(iv[0].distance, 2);
        let edges: Vec<_> = g.interior_edges().map(|e| e.distance).collect();
        assert_eq!(edges, vec![6, 6]);
        assert!(g.is_convenient());
        assert_eq!(g.faces_at_infinity().len(), 5);
    }

    #[test]
    fn two_term_curve_faces() {
        let g = newton(&[&[2, 0], &[0, 3]]);
        assert_eq!(g.interior_vertices().count(), 0);
        // the edge touches the axes only at its endpoints
        let edges: Vec<_> = g.interior_edges().map(|e| e.distance).collect();
        assert_eq!(edges, vec![6]);
        assert_eq!(newton(&[&[1, 0], &[0, 1]]).polytope().normalized_volume(), 1);
    }

    #[test]
    fn convenience() {
        assert!(!newton(&[&[1, 1]]).is_convenient());
        assert!(!newton(&[&[2, 0]]).is_convenient());
        assert!(newton(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1], &[1, 1, 1]]).is_convenient());
        assert_eq!(newton(&[&[2, 0]]).require_convenient().unwrap_err(), Error::NotConvenient);
    }
}
