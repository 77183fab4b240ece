//! Normalized volume via pulling triangulations.

use std::collections::HashMap;

use crate::lattice::matrix::IntMatrix;
use crate::lattice::polytope::LatticePolytope;
use crate::scalar::Scalar;

/// Which vertex a pulling triangulation cones from at every step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PullOrder {
    FirstVertex,
    LastVertex,
}

impl<T: Scalar> LatticePolytope<T> {
    /// Simplices (as vertex index lists of length `dim + 1`) of a pulling
    /// triangulation. Every face of the polytope is triangulated compatibly.
    pub fn pulling_triangulation(&self, order: PullOrder) -> Vec<Vec<usize>> {
        let faces = self.faces();
        let top = faces.len() - 1;
        let mut memo = HashMap::new();
        self.triangulate_face(top, order, &mut memo)
    }

    fn triangulate_face(
        &self,
        index: usize,
        order: PullOrder,
        memo: &mut HashMap<usize, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(done) = memo.get(&index) {
            return done.clone();
        }
        let faces = self.faces();
        let face = &faces[index];
        let out = if face.dim == 0 {
            vec![vec![face.vertex_indices[0]]]
        } else {
            let apex = match order {
                PullOrder::FirstVertex => face.vertex_indices[0],
                PullOrder::LastVertex => *face.vertex_indices.last().expect("nonempty"),
            };
            let mut simplices = Vec::new();
            for (j, sub) in faces.iter().enumerate() {
                if sub.dim + 1 == face.dim && sub.is_subface_of(face) && !sub.contains_vertex(apex) {
                    for mut s in self.triangulate_face(j, order, memo) {
                        s.insert(0, apex);
                        simplices.push(s);
                    }
                }
            }
            simplices
        };
        memo.insert(index, out.clone());
        out
    }

    /// `|det|` of the edge vectors of a simplex, in the lattice of the affine span.
    pub fn simplex_volume(&self, simplex: &[usize]) -> T {
        let local = self.local_vertices();
        let r = self.dim();
        let rows: Vec<Vec<T>> = simplex[1..]
            .iter()
            .map(|&i| {
                local[i]
                    .iter()
                    .zip(&local[simplex[0]])
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(&rows, r).determinant().abs()
    }

    /// Normalized volume `dim! * vol` with respect to the lattice of the affine span.
    pub fn normalized_volume_with(&self, order: PullOrder) -> T {
        if self.dim() == 0 {
            return T::one();
        }
        self.pulling_triangulation(order)
            .iter()
            .fold(T::zero(), |acc, s| acc + self.simplex_volume(s))
    }

    pub fn normalized_volume(&self) -> T {
        self.normalized_volume_with(PullOrder::FirstVertex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(points: &[&[i64]]) -> LatticePolytope<i64> {
        LatticePolytope::from_int_points(points).unwrap()
    }

    #[test]
    fn small_volumes() {
        assert_eq!(poly(&[&[2, 2]]).normalized_volume(), 1);
        assert_eq!(poly(&[&[2, 0], &[0, 2]]).normalized_volume(), 2);
        assert_eq!(poly(&[&[3, 0], &[2, 2]]).normalized_volume(), 1);
        assert_eq!(poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).normalized_volume(), 2);
    }

    #[test]
    fn triangulations_agree_on_cube() {
        let mut pts = Vec::new();
        for m in 0..8i64 {
            pts.push(vec![m & 1, (m >> 1) & 1, (m >> 2) & 1]);
        }
        let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
        let cube = poly(&refs);
        assert_eq!(cube.normalized_volume_with(PullOrder::FirstVertex), 6);
        assert_eq!(cube.normalized_volume_with(PullOrder::LastVertex), 6);
    }
}
