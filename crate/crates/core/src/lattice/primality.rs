use crate::lattice::polytope::LatticePolytope;
use crate::scalar::Scalar;

impl<T: Scalar> LatticePolytope<T> {
    /// Every vertex cone is simplicial: each vertex lies on exactly `dim` edges.
    pub fn is_prime(&self) -> bool {
        let d = self.dim();
        let edges: Vec<_> = self.faces_of_dim(1).collect();
        let prime = (0..self.vertices().len())
            .all(|v| edges.iter().filter(|e| e.contains_vertex(v)).count() == d);
        debug_assert!(!prime || self.is_pseudo_prime());
        prime
    }

    /// Every edge lies in exactly `dim - 1` two-dimensional faces.
    pub fn is_pseudo_prime(&self) -> bool {
        let d = self.dim();
        if d < 2 {
            return true;
        }
        let twos: Vec<_> = self.faces_of_dim(2).collect();
        self.faces_of_dim(1)
            .all(|e| twos.iter().filter(|g| e.is_subface_of(g)).count() == d - 1)
    }
}
