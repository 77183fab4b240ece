//! Exact integer linear algebra and lattice polytope geometry.

pub mod frame;
pub mod height;
pub mod matrix;
pub mod points;
pub mod polytope;
pub mod primality;
pub mod vector;
pub mod volume;

pub use frame::SublatticeFrame;
pub use height::{coordinate_subspace_data, height, lattice_distance, CoordinateData, HeightFunction};
pub use matrix::{integer_kernel, smith_normal_form, IntMatrix, SmithForm};
pub use polytope::{Face, Facet, LatticePolytope};
pub use vector::LatticeVector;
pub use volume::PullOrder;
