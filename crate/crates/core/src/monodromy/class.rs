use rayon::prelude::*;

use crate::ehrhart::TwistedCharacter;
use crate::error::Result;
use crate::hodge::{EPolynomial, HodgeEngine};
use crate::lattice::LatticePolytope;
use crate::monodromy::newton::{FaceAtInfinity, NewtonAtInfinity};
use crate::scalar::Scalar;

/// Cone polytope, height character and twist exponent of every face at
/// infinity, built once and shared by the Hodge-class consumers.
#[derive(Clone, Debug)]
pub struct FaceCones<T> {
    cones: Vec<(usize, LatticePolytope<T>, TwistedCharacter<T>)>,
}

impl<T: Scalar> FaceCones<T> {
    pub fn new(newton: &NewtonAtInfinity<T>) -> Self {
        Self {
            cones: newton
                .faces_at_infinity()
                .iter()
                .map(|f| (f.coords.m, f.cone_polytope(), f.character()))
                .collect(),
        }
    }

    /// Hodge engines paired with the twist exponent, in face order.
    pub fn engines(&self) -> Result<Vec<(usize, HodgeEngine<'_, T>)>> {
        self.cones
            .par_iter()
            .map(|(m, delta, chi)| Ok((*m, HodgeEngine::new(delta, chi)?)))
            .collect()
    }
}

/// Sum of the twisted face classes.
pub fn class_from_engines<T: Scalar>(engines: &[(usize, HodgeEngine<'_, T>)]) -> Result<EPolynomial<T>> {
    let parts: Vec<EPolynomial<T>> = engines
        .par_iter()
        .map(|(m, e)| Ok(e.hypersurface_class()?.lefschetz_twist(*m)))
        .collect::<Result<_>>()?;
    Ok(parts
        .iter()
        .fold(EPolynomial::new(), |acc, part| acc.add(part)))
}

/// Class of the toric hypersurface attached to one face at infinity, twisted
/// by `(1 - L)^{m_γ}`.
pub fn face_contribution<T: Scalar>(face: &FaceAtInfinity<T>) -> Result<EPolynomial<T>> {
    let delta = face.cone_polytope();
    let chi = face.character();
    let engine = HodgeEngine::new(&delta, &chi)?;
    Ok(engine.hypersurface_class()?.lefschetz_twist(face.coords.m))
}

/// Hodge class of the cohomology of the generic fibre, summed over all faces
/// at infinity including the axis vertices. Faces are processed in parallel
/// and summed in a fixed order.
pub fn hodge_class_at_infinity<T: Scalar>(newton: &NewtonAtInfinity<T>) -> Result<EPolynomial<T>> {
    class_from_engines(&FaceCones::new(newton).engines()?)
}

/// Cell-level weight symmetry of the Hodge class: `e^{p,q}_α = e^{w-q,w-p}_α`
/// with `w = n - 1` for `α != 1` and `w = n - 2` for `α = 1` (after removing
/// the unit at `(n-1, n-1)`), together with vanishing outside that square.
/// Undetermined cells are skipped.
pub fn weight_symmetric<T: Scalar>(class: &EPolynomial<T>, n: usize) -> bool {
    let extent = class.extent().max(n);
    class.iter().all(|(alpha, grid)| {
        let unit = |p: usize, q: usize| alpha.is_one() && p == n - 1 && q == n - 1;
        let w = if alpha.is_one() { n as i64 - 2 } else { n as i64 - 1 };
        (0..extent).all(|p| {
            (0..extent).all(|q| {
                let Some(v) = grid.cell(p, q) else {
                    return true;
                };
                if unit(p, q) {
                    return v.is_one();
                }
                let (mp, mq) = (w - q as i64, w - p as i64);
                if mp < 0 || mq < 0 {
                    return v.is_zero();
                }
                grid.cell(mp as usize, mq as usize).is_none_or(|m| m == v)
            })
        })
    })
}

/// Antidiagonal form of [`weight_symmetric`]: `A(r) = A(2w - r)`.
pub fn antidiagonal_symmetric<T: Scalar>(class: &EPolynomial<T>, n: usize) -> bool {
    class.iter().all(|(alpha, grid)| {
        let w = if alpha.is_one() { n - 2 } else { n - 1 };
        (0..=2 * w).all(|r| match (grid.antidiag_sum(r), grid.antidiag_sum(2 * w - r)) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }) && (2 * w + 1..=2 * (n - 1)).all(|r| {
            let unit = if alpha.is_one() && r == 2 * (n - 1) { T::one() } else { T::zero() };
            grid.antidiag_sum(r).is_none_or(|a| a == unit)
        })
    })
}
