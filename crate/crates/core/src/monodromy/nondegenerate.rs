use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::lattice::LatticeVector;
use crate::monodromy::newton::{FaceAtInfinity, NewtonAtInfinity};
use crate::scalar::{gcd_all, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NondegeneracyStatus {
    Verified,
    Assumed,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCheck {
    pub face_index: usize,
    pub dim: usize,
    pub status: NondegeneracyStatus,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NondegeneracyReport {
    pub faces: Vec<FaceCheck>,
}

impl NondegeneracyReport {
    /// Refuted if any face is, verified if every face is, assumed otherwise.
    pub fn overall(&self) -> NondegeneracyStatus {
        self.faces
            .iter()
            .map(|f| f.status)
            .max()
            .unwrap_or(NondegeneracyStatus::Verified)
    }
}

/// Exact check on faces at infinity of dimension at most one; higher faces
/// are reported as assumed.
pub fn check_nondegenerate_partial<T: Scalar>(newton: &NewtonAtInfinity<T>) -> NondegeneracyReport {
    let has_coefficients = newton.spec().coefficients().is_some();
    let faces = newton
        .faces_at_infinity()
        .iter()
        .map(|f| {
            let status = match (has_coefficients, f.dim()) {
                (false, _) => NondegeneracyStatus::Assumed,
                (true, 0) => NondegeneracyStatus::Verified,
                (true, 1) => {
                    if edge_restriction(newton, f).is_none_or(|g| is_squarefree(&g)) {
                        NondegeneracyStatus::Verified
                    } else {
                        NondegeneracyStatus::Refuted
                    }
                }
                _ => NondegeneracyStatus::Assumed,
            };
            FaceCheck {
                face_index: f.index,
                dim: f.dim(),
                status,
            }
        })
        .collect();
    NondegeneracyReport { faces }
}

/// `f_γ = x^a g(x^u)` for an edge from `a` in primitive direction `u`;
/// returns the coefficients of `g`.
fn edge_restriction<T: Scalar>(
    newton: &NewtonAtInfinity<T>,
    edge: &FaceAtInfinity<T>,
) -> Option<Vec<Ratio<T>>> {
    let a = &edge.vertices[0];
    let diff = &edge.vertices[1] - a;
    let len = gcd_all(diff.coords());
    let step = LatticeVector::new(diff.iter().map(|c| c.clone() / len.clone()).collect());
    let len = len.to_u64()?;
    let mut point = a.clone();
    let mut coeffs = Vec::new();
    for _ in 0..=len {
        coeffs.push(
            newton
                .spec()
                .coefficient(&point)
                .cloned()
                .unwrap_or_else(Ratio::zero),
        );
        point = &point + &step;
    }
    Some(coeffs)
}

fn trim<T: Scalar>(p: &mut Vec<Ratio<T>>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_rem<T: Scalar>(mut a: Vec<Ratio<T>>, b: &[Ratio<T>]) -> Vec<Ratio<T>> {
    let lead = b.last().expect("nonzero divisor").clone();
    trim(&mut a);
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let q = a.last().expect("nonempty").clone() / lead.clone();
        for (i, c) in b.iter().enumerate() {
            a[shift + i] = a[shift + i].clone() - q.clone() * c.clone();
        }
        trim(&mut a);
    }
    a
}

/// Squarefree over the rationals: `gcd(g, g')` is constant.
pub fn is_squarefree<T: Scalar>(g: &[Ratio<T>]) -> bool {
    let mut a = g.to_vec();
    trim(&mut a);
    if a.len() <= 2 {
        return true;
    }
    let mut b: Vec<Ratio<T>> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.clone() * Ratio::from_integer(T::from_count(i as u64)))
        .collect();
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(a, &b);
        a = b;
        b = r;
    }
    a.len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::support::SupportSpec;

    fn newton(terms: &[(&[i64], i64)]) -> NewtonAtInfinity<i64> {
        let spec = SupportSpec::with_coefficients(
            2,
            terms
                .iter()
                .map(|(v, c)| (LatticeVector::from_ints(v), Ratio::from_integer(*c))),
        )
        .unwrap();
        NewtonAtInfinity::new(spec).unwrap()
    }

    #[test]
    fn squarefree_polynomials() {
        let r = |v: &[i64]| v.iter().map(|&c| Ratio::from_integer(c)).collect::<Vec<_>>();
        assert!(is_squarefree(&r(&[1, 1])));
        assert!(!is_squarefree(&r(&[1, 2, 1])));
        assert!(is_squarefree(&r(&[-1, 0, 1])));
        assert!(!is_squarefree(&r(&[0, 0, 1, 1])));
    }

    #[test]
    fn curve_edges_verified() {
        let g = newton(&[(&[3, 0], 1), (&[0, 3], 1), (&[2, 2], 1)]);
        let report = check_nondegenerate_partial(&g);
        assert_eq!(report.overall(), NondegeneracyStatus::Verified);
    }

    #[test]
    fn perfect_square_refuted() {
        let g = newton(&[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        assert_eq!(check_nondegenerate_partial(&g).overall(), NondegeneracyStatus::Refuted);
        let h = newton(&[(&[2, 0], 1), (&[1, 1], 3), (&[0, 2], 1)]);
        assert_eq!(check_nondegenerate_partial(&h).overall(), NondegeneracyStatus::Verified);
    }

    #[test]
    fn generic_is_assumed() {
        let spec = SupportSpec::<i64>::from_int_points(2, &[&[2, 0], &[0, 3]]).unwrap();
        let g = NewtonAtInfinity::new(spec).unwrap();
        assert_eq!(check_nondegenerate_partial(&g).overall(), NondegeneracyStatus::Assumed);
    }
}
