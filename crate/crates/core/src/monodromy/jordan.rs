use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ehrhart::RootOfUnity;
use crate::error::{Error, Result};
use crate::hodge::{EPolynomial, HodgeEngine};
use crate::lattice::LatticeVector;
use crate::monodromy::class::{class_from_engines, hodge_class_at_infinity, FaceCones};
use crate::monodromy::newton::NewtonAtInfinity;
use crate::monodromy::zeta::{char_poly_from_zeta, eigenvalue_multiplicity, zeta_at_infinity};
use crate::scalar::{binomial, sign, Scalar};

/// Largest possible Jordan block for `α` in `n` variables.
pub fn max_block_size(n: usize, alpha: RootOfUnity) -> usize {
    if alpha.is_one() {
        n - 1
    } else {
        n
    }
}

fn require_nontrivial(alpha: RootOfUnity) -> Result<()> {
    if alpha.is_one() {
        Err(Error::TrivialEigenvalue)
    } else {
        Ok(())
    }
}

fn small<T: Scalar>(v: T) -> Result<i64> {
    v.to_small().ok_or_else(|| Error::Overflow(v.to_string()))
}

/// Number of size-`n` blocks for `α != 1`: interior vertices at infinity
/// whose lattice distance is killed by `α`.
pub fn jordan_top_nontrivial<T: Scalar>(newton: &NewtonAtInfinity<T>, alpha: RootOfUnity) -> Result<u64> {
    require_nontrivial(alpha)?;
    Ok(newton
        .interior_vertices()
        .filter(|q| alpha.is_root_of(q.distance))
        .count() as u64)
}

/// Heights of the interior lattice points of the triangle spanned by the
/// origin and each interior edge, with the edge's lattice distance.
pub fn interior_edge_heights<T: Scalar>(newton: &NewtonAtInfinity<T>) -> Result<Vec<(u64, Vec<T>)>> {
    newton
        .interior_edges()
        .map(|edge| {
            let heights = edge
                .cone_polytope()
                .lattice_points(1, true)
                .iter()
                .map(|v| edge.height.height(v))
                .collect::<Result<Vec<T>>>()?;
            Ok((edge.distance, heights))
        })
        .collect()
}

fn subtop_from_heights<T: Scalar>(edges: &[(u64, Vec<T>)], alpha: RootOfUnity) -> u64 {
    let mut total = 0;
    for (e, heights) in edges {
        let Some(k) = alpha.exponent_mod(*e) else {
            continue;
        };
        let (lo, hi) = (T::from_count(k), T::from_count(e - k));
        for ht in heights {
            total += u64::from(*ht == lo) + u64::from(*ht == hi);
        }
    }
    total
}

/// Number of size-`(n-1)` blocks for `α != 1`, from the interior points of
/// the triangles spanned by the origin and interior edges.
pub fn jordan_subtop_nontrivial<T: Scalar>(
    newton: &NewtonAtInfinity<T>,
    alpha: RootOfUnity,
) -> Result<u64> {
    require_nontrivial(alpha)?;
    Ok(subtop_from_heights(&interior_edge_heights(newton)?, alpha))
}

/// Lattice points with all coordinates positive on faces at infinity of
/// dimension at most one.
pub fn positive_skeleton_points<T: Scalar>(newton: &NewtonAtInfinity<T>) -> BTreeSet<LatticeVector<T>> {
    let mut points = BTreeSet::new();
    for f in newton.faces_at_infinity().iter().filter(|f| f.dim() <= 1) {
        points.extend(
            f.polytope()
                .lattice_points(1, false)
                .into_iter()
                .filter(|v| v.iter().all(|c| c.is_positive())),
        );
    }
    points
}

/// Number of size-`(n-1)` blocks for `α = 1`.
pub fn jordan_top_eigenone<T: Scalar>(newton: &NewtonAtInfinity<T>) -> u64 {
    positive_skeleton_points(newton).len() as u64
}

/// Number of size-`(n-2)` blocks for `α = 1`; only meaningful for `n >= 3`.
pub fn jordan_subtop_eigenone<T: Scalar>(newton: &NewtonAtInfinity<T>) -> Result<u64> {
    let n = newton.n();
    if n < 3 {
        return Err(Error::NotApplicable(format!(
            "blocks of size n - 2 need n >= 3, got n = {n}"
        )));
    }
    let interior: u64 = newton
        .faces_at_infinity()
        .iter()
        .filter(|f| f.dim() == 2 && f.is_interior(n))
        .map(|f| f.polytope().count_lattice_points(1, true))
        .sum();
    Ok(2 * interior)
}

/// Number of blocks of size `>= k` from signed antidiagonal sums of the
/// Hodge class.
pub fn jordan_counts_from_class<T: Scalar>(
    class: &EPolynomial<T>,
    n: usize,
    alpha: RootOfUnity,
    k: usize,
) -> Result<i64> {
    if k == 0 {
        return Err(Error::OutOfRange("block size must be positive".into()));
    }
    let ranks: [i64; 2] = if alpha.is_one() {
        [n as i64 - 2 - k as i64, n as i64 - 1 - k as i64]
    } else {
        [(n + k) as i64 - 2, (n + k) as i64 - 1]
    };
    let mut acc = T::zero();
    for r in ranks {
        if r < 0 {
            continue;
        }
        acc = acc
            + class.antidiag_sum(r as usize, alpha).ok_or_else(|| {
                Error::Indeterminate(format!(
                    "antidiagonal {r} at eigenvalue {alpha} needs full Hodge tables"
                ))
            })?;
    }
    small(sign::<T>(n as i64 - 1) * acc)
}

pub fn jordan_counts_general<T: Scalar>(
    newton: &NewtonAtInfinity<T>,
    alpha: RootOfUnity,
    k: usize,
) -> Result<i64> {
    jordan_counts_from_class(&hodge_class_at_infinity(newton)?, newton.n(), alpha, k)
}

/// Antidiagonal sums `e(γ, α)_r`, `r = 0..=dim γ`, of every face at infinity.
/// Requires every face at infinity to be prime.
pub fn face_antidiagonals<T: Scalar>(
    newton: &NewtonAtInfinity<T>,
    alpha: RootOfUnity,
) -> Result<Vec<(usize, Vec<T>)>> {
    require_all_prime(newton)?;
    let cones = FaceCones::new(newton);
    antidiagonals_from_engines(&cones.engines()?, alpha)
}

fn require_all_prime<T: Scalar>(newton: &NewtonAtInfinity<T>) -> Result<()> {
    if newton.faces_at_infinity().iter().all(|f| f.polytope().is_prime()) {
        Ok(())
    } else {
        Err(Error::NotPrime)
    }
}

fn antidiagonals_from_engines<T: Scalar>(
    engines: &[(usize, HodgeEngine<'_, T>)],
    alpha: RootOfUnity,
) -> Result<Vec<(usize, Vec<T>)>> {
    require_nontrivial(alpha)?;
    engines
        .iter()
        .map(|(m, engine)| {
            let sums = (0..engine.dim())
                .map(|r| engine.antidiag_nontrivial(alpha, r))
                .collect::<Result<Vec<T>>>()?;
            Ok((*m, sums))
        })
        .collect()
}

/// Closed formula for the number of blocks of size `>= k`, `α != 1`, when
/// every face at infinity is prime.
pub fn jordan_closed_prime<T: Scalar>(
    newton: &NewtonAtInfinity<T>,
    alpha: RootOfUnity,
    k: usize,
) -> Result<i64> {
    closed_prime_from_antidiagonals(&face_antidiagonals(newton, alpha)?, newton.n(), k)
}

pub fn closed_prime_from_antidiagonals<T: Scalar>(
    faces: &[(usize, Vec<T>)],
    n: usize,
    k: usize,
) -> Result<i64> {
    if k == 0 {
        return Err(Error::OutOfRange("block size must be positive".into()));
    }
    let mut acc = T::zero();
    for (m, sums) in faces {
        for level in [n + k - 2, n + k - 1] {
            for (r, e) in sums.iter().enumerate() {
                if r > level || (level - r) % 2 != 0 {
                    continue;
                }
                let d = ((level - r) / 2) as i64;
                acc = acc + sign::<T>(d) * binomial::<T>(*m as i64, d) * e.clone();
            }
        }
    }
    small(sign::<T>(n as i64 - 1) * acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "status")]
pub enum Determinacy {
    Complete,
    /// Only the listed sizes are determined.
    Partial { sizes: BTreeSet<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanTable {
    pub n: usize,
    /// `(α, size) -> count`, zero counts omitted.
    pub blocks: BTreeMap<(RootOfUnity, usize), u64>,
    pub determinacy: BTreeMap<RootOfUnity, Determinacy>,
    pub multiplicities: BTreeMap<RootOfUnity, u64>,
}

impl JordanTable {
    pub fn count(&self, alpha: RootOfUnity, size: usize) -> u64 {
        self.blocks.get(&(alpha, size)).copied().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.determinacy.values().all(|d| *d == Determinacy::Complete)
    }

    /// `Σ size · count` over the determined sizes of `α`.
    pub fn dimension(&self, alpha: RootOfUnity) -> u64 {
        self.blocks
            .iter()
            .filter(|((a, _), _)| *a == alpha)
            .map(|((_, s), c)| *s as u64 * c)
            .sum()
    }

    pub fn total_dimension(&self) -> u64 {
        self.blocks.iter().map(|((_, s), c)| *s as u64 * c).sum()
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = RootOfUnity> + '_ {
        self.determinacy.keys().copied()
    }
}

/// Values of "number of blocks of size >= k" collected from several formulas.
struct AtLeast<'a> {
    alpha: RootOfUnity,
    values: BTreeMap<usize, (i64, &'a str)>,
}

impl<'a> AtLeast<'a> {
    fn record(&mut self, k: usize, value: i64, source: &'a str) -> Result<()> {
        if let Some((old, from)) = self.values.get(&k) {
            if *old != value {
                return Err(Error::Inconsistent(format!(
                    "blocks of size >= {k} at {}: {from} gives {old}, {source} gives {value}",
                    self.alpha
                )));
            }
            return Ok(());
        }
        self.values.insert(k, (value, source));
        Ok(())
    }
}

/// Jordan table of the top monodromy at infinity, combining every
/// applicable formula and cross-checking them.
pub fn assemble_jordan_table<T: Scalar>(newton: &NewtonAtInfinity<T>) -> Result<JordanTable> {
    let cones = FaceCones::new(newton);
    let engines = cones.engines()?;
    let class = class_from_engines(&engines)?;
    assemble_jordan_table_with(newton, &engines, &class)
}

/// As [`assemble_jordan_table`], reusing engines and the Hodge class built
/// from them.
pub fn assemble_jordan_table_with<T: Scalar>(
    newton: &NewtonAtInfinity<T>,
    engines: &[(usize, HodgeEngine<'_, T>)],
    class: &EPolynomial<T>,
) -> Result<JordanTable> {
    let n = newton.n();
    let cp = char_poly_from_zeta(&zeta_at_infinity(newton)?, n)?;
    let all_prime = require_all_prime(newton).is_ok();
    let edge_heights = interior_edge_heights(newton)?;
    let top_one = jordan_top_eigenone(newton) as i64;
    let subtop_one = if n >= 3 { Some(jordan_subtop_eigenone(newton)?) } else { None };
    let mut table = JordanTable {
        n,
        blocks: BTreeMap::new(),
        determinacy: BTreeMap::new(),
        multiplicities: BTreeMap::new(),
    };
    for alpha in cp.eigenvalues() {
        let bound = max_block_size(n, alpha);
        let multiplicity = eigenvalue_multiplicity(&cp, alpha)?;
        let mut at_least = AtLeast {
            alpha,
            values: BTreeMap::new(),
        };
        let mut exact: BTreeMap<usize, (u64, &str)> = BTreeMap::new();
        at_least.record(bound + 1, 0, "size bound")?;
        for k in 1..=bound + 1 {
            match jordan_counts_from_class(class, n, alpha, k) {
                Ok(v) => at_least.record(k, v, "Hodge class")?,
                Err(Error::Indeterminate(_)) => {}
                Err(e) => return Err(e),
            }
        }
        if alpha.is_one() {
            at_least.record(n - 1, top_one, "skeleton points")?;
            if let Some(c) = subtop_one {
                exact.insert(n - 2, (c, "interior 2-faces"));
            }
        } else {
            at_least.record(n, jordan_top_nontrivial(newton, alpha)? as i64, "interior vertices")?;
            exact.insert(n - 1, (subtop_from_heights(&edge_heights, alpha), "interior edges"));
            if all_prime {
                let faces = antidiagonals_from_engines(engines, alpha)?;
                for k in 1..=bound + 1 {
                    let v = closed_prime_from_antidiagonals(&faces, n, k)?;
                    at_least.record(k, v, "prime-face formula")?;
                }
            }
        }
        let mut sizes = BTreeSet::new();
        for s in 1..=bound {
            let diff = match (at_least.values.get(&s), at_least.values.get(&(s + 1))) {
                (Some((a, _)), Some((b, _))) => Some(a - b),
                _ => None,
            };
            let count = match (diff, exact.get(&s)) {
                (Some(d), Some((x, from))) if d != *x as i64 => {
                    return Err(Error::Inconsistent(format!(
                        "size-{s} blocks at {alpha}: differencing gives {d}, {from} gives {x}"
                    )))
                }
                (Some(d), _) => d,
                (None, Some((x, _))) => *x as i64,
                (None, None) => continue,
            };
            let count = u64::try_from(count).map_err(|_| {
                Error::Inconsistent(format!("negative count {count} of size-{s} blocks at {alpha}"))
            })?;
            sizes.insert(s);
            if count > 0 {
                table.blocks.insert((alpha, s), count);
            }
        }
        let determinacy = if sizes.len() == bound {
            let dim = table.dimension(alpha);
            if dim != multiplicity {
                return Err(Error::Inconsistent(format!(
                    "Jordan blocks at {alpha} span {dim}, multiplicity is {multiplicity}"
                )));
            }
            Determinacy::Complete
        } else {
            Determinacy::Partial { sizes }
        };
        table.determinacy.insert(alpha, determinacy);
        table.multiplicities.insert(alpha, multiplicity);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::SupportSpec;

    fn newton(points: &[&[i64]]) -> NewtonAtInfinity<i64> {
        let spec = SupportSpec::from_int_points(points[0].len(), points).unwrap();
        NewtonAtInfinity::new(spec).unwrap()
    }

    fn r(k: i64, d: u64) -> RootOfUnity {
        RootOfUnity::new(k, d)
    }

    #[test]
    fn three_term_curve_pipelines() {
        let g = newton(&[&[3, 0], &[0, 3], &[2, 2]]);
        assert_eq!(jordan_top_nontrivial(&g, r(1, 2)).unwrap(), 1);
        assert_eq!(jordan_top_nontrivial(&g, r(1, 6)).unwrap(), 0);
        assert_eq!(jordan_subtop_nontrivial(&g, r(1, 2)).unwrap(), 0);
        assert_eq!(jordan_subtop_nontrivial(&g, r(1, 6)).unwrap(), 2);
        assert_eq!(jordan_top_eigenone(&g), 1);
        assert!(matches!(jordan_subtop_eigenone(&g), Err(Error::NotApplicable(_))));
        assert_eq!(jordan_counts_general(&g, r(1, 2), 2).unwrap(), 1);
        assert_eq!(jordan_counts_general(&g, r(1, 2), 1).unwrap(), 1);
        assert_eq!(jordan_counts_general(&g, r(1, 6), 1).unwrap(), 2);
        assert_eq!(jordan_counts_general(&g, r(1, 6), 2).unwrap(), 0);
        assert_eq!(jordan_counts_general(&g, RootOfUnity::ONE, 1).unwrap(), 1);
        for k in 1..=3 {
            for a in [r(1, 2), r(1, 6), r(5, 6), r(1, 3)] {
                assert_eq!(
                    jordan_closed_prime(&g, a, k).unwrap(),
                    jordan_counts_general(&g, a, k).unwrap()
                );
            }
        }
        assert_eq!(jordan_closed_prime(&g, r(1, 2), 3).unwrap(), 0);
    }

    #[test]
    fn three_term_curve_table() {
        let t = assemble_jordan_table(&newton(&[&[3, 0], &[0, 3], &[2, 2]])).unwrap();
        assert!(t.is_complete());
        let expected = BTreeMap::from([
            ((RootOfUnity::ONE, 1), 1),
            ((r(1, 6), 1), 2),
            ((r(1, 2), 2), 1),
            ((r(5, 6), 1), 2),
        ]);
        assert_eq!(t.blocks, expected);
        assert_eq!(t.total_dimension(), 7);
    }

    #[test]
    fn small_tables() {
        let cusp = newton(&[&[2, 0], &[0, 3]]);
        assert_eq!(jordan_top_nontrivial(&cusp, r(1, 6)).unwrap(), 0);
        assert_eq!(jordan_subtop_nontrivial(&cusp, r(1, 6)).unwrap(), 1);
        assert_eq!(jordan_subtop_nontrivial(&cusp, r(1, 2)).unwrap(), 0);
        let t = assemble_jordan_table(&cusp).unwrap();
        assert_eq!(
            t.blocks,
            BTreeMap::from([((r(1, 6), 1), 1), ((r(5, 6), 1), 1)])
        );
        let t = assemble_jordan_table(&newton(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(t.blocks.is_empty() && t.determinacy.is_empty());
    }

    #[test]
    fn fermat_surface_subtop() {
        let g = newton(&[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4]]);
        assert_eq!(jordan_subtop_eigenone(&g).unwrap(), 6);
        let t = assemble_jordan_table(&g).unwrap();
        assert!(t.is_complete());
        assert_eq!(t.total_dimension(), 27);
    }
}
