//! Equivariant Hodge-Deligne numbers of twisted non-degenerate toric
//! hypersurfaces, and E-polynomial arithmetic.

use std::collections::{BTreeMap, BTreeSet};

use crate::ehrhart::{
    interior_twisted, phi_psi_coefficients, skeleton_count, EhrhartTwistData, RootOfUnity,
    TwistedCharacter,
};
use crate::error::{Error, Result};
use crate::lattice::LatticePolytope;
use crate::scalar::{binomial, sign, Scalar};

/// Square table of `e^{p,q}` for one eigenvalue, `0 <= p, q < extent`.
/// Cells outside the extent are zero; `None` marks an undetermined cell.
/// Row sums are always known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeGrid<T> {
    extent: usize,
    cells: Vec<Option<T>>,
    rows: Vec<T>,
}

impl<T: Scalar> HodgeGrid<T> {
    pub fn zero(extent: usize) -> Self {
        Self {
            extent,
            cells: vec![Some(T::zero()); extent * extent],
            rows: vec![T::zero(); extent],
        }
    }

    /// Fully known table; `value(p, q)` is called for every cell.
    pub fn full(extent: usize, mut value: impl FnMut(usize, usize) -> T) -> Self {
        let mut g = Self::zero(extent);
        for p in 0..extent {
            for q in 0..extent {
                let v = value(p, q);
                g.rows[p] = g.rows[p].clone() + v.clone();
                g.cells[p * extent + q] = Some(v);
            }
        }
        g
    }

    /// Row sums plus whichever cells are known.
    pub fn partial(rows: Vec<T>, known: &BTreeMap<(usize, usize), T>) -> Self {
        let extent = rows.len();
        let mut cells = vec![None; extent * extent];
        for (&(p, q), v) in known {
            if p < extent && q < extent {
                cells[p * extent + q] = Some(v.clone());
            }
        }
        Self {
            extent,
            cells,
            rows,
        }
    }

    pub fn extent(&self) -> usize {
        self.extent
    }

    pub fn cell(&self, p: usize, q: usize) -> Option<T> {
        if p >= self.extent || q >= self.extent {
            return Some(T::zero());
        }
        self.cells[p * self.extent + q].clone()
    }

    pub fn row_sum(&self, p: usize) -> T {
        self.rows.get(p).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// `Σ_{p+q=r} e^{p,q}`, if every term is known.
    pub fn antidiag_sum(&self, r: usize) -> Option<T> {
        let mut acc = T::zero();
        for p in 0..=r {
            acc = acc + self.cell(p, r - p)?;
        }
        Some(acc)
    }

    fn resized(&self, extent: usize) -> Self {
        let mut g = Self {
            extent,
            cells: vec![Some(T::zero()); extent * extent],
            rows: vec![T::zero(); extent],
        };
        for p in 0..extent {
            g.rows[p] = self.row_sum(p);
            for q in 0..extent {
                g.cells[p * extent + q] = self.cell(p, q);
            }
        }
        g
    }

    pub fn add(&self, other: &Self) -> Self {
        let extent = self.extent.max(other.extent);
        let a = self.resized(extent);
        let b = other.resized(extent);
        Self {
            extent,
            cells: a
                .cells
                .into_iter()
                .zip(b.cells)
                .map(|(x, y)| Some(x? + y?))
                .collect(),
            rows: a.rows.into_iter().zip(b.rows).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            extent: self.extent,
            cells: self
                .cells
                .iter()
                .map(|x| x.as_ref().map(|v| v.clone() * c.clone()))
                .collect(),
            rows: self.rows.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    /// Multiplication by `(1 - L)^m`, where `L` shifts `(p, q)` to `(p+1, q+1)`.
    pub fn lefschetz_twist(&self, m: usize) -> Self {
        let extent = self.extent + m;
        let mut cells = vec![None; extent * extent];
        let mut rows = vec![T::zero(); extent];
        let weight = |j: usize| sign::<T>(j as i64) * binomial::<T>(m as i64, j as i64);
        for p in 0..extent {
            for j in 0..=m.min(p) {
                rows[p] = rows[p].clone() + weight(j) * self.row_sum(p - j);
            }
            for q in 0..extent {
                let mut acc = Some(T::zero());
                for j in 0..=m.min(p).min(q) {
                    acc = match (acc, self.cell(p - j, q - j)) {
                        (Some(a), Some(v)) => Some(a + weight(j) * v),
                        _ => None,
                    };
                }
                cells[p * extent + q] = acc;
            }
        }
        Self {
            extent,
            cells,
            rows,
        }
    }
}

/// `e^{p,q}_α` for finitely many eigenvalues `α`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EPolynomial<T> {
    grids: BTreeMap<RootOfUnity, HodgeGrid<T>>,
}

impl<T: Scalar> EPolynomial<T> {
    pub fn new() -> Self {
        Self {
            grids: BTreeMap::new(),
        }
    }

    /// Class of a point: `e^{0,0}_1 = 1`.
    pub fn point() -> Self {
        let mut e = Self::new();
        e.insert(RootOfUnity::ONE, HodgeGrid::full(1, |_, _| T::one()));
        e
    }

    pub fn insert(&mut self, alpha: RootOfUnity, grid: HodgeGrid<T>) {
        self.grids.insert(alpha, grid);
    }

    pub fn grid(&self, alpha: RootOfUnity) -> Option<&HodgeGrid<T>> {
        self.grids.get(&alpha)
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = RootOfUnity> + '_ {
        self.grids.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (RootOfUnity, &HodgeGrid<T>)> {
        self.grids.iter().map(|(a, g)| (*a, g))
    }

    /// `None` when the cell is undetermined.
    pub fn get(&self, p: usize, q: usize, alpha: RootOfUnity) -> Option<T> {
        match self.grids.get(&alpha) {
            Some(g) => g.cell(p, q),
            None => Some(T::zero()),
        }
    }

    pub fn row_sum(&self, p: usize, alpha: RootOfUnity) -> T {
        self.grids
            .get(&alpha)
            .map_or_else(T::zero, |g| g.row_sum(p))
    }

    pub fn antidiag_sum(&self, r: usize, alpha: RootOfUnity) -> Option<T> {
        match self.grids.get(&alpha) {
            Some(g) => g.antidiag_sum(r),
            None => Some(T::zero()),
        }
    }

    pub fn is_full(&self, alpha: RootOfUnity) -> bool {
        self.grids.get(&alpha).is_none_or(HodgeGrid::is_full)
    }

    pub fn is_full_table(&self) -> bool {
        self.grids.values().all(HodgeGrid::is_full)
    }

    /// Largest extent over all eigenvalues.
    pub fn extent(&self) -> usize {
        self.grids.values().map(HodgeGrid::extent).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, g) in &other.grids {
            let merged = match out.grids.get(a) {
                Some(mine) => mine.add(g),
                None => g.clone(),
            };
            out.grids.insert(*a, merged);
        }
        out
    }

    pub fn lefschetz_twist(&self, m: usize) -> Self {
        Self {
            grids: self
                .grids
                .iter()
                .map(|(a, g)| (*a, g.lefschetz_twist(m)))
                .collect(),
        }
    }

    /// `e^{p,q}_α = e^{q,p}_{α^{-1}}` on every known pair of cells.
    pub fn conjugation_symmetric(&self) -> bool {
        self.symmetric_under(|p, q, a, _| (q, p, a.inverse()))
    }

    /// Checks `e(p, q, α) = e(map(p, q, α))` wherever both sides are known.
    pub fn symmetric_under(
        &self,
        map: impl Fn(usize, usize, RootOfUnity, usize) -> (usize, usize, RootOfUnity),
    ) -> bool {
        let extent = self.extent();
        self.grids.keys().all(|&a| {
            (0..extent).all(|p| {
                (0..extent).all(|q| {
                    let (p2, q2, b) = map(p, q, a, extent);
                    match (self.get(p, q, a), self.get(p2, q2, b)) {
                        (Some(x), Some(y)) => x == y,
                        _ => true,
                    }
                })
            })
        })
    }
}

/// Sums `Σ_q e^{p,q}_α`, `p = 0..N-1`, for each eigenvalue.
pub type RowSumTable<T> = BTreeMap<RootOfUnity, Vec<T>>;

/// Value prescribed for `p + q > N - 1`.
pub fn e_high_range<T: Scalar>(n: usize, p: usize, q: usize, alpha: RootOfUnity) -> Result<T> {
    if p + q < n {
        return Err(Error::OutOfRange(format!(
            "p + q = {} is not above {}",
            p + q,
            n as i64 - 1
        )));
    }
    Ok(if alpha.is_one() && p == q {
        sign::<T>((n + p + 1) as i64) * binomial::<T>(n as i64, p as i64 + 1)
    } else {
        T::zero()
    })
}

/// Polytope data needed by all Hodge formulas: the twisted Ehrhart tables of
/// every face.
#[derive(Clone, Debug)]
pub struct HodgeEngine<'a, T> {
    delta: &'a LatticePolytope<T>,
    chi: &'a TwistedCharacter<T>,
    face_data: Vec<EhrhartTwistData<T>>,
}

impl<'a, T: Scalar> HodgeEngine<'a, T> {
    pub fn new(delta: &'a LatticePolytope<T>, chi: &'a TwistedCharacter<T>) -> Result<Self> {
        if !chi.is_valid_for(delta) {
            return Err(Error::InvalidCharacter);
        }
        let face_data = delta
            .faces()
            .iter()
            .map(|f| phi_psi_coefficients(&delta.face_polytope(f), chi))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            delta,
            chi,
            face_data,
        })
    }

    pub fn dim(&self) -> usize {
        self.delta.dim()
    }

    fn top(&self) -> usize {
        self.face_data.len() - 1
    }

    pub fn data(&self) -> &EhrhartTwistData<T> {
        &self.face_data[self.top()]
    }

    /// Eigenvalues that can occur, including 1.
    pub fn eigenvalues(&self) -> BTreeSet<RootOfUnity> {
        let mut out: BTreeSet<RootOfUnity> = self
            .face_data
            .iter()
            .flat_map(|d| d.eigenvalues())
            .collect();
        out.insert(RootOfUnity::ONE);
        out
    }

    fn phi(&self, face: usize, alpha: RootOfUnity, i: i64) -> T {
        self.face_data[face].phi(alpha, i)
    }

    fn face_dim(&self, face: usize) -> usize {
        self.delta.faces()[face].dim
    }

    fn subfaces(&self, face: usize) -> impl Iterator<Item = usize> + '_ {
        let faces = self.delta.faces();
        let g = &faces[face];
        (0..faces.len()).filter(move |&j| faces[j].is_subface_of(g))
    }

    fn faces_of_dim(&self, dim: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.face_data.len()).filter(move |&j| self.face_dim(j) == dim)
    }

    /// `Σ_q e^{p,q}(Z*)_α` for `p = 0..N-1`.
    pub fn row_sums(&self, alpha: RootOfUnity) -> Vec<T> {
        let n = self.dim() as i64;
        let top = self.top();
        (0..n)
            .map(|p| {
                let twisted = sign::<T>(n + 1) * self.phi(top, alpha, n - p);
                if alpha.is_one() {
                    sign::<T>(p + n + 1) * binomial::<T>(n, p + 1) + twisted
                } else {
                    twisted
                }
            })
            .collect()
    }

    pub fn row_sum_table(&self) -> RowSumTable<T> {
        self.eigenvalues()
            .into_iter()
            .map(|a| (a, self.row_sums(a)))
            .collect()
    }

    /// `e^{p,0}(Z*)_α` for `p > 0`.
    pub fn e_p0(&self, alpha: RootOfUnity, p: usize) -> Result<T> {
        if p == 0 {
            return Err(Error::OutOfRange("p must be positive".into()));
        }
        let n = self.dim() as i64;
        let total: u64 = self
            .faces_of_dim(p + 1)
            .map(|j| {
                let f = &self.delta.faces()[j];
                interior_twisted(&self.delta.face_polytope(f), self.chi, alpha)
            })
            .sum();
        Ok(sign::<T>(n - 1) * T::from_count(total))
    }

    pub fn e_00(&self, alpha: RootOfUnity) -> T {
        let n = self.dim() as i64;
        if alpha.is_one() {
            let pi = T::from_count(skeleton_count(self.delta, self.chi, RootOfUnity::ONE));
            sign::<T>(n - 1) * (pi - T::one())
        } else {
            sign::<T>(n - 1) * T::from_count(skeleton_count(self.delta, self.chi, alpha.inverse()))
        }
    }

    /// Cells known without pseudo-primality.
    pub fn always_known_cells(&self, alpha: RootOfUnity) -> Result<BTreeMap<(usize, usize), T>> {
        let n = self.dim();
        let mut known = BTreeMap::new();
        for p in 0..n {
            for q in 0..n {
                if p + q >= n {
                    known.insert((p, q), e_high_range(n, p, q, alpha)?);
                }
            }
        }
        known.insert((0, 0), self.e_00(alpha));
        for p in 1..n {
            known.insert((p, 0), self.e_p0(alpha, p)?);
            known.insert((0, p), self.e_p0(alpha.inverse(), p)?);
        }
        Ok(known)
    }

    fn require_pseudo_prime(&self) -> Result<()> {
        if self.delta.is_pseudo_prime() {
            Ok(())
        } else {
            Err(Error::NotPseudoPrime)
        }
    }

    /// Closure table of the face `g` treated as a polytope of its own.
    fn closure_of_face(&self, g: usize, alpha: RootOfUnity) -> HodgeGrid<T> {
        let d = self.face_dim(g);
        let subs: Vec<usize> = self.subfaces(g).collect();
        let alt = |j: usize| sign::<T>(self.face_dim(j) as i64);
        if !alpha.is_one() {
            return HodgeGrid::full(d, |p, q| {
                if p + q + 1 != d {
                    return T::zero();
                }
                -subs.iter().fold(T::zero(), |acc, &j| {
                    acc + alt(j) * self.phi(j, alpha, self.face_dim(j) as i64 - p as i64)
                })
            });
        }
        let one = RootOfUnity::ONE;
        HodgeGrid::full(d, |p, q| {
            let (pi, di) = (p as i64, d as i64);
            if p != q {
                if p + q + 1 != d {
                    return T::zero();
                }
                let top = p.max(q) as i64;
                return -subs.iter().fold(T::zero(), |acc, &j| {
                    acc + alt(j) * self.phi(j, one, self.face_dim(j) as i64 - top)
                });
            }
            let dims = subs.iter().map(|&j| self.face_dim(j) as i64);
            if 2 * pi > di - 1 {
                sign::<T>(pi + 1)
                    * dims.fold(T::zero(), |acc, dg| {
                        acc + sign::<T>(dg) * binomial::<T>(dg, pi + 1)
                    })
            } else if 2 * pi < di - 1 {
                sign::<T>(di - pi)
                    * dims.fold(T::zero(), |acc, dg| {
                        acc + sign::<T>(dg) * binomial::<T>(dg, di - pi)
                    })
            } else {
                subs.iter().fold(T::zero(), |acc, &j| {
                    let dg = self.face_dim(j) as i64;
                    acc + sign::<T>(dg)
                        * (sign::<T>(pi + 1) * binomial::<T>(dg, pi + 1) - self.phi(j, one, dg - pi))
                })
            }
        })
    }

    /// `e^{p,q}` of the closure of `Z*` in the toric variety of `Δ`.
    pub fn closure_table(&self, alpha: RootOfUnity) -> Result<HodgeGrid<T>> {
        self.require_pseudo_prime()?;
        Ok(self.closure_of_face(self.top(), alpha))
    }

    /// Affine table for `α != 1` from the double sum over faces and subfaces.
    pub fn affine_nontrivial(&self, alpha: RootOfUnity) -> Result<HodgeGrid<T>> {
        if alpha.is_one() {
            return Err(Error::TrivialEigenvalue);
        }
        self.require_pseudo_prime()?;
        let n = self.dim();
        Ok(HodgeGrid::full(n, |p, q| {
            if p + q >= n {
                return T::zero();
            }
            let outer = self.faces_of_dim(p + q + 1).fold(T::zero(), |acc, g| {
                acc + self.subfaces(g).fold(T::zero(), |inner, j| {
                    let dj = self.face_dim(j) as i64;
                    inner + sign::<T>(dj) * self.phi(j, alpha, dj - p as i64)
                })
            });
            sign::<T>((n + p + q) as i64) * outer
        }))
    }

    /// Affine table for any `α` by inverting the orbit stratification of the
    /// closure over the face lattice.
    pub fn affine_from_closures(&self, alpha: RootOfUnity) -> Result<HodgeGrid<T>> {
        self.require_pseudo_prime()?;
        let n = self.dim();
        let mut acc = HodgeGrid::zero(n);
        for g in 0..self.face_data.len() {
            let d = self.face_dim(g);
            if d == 0 {
                continue;
            }
            let c = self.closure_of_face(g, alpha);
            acc = acc.add(&c.scale(&sign::<T>((n - d) as i64)));
        }
        Ok(acc)
    }

    /// `Σ_{p+q=r} e^{p,q}(Z*)_α` for `α != 1` from the `φ̃` sums.
    pub fn antidiag_nontrivial(&self, alpha: RootOfUnity, r: usize) -> Result<T> {
        if alpha.is_one() {
            return Err(Error::TrivialEigenvalue);
        }
        self.require_pseudo_prime()?;
        let n = self.dim();
        if r >= n {
            return Ok(T::zero());
        }
        let mut outer = T::zero();
        for g in self.faces_of_dim(r + 1) {
            for j in self.subfaces(g) {
                let t = self.face_data[j].tilde_phi(alpha)?;
                outer = outer + sign::<T>(self.face_dim(j) as i64) * t;
            }
        }
        Ok(sign::<T>((n + r) as i64) * outer)
    }

    /// Class of `Z*`: full tables when `Δ` is pseudo-prime, otherwise row
    /// sums plus the always-known cells.
    pub fn hypersurface_class(&self) -> Result<EPolynomial<T>> {
        let mut e = EPolynomial::new();
        if self.dim() == 0 {
            return Ok(e);
        }
        let pseudo = self.delta.is_pseudo_prime();
        for a in self.eigenvalues() {
            let grid = if pseudo {
                let g = self.affine_from_closures(a)?;
                debug_assert_eq!(g.rows, self.row_sums(a));
                g
            } else {
                HodgeGrid::partial(self.row_sums(a), &self.always_known_cells(a)?)
            };
            e.insert(a, grid);
        }
        Ok(e)
    }
}

pub fn e_row_sums<T: Scalar>(
    delta: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
) -> Result<RowSumTable<T>> {
    Ok(HodgeEngine::new(delta, chi)?.row_sum_table())
}

pub fn e_p0<T: Scalar>(
    delta: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
    alpha: RootOfUnity,
    p: usize,
) -> Result<T> {
    HodgeEngine::new(delta, chi)?.e_p0(alpha, p)
}

pub fn e_00<T: Scalar>(
    delta: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
    alpha: RootOfUnity,
) -> Result<T> {
    Ok(HodgeEngine::new(delta, chi)?.e_00(alpha))
}

pub fn antidiag_sums_nontrivial<T: Scalar>(
    delta: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
    alpha: RootOfUnity,
    r: usize,
) -> Result<T> {
    HodgeEngine::new(delta, chi)?.antidiag_nontrivial(alpha, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{HeightFunction, LatticeVector};

    fn poly(points: &[&[i64]]) -> LatticePolytope<i64> {
        LatticePolytope::from_int_points(points).unwrap()
    }

    fn cone_character(face: &[&[i64]]) -> TwistedCharacter<i64> {
        let pts: Vec<_> = face.iter().map(|p| LatticeVector::from_ints(p)).collect();
        TwistedCharacter::from_height(&HeightFunction::for_points(&pts).unwrap()).unwrap()
    }

    #[test]
    fn twist_of_point_class() {
        let pt = EPolynomial::<i64>::point();
        assert_eq!(pt.lefschetz_twist(0), pt);
        let one = RootOfUnity::ONE;
        let t1 = pt.lefschetz_twist(1);
        assert_eq!(t1.get(0, 0, one), Some(1));
        assert_eq!(t1.get(1, 1, one), Some(-1));
        assert_eq!(t1.get(0, 1, one), Some(0));
        let t2 = pt.lefschetz_twist(2);
        assert_eq!(
            [t2.get(0, 0, one), t2.get(1, 1, one), t2.get(2, 2, one)],
            [Some(1), Some(-2), Some(1)]
        );
        assert_eq!(t2.row_sum(1, one), -2);
    }

    #[test]
    fn high_range_values() {
        let one = RootOfUnity::ONE;
        assert_eq!(e_high_range::<i64>(2, 1, 1, one).unwrap(), 1);
        assert_eq!(e_high_range::<i64>(3, 2, 2, one).unwrap(), 1);
        assert_eq!(e_high_range::<i64>(2, 2, 1, RootOfUnity::new(1, 2)).unwrap(), 0);
        assert!(e_high_range::<i64>(2, 0, 1, one).is_err());
    }

    #[test]
    fn two_point_hypersurface() {
        let delta = poly(&[&[0, 0], &[2, 2]]);
        let chi = cone_character(&[&[2, 2]]);
        let eng = HodgeEngine::new(&delta, &chi).unwrap();
        let half = RootOfUnity::new(1, 2);
        assert_eq!(eng.row_sums(half), vec![1]);
        assert_eq!(eng.row_sums(RootOfUnity::ONE), vec![1]);
        assert_eq!(eng.e_00(RootOfUnity::ONE), 1);
        assert_eq!(eng.e_00(half), 1);
        let closure = eng.closure_table(half).unwrap();
        assert_eq!(closure.cell(0, 0), Some(1));
        assert_eq!(eng.affine_nontrivial(half).unwrap(), eng.affine_from_closures(half).unwrap());
        assert_eq!(eng.antidiag_nontrivial(half, 0).unwrap(), 1);
        assert_eq!(eng.antidiag_nontrivial(half, 3).unwrap(), 0);
    }

    #[test]
    fn unit_segment_is_one_point() {
        let delta = poly(&[&[0, 0], &[1, 0]]);
        let chi = TwistedCharacter::trivial(2);
        let eng = HodgeEngine::new(&delta, &chi).unwrap();
        assert_eq!(eng.row_sums(RootOfUnity::ONE), vec![1]);
        assert_eq!(eng.closure_table(RootOfUnity::ONE).unwrap().cell(0, 0), Some(1));
        let class = eng.hypersurface_class().unwrap();
        assert_eq!(class.get(0, 0, RootOfUnity::ONE), Some(1));
        assert_eq!(eng.e_00(RootOfUnity::new(1, 3)), 0);
    }

    #[test]
    fn triangle_p0_count() {
        let delta = poly(&[&[0, 0], &[3, 0], &[2, 2]]);
        let chi = TwistedCharacter::trivial(2);
        let eng = HodgeEngine::new(&delta, &chi).unwrap();
        assert_eq!(eng.e_p0(RootOfUnity::ONE, 1).unwrap(), -1);
        assert_eq!(eng.e_p0(RootOfUnity::ONE, 3).unwrap(), 0);
        let class = eng.hypersurface_class().unwrap();
        assert!(class.is_full_table());
        assert_eq!(class.get(1, 0, RootOfUnity::ONE), Some(-1));
        assert_eq!(class.get(1, 1, RootOfUnity::ONE), Some(1));
    }

    #[test]
    fn cone_over_edge_agrees_with_antidiagonal_formula() {
        let delta = poly(&[&[0, 0], &[3, 0], &[2, 2]]);
        let chi = cone_character(&[&[3, 0], &[2, 2]]);
        let eng = HodgeEngine::new(&delta, &chi).unwrap();
        for a in eng.eigenvalues().into_iter().filter(|a| !a.is_one()) {
            let table = eng.affine_nontrivial(a).unwrap();
            assert_eq!(table, eng.affine_from_closures(a).unwrap());
            for r in 0..2 {
                assert_eq!(table.antidiag_sum(r), Some(eng.antidiag_nontrivial(a, r).unwrap()));
            }
        }
        let class = eng.hypersurface_class().unwrap();
        assert!(class.conjugation_symmetric());
    }
}
