//! Character-twisted Ehrhart counting and the coefficient tables of the
//! twisted Ehrhart series.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{HeightFunction, LatticePolytope, LatticeVector};
use crate::scalar::{binomial, sign, Scalar};

/// `exp(2πi·num/den)`, stored as a reduced fraction in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };

    /// `exp(2πi·num/den)`; `num` may be any integer.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "root of unity with zero denominator");
        let d = den as i128;
        let r = (num as i128).rem_euclid(d);
        let g = r.gcd(&d);
        Self {
            num: (r / g) as u64,
            den: (d / g) as u64,
        }
    }

    pub fn one() -> Self {
        Self::ONE
    }

    /// Primitive `d`-th root `exp(2πi/d)`.
    pub fn primitive(d: u64) -> Self {
        Self::new(1, d)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// Multiplicative order.
    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// Inverse, equal to the complex conjugate.
    pub fn inverse(&self) -> Self {
        Self::new(-(self.num as i64), self.den)
    }

    /// Whether `self^d = 1`.
    pub fn is_root_of(&self, d: u64) -> bool {
        d.is_multiple_of(self.den)
    }

    /// The `k` in `0..d` with `self = exp(2πi k/d)`; requires `self^d = 1`.
    pub fn exponent_mod(&self, d: u64) -> Option<u64> {
        self.is_root_of(d).then(|| self.num * (d / self.den))
    }

    /// `β` in `[0, 1)`.
    pub fn fraction(&self) -> Ratio<i64> {
        Ratio::new(self.num as i64, self.den as i64)
    }

    /// `β` in `(0, 1]`, so that `1` corresponds to `β = 1`.
    pub fn fraction_upper(&self) -> Ratio<i64> {
        if self.is_one() {
            Ratio::from_integer(1)
        } else {
            self.fraction()
        }
    }
}

impl Ord for RootOfUnity {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128)
            .cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RootOfUnity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: i64 = a.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let den: u64 = b.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if den == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Self::new(num, den))
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Character `v ↦ exp(2πi (c·v mod d)/d)` given by an ambient covector `c`
/// and a modulus `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCharacter<T> {
    covector: LatticeVector<T>,
    modulus: u64,
}

impl<T: Scalar> TwistedCharacter<T> {
    pub fn new(covector: LatticeVector<T>, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidCharacter);
        }
        Ok(Self { covector, modulus })
    }

    pub fn trivial(ambient_dim: usize) -> Self {
        Self {
            covector: LatticeVector::zero(ambient_dim),
            modulus: 1,
        }
    }

    /// `v ↦ ζ_d^{ht(v)}`; heights are affine with `ht(0) = d`, so this is
    /// the character `v ↦ ζ_d^{-l(v)}`.
    pub fn from_height(h: &HeightFunction<T>) -> Result<Self> {
        let d = h
            .distance()
            .to_u64()
            .ok_or_else(|| Error::Overflow(format!("lattice distance {}", h.distance())))?;
        Self::new(-h.functional(), d)
    }

    pub fn covector(&self) -> &LatticeVector<T> {
        &self.covector
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn residue(&self, raw: &T) -> u64 {
        raw.mod_floor(&T::from_count(self.modulus))
            .to_u64()
            .expect("residue below the modulus")
    }

    pub fn value(&self, v: &LatticeVector<T>) -> RootOfUnity {
        RootOfUnity::new(self.residue(&self.covector.dot(v)) as i64, self.modulus)
    }

    /// Trivial on all vertex differences of `p`.
    pub fn is_valid_for(&self, p: &LatticePolytope<T>) -> bool {
        let base = p.base();
        p.vertices()
            .iter()
            .all(|v| self.value(&(v - base)).is_one())
    }
}

/// Histogram of character values over a set of lattice points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedCount {
    entries: BTreeMap<RootOfUnity, u64>,
}

impl TwistedCount {
    pub fn get(&self, alpha: RootOfUnity) -> u64 {
        self.entries.get(&alpha).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (RootOfUnity, u64)> + '_ {
        self.entries.iter().map(|(a, c)| (*a, *c))
    }

    pub fn keys(&self) -> impl Iterator<Item = RootOfUnity> + '_ {
        self.entries.keys().copied()
    }

    fn add(&mut self, alpha: RootOfUnity, count: u64) {
        *self.entries.entry(alpha).or_insert(0) += count;
    }
}

/// Twisted count of the lattice points of `k(Δ - w)` (or of its relative
/// interior), with `w` a vertex of `Δ`.
pub fn twisted_count<T: Scalar>(
    delta: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
    k: u64,
    interior_only: bool,
    base_vertex: &LatticeVector<T>,
) -> Result<TwistedCount> {
    if delta.vertex_index(base_vertex).is_none() {
        return Err(Error::NotAVertex);
    }
    if !chi.is_valid_for(delta) {
        return Err(Error::InvalidCharacter);
    }
    Ok(count_unchecked(delta, chi, k, interior_only, base_vertex))
}

fn count_unchecked<T: Scalar>(
    delta: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
    k: u64,
    interior_only: bool,
    w: &LatticeVector<T>,
) -> TwistedCount {
    let kk = T::from_count(k);
    let offset = chi.covector.dot(&(delta.base() - w)) * kk;
    let along: Vec<T> = delta
        .frame()
        .basis()
        .iter()
        .map(|b| chi.covector.dot(b))
        .collect();
    let mut raw: BTreeMap<u64, u64> = BTreeMap::new();
    delta.for_each_local_point(k, interior_only, |y| {
        let val = y
            .iter()
            .zip(&along)
            .fold(offset.clone(), |acc, (a, b)| acc + a.clone() * b.clone());
        *raw.entry(chi.residue(&val)).or_insert(0) += 1;
    });
    let mut out = TwistedCount::default();
    for (r, c) in raw {
        out.add(RootOfUnity::new(r as i64, chi.modulus), c);
    }
    out
}

/// Twisted counts used for the generating series: `l*(0·Δ) = 0`.
fn series_count<T: Scalar>(
    delta: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
    k: u64,
    interior_only: bool,
) -> TwistedCount {
    if k == 0 && interior_only {
        return TwistedCount::default();
    }
    count_unchecked(delta, chi, k, interior_only, delta.base())
}

/// Coefficients `φ_{α,i}` of `(1-t)^{N+1} Σ_k l*(kΔ)_α t^k` and `ψ_{α,i}`
/// of `(1-t)^{N+1} Σ_k l(kΔ)_α t^k`, `i = 0..=N+1`, `N = dim Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartTwistData<T> {
    pub dim: usize,
    pub phi: BTreeMap<RootOfUnity, Vec<T>>,
    pub psi: BTreeMap<RootOfUnity, Vec<T>>,
}

impl<T: Scalar> EhrhartTwistData<T> {
    pub fn phi(&self, alpha: RootOfUnity, i: i64) -> T {
        lookup(&self.phi, alpha, i)
    }

    pub fn psi(&self, alpha: RootOfUnity, i: i64) -> T {
        lookup(&self.psi, alpha, i)
    }

    /// Every eigenvalue with a nonzero coefficient, closed under inversion.
    pub fn eigenvalues(&self) -> BTreeSet<RootOfUnity> {
        self.phi
            .keys()
            .chain(self.psi.keys())
            .flat_map(|a| [*a, a.inverse()])
            .collect()
    }

    /// `φ_{α,i} = ψ_{α^{-1}, N+1-i}` for all `α` and `i`.
    pub fn duality_holds(&self) -> bool {
        let n = self.dim as i64;
        self.eigenvalues().into_iter().all(|a| {
            (-1..=n + 2).all(|i| self.phi(a, i) == self.psi(a.inverse(), n + 1 - i))
        })
    }

    /// `l*(kΔ)_α` regenerated from the `φ` table.
    pub fn interior_count(&self, alpha: RootOfUnity, k: i64) -> T {
        let n = self.dim as i64;
        (0..=n + 1).fold(T::zero(), |acc, i| {
            acc + self.phi(alpha, i) * binomial::<T>(k - i + n, n)
        })
    }

    /// `l(kΔ)_α` regenerated from the `ψ` table, as a polynomial in `k`.
    pub fn closed_count_polynomial(&self, alpha: RootOfUnity, k: i64) -> T {
        let n = self.dim as i64;
        (0..=n + 1).fold(T::zero(), |acc, i| {
            acc + self.psi(alpha, i) * poly_binomial::<T>(k - i + n, n)
        })
    }

    /// Reciprocity `l(-kΔ)_{α^{-1}} = (-1)^N l*(kΔ)_α`, evaluated on the
    /// stored tables (so a corrupted table is detected).
    pub fn reciprocity_holds(&self, k: i64) -> bool {
        let s: T = sign(self.dim as i64);
        self.eigenvalues().into_iter().all(|a| {
            self.closed_count_polynomial(a.inverse(), -k) == s.clone() * self.interior_count(a, k)
        })
    }

    /// `Σ_{i=0}^{N} φ_{α,i}`, defined for `α != 1`.
    pub fn tilde_phi(&self, alpha: RootOfUnity) -> Result<T> {
        if alpha.is_one() {
            return Err(Error::TrivialEigenvalue);
        }
        Ok((0..=self.dim as i64).fold(T::zero(), |acc, i| acc + self.phi(alpha, i)))
    }
}

fn lookup<T: Scalar>(table: &BTreeMap<RootOfUnity, Vec<T>>, alpha: RootOfUnity, i: i64) -> T {
    if i < 0 {
        return T::zero();
    }
    table
        .get(&alpha)
        .and_then(|row| row.get(i as usize))
        .cloned()
        .unwrap_or_else(T::zero)
}

/// `m(m-1)...(m-r+1)/r!` for any integer `m`.
pub fn poly_binomial<T: Scalar>(m: i64, r: i64) -> T {
    let mut num = T::one();
    let mut den = T::one();
    for j in 0..r {
        num = num * T::from_int(m - j);
        den = den * T::from_int(j + 1);
    }
    num / den
}

pub fn phi_psi_coefficients<T: Scalar>(
    delta: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
) -> Result<EhrhartTwistData<T>> {
    if !chi.is_valid_for(delta) {
        return Err(Error::InvalidCharacter);
    }
    let n = delta.dim();
    let interior: Vec<TwistedCount> = (0..=n as u64 + 2)
        .map(|k| series_count(delta, chi, k, true))
        .collect();
    let closed: Vec<TwistedCount> = (0..=n as u64 + 2)
        .map(|k| series_count(delta, chi, k, false))
        .collect();
    Ok(EhrhartTwistData {
        dim: n,
        phi: convolve(&interior, n)?,
        psi: convolve(&closed, n)?,
    })
}

/// Multiplies each per-eigenvalue count series by `(1-t)^{N+1}` and checks
/// that the coefficient at `N+2` vanishes.
fn convolve<T: Scalar>(
    counts: &[TwistedCount],
    n: usize,
) -> Result<BTreeMap<RootOfUnity, Vec<T>>> {
    let keys: BTreeSet<RootOfUnity> = counts.iter().flat_map(|c| c.keys()).collect();
    let mut out = BTreeMap::new();
    for a in keys {
        let series: Vec<T> = counts.iter().map(|c| T::from_count(c.get(a))).collect();
        let coeff = |i: usize| -> T {
            (0..=i.min(n + 1)).fold(T::zero(), |acc, j| {
                acc + sign::<T>(j as i64)
                    * binomial::<T>(n as i64 + 1, j as i64)
                    * series[i - j].clone()
            })
        };
        let guard = coeff(n + 2);
        if !guard.is_zero() {
            return Err(Error::PolynomialityFailure {
                eigenvalue: a.to_string(),
                coefficient: guard.to_string(),
            });
        }
        let row: Vec<T> = (0..=n + 1).map(coeff).collect();
        if row.iter().any(|x| !x.is_zero()) {
            out.insert(a, row);
        }
    }
    Ok(out)
}

/// Checks `h(-k) = (-1)^N l*(kΔ)_α` with `h(j) = l(jΔ)_{α^{-1}}` interpolated
/// from enumerated counts at `j = 0..=N+1`.
pub fn ehrhart_reciprocity_check<T: Scalar>(
    delta: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
    k: u64,
) -> Result<bool> {
    if !chi.is_valid_for(delta) {
        return Err(Error::InvalidCharacter);
    }
    let n = delta.dim();
    let closed: Vec<TwistedCount> = (0..=n as u64 + 1)
        .map(|j| series_count(delta, chi, j, false))
        .collect();
    let interior = series_count(delta, chi, k, true);
    let keys: BTreeSet<RootOfUnity> = closed
        .iter()
        .flat_map(|c| c.keys())
        .chain(interior.keys())
        .flat_map(|a| [a, a.inverse()])
        .collect();
    let s: T = sign(n as i64);
    for a in keys {
        let ys: Vec<T> = closed
            .iter()
            .map(|c| T::from_count(c.get(a.inverse())))
            .collect();
        let h = lagrange_at(&ys, -(k as i64));
        let rhs = Ratio::from_integer(s.clone() * T::from_count(interior.get(a)));
        if h != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Value at `x` of the polynomial through `(j, ys[j])`, `j = 0..ys.len()`.
fn lagrange_at<T: Scalar>(ys: &[T], x: i64) -> Ratio<T> {
    let m = ys.len() as i64;
    let mut acc = Ratio::from_integer(T::zero());
    for (j, y) in ys.iter().enumerate() {
        let j = j as i64;
        let mut num = T::one();
        let mut den = T::one();
        for i in 0..m {
            if i != j {
                num = num * T::from_int(x - i);
                den = den * T::from_int(j - i);
            }
        }
        acc = acc + Ratio::new(y.clone() * num, den);
    }
    acc
}

/// `Σ_{i=0}^{dim Γ} φ_{α,i}(Γ)` for `α != 1`.
pub fn tilde_phi<T: Scalar>(
    gamma: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
    alpha: RootOfUnity,
) -> Result<T> {
    if alpha.is_one() {
        return Err(Error::TrivialEigenvalue);
    }
    phi_psi_coefficients(gamma, chi)?.tilde_phi(alpha)
}

/// Number of lattice points of the 1-skeleton of `Δ - w` with character `α`.
pub fn skeleton_count<T: Scalar>(
    delta: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
    alpha: RootOfUnity,
) -> u64 {
    let w = delta.base();
    let mut points: BTreeSet<LatticeVector<T>> = BTreeSet::new();
    for face in delta.faces().iter().filter(|f| f.dim <= 1) {
        points.extend(delta.face_polytope(face).lattice_points(1, false));
    }
    points
        .iter()
        .filter(|p| chi.value(&(*p - w)) == alpha)
        .count() as u64
}

/// `l*(Γ)_α` of a polytope at dilation 1, base vertex its own.
pub fn interior_twisted<T: Scalar>(
    gamma: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
    alpha: RootOfUnity,
) -> u64 {
    count_unchecked(gamma, chi, 1, true, gamma.base()).get(alpha)
}
