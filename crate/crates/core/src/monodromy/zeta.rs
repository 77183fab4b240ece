use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ehrhart::RootOfUnity;
use crate::error::{Error, Result};
use crate::monodromy::newton::NewtonAtInfinity;
use crate::scalar::Scalar;

/// `Π_d (1 - t^d)^{e_d}` with no zero exponents. Serialized as a list of
/// `[d, e_d]` pairs in increasing `d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<(u64, i64)>", into = "Vec<(u64, i64)>")]
pub struct ZetaFactorization {
    factors: BTreeMap<u64, i64>,
}

impl From<Vec<(u64, i64)>> for ZetaFactorization {
    fn from(pairs: Vec<(u64, i64)>) -> Self {
        let mut z = Self::one();
        for (d, e) in pairs {
            z.multiply_factor(d, e);
        }
        z
    }
}

impl From<ZetaFactorization> for Vec<(u64, i64)> {
    fn from(z: ZetaFactorization) -> Self {
        z.factors.into_iter().collect()
    }
}

impl ZetaFactorization {
    pub fn one() -> Self {
        Self::default()
    }

    /// Multiplies by `(1 - t^d)^e`.
    pub fn multiply_factor(&mut self, d: u64, e: i64) {
        assert!(d > 0, "factor degree must be positive");
        let entry = self.factors.entry(d).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.factors.remove(&d);
        }
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn exponent(&self, d: u64) -> i64 {
        self.factors.get(&d).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Degree as a rational function.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(&d, &e)| d as i64 * e).sum()
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut factors: BTreeMap<u64, i64> =
            self.factors.iter().map(|(&d, &e)| (d, e * k)).collect();
        factors.retain(|_, e| *e != 0);
        Self { factors }
    }

    /// Exponent of the `m`-th cyclotomic polynomial for every `m` that can occur.
    pub fn cyclotomic_exponents(&self) -> BTreeMap<u64, i64> {
        let divisors: BTreeSet<u64> = self
            .factors
            .keys()
            .flat_map(|&d| (1..=d).filter(move |m| d % m == 0))
            .collect();
        divisors
            .into_iter()
            .map(|m| (m, self.cyclotomic_exponent(m)))
            .filter(|(_, e)| *e != 0)
            .collect()
    }

    fn cyclotomic_exponent(&self, m: u64) -> i64 {
        self.factors
            .iter()
            .filter(|(&d, _)| d % m == 0)
            .map(|(_, &e)| e)
            .sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.cyclotomic_exponents().values().all(|&e| e >= 0)
    }

    /// Order of vanishing at `t = α^{-1}`; may be negative for a rational function.
    pub fn signed_multiplicity(&self, alpha: RootOfUnity) -> i64 {
        self.cyclotomic_exponent(alpha.den())
    }

    /// Roots of unity with positive multiplicity, in increasing order.
    pub fn eigenvalues(&self) -> Vec<RootOfUnity> {
        let mut out = Vec::new();
        for (m, e) in self.cyclotomic_exponents() {
            if e > 0 {
                out.extend(
                    (0..m)
                        .map(|k| RootOfUnity::new(k as i64, m))
                        .filter(|a| a.den() == m),
                );
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for ZetaFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (&d, &e) in &self.factors {
            if d == 1 {
                write!(f, "(1-t)")?;
            } else {
                write!(f, "(1-t^{d})")?;
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Product over faces at infinity spanning their coordinate subspace of
/// `(1 - t^{d_γ})^{(-1)^{dim γ} Vol(γ)}`.
pub fn zeta_at_infinity<T: Scalar>(newton: &NewtonAtInfinity<T>) -> Result<ZetaFactorization> {
    newton.require_convenient()?;
    let mut z = ZetaFactorization::one();
    for f in newton.faces_at_infinity().iter().filter(|f| f.coords.m == 0) {
        let vol = f.polytope().normalized_volume();
        let vol = vol
            .to_small()
            .ok_or_else(|| Error::Overflow(format!("volume {vol}")))?;
        let sign = if f.dim() % 2 == 0 { 1 } else { -1 };
        z.multiply_factor(f.distance, sign * vol);
    }
    Ok(z)
}

/// `det(id - tΦ) = (ζ / (1 - t))^{(-1)^{n-1}}`.
pub fn char_poly_from_zeta(zeta: &ZetaFactorization, n: usize) -> Result<ZetaFactorization> {
    let mut z = zeta.clone();
    z.multiply_factor(1, -1);
    let cp = z.pow(if n % 2 == 1 { 1 } else { -1 });
    if !cp.is_polynomial() {
        return Err(Error::NotAPolynomial(cp.to_string()));
    }
    Ok(cp)
}

pub fn eigenvalue_multiplicity(cp: &ZetaFactorization, alpha: RootOfUnity) -> Result<u64> {
    let m = cp.signed_multiplicity(alpha);
    u64::try_from(m).map_err(|_| {
        Error::Inconsistent(format!("multiplicity {m} of {alpha} in {cp}"))
    })
}
