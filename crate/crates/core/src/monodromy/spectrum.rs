use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hodge::EPolynomial;
use crate::monodromy::class::hodge_class_at_infinity;
use crate::monodromy::newton::NewtonAtInfinity;
use crate::scalar::{binomial, Scalar};

/// Extra integer levels enumerated past `n` when expanding cone series.
const GUARD_LEVELS: i64 = 2;

/// Finite sum `Σ c_β t^β` with rational exponents, zero terms omitted.
/// Serialized as `[["num/den", coeff], ...]` in increasing exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(String, i64)>", into = "Vec<(String, i64)>")]
pub struct SpectrumPoly {
    terms: BTreeMap<Ratio<i64>, i64>,
}

impl TryFrom<Vec<(String, i64)>> for SpectrumPoly {
    type Error = String;

    fn try_from(pairs: Vec<(String, i64)>) -> std::result::Result<Self, String> {
        let mut sp = Self::default();
        for (e, c) in pairs {
            let exp: Ratio<i64> = e.parse().map_err(|_| format!("bad exponent {e:?}"))?;
            sp.add_term(exp, c);
        }
        Ok(sp)
    }
}

impl From<SpectrumPoly> for Vec<(String, i64)> {
    fn from(sp: SpectrumPoly) -> Self {
        sp.terms
            .into_iter()
            .map(|(e, c)| (format!("{}/{}", e.numer(), e.denom()), c))
            .collect()
    }
}

impl SpectrumPoly {
    pub fn add_term(&mut self, exponent: Ratio<i64>, coeff: i64) {
        let entry = self.terms.entry(exponent).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Ratio<i64>, i64> {
        &self.terms
    }

    pub fn coefficient(&self, exponent: Ratio<i64>) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `sp(t) = t^n sp(1/t)`.
    pub fn is_symmetric(&self, n: usize) -> bool {
        let n = Ratio::from_integer(n as i64);
        self.terms
            .iter()
            .all(|(e, c)| self.coefficient(n - e) == *c)
    }

    /// Every exponent lies strictly between 0 and `n`.
    pub fn support_within(&self, n: usize) -> bool {
        let n = Ratio::from_integer(n as i64);
        self.terms
            .keys()
            .all(|e| *e > Ratio::from_integer(0) && *e < n)
    }
}

impl fmt::Display for SpectrumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (i, *c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let power = if e.is_integer() {
                match *e.numer() {
                    0 => String::new(),
                    1 => "t".to_string(),
                    k => format!("t^{k}"),
                }
            } else {
                format!("t^({}/{})", e.numer(), e.denom())
            };
            match (magnitude, power.is_empty()) {
                (m, true) => write!(f, "{m}")?,
                (1, false) => write!(f, "{power}")?,
                (m, false) => write!(f, "{m}*{power}")?,
            }
        }
        Ok(())
    }
}

fn small<T: Scalar>(v: T) -> Result<i64> {
    v.to_small().ok_or_else(|| Error::Overflow(v.to_string()))
}

/// Spectrum from the row sums of the Hodge class; row sums are always known.
pub fn spectrum_from_class<T: Scalar>(class: &EPolynomial<T>, n: usize) -> Result<SpectrumPoly> {
    let mut sp = SpectrumPoly::default();
    let outer = if n % 2 == 1 { 1 } else { -1 };
    for (alpha, grid) in class.iter() {
        let beta = alpha.fraction_upper();
        for i in 0..n {
            let row = small(grid.row_sum(i))?;
            sp.add_term(beta + Ratio::from_integer(i as i64), outer * row);
        }
    }
    sp.add_term(Ratio::from_integer(n as i64), -outer);
    Ok(sp)
}

pub fn spectrum_via_hodge<T: Scalar>(newton: &NewtonAtInfinity<T>) -> Result<SpectrumPoly> {
    newton.require_convenient()?;
    spectrum_from_class(&hodge_class_at_infinity(newton)?, newton.n())
}

/// Spectrum from lattice points of the cones over faces at infinity, graded
/// by the piecewise linear function equal to 1 on the faces.
pub fn spectrum_via_cones<T: Scalar>(newton: &NewtonAtInfinity<T>) -> Result<SpectrumPoly> {
    newton.require_convenient()?;
    let n = newton.n() as i64;
    let cap = n + GUARD_LEVELS;
    let cap_ratio = Ratio::from_integer(cap);
    let mut total = SpectrumPoly::default();
    for f in newton.faces_at_infinity() {
        let d = f.distance as i64;
        let mut series: BTreeMap<Ratio<i64>, i64> = BTreeMap::new();
        for v in f.cone_polytope().lattice_points(cap as u64, false) {
            let level = small(f.height.level(&v))?;
            *series.entry(Ratio::new(level, d)).or_insert(0) += 1;
        }
        let s = f.coords.s as i64;
        let sign = if (n - 1 - f.dim() as i64) % 2 == 0 { 1 } else { -1 };
        for (e, c) in series {
            for j in 0..=s {
                let exp = e + Ratio::from_integer(j);
                if exp > cap_ratio {
                    break;
                }
                let w: i64 = binomial::<i64>(s, j) * if j % 2 == 0 { 1 } else { -1 };
                total.add_term(exp, sign * w * c);
            }
        }
    }
    total.add_term(Ratio::from_integer(0), if n % 2 == 0 { 1 } else { -1 });
    let n_ratio = Ratio::from_integer(n);
    let leftover: Vec<String> = total
        .terms
        .iter()
        .filter(|(e, _)| **e > n_ratio)
        .map(|(e, c)| format!("{c}*t^{e}"))
        .collect();
    if !leftover.is_empty() {
        return Err(Error::GuardNotCancelled(leftover.join(" + ")));
    }
    Ok(total)
}
