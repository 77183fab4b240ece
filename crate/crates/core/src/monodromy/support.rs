use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::scalar::Scalar;

/// Exponent support of a polynomial in `n` variables, with optional exact
/// coefficients. Without coefficients the polynomial is treated as generic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSpec<T: Scalar> {
    n: usize,
    support: BTreeSet<LatticeVector<T>>,
    coefficients: Option<BTreeMap<LatticeVector<T>, Ratio<T>>>,
}

impl<T: Scalar> SupportSpec<T> {
    pub fn new(n: usize, support: impl IntoIterator<Item = LatticeVector<T>>) -> Result<Self> {
        let support: BTreeSet<_> = support.into_iter().collect();
        Self::validate(n, &support)?;
        Ok(Self {
            n,
            support,
            coefficients: None,
        })
    }

    /// Terms with zero coefficient are dropped.
    pub fn with_coefficients(
        n: usize,
        terms: impl IntoIterator<Item = (LatticeVector<T>, Ratio<T>)>,
    ) -> Result<Self> {
        let mut coefficients = BTreeMap::new();
        for (v, c) in terms {
            let entry = coefficients.entry(v).or_insert_with(|| Ratio::from_integer(T::zero()));
            *entry = entry.clone() + c;
        }
        coefficients.retain(|_, c: &mut Ratio<T>| !c.numer().is_zero());
        let support: BTreeSet<_> = coefficients.keys().cloned().collect();
        Self::validate(n, &support)?;
        Ok(Self {
            n,
            support,
            coefficients: Some(coefficients),
        })
    }

    pub fn from_int_points(n: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(n, points.iter().map(|p| LatticeVector::from_ints(p)))
    }

    fn validate(n: usize, support: &BTreeSet<LatticeVector<T>>) -> Result<()> {
        if n < 2 {
            return Err(Error::InvalidSupport(format!("need at least 2 variables, got {n}")));
        }
        if support.is_empty() {
            return Err(Error::InvalidSupport("empty support".into()));
        }
        for v in support {
            if v.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.dim(),
                });
            }
            if v.iter().any(|c| c.is_negative()) {
                return Err(Error::InvalidSupport(format!("negative exponent in {v}")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &BTreeSet<LatticeVector<T>> {
        &self.support
    }

    pub fn coefficients(&self) -> Option<&BTreeMap<LatticeVector<T>, Ratio<T>>> {
        self.coefficients.as_ref()
    }

    pub fn coefficient(&self, v: &LatticeVector<T>) -> Option<&Ratio<T>> {
        self.coefficients.as_ref()?.get(v)
    }
}
