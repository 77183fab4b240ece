//! JSON description of a support: `{"n": 2, "support": [[2,0],[0,3]],
//! "coefficients": [[1,1],[-3,2]]}` with coefficients optional and aligned
//! with the support. Entries must fit in 64 bits.

use monodromy_core::{BigInt, Support, Vector};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportJson {
    pub n: usize,
    pub support: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<(i64, i64)>>,
}

impl SupportJson {
    pub fn into_support(self) -> Result<Support, CliError> {
        let points: Vec<Vector> = self.support.iter().map(|v| Vector::from_ints(v)).collect();
        let spec = match self.coefficients {
            None => Support::new(self.n, points),
            Some(coeffs) => {
                if coeffs.len() != points.len() {
                    return Err(CliError::Input(format!(
                        "{} coefficients for {} support points",
                        coeffs.len(),
                        points.len()
                    )));
                }
                let mut terms = Vec::with_capacity(points.len());
                for (v, (num, den)) in points.into_iter().zip(coeffs) {
                    if den == 0 {
                        return Err(CliError::Input("coefficient with zero denominator".into()));
                    }
                    terms.push((v, BigRational::new(BigInt::from(num), BigInt::from(den))));
                }
                Support::with_coefficients(self.n, terms)
            }
        };
        spec.map_err(|e| CliError::Input(e.to_string()))
    }
}

pub fn parse_support_json(text: &str) -> Result<Support, CliError> {
    let parsed: SupportJson = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    parsed.into_support()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_supports() {
        let s = parse_support_json(r#"{"n": 2, "support": [[2,0],[0,3]]}"#).unwrap();
        assert_eq!(s.support().len(), 2);
        assert!(s.coefficients().is_none());
        let s = parse_support_json(r#"{"n": 2, "support": [[2,0],[0,3],[1,1]], "coefficients": [[1,1],[3,2],[0,1]]}"#)
            .unwrap();
        assert_eq!(s.coefficients().unwrap().len(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            r#"{"n": 2}"#,
            r#"{"n": 2, "support": [[2,0,1]]}"#,
            r#"{"n": 2, "support": [[-1,0]]}"#,
            r#"{"n": 2, "support": [[2,0]], "coefficients": []}"#,
            r#"{"n": 2, "support": [[2,0]], "coefficients": [[1,0]]}"#,
            r#"{"n": 2, "support": [[2,0]], "extra": 1}"#,
            "not json",
        ] {
            assert!(matches!(parse_support_json(bad), Err(CliError::Input(_))), "{bad}");
        }
    }
}
