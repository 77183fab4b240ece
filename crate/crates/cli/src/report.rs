//! Serializable reports for every subcommand and their text rendering.
//!
//! Every report derives both `Serialize` and `Deserialize`, so emitted JSON
//! can be read back into the same structure and re-emitted unchanged.

use std::fmt::Write as _;

use monodromy_core::monodromy::Determinacy;
use monodromy_core::oracle::CheckReport;
use monodromy_core::{RootOfUnity, SpectrumPoly, ZetaFactorization};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub n: usize,
    pub zeta: ZetaFactorization,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharpolyReport {
    pub n: usize,
    /// `det(id - tΦ)` as a product of `(1 - t^d)^e`.
    pub charpoly: ZetaFactorization,
    /// Coefficients of `det(id - tΦ)` in increasing degree.
    pub expanded: Vec<i64>,
    pub degree: i64,
    /// Eigenvalues `exp(2πi β)` keyed by `β`, with multiplicities.
    pub eigenvalues: Vec<(RootOfUnity, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanGroup {
    pub eigenvalue: RootOfUnity,
    pub multiplicity: u64,
    /// `(size, count)` for every determined size with a nonzero count.
    pub blocks: Vec<(usize, u64)>,
    pub determinacy: Determinacy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanReport {
    pub n: usize,
    pub complete: bool,
    pub eigenvalues: Vec<JordanGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub spectrum: SpectrumPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeGroup {
    pub eigenvalue: RootOfUnity,
    /// `Σ_q e^{p,q}` for each `p`.
    pub rows: Vec<i64>,
    /// `cells[p][q] = e^{p,q}`, `null` where not determined.
    pub cells: Vec<Vec<Option<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeReport {
    pub n: usize,
    pub complete: bool,
    pub eigenvalues: Vec<HodgeGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartSeries {
    pub eigenvalue: RootOfUnity,
    pub coefficients: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartFace {
    pub vertices: Vec<Vec<i64>>,
    pub dim: usize,
    pub distance: u64,
    pub volume: u64,
    /// Relative interior lies in the open positive orthant.
    pub interior: bool,
    /// Numerators of the interior-point series of the cone over the face.
    pub phi: Vec<EhrhartSeries>,
    /// Numerators of the closed-point series of the cone over the face.
    pub psi: Vec<EhrhartSeries>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartReport {
    pub n: usize,
    pub faces: Vec<EhrhartFace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfcheckReport {
    pub instances: Vec<String>,
    pub checks: usize,
    pub failures: usize,
    pub reports: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Zeta(ZetaReport),
    Charpoly(CharpolyReport),
    Jordan(JordanReport),
    Spectrum(SpectrumReport),
    Hodge(HodgeReport),
    Ehrhart(EhrhartReport),
    Selfcheck(SelfcheckReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Zeta(r) => writeln!(out, "{}", r.zeta),
            Report::Charpoly(r) => charpoly_text(&mut out, r),
            Report::Jordan(r) => jordan_text(&mut out, r),
            Report::Spectrum(r) => writeln!(out, "{}", r.spectrum),
            Report::Hodge(r) => hodge_text(&mut out, r),
            Report::Ehrhart(r) => ehrhart_text(&mut out, r),
            Report::Selfcheck(r) => selfcheck_text(&mut out, r),
        }
        .expect("writing to a string");
        out
    }
}

/// Renders `c₀ + c₁ t + …` as "1 - t + t^2".
pub fn polynomial_text(coefficients: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in coefficients.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let magnitude = c.unsigned_abs();
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        let power = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        match (magnitude, power.is_empty()) {
            (_, true) => s.push_str(&magnitude.to_string()),
            (1, false) => s.push_str(&power),
            (m, false) => s.push_str(&format!("{m}*{power}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn charpoly_text(out: &mut String, r: &CharpolyReport) -> std::fmt::Result {
    writeln!(out, "{}", r.charpoly)?;
    writeln!(out, "= {}", polynomial_text(&r.expanded))?;
    writeln!(out, "degree {}", r.degree)?;
    for (alpha, m) in &r.eigenvalues {
        writeln!(out, "eigenvalue {alpha}: multiplicity {m}")?;
    }
    Ok(())
}

fn determinacy_text(d: &Determinacy) -> String {
    match d {
        Determinacy::Complete => "complete".to_string(),
        Determinacy::Partial { sizes } => {
            let sizes: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
            format!("partial, sizes determined: {}", sizes.join(", "))
        }
    }
}

fn jordan_text(out: &mut String, r: &JordanReport) -> std::fmt::Result {
    if r.eigenvalues.is_empty() {
        writeln!(out, "no Jordan blocks")?;
    }
    for g in &r.eigenvalues {
        writeln!(
            out,
            "eigenvalue {}: multiplicity {}, {}",
            g.eigenvalue,
            g.multiplicity,
            determinacy_text(&g.determinacy)
        )?;
        for (size, count) in &g.blocks {
            writeln!(out, "  J{size} x {count}")?;
        }
    }
    Ok(())
}

fn hodge_text(out: &mut String, r: &HodgeReport) -> std::fmt::Result {
    for g in &r.eigenvalues {
        writeln!(out, "eigenvalue {}", g.eigenvalue)?;
        let cell = |v: &Option<i64>| v.map_or("?".to_string(), |x| x.to_string());
        let width = g
            .cells
            .iter()
            .flatten()
            .map(|v| cell(v).len())
            .chain(g.rows.iter().map(|v| v.to_string().len()))
            .max()
            .unwrap_or(1)
            .max(3);
        write!(out, "  {:>3}", "p\\q")?;
        for q in 0..g.cells.len() {
            write!(out, " {q:>width$}")?;
        }
        writeln!(out, " | {:>width$}", "sum")?;
        for (p, row) in g.cells.iter().enumerate() {
            write!(out, "  {p:>3}")?;
            for v in row {
                write!(out, " {:>width$}", cell(v))?;
            }
            writeln!(out, " | {:>width$}", g.rows[p])?;
        }
    }
    Ok(())
}

fn ehrhart_text(out: &mut String, r: &EhrhartReport) -> std::fmt::Result {
    for f in &r.faces {
        let vs: Vec<String> = f
            .vertices
            .iter()
            .map(|v| {
                let c: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", c.join(","))
            })
            .collect();
        writeln!(
            out,
            "face {}: dim {}, distance {}, volume {}{}",
            vs.join(" "),
            f.dim,
            f.distance,
            f.volume,
            if f.interior { ", interior" } else { "" }
        )?;
        for (label, rows) in [("phi", &f.phi), ("psi", &f.psi)] {
            for s in rows.iter() {
                writeln!(out, "  {label}[{}] = {}", s.eigenvalue, polynomial_text(&s.coefficients))?;
            }
        }
    }
    Ok(())
}

fn selfcheck_text(out: &mut String, r: &SelfcheckReport) -> std::fmt::Result {
    for c in r.reports.iter().filter(|c| !c.passed) {
        writeln!(out, "FAIL {} on {}: {} != {}", c.check, c.instance, c.left, c.right)?;
    }
    writeln!(
        out,
        "{} instances, {} checks, {} failures",
        r.instances.len(),
        r.checks,
        r.failures
    )
}
