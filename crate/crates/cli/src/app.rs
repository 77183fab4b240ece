use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monodromy_core::ehrhart::phi_psi_coefficients;
use monodromy_core::monodromy::{
    assemble_jordan_table, char_poly_from_zeta, check_nondegenerate_partial, eigenvalue_multiplicity,
    hodge_class_at_infinity, spectrum_via_hodge, zeta_at_infinity, Determinacy, NondegeneracyStatus,
};
use monodromy_core::oracle::{cross_check_suite, describe_support, random_convenient_support};
use monodromy_core::{BigInt, Newton, RootOfUnity, Support, ZetaFactorization};
use rayon::prelude::*;

use crate::error::{exit, CliError};
use crate::input::parse_support_json;
use crate::poly::parse_polynomial;
use crate::report::*;

#[derive(Debug, Parser)]
#[command(
    name = "monodromy",
    version,
    about = "Monodromy at infinity of convenient polynomials, computed exactly from the Newton polyhedron"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeta function at infinity as a product of (1-t^d)^e.
    Zeta(Common),
    /// Characteristic polynomial det(id - tΦ) and eigenvalue multiplicities.
    Charpoly(Common),
    /// Jordan blocks of the top monodromy at infinity.
    Jordan(WithEigenvalue),
    /// Spectrum at infinity.
    Spectrum(Common),
    /// Equivariant Hodge numbers of the class at infinity.
    Hodge(WithEigenvalue),
    /// Twisted Ehrhart series of the cones over the faces at infinity.
    Ehrhart(WithEigenvalue),
    /// Runs the invariant cross-checks on one input or on seeded random supports.
    Selfcheck(Selfcheck),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Polynomial in x1..xn (aliases x, y, z, w), e.g. "x^2 + y^3".
    #[arg(long, conflicts_with = "support_json")]
    pub poly: Option<String>,
    /// JSON file {"n": .., "support": [[..],..], "coefficients": [[num,den],..]}.
    #[arg(long, value_name = "FILE")]
    pub support_json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Common {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
    /// Trust non-degeneracy at infinity without checking (the default).
    #[arg(long, conflicts_with = "strict_nondegenerate")]
    pub assume_nondegenerate: bool,
    /// Check non-degeneracy: exit 1 if refuted, 3 if it cannot be verified.
    #[arg(long)]
    pub strict_nondegenerate: bool,
    /// Exit 3 instead of reporting partially determined results.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct WithEigenvalue {
    #[command(flatten)]
    pub common: Common,
    /// Restrict output to the eigenvalue exp(2πi k/d).
    #[arg(long, value_name = "k/d", value_parser = parse_eigenvalue)]
    pub eigenvalue: Option<RootOfUnity>,
}

#[derive(Debug, Args)]
pub struct Selfcheck {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
    /// Seed of the first random instance when no input is given.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random instances.
    #[arg(long, default_value_t = 20)]
    pub count: u64,
    /// Largest exponent in random supports.
    #[arg(long, default_value_t = 6)]
    pub max_coord: u64,
}

fn parse_eigenvalue(s: &str) -> Result<RootOfUnity, String> {
    s.parse()
}

/// Exit status and the full text destined for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (program name first). Nothing is written;
/// stdout stays empty whenever the exit status is nonzero.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: exit::PARSE, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: exit::SUCCESS, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let mut warnings = Vec::new();
    match execute(&cli.command, &mut warnings) {
        Ok(report) => {
            let stdout = match output_of(&cli.command).format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            let failed = matches!(&report, Report::Selfcheck(r) if r.failures > 0);
            let mut stderr = warnings.join("");
            if failed {
                stderr.push_str("selfcheck found failing invariants\n");
            }
            Outcome {
                code: if failed { exit::HYPOTHESIS } else { exit::SUCCESS },
                stdout,
                stderr,
            }
        }
        Err(e) => {
            warnings.push(format!("error: {e}\n"));
            Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr: warnings.join(""),
            }
        }
    }
}

fn output_of(command: &Command) -> &Output {
    match command {
        Command::Zeta(c) | Command::Charpoly(c) | Command::Spectrum(c) => &c.output,
        Command::Jordan(c) | Command::Hodge(c) | Command::Ehrhart(c) => &c.common.output,
        Command::Selfcheck(s) => &s.output,
    }
}

fn execute(command: &Command, warnings: &mut Vec<String>) -> Result<Report, CliError> {
    let jobs = output_of(command).jobs;
    match jobs {
        None => dispatch(command, warnings),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| CliError::Input(format!("cannot start {j} workers: {e}")))?
            .install(|| dispatch(command, warnings)),
    }
}

fn dispatch(command: &Command, warnings: &mut Vec<String>) -> Result<Report, CliError> {
    match command {
        Command::Zeta(c) => {
            let newton = prepare(c, warnings)?;
            let zeta = zeta_at_infinity(&newton)?;
            Ok(Report::Zeta(ZetaReport {
                n: newton.n(),
                degree: zeta.degree(),
                zeta,
            }))
        }
        Command::Charpoly(c) => {
            let newton = prepare(c, warnings)?;
            charpoly_report(&newton).map(Report::Charpoly)
        }
        Command::Jordan(c) => {
            let newton = prepare(&c.common, warnings)?;
            let report = jordan_report(&newton, c.eigenvalue)?;
            if c.common.strict && !report.complete {
                return Err(CliError::Indeterminate(
                    "the Jordan table is only partially determined".into(),
                ));
            }
            Ok(Report::Jordan(report))
        }
        Command::Spectrum(c) => {
            let newton = prepare(c, warnings)?;
            Ok(Report::Spectrum(SpectrumReport {
                n: newton.n(),
                spectrum: spectrum_via_hodge(&newton)?,
            }))
        }
        Command::Hodge(c) => {
            let newton = prepare(&c.common, warnings)?;
            let report = hodge_report(&newton, c.eigenvalue)?;
            if c.common.strict && !report.complete {
                return Err(CliError::Indeterminate(
                    "some Hodge numbers are not determined".into(),
                ));
            }
            Ok(Report::Hodge(report))
        }
        Command::Ehrhart(c) => {
            let newton = prepare(&c.common, warnings)?;
            ehrhart_report(&newton, c.eigenvalue).map(Report::Ehrhart)
        }
        Command::Selfcheck(s) => selfcheck_report(s).map(Report::Selfcheck),
    }
}

fn read_source(source: &Source) -> Result<Option<Support>, CliError> {
    match (&source.poly, &source.support_json) {
        (Some(text), _) => Ok(Some(parse_polynomial(text)?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            parse_support_json(&text).map(Some)
        }
        (None, None) => Ok(None),
    }
}

/// Reads the input and checks convenience and, if requested, non-degeneracy.
fn prepare(c: &Common, warnings: &mut Vec<String>) -> Result<Newton, CliError> {
    let spec = read_source(&c.source)?
        .ok_or_else(|| CliError::Input("one of --poly or --support-json is required".into()))?;
    let newton = Newton::new(spec)?;
    if !newton.is_convenient() {
        return Err(CliError::Hypothesis("the polynomial is not convenient".into()));
    }
    let status = check_nondegenerate_partial(&newton).overall();
    match (status, c.strict_nondegenerate) {
        (NondegeneracyStatus::Refuted, true) => {
            return Err(CliError::Hypothesis(
                "an edge restriction has a repeated factor, so the polynomial is degenerate at infinity".into(),
            ))
        }
        (NondegeneracyStatus::Assumed, true) => {
            return Err(CliError::Indeterminate(
                "non-degeneracy cannot be verified on faces of dimension two or more, or without coefficients".into(),
            ))
        }
        (NondegeneracyStatus::Refuted, false) => warnings.push(
            "warning: the polynomial is degenerate at infinity; results describe a generic polynomial with the same support\n"
                .into(),
        ),
        _ => {}
    }
    Ok(newton)
}

fn small(v: &BigInt) -> Result<i64, CliError> {
    i64::try_from(v).map_err(|_| CliError::Core(monodromy_core::Error::Overflow(v.to_string())))
}

/// Coefficients of `Π (1 - t^d)^e`, known to be a polynomial of degree
/// `degree`, computed as a power series modulo `t^{degree+1}`.
pub fn expand_factorization(z: &ZetaFactorization) -> Result<Vec<i64>, CliError> {
    let degree = usize::try_from(z.degree())
        .map_err(|_| CliError::Hypothesis(format!("{z} has negative degree")))?;
    let mut series = vec![BigInt::from(0); degree + 1];
    series[0] = BigInt::from(1);
    // divisions first keep the intermediate coefficients small
    let mut factors: Vec<(u64, i64)> = z.factors().iter().map(|(d, e)| (*d, *e)).collect();
    factors.sort_by_key(|(d, e)| (*e > 0, *d));
    for (d, e) in factors {
        let d = d as usize;
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                for i in (d..=degree).rev() {
                    let lower = series[i - d].clone();
                    series[i] -= lower;
                }
            } else {
                for i in d..=degree {
                    let lower = series[i - d].clone();
                    series[i] += lower;
                }
            }
        }
    }
    series.iter().map(small).collect()
}

fn charpoly_report(newton: &Newton) -> Result<CharpolyReport, CliError> {
    let zeta = zeta_at_infinity(newton)?;
    let cp = char_poly_from_zeta(&zeta, newton.n())?;
    let eigenvalues = cp
        .eigenvalues()
        .into_iter()
        .map(|a| Ok((a, eigenvalue_multiplicity(&cp, a)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(CharpolyReport {
        n: newton.n(),
        expanded: expand_factorization(&cp)?,
        degree: cp.degree(),
        charpoly: cp,
        eigenvalues,
    })
}

fn jordan_report(newton: &Newton, only: Option<RootOfUnity>) -> Result<JordanReport, CliError> {
    let table = assemble_jordan_table(newton)?;
    let mut groups: Vec<JordanGroup> = table
        .eigenvalues()
        .filter(|a| only.is_none_or(|b| b == *a))
        .map(|a| JordanGroup {
            eigenvalue: a,
            multiplicity: table.multiplicities.get(&a).copied().unwrap_or(0),
            blocks: table
                .blocks
                .iter()
                .filter(|((b, _), c)| *b == a && **c > 0)
                .map(|((_, s), c)| (*s, *c))
                .collect(),
            determinacy: table.determinacy[&a].clone(),
        })
        .collect();
    if let Some(a) = only {
        if groups.is_empty() {
            groups.push(JordanGroup {
                eigenvalue: a,
                multiplicity: 0,
                blocks: Vec::new(),
                determinacy: Determinacy::Complete,
            });
        }
    }
    Ok(JordanReport {
        n: table.n,
        complete: groups.iter().all(|g| g.determinacy == Determinacy::Complete),
        eigenvalues: groups,
    })
}

fn hodge_report(newton: &Newton, only: Option<RootOfUnity>) -> Result<HodgeReport, CliError> {
    let class = hodge_class_at_infinity(newton)?;
    let mut groups = Vec::new();
    for (alpha, grid) in class.iter() {
        if only.is_some_and(|b| b != alpha) {
            continue;
        }
        let extent = grid.extent();
        let rows = (0..extent).map(|p| small(&grid.row_sum(p))).collect::<Result<_, _>>()?;
        let cells = (0..extent)
            .map(|p| {
                (0..extent)
                    .map(|q| grid.cell(p, q).as_ref().map(small).transpose())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        groups.push(HodgeGroup {
            eigenvalue: alpha,
            rows,
            cells,
        });
    }
    Ok(HodgeReport {
        n: newton.n(),
        complete: groups.iter().all(|g| g.cells.iter().flatten().all(Option::is_some)),
        eigenvalues: groups,
    })
}

fn ehrhart_report(newton: &Newton, only: Option<RootOfUnity>) -> Result<EhrhartReport, CliError> {
    let n = newton.n();
    let faces = newton
        .faces_at_infinity()
        .par_iter()
        .map(|face| {
            let cone = face.cone_polytope();
            let data = phi_psi_coefficients(&cone, &face.character())?;
            let series = |table: &std::collections::BTreeMap<RootOfUnity, Vec<BigInt>>| {
                table
                    .iter()
                    .filter(|(a, _)| only.is_none_or(|b| b == **a))
                    .map(|(a, c)| {
                        Ok(EhrhartSeries {
                            eigenvalue: *a,
                            coefficients: c.iter().map(small).collect::<Result<_, _>>()?,
                        })
                    })
                    .collect::<Result<Vec<_>, CliError>>()
            };
            let vertices = face
                .vertices
                .iter()
                .map(|v| v.coords().iter().map(small).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let volume = face.polytope().normalized_volume();
            Ok(EhrhartFace {
                vertices,
                dim: face.dim(),
                distance: face.distance,
                volume: u64::try_from(&volume)
                    .map_err(|_| CliError::Core(monodromy_core::Error::Overflow(volume.to_string())))?,
                interior: face.is_interior(n),
                phi: series(&data.phi)?,
                psi: series(&data.psi)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(EhrhartReport { n, faces })
}

fn selfcheck_report(s: &Selfcheck) -> Result<SelfcheckReport, CliError> {
    let specs: Vec<Support> = match read_source(&s.source)? {
        Some(spec) => vec![spec],
        None => (0..s.count)
            .map(|i| {
                let seed = s.seed.wrapping_add(i);
                random_convenient_support::<BigInt>(2 + (seed % 2) as usize, s.max_coord, seed)
            })
            .collect::<Result<_, _>>()?,
    };
    let per_instance: Vec<_> = specs.par_iter().map(cross_check_suite).collect();
    let reports: Vec<_> = per_instance.into_iter().flatten().collect();
    Ok(SelfcheckReport {
        instances: specs.iter().map(describe_support).collect(),
        checks: reports.len(),
        failures: reports.iter().filter(|r| !r.passed).count(),
        reports,
    })
}
