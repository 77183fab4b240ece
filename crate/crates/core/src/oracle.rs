//! Brute-force validators and cross-checks that use algorithms independent
//! of the primary code paths.

use std::collections::HashSet;
use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ehrhart::{phi_psi_coefficients, twisted_count, RootOfUnity, TwistedCharacter};
use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, IntMatrix, LatticePolytope, LatticeVector, PullOrder};
use crate::monodromy::{
    antidiagonal_symmetric, assemble_jordan_table, char_poly_from_zeta, hodge_class_at_infinity,
    jordan_counts_from_class, jordan_subtop_eigenone, max_block_size, spectrum_from_class,
    spectrum_via_cones, weight_symmetric, zeta_at_infinity, Determinacy, NewtonAtInfinity,
    SupportSpec,
};
use crate::scalar::Scalar;

/// Largest dilation accepted by [`count_by_triangulation`].
pub const MAX_ORACLE_DILATION: u64 = 4;
/// Largest intrinsic dimension accepted by [`count_by_triangulation`].
pub const MAX_ORACLE_DIM: usize = 4;

/// Counts lattice points of `k P` (or its relative interior) by enumerating
/// each simplex of a pulling triangulation through the fundamental
/// parallelepiped of its homogenized cone.
pub fn count_by_triangulation<T: Scalar>(
    p: &LatticePolytope<T>,
    k: u64,
    interior_only: bool,
) -> Result<u64> {
    if k > MAX_ORACLE_DILATION || p.dim() > MAX_ORACLE_DIM {
        return Err(Error::ResourceCap(format!(
            "triangulation count limited to k <= {MAX_ORACLE_DILATION} and dim <= {MAX_ORACLE_DIM}, got k = {k}, dim = {}",
            p.dim()
        )));
    }
    let r = p.dim();
    if r == 0 {
        return Ok(1);
    }
    let local = p.local_vertices();
    let facets: Vec<&[usize]> = p.facets().iter().map(|f| f.vertices.as_slice()).collect();
    let mut seen: HashSet<Vec<T>> = HashSet::new();
    for simplex in p.pulling_triangulation(PullOrder::LastVertex) {
        let columns: Vec<Vec<T>> = simplex
            .iter()
            .map(|&i| std::iter::once(T::one()).chain(local[i].iter().cloned()).collect())
            .collect();
        let m = IntMatrix::from_columns(&columns, r + 1);
        for (point, carrier) in simplex_points(&m, k) {
            let on_boundary = facets
                .iter()
                .any(|f| carrier.iter().all(|&j| f.binary_search(&simplex[j]).is_ok()));
            if !(interior_only && on_boundary) {
                seen.insert(point);
            }
        }
    }
    Ok(seen.len() as u64)
}

fn adjugate<T: Scalar>(m: &IntMatrix<T>) -> IntMatrix<T> {
    let n = m.rows();
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<T>> = (0..n)
                .filter(|&a| a != j)
                .map(|a| (0..n).filter(|&b| b != i).map(|b| m.get(a, b).clone()).collect())
                .collect();
            let det = IntMatrix::from_rows(&minor, n - 1).determinant();
            adj.set(i, j, if (i + j) % 2 == 0 { det } else { -det });
        }
    }
    adj
}

/// Lattice points at height `k` of the cone over a full-rank simplex whose
/// homogenized vertices are the columns of `m`, each with the indices of the
/// simplex vertices carrying it.
fn simplex_points<T: Scalar>(m: &IntMatrix<T>, k: u64) -> Vec<(Vec<T>, Vec<usize>)> {
    let size = m.rows();
    let mut det = m.determinant();
    let mut adj = adjugate(m);
    if det.is_negative() {
        det = -det;
        for i in 0..size {
            for j in 0..size {
                let v = -adj.get(i, j).clone();
                adj.set(i, j, v);
            }
        }
    }
    let snf = smith_normal_form(m);
    let diag: Vec<u64> = snf
        .diagonal
        .iter()
        .map(|d| d.abs().to_u64().expect("invariant factor fits"))
        .collect();
    let kk = T::from_count(k);
    let mut out = Vec::new();
    let mut digits = vec![0u64; size];
    loop {
        let a: Vec<T> = digits.iter().map(|&x| T::from_count(x)).collect();
        let p = snf.u_inv.mul_vec(&a);
        let fracs: Vec<T> = adj.mul_vec(&p).iter().map(|c| c.mod_floor(&det)).collect();
        let base: Vec<T> = m.mul_vec(&fracs).into_iter().map(|x| x / det.clone()).collect();
        let h = base[0].clone();
        if h <= kk {
            let rest = (kk.clone() - h).to_u64().expect("nonnegative");
            let base_support: Vec<bool> = fracs.iter().map(|f| !f.is_zero()).collect();
            for_each_composition(rest, size, &mut |mult| {
                let mut point = base.clone();
                for (j, &c) in mult.iter().enumerate() {
                    if c > 0 {
                        let cc = T::from_count(c);
                        for (i, x) in point.iter_mut().enumerate() {
                            *x = x.clone() + cc.clone() * m.get(i, j).clone();
                        }
                    }
                }
                let carrier = (0..size).filter(|&j| base_support[j] || mult[j] > 0).collect();
                out.push((point, carrier));
            });
        }
        // next element of the product of cyclic groups
        let mut j = 0;
        while j < size {
            digits[j] += 1;
            if digits[j] < diag[j] {
                break;
            }
            digits[j] = 0;
            j += 1;
        }
        if j == size {
            break;
        }
    }
    out
}

fn for_each_composition(total: u64, parts: usize, visit: &mut impl FnMut(&[u64])) {
    fn go(left: u64, slot: usize, buf: &mut Vec<u64>, visit: &mut impl FnMut(&[u64])) {
        if slot + 1 == buf.len() {
            buf[slot] = left;
            visit(buf);
            return;
        }
        for c in 0..=left {
            buf[slot] = c;
            go(left - c, slot + 1, buf, visit);
        }
    }
    let mut buf = vec![0; parts];
    go(total, 0, &mut buf, visit);
}

/// Outcome of one invariant check; failures carry both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub passed: bool,
    pub left: String,
    pub right: String,
}

impl CheckReport {
    fn compare<A: PartialEq<B> + Display, B: Display>(
        check: &str,
        instance: &str,
        left: A,
        right: B,
    ) -> Self {
        Self {
            check: check.to_string(),
            instance: instance.to_string(),
            passed: left == right,
            left: left.to_string(),
            right: right.to_string(),
        }
    }

    fn holds(check: &str, instance: &str, ok: bool) -> Self {
        Self::compare(check, instance, ok, true)
    }

    fn error(check: &str, instance: &str, e: &Error) -> Self {
        Self {
            check: check.to_string(),
            instance: instance.to_string(),
            passed: false,
            left: e.to_string(),
            right: "no error".to_string(),
        }
    }
}

/// Deliberate corruption used to show that the suite detects bad tables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Adds one to the first stored twisted Ehrhart coefficient.
    CorruptPhi,
}

/// Largest dilation used by the Ehrhart checks of the suite.
const SUITE_DILATION: u64 = 3;

pub fn describe_support<T: Scalar>(spec: &SupportSpec<T>) -> String {
    let pts: Vec<String> = spec.support().iter().map(|v| v.to_string()).collect();
    format!("n={} support {{{}}}", spec.n(), pts.join(","))
}

pub fn cross_check_suite<T: Scalar>(spec: &SupportSpec<T>) -> Vec<CheckReport> {
    cross_check_suite_with(spec, Fault::None)
}

/// Runs every invariant on one support; failures are reported, never raised.
pub fn cross_check_suite_with<T: Scalar>(spec: &SupportSpec<T>, fault: Fault) -> Vec<CheckReport> {
    let name = describe_support(spec);
    let mut reports = Vec::new();
    let newton = match NewtonAtInfinity::new(spec.clone()) {
        Ok(g) => g,
        Err(e) => return vec![CheckReport::error("newton polyhedron", &name, &e)],
    };
    let convenient = newton.is_convenient();
    reports.push(CheckReport::holds("convenient", &name, convenient));
    if !convenient {
        return reports;
    }
    let mut fault_pending = fault == Fault::CorruptPhi;
    for f in newton.faces_at_infinity() {
        let delta = f.cone_polytope();
        let chi = f.character();
        let label = format!("{name}, face {}", f.polytope().vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-"));
        ehrhart_checks(&delta, &chi, &label, &mut fault_pending, &mut reports);
    }
    let n = newton.n();
    let result = (|| -> Result<()> {
        let cp = char_poly_from_zeta(&zeta_at_infinity(&newton)?, n)?;
        let class = hodge_class_at_infinity(&newton)?;
        let via_hodge = spectrum_from_class(&class, n)?;
        let via_cones = spectrum_via_cones(&newton)?;
        reports.push(CheckReport::compare("spectrum two paths", &name, &via_hodge, &via_cones));
        reports.push(CheckReport::holds("spectrum symmetry", &name, via_hodge.is_symmetric(n)));
        reports.push(CheckReport::holds("spectrum support", &name, via_hodge.support_within(n)));
        reports.push(CheckReport::compare("spectrum mass", &name, via_hodge.mass(), cp.degree()));
        reports.push(CheckReport::compare(
            "top unit",
            &name,
            class.get(n - 1, n - 1, RootOfUnity::ONE).map_or("undetermined".into(), |v| v.to_string()),
            "1",
        ));
        reports.push(CheckReport::holds("weight symmetry", &name, weight_symmetric(&class, n)));
        reports.push(CheckReport::holds(
            "antidiagonal symmetry",
            &name,
            antidiagonal_symmetric(&class, n),
        ));
        reports.push(CheckReport::holds("conjugation symmetry", &name, class.conjugation_symmetric()));
        if n >= 3 {
            let sub = jordan_subtop_eigenone(&newton)?;
            reports.push(CheckReport::compare("subtop evenness", &name, sub % 2, 0));
        }
        for alpha in cp.eigenvalues() {
            let bound = max_block_size(n, alpha);
            let counts: Vec<Option<i64>> = (1..=bound + 1)
                .map(|k| jordan_counts_from_class(&class, n, alpha, k).ok())
                .collect();
            let known: Vec<i64> = counts.iter().flatten().copied().collect();
            reports.push(CheckReport::holds(
                &format!("counts nonnegative at {alpha}"),
                &name,
                known.iter().all(|&c| c >= 0),
            ));
            reports.push(CheckReport::holds(
                &format!("counts nonincreasing at {alpha}"),
                &name,
                counts.windows(2).all(|w| match (w[0], w[1]) {
                    (Some(a), Some(b)) => a >= b,
                    _ => true,
                }),
            ));
            reports.push(CheckReport::compare(
                &format!("size bound at {alpha}"),
                &name,
                counts.last().copied().flatten().unwrap_or(0),
                0,
            ));
        }
        match assemble_jordan_table(&newton) {
            Ok(table) => {
                for (alpha, det) in &table.determinacy {
                    if *det == Determinacy::Complete {
                        reports.push(CheckReport::compare(
                            &format!("jordan dimension at {alpha}"),
                            &name,
                            table.dimension(*alpha),
                            table.multiplicities[alpha],
                        ));
                    }
                }
                let bounded = table
                    .blocks
                    .keys()
                    .all(|(alpha, size)| *size <= max_block_size(n, *alpha));
                reports.push(CheckReport::holds("jordan size bounds", &name, bounded));
            }
            Err(e) => reports.push(CheckReport::error("jordan pipelines agree", &name, &e)),
        }
        Ok(())
    })();
    if let Err(e) = result {
        reports.push(CheckReport::error("invariant computation", &name, &e));
    }
    reports
}

/// Reciprocity, duality, enumeration agreement and oracle counts for one
/// twisted polytope.
pub fn ehrhart_checks<T: Scalar>(
    delta: &LatticePolytope<T>,
    chi: &TwistedCharacter<T>,
    label: &str,
    fault_pending: &mut bool,
    reports: &mut Vec<CheckReport>,
) {
    let mut data = match phi_psi_coefficients(delta, chi) {
        Ok(d) => d,
        Err(e) => {
            reports.push(CheckReport::error("twisted Ehrhart series", label, &e));
            return;
        }
    };
    if std::mem::take(fault_pending) {
        if let Some(row) = data.phi.values_mut().next() {
            row[0] = row[0].clone() + T::one();
        }
    }
    for k in 1..=SUITE_DILATION as i64 {
        reports.push(CheckReport::holds(
            &format!("reciprocity k={k}"),
            label,
            data.reciprocity_holds(k),
        ));
    }
    reports.push(CheckReport::holds("duality", label, data.duality_holds()));
    let base = delta.base().clone();
    for k in 0..=SUITE_DILATION {
        let (Ok(interior), Ok(closed)) = (
            twisted_count(delta, chi, k, true, &base),
            twisted_count(delta, chi, k, false, &base),
        ) else {
            continue;
        };
        let regenerated = data.eigenvalues().into_iter().all(|a| {
            let star = if k == 0 { 0 } else { interior.get(a) };
            data.interior_count(a, k as i64) == T::from_count(star)
                && data.closed_count_polynomial(a, k as i64) == T::from_count(closed.get(a))
        });
        reports.push(CheckReport::holds(
            &format!("series regenerates counts k={k}"),
            label,
            regenerated,
        ));
        if delta.dim() <= MAX_ORACLE_DIM {
            for interior_only in [false, true] {
                let check = format!(
                    "oracle count k={k}{}",
                    if interior_only { " interior" } else { "" }
                );
                match count_by_triangulation(delta, k, interior_only) {
                    Ok(c) => reports.push(CheckReport::compare(
                        &check,
                        label,
                        c,
                        delta.count_lattice_points(k, interior_only),
                    )),
                    Err(e) => reports.push(CheckReport::error(&check, label, &e)),
                }
            }
        }
    }
}

/// Deterministic support with an axis point on every axis plus a few
/// random points, so the result is always convenient.
pub fn random_convenient_support<T: Scalar>(
    n: usize,
    max_coord: u64,
    seed: u64,
) -> Result<SupportSpec<T>> {
    if !(2..=4).contains(&n) || max_coord == 0 {
        return Err(Error::InvalidSupport(format!(
            "random supports need n in 2..=4 and a positive coordinate bound, got n = {n}, bound = {max_coord}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    for i in 0..n {
        let c = rng.gen_range(1..=max_coord);
        let mut v = vec![T::zero(); n];
        v[i] = T::from_count(c);
        points.push(LatticeVector::new(v));
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let v: Vec<T> = (0..n)
            .map(|_| T::from_count(rng.gen_range(1..=max_coord)))
            .collect();
        points.push(LatticeVector::new(v));
    }
    SupportSpec::new(n, points)
}

/// Random lattice polytope of intrinsic dimension at most `ambient_dim`
/// with a character that is trivial on its vertex differences.
pub fn random_twisted_polytope<T: Scalar>(
    ambient_dim: usize,
    max_coord: i64,
    seed: u64,
) -> (LatticePolytope<T>, TwistedCharacter<T>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modulus: u64 = rng.gen_range(1..=6);
    let covector: Vec<i64> = (0..ambient_dim).map(|_| rng.gen_range(-3..=3)).collect();
    let base: Vec<i64> = (0..ambient_dim)
        .map(|_| rng.gen_range(0..=max_coord))
        .collect();
    let residue = |v: &[i64]| {
        v.iter()
            .zip(&covector)
            .map(|(a, b)| a * b)
            .sum::<i64>()
            .rem_euclid(modulus as i64)
    };
    let target = residue(&base);
    let count = rng.gen_range(1..=ambient_dim + 2);
    let mut points = vec![base];
    while points.len() <= count {
        let v: Vec<i64> = (0..ambient_dim)
            .map(|_| rng.gen_range(0..=max_coord))
            .collect();
        if residue(&v) == target {
            points.push(v);
        }
    }
    let vectors: Vec<LatticeVector<T>> = points.iter().map(|p| LatticeVector::from_ints(p)).collect();
    let polytope = LatticePolytope::convex_hull(&vectors).expect("nonempty point set");
    let chi = TwistedCharacter::new(LatticeVector::from_ints(&covector), modulus)
        .expect("positive modulus");
    (polytope, chi)
}
