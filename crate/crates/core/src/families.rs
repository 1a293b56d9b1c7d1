//! Ready-made field specifications: the rationals, quadratic fields, and
//! non-Galois cubic fields with group `S3`, each with exact local data at
//! the primes dividing the polynomial discriminant.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::bounds::ConductorData;
use crate::error::{Error, Result};
use crate::exceptional::{is_fundamental, kronecker};
use crate::group::builtin;
use crate::splitting::{FieldSpec, OverrideIdeal, RamifiedOverride};
use crate::GroupTable;

/// Local data at one rational prime: per irreducible name, the Frobenius
/// eigenvalues on the inertia invariants, all real here.
fn override_at(table: &GroupTable, p: u64, values: &[(&str, &[f64])]) -> Result<RamifiedOverride> {
    let mut eigenvalues = vec![None; table.num_irreducibles()];
    for (name, ev) in values {
        let i = table.irreducible_index(name)?;
        eigenvalues[i] = Some(ev.iter().map(|&x| Complex::new(x, 0.0)).collect());
    }
    Ok(RamifiedOverride { ideals: vec![OverrideIdeal { norm: p, eigenvalues }] })
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Q` itself, as the degree one field `x` with trivial group.
pub fn rationals() -> Result<FieldSpec> {
    FieldSpec::new("Q", vec![0, 1], builtin("C1")?, 1, &[(&[1], "e")], BTreeMap::new())
}

/// `Q(sqrt d)` for a fundamental discriminant `d`, defined by the minimal
/// polynomial of its ring of integers' generator so `disc(f) = d`.
pub fn quadratic_field(d: i64) -> Result<FieldSpec> {
    if !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    let poly = if d.rem_euclid(4) == 0 { vec![-d / 4, 0, 1] } else { vec![(1 - d) / 4, -1, 1] };
    let c2 = builtin("C2")?;
    let mut overrides = BTreeMap::new();
    for p in prime_factors(d.unsigned_abs()) {
        overrides.insert(p, override_at(&c2, p, &[("1", &[1.0]), ("chi1", &[])])?);
    }
    FieldSpec::new(format!("Q(sqrt({d}))"), poly, c2, 1, &[(&[1, 1], "e"), (&[2], "g")], overrides)
}

/// Conductors of `Q(sqrt d)`: `q(1) = 1`, `q(chi_d) = |d|`, `D_K = |d|`.
pub fn quadratic_conductors(d: i64) -> ConductorData {
    let q = d.unsigned_abs() as f64;
    ConductorData {
        conductors: [(0, 1.0), (1, q)].into_iter().collect(),
        disc_closure: Some(q),
        disc_base: 1.0,
        base_degree: 1,
    }
}

/// Fundamental discriminants with `lo <= d <= hi`.
pub fn fundamental_discriminants(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).filter(|&d| is_fundamental(d)).collect()
}

/// A non-Galois cubic field with closure group `S3`.
#[derive(Clone, Debug)]
pub struct CubicField {
    pub spec: FieldSpec,
    /// Field discriminant `D_F = d f^2`.
    pub disc_field: i64,
    /// Discriminant of the quadratic resolvent field.
    pub d: i64,
    pub f: u64,
}

impl CubicField {
    /// `q(1) = 1`, `q(sgn) = |d|`, `q(std) = |D_F|`, and
    /// `D_K = q(sgn) q(std)^2` for the sextic closure.
    pub fn conductors(&self) -> ConductorData {
        let table = &self.spec.group;
        let qs = self.d.unsigned_abs() as f64;
        let qf = self.disc_field.unsigned_abs() as f64;
        let idx = |n: &str| table.irreducible_index(n).expect("S3 names");
        ConductorData {
            conductors: [(idx("1"), 1.0), (idx("sgn"), qs), (idx("std"), qf)].into_iter().collect(),
            disc_closure: Some(qs * qf * qf),
            disc_base: 1.0,
            base_degree: 1,
        }
    }
}

/// Factorization patterns of a cubic to `S3` classes.
const S3_PATTERNS: [(&[u32], &str); 3] = [(&[1, 1, 1], "e"), (&[1, 2], "c2"), (&[3], "c3")];

fn s3_cubic(label: &str, poly: Vec<i64>, d: i64, f: u64, overrides: BTreeMap<u64, RamifiedOverride>) -> Result<CubicField> {
    let spec = FieldSpec::new(label, poly, builtin("S3")?, 1, &S3_PATTERNS, overrides)?;
    Ok(CubicField { spec, disc_field: d * (f * f) as i64, d, f })
}

/// A cubic of prime discriminant `-q`: `q` is tamely ramified with inertia
/// of order 2 and trivial Frobenius on the invariants.
fn prime_disc_cubic(label: &str, poly: Vec<i64>, q: u64) -> Result<CubicField> {
    let s3 = builtin("S3")?;
    let ov = override_at(&s3, q, &[("1", &[1.0]), ("sgn", &[]), ("std", &[1.0])])?;
    s3_cubic(label, poly, -(q as i64), 1, [(q, ov)].into_iter().collect())
}

/// `x^3 - x - 1`, discriminant `-23`.
pub fn x3_minus_x_minus_1() -> Result<CubicField> {
    prime_disc_cubic("x^3-x-1", vec![-1, -1, 0, 1], 23)
}

/// `x^3 + x - 1`, discriminant `-31`.
pub fn x3_plus_x_minus_1() -> Result<CubicField> {
    prime_disc_cubic("x^3+x-1", vec![-1, 1, 0, 1], 31)
}

/// `x^3 - m` for squarefree `m >= 2` with `m != +-1 mod 9`, where
/// `D_F = -27 m^2` and the closure contains `Q(sqrt -3)`.
///
/// Every prime dividing `3m` is totally ramified in the cubic field. For
/// `p | m`, `p != 3`, inertia is the 3-cycle subgroup and Frobenius acts
/// on `sgn` by `chi_-3(p)`; at 3 inertia is all of `S3`.
pub fn pure_cubic(m: u64) -> Result<CubicField> {
    if m < 2 || prime_factors(m).iter().any(|&p| m.is_multiple_of(p * p)) || matches!(m % 9, 1 | 8) {
        return Err(Error::InvalidField(format!("x^3 - {m}: need squarefree m >= 2 with m != +-1 mod 9")));
    }
    let s3 = builtin("S3")?;
    let mut overrides = BTreeMap::new();
    overrides.insert(3, override_at(&s3, 3, &[("1", &[1.0]), ("sgn", &[]), ("std", &[])])?);
    for p in prime_factors(m).into_iter().filter(|&p| p != 3) {
        let s = kronecker(-3, p) as f64;
        overrides.insert(p, override_at(&s3, p, &[("1", &[1.0]), ("sgn", &[s]), ("std", &[])])?);
    }
    let mi = i64::try_from(m).map_err(|_| Error::InvalidField(format!("m = {m} too large")))?;
    s3_cubic(&format!("x^3-{m}"), vec![-mi, 0, 0, 1], -3, 3 * m, overrides)
}

/// `x^3 - 2`, discriminant `-108`.
pub fn x3_minus_2() -> Result<CubicField> {
    pure_cubic(2)
}

/// The first `count` admissible `m` for [`pure_cubic`].
pub fn pure_cubic_parameters(count: usize) -> Vec<u64> {
    (2u64..)
        .filter(|&m| !matches!(m % 9, 1 | 8) && prime_factors(m).iter().all(|&p| m % (p * p) != 0))
        .take(count)
        .collect()
}
