//! Splitting of rational primes in a field given by a monic polynomial.
//!
//! For `p` not dividing `disc(f)` the factorization pattern of `f mod p`
//! is the cycle type of Frobenius on the roots, which a [`FieldSpec`] maps
//! to a conjugacy class of the declared Galois group. Primes dividing
//! `disc(f)` get no class; they either carry explicit local data from the
//! spec or are bracketed downstream.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{builtin, GroupTable, GroupTableDoc, ValueDoc};
use crate::poly;
use crate::sieve;

/// Primes up to this bound are used to certify irreducibility of `f`.
pub const IRREDUCIBILITY_BOUND: u64 = 2000;

/// Primes per parallel work unit when building prime records.
const RECORD_CHUNK: usize = 1 << 12;

/// Local data at one prime ideal above a ramified `p`: its norm and, per
/// irreducible, the eigenvalues of Frobenius on the inertia invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct OverrideIdeal {
    pub norm: u64,
    /// Indexed like the table's irreducibles; `None` when not supplied.
    pub eigenvalues: Vec<Option<Vec<Complex<f64>>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamifiedOverride {
    pub ideals: Vec<OverrideIdeal>,
}

/// A number field (or the closure data needed for its L-functions).
#[derive(Clone, Debug)]
pub struct FieldSpec {
    pub label: String,
    /// Monic defining polynomial, constant term first.
    pub poly: Vec<i64>,
    pub group: Arc<GroupTable>,
    pub base_degree: u32,
    /// Sorted factor degrees to class index.
    pub class_of_pattern: BTreeMap<Vec<u32>, usize>,
    pub disc: BigInt,
    pub ramified_overrides: BTreeMap<u64, RamifiedOverride>,
}

impl FieldSpec {
    /// Builds a spec; `patterns` pairs degree lists with class ids.
    pub fn new(
        label: impl Into<String>,
        poly: Vec<i64>,
        group: Arc<GroupTable>,
        base_degree: u32,
        patterns: &[(&[u32], &str)],
        ramified_overrides: BTreeMap<u64, RamifiedOverride>,
    ) -> Result<Self> {
        let mut class_of_pattern = BTreeMap::new();
        for (pat, class) in patterns {
            let mut key = pat.to_vec();
            key.sort_unstable();
            class_of_pattern.insert(key, group.class_index(class)?);
        }
        Self::from_parts(label.into(), poly, group, base_degree, class_of_pattern, ramified_overrides, false)
    }

    fn from_parts(
        label: String,
        poly: Vec<i64>,
        group: Arc<GroupTable>,
        base_degree: u32,
        class_of_pattern: BTreeMap<Vec<u32>, usize>,
        ramified_overrides: BTreeMap<u64, RamifiedOverride>,
        assume_irreducible: bool,
    ) -> Result<Self> {
        let disc = poly::discriminant(&poly)?;
        if disc.is_zero() {
            return Err(Error::InvalidPolynomial(format!("{label}: polynomial has a repeated root")));
        }
        if base_degree == 0 {
            return Err(Error::InvalidField(format!("{label}: base degree must be positive")));
        }
        if !assume_irreducible && !poly::irreducible_by_patterns(&poly, &disc, IRREDUCIBILITY_BOUND)? {
            return Err(Error::InvalidPolynomial(format!(
                "{label}: irreducibility not certified by primes up to {IRREDUCIBILITY_BOUND}; set assume_irreducible to proceed"
            )));
        }
        let n = poly.len() as u32 - 1;
        for (pat, &class) in &class_of_pattern {
            if pat.iter().sum::<u32>() != n {
                return Err(Error::InvalidField(format!("{label}: pattern {pat:?} does not sum to degree {n}")));
            }
            let order = pat.iter().fold(1u32, |a, &d| a.lcm(&d));
            if group.classes()[class].rep_order != order {
                return Err(Error::InvalidField(format!(
                    "{label}: pattern {pat:?} has order {order} but class {} has order {}",
                    group.class_id(class),
                    group.classes()[class].rep_order
                )));
            }
        }
        for (&p, ov) in &ramified_overrides {
            if poly::bigint_mod(&disc, p) != 0 {
                return Err(Error::InvalidField(format!("{label}: override at {p}, which does not divide disc(f) = {disc}")));
            }
            for ideal in &ov.ideals {
                if ideal.eigenvalues.len() != group.num_irreducibles() {
                    return Err(Error::InvalidField(format!("{label}: override at {p} has wrong irreducible count")));
                }
                if ideal.norm < p || !is_power_of(ideal.norm, p) {
                    return Err(Error::InvalidField(format!("{label}: override norm {} is not a power of {p}", ideal.norm)));
                }
                for (i, ev) in ideal.eigenvalues.iter().enumerate() {
                    if let Some(ev) = ev {
                        if ev.len() as i64 > group.irreducible_degree(i) {
                            return Err(Error::InvalidField(format!(
                                "{label}: more eigenvalues than the degree of {} at {p}",
                                group.irreducible_name(i)
                            )));
                        }
                        if ev.iter().any(|z| (z.norm() - 1.0).abs() > 1e-9) {
                            return Err(Error::InvalidField(format!("{label}: override eigenvalues at {p} must be roots of unity")));
                        }
                    }
                }
            }
        }
        Ok(Self { label, poly, group, base_degree, class_of_pattern, disc, ramified_overrides })
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: FieldSpecDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc)
    }

    pub fn from_doc(doc: &FieldSpecDoc) -> Result<Self> {
        let group = match &doc.group {
            GroupRef::Name(name) => builtin(name)?,
            GroupRef::Table(t) => Arc::new(GroupTable::from_doc(t)?),
        };
        let label = doc.label.clone().unwrap_or_else(|| format!("poly{:?}", doc.poly));
        let mut class_of_pattern = BTreeMap::new();
        for (key, class) in &doc.class_of_pattern {
            let mut pat = key
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidField(format!("class_of_pattern key {key:?} is not a degree list")))?;
            pat.sort_unstable();
            class_of_pattern.insert(pat, group.class_index(class)?);
        }
        let mut overrides = BTreeMap::new();
        for (key, ov) in &doc.ramified_overrides {
            let p: u64 = key
                .trim()
                .parse()
                .map_err(|_| Error::InvalidField(format!("ramified_overrides key {key:?} is not a prime")))?;
            let mut ideals = Vec::new();
            for ideal in &ov.ideals {
                let mut eigenvalues = vec![None; group.num_irreducibles()];
                for (name, vals) in &ideal.chi_values {
                    let i = group.irreducible_index(name)?;
                    eigenvalues[i] = Some(
                        vals.iter()
                            .map(|v| match *v {
                                ValueDoc::Real(x) => Complex::new(x, 0.0),
                                ValueDoc::Complex([re, im]) => Complex::new(re, im),
                            })
                            .collect(),
                    );
                }
                ideals.push(OverrideIdeal { norm: ideal.norm, eigenvalues });
            }
            overrides.insert(p, RamifiedOverride { ideals });
        }
        let spec = Self::from_parts(
            label,
            doc.poly.clone(),
            group,
            doc.base_degree,
            class_of_pattern,
            overrides,
            doc.assume_irreducible,
        )?;
        if let Some(d) = doc.disc {
            if BigInt::from(d) != spec.disc {
                return Err(Error::InvalidField(format!("declared disc {d} differs from disc(f) = {}", spec.disc)));
            }
        }
        Ok(spec)
    }

    /// Whether `p` divides `disc(f)`.
    pub fn divides_disc(&self, p: u64) -> bool {
        poly::bigint_mod(&self.disc, p) == 0
    }

    pub fn degree_pattern(&self, p: u64) -> Result<Vec<u32>> {
        if self.poly.len() == 3 && p > 2 {
            // quadratic: the pattern is the Legendre symbol of the discriminant
            let d = poly::bigint_mod(&self.disc, p);
            return match poly::jacobi(d as i64, p) {
                1 => Ok(vec![1, 1]),
                -1 => Ok(vec![2]),
                _ => Err(Error::RamifiedPrime { p }),
            };
        }
        poly::degree_pattern(&self.poly, p)
    }

    pub fn frobenius_class(&self, p: u64) -> Result<usize> {
        let pattern = self.degree_pattern(p)?;
        self.class_of_pattern.get(&pattern).copied().ok_or_else(|| Error::MissingPattern {
            pattern: pattern.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
            p,
        })
    }

    /// Builds the record for one prime; `t` decides the in-range flags.
    pub fn prime_record(&self, p: u64, t: f64) -> Result<PrimeRecord> {
        let norm_of = |d: u32| -> Norm { p.checked_pow(d).map_or(Norm::Capped, Norm::Exact) };
        let in_range = |n: Norm| matches!(n, Norm::Exact(v) if v as f64 <= t);
        if self.divides_disc(p) {
            let exact_local = self.ramified_overrides.get(&p).cloned();
            let ideals = match &exact_local {
                Some(ov) => ov
                    .ideals
                    .iter()
                    .map(|i| {
                        let norm = Norm::Exact(i.norm);
                        let degree = (i.norm as f64).log(p as f64).round() as u32;
                        IdealRecord { degree, ramification: 0, norm, class: None, ramified: true, in_range: in_range(norm) }
                    })
                    .collect(),
                None => poly::factor_shape(&self.poly, p)?
                    .into_iter()
                    .map(|(d, e)| {
                        let norm = norm_of(d);
                        IdealRecord { degree: d, ramification: e, norm, class: None, ramified: true, in_range: in_range(norm) }
                    })
                    .collect(),
            };
            return Ok(PrimeRecord { p, ideals, frobenius: None, ramified: true, exact_local });
        }
        let pattern = self.degree_pattern(p)?;
        let class = self.class_of_pattern.get(&pattern).copied().ok_or_else(|| Error::MissingPattern {
            pattern: pattern.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
            p,
        })?;
        let ideals = pattern
            .iter()
            .map(|&d| {
                let norm = norm_of(d);
                IdealRecord { degree: d, ramification: 1, norm, class: Some(class), ramified: false, in_range: in_range(norm) }
            })
            .collect();
        Ok(PrimeRecord { p, ideals, frobenius: Some(class), ramified: false, exact_local: None })
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Norm of a prime ideal; `Capped` when `p^d` overflows `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    Exact(u64),
    Capped,
}

impl Norm {
    pub fn as_f64(self) -> f64 {
        match self {
            Norm::Exact(v) => v as f64,
            Norm::Capped => f64::INFINITY,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealRecord {
    /// Residue degree.
    pub degree: u32,
    /// Exponent in the factorization of `f mod p`; 0 when the ideal comes
    /// from an override.
    pub ramification: u32,
    pub norm: Norm,
    pub class: Option<usize>,
    pub ramified: bool,
    pub in_range: bool,
}

/// Splitting data of one rational prime.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeRecord {
    pub p: u64,
    pub ideals: Vec<IdealRecord>,
    pub frobenius: Option<usize>,
    /// `p | disc(f)`. Such primes may still be unramified in the field
    /// when `p` divides the index of `Z[x]/f`; they always need an
    /// override or bracketing.
    pub ramified: bool,
    pub exact_local: Option<RamifiedOverride>,
}

/// Records for every prime `p <= t` in ascending order.
pub fn prime_records(spec: &FieldSpec, t: f64, workers: usize) -> Result<Vec<PrimeRecord>> {
    if !(t >= 2.0) {
        return Ok(Vec::new());
    }
    let limit = t.floor().min(u64::MAX as f64) as u64;
    if limit > poly::MAX_PRIME {
        return Err(Error::PrimeTooLarge { p: limit });
    }
    let primes = sieve::primes_up_to_with(limit, workers);
    crate::parallel::install(workers, || {
        let chunks: Vec<Result<Vec<PrimeRecord>>> = primes
            .par_chunks(RECORD_CHUNK)
            .map(|chunk| chunk.iter().map(|&p| spec.prime_record(p, t)).collect())
            .collect();
        let mut out = Vec::with_capacity(primes.len());
        for c in chunks {
            out.extend(c?);
        }
        Ok(out)
    })
}

/// JSON form of a [`FieldSpec`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldSpecDoc {
    #[serde(default)]
    pub label: Option<String>,
    pub poly: Vec<i64>,
    pub group: GroupRef,
    #[serde(default = "one")]
    pub base_degree: u32,
    #[serde(default)]
    pub class_of_pattern: BTreeMap<String, String>,
    #[serde(default)]
    pub disc: Option<i64>,
    #[serde(default)]
    pub ramified_overrides: BTreeMap<String, OverrideDoc>,
    #[serde(default)]
    pub assume_irreducible: bool,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Table(GroupTableDoc),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OverrideDoc {
    pub ideals: Vec<OverrideIdealDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OverrideIdealDoc {
    pub norm: u64,
    pub chi_values: BTreeMap<String, Vec<ValueDoc>>,
}

impl FieldSpec {
    pub fn to_doc(&self) -> FieldSpecDoc {
        let key = |pat: &Vec<u32>| pat.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let builtin_ok = builtin(self.group.name()).map(|t| *t == *self.group).unwrap_or(false);
        FieldSpecDoc {
            label: Some(self.label.clone()),
            poly: self.poly.clone(),
            group: if builtin_ok {
                GroupRef::Name(self.group.name().to_string())
            } else {
                GroupRef::Table(self.group.to_doc())
            },
            base_degree: self.base_degree,
            class_of_pattern: self
                .class_of_pattern
                .iter()
                .map(|(pat, &c)| (key(pat), self.group.class_id(c).to_string()))
                .collect(),
            disc: self.disc.to_i64(),
            ramified_overrides: self
                .ramified_overrides
                .iter()
                .map(|(p, ov)| {
                    let ideals = ov
                        .ideals
                        .iter()
                        .map(|i| OverrideIdealDoc {
                            norm: i.norm,
                            chi_values: i
                                .eigenvalues
                                .iter()
                                .enumerate()
                                .filter_map(|(k, ev)| {
                                    let ev = ev.as_ref()?;
                                    let vals = ev.iter().map(|z| ValueDoc::Complex([z.re, z.im])).collect();
                                    Some((self.group.irreducible_name(k).to_string(), vals))
                                })
                                .collect(),
                        })
                        .collect();
                    (p.to_string(), OverrideDoc { ideals })
                })
                .collect(),
            assume_irreducible: false,
        }
    }
}
