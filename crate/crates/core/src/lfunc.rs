//! Local Euler factors at `s = 1`, truncated Euler products and the kappa
//! estimators built on them.
//!
//! The Euler product runs over rational primes. A character of the
//! closure's group sees one local factor per rational prime: unramified
//! primes through their Frobenius class, primes dividing `disc(f)` through
//! supplied eigenvalue data or, failing that, a bracket on `Re chi(p)`.
//!
//! Sums of local logarithms are taken in fixed chunks of [`CHUNK_PRIMES`]
//! records and combined in index order, so results are bit-identical for
//! every worker count.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::VirtualCharacter;
use crate::scalar::{CompensatedComplexSum, CompensatedSum, Real, EULER_GAMMA};
use crate::special::eta_t;
use crate::splitting::{prime_records, FieldSpec, Norm, PrimeRecord};

/// Records per summation chunk; boundaries are fixed from index 0.
pub const CHUNK_PRIMES: usize = 1 << 16;

/// Local series stop once the remaining tail is provably below this; small
/// enough that the tails over all primes below 10^7 stay under 10^-12.
pub const SERIES_TOLERANCE: f64 = 1e-19;

/// Logarithm of one local factor `L_p(1, chi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalFactorValue<F> {
    pub log_value: Complex<F>,
    /// 0 for exact factors, otherwise the radius of a disc around
    /// `log_value` known to contain the true logarithm.
    pub bracket_radius: F,
}

impl<F: Real> LocalFactorValue<F> {
    pub fn is_exact(&self) -> bool {
        self.bracket_radius == F::zero()
    }
}

/// Bracket data for the nonnegative or nonpositive part of a character.
#[derive(Clone, Debug)]
struct PartBracket<F> {
    sign: F,
    degree: F,
    mu: F,
    /// `max |Im chi(g)|`; 0 for real-valued parts.
    imag: F,
}

/// Per-character data reused across every prime: values on all powers of
/// each class, and the bracket constants of the positive and negative parts.
#[derive(Clone, Debug)]
pub struct CharacterProfile<F> {
    chi: VirtualCharacter,
    /// `powers[c][r] = chi(C^r)` for `0 <= r < ord(C)`.
    powers: Vec<Vec<Complex<F>>>,
    /// `sum |<chi, psi>| psi(1)`, the degree of `|chi|`.
    abs_degree: F,
    parts: Vec<PartBracket<F>>,
}

impl<F: Real> CharacterProfile<F> {
    pub fn new(chi: &VirtualCharacter) -> Self {
        let table = chi.table();
        let values: Vec<Complex<F>> = chi.values().iter().map(|v| v.to_complex::<F>()).collect();
        let powers = (0..table.num_classes())
            .map(|c| {
                let order = table.classes()[c].rep_order as i64;
                (0..order).map(|r| values[table.power_class(c, r)]).collect()
            })
            .collect();
        let abs_degree = chi
            .components()
            .iter()
            .map(|&(i, a)| F::from_count(a.unsigned_abs() * table.irreducible_degree(i) as u64))
            .fold(F::zero(), |s, x| s + x);
        let mut parts = Vec::new();
        for sign in [1i64, -1] {
            let coeffs: Vec<i64> = chi.coeffs().iter().map(|&a| (a * sign).max(0)).collect();
            if coeffs.iter().all(|&a| a == 0) {
                continue;
            }
            let part = VirtualCharacter::new(table.clone(), coeffs).expect("same table");
            let imag = part.complex_values().iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            parts.push(PartBracket {
                sign: F::lit(sign as f64),
                degree: F::lit(part.degree() as f64),
                mu: F::lit(part.mu().value),
                imag: F::lit(if imag < 1e-12 { 0.0 } else { imag }),
            });
        }
        Self { chi: chi.clone(), powers, abs_degree, parts }
    }

    pub fn character(&self) -> &VirtualCharacter {
        &self.chi
    }

    /// `sum_{m>=1} chi(C^m) / (m N^m)` for an unramified prime of norm `N`
    /// with Frobenius class `class`.
    pub fn unramified_log(&self, class: usize, norm: F) -> Complex<F> {
        let row = &self.powers[class];
        let inv = F::one() / norm;
        let tol = F::lit(SERIES_TOLERANCE);
        let denom = F::one() - inv;
        let mut acc = CompensatedComplexSum::new();
        let mut inv_pow = F::one();
        let mut m = 1usize;
        loop {
            inv_pow = inv_pow * inv;
            let mf = F::from_count(m as u64);
            acc.add(row[m % row.len()] * (inv_pow / mf));
            // Tail after m terms is at most |chi|(1) N^-(m+1) / ((m+1)(1 - 1/N)).
            let next = F::from_count(m as u64 + 1);
            if self.abs_degree * inv_pow * inv / (next * denom) < tol {
                break;
            }
            m += 1;
        }
        acc.value()
    }

    /// Log local factor at the rational prime of `rec`.
    pub fn local_factor_log(&self, rec: &PrimeRecord, allow_bracket: bool) -> Result<LocalFactorValue<F>> {
        if let Some(class) = rec.frobenius {
            let log_value = self.unramified_log(class, F::from_count(rec.p));
            return Ok(LocalFactorValue { log_value, bracket_radius: F::zero() });
        }
        if let Some(ov) = &rec.exact_local {
            let table = self.chi.table();
            let mut acc = CompensatedComplexSum::new();
            for ideal in &ov.ideals {
                let norm = F::from_count(ideal.norm);
                for (i, a) in self.chi.components() {
                    let eig = ideal.eigenvalues[i].as_ref().ok_or_else(|| Error::IncompleteOverride {
                        p: rec.p,
                        irreducible: table.irreducible_name(i).to_string(),
                    })?;
                    let coeff = F::lit(a as f64);
                    for alpha in eig {
                        let alpha = Complex::new(F::lit(alpha.re), F::lit(alpha.im));
                        acc.add(neg_log_one_minus(alpha / norm) * coeff);
                    }
                }
            }
            return Ok(LocalFactorValue { log_value: acc.value(), bracket_radius: F::zero() });
        }
        if !allow_bracket {
            return Err(Error::RamifiedPrime { p: rec.p });
        }
        Ok(self.bracket(F::from_count(rec.p)))
    }

    /// Disc containing `log L_p` when only `mu <= Re chi(p) <= chi(1)` and
    /// `|log L_p - chi(p)/N| <= 2 chi(1)/N^2` are known.
    fn bracket(&self, norm: F) -> LocalFactorValue<F> {
        let two = F::lit(2.0);
        let mut center = F::zero();
        let mut radius = F::zero();
        for part in &self.parts {
            let c = (part.mu + part.degree) / (two * norm);
            let tail = two * part.degree / (norm * norm);
            let r_re = (part.degree - part.mu) / (two * norm) + tail;
            let r = if part.imag > F::zero() { r_re.hypot(part.imag / norm + tail) } else { r_re };
            center = center + part.sign * c;
            radius = radius + r;
        }
        LocalFactorValue { log_value: Complex::new(center, F::zero()), bracket_radius: radius }
    }
}

/// `-log(1 - z) = sum z^m / m` for `|z| <= 1/2`, summed as a series so no
/// branch choice is involved.
fn neg_log_one_minus<F: Real>(z: Complex<F>) -> Complex<F> {
    let r = z.norm();
    let tol = F::lit(SERIES_TOLERANCE);
    let mut acc = CompensatedComplexSum::new();
    let mut pow = Complex::new(F::one(), F::zero());
    let mut m = 1u64;
    loop {
        pow = pow * z;
        acc.add(pow / F::from_count(m));
        let rm = r.powi(m as i32 + 1);
        if r == F::zero() || rm / (F::from_count(m + 1) * (F::one() - r)) < tol {
            break;
        }
        m += 1;
    }
    acc.value()
}

/// Log local factor of `chi` at the prime of `rec`.
pub fn local_factor_log<F: Real>(
    chi: &VirtualCharacter,
    rec: &PrimeRecord,
    allow_bracket: bool,
) -> Result<LocalFactorValue<F>> {
    CharacterProfile::new(chi).local_factor_log(rec, allow_bracket)
}

/// Truncated Euler product `prod_{p <= T} L_p(1, chi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductValue<F> {
    pub value: Complex<F>,
    pub log_value: Complex<F>,
    /// Sum of local bracket radii, a radius for `log_value`.
    pub log_radius: F,
    /// `|value| (e^log_radius - 1)`, a radius for `value`.
    pub radius: F,
    /// Primes whose factor was bracketed rather than computed.
    pub bracketed: Vec<u64>,
}

/// How kappa_estimate turns truncation at `T` into a radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TruncationModel {
    /// Relative error `c |chi|(1) / sqrt(T)`; empirical, not a theorem.
    Heuristic { c: f64 },
    /// Relative error `|chi|(1) Delta_K(T)` with the given constants.
    DeltaK { degree: u32, disc: f64, c3: f64, c4: f64, c5: f64 },
    /// No truncation term; the radius covers ramified brackets only.
    Unmodeled,
}

impl Default for TruncationModel {
    fn default() -> Self {
        TruncationModel::Heuristic { c: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KappaOptions {
    /// Constant in the `(e^gamma log T)` normalization.
    pub gamma: f64,
    pub truncation: TruncationModel,
    /// Bracket primes dividing `disc(f)` that lack override data instead
    /// of failing.
    pub bracket_ramified: bool,
}

impl Default for KappaOptions {
    fn default() -> Self {
        Self { gamma: EULER_GAMMA, truncation: TruncationModel::default(), bracket_ramified: true }
    }
}

impl KappaOptions {
    /// Options with the truncation term reported as unmodeled.
    pub fn rigorous() -> Self {
        Self { truncation: TruncationModel::Unmodeled, ..Self::default() }
    }
}

/// A real zero `beta` of `L(s, psi)` for an irreducible `psi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExceptionalZero {
    pub psi: usize,
    pub beta: f64,
}

/// Exceptional-zero data entering the eta factors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SiegelData {
    /// Exceptional zero of the Dedekind zeta function of the closure and
    /// the quadratic character it belongs to.
    pub exceptional: Option<ExceptionalZero>,
    /// Zeros `beta_psi` of the potentially quadratic irreducibles that
    /// have one in the exceptional region.
    pub per_psi: Vec<ExceptionalZero>,
}

impl SiegelData {
    pub fn none() -> Self {
        Self::default()
    }

    fn validate(&self, chi: &VirtualCharacter) -> Result<()> {
        let n = chi.table().num_irreducibles();
        for z in self.exceptional.iter().chain(&self.per_psi) {
            if z.psi >= n {
                return Err(Error::UnknownIrreducible(z.psi.to_string()));
            }
            if !(z.beta > 0.0 && z.beta < 1.0) {
                return Err(Error::Domain(format!("exceptional zero {} outside (0, 1)", z.beta)));
            }
        }
        Ok(())
    }

    fn beta_for(&self, psi: usize) -> Option<f64> {
        self.per_psi.iter().find(|z| z.psi == psi).map(|z| z.beta)
    }
}

/// Where a kappa estimate was truncated.
#[derive(Clone, Debug, PartialEq)]
pub enum TruncationPoint {
    Single(f64),
    /// Irreducible name to its truncation length.
    PerIrreducible(BTreeMap<String, f64>),
}

/// Estimate of `kappa(chi)` with an uncertainty radius.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaIntervalOf<F> {
    pub center: Complex<F>,
    /// Product radius plus the modeled truncation term.
    pub radius: F,
    pub t_used: TruncationPoint,
    pub eta_factor: F,
    pub pole_order: i64,
    pub product_radius: F,
    /// `None` when the truncation error is unmodeled.
    pub truncation_radius: Option<F>,
    /// Multiplicative factor within which the center is only determined
    /// up to the implied constants; 1 for single-truncation estimates.
    pub slack: F,
    pub bracketed: Vec<u64>,
    /// The size condition on `T` relative to the field discriminant is
    /// never verified.
    pub hypothesis_checked: bool,
}

impl<F: Real> KappaIntervalOf<F> {
    /// Whether the interval excludes zero.
    pub fn nonvanishing(&self) -> bool {
        self.radius < self.center.norm()
    }
}

/// Prime records of a field, precomputed once up to a limit and shared by
/// every character and truncation point.
#[derive(Clone, Debug)]
pub struct EulerTable {
    spec: FieldSpec,
    records: Vec<PrimeRecord>,
    limit: f64,
    workers: usize,
}

impl EulerTable {
    /// Builds records for all `p <= limit`; `workers = 0` uses every CPU.
    pub fn new(spec: &FieldSpec, limit: f64, workers: usize) -> Result<Self> {
        let records = prime_records(spec, limit, workers)?;
        Ok(Self { spec: spec.clone(), records, limit, workers })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn limit(&self) -> f64 {
        self.limit
    }

    pub fn records(&self) -> &[PrimeRecord] {
        &self.records
    }

    /// Records with `p <= t`.
    pub fn records_up_to(&self, t: f64) -> Result<&[PrimeRecord]> {
        if t > self.limit {
            return Err(Error::Domain(format!("truncation {t} beyond precomputed limit {}", self.limit)));
        }
        let n = self.records.partition_point(|r| (r.p as f64) <= t);
        Ok(&self.records[..n])
    }

    fn check_table(&self, chi: &VirtualCharacter) -> Result<()> {
        if !Arc::ptr_eq(chi.table(), &self.spec.group) && chi.table().as_ref() != self.spec.group.as_ref() {
            return Err(Error::TableMismatch(chi.table().name().to_string(), self.spec.group.name().to_string()));
        }
        Ok(())
    }

    pub fn truncated_product<F: Real>(
        &self,
        chi: &VirtualCharacter,
        t: f64,
        bracket_ramified: bool,
    ) -> Result<ProductValue<F>> {
        self.check_table(chi)?;
        let profile = CharacterProfile::<F>::new(chi);
        self.product_with(&profile, t, bracket_ramified)
    }

    fn product_with<F: Real>(
        &self,
        profile: &CharacterProfile<F>,
        t: f64,
        bracket_ramified: bool,
    ) -> Result<ProductValue<F>> {
        let records = self.records_up_to(t)?;
        let chunks: Vec<Result<(Complex<F>, F, Vec<u64>)>> = crate::parallel::install(self.workers, || {
            records
                .par_chunks(CHUNK_PRIMES)
                .map(|chunk| {
                    let mut acc = CompensatedComplexSum::new();
                    let mut rad = CompensatedSum::new();
                    let mut bracketed = Vec::new();
                    for rec in chunk {
                        let lf = profile.local_factor_log(rec, bracket_ramified)?;
                        acc.add(lf.log_value);
                        if !lf.is_exact() {
                            rad.add(lf.bracket_radius);
                            bracketed.push(rec.p);
                        }
                    }
                    Ok((acc.value(), rad.value(), bracketed))
                })
                .collect()
        });
        let mut acc = CompensatedComplexSum::new();
        let mut rad = CompensatedSum::new();
        let mut bracketed = Vec::new();
        for c in chunks {
            let (s, r, b) = c?;
            acc.add(s);
            rad.add(r);
            bracketed.extend(b);
        }
        let log_value = acc.value();
        let log_radius = rad.value();
        let value = log_value.exp();
        let radius = value.norm() * log_radius.exp_m1();
        Ok(ProductValue { value, log_value, log_radius, radius, bracketed })
    }

    /// Single-truncation estimate of `kappa(chi)`:
    /// `eta~ (e^gamma log T)^(-<chi,1>) prod_{p<=T} L_p(1, chi)`.
    pub fn kappa_estimate<F: Real>(
        &self,
        chi: &VirtualCharacter,
        t: f64,
        siegel: &SiegelData,
        opts: &KappaOptions,
    ) -> Result<KappaIntervalOf<F>> {
        if !(t >= 3.0) {
            return Err(Error::Domain(format!("kappa estimate needs T >= 3, got {t}")));
        }
        self.check_table(chi)?;
        siegel.validate(chi)?;
        let profile = CharacterProfile::<F>::new(chi);
        let product = self.product_with(&profile, t, opts.bracket_ramified)?;
        let pole_order = chi.pole_order();
        let eta_factor = match siegel.exceptional {
            Some(z) => {
                let a = chi.coeffs()[z.psi];
                eta_t(F::lit(z.beta), F::lit(t))?.powi(a as i32)
            }
            None => F::one(),
        };
        let norm = (F::lit(opts.gamma).exp() * F::lit(t).ln()).powi(-(pole_order as i32));
        let scale = eta_factor * norm;
        let center = product.value * scale;
        let product_radius = product.radius * scale;
        let rel = match opts.truncation {
            TruncationModel::Heuristic { c } => Some(F::lit(c) * profile.abs_degree / F::lit(t).sqrt()),
            TruncationModel::DeltaK { degree, disc, c3, c4, c5 } => {
                Some(profile.abs_degree * F::lit(delta_k(t, degree, disc, c3, c4, c5)?))
            }
            TruncationModel::Unmodeled => None,
        };
        let truncation_radius = rel.map(|r| r * center.norm());
        Ok(KappaIntervalOf {
            center,
            radius: product_radius + truncation_radius.unwrap_or_else(F::zero),
            t_used: TruncationPoint::Single(t),
            eta_factor,
            pole_order,
            product_radius,
            truncation_radius,
            slack: F::one(),
            bracketed: product.bracketed,
            hypothesis_checked: false,
        })
    }

    /// Estimate with a separate truncation per irreducible:
    /// `prod_psi (eta(psi, T(psi)) prod_{p<=T(psi)} L_p(1, psi))^<chi,psi>`
    /// over `(log T(1))^<chi,1>`. The result only determines `kappa` up to
    /// bounded factors; `slack` records `e^(gamma |<chi,1>|)` from the
    /// normalization.
    pub fn kappa_multi_truncation<F: Real>(
        &self,
        chi: &VirtualCharacter,
        t_map: &BTreeMap<usize, f64>,
        siegel: &SiegelData,
        opts: &KappaOptions,
    ) -> Result<KappaIntervalOf<F>> {
        self.check_table(chi)?;
        siegel.validate(chi)?;
        let table = chi.table().clone();
        let trivial = table.trivial_index();
        let mut log_center = CompensatedComplexSum::<F>::new();
        let mut log_radius = F::zero();
        let mut log_eta = F::zero();
        let mut bracketed = Vec::new();
        let mut used = BTreeMap::new();
        for (i, a) in chi.components() {
            let name = table.irreducible_name(i).to_string();
            let t = *t_map.get(&i).ok_or_else(|| Error::MissingTruncation(name.clone()))?;
            if !(t >= std::f64::consts::E) {
                return Err(Error::Domain(format!("truncation {t} for {name} below e")));
            }
            used.insert(name, t);
            let psi = VirtualCharacter::irreducible(table.clone(), i);
            let profile = CharacterProfile::<F>::new(&psi);
            let product = self.product_with(&profile, t, opts.bracket_ramified)?;
            let af = F::lit(a as f64);
            log_center.add(product.log_value * af);
            log_radius = log_radius + product.log_radius * af.abs();
            if let Some(beta) = siegel.beta_for(i) {
                log_eta = log_eta + af * eta_t(F::lit(beta), F::lit(t))?.ln();
            }
            if i == trivial {
                log_center.add(Complex::new(-af * F::lit(t).ln().ln(), F::zero()));
            }
            bracketed.extend(product.bracketed);
        }
        bracketed.sort_unstable();
        bracketed.dedup();
        let eta_factor = log_eta.exp();
        let center = (log_center.value() + Complex::new(log_eta, F::zero())).exp();
        let product_radius = center.norm() * log_radius.exp_m1();
        let pole_order = chi.pole_order();
        Ok(KappaIntervalOf {
            center,
            radius: product_radius,
            t_used: TruncationPoint::PerIrreducible(used),
            eta_factor,
            pole_order,
            product_radius,
            truncation_radius: None,
            slack: (F::lit(opts.gamma) * F::lit(pole_order.unsigned_abs() as f64)).exp(),
            bracketed,
            hypothesis_checked: false,
        })
    }

    /// `sum 1/N(p)` over prime ideals with `y < N(p) <= x`.
    pub fn mertens_sum(&self, y: f64, x: f64) -> Result<MertensReport> {
        if !(y >= 2.0 && x >= y) {
            return Err(Error::Domain(format!("mertens sum needs x >= y >= 2, got y = {y}, x = {x}")));
        }
        let records = self.records_up_to(x)?;
        let chunks: Vec<f64> = crate::parallel::install(self.workers, || {
            records
                .par_chunks(CHUNK_PRIMES)
                .map(|chunk| {
                    let mut acc = CompensatedSum::new();
                    for rec in chunk {
                        for ideal in &rec.ideals {
                            if let Norm::Exact(n) = ideal.norm {
                                let n = n as f64;
                                if n > y && n <= x {
                                    acc.add(1.0 / n);
                                }
                            }
                        }
                    }
                    acc.value()
                })
                .collect()
        });
        let mut acc = CompensatedSum::new();
        for c in chunks {
            acc.add(c);
        }
        let sum = acc.value();
        let main_term = x.ln().ln() - y.ln().ln();
        Ok(MertensReport { y, x, sum, main_term, slack: sum - main_term })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MertensReport {
    pub y: f64,
    pub x: f64,
    pub sum: f64,
    /// `log log x - log log y`.
    pub main_term: f64,
    pub slack: f64,
}

/// Truncated Euler product of `chi` over the primes of `spec` up to `t`.
pub fn truncated_product<F: Real>(
    chi: &VirtualCharacter,
    spec: &FieldSpec,
    t: f64,
    workers: usize,
) -> Result<ProductValue<F>> {
    EulerTable::new(spec, t, workers)?.truncated_product(chi, t, true)
}

pub fn kappa_estimate<F: Real>(
    chi: &VirtualCharacter,
    spec: &FieldSpec,
    t: f64,
    siegel: &SiegelData,
    opts: &KappaOptions,
    workers: usize,
) -> Result<KappaIntervalOf<F>> {
    EulerTable::new(spec, t, workers)?.kappa_estimate(chi, t, siegel, opts)
}

pub fn kappa_multi_truncation<F: Real>(
    chi: &VirtualCharacter,
    spec: &FieldSpec,
    t_map: &BTreeMap<usize, f64>,
    siegel: &SiegelData,
    opts: &KappaOptions,
    workers: usize,
) -> Result<KappaIntervalOf<F>> {
    let limit = t_map.values().copied().fold(2.0, f64::max);
    EulerTable::new(spec, limit, workers)?.kappa_multi_truncation(chi, t_map, siegel, opts)
}

pub fn mertens_sum(spec: &FieldSpec, y: f64, x: f64, workers: usize) -> Result<MertensReport> {
    EulerTable::new(spec, x.max(2.0), workers)?.mertens_sum(y, x)
}

/// `c5 exp(-c4 log t / (log(n^n D_K) + (n log t)^(1/2)))`, defined for
/// `t >= (n^n D_K)^c3`.
pub fn delta_k(t: f64, degree: u32, disc: f64, c3: f64, c4: f64, c5: f64) -> Result<f64> {
    if degree == 0 || !(disc >= 1.0) || !(c3 > 0.0 && c4 > 0.0 && c5 > 0.0) {
        return Err(Error::Domain(format!(
            "delta_K needs n >= 1, D_K >= 1 and positive constants (n = {degree}, D_K = {disc})"
        )));
    }
    let n = degree as f64;
    let log_base = n * n.ln() + disc.ln();
    let lower = (c3 * log_base).exp();
    if !(t >= lower * (1.0 - 1e-12)) {
        return Err(Error::Domain(format!("delta_K defined for t >= {lower}, got {t}")));
    }
    let lt = t.ln();
    Ok(c5 * (-c4 * lt / (log_base + (n * lt).sqrt())).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    fn rationals() -> FieldSpec {
        FieldSpec::new("Q", vec![0, 1], builtin("C1").unwrap(), 1, &[(&[1], "e")], BTreeMap::new())
            .unwrap()
    }

    fn gaussian() -> FieldSpec {
        let c2 = builtin("C2").unwrap();
        FieldSpec::new("Q(i)", vec![1, 0, 1], c2, 1, &[(&[1, 1], "e"), (&[2], "g")], BTreeMap::new()).unwrap()
    }

    fn record(spec: &FieldSpec, p: u64) -> PrimeRecord {
        spec.prime_record(p, 1e9).unwrap()
    }

    #[test]
    fn trivial_factor_at_two() {
        let q = rationals();
        let one = VirtualCharacter::trivial(q.group.clone());
        let lf = local_factor_log::<f64>(&one, &record(&q, 2), false).unwrap();
        assert!((lf.log_value.re - 2f64.ln()).abs() < 1e-15);
        assert_eq!(lf.bracket_radius, 0.0);
    }

    #[test]
    fn quadratic_factor_at_three() {
        let k = gaussian();
        let chi = VirtualCharacter::named(k.group.clone(), "chi1").unwrap();
        let lf = local_factor_log::<f64>(&chi, &record(&k, 3), false).unwrap();
        assert!((lf.log_value.re + (4f64 / 3.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn ramified_without_override() {
        let k = gaussian();
        let chi = VirtualCharacter::named(k.group.clone(), "chi1").unwrap();
        let rec = record(&k, 2);
        assert!(matches!(local_factor_log::<f64>(&chi, &rec, false), Err(Error::RamifiedPrime { p: 2 })));
        let lf = local_factor_log::<f64>(&chi, &rec, true).unwrap();
        // mu = -1, chi(1) = 1: center 0, radius 1/2 + 2/4.
        assert!(lf.log_value.norm() < 1e-15);
        assert!((lf.bracket_radius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn small_products() {
        let q = rationals();
        let one = VirtualCharacter::trivial(q.group.clone());
        let p = truncated_product::<f64>(&one, &q, 10.0, 1).unwrap();
        assert!((p.value.re - 4.375).abs() < 1e-13);
        let empty = EulerTable::new(&q, 10.0, 1).unwrap().truncated_product::<f64>(&one, 1.0, false).unwrap();
        assert_eq!(empty.value, Complex::new(1.0, 0.0));
    }

    #[test]
    fn neg_log_series() {
        let z = Complex::new(0.3f64, -0.2);
        let direct = -(Complex::new(1.0, 0.0) - z).ln();
        assert!((neg_log_one_minus(z) - direct).norm() < 1e-15);
    }

    #[test]
    fn delta_examples() {
        let v = delta_k(4f64.exp(), 1, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((v - (-2f64).exp()).abs() < 1e-15);
        assert!(delta_k(400.0, 2, 100.0, 1.0, 1.0, 1.0).unwrap() > 0.0);
        assert!(delta_k(399.0, 2, 100.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn table_mismatch_rejected() {
        let k = gaussian();
        let other = VirtualCharacter::trivial(builtin("C3").unwrap());
        let table = EulerTable::new(&k, 100.0, 1).unwrap();
        assert!(table.truncated_product::<f64>(&other, 50.0, true).is_err());
    }
}
