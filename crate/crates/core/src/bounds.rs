//! Upper and lower envelope shapes for `|kappa(chi)|` and the reports that
//! compare computed values against them.
//!
//! A shape is a product of powers of `log D_K`, `log(e D_k)`, `log q(chi)`
//! and the like, with implied constants left out. Reports carry the ratios
//! `|kappa| / shape` so families can be checked for bounded ratios without
//! asserting any particular constant.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::exceptional::{psi_set, SiegelRecord};
use crate::group::{InductionData, VirtualCharacter};

/// One factor `base^exponent` of a shape.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub base: String,
    pub base_value: f64,
    pub exponent: f64,
}

impl Term {
    fn new(base: impl Into<String>, base_value: f64, exponent: f64) -> Self {
        Self { base: base.into(), base_value, exponent }
    }

    pub fn value(&self) -> f64 {
        if self.exponent == 0.0 {
            1.0
        } else {
            self.base_value.powf(self.exponent)
        }
    }
}

/// Upper and lower shape with the factors that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct Shapes {
    pub upper: f64,
    pub lower: f64,
    pub upper_terms: Vec<Term>,
    /// Multiplies the lower terms (`epsilon(chi)` where it applies).
    pub lower_prefactor: f64,
    pub lower_terms: Vec<Term>,
}

impl Shapes {
    fn build(upper_terms: Vec<Term>, lower_prefactor: f64, lower_terms: Vec<Term>) -> Self {
        let upper = upper_terms.iter().map(Term::value).product();
        let lower = lower_prefactor * lower_terms.iter().map(Term::value).product::<f64>();
        Self { upper, lower, upper_terms, lower_prefactor, lower_terms }
    }

    /// Exponent ledger such as `log D_K^1;log q^-1`.
    pub fn ledger(terms: &[Term]) -> String {
        let mut out = String::new();
        for (i, t) in terms.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            let _ = write!(out, "{}^{}", t.base, t.exponent);
        }
        out
    }
}

fn require_character(chi: &VirtualCharacter) -> Result<()> {
    if chi.is_character() {
        Ok(())
    } else {
        Err(Error::NotACharacter)
    }
}

/// `log(e D_k)`.
fn log_e_dk(disc_k: f64) -> f64 {
    1.0 + disc_k.ln()
}

/// `min{(log q(psi) / (D_k q(psi))^(1/(2 n_k)))^<chi,psi>} u {1}` over the
/// records that carry a zero.
pub fn epsilon_chi(chi: &VirtualCharacter, records: &[SiegelRecord], disc_k: f64, base_degree: u32) -> Result<f64> {
    let table = chi.table();
    let mut eps = 1.0f64;
    for r in psi_set(records) {
        let i = table.irreducible_index(&r.psi)?;
        if !(r.q.is_finite() && r.q > 1.0) {
            return Err(Error::MissingConductor(r.psi.clone()));
        }
        let a = chi.coeffs()[i];
        let base = r.q.ln() / (disc_k * r.q).powf(1.0 / (2.0 * base_degree as f64));
        eps = eps.min(base.powi(a as i32));
    }
    Ok(eps)
}

/// Shapes in terms of the closure discriminant:
/// `(log D_K)^(chi~(1) - <chi,1>)` and
/// `(log D_K / D_K^(1/[K:Q]))^nu (log D_K)^(mu(chi~) - <chi,1>)`.
pub fn disc_envelope(chi: &VirtualCharacter, induction: &InductionData, disc_closure: f64, nu: i64) -> Result<Shapes> {
    require_character(chi)?;
    if !(disc_closure >= 3.0) {
        return Err(Error::Domain(format!("D_K = {disc_closure} below 3")));
    }
    let a1 = chi.pole_order() as f64;
    let l = disc_closure.ln();
    let degree_k = chi.table().order() as f64 * induction.base_degree as f64;
    let upper = vec![Term::new("log D_K", l, induction.tilde_degree as f64 - a1)];
    let lower = vec![
        Term::new("log D_K/D_K^(1/[K:Q])", l / disc_closure.powf(1.0 / degree_k), nu as f64),
        Term::new("log D_K", l, induction.mu_tilde - a1),
    ];
    Ok(Shapes::build(upper, 1.0, lower))
}

/// Shapes in terms of the conductor:
/// `(log e D_k)^(chi~(1) - chi(1)) (log q)^(chi(1) - <chi,1>)` and
/// `eps (log e D_k)^(mu(chi~) - mu(chi)) (log q)^(mu(chi) - <chi,1>)`.
pub fn cond_envelope(
    chi: &VirtualCharacter,
    induction: &InductionData,
    disc_k: f64,
    q_chi: f64,
    epsilon: f64,
) -> Result<Shapes> {
    require_character(chi)?;
    if !(q_chi >= 3.0) {
        return Err(Error::Domain(format!("q(chi) = {q_chi} below 3")));
    }
    let a1 = chi.pole_order() as f64;
    let deg = chi.degree() as f64;
    let mu = chi.mu().value;
    let le = log_e_dk(disc_k);
    let lq = q_chi.ln();
    let upper = vec![Term::new("log eD_k", le, induction.tilde_degree as f64 - deg), Term::new("log q", lq, deg - a1)];
    let lower = vec![Term::new("log eD_k", le, induction.mu_tilde - mu), Term::new("log q", lq, mu - a1)];
    Ok(Shapes::build(upper, epsilon, lower))
}

/// The same exponents with `log log` in place of `log`.
pub fn grh_envelope(chi: &VirtualCharacter, induction: &InductionData, disc_k: f64, q_chi: f64) -> Result<Shapes> {
    require_character(chi)?;
    if !(q_chi > std::f64::consts::E) {
        return Err(Error::Domain(format!("log log q needs q > e, got {q_chi}")));
    }
    let a1 = chi.pole_order() as f64;
    let deg = chi.degree() as f64;
    let mu = chi.mu().value;
    let lle = log_e_dk(disc_k).ln();
    let llq = q_chi.ln().ln();
    let upper =
        vec![Term::new("loglog eD_k", lle, induction.tilde_degree as f64 - deg), Term::new("loglog q", llq, deg - a1)];
    let lower = vec![Term::new("loglog eD_k", lle, induction.mu_tilde - mu), Term::new("loglog q", llq, mu - a1)];
    Ok(Shapes::build(upper, 1.0, lower))
}

/// Conductors of the irreducibles and the discriminants around them.
#[derive(Clone, Debug, PartialEq)]
pub struct ConductorData {
    /// Irreducible index to `q(psi)`.
    pub conductors: BTreeMap<usize, f64>,
    /// `D_K` of the Galois closure, when known.
    pub disc_closure: Option<f64>,
    pub disc_base: f64,
    pub base_degree: u32,
}

impl ConductorData {
    pub fn q(&self, chi: &VirtualCharacter, psi: usize) -> Result<f64> {
        self.conductors
            .get(&psi)
            .copied()
            .ok_or_else(|| Error::MissingConductor(chi.table().irreducible_name(psi).to_string()))
    }

    /// `log q(chi) = sum <chi,psi> log q(psi)`.
    pub fn log_q_of(&self, chi: &VirtualCharacter) -> Result<f64> {
        let mut s = 0.0;
        for (i, a) in chi.components() {
            s += a as f64 * self.q(chi, i)?.ln();
        }
        Ok(s)
    }

    pub fn q_of(&self, chi: &VirtualCharacter) -> Result<f64> {
        Ok(self.log_q_of(chi)?.exp())
    }

    /// `log D_K - sum psi(1) log q(psi)`; `None` unless every conductor and
    /// `D_K` are present.
    pub fn disc_residual(&self, table: &crate::GroupTable) -> Option<f64> {
        let dk = self.disc_closure?;
        let mut s = 0.0;
        for i in 0..table.num_irreducibles() {
            s += table.irreducible_degree(i) as f64 * self.conductors.get(&i)?.ln();
        }
        Some(dk.ln() - s)
    }
}

/// Both corollary envelopes, the decomposed envelope, and whether the
/// no-quadratic-component corollary applies.
#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryShapes {
    /// `None` when `chi` has a trivial or quadratic component.
    pub nonexceptional: Option<Shapes>,
    pub irreducibles: Shapes,
    pub decomposed: Shapes,
}

pub fn corollary_envelopes(chi: &VirtualCharacter, data: &ConductorData, epsilon: f64) -> Result<CorollaryShapes> {
    require_character(chi)?;
    let table = chi.table().clone();
    let nk = data.base_degree as f64;
    let le = log_e_dk(data.disc_base);
    let deg = chi.degree() as f64;
    let a1 = chi.pole_order() as f64;
    let mu = chi.mu().value;

    let mut quadratic_part = false;
    for (i, _) in chi.components() {
        if VirtualCharacter::irreducible(table.clone(), i).is_potentially_quadratic()? {
            quadratic_part = true;
        }
    }
    let nonexceptional = if quadratic_part {
        None
    } else {
        let induction = InductionData::from_character(chi, data.base_degree);
        let lq = data.log_q_of(chi)?;
        Some(Shapes::build(
            vec![Term::new("log eD_k", le, induction.tilde_degree as f64 - deg), Term::new("log q", lq, deg)],
            1.0,
            vec![Term::new("log eD_k", le, induction.mu_tilde - mu), Term::new("log q", lq, mu)],
        ))
    };

    let trivial = table.trivial_index();
    let mut up = vec![Term::new("log eD_k", le, (nk - 1.0) * deg)];
    let mut lo = vec![Term::new("log eD_k", le, -(nk - 1.0) * deg + (nk - 2.0) * a1)];
    let mut dup = Vec::new();
    let mut dlo = Vec::new();
    for (i, a) in chi.components() {
        let a = a as f64;
        if i == trivial {
            // The closure of the trivial character has degree n_k and mu >= 0.
            dup.push(Term::new("log eD_k", le, (nk - 1.0) * a));
            dlo.push(Term::new("log eD_k", le, -a));
            continue;
        }
        let name = table.irreducible_name(i);
        let psi = VirtualCharacter::irreducible(table.clone(), i);
        let pdeg = psi.degree() as f64;
        let pmu = psi.mu().value;
        let lq = data.q(chi, i)?.ln();
        up.push(Term::new(format!("log q({name})"), lq, pdeg * a));
        lo.push(Term::new(format!("log q({name})"), lq, -pdeg * a));
        let ind = InductionData::from_character(&psi, data.base_degree);
        dup.push(Term::new("log eD_k", le, (ind.tilde_degree as f64 - pdeg) * a));
        dup.push(Term::new(format!("log q({name})"), lq, pdeg * a));
        dlo.push(Term::new("log eD_k", le, (ind.mu_tilde - pmu) * a));
        dlo.push(Term::new(format!("log q({name})"), lq, pmu * a));
    }
    Ok(CorollaryShapes {
        nonexceptional,
        irreducibles: Shapes::build(up, epsilon, lo),
        decomposed: Shapes::build(dup, epsilon, dlo),
    })
}

/// Lower and upper shapes for `psi + psi'` taken whole or piece by piece.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionComparison {
    /// `(log q + log q')^mu(psi+psi')` and `(log q + log q')^((psi+psi')(1))`.
    pub whole: (f64, f64),
    /// `(log q)^mu(psi) (log q')^mu(psi')` and `(log q)^psi(1) (log q')^psi'(1)`.
    pub split: (f64, f64),
    pub mu_whole: f64,
    pub mu_split: (f64, f64),
}

impl DecompositionComparison {
    /// Whether treating the sum whole gives the larger lower shape.
    pub fn whole_lower_better(&self) -> bool {
        self.whole.0 > self.split.0
    }
}

pub fn compare_decompositions(
    psi: &VirtualCharacter,
    psi2: &VirtualCharacter,
    q: f64,
    q2: f64,
) -> Result<DecompositionComparison> {
    require_character(psi)?;
    require_character(psi2)?;
    let sum = psi.checked_add(psi2)?;
    let (l1, l2) = (q.ln(), q2.ln());
    let mu_whole = sum.mu().value;
    let (m1, m2) = (psi.mu().value, psi2.mu().value);
    Ok(DecompositionComparison {
        whole: ((l1 + l2).powf(mu_whole), (l1 + l2).powf(sum.degree() as f64)),
        split: (l1.powf(m1) * l2.powf(m2), l1.powf(psi.degree() as f64) * l2.powf(psi2.degree() as f64)),
        mu_whole,
        mu_split: (m1, m2),
    })
}

/// Telescoped exponents over a chain of truncations `T_1 >= ... >= T_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallPrimesLedger {
    /// Per step: irreducible, truncation, `chi_n(1) - chi_(n-1)(1)`, and
    /// `mu(chi_n) - mu(chi_(n-1))`.
    pub steps: Vec<(String, f64, f64, f64)>,
    /// `chi~(1) - chi(1)` and `mu(chi~) - mu(chi)` on `log T_N`.
    pub closure_upper: f64,
    pub closure_lower: f64,
    pub shapes: Shapes,
    /// Irreducibles whose truncation is below their conductor.
    pub below_conductor: Vec<String>,
}

impl SmallPrimesLedger {
    pub fn upper_total(&self) -> f64 {
        self.closure_upper + self.steps.iter().map(|s| s.2).sum::<f64>()
    }

    pub fn lower_total(&self) -> f64 {
        self.closure_lower + self.steps.iter().map(|s| s.3).sum::<f64>()
    }
}

/// `truncations` lists every irreducible once, in non-increasing order of
/// truncation, with the trivial character last.
pub fn small_primes_envelope(
    chi: &VirtualCharacter,
    induction: &InductionData,
    truncations: &[(usize, f64)],
    conductors: Option<&ConductorData>,
) -> Result<SmallPrimesLedger> {
    require_character(chi)?;
    let table = chi.table().clone();
    if truncations.is_empty() {
        return Err(Error::Domain("empty truncation list".into()));
    }
    if truncations.len() != table.num_irreducibles() {
        return Err(Error::Domain(format!(
            "{} truncations for {} irreducibles",
            truncations.len(),
            table.num_irreducibles()
        )));
    }
    let mut seen = vec![false; table.num_irreducibles()];
    for (n, &(i, t)) in truncations.iter().enumerate() {
        if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Domain(format!("irreducible {i} missing or repeated in truncations")));
        }
        if !(t > 1.0) {
            return Err(Error::Domain(format!("truncation {t} must exceed 1")));
        }
        if n > 0 && t > truncations[n - 1].1 {
            return Err(Error::Domain("truncations must be non-increasing".into()));
        }
    }
    if truncations.last().map(|x| x.0) != Some(table.trivial_index()) {
        return Err(Error::Domain("the trivial character must come last".into()));
    }
    let mut partial = VirtualCharacter::zero(table.clone());
    let (mut prev_deg, mut prev_mu) = (0.0, 0.0);
    let mut steps = Vec::new();
    let mut up = Vec::new();
    let mut lo = Vec::new();
    let mut below = Vec::new();
    for &(i, t) in truncations {
        let mut coeffs = partial.coeffs().to_vec();
        coeffs[i] = chi.coeffs()[i];
        partial = VirtualCharacter::new(table.clone(), coeffs)?;
        let deg = partial.degree() as f64;
        let mu = if partial.is_zero() { 0.0 } else { partial.mu().value };
        let name = table.irreducible_name(i).to_string();
        if let Some(data) = conductors {
            if let Some(&q) = data.conductors.get(&i) {
                if t < q {
                    below.push(name.clone());
                }
            }
        }
        up.push(Term::new(format!("log T({name})"), t.ln(), deg - prev_deg));
        lo.push(Term::new(format!("log T({name})"), t.ln(), mu - prev_mu));
        steps.push((name, t, deg - prev_deg, mu - prev_mu));
        prev_deg = deg;
        prev_mu = mu;
    }
    let t_last = truncations.last().expect("nonempty").1.ln();
    let closure_upper = induction.tilde_degree as f64 - chi.degree() as f64;
    let closure_lower = induction.mu_tilde - chi.mu().value;
    up.insert(0, Term::new("log T_N", t_last, closure_upper));
    lo.insert(0, Term::new("log T_N", t_last, closure_lower));
    Ok(SmallPrimesLedger {
        steps,
        closure_upper,
        closure_lower,
        shapes: Shapes::build(up, 1.0, lo),
        below_conductor: below,
    })
}

/// One lower ramification group: its order and how many of its elements
/// lie in each conjugacy class of `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct RamificationGroup {
    pub order: u64,
    /// Class index to element count.
    pub class_counts: Vec<(usize, u64)>,
}

/// `sum_i (|G_i|/|G_0|)(chi(1) - (1/|G_i|) sum_{g in G_i} chi(g))`, which
/// must be a nonnegative integer.
pub fn artin_conductor_valuation(chi: &VirtualCharacter, filtration: &[RamificationGroup]) -> Result<u64> {
    let table = chi.table();
    let g0 = filtration.first().ok_or_else(|| Error::Domain("empty ramification filtration".into()))?;
    let n = table.field_order();
    let deg = Cyclotomic::from_integer(n, chi.degree());
    let mut total = Cyclotomic::zero(n);
    for g in filtration {
        let mut count = 0;
        let mut sum = Cyclotomic::zero(n);
        for &(c, k) in &g.class_counts {
            if c >= table.num_classes() {
                return Err(Error::InvalidClass(c.to_string()));
            }
            if k > table.classes()[c].size {
                return Err(Error::Domain(format!("{k} elements claimed in class of size {}", table.classes()[c].size)));
            }
            count += k;
            sum = &sum + &chi.value(c).scale_int(k as i64);
        }
        if count != g.order || g.order == 0 || !table.order().is_multiple_of(g.order) {
            return Err(Error::Domain(format!("ramification group of order {} lists {count} elements", g.order)));
        }
        // |G_i| chi(1) - sum chi, all over |G_0|.
        let term = &deg.scale_int(g.order as i64) - &sum;
        total = &total + &term;
    }
    let total = total.scale(&BigRational::new(BigInt::from(1), BigInt::from(g0.order)));
    let v = total.as_rational().filter(|r| r.is_integer() && !r.is_negative());
    match v {
        Some(r) if r.is_zero() => Ok(0),
        Some(r) => Ok(r.to_integer().try_into().map_err(|_| Error::NonIntegralValuation(r.to_string()))?),
        None => Err(Error::NonIntegralValuation(total.to_string())),
    }
}

/// Outcome of comparing a conductor with the closure discriminant.
#[derive(Clone, Debug, PartialEq)]
pub struct ConductorCheck {
    /// `q(chi) <= D_K^(2 chi(1)/|G|)`.
    pub upper_holds: bool,
    /// `q(chi) >= D_K^(1/|G|)`; `None` unless `chi` is faithful.
    pub lower_holds: Option<bool>,
    /// See [`ConductorData::disc_residual`].
    pub disc_residual: Option<f64>,
}

/// Relative slack on logarithms when comparing conductor and discriminant.
const LOG_SLACK: f64 = 1e-12;

pub fn conductor_bounds_check(data: &ConductorData, chi: &VirtualCharacter) -> Result<ConductorCheck> {
    let table = chi.table();
    let dk = data.disc_closure.ok_or_else(|| Error::MissingConductor("D_K".into()))?;
    let lq = data.log_q_of(chi)?;
    let ld = dk.ln();
    let g = table.order() as f64;
    let deg = chi.degree() as f64;
    let upper_holds = lq <= 2.0 * deg / g * ld * (1.0 + LOG_SLACK) + LOG_SLACK;
    let lower_holds = is_faithful(chi).then(|| lq >= ld / g * (1.0 - LOG_SLACK) - LOG_SLACK);
    Ok(ConductorCheck { upper_holds, lower_holds, disc_residual: data.disc_residual(table) })
}

/// Kernel of `chi` is the identity class alone.
pub fn is_faithful(chi: &VirtualCharacter) -> bool {
    let table = chi.table();
    let id = table.identity_class();
    let deg = chi.value(id);
    (0..table.num_classes()).all(|c| c == id || chi.value(c) != deg)
}

/// Shapes for `L(1, chi_F)` of a non-Galois cubic of discriminant `d f^2`
/// over two base fields: `Q`, and `Q(sqrt d)` where `chi_F` is induced
/// from a cubic character.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseFieldComparison {
    pub d: i64,
    pub f: u64,
    /// `(1/log(|d| f^2), (log |d| f^2)^2)`.
    pub over_q: (f64, f64),
    /// `(1/((log |d|)^(1/2) (log f)^(1/2)), log |d| log f)`; `None` when
    /// `f = 1` makes `log f` vanish.
    pub over_quadratic: Option<(f64, f64)>,
}

impl BaseFieldComparison {
    pub fn new(d: i64, f: u64) -> Self {
        let ld = (d.unsigned_abs() as f64).ln();
        let lf = (f as f64).ln();
        let l = ld + 2.0 * lf;
        let over_quadratic = (f >= 2 && ld > 0.0).then(|| (1.0 / (ld * lf).sqrt(), ld * lf));
        Self { d, f, over_q: (1.0 / l, l * l), over_quadratic }
    }

    /// Lower shape no smaller and upper shape no larger over `Q(sqrt d)`.
    pub fn quadratic_base_tighter(&self) -> Option<bool> {
        self.over_quadratic.map(|(lo, hi)| lo >= self.over_q.0 && hi <= self.over_q.1)
    }
}

/// One comparison between a computed kappa and an envelope.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeReport {
    pub family: String,
    pub field: String,
    pub character: String,
    pub envelope: String,
    pub t: f64,
    pub kappa: Complex<f64>,
    pub kappa_abs: f64,
    pub upper_shape: f64,
    pub lower_shape: f64,
    pub ratio_hi: f64,
    pub ratio_lo: f64,
    pub upper_exponent: String,
    pub lower_exponent: String,
}

impl EnvelopeReport {
    pub const CSV_HEADER: [&'static str; 14] = [
        "family",
        "field",
        "character",
        "envelope",
        "T",
        "kappa_re",
        "kappa_im",
        "kappa_abs",
        "upper_shape",
        "lower_shape",
        "ratio_hi",
        "ratio_lo",
        "upper_exponent",
        "lower_exponent",
    ];

    pub fn new(
        family: &str,
        field: &str,
        character: &str,
        envelope: &str,
        t: f64,
        kappa: Complex<f64>,
        shapes: &Shapes,
    ) -> Self {
        let kappa_abs = kappa.norm();
        Self {
            family: family.into(),
            field: field.into(),
            character: character.into(),
            envelope: envelope.into(),
            t,
            kappa,
            kappa_abs,
            upper_shape: shapes.upper,
            lower_shape: shapes.lower,
            ratio_hi: kappa_abs / shapes.upper,
            ratio_lo: kappa_abs / shapes.lower,
            upper_exponent: Shapes::ledger(&shapes.upper_terms),
            lower_exponent: Shapes::ledger(&shapes.lower_terms),
        }
    }

    /// Ratios finite and positive.
    pub fn is_sane(&self) -> bool {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        ok(self.upper_shape) && ok(self.lower_shape) && ok(self.ratio_hi) && ok(self.ratio_lo)
    }

    /// Fields in header order; reals in 15 significant digits.
    pub fn csv_fields(&self) -> [String; 14] {
        let r = |x: f64| format!("{x:.14e}");
        [
            self.family.clone(),
            self.field.clone(),
            self.character.clone(),
            self.envelope.clone(),
            r(self.t),
            r(self.kappa.re),
            r(self.kappa.im),
            r(self.kappa_abs),
            r(self.upper_shape),
            r(self.lower_shape),
            r(self.ratio_hi),
            r(self.ratio_lo),
            self.upper_exponent.clone(),
            self.lower_exponent.clone(),
        ]
    }
}

/// Per-envelope extremes of the ratios over a family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnvelopeSummary {
    pub count: usize,
    pub insane: usize,
    pub min_ratio_lo: f64,
    pub max_ratio_lo: f64,
    pub min_ratio_hi: f64,
    pub max_ratio_hi: f64,
}

pub fn summarize(reports: &[EnvelopeReport]) -> BTreeMap<String, EnvelopeSummary> {
    let mut out: BTreeMap<String, EnvelopeSummary> = BTreeMap::new();
    for r in reports {
        let s = out.entry(r.envelope.clone()).or_insert(EnvelopeSummary {
            count: 0,
            insane: 0,
            min_ratio_lo: f64::INFINITY,
            max_ratio_lo: f64::NEG_INFINITY,
            min_ratio_hi: f64::INFINITY,
            max_ratio_hi: f64::NEG_INFINITY,
        });
        s.count += 1;
        if !r.is_sane() {
            s.insane += 1;
            continue;
        }
        s.min_ratio_lo = s.min_ratio_lo.min(r.ratio_lo);
        s.max_ratio_lo = s.max_ratio_lo.max(r.ratio_lo);
        s.min_ratio_hi = s.min_ratio_hi.min(r.ratio_hi);
        s.max_ratio_hi = s.max_ratio_hi.max(r.ratio_hi);
    }
    out
}

/// Everything needed to compare one kappa value against every envelope.
#[derive(Clone, Debug)]
pub struct EnvelopeInput<'a> {
    pub family: &'a str,
    pub field: &'a str,
    pub chi: &'a VirtualCharacter,
    pub kappa: Complex<f64>,
    pub t: f64,
    pub conductors: &'a ConductorData,
    pub induction: InductionData,
    pub siegel: &'a [SiegelRecord],
    /// `<chi, psi_{K/k}>` when an exceptional zero of the closure is known.
    pub nu: i64,
}

/// Reports for every envelope that applies to the input.
pub fn envelope_reports(input: &EnvelopeInput<'_>) -> Result<Vec<EnvelopeReport>> {
    let data = input.conductors;
    let chi = input.chi;
    let eps = epsilon_chi(chi, input.siegel, data.disc_base, data.base_degree)?;
    let q = data.q_of(chi)?;
    let label = chi.label();
    let mk = |name: &str, s: &Shapes| EnvelopeReport::new(input.family, input.field, &label, name, input.t, input.kappa, s);
    let mut out = Vec::new();
    if let Some(dk) = data.disc_closure {
        out.push(mk("disc", &disc_envelope(chi, &input.induction, dk, input.nu)?));
    }
    out.push(mk("cond", &cond_envelope(chi, &input.induction, data.disc_base, q, eps)?));
    let cor = corollary_envelopes(chi, data, eps)?;
    if let Some(s) = &cor.nonexceptional {
        out.push(mk("nonexceptional", s));
    }
    out.push(mk("irreducibles", &cor.irreducibles));
    out.push(mk("decomposed", &cor.decomposed));
    if q > std::f64::consts::E {
        out.push(mk("grh", &grh_envelope(chi, &input.induction, data.disc_base, q)?));
    }
    Ok(out)
}
