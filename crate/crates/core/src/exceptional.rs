//! Real zeros of quadratic Dirichlet L-functions near `s = 1` and the
//! quantities attached to them: eta factors, the Stark floor shape and the
//! repulsion inequality between two exceptional zeros.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::poly::jacobi;
use crate::scalar::{CompensatedSum, Real};

pub use crate::special::{e1, eta_t};

/// Largest `|d|` accepted by [`dirichlet_l_real`].
pub const MAX_CONDUCTOR: u64 = 10_000_000;

/// Grid points per exceptional region in [`find_siegel_zero`].
pub const SCAN_STEPS: usize = 64;

/// Bisection stops once the bracket is this narrow.
pub const BISECTION_TOL: f64 = 1e-12;

/// Full periods summed directly before the Euler-Maclaurin tail.
const DIRECT_PERIODS: u64 = 32;

/// `B_2, B_4, B_6, B_8, B_10`.
const BERNOULLI_EVEN: [f64; 5] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0];

/// Whether `d` is a fundamental discriminant (`d = 1` excluded).
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

fn squarefree(mut n: u64) -> bool {
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Kronecker symbol `(d / n)` for `n >= 1`.
pub fn kronecker(d: i64, n: u64) -> i64 {
    assert!(n >= 1, "kronecker symbol needs n >= 1");
    let twos = n.trailing_zeros();
    let odd = n >> twos;
    let two_symbol = if d % 2 == 0 {
        0
    } else if matches!(d.rem_euclid(8), 1 | 7) {
        1
    } else {
        -1
    };
    let s = if twos == 0 { 1 } else if twos.is_multiple_of(2) { two_symbol * two_symbol } else { two_symbol };
    s * jacobi(d, odd) as i64
}

/// The primitive real character `chi_d` of a fundamental discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticCharSpec {
    d: i64,
}

impl QuadraticCharSpec {
    pub fn new(d: i64) -> Result<Self> {
        if is_fundamental(d) {
            Ok(Self { d })
        } else {
            Err(Error::NotFundamental(d))
        }
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn conductor(&self) -> u64 {
        self.d.unsigned_abs()
    }

    pub fn value(&self, n: u64) -> i64 {
        kronecker(self.d, n)
    }

    /// `chi_d(-1) = 1`.
    pub fn is_even(&self) -> bool {
        self.d > 0
    }

    /// `chi_d(a)` for `a = 0 .. q-1`.
    pub fn values(&self) -> Vec<i64> {
        let q = self.conductor();
        (0..q).map(|a| if a == 0 { 0 } else { self.value(a) }).collect()
    }
}

/// `L(s, chi_d)` for real `s` in `(1/2, 3/2]`.
///
/// Splits `sum chi(n) n^-s` by residue `a mod q`. The first
/// [`DIRECT_PERIODS`] periods are summed directly; the rest of each residue
/// class is an Euler-Maclaurin tail of `(kq + a)^-s`. The tails' integral
/// terms carry a `1/(s - 1)` that cancels across residues, and is written
/// with `expm1` so `s = 1` needs no special case.
pub fn dirichlet_l_real<F: Real>(spec: &QuadraticCharSpec, s: F) -> Result<F> {
    let q = spec.conductor();
    if q > MAX_CONDUCTOR {
        return Err(Error::PrecisionBudget(format!("conductor {q} above {MAX_CONDUCTOR}")));
    }
    if !(s > F::lit(0.5) && s <= F::lit(1.5)) {
        return Err(Error::Domain(format!("L(s, chi_d) evaluated only for s in (1/2, 3/2], got {s}")));
    }
    let chi = spec.values();
    let mut direct = CompensatedSum::new();
    for n in 1..=DIRECT_PERIODS * q {
        let c = chi[(n % q) as usize];
        if c != 0 {
            direct.add(F::lit(c as f64) * (-s * F::from_count(n).ln()).exp());
        }
    }
    let qf = F::from_count(q);
    let kq = F::from_count(DIRECT_PERIODS) * qf;
    let one_minus_s = F::one() - s;
    let half = F::lit(0.5);
    let mut tail = CompensatedSum::new();
    for (a, &c) in chi.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let cf = F::lit(c as f64);
        // Residue class a: terms f(k) = (kq + a)^-s for k >= DIRECT_PERIODS.
        let x0 = kq + F::from_count(a as u64);
        let lx = x0.ln();
        let z = one_minus_s * lx;
        let phi = if z == F::zero() { F::one() } else { z.exp_m1() / z };
        // int_K^inf f = (x0^(1-s) - 1)/(q (s-1)) after dropping the constant that cancels.
        let mut acc = -lx * phi / qf;
        let f0 = (-s * lx).exp();
        acc = acc + half * f0;
        // f^(m)(K) = (-1)^m s(s+1)..(s+m-1) q^m x0^(-s-m).
        let ratio = qf / x0;
        let mut deriv = f0;
        let mut rising = F::one();
        let mut m = 0u32;
        let mut factorial = F::one();
        for (j, &b) in BERNOULLI_EVEN.iter().enumerate() {
            let order = 2 * j as u32 + 1;
            while m < order {
                rising = rising * (s + F::from_count(m as u64));
                deriv = deriv * ratio;
                m += 1;
            }
            let fm = -rising * deriv; // odd order derivative
            factorial = factorial * F::from_count(order as u64) * F::from_count(order as u64 + 1);
            acc = acc - F::lit(b) / factorial * fm;
        }
        tail.add(cf * acc);
    }
    Ok(direct.value() + tail.value())
}

/// Left end of the exceptional region, `1 - 1/(4 log q)`.
pub fn region_lo(q: f64) -> f64 {
    1.0 - 1.0 / (4.0 * q.ln())
}

/// Scans `[lo, hi]` on `steps` equal intervals for sign changes of `f`,
/// refining each by bisection. More than one zero is an anomaly.
pub fn scan_for_zero(
    lo: f64,
    hi: f64,
    steps: usize,
    q: u64,
    mut f: impl FnMut(f64) -> Result<f64>,
) -> Result<Option<f64>> {
    let h = (hi - lo) / steps as f64;
    let mut zeros = Vec::new();
    let mut prev_s = lo;
    let mut prev_v = f(lo)?;
    if prev_v == 0.0 {
        zeros.push(lo);
    }
    for i in 1..=steps {
        let s = if i == steps { hi } else { lo + h * i as f64 };
        let v = f(s)?;
        if v == 0.0 {
            zeros.push(s);
        } else if prev_v != 0.0 && (prev_v < 0.0) != (v < 0.0) {
            let (mut a, mut b, mut fa) = (prev_s, s, prev_v);
            while b - a > BISECTION_TOL {
                let mid = 0.5 * (a + b);
                let fm = f(mid)?;
                if fm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if (fm < 0.0) == (fa < 0.0) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            zeros.push(0.5 * (a + b));
        }
        prev_s = s;
        prev_v = v;
    }
    match zeros.len() {
        0 => Ok(None),
        1 => Ok(Some(zeros[0])),
        count => Err(Error::ZeroAnomaly { q, count }),
    }
}

/// Real zero of `L(s, chi_d)` in `[1 - 1/(4 log q), 1]`, if any.
pub fn find_siegel_zero(spec: &QuadraticCharSpec) -> Result<Option<f64>> {
    let q = spec.conductor();
    let lo = region_lo(q as f64);
    scan_for_zero(lo, 1.0, SCAN_STEPS, q, |s| dirichlet_l_real(spec, s))
}

/// `(1 - beta) log q`.
pub fn eta_plain(beta: f64, q: f64) -> f64 {
    (1.0 - beta) * q.ln()
}

/// `(D_k q)^(-1/(2 n_k))`, the shape of the effective lower bound for
/// `1 - beta`.
pub fn stark_floor(disc_k: f64, q: f64, base_degree: u32) -> f64 {
    (disc_k * q).powf(-1.0 / (2.0 * base_degree as f64))
}

/// Outcome of checking the two repulsion inequalities for a pair of zeros.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepulsionReport {
    pub min_beta: f64,
    /// `1 - 1/(12 log(q1 q2))`.
    pub first_rhs: f64,
    pub first_holds: bool,
    /// `1 - log(c2 / ((1 - max beta) log(q1 q2))) / (c1 log(q1 q2))`.
    pub second_rhs: f64,
    pub second_holds: bool,
}

/// Slack for comparing `min beta` with the right-hand sides.
const REPULSION_SLACK: f64 = 1e-12;

pub fn dh_repulsion_check(q1: f64, q2: f64, beta1: f64, beta2: f64, c1: f64, c2: f64) -> RepulsionReport {
    let l = (q1 * q2).ln();
    let min_beta = beta1.min(beta2);
    let max_beta = beta1.max(beta2);
    let first_rhs = 1.0 - 1.0 / (12.0 * l);
    let second_rhs = 1.0 - (c2 / ((1.0 - max_beta) * l)).ln() / (c1 * l);
    RepulsionReport {
        min_beta,
        first_rhs,
        first_holds: min_beta <= first_rhs + REPULSION_SLACK,
        second_rhs,
        second_holds: min_beta <= second_rhs + REPULSION_SLACK,
    }
}

/// Scan outcome for one real linear character.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelRecord {
    pub psi: String,
    /// Analytic conductor.
    pub q: f64,
    pub beta: Option<f64>,
    /// `(1 - beta) log q` when `beta` is present.
    pub eta_plain: Option<f64>,
    pub region_lo: f64,
}

impl SiegelRecord {
    /// Record for `psi`; a zero must lie in the exceptional region.
    pub fn new(psi: impl Into<String>, q: f64, beta: Option<f64>) -> Result<Self> {
        if !(q >= 3.0) {
            return Err(Error::Domain(format!("conductor {q} below 3")));
        }
        let lo = region_lo(q);
        if let Some(b) = beta {
            if !(b > lo && b < 1.0) {
                return Err(Error::Domain(format!("zero {b} outside the exceptional region ({lo}, 1)")));
            }
        }
        Ok(Self { psi: psi.into(), q, beta, eta_plain: beta.map(|b| eta_plain(b, q)), region_lo: lo })
    }

    /// Scans `chi_d` and records the result.
    pub fn scan(spec: &QuadraticCharSpec) -> Result<Self> {
        let beta = find_siegel_zero(spec)?;
        Self::new(format!("chi_{}", spec.discriminant()), spec.conductor() as f64, beta)
    }
}

/// The records carrying an exceptional zero.
pub fn psi_set(records: &[SiegelRecord]) -> Vec<&SiegelRecord> {
    records.iter().filter(|r| r.beta.is_some()).collect()
}

/// One row of a discriminant scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub d: i64,
    pub q: u64,
    pub beta: Option<f64>,
    pub eta_plain: Option<f64>,
    pub stark_floor: f64,
    pub scan_time_ms: f64,
}

/// Scans one fundamental discriminant over `Q`.
pub fn scan_discriminant(d: i64) -> Result<ScanRow> {
    let spec = QuadraticCharSpec::new(d)?;
    let start = Instant::now();
    let beta = find_siegel_zero(&spec)?;
    let q = spec.conductor();
    Ok(ScanRow {
        d,
        q,
        beta,
        eta_plain: beta.map(|b| eta_plain(b, q as f64)),
        stark_floor: stark_floor(1.0, q as f64, 1),
        scan_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn fundamental_discriminants() {
        let small: Vec<i64> = (-20..=20).filter(|&d| is_fundamental(d)).collect();
        assert_eq!(small, vec![-20, -19, -15, -11, -8, -7, -4, -3, 5, 8, 12, 13, 17]);
        assert!(QuadraticCharSpec::new(-12).is_err());
    }

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(8, 7), 1);
        assert_eq!(kronecker(-3, 4), 1);
    }

    #[test]
    fn l_values_at_one() {
        let l = |d| dirichlet_l_real(&QuadraticCharSpec::new(d).unwrap(), 1.0f64).unwrap();
        assert!((l(-4) - PI / 4.0).abs() < 1e-12);
        assert!((l(5) - 2.0 * ((1.0 + 5f64.sqrt()) / 2.0).ln() / 5f64.sqrt()).abs() < 1e-12);
        assert!((l(-3) - PI / (3.0 * 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn l_off_one_is_continuous() {
        let spec = QuadraticCharSpec::new(-4).unwrap();
        let at = dirichlet_l_real(&spec, 1.0f64).unwrap();
        let near = dirichlet_l_real(&spec, 1.0 + 1e-9).unwrap();
        assert!((at - near).abs() < 1e-8);
        // Dirichlet beta(3/4) from the alternating series.
        let direct: f64 = (0..2_000_000u64).map(|k| (if k % 2 == 0 { 1.0 } else { -1.0 }) / ((2 * k + 1) as f64).powf(0.75)).sum();
        let v = dirichlet_l_real(&spec, 0.75f64).unwrap();
        assert!((v - direct).abs() < 1e-4);
    }

    #[test]
    fn synthetic_zero() {
        let beta0 = 0.9321;
        let z = scan_for_zero(0.8, 1.0, SCAN_STEPS, 7, |s| Ok(s - beta0)).unwrap().unwrap();
        assert!((z - beta0).abs() < 1e-12);
        let two = scan_for_zero(0.8, 1.0, SCAN_STEPS, 7, |s| Ok((s - 0.85) * (s - 0.95)));
        assert!(matches!(two, Err(Error::ZeroAnomaly { count: 2, .. })));
    }

    #[test]
    fn no_zero_for_small_conductors() {
        for d in [-4, 5, -3, 8] {
            assert_eq!(find_siegel_zero(&QuadraticCharSpec::new(d).unwrap()).unwrap(), None);
        }
    }

    #[test]
    fn plain_and_floor() {
        assert!((eta_plain(0.99, 100.0) - 0.046_051_701_859_880_9).abs() < 1e-15);
        let q = 77.0;
        assert!((eta_plain(region_lo(q), q) - 0.25).abs() < 1e-15);
        assert!((stark_floor(1.0, 1e4, 1) - 1e-2).abs() < 1e-15);
        assert!((stark_floor(4.0, 25.0, 2) - 100f64.powf(-0.25)).abs() < 1e-15);
    }

    #[test]
    fn repulsion_examples() {
        let q = 10f64.exp();
        let b = 1.0 - 1.0 / 240.0;
        let r = dh_repulsion_check(q, q, b, b, 12.0, 1.0 / 12.0);
        assert!((r.first_rhs - b).abs() < 1e-15 && r.first_holds);
        // (1 - max beta) log(q1 q2) = 1/12 gives log 1 = 0: second RHS is 1.
        let edge = 1.0 - 1.0 / 240.0;
        let r = dh_repulsion_check(q, q, 0.5, edge, 12.0, 1.0 / 12.0);
        assert!(r.second_rhs >= 1.0 - 1e-15 && r.second_holds);
    }

    #[test]
    fn psi_membership() {
        let q = 1000.0f64;
        let inside = SiegelRecord::new("psi", q, Some(1.0 - 1.0 / (8.0 * q.ln()))).unwrap();
        let none = SiegelRecord::new("phi", q, None).unwrap();
        let records = [inside.clone(), none];
        assert_eq!(psi_set(&records), vec![&inside]);
        assert!(psi_set(&[]).is_empty());
        assert!(SiegelRecord::new("psi", q, Some(0.5)).is_err());
    }
}
