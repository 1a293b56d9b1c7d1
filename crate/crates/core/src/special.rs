//! Exponential integral `E1(x) = int_x^inf e^-t / t dt` for `x > 0` and
//! the eta factor built from it.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Power series below this argument, continued fraction above.
const SERIES_CUTOFF: f64 = 1.0;
const MAX_ITER: usize = 500;

/// `E1(x)` to roughly machine precision for `x > 0`.
pub fn e1<F: Real>(x: F) -> Result<F> {
    if !(x > F::zero()) {
        return Err(Error::Domain(format!("E1 needs a positive argument, got {x}")));
    }
    if x.is_infinite() {
        return Ok(F::zero());
    }
    if x <= F::lit(SERIES_CUTOFF) {
        Ok(e1_series(x))
    } else {
        Ok(e1_continued_fraction(x))
    }
}

/// `E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)`.
fn e1_series<F: Real>(x: F) -> F {
    let eps = F::epsilon();
    let mut sum = F::zero();
    let mut term = F::one();
    for k in 1..MAX_ITER {
        let kf = F::from_count(k as u64);
        term = term * (-x) / kf;
        let add = term / kf;
        sum = sum + add;
        if add.abs() < eps * sum.abs() {
            break;
        }
    }
    -F::euler_gamma() - x.ln() - sum
}

/// Modified Lentz evaluation of `e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))`.
fn e1_continued_fraction<F: Real>(x: F) -> F {
    let tiny = F::min_positive_value() / F::epsilon();
    let two = F::lit(2.0);
    let mut b = x + F::one();
    let mut c = F::one() / tiny;
    let mut d = F::one() / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -F::from_count((i * i) as u64);
        b = b + two;
        d = F::one() / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h = h * del;
        if (del - F::one()).abs() < F::epsilon() {
            break;
        }
    }
    h * (-x).exp()
}

/// `eta(beta, tau) = exp(-int_tau^inf t^(beta-2) / log t dt)`.
///
/// Substituting `t = e^u` turns the integral into `E1((1 - beta) log tau)`.
/// Needs `beta < 1` and `tau > 1`.
pub fn eta_t<F: Real>(beta: F, tau: F) -> Result<F> {
    if !(beta < F::one()) {
        return Err(Error::Domain(format!("eta needs beta < 1, got {beta}")));
    }
    if !(tau > F::one()) {
        return Err(Error::Domain(format!("eta needs tau > 1, got {tau}")));
    }
    Ok((-e1((F::one() - beta) * tau.ln())?).exp())
}
