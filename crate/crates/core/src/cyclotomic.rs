//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(N)-1)` of
//! `Q(z) = Q[x]/Phi_N(x)` with arbitrary-precision rational coordinates,
//! so equality is structural and character-table identities can be
//! checked with no rounding at all.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Real;

struct FieldData {
    phi: usize,
    /// `x^k mod Phi_N` for `k` in `0..powers.len()`.
    powers: Vec<Vec<BigRational>>,
}

fn field(order: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic cache poisoned");
    guard.entry(order).or_insert_with(|| Arc::new(FieldData::build(order))).clone()
}

/// Integer coefficients of the cyclotomic polynomial Phi_n, low degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic order must be positive");
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

impl FieldData {
    fn build(order: u32) -> Self {
        let phi_poly = cyclotomic_polynomial(order);
        let phi = phi_poly.len() - 1;
        let span = (order as usize).max(2 * phi);
        let mut powers = Vec::with_capacity(span);
        let mut cur = vec![BigRational::zero(); phi];
        cur[0] = BigRational::one();
        for _ in 0..span {
            powers.push(cur.clone());
            // multiply by x, then fold the x^phi coefficient back
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigRational::zero();
            if !top.is_zero() {
                for (i, c) in phi_poly.iter().take(phi).enumerate() {
                    cur[i] -= &top * BigRational::from_integer(c.clone());
                }
            }
        }
        Self { phi, powers }
    }
}

/// Element of Q(zeta_N).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let f = field(order);
        Self { order, coeffs: vec![BigRational::zero(); f.phi] }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_integer(order: u32, n: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(order: u32, q: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    /// `zeta_order^k`.
    pub fn root(order: u32, k: i64) -> Self {
        let f = field(order);
        let k = k.rem_euclid(order as i64) as usize;
        Self { order, coeffs: f.powers[k].clone() }
    }

    /// `sum_j mult[j] * zeta_o^j` embedded in Q(zeta_order); requires `o | order`.
    pub fn from_root_multiplicities(order: u32, mult: &[i64]) -> Self {
        let o = mult.len() as u32;
        assert!(o >= 1 && order.is_multiple_of(o), "root order must divide field order");
        let step = (order / o) as i64;
        let mut acc = Self::zero(order);
        for (j, &m) in mult.iter().enumerate() {
            if m != 0 {
                acc = &acc + &Self::root(order, j as i64 * step).scale_int(m);
            }
        }
        acc
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Complex conjugate, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let f = field(self.order);
        let n = self.order as usize;
        let mut out = vec![BigRational::zero(); f.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = &f.powers[(n - k % n) % n];
            for (o, b) in out.iter_mut().zip(img) {
                if !b.is_zero() {
                    *o += c * b;
                }
            }
        }
        Self { order: self.order, coeffs: out }
    }

    /// Exact real part `(z + conj z) / 2`.
    pub fn re_part(&self) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        (self + &self.conj()).scale(&half)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn to_complex<F: Real>(&self) -> Complex<F> {
        let n = self.order as f64;
        let mut re = 0.0f64;
        let mut im = 0.0f64;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        Complex::new(F::lit(re), F::lit(im))
    }

    pub fn to_f64_re(&self) -> f64 {
        self.to_complex::<f64>().re
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.order, other.order, "mixing elements of different cyclotomic fields");
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        let f = field(self.order);
        let mut wide = vec![BigRational::zero(); 2 * f.phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let mut out = vec![BigRational::zero(); f.phi];
        for (k, c) in wide.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < f.phi {
                out[k] += c;
            } else {
                for (o, b) in out.iter_mut().zip(&f.powers[k]) {
                    if !b.is_zero() {
                        *o += &c * b;
                    }
                }
            }
        }
        Cyclotomic { order: self.order, coeffs: out }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{k}", self.order)?,
                (_, false) => write!(f, "{mag}*z{}^{k}", self.order)?,
            }
        }
        Ok(())
    }
}

/// Least common multiple helper used when sizing character fields.
pub fn lcm_all(values: impl IntoIterator<Item = u32>) -> u32 {
    values.into_iter().fold(1u32, |acc, v| acc.lcm(&v.max(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_of_unity_multiply() {
        for n in [1u32, 2, 3, 4, 5, 6, 8, 10, 12, 20] {
            for a in 0..n as i64 {
                for b in 0..n as i64 {
                    assert_eq!(&Cyclotomic::root(n, a) * &Cyclotomic::root(n, b), Cyclotomic::root(n, a + b));
                }
            }
            let total = (0..n as i64).fold(Cyclotomic::zero(n), |acc, k| &acc + &Cyclotomic::root(n, k));
            let expected = if n == 1 { Cyclotomic::one(1) } else { Cyclotomic::zero(n) };
            assert_eq!(total, expected);
        }
    }

    #[test]
    fn golden_ratio_in_q_zeta5() {
        // z^2 + z^3 = 2cos(4pi/5) = -(1+sqrt5)/2, root of x^2 + x - 1.
        let x = &Cyclotomic::root(5, 2) + &Cyclotomic::root(5, 3);
        let lhs = &(&x * &x) + &x;
        assert_eq!(lhs, Cyclotomic::one(5));
        assert!(x.is_real());
        assert!((x.to_f64_re() + (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn conjugation_and_real_part() {
        let i = Cyclotomic::root(4, 1);
        assert_eq!(i.conj(), -&i);
        assert!(i.re_part().is_zero());
        assert_eq!((&i * &i.conj()).as_i64(), Some(1));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(Cyclotomic::from_integer(6, -2).to_string(), "-2");
        assert_eq!(Cyclotomic::root(4, 1).to_string(), "z4^1");
    }
}
