//! Reference values computed without the library: Kronecker symbols by
//! trial factorization, L(1, chi_d) from finite closed forms, class numbers
//! by counting reduced forms, and an adaptive quadrature.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Legendre symbol by Euler's criterion, `p` an odd prime.
fn legendre(a: i64, p: u64) -> i64 {
    let a = a.rem_euclid(p as i64) as u128;
    if a == 0 {
        return 0;
    }
    let (mut base, mut e, mut acc) = (a, (p - 1) / 2, 1u128);
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol `(d / n)` from the factorization of `n`.
pub fn kronecker(d: i64, mut n: u64) -> i64 {
    let mut out = 1;
    let mut p = 2;
    while n > 1 {
        if p * p > n {
            p = n;
        }
        while n.is_multiple_of(p) {
            n /= p;
            out *= if p == 2 {
                match d.rem_euclid(8) {
                    1 | 7 => 1,
                    3 | 5 => -1,
                    _ => 0,
                }
            } else {
                legendre(d, p)
            };
        }
        p += 1;
    }
    out
}

pub fn is_fundamental(d: i64) -> bool {
    let squarefree = |n: u64| (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p * p));
    match d.rem_euclid(4) {
        1 => d != 1 && squarefree(d.unsigned_abs()),
        0 => matches!((d / 4).rem_euclid(4), 2 | 3) && squarefree((d / 4).unsigned_abs()),
        _ => false,
    }
}

/// `L(1, chi_d)` by the finite formulas
/// `-(pi/|d|^(3/2)) sum chi(a) a` for `d < 0` and
/// `-(1/sqrt d) sum chi(a) log sin(pi a/d)` for `d > 0`.
pub fn l1_quadratic(d: i64) -> f64 {
    let q = d.unsigned_abs();
    if d < 0 {
        let s: i64 = (1..q).map(|a| kronecker(d, a) * a as i64).sum();
        -PI / (q as f64).powf(1.5) * s as f64
    } else {
        let s: f64 = (1..q).map(|a| kronecker(d, a) as f64 * (PI * a as f64 / q as f64).sin().ln()).sum();
        -s / (q as f64).sqrt()
    }
}

/// Class number of discriminant `d < 0` by counting reduced forms.
pub fn class_number(d: i64) -> u64 {
    assert!(d < 0);
    let n = -d;
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (a == c) {
                continue;
            }
            if gcd(gcd(a, b.abs()), c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Residue of the Dedekind zeta function of a cubic field with one real
/// place, class number 1 and regulator `r`: `2 (2 pi) r / (2 sqrt|D|)`.
pub fn complex_cubic_residue(disc: i64, regulator: f64) -> f64 {
    2.0 * PI * regulator / (disc.unsigned_abs() as f64).sqrt()
}

/// Real root of a monic cubic `x^3 + a x^2 + b x + c` with one real root.
pub fn real_cubic_root(a: f64, b: f64, c: f64) -> f64 {
    let f = |x: f64| ((x + a) * x + b) * x + c;
    let (mut lo, mut hi) = (-100.0, 100.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Unit regulators from explicit fundamental units.
pub mod regulators {
    use super::real_cubic_root;

    /// `x^3 - x - 1`: the real root itself.
    pub fn x3_minus_x_minus_1() -> f64 {
        real_cubic_root(0.0, -1.0, -1.0).ln().abs()
    }

    /// `x^3 + x - 1`: the real root itself.
    pub fn x3_plus_x_minus_1() -> f64 {
        real_cubic_root(0.0, 1.0, -1.0).ln().abs()
    }

    /// `x^3 - 2`: `1 + 2^(1/3) + 2^(2/3)`.
    pub fn x3_minus_2() -> f64 {
        let c = 2f64.cbrt();
        (1.0 + c + c * c).ln()
    }
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `exp(-int_tau^inf t^(beta-2)/log t dt)` by quadrature. With
/// `v = (1 - beta) log t` and `w = log v` the integrand is `exp(-e^w)`.
pub fn eta_by_quadrature(beta: f64, tau: f64) -> f64 {
    let x = (1.0 - beta) * tau.ln();
    let g = |w: f64| (-w.exp()).exp();
    let upper = (x + 60.0).ln();
    (-adaptive_simpson(&g, x.ln(), upper, 1e-14)).exp()
}

/// Primes up to `n` by a plain sieve.
pub fn primes(n: usize) -> Vec<u64> {
    let mut is = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if is[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                is[j] = false;
                j += i;
            }
        }
    }
    out
}

