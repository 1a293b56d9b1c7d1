//! Integer polynomials and polynomial arithmetic over prime fields.
//!
//! Coefficient vectors are stored lowest degree first. Over `F_p` the
//! zero polynomial is the empty vector and every other vector has a
//! nonzero last entry.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest prime accepted by the modular routines.
pub const MAX_PRIME: u64 = (1 << 63) - 1;

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    if p < (1 << 32) {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

#[inline]
pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powmod(a, p - 2, p)
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Checks that `f` is a monic integer polynomial of degree at least 1.
pub fn check_monic(f: &[i64]) -> Result<()> {
    match f.last() {
        Some(1) if f.len() >= 2 => Ok(()),
        _ => Err(Error::InvalidPolynomial(format!("{f:?} is not monic of positive degree"))),
    }
}

/// `disc(f) = (-1)^(n(n-1)/2) Res(f, f')` for monic `f`.
pub fn discriminant(f: &[i64]) -> Result<BigInt> {
    check_monic(f)?;
    let n = f.len() - 1;
    if n == 1 {
        return Ok(BigInt::one());
    }
    let fp: Vec<i64> = (1..=n).map(|i| f[i] * i as i64).collect();
    let res = resultant(f, &fp);
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -res } else { res })
}

/// Resultant via the Sylvester matrix and fraction-free elimination.
pub fn resultant(f: &[i64], g: &[i64]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // rows hold coefficients highest degree first
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            mat[i][i + j] = BigInt::from(*c);
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            mat[n + i][i + j] = BigInt::from(*c);
        }
    }
    bareiss_determinant(mat)
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Reduces integer coefficients mod `p` and trims.
pub fn reduce(f: &[i64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f.iter().map(|&c| (c as i128).rem_euclid(p as i128) as u64).collect();
    trim(&mut out);
    out
}

/// Reduces a big integer mod `p`.
pub fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    u64::try_from(r).expect("residue fits")
}

fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn degree(f: &[u64]) -> usize {
    f.len().saturating_sub(1)
}

fn make_monic(f: &mut [u64], p: u64) {
    if let Some(&lead) = f.last() {
        if lead != 1 {
            let inv = invmod(lead, p);
            for c in f.iter_mut() {
                *c = mulmod(*c, inv, p);
            }
        }
    }
}

fn sub_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = submod(x, y, p);
    }
    trim(&mut out);
    out
}

fn mul_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder by a nonzero polynomial.
fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = degree(b);
    let inv = invmod(*b.last().unwrap(), p);
    let mut q = vec![0; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = mulmod(r[i + db], inv, p);
        q[i] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] = submod(r[i + j], mulmod(c, bj, p), p);
        }
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    make_monic(&mut a, p);
    a
}

fn derivative(f: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect();
    trim(&mut out);
    out
}

/// `base^e mod modulus`.
fn powmod_poly(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1];
    let mut b = rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul_poly(&result, &b, p), modulus, p);
        }
        e >>= 1;
        if e > 0 {
            b = rem(&mul_poly(&b, &b, p), modulus, p);
        }
    }
    result
}

/// Degrees of the irreducible factors of a monic square-free `g` over F_p.
fn distinct_degree(g: &[u64], p: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut g = g.to_vec();
    let x = vec![0, 1];
    let mut h = rem(&x, &g, p);
    let mut d = 1usize;
    while degree(&g) >= 2 * d {
        h = powmod_poly(&h, p, &g, p);
        let f = gcd(&g, &sub_poly(&h, &x, p), p);
        let k = degree(&f);
        if k > 0 {
            out.extend(std::iter::repeat_n(d as u32, k / d));
            g = divrem(&g, &f, p).0;
            h = rem(&h, &g, p);
        }
        d += 1;
    }
    if degree(&g) > 0 {
        out.push(degree(&g) as u32);
    }
    out.sort_unstable();
    out
}

/// Sorted degrees of the irreducible factors of `f mod p`.
///
/// Fails with [`Error::RamifiedPrime`] when `f mod p` has a repeated
/// factor, i.e. when `p | disc(f)`.
pub fn degree_pattern(f: &[i64], p: u64) -> Result<Vec<u32>> {
    check_monic(f)?;
    if p > MAX_PRIME {
        return Err(Error::PrimeTooLarge { p });
    }
    let g = reduce(f, p);
    if degree(&gcd(&g, &derivative(&g, p), p)) > 0 {
        return Err(Error::RamifiedPrime { p });
    }
    Ok(distinct_degree(&g, p))
}

/// Factor degrees with multiplicities, `(degree, exponent)` sorted, for
/// any `p`. Uses square-free decomposition in characteristic `p`.
pub fn factor_shape(f: &[i64], p: u64) -> Result<Vec<(u32, u32)>> {
    check_monic(f)?;
    if p > MAX_PRIME {
        return Err(Error::PrimeTooLarge { p });
    }
    let mut out = Vec::new();
    squarefree_parts(&reduce(f, p), p, 1, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn squarefree_parts(f: &[u64], p: u64, scale: u32, out: &mut Vec<(u32, u32)>) {
    if degree(f) == 0 {
        return;
    }
    let df = derivative(f, p);
    if df.is_empty() {
        // f(x) = g(x^p); over F_p, g(x^p) = (g with coefficients^(1/p))(x)^p
        // and a^(1/p) = a on F_p.
        let g: Vec<u64> = f.iter().step_by(p as usize).copied().collect();
        squarefree_parts(&g, p, scale * p as u32, out);
        return;
    }
    // Yun-style loop: w_i collects the factors of multiplicity exactly i.
    let mut c = gcd(f, &df, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1u32;
    while degree(&w) > 0 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if degree(&z) > 0 {
            for d in distinct_degree(&z, p) {
                out.push((d, i * scale));
            }
        }
        c = divrem(&c, &y, p).0;
        w = y;
        i += 1;
    }
    if degree(&c) > 0 {
        // what is left is a p-th power
        let g: Vec<u64> = c.iter().step_by(p as usize).copied().collect();
        squarefree_parts(&g, p, scale * p as u32, out);
    }
}

/// Whether `f` is provably irreducible over Q from factorization patterns
/// at unramified primes up to `bound`: a factor of degree `a` would force
/// every pattern to contain a sub-multiset summing to `a`.
pub fn irreducible_by_patterns(f: &[i64], disc: &BigInt, bound: u64) -> Result<bool> {
    check_monic(f)?;
    let n = f.len() - 1;
    if n == 1 {
        return Ok(true);
    }
    if disc.is_zero() {
        return Ok(false);
    }
    let mut possible = vec![true; n + 1];
    for p in crate::sieve::primes_up_to(bound).iter().copied() {
        if bigint_mod(disc, p) == 0 {
            continue;
        }
        let pattern = degree_pattern(f, p)?;
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for &d in &pattern {
            for s in (d as usize..=n).rev() {
                sums[s] |= sums[s - d as usize];
            }
        }
        for a in 1..n {
            possible[a] &= sums[a];
        }
        if (1..n).all(|a| !possible[a]) {
            return Ok(true);
        }
    }
    Ok(false)
}
