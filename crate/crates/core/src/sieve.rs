//! Segmented sieve of Eratosthenes with a process-wide cache.
//!
//! Segments are fixed-width and sieved independently, so the output is the
//! same for every worker count. When `ARTIN_KAPPA_CACHE` names a writable
//! directory, prime lists are also persisted there as little-endian `u64`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

/// Environment variable naming the on-disk cache directory.
pub const CACHE_ENV: &str = "ARTIN_KAPPA_CACHE";

const SEGMENT: u64 = 1 << 18;

/// Primes `<= n`, ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    primes_up_to_with(n, 1)
}

/// As [`primes_up_to`], sieving segments on `workers` threads.
pub fn primes_up_to_with(n: u64, workers: usize) -> Vec<u64> {
    // (limit, primes up to limit)
    static CACHE: OnceLock<Mutex<(u64, Arc<Vec<u64>>)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new((0, Arc::new(Vec::new()))));
    let (lim, cached) = cache.lock().expect("sieve cache poisoned").clone();
    if n <= lim {
        return take_up_to(&cached, n);
    }
    let primes = load_from_disk(n).unwrap_or_else(|| {
        let v = crate::parallel::install(workers, || sieve(n));
        store_on_disk(n, &v);
        v
    });
    let mut guard = cache.lock().expect("sieve cache poisoned");
    if n > guard.0 {
        *guard = (n, Arc::new(primes.clone()));
    }
    primes
}

fn take_up_to(primes: &[u64], n: u64) -> Vec<u64> {
    primes[..primes.partition_point(|&p| p <= n)].to_vec()
}

/// Plain sieve for `[0, n]`; used for the base primes of a segmented run.
fn simple_sieve(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn sieve(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let base = simple_sieve((n as f64).sqrt() as u64 + 1);
    let segments = n / SEGMENT + 1;
    let chunks: Vec<Vec<u64>> = (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = s * SEGMENT;
            let hi = ((s + 1) * SEGMENT - 1).min(n);
            segment(lo, hi, &base)
        })
        .collect();
    chunks.concat()
}

/// Primes in `[lo, hi]` given all primes up to `sqrt(hi)`.
pub fn segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let lo = lo.max(2);
    let mut composite = vec![false; (hi - lo + 1) as usize];
    for &p in base {
        if p * p > hi {
            break;
        }
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut j = start;
        while j <= hi {
            composite[(j - lo) as usize] = true;
            j += p;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| lo + i as u64)
        .collect()
}

fn cache_dir() -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let dir = PathBuf::from(dir);
    dir.is_dir().then_some(dir)
}

fn cache_file(dir: &Path, n: u64) -> PathBuf {
    dir.join(format!("primes-upto-{n}.u64le"))
}

fn load_from_disk(n: u64) -> Option<Vec<u64>> {
    let dir = cache_dir()?;
    let best = fs::read_dir(&dir)
        .ok()?
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let name = e.file_name().into_string().ok()?;
            let lim: u64 = name.strip_prefix("primes-upto-")?.strip_suffix(".u64le")?.parse().ok()?;
            (lim >= n).then_some(lim)
        })
        .min()?;
    let bytes = fs::read(cache_file(&dir, best)).ok()?;
    if bytes.len() % 8 != 0 {
        return None;
    }
    let primes: Vec<u64> = bytes.chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap())).collect();
    Some(take_up_to(&primes, n))
}

fn store_on_disk(n: u64, primes: &[u64]) {
    let Some(dir) = cache_dir() else { return };
    let bytes: Vec<u8> = primes.iter().flat_map(|p| p.to_le_bytes()).collect();
    // write-then-rename keeps concurrent readers from seeing a torn file
    let tmp = dir.join(format!(".primes-upto-{n}.{}.tmp", std::process::id()));
    if fs::write(&tmp, bytes).is_ok() {
        let _ = fs::rename(&tmp, cache_file(&dir, n));
    }
}
