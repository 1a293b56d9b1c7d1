//! Character tables shipped with the library.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use super::table::{ClassInfo, GroupTable};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Names accepted by [`builtin`], besides the generic `C<n>`.
pub const BUILTIN_NAMES: &[&str] = &["C2", "C3", "C4", "C2xC2", "S3", "D4", "D5", "F20"];

/// Largest cyclic order accepted by the `C<n>` constructor.
pub const MAX_CYCLIC_ORDER: u32 = 720;

/// Looks up a built-in table by name (case-insensitive); `V4` aliases
/// `C2xC2` and `C<n>` builds the cyclic group of order `n`.
pub fn builtin(name: &str) -> Result<Arc<GroupTable>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<GroupTable>>>> = OnceLock::new();
    let key = name.trim().to_ascii_uppercase();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("table cache poisoned").get(&key) {
        return Ok(t.clone());
    }
    let table = match key.as_str() {
        "C2XC2" | "V4" | "KLEIN4" => klein_four(),
        "S3" => symmetric3(),
        "D4" => dihedral4(),
        "D5" => dihedral5(),
        "F20" => frobenius20(),
        other => match other.strip_prefix('C').and_then(|n| n.parse::<u32>().ok()) {
            Some(n) if (1..=MAX_CYCLIC_ORDER).contains(&n) => cyclic(n),
            _ => return Err(Error::UnknownGroup(name.to_string())),
        },
    }?;
    let table = Arc::new(table);
    cache.lock().expect("table cache poisoned").insert(key, table.clone());
    Ok(table)
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn ints(n: u32, v: &[i64]) -> Vec<Cyclotomic> {
    v.iter().map(|&x| Cyclotomic::from_integer(n, x)).collect()
}

/// Cyclic group of order `n`: classes `e, g, g2, ...`, characters
/// `chi_j(g^k) = zeta_n^(jk)` named `1, chi1, chi2, ...`.
pub fn cyclic(n: u32) -> Result<GroupTable> {
    let class_id = |k: u32| match k {
        0 => "e".to_string(),
        1 => "g".to_string(),
        _ => format!("g{k}"),
    };
    let classes: Vec<ClassInfo> = (0..n).map(|k| ClassInfo::new(class_id(k), 1, n / k.gcd(&n))).collect();
    let power_map = (0..n)
        .map(|k| {
            let o = n / k.gcd(&n);
            (0..o).map(|m| ((k as u64 * m as u64) % n as u64) as usize).collect()
        })
        .collect();
    let irreducibles = (0..n)
        .map(|j| (0..n).map(|k| Cyclotomic::root(n, j as i64 * k as i64)).collect())
        .collect();
    let irr_names = (0..n).map(|j| if j == 0 { "1".to_string() } else { format!("chi{j}") }).collect();
    GroupTable::new(format!("C{n}"), classes, power_map, irreducibles, irr_names)
}

/// `C2 x C2 = {e, a, b, ab}`; `chi_x` is the nontrivial character with `x`
/// in its kernel.
fn klein_four() -> Result<GroupTable> {
    let classes = vec![
        ClassInfo::new("e", 1, 1),
        ClassInfo::new("a", 1, 2),
        ClassInfo::new("b", 1, 2),
        ClassInfo::new("ab", 1, 2),
    ];
    let power_map = vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3]];
    let irr = vec![
        ints(2, &[1, 1, 1, 1]),
        ints(2, &[1, 1, -1, -1]),
        ints(2, &[1, -1, 1, -1]),
        ints(2, &[1, -1, -1, 1]),
    ];
    GroupTable::new("C2xC2", classes, power_map, irr, names(&["1", "chi_a", "chi_b", "chi_ab"]))
}

/// Symmetric group on three letters: transpositions `c2`, 3-cycles `c3`.
fn symmetric3() -> Result<GroupTable> {
    let classes = vec![ClassInfo::new("e", 1, 1), ClassInfo::new("c2", 3, 2), ClassInfo::new("c3", 2, 3)];
    let power_map = vec![vec![0], vec![0, 1], vec![0, 2, 2]];
    let irr = vec![ints(6, &[1, 1, 1]), ints(6, &[1, -1, 1]), ints(6, &[2, 0, -1])];
    GroupTable::new("S3", classes, power_map, irr, names(&["1", "sgn", "std"]))
}

/// Dihedral group of order 8 with rotation `r` of order 4 and reflections
/// `s`, `sr` in two classes.
fn dihedral4() -> Result<GroupTable> {
    let classes = vec![
        ClassInfo::new("e", 1, 1),
        ClassInfo::new("r2", 1, 2),
        ClassInfo::new("r", 2, 4),
        ClassInfo::new("s", 2, 2),
        ClassInfo::new("sr", 2, 2),
    ];
    let power_map = vec![vec![0], vec![0, 1], vec![0, 2, 1, 2], vec![0, 3], vec![0, 4]];
    let irr = vec![
        ints(4, &[1, 1, 1, 1, 1]),
        ints(4, &[1, 1, 1, -1, -1]),
        ints(4, &[1, 1, -1, 1, -1]),
        ints(4, &[1, 1, -1, -1, 1]),
        ints(4, &[2, -2, 0, 0, 0]),
    ];
    GroupTable::new("D4", classes, power_map, irr, names(&["1", "a", "b", "c", "std"]))
}

/// Dihedral group of order 10; `psi1` takes `z + z^4` on `r`
/// (`z = exp(2 pi i / 5)`), `psi2` is its Galois conjugate.
fn dihedral5() -> Result<GroupTable> {
    let n = 10;
    let z5 = |k: i64| Cyclotomic::root(n, 2 * k);
    let a = &z5(1) + &z5(4);
    let b = &z5(2) + &z5(3);
    let int = |v: i64| Cyclotomic::from_integer(n, v);
    let classes = vec![
        ClassInfo::new("e", 1, 1),
        ClassInfo::new("r", 2, 5),
        ClassInfo::new("r2", 2, 5),
        ClassInfo::new("s", 5, 2),
    ];
    let power_map = vec![vec![0], vec![0, 1, 2, 2, 1], vec![0, 2, 1, 1, 2], vec![0, 3]];
    let irr = vec![
        ints(n, &[1, 1, 1, 1]),
        ints(n, &[1, 1, 1, -1]),
        vec![int(2), a.clone(), b.clone(), int(0)],
        vec![int(2), b, a, int(0)],
    ];
    GroupTable::new("D5", classes, power_map, irr, names(&["1", "sgn", "psi1", "psi2"]))
}

/// Frobenius group `C5 : C4` of order 20. `c4a` holds a generator `a` of
/// the complement, `c4b` its inverse, `c2` its square. The linear
/// characters factor through `C4`: `psi4(a) = i`, `lambda2(a) = -1`,
/// `psi4bar(a) = -i`.
fn frobenius20() -> Result<GroupTable> {
    let n = 20;
    let i = |k: i64| Cyclotomic::root(n, 5 * k);
    let int = |v: i64| Cyclotomic::from_integer(n, v);
    let classes = vec![
        ClassInfo::new("e", 1, 1),
        ClassInfo::new("c5", 4, 5),
        ClassInfo::new("c4a", 5, 4),
        ClassInfo::new("c2", 5, 2),
        ClassInfo::new("c4b", 5, 4),
    ];
    let power_map = vec![vec![0], vec![0, 1, 1, 1, 1], vec![0, 2, 3, 4], vec![0, 3], vec![0, 4, 3, 2]];
    let linear = |j: i64| vec![int(1), int(1), i(j), i(2 * j), i(3 * j)];
    let irr = vec![linear(0), linear(1), linear(2), linear(3), ints(n, &[4, -1, 0, 0, 0])];
    GroupTable::new("F20", classes, power_map, irr, names(&["1", "psi4", "lambda2", "psi4bar", "deg4"]))
}
