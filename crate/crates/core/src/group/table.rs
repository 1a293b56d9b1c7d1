use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::{lcm_all, Cyclotomic};
use crate::error::{Error, Result};

/// One conjugacy class: identifier, number of elements and element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub id: String,
    pub size: u64,
    pub rep_order: u32,
}

impl ClassInfo {
    pub fn new(id: impl Into<String>, size: u64, rep_order: u32) -> Self {
        Self { id: id.into(), size, rep_order }
    }
}

/// Character table of a finite group together with its power maps.
///
/// Character values are exact elements of Q(zeta_N) with `N` the group
/// exponent. Construction validates the class equation, the power maps and
/// row orthogonality, so every live table is internally consistent.
#[derive(Clone, Debug)]
pub struct GroupTable {
    name: String,
    order: u64,
    classes: Vec<ClassInfo>,
    /// `power_map[c][m]` is the class of `g^m` for `m < rep_order(c)`.
    power_map: Vec<Vec<usize>>,
    irreducibles: Vec<Vec<Cyclotomic>>,
    irreducible_names: Vec<String>,
    identity: usize,
    field_order: u32,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.classes == other.classes
            && self.power_map == other.power_map
            && self.irreducibles == other.irreducibles
    }
}

impl GroupTable {
    /// Builds and validates a table. `irreducibles[i][c]` is the value of
    /// the i-th irreducible on class `c`; values may live in any Q(zeta_M)
    /// with `M` dividing the group exponent and are re-embedded here.
    pub fn new(
        name: impl Into<String>,
        classes: Vec<ClassInfo>,
        power_map: Vec<Vec<usize>>,
        irreducibles: Vec<Vec<Cyclotomic>>,
        irreducible_names: Vec<String>,
    ) -> Result<Self> {
        let name = name.into();
        let bad = |msg: String| Error::InvalidTable(format!("{name}: {msg}"));
        if classes.is_empty() {
            return Err(bad("no classes".into()));
        }
        let order: u64 = classes.iter().map(|c| c.size).sum();
        for c in &classes {
            if c.size == 0 || !order.is_multiple_of(c.size) {
                return Err(bad(format!("class {} has size {} not dividing {order}", c.id, c.size)));
            }
            if c.rep_order == 0 || !order.is_multiple_of(c.rep_order as u64) {
                return Err(bad(format!("class {} has element order {} not dividing {order}", c.id, c.rep_order)));
            }
        }
        for (i, a) in classes.iter().enumerate() {
            if classes[..i].iter().any(|b| b.id == a.id) {
                return Err(bad(format!("duplicate class id {}", a.id)));
            }
        }
        let ids: Vec<usize> = (0..classes.len()).filter(|&i| classes[i].rep_order == 1).collect();
        if ids.len() != 1 || classes[ids[0]].size != 1 {
            return Err(bad("expected exactly one identity class of size 1".into()));
        }
        let identity = ids[0];

        if power_map.len() != classes.len() {
            return Err(bad("power map needs one row per class".into()));
        }
        for (c, row) in power_map.iter().enumerate() {
            let o = classes[c].rep_order;
            if row.len() != o as usize {
                return Err(bad(format!("power map row for {} must have length {o}", classes[c].id)));
            }
            if row[0] != identity || (o > 1 && row[1] != c) {
                return Err(bad(format!("power map row for {} must start with identity, itself", classes[c].id)));
            }
            for (m, &t) in row.iter().enumerate() {
                let expected = o / (m as u32).gcd(&o).max(1);
                let expected = if m == 0 { 1 } else { expected };
                if t >= classes.len() || classes[t].rep_order != expected {
                    return Err(bad(format!("power map {}^{m} has wrong element order", classes[c].id)));
                }
            }
        }

        let field_order = lcm_all(classes.iter().map(|c| c.rep_order));
        if irreducibles.len() != classes.len() {
            return Err(bad(format!("{} irreducibles for {} classes", irreducibles.len(), classes.len())));
        }
        let mut embedded = Vec::with_capacity(irreducibles.len());
        for row in irreducibles {
            if row.len() != classes.len() {
                return Err(bad("irreducible row length differs from class count".into()));
            }
            let mut out = Vec::with_capacity(row.len());
            for v in row {
                out.push(embed(&v, field_order).ok_or_else(|| bad("value outside Q(zeta_exponent)".into()))?);
            }
            embedded.push(out);
        }
        let irreducible_names = if irreducible_names.is_empty() {
            (0..embedded.len()).map(|i| if i == 0 { "1".to_string() } else { format!("psi{i}") }).collect()
        } else {
            irreducible_names
        };
        if irreducible_names.len() != embedded.len() {
            return Err(bad("irreducible name count mismatch".into()));
        }

        let table = Self {
            name,
            order,
            classes,
            power_map,
            irreducibles: embedded,
            irreducible_names,
            identity,
            field_order,
        };
        table.validate_characters()?;
        Ok(table)
    }

    fn validate_characters(&self) -> Result<()> {
        let bad = |msg: String| Error::InvalidTable(format!("{}: {msg}", self.name));
        let mut sum_sq = BigInt::zero();
        for (i, row) in self.irreducibles.iter().enumerate() {
            let deg = row[self.identity]
                .as_integer()
                .filter(|d| *d > BigInt::zero())
                .ok_or_else(|| bad(format!("irreducible {} has non-positive-integer degree", self.irreducible_names[i])))?;
            sum_sq += &deg * &deg;
            for (j, other) in self.irreducibles.iter().enumerate().skip(i) {
                let ip = self.inner_product_values(row, other);
                let want = if i == j { Cyclotomic::one(self.field_order) } else { Cyclotomic::zero(self.field_order) };
                if ip != want {
                    return Err(bad(format!(
                        "<{}, {}> = {ip}, expected {want}",
                        self.irreducible_names[i], self.irreducible_names[j]
                    )));
                }
            }
        }
        if sum_sq != BigInt::from(self.order) {
            return Err(bad(format!("sum of squared degrees {sum_sq} differs from order {}", self.order)));
        }
        let trivial = (0..self.irreducibles.len()).find(|&i| self.irreducibles[i].iter().all(|v| v.as_i64() == Some(1)));
        if trivial.is_none() {
            return Err(bad("no trivial character".into()));
        }
        Ok(())
    }

    /// `(1/|G|) sum_C |C| a(C) conj(b(C))` on raw value rows.
    pub fn inner_product_values(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.field_order);
        for (c, info) in self.classes.iter().enumerate() {
            let term = (&a[c] * &b[c].conj()).scale_int(info.size as i64);
            acc = &acc + &term;
        }
        acc.scale(&BigRational::new(BigInt::one(), BigInt::from(self.order)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn identity_class(&self) -> usize {
        self.identity
    }

    /// Group exponent; every character value lies in Q(zeta_exponent).
    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    pub fn class_index(&self, id: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| Error::InvalidClass(format!("{id} (table {})", self.name)))
    }

    pub fn class_id(&self, c: usize) -> &str {
        &self.classes[c].id
    }

    /// Class of `g^m` for `g` in class `c`; `m` may be any integer.
    pub fn power_class(&self, c: usize, m: i64) -> usize {
        let row = &self.power_map[c];
        row[m.rem_euclid(row.len() as i64) as usize]
    }

    pub fn power_class_by_id(&self, id: &str, m: i64) -> Result<&str> {
        let c = self.class_index(id)?;
        Ok(self.class_id(self.power_class(c, m)))
    }

    pub fn power_map(&self) -> &[Vec<usize>] {
        &self.power_map
    }

    pub fn num_irreducibles(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn irreducible_values(&self, i: usize) -> &[Cyclotomic] {
        &self.irreducibles[i]
    }

    pub fn irreducible_names(&self) -> &[String] {
        &self.irreducible_names
    }

    pub fn irreducible_name(&self, i: usize) -> &str {
        &self.irreducible_names[i]
    }

    pub fn irreducible_index(&self, name: &str) -> Result<usize> {
        self.irreducible_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownIrreducible(format!("{name} (table {})", self.name)))
    }

    pub fn irreducible_degree(&self, i: usize) -> i64 {
        self.irreducibles[i][self.identity].as_i64().expect("validated degree")
    }

    /// Index of the trivial character.
    pub fn trivial_index(&self) -> usize {
        (0..self.irreducibles.len())
            .find(|&i| self.irreducibles[i].iter().all(|v| v.as_i64() == Some(1)))
            .expect("validated table has a trivial character")
    }

    /// Largest deviation from exact orthonormality, as a float; zero for
    /// every validated table.
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.irreducibles.iter().enumerate() {
            for (j, b) in self.irreducibles.iter().enumerate() {
                let ip = self.inner_product_values(a, b).to_complex::<f64>();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip.re - target).hypot(ip.im));
            }
        }
        worst
    }
}

/// Re-expresses `v` in Q(zeta_target); needs `v.order() | target` unless
/// `v` is rational.
fn embed(v: &Cyclotomic, target: u32) -> Option<Cyclotomic> {
    if v.order() == target {
        return Some(v.clone());
    }
    if let Some(q) = v.as_rational() {
        return Some(Cyclotomic::from_rational(target, q));
    }
    if !target.is_multiple_of(v.order()) {
        return None;
    }
    let step = (target / v.order()) as i64;
    let mut acc = Cyclotomic::zero(target);
    for (k, c) in v.coefficients().iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &Cyclotomic::root(target, k as i64 * step).scale(c);
        }
    }
    Some(acc)
}
