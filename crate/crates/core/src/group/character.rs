use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use super::table::GroupTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Comparison slack for the float view of exact quantities.
pub const MU_TOLERANCE: f64 = 1e-12;

/// Exact class function on a group table.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    table: Arc<GroupTable>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(table: Arc<GroupTable>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != table.num_classes() {
            return Err(Error::InvalidClass(format!(
                "class function has {} values, table {} has {} classes",
                values.len(),
                table.name(),
                table.num_classes()
            )));
        }
        let n = table.field_order();
        if let Some(v) = values.iter().find(|v| v.order() != n) {
            return Err(Error::InvalidTable(format!("value {v} not in Q(zeta_{n})")));
        }
        Ok(Self { table, values })
    }

    /// Class function from integer values, e.g. a permutation character.
    pub fn from_integers(table: Arc<GroupTable>, values: &[i64]) -> Result<Self> {
        let n = table.field_order();
        Self::new(table, values.iter().map(|&v| Cyclotomic::from_integer(n, v)).collect())
    }

    pub fn table(&self) -> &Arc<GroupTable> {
        &self.table
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn inner_product(&self, other: &Self) -> Result<Cyclotomic> {
        same_table(&self.table, &other.table)?;
        Ok(self.table.inner_product_values(&self.values, &other.values))
    }

    /// Pointwise product (character of the tensor product).
    pub fn product(&self, other: &Self) -> Result<Self> {
        same_table(&self.table, &other.table)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(Self { table: self.table.clone(), values })
    }

    /// Multiplicities against every irreducible; errors unless all are integers.
    pub fn decompose(&self) -> Result<VirtualCharacter> {
        let t = &self.table;
        let mut coeffs = Vec::with_capacity(t.num_irreducibles());
        for i in 0..t.num_irreducibles() {
            let ip = t.inner_product_values(&self.values, t.irreducible_values(i));
            let n = ip.as_i64().ok_or_else(|| {
                Error::NotVirtualCharacter(format!("<f, {}> = {ip}", t.irreducible_name(i)))
            })?;
            coeffs.push(n);
        }
        let chi = VirtualCharacter { table: t.clone(), coeffs };
        if chi.values() != self.values {
            return Err(Error::NotVirtualCharacter("not in the span of the irreducibles".into()));
        }
        Ok(chi)
    }
}

fn same_table(a: &Arc<GroupTable>, b: &Arc<GroupTable>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::TableMismatch(a.name().to_string(), b.name().to_string()))
    }
}

/// Minimum real part of a character, exact and as a float.
#[derive(Clone, Debug, PartialEq)]
pub struct Mu {
    pub value: f64,
    /// Exact real part at the minimizing class.
    pub exact: Cyclotomic,
    pub class: usize,
}

/// Integer combination of the irreducible characters of a table.
#[derive(Clone, PartialEq)]
pub struct VirtualCharacter {
    table: Arc<GroupTable>,
    coeffs: Vec<i64>,
}

impl VirtualCharacter {
    pub fn new(table: Arc<GroupTable>, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != table.num_irreducibles() {
            return Err(Error::NotVirtualCharacter(format!(
                "{} coefficients for {} irreducibles",
                coeffs.len(),
                table.num_irreducibles()
            )));
        }
        Ok(Self { table, coeffs })
    }

    pub fn zero(table: Arc<GroupTable>) -> Self {
        let n = table.num_irreducibles();
        Self { table, coeffs: vec![0; n] }
    }

    pub fn irreducible(table: Arc<GroupTable>, i: usize) -> Self {
        let mut chi = Self::zero(table);
        chi.coeffs[i] = 1;
        chi
    }

    pub fn named(table: Arc<GroupTable>, name: &str) -> Result<Self> {
        let i = table.irreducible_index(name)?;
        Ok(Self::irreducible(table, i))
    }

    /// Combination from `(irreducible name, multiplicity)` pairs.
    pub fn from_terms(table: Arc<GroupTable>, terms: &[(&str, i64)]) -> Result<Self> {
        let mut chi = Self::zero(table);
        for &(name, m) in terms {
            let i = chi.table.irreducible_index(name)?;
            chi.coeffs[i] += m;
        }
        Ok(chi)
    }

    pub fn trivial(table: Arc<GroupTable>) -> Self {
        let i = table.trivial_index();
        Self::irreducible(table, i)
    }

    /// Regular character: every irreducible with multiplicity its degree.
    pub fn regular(table: Arc<GroupTable>) -> Self {
        let coeffs = (0..table.num_irreducibles()).map(|i| table.irreducible_degree(i)).collect();
        Self { table, coeffs }
    }

    pub fn table(&self) -> &Arc<GroupTable> {
        &self.table
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// True when all multiplicities are nonnegative.
    pub fn is_character(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn irreducible_index(&self) -> Option<usize> {
        let mut nz = self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0);
        match (nz.next(), nz.next()) {
            (Some((i, 1)), None) => Some(i),
            _ => None,
        }
    }

    pub fn degree(&self) -> i64 {
        (0..self.coeffs.len()).map(|i| self.coeffs[i] * self.table.irreducible_degree(i)).sum()
    }

    /// `<chi, 1_G>`, the order of the pole at s = 1.
    pub fn pole_order(&self) -> i64 {
        self.coeffs[self.table.trivial_index()]
    }

    pub fn value(&self, class: usize) -> Cyclotomic {
        let n = self.table.field_order();
        let mut acc = Cyclotomic::zero(n);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                acc = &acc + &self.table.irreducible_values(i)[class].scale_int(c);
            }
        }
        acc
    }

    pub fn values(&self) -> Vec<Cyclotomic> {
        (0..self.table.num_classes()).map(|c| self.value(c)).collect()
    }

    pub fn complex_values(&self) -> Vec<Complex<f64>> {
        self.values().iter().map(|v| v.to_complex()).collect()
    }

    pub fn class_function(&self) -> ClassFunction {
        ClassFunction { table: self.table.clone(), values: self.values() }
    }

    pub fn inner_product(&self, other: &Self) -> Result<Cyclotomic> {
        self.class_function().inner_product(&other.class_function())
    }

    /// Multiplicity vector recomputed from the values by inner products.
    pub fn decompose(&self) -> Vec<i64> {
        self.class_function().decompose().expect("virtual character decomposes").coeffs
    }

    pub fn mu(&self) -> Mu {
        let mut best: Option<Mu> = None;
        for c in 0..self.table.num_classes() {
            let re = self.value(c).re_part();
            let value = re.to_f64_re();
            if best.as_ref().is_none_or(|b| value < b.value - MU_TOLERANCE) {
                best = Some(Mu { value, exact: re, class: c });
            }
        }
        best.expect("table has at least one class")
    }

    /// Whether `psi` is a real linear character, i.e. `psi^2 = 1_G`.
    pub fn is_potentially_quadratic(&self) -> Result<bool> {
        self.irreducible_index().ok_or(Error::NotIrreducible)?;
        Ok(self.degree() == 1 && self.values().iter().all(Cyclotomic::is_real))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.class_function().product(&other.class_function())?.decompose()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_table(&self.table, &other.table)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { table: self.table.clone(), coeffs })
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self { table: self.table.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Pieces `<chi, psi> psi` for every irreducible with nonzero multiplicity.
    pub fn components(&self) -> Vec<(usize, i64)> {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
    }

    /// Readable label such as `2*std+sgn`.
    pub fn label(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.components() {
            let name = self.table.irreducible_name(i);
            if !out.is_empty() && c > 0 {
                out.push('+');
            }
            match c {
                1 => out.push_str(name),
                -1 => {
                    out.push('-');
                    out.push_str(name);
                }
                _ => out.push_str(&format!("{c}*{name}")),
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl fmt::Debug for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VirtualCharacter({}: {})", self.table.name(), self.label())
    }
}

/// Data about the character induced to the Galois closure over Q.
#[derive(Clone, Debug, PartialEq)]
pub struct InductionData {
    pub base_degree: u32,
    pub tilde_degree: i64,
    pub mu_tilde: f64,
    /// False when `mu_tilde` is only a lower bound.
    pub mu_tilde_exact: bool,
}

impl InductionData {
    /// Default induction data. Over Q the induced character is `chi`
    /// itself. Otherwise a fixed-coset count argument gives
    /// `mu(chi~) >= n_k * min(mu(chi), 0)`, which is used as the bound.
    pub fn from_character(chi: &VirtualCharacter, base_degree: u32) -> Self {
        let mu = chi.mu().value;
        let tilde_degree = base_degree as i64 * chi.degree();
        if base_degree == 1 {
            Self { base_degree, tilde_degree, mu_tilde: mu, mu_tilde_exact: true }
        } else {
            Self { base_degree, tilde_degree, mu_tilde: base_degree as f64 * mu.min(0.0), mu_tilde_exact: false }
        }
    }

    /// Induction data with an exactly known (or declared) `mu(chi~)`.
    pub fn with_mu_tilde(chi: &VirtualCharacter, base_degree: u32, mu_tilde: f64) -> Result<Self> {
        let mu = chi.mu().value;
        let tilde_degree = base_degree as i64 * chi.degree();
        if mu < 0.0 && mu_tilde < base_degree as f64 * mu - MU_TOLERANCE {
            return Err(Error::Domain(format!(
                "mu(chi~) = {mu_tilde} below [k:Q] mu(chi) = {}",
                base_degree as f64 * mu
            )));
        }
        if mu_tilde.abs() > tilde_degree as f64 + MU_TOLERANCE {
            return Err(Error::Domain(format!("|mu(chi~)| = {} exceeds chi~(1) = {tilde_degree}", mu_tilde.abs())));
        }
        Ok(Self { base_degree, tilde_degree, mu_tilde, mu_tilde_exact: true })
    }
}
