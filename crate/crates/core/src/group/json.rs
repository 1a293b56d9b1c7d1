//! JSON form of a character table.
//!
//! Values arrive as floats (`[re, im]` pairs or bare reals). They are made
//! exact by recovering, for each class `C` of element order `o`, the
//! multiplicity of every eigenvalue `zeta_o^j` from the power-map values
//! `psi(g^k)`; the exact value is then `sum_j m_j zeta_o^j`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::table::{ClassInfo, GroupTable};
use crate::cyclotomic::{lcm_all, Cyclotomic};
use crate::error::{Error, Result};

/// Largest allowed distance between a float multiplicity and its integer.
const MULTIPLICITY_SLACK: f64 = 1e-3;
/// Largest allowed distance between an input value and its exact form.
const VALUE_SLACK: f64 = 1e-4;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassDoc {
    pub id: String,
    pub size: u64,
    pub rep_order: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassRef {
    Index(usize),
    Id(String),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Real(f64),
    Complex([f64; 2]),
}

impl ValueDoc {
    fn parts(self) -> (f64, f64) {
        match self {
            ValueDoc::Real(x) => (x, 0.0),
            ValueDoc::Complex([re, im]) => (re, im),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupTableDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub order: u64,
    pub classes: Vec<ClassDoc>,
    pub power_map: Vec<Vec<ClassRef>>,
    pub irreducibles: Vec<Vec<ValueDoc>>,
    #[serde(default)]
    pub irreducible_names: Option<Vec<String>>,
}

impl GroupTable {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: GroupTableDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc)
    }

    pub fn from_doc(doc: &GroupTableDoc) -> Result<Self> {
        let name = doc.name.clone().unwrap_or_else(|| format!("G{}", doc.order));
        let classes: Vec<ClassInfo> =
            doc.classes.iter().map(|c| ClassInfo::new(c.id.clone(), c.size, c.rep_order)).collect();
        let total: u64 = classes.iter().map(|c| c.size).sum();
        if total != doc.order {
            return Err(Error::InvalidTable(format!("{name}: class sizes sum to {total}, order is {}", doc.order)));
        }
        let resolve = |r: &ClassRef| -> Result<usize> {
            match r {
                ClassRef::Index(i) if *i < classes.len() => Ok(*i),
                ClassRef::Index(i) => Err(Error::InvalidClass(format!("index {i}"))),
                ClassRef::Id(s) => classes
                    .iter()
                    .position(|c| &c.id == s)
                    .ok_or_else(|| Error::InvalidClass(s.clone())),
            }
        };
        let power_map: Vec<Vec<usize>> = doc
            .power_map
            .iter()
            .map(|row| row.iter().map(resolve).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        if power_map.len() != classes.len() || power_map.iter().zip(&classes).any(|(r, c)| r.len() != c.rep_order as usize) {
            return Err(Error::InvalidTable(format!("{name}: power map rows must have length rep_order")));
        }
        let n = lcm_all(classes.iter().map(|c| c.rep_order));
        let mut irreducibles = Vec::with_capacity(doc.irreducibles.len());
        for (i, row) in doc.irreducibles.iter().enumerate() {
            if row.len() != classes.len() {
                return Err(Error::InvalidTable(format!("{name}: irreducible {i} has {} values", row.len())));
            }
            let vals: Vec<(f64, f64)> = row.iter().map(|v| v.parts()).collect();
            let mut exact = Vec::with_capacity(row.len());
            for (c, info) in classes.iter().enumerate() {
                exact.push(exactify(&name, n, info.rep_order, &power_map[c], &vals)?);
            }
            irreducibles.push(exact);
        }
        GroupTable::new(name, classes, power_map, irreducibles, doc.irreducible_names.clone().unwrap_or_default())
    }

    pub fn to_doc(&self) -> GroupTableDoc {
        GroupTableDoc {
            name: Some(self.name().to_string()),
            order: self.order(),
            classes: self
                .classes()
                .iter()
                .map(|c| ClassDoc { id: c.id.clone(), size: c.size, rep_order: c.rep_order })
                .collect(),
            power_map: self
                .power_map()
                .iter()
                .map(|row| row.iter().map(|&t| ClassRef::Id(self.class_id(t).to_string())).collect())
                .collect(),
            irreducibles: (0..self.num_irreducibles())
                .map(|i| {
                    self.irreducible_values(i)
                        .iter()
                        .map(|v| {
                            let z = v.to_complex::<f64>();
                            ValueDoc::Complex([clean(z.re), clean(z.im)])
                        })
                        .collect()
                })
                .collect(),
            irreducible_names: Some(self.irreducible_names().to_vec()),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("table document serializes")
    }
}

fn clean(x: f64) -> f64 {
    if x.abs() < 1e-14 {
        0.0
    } else {
        x
    }
}

fn exactify(name: &str, n: u32, o: u32, powers: &[usize], vals: &[(f64, f64)]) -> Result<Cyclotomic> {
    let mut mult = vec![0i64; o as usize];
    for (j, m) in mult.iter_mut().enumerate() {
        let (mut re, mut im) = (0.0, 0.0);
        for (k, &t) in powers.iter().enumerate() {
            let (a, b) = vals[t];
            let ang = -2.0 * PI * (j * k) as f64 / o as f64;
            re += a * ang.cos() - b * ang.sin();
            im += a * ang.sin() + b * ang.cos();
        }
        re /= o as f64;
        im /= o as f64;
        let r = re.round();
        if (re - r).abs() > MULTIPLICITY_SLACK || im.abs() > MULTIPLICITY_SLACK || r < 0.0 {
            return Err(Error::InvalidTable(format!(
                "{name}: values are not a character (eigenvalue multiplicity {re:.4}{im:+.4}i)"
            )));
        }
        *m = r as i64;
    }
    let exact = Cyclotomic::from_root_multiplicities(n, &mult);
    let z = exact.to_complex::<f64>();
    let (a, b) = vals[powers[1 % powers.len()]];
    if (z.re - a).hypot(z.im - b) > VALUE_SLACK * (1.0 + a.hypot(b)) {
        return Err(Error::InvalidTable(format!("{name}: value {a}{b:+}i is not an algebraic integer of the expected form")));
    }
    Ok(exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3_JSON: &str = r#"{
        "name": "S3", "order": 6,
        "classes": [{"id":"e","size":1,"rep_order":1},{"id":"c2","size":3,"rep_order":2},{"id":"c3","size":2,"rep_order":3}],
        "power_map": [["e"],["e","c2"],["e","c3","c3"]],
        "irreducibles": [[[1,0],[1,0],[1,0]],[1,-1,1],[[2,0],[0,0],[-1,0]]],
        "irreducible_names": ["1","sgn","std"]
    }"#;

    #[test]
    fn parses_float_table_exactly() {
        let t = GroupTable::from_json_str(S3_JSON).unwrap();
        assert_eq!(t, *crate::group::builtin("S3").unwrap());
    }

    #[test]
    fn rounded_golden_ratio_recovers_exact_d5() {
        let d5 = crate::group::builtin("D5").unwrap();
        let mut doc = d5.to_doc();
        for row in &mut doc.irreducibles {
            for v in row.iter_mut() {
                let (re, im) = v.parts();
                *v = ValueDoc::Complex([(re * 1e6).round() / 1e6, (im * 1e6).round() / 1e6]);
            }
        }
        assert_eq!(GroupTable::from_doc(&doc).unwrap(), *d5);
    }

    #[test]
    fn rejects_non_character_values() {
        let text = S3_JSON.replace("[1,-1,1]", "[1,-0.5,1]");
        assert!(matches!(GroupTable::from_json_str(&text), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn rejects_wrong_order() {
        let text = S3_JSON.replace("\"order\": 6", "\"order\": 7");
        assert!(GroupTable::from_json_str(&text).is_err());
    }
}
