//! JSON job files and their resolution into library objects.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use artin_kappa::bounds::ConductorData;
use artin_kappa::exceptional::{is_fundamental, QuadraticCharSpec, SiegelRecord};
use artin_kappa::families::{
    pure_cubic, pure_cubic_parameters, quadratic_conductors, quadratic_field, rationals, x3_minus_x_minus_1,
    x3_plus_x_minus_1, CubicField,
};
use artin_kappa::lfunc::ExceptionalZero;
use artin_kappa::splitting::FieldSpecDoc;
use artin_kappa::{FieldSpec, GroupTable, SiegelData, VirtualCharacter};

use crate::CliError;

/// Everything any command reads from `--spec`. Unused keys are ignored by
/// commands that do not need them; unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub field: Option<FieldRef>,
    pub characters: Option<Vec<CharacterRef>>,
    #[serde(rename = "T")]
    pub t: Option<TValues>,
    #[serde(rename = "T_map")]
    pub t_map: Option<BTreeMap<String, f64>>,
    /// Exceptional zero of the closure's Dedekind zeta function.
    pub exceptional: Option<ZeroDoc>,
    /// Real zeros of individual quadratic irreducibles.
    #[serde(default)]
    pub zeros: Vec<ZeroDoc>,
    /// Closure discriminant, needed only by the `Delta_K` truncation model.
    pub disc_closure: Option<f64>,
    pub family: Option<FamilyDoc>,
    pub range: Option<(i64, i64)>,
    pub discriminants: Option<Vec<i64>>,
    pub grid: Option<Vec<(f64, f64)>>,
    #[serde(default)]
    pub constants: Constants,
    pub workers: Option<usize>,
    pub rigorous: Option<bool>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    pub gamma: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub c3: Option<f64>,
    pub c4: Option<f64>,
    pub c5: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum TValues {
    One(f64),
    Many(Vec<f64>),
}

impl TValues {
    pub fn to_vec(&self) -> Vec<f64> {
        match self {
            TValues::One(t) => vec![*t],
            TValues::Many(v) => v.clone(),
        }
    }
}

/// A field by short name (`Q`, `quadratic:-4`, `pure-cubic:2`, `x^3-x-1`,
/// `x^3+x-1`, `x^3-2`) or as a full specification.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldRef {
    Named(String),
    Spec(Box<FieldSpecDoc>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum CharacterRef {
    /// An irreducible name, or `regular`.
    Name(String),
    Terms { id: Option<String>, terms: BTreeMap<String, i64> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroDoc {
    pub psi: String,
    pub beta: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub quadratic: Option<DiscriminantSet>,
    pub pure_cubic: Option<CubicParams>,
    #[serde(default)]
    pub fields: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum DiscriminantSet {
    List(Vec<i64>),
    Range { min: i64, max: i64 },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum CubicParams {
    List(Vec<u64>),
    Count { count: usize },
}

pub fn load(path: Option<&Path>) -> Result<JobConfig, CliError> {
    let Some(path) = path else {
        return Ok(JobConfig::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("--spec {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("--spec {}: {e}", path.display())))
}

pub fn load_t_map(path: &Path) -> Result<BTreeMap<String, f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("--T-map {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("--T-map {}: {e}", path.display())))
}

fn config_err(field: &str) -> impl Fn(artin_kappa::Error) -> CliError + '_ {
    move |e| CliError::Config(format!("{field}: {e}"))
}

/// One field together with whatever conductor and resolvent data is known.
pub struct Member {
    pub family: String,
    pub spec: FieldSpec,
    pub conductors: Option<ConductorData>,
    /// Irreducible carrying a quadratic Dirichlet character, with its
    /// discriminant, for Siegel scans.
    pub quadratic: Option<(String, i64)>,
    /// `(d, f)` of a cubic field's resolvent data.
    pub cubic: Option<(i64, u64)>,
    pub default_character: String,
}

impl Member {
    fn quadratic(d: i64) -> Result<Self, artin_kappa::Error> {
        Ok(Member {
            family: "quadratic".into(),
            spec: quadratic_field(d)?,
            conductors: Some(quadratic_conductors(d)),
            quadratic: Some(("chi1".into(), d)),
            cubic: None,
            default_character: "chi1".into(),
        })
    }

    fn cubic(family: &str, c: CubicField) -> Self {
        Member {
            family: family.into(),
            conductors: Some(c.conductors()),
            quadratic: Some(("sgn".into(), c.d)),
            cubic: Some((c.d, c.f)),
            spec: c.spec,
            default_character: "std".into(),
        }
    }

    fn custom(spec: FieldSpec) -> Self {
        let default_character = spec.group.irreducible_name(0).to_string();
        Member { family: "custom".into(), spec, conductors: None, quadratic: None, cubic: None, default_character }
    }

    /// Siegel records for the member's quadratic character, when it has one.
    pub fn siegel_records(&self) -> Result<Vec<SiegelRecord>, artin_kappa::Error> {
        match &self.quadratic {
            Some((name, d)) if d.unsigned_abs() >= 3 => {
                let scanned = SiegelRecord::scan(&QuadraticCharSpec::new(*d)?)?;
                Ok(vec![SiegelRecord { psi: name.clone(), ..scanned }])
            }
            _ => Ok(Vec::new()),
        }
    }
}

fn named_member(name: &str) -> Result<Member, CliError> {
    let bad = || CliError::Config(format!("field: unknown field name {name:?}"));
    let err = config_err("field");
    if name == "Q" {
        let spec = rationals().map_err(&err)?;
        return Ok(Member { family: "rationals".into(), ..Member::custom(spec) });
    }
    if let Some(d) = name.strip_prefix("quadratic:") {
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        return Member::quadratic(d).map_err(err);
    }
    if let Some(m) = name.strip_prefix("pure-cubic:") {
        let m: u64 = m.trim().parse().map_err(|_| bad())?;
        return Ok(Member::cubic("pure-cubic", pure_cubic(m).map_err(err)?));
    }
    if let Some(m) = name.strip_prefix("x^3-").filter(|m| m.chars().all(|c| c.is_ascii_digit())) {
        let m: u64 = m.parse().map_err(|_| bad())?;
        return Ok(Member::cubic("pure-cubic", pure_cubic(m).map_err(err)?));
    }
    match name {
        "x^3-x-1" => Ok(Member::cubic("cubic", x3_minus_x_minus_1().map_err(err)?)),
        "x^3+x-1" => Ok(Member::cubic("cubic", x3_plus_x_minus_1().map_err(err)?)),
        _ => Err(bad()),
    }
}

pub fn resolve_field(field: Option<&FieldRef>) -> Result<Member, CliError> {
    match field {
        None => Err(CliError::Config("field: missing".into())),
        Some(FieldRef::Named(name)) => named_member(name),
        Some(FieldRef::Spec(doc)) => Ok(Member::custom(FieldSpec::from_doc(doc).map_err(config_err("field"))?)),
    }
}

pub fn resolve_family(family: Option<&FamilyDoc>) -> Result<Vec<Member>, CliError> {
    let Some(family) = family else {
        return Err(CliError::Config("family: missing".into()));
    };
    let mut out = Vec::new();
    let err = config_err("family");
    match &family.quadratic {
        Some(DiscriminantSet::List(ds)) => {
            for &d in ds {
                out.push(Member::quadratic(d).map_err(&err)?);
            }
        }
        Some(DiscriminantSet::Range { min, max }) => {
            for d in (*min..=*max).filter(|&d| is_fundamental(d)) {
                out.push(Member::quadratic(d).map_err(&err)?);
            }
        }
        None => {}
    }
    let ms = match &family.pure_cubic {
        Some(CubicParams::List(ms)) => ms.clone(),
        Some(CubicParams::Count { count }) => pure_cubic_parameters(*count),
        None => Vec::new(),
    };
    for m in ms {
        out.push(Member::cubic("pure-cubic", pure_cubic(m).map_err(&err)?));
    }
    for name in &family.fields {
        out.push(named_member(name)?);
    }
    if out.is_empty() {
        return Err(CliError::Config("family: no fields selected".into()));
    }
    Ok(out)
}

pub fn resolve_characters(
    table: &Arc<GroupTable>,
    refs: Option<&[CharacterRef]>,
    default: &str,
) -> Result<Vec<(String, VirtualCharacter)>, CliError> {
    let err = config_err("characters");
    let Some(refs) = refs else {
        let chi = VirtualCharacter::named(table.clone(), default).map_err(&err)?;
        return Ok(vec![(default.to_string(), chi)]);
    };
    let mut out = Vec::new();
    for r in refs {
        match r {
            CharacterRef::Name(name) if name == "regular" => {
                out.push((name.clone(), VirtualCharacter::regular(table.clone())));
            }
            CharacterRef::Name(name) => {
                out.push((name.clone(), VirtualCharacter::named(table.clone(), name).map_err(&err)?));
            }
            CharacterRef::Terms { id, terms } => {
                let pairs: Vec<(&str, i64)> = terms.iter().map(|(k, &v)| (k.as_str(), v)).collect();
                let chi = VirtualCharacter::from_terms(table.clone(), &pairs).map_err(&err)?;
                out.push((id.clone().unwrap_or_else(|| chi.label()), chi));
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Config("characters: empty list".into()));
    }
    Ok(out)
}

pub fn resolve_siegel(table: &GroupTable, cfg: &JobConfig) -> Result<SiegelData, CliError> {
    let zero = |z: &ZeroDoc, field: &str| -> Result<ExceptionalZero, CliError> {
        let psi = table.irreducible_index(&z.psi).map_err(config_err(field))?;
        if !(z.beta > 0.0 && z.beta < 1.0) {
            return Err(CliError::Config(format!("{field}: beta {} outside (0, 1)", z.beta)));
        }
        Ok(ExceptionalZero { psi, beta: z.beta })
    };
    Ok(SiegelData {
        exceptional: cfg.exceptional.as_ref().map(|z| zero(z, "exceptional")).transpose()?,
        per_psi: cfg.zeros.iter().map(|z| zero(z, "zeros")).collect::<Result<_, _>>()?,
    })
}

/// Truncation map keyed by irreducible index.
pub fn resolve_t_map(table: &GroupTable, map: &BTreeMap<String, f64>) -> Result<BTreeMap<usize, f64>, CliError> {
    let mut out = BTreeMap::new();
    for (name, &t) in map {
        let i = table.irreducible_index(name).map_err(config_err("T_map"))?;
        check_t(t, "T_map")?;
        out.insert(i, t);
    }
    Ok(out)
}

pub fn check_t(t: f64, field: &str) -> Result<(), CliError> {
    if t.is_finite() && t >= 2.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!("{field}: T = {t} must be a finite number >= 2")))
    }
}
