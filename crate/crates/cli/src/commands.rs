use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use serde_json::json;

use artin_kappa::bounds::{envelope_reports, summarize, BaseFieldComparison, EnvelopeInput, EnvelopeReport};
use artin_kappa::exceptional::{dh_repulsion_check, is_fundamental, scan_discriminant, ScanRow};
use artin_kappa::lfunc::{KappaIntervalOf, TruncationPoint};
use artin_kappa::{EulerTable, InductionData, KappaOptions, SiegelData, TruncationModel, VirtualCharacter, EULER_GAMMA};

use crate::config::{self, check_t, JobConfig, Member};
use crate::output::{opt_real, real, write_csv, write_json, write_plot};
use crate::{Cli, CliError, Command, Flags};

/// Default constants of the Deuring-Heilbronn repulsion check.
const DEFAULT_C1: f64 = 12.0;
const DEFAULT_C2: f64 = 1.0 / 12.0;

const KAPPA_HEADER: [&str; 16] = [
    "family",
    "field",
    "character",
    "T",
    "center_re",
    "center_im",
    "radius",
    "product_radius",
    "truncation_radius",
    "eta_factor",
    "slack",
    "pole_order",
    "nonvanishing",
    "bracketed",
    "hypothesis_checked",
    "wall_time_ms",
];

const SCAN_HEADER: [&str; 7] = ["d", "q", "beta", "eta_plain", "stark_floor", "scan_time_ms", "status"];

const MERTENS_HEADER: [&str; 6] = ["field", "y", "x", "sum", "main_term", "slack"];

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = config::load(cli.flags.spec.as_deref())?;
    let job = Job::new(&cli.flags, &cfg)?;
    match cli.command {
        Command::Kappa => {
            let member = config::resolve_field(cfg.field.as_ref())?;
            let rows = job.kappa_rows(&member)?;
            job.emit_kappa(rows)
        }
        Command::ScanFamily => {
            let mut rows = Vec::new();
            for member in config::resolve_family(cfg.family.as_ref())? {
                rows.extend(job.kappa_rows(&member)?);
            }
            job.emit_kappa(rows)
        }
        Command::SiegelScan => job.siegel_scan(),
        Command::VerifyBounds => job.verify_bounds(),
        Command::Mertens => job.mertens(),
    }
}

fn compute(e: artin_kappa::Error) -> CliError {
    CliError::Compute(e.to_string())
}

/// Flags merged over the job file; flags win.
struct Job<'a> {
    flags: &'a Flags,
    cfg: &'a JobConfig,
    ts: Vec<f64>,
    t_map: Option<BTreeMap<String, f64>>,
    workers: usize,
    rigorous: bool,
    gamma: f64,
    c1: f64,
    c2: f64,
    delta: Option<(f64, f64, f64)>,
}

struct KappaRow {
    family: String,
    field: String,
    character: String,
    interval: KappaIntervalOf<f64>,
    wall_ms: f64,
}

impl<'a> Job<'a> {
    fn new(flags: &'a Flags, cfg: &'a JobConfig) -> Result<Self, CliError> {
        let ts = if flags.t.is_empty() { cfg.t.as_ref().map(|t| t.to_vec()).unwrap_or_default() } else { flags.t.clone() };
        for &t in &ts {
            check_t(t, "T")?;
        }
        let t_map = match &flags.t_map {
            Some(p) => Some(config::load_t_map(p)?),
            None => cfg.t_map.clone(),
        };
        let c = &cfg.constants;
        let gamma = flags.gamma.or(c.gamma).unwrap_or(EULER_GAMMA);
        if !gamma.is_finite() {
            return Err(CliError::Config(format!("gamma: {gamma} is not finite")));
        }
        let (c3, c4, c5) = (flags.c3.or(c.c3), flags.c4.or(c.c4), flags.c5.or(c.c5));
        let delta = (c3.is_some() || c4.is_some() || c5.is_some())
            .then(|| (c3.unwrap_or(1.0), c4.unwrap_or(1.0), c5.unwrap_or(1.0)));
        Ok(Self {
            flags,
            cfg,
            ts,
            t_map,
            workers: flags.workers.or(cfg.workers).unwrap_or(0),
            rigorous: flags.rigorous || cfg.rigorous.unwrap_or(false),
            gamma,
            c1: flags.c1.or(c.c1).unwrap_or(DEFAULT_C1),
            c2: flags.c2.or(c.c2).unwrap_or(DEFAULT_C2),
            delta,
        })
    }

    fn options(&self, member: &Member) -> Result<KappaOptions, CliError> {
        let truncation = if self.rigorous {
            TruncationModel::Unmodeled
        } else if let Some((c3, c4, c5)) = self.delta {
            let disc = self
                .cfg
                .disc_closure
                .or_else(|| member.conductors.as_ref().and_then(|d| d.disc_closure))
                .ok_or_else(|| CliError::Config("disc_closure: needed by --c3/--c4/--c5 for this field".into()))?;
            let degree = (member.spec.group.order() * member.spec.base_degree as u64) as u32;
            TruncationModel::DeltaK { degree, disc, c3, c4, c5 }
        } else {
            TruncationModel::default()
        };
        Ok(KappaOptions { gamma: self.gamma, truncation, ..KappaOptions::default() })
    }

    fn timing(&self, ms: f64) -> f64 {
        if self.flags.no_timestamp {
            0.0
        } else {
            ms
        }
    }

    fn kappa_rows(&self, member: &Member) -> Result<Vec<KappaRow>, CliError> {
        let table = &member.spec.group;
        let chars = config::resolve_characters(table, self.cfg.characters.as_deref(), &member.default_character)?;
        let siegel = config::resolve_siegel(table, self.cfg)?;
        let opts = self.options(member)?;
        let t_map = self.t_map.as_ref().map(|m| config::resolve_t_map(table, m)).transpose()?;
        if self.ts.is_empty() && t_map.is_none() {
            return Err(CliError::Config("T: give --T, --T-map, or \"T\" in the job file".into()));
        }
        let limit = self.ts.iter().chain(t_map.iter().flat_map(|m| m.values())).fold(0.0f64, |a, &b| a.max(b));
        let euler = EulerTable::new(&member.spec, limit, self.workers).map_err(compute)?;
        let mut rows = Vec::new();
        for (id, chi) in &chars {
            let mut push = |interval: KappaIntervalOf<f64>, start: Instant| {
                rows.push(KappaRow {
                    family: member.family.clone(),
                    field: member.spec.label.clone(),
                    character: id.clone(),
                    interval,
                    wall_ms: self.timing(start.elapsed().as_secs_f64() * 1e3),
                });
            };
            for &t in &self.ts {
                let start = Instant::now();
                push(euler.kappa_estimate::<f64>(chi, t, &siegel, &opts).map_err(compute)?, start);
            }
            if let Some(m) = &t_map {
                let start = Instant::now();
                push(euler.kappa_multi_truncation::<f64>(chi, m, &siegel, &opts).map_err(compute)?, start);
            }
        }
        Ok(rows)
    }

    fn emit_kappa(&self, rows: Vec<KappaRow>) -> Result<(), CliError> {
        let t_label = |t: &TruncationPoint| match t {
            TruncationPoint::Single(t) => real(*t),
            TruncationPoint::PerIrreducible(m) => m.iter().map(|(k, v)| format!("{k}={}", real(*v))).collect::<Vec<_>>().join(";"),
        };
        let t_value = |t: &TruncationPoint| match t {
            TruncationPoint::Single(t) => *t,
            TruncationPoint::PerIrreducible(m) => m.values().fold(0.0f64, |a, &b| a.max(b)),
        };
        let records: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let k = &r.interval;
                vec![
                    r.family.clone(),
                    r.field.clone(),
                    r.character.clone(),
                    t_label(&k.t_used),
                    real(k.center.re),
                    real(k.center.im),
                    real(k.radius),
                    real(k.product_radius),
                    k.truncation_radius.map(real).unwrap_or_else(|| "unmodeled".into()),
                    real(k.eta_factor),
                    real(k.slack),
                    k.pole_order.to_string(),
                    k.nonvanishing().to_string(),
                    k.bracketed.iter().map(u64::to_string).collect::<Vec<_>>().join(";"),
                    k.hypothesis_checked.to_string(),
                    real(r.wall_ms),
                ]
            })
            .collect();
        write_csv(self.flags.out.as_deref(), !self.flags.no_timestamp, &KAPPA_HEADER, &records)?;
        if let Some(p) = &self.flags.plot {
            let mut blocks: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
            for r in &rows {
                let key = format!("{} {}", r.field, r.character);
                blocks.entry(key).or_default().push((t_value(&r.interval.t_used), r.interval.center.norm()));
            }
            write_plot(p, &blocks.into_iter().collect::<Vec<_>>())?;
        }
        Ok(())
    }

    fn siegel_scan(&self) -> Result<(), CliError> {
        let ds: Vec<i64> = match (&self.cfg.range, &self.cfg.discriminants) {
            (Some((lo, hi)), None) => (*lo..=*hi).filter(|&d| is_fundamental(d)).collect(),
            (None, Some(list)) => list.clone(),
            (Some(_), Some(_)) => return Err(CliError::Config("range: give either range or discriminants".into())),
            (None, None) => return Err(CliError::Config("range: missing discriminant range".into())),
        };
        let mut rows = Vec::new();
        let mut found: Vec<ScanRow> = Vec::new();
        let mut skipped = 0;
        for d in ds {
            if !is_fundamental(d) || d.unsigned_abs() < 3 {
                skipped += 1;
                rows.push(vec![d.to_string(), String::new(), String::new(), String::new(), String::new(), String::new(), "skipped: not a fundamental discriminant".into()]);
                continue;
            }
            let row = scan_discriminant(d).map_err(compute)?;
            rows.push(vec![
                d.to_string(),
                row.q.to_string(),
                opt_real(row.beta),
                opt_real(row.eta_plain),
                real(row.stark_floor),
                real(self.timing(row.scan_time_ms)),
                "ok".into(),
            ]);
            if row.beta.is_some() {
                found.push(row);
            }
        }
        let scanned = rows.len() - skipped;
        write_csv(self.flags.out.as_deref(), !self.flags.no_timestamp, &SCAN_HEADER, &rows)?;
        eprintln!("scanned {scanned} fundamental discriminants, {} real zeros found, {skipped} skipped", found.len());
        for (i, a) in found.iter().enumerate() {
            for b in &found[i + 1..] {
                let r = dh_repulsion_check(a.q as f64, b.q as f64, a.beta.unwrap(), b.beta.unwrap(), self.c1, self.c2);
                eprintln!("repulsion d = {}, {}: first {} second {}", a.d, b.d, r.first_holds, r.second_holds);
            }
        }
        if let Some(p) = &self.flags.plot {
            let pts = rows.iter().filter(|r| r[6] == "ok").map(|r| (r[0].parse().unwrap_or(0.0), r[4].parse().unwrap_or(0.0))).collect();
            write_plot(p, &[("d stark_floor".into(), pts)])?;
        }
        Ok(())
    }

    fn verify_bounds(&self) -> Result<(), CliError> {
        let members = config::resolve_family(self.cfg.family.as_ref())?;
        let t = match self.ts.as_slice() {
            [] => 1e6,
            [t] => *t,
            _ => return Err(CliError::Config("T: verify-bounds takes a single truncation point".into())),
        };
        let mut reports: Vec<EnvelopeReport> = Vec::new();
        let mut comparisons = Vec::new();
        for m in &members {
            let conductors = m
                .conductors
                .as_ref()
                .ok_or_else(|| CliError::Config(format!("family: no conductor data for {}", m.spec.label)))?;
            let table = &m.spec.group;
            let chars = config::resolve_characters(table, self.cfg.characters.as_deref(), &m.default_character)?;
            let euler = EulerTable::new(&m.spec, t, self.workers).map_err(compute)?;
            let opts = self.options(m)?;
            let siegel = m.siegel_records().map_err(compute)?;
            for (_, chi) in &chars {
                let kappa = euler.kappa_estimate::<f64>(chi, t, &SiegelData::none(), &opts).map_err(compute)?.center;
                let input = EnvelopeInput {
                    family: &m.family,
                    field: &m.spec.label,
                    chi,
                    kappa,
                    t,
                    conductors,
                    induction: InductionData::from_character(chi, m.spec.base_degree),
                    siegel: &siegel,
                    nu: nu(chi, &siegel),
                };
                reports.extend(envelope_reports(&input).map_err(compute)?);
            }
            if let Some((d, f)) = m.cubic {
                let c = BaseFieldComparison::new(d, f);
                comparisons.push(json!({
                    "field": m.spec.label,
                    "d": d,
                    "f": f,
                    "over_q": [c.over_q.0, c.over_q.1],
                    "over_quadratic": c.over_quadratic.map(|(a, b)| [a, b]),
                    "quadratic_base_tighter": c.quadratic_base_tighter(),
                }));
            }
        }
        let rows: Vec<Vec<String>> = reports.iter().map(|r| r.csv_fields().to_vec()).collect();
        write_csv(self.flags.out.as_deref(), !self.flags.no_timestamp, &EnvelopeReport::CSV_HEADER, &rows)?;
        let summary = json!({
            "fields": members.len(),
            "reports": reports.len(),
            "T": t,
            "envelopes": summarize(&reports),
            "base_comparison": comparisons,
        });
        match self.summary_path() {
            Some(p) => write_json(&p, &summary)?,
            None => eprintln!("{}", serde_json::to_string_pretty(&summary).unwrap_or_default()),
        }
        if let Some(p) = &self.flags.plot {
            let mut blocks: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
            for r in &reports {
                blocks.entry(format!("{} ratio_lo ratio_hi", r.envelope)).or_default().push((r.ratio_lo, r.ratio_hi));
            }
            write_plot(p, &blocks.into_iter().collect::<Vec<_>>())?;
        }
        Ok(())
    }

    fn summary_path(&self) -> Option<PathBuf> {
        self.flags.summary.clone().or_else(|| {
            self.flags.out.as_ref().map(|o| {
                let mut s = o.clone().into_os_string();
                s.push(".summary.json");
                PathBuf::from(s)
            })
        })
    }

    fn mertens(&self) -> Result<(), CliError> {
        let member = config::resolve_field(self.cfg.field.as_ref())?;
        let grid = match (self.flags.y, self.flags.x) {
            (Some(y), Some(x)) => vec![(y, x)],
            (None, None) => self.cfg.grid.clone().ok_or_else(|| CliError::Config("grid: give --y and --x or a grid".into()))?,
            _ => return Err(CliError::Config("--y/--x: give both".into())),
        };
        for &(y, x) in &grid {
            if !(y.is_finite() && x.is_finite() && y >= 2.0 && y <= x) {
                return Err(CliError::Config(format!("grid: need 2 <= y <= x, got y = {y}, x = {x}")));
            }
        }
        let limit = grid.iter().fold(2.0f64, |a, &(_, x)| a.max(x));
        let euler = EulerTable::new(&member.spec, limit, self.workers).map_err(compute)?;
        let mut rows = Vec::new();
        let mut pts = Vec::new();
        for &(y, x) in &grid {
            let r = euler.mertens_sum(y, x).map_err(compute)?;
            pts.push((x, r.slack));
            rows.push(vec![member.spec.label.clone(), real(r.y), real(r.x), real(r.sum), real(r.main_term), real(r.slack)]);
        }
        write_csv(self.flags.out.as_deref(), !self.flags.no_timestamp, &MERTENS_HEADER, &rows)?;
        if let Some(p) = &self.flags.plot {
            write_plot(p, &[("x slack".into(), pts)])?;
        }
        Ok(())
    }
}

/// `<chi, psi>` for the quadratic character carrying a real zero, if any.
fn nu(chi: &VirtualCharacter, records: &[artin_kappa::exceptional::SiegelRecord]) -> i64 {
    records
        .iter()
        .filter(|r| r.beta.is_some())
        .filter_map(|r| chi.table().irreducible_index(&r.psi).ok())
        .map(|i| chi.coeffs()[i])
        .next()
        .unwrap_or(0)
}
