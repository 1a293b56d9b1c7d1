//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line to
//! the real stderr (bypassing the harness capture) and then asserts.

mod common;

use std::io::Write;

use num_complex::Complex;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use artin_kappa::bounds::{envelope_reports, summarize, BaseFieldComparison, EnvelopeInput};
use artin_kappa::cyclotomic::Cyclotomic;
use artin_kappa::exceptional::{eta_plain, eta_t, find_siegel_zero, region_lo, QuadraticCharSpec};
use artin_kappa::families::{
    fundamental_discriminants, pure_cubic, pure_cubic_parameters, quadratic_conductors, quadratic_field, rationals,
    x3_minus_2, x3_minus_x_minus_1, x3_plus_x_minus_1, CubicField,
};
use artin_kappa::group::{builtin, BUILTIN_NAMES};
use artin_kappa::lfunc::CharacterProfile;
use artin_kappa::{EulerTable, InductionData, KappaOptions, SiegelData, VirtualCharacter};

fn report(n: u32, ok: bool, detail: &str) {
    let line = format!("criterion {n:>2} {}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn kappa(table: &EulerTable, chi: &VirtualCharacter, t: f64) -> Complex<f64> {
    table.kappa_estimate::<f64>(chi, t, &SiegelData::none(), &KappaOptions::default()).unwrap().center
}

fn quadratic_kappas(workers: usize) -> Vec<(i64, Complex<f64>)> {
    fundamental_discriminants(-200, 200)
        .into_iter()
        .map(|d| {
            let k = quadratic_field(d).unwrap();
            let table = EulerTable::new(&k, 1e6, workers).unwrap();
            let chi = VirtualCharacter::named(k.group.clone(), "chi1").unwrap();
            (d, kappa(&table, &chi, 1e6))
        })
        .collect()
}

fn cubics() -> Vec<(CubicField, f64)> {
    use common::regulators as r;
    vec![
        (x3_minus_x_minus_1().unwrap(), common::complex_cubic_residue(-23, r::x3_minus_x_minus_1())),
        (x3_plus_x_minus_1().unwrap(), common::complex_cubic_residue(-31, r::x3_plus_x_minus_1())),
        (x3_minus_2().unwrap(), common::complex_cubic_residue(-108, r::x3_minus_2())),
    ]
}

fn cubic_kappas(workers: usize) -> Vec<Complex<f64>> {
    cubics()
        .iter()
        .map(|(c, _)| {
            let table = EulerTable::new(&c.spec, 1e6, workers).unwrap();
            let chi = VirtualCharacter::named(c.spec.group.clone(), "std").unwrap();
            kappa(&table, &chi, 1e6)
        })
        .collect()
}

#[test]
fn criterion_01_dirichlet_oracle() {
    let rows = quadratic_kappas(0);
    let mut worst = (0i64, 0.0f64);
    for &(d, k) in &rows {
        let rel = (k.re / common::l1_quadratic(d) - 1.0).abs().max(k.im.abs());
        if rel > worst.1 {
            worst = (d, rel);
        }
    }
    let ok = worst.1 <= 0.01 && rows.len() == fundamental_discriminants(-200, 200).len();
    report(1, ok, &format!("{} discriminants, worst relative error {:.3e} at d = {}", rows.len(), worst.1, worst.0));
    assert!(ok);
}

#[test]
fn criterion_02_cubic_residues() {
    let values = cubic_kappas(0);
    let mut detail = Vec::new();
    let mut ok = true;
    for ((c, oracle), k) in cubics().iter().zip(&values) {
        let rel = (k.re / oracle - 1.0).abs();
        ok &= rel <= 0.02 && k.im.abs() < 1e-12;
        detail.push(format!("{} {:.6} vs {:.6} ({:.2e})", c.spec.label, k.re, oracle, rel));
    }
    report(2, ok, &detail.join("; "));
    assert!(ok);
}

#[test]
fn criterion_03_convergence() {
    let ts = [1e4, 1e5, 1e6];
    let mut cases: Vec<(String, EulerTable, VirtualCharacter)> = Vec::new();
    for d in [-3, -4, 5, -7, 8, -8] {
        let k = quadratic_field(d).unwrap();
        let chi = VirtualCharacter::named(k.group.clone(), "chi1").unwrap();
        cases.push((format!("chi_{d}"), EulerTable::new(&k, 2e6, 0).unwrap(), chi));
    }
    for (c, _) in cubics() {
        let chi = VirtualCharacter::named(c.spec.group.clone(), "std").unwrap();
        cases.push((c.spec.label.clone(), EulerTable::new(&c.spec, 2e6, 0).unwrap(), chi));
    }
    let mut bad = Vec::new();
    let mut lines = Vec::new();
    for (name, table, chi) in &cases {
        assert_eq!(chi.pole_order(), 0);
        let steps: Vec<f64> = ts
            .iter()
            .map(|&t| {
                let a = kappa(table, chi, t);
                let b = kappa(table, chi, 2.0 * t);
                (b - a).norm() / a.norm()
            })
            .collect();
        if steps.windows(2).any(|w| w[1] > w[0]) {
            bad.push(name.clone());
        }
        lines.push(format!("{name} [{:.1e} {:.1e} {:.1e}]", steps[0], steps[1], steps[2]));
    }
    let ok = bad.is_empty();
    report(3, ok, &format!("non-monotone: {bad:?}; steps {}", lines.join(" ")));
    assert!(ok);
}

#[test]
fn criterion_04_local_envelope() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let primes = common::primes(20_000);
    let tables: Vec<_> = BUILTIN_NAMES.iter().chain(["C5", "C7", "C12"].iter()).map(|n| builtin(n).unwrap()).collect();
    let mut checked = 0usize;
    let mut failures = 0usize;
    let mut worst_margin = f64::INFINITY;
    while checked < 100_000 {
        let table = &tables[rng.gen_range(0..tables.len())];
        let coeffs: Vec<i64> = (0..table.num_irreducibles()).map(|_| rng.gen_range(0..3)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let chi = VirtualCharacter::new(table.clone(), coeffs).unwrap();
        let profile = CharacterProfile::<f64>::new(&chi);
        let deg = chi.degree() as f64;
        let mu = chi.mu().value;
        for _ in 0..50 {
            let p = primes[rng.gen_range(0..primes.len())];
            // Residue degree up to 3 when it keeps the norm small.
            let f = rng.gen_range(1..=3u32);
            let norm = p.checked_pow(f).filter(|&n| n < 1 << 40).unwrap_or(p) as f64;
            let class = rng.gen_range(0..table.num_classes());
            let abs = profile.unramified_log(class, norm).re.exp();
            let lo = (mu / norm - 2.0 * deg / (norm * norm)).exp();
            let hi = (deg / norm + 2.0 * deg / (norm * norm)).exp();
            let slack = 1e-12 * hi;
            if abs < lo - slack || abs > hi + slack {
                failures += 1;
            }
            worst_margin = worst_margin.min((abs - lo).min(hi - abs) / hi);
            checked += 1;
        }
    }
    let ok = failures == 0;
    report(4, ok, &format!("{checked} exact local factors, {failures} outside, tightest margin {worst_margin:.2e}"));
    assert!(ok);
}

#[test]
fn criterion_05_mertens_slack() {
    let fields = [("Q", rationals().unwrap(), 1.0), ("Q(i)", quadratic_field(-4).unwrap(), 4.0), ("Q(sqrt 5)", quadratic_field(5).unwrap(), 5.0)];
    let grid = [10.0, 30.0, 100.0, 1e3, 1e4, 1e5, 3e5, 1e6];
    let mut worst = f64::NEG_INFINITY;
    let mut count = 0;
    for (_, spec, dk) in &fields {
        let table = EulerTable::new(spec, 1e6, 0).unwrap();
        let y0 = f64::max(*dk, std::f64::consts::E);
        let ys: Vec<f64> = std::iter::once(y0).chain(grid.iter().copied().filter(|&y| y > y0)).collect();
        for &y in &ys {
            for &x in ys.iter().filter(|&&x| x >= y) {
                let r = table.mertens_sum(y, x).unwrap();
                worst = worst.max(r.slack);
                count += 1;
            }
        }
    }
    let ok = worst <= 5.0;
    report(5, ok, &format!("{count} (k, y, x) points, max slack {worst:.4}"));
    assert!(ok);
}

#[test]
fn criterion_06_eta_properties() {
    let mut rng = StdRng::seed_from_u64(6);
    let mut worst_i = f64::NEG_INFINITY;
    let mut worst_ii = f64::NEG_INFINITY;
    let mut worst_quad = 0.0f64;
    for _ in 0..1000 {
        let q: f64 = 10f64.powf(rng.gen_range(0.48..8.0));
        let width = 1.0 / (4.0 * q.ln());
        let beta = 1.0 - width * rng.gen_range(1e-4..1.0);
        let a: f64 = rng.gen_range(1.0..6.0);
        let tau = q.powf(a);
        let eta = eta_t(beta, tau).unwrap();
        let plain = eta_plain(beta, q);
        worst_i = worst_i.max(plain - 2.0 * eta);
        worst_ii = worst_ii.max(eta - a.exp() * plain);
        worst_quad = worst_quad.max((eta - common::eta_by_quadrature(beta, tau)).abs());
        assert!(beta > region_lo(q));
    }
    let ok = worst_i <= 1e-9 && worst_ii <= 1e-9 && worst_quad <= 1e-9;
    report(
        6,
        ok,
        &format!("max(eta - 2 eta_T) = {worst_i:.3e}, max(eta_T - e^A eta) = {worst_ii:.3e}, quadrature gap {worst_quad:.3e}"),
    );
    assert!(ok);
}

#[test]
fn criterion_07_character_exactness() {
    let mut ok = true;
    let mut notes = Vec::new();
    for name in BUILTIN_NAMES {
        let t = builtin(name).unwrap();
        for i in 0..t.num_irreducibles() {
            for j in 0..t.num_irreducibles() {
                let ip = t.inner_product_values(t.irreducible_values(i), t.irreducible_values(j));
                ok &= ip == Cyclotomic::from_integer(t.field_order(), (i == j) as i64);
            }
        }
    }
    let s3 = builtin("S3").unwrap();
    let std = VirtualCharacter::named(s3.clone(), "std").unwrap();
    ok &= std.mu().exact == Cyclotomic::from_integer(s3.field_order(), -1);
    let d5 = builtin("D5").unwrap();
    let n = d5.field_order();
    // -(1 + sqrt 5)/2 = -1 - zeta_5 - zeta_5^4 with zeta_5 = zeta_10^2.
    let golden = &(&Cyclotomic::from_integer(n, -1) - &Cyclotomic::root(n, 2)) - &Cyclotomic::root(n, 8);
    for psi in ["psi1", "psi2"] {
        ok &= VirtualCharacter::named(d5.clone(), psi).unwrap().mu().exact == golden;
    }
    let both = VirtualCharacter::from_terms(d5.clone(), &[("psi1", 1), ("psi2", 1)]).unwrap();
    ok &= both.mu().exact == Cyclotomic::from_integer(n, -1);
    let f20 = builtin("F20").unwrap();
    let psi = VirtualCharacter::from_terms(f20.clone(), &[("psi4", 1), ("psi4bar", 1)]).unwrap();
    let big = VirtualCharacter::named(f20.clone(), "deg4").unwrap();
    let m = f20.field_order();
    let triple = [psi.mu().exact, big.mu().exact, psi.checked_add(&big).unwrap().mu().exact];
    ok &= triple == [-2, -1, -2].map(|v| Cyclotomic::from_integer(m, v));
    notes.push(format!("F20 triple {:?}", triple.iter().map(|c| c.to_f64_re()).collect::<Vec<_>>()));

    let mut pairs = 0;
    for name in BUILTIN_NAMES {
        let t = builtin(name).unwrap();
        let chars: Vec<VirtualCharacter> = (0..t.num_irreducibles())
            .map(|i| VirtualCharacter::irreducible(t.clone(), i))
            .chain([VirtualCharacter::regular(t.clone())])
            .collect();
        for a in &chars {
            for b in &chars {
                let gap = &(&a.checked_add(b).unwrap().mu().exact - &a.mu().exact) - &b.mu().exact;
                ok &= gap.is_real() && gap.to_f64_re() >= -1e-12;
                pairs += 1;
            }
            // Removing the trivial part shifts degree and mu by <chi, 1>.
            let a1 = a.pole_order();
            let rest = a.checked_add(&VirtualCharacter::trivial(t.clone()).scaled(-a1)).unwrap();
            ok &= rest.degree() == a.degree() - a1;
            if !rest.is_zero() {
                ok &= rest.mu().exact == &a.mu().exact - &Cyclotomic::from_integer(t.field_order(), a1);
            }
        }
    }
    report(7, ok, &format!("{} tables orthonormal, mu values exact, {pairs} sublinearity pairs; {}", BUILTIN_NAMES.len(), notes.join("")));
    assert!(ok);
}

#[test]
fn criterion_08_no_siegel_zeros() {
    let ds = fundamental_discriminants(-500, 500);
    let hits: Vec<i64> = ds
        .iter()
        .copied()
        .filter(|&d| find_siegel_zero(&QuadraticCharSpec::new(d).unwrap()).unwrap().is_some())
        .collect();
    let ok = hits.is_empty();
    report(8, ok, &format!("{} discriminants scanned, zeros at {hits:?}", ds.len()));
    assert!(ok);
}

#[test]
fn criterion_09_envelopes() {
    let mut reports = Vec::new();
    for (d, k) in quadratic_kappas(0) {
        let field = quadratic_field(d).unwrap();
        let chi = VirtualCharacter::named(field.group.clone(), "chi1").unwrap();
        let data = quadratic_conductors(d);
        let input = EnvelopeInput {
            family: "quadratic",
            field: &field.label,
            chi: &chi,
            kappa: k,
            t: 1e6,
            conductors: &data,
            induction: InductionData::from_character(&chi, 1),
            siegel: &[],
            nu: 0,
        };
        reports.extend(envelope_reports(&input).unwrap());
    }
    let mut comparisons = 0;
    let mut tighter = true;
    let mut fields = 0;
    for m in pure_cubic_parameters(24) {
        let c = pure_cubic(m).unwrap();
        let chi = VirtualCharacter::named(c.spec.group.clone(), "std").unwrap();
        let table = EulerTable::new(&c.spec, 1e5, 0).unwrap();
        let k = kappa(&table, &chi, 1e5);
        let data = c.conductors();
        let input = EnvelopeInput {
            family: "pure-cubic",
            field: &c.spec.label,
            chi: &chi,
            kappa: k,
            t: 1e5,
            conductors: &data,
            induction: InductionData::from_character(&chi, 1),
            siegel: &[],
            nu: 0,
        };
        reports.extend(envelope_reports(&input).unwrap());
        fields += 1;
        if let Some(t) = BaseFieldComparison::new(c.d, c.f).quadratic_base_tighter() {
            tighter &= t;
            comparisons += 1;
        }
    }
    let insane = reports.iter().filter(|r| !r.is_sane()).count();
    let summary = summarize(&reports);
    let mut extremes = Vec::new();
    for (name, s) in &summary {
        extremes.push(format!("{name}: ratio_lo min {:.3e}, ratio_hi max {:.3e}", s.min_ratio_lo, s.max_ratio_hi));
    }
    let ok = insane == 0 && tighter && comparisons == fields && fields >= 20;
    report(
        9,
        ok,
        &format!(
            "{} reports, {insane} non-finite; base comparison tighter on {comparisons}/{fields} cubics; {}",
            reports.len(),
            extremes.join("; ")
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_10_determinism() {
    let reference_q = quadratic_kappas(1);
    let reference_c = cubic_kappas(1);
    let bits = |z: &Complex<f64>| (z.re.to_bits(), z.im.to_bits());
    let mut ok = true;
    for workers in [4, 8] {
        let q = quadratic_kappas(workers);
        let c = cubic_kappas(workers);
        ok &= q.iter().zip(&reference_q).all(|(a, b)| a.0 == b.0 && bits(&a.1) == bits(&b.1));
        ok &= c.iter().zip(&reference_c).all(|(a, b)| bits(a) == bits(b));
    }
    report(10, ok, &format!("{} quadratic and {} cubic values bit-identical for 1, 4, 8 workers", reference_q.len(), reference_c.len()));
    assert!(ok);
}
