use proptest::prelude::*;

use artin_kappa::bounds::{
    cond_envelope, disc_envelope, epsilon_chi, grh_envelope, BaseFieldComparison, Shapes,
};
use artin_kappa::exceptional::SiegelRecord;
use artin_kappa::families::{pure_cubic, pure_cubic_parameters};
use artin_kappa::group::{builtin, BUILTIN_NAMES};
use artin_kappa::{InductionData, VirtualCharacter};

fn check_shapes(s: &Shapes) {
    let upper: f64 = s.upper_terms.iter().map(|t| t.value()).product();
    let lower: f64 = s.lower_prefactor * s.lower_terms.iter().map(|t| t.value()).product::<f64>();
    assert!((s.upper / upper - 1.0).abs() < 1e-14);
    assert!((s.lower / lower - 1.0).abs() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Shapes are the products of their terms, and the lower exponents sit
    /// below the upper ones because `mu <= degree`.
    #[test]
    fn exponent_identities(
        table in 0..BUILTIN_NAMES.len(),
        coeffs in prop::collection::vec(0i64..=3, 10),
        log_q in 1.2f64..30.0,
        log_dk in 0.0f64..6.0,
    ) {
        let t = builtin(BUILTIN_NAMES[table]).unwrap();
        let chi = VirtualCharacter::new(t.clone(), coeffs[..t.num_irreducibles()].to_vec()).unwrap();
        prop_assume!(!chi.is_zero());
        let ind = InductionData::from_character(&chi, 1);
        let (q, dk) = (log_q.exp(), log_dk.exp());
        let a1 = chi.pole_order() as f64;

        let cond = cond_envelope(&chi, &ind, dk, q, 1.0).unwrap();
        check_shapes(&cond);
        let upper_exp: f64 = cond.upper_terms.iter().filter(|t| t.base == "log q").map(|t| t.exponent).sum();
        let lower_exp: f64 = cond.lower_terms.iter().filter(|t| t.base == "log q").map(|t| t.exponent).sum();
        prop_assert!((upper_exp - (chi.degree() as f64 - a1)).abs() < 1e-12);
        prop_assert!((lower_exp - (chi.mu().value - a1)).abs() < 1e-12);
        prop_assert!(lower_exp <= upper_exp + 1e-12);

        let disc = disc_envelope(&chi, &ind, q, 0).unwrap();
        check_shapes(&disc);
        if q > std::f64::consts::E {
            prop_assert!(disc.lower <= disc.upper * (1.0 + 1e-12));
        }
        if q > 16.0 {
            check_shapes(&grh_envelope(&chi, &ind, dk, q).unwrap());
        }
    }

    #[test]
    fn epsilon_is_at_most_one(coeff in 0i64..4, q in 3.0f64..1e6, one_minus_beta in 1e-6f64..1.0) {
        let s3 = builtin("S3").unwrap();
        let chi = VirtualCharacter::from_terms(s3, &[("sgn", coeff), ("std", 1)]).unwrap();
        let beta = 1.0 - one_minus_beta / (4.0 * q.ln());
        let rec = SiegelRecord::new("sgn", q, Some(beta)).unwrap();
        let eps = epsilon_chi(&chi, &[rec], 1.0, 1).unwrap();
        prop_assert!(eps > 0.0 && eps <= 1.0);
    }
}

#[test]
fn envelopes_reject_virtual_characters() {
    let s3 = builtin("S3").unwrap();
    let chi = VirtualCharacter::from_terms(s3, &[("sgn", -1), ("std", 1)]).unwrap();
    let ind = InductionData::from_character(&chi, 1);
    assert!(cond_envelope(&chi, &ind, 1.0, 100.0, 1.0).is_err());
    assert!(disc_envelope(&chi, &ind, 100.0, 0).is_err());
}

#[test]
fn quadratic_base_is_tighter_for_pure_cubics() {
    for m in pure_cubic_parameters(60) {
        let c = pure_cubic(m).unwrap();
        let cmp = BaseFieldComparison::new(c.d, c.f);
        assert_eq!(cmp.quadratic_base_tighter(), Some(true), "m = {m}");
    }
    assert_eq!(BaseFieldComparison::new(-23, 1).quadratic_base_tighter(), None);
}
