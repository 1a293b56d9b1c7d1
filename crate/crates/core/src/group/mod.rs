//! Finite-group character tables and virtual characters.

mod builtin;
mod character;
mod json;
mod table;

pub use builtin::{builtin, cyclic, BUILTIN_NAMES, MAX_CYCLIC_ORDER};
pub use character::{ClassFunction, InductionData, Mu, VirtualCharacter, MU_TOLERANCE};
pub use json::{ClassDoc, ClassRef, GroupTableDoc, ValueDoc};
pub use table::{ClassInfo, GroupTable};

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(t: &str, name: &str) -> VirtualCharacter {
        VirtualCharacter::named(builtin(t).unwrap(), name).unwrap()
    }

    #[test]
    fn builtins_are_exactly_orthonormal() {
        for name in BUILTIN_NAMES.iter().chain(&["C1", "C5", "C12", "V4"]) {
            let t = builtin(name).unwrap();
            assert_eq!(t.orthogonality_residual(), 0.0, "{name}");
        }
    }

    #[test]
    fn mu_examples() {
        assert_eq!(chi("S3", "std").mu().value, -1.0);
        assert_eq!(chi("S3", "1").mu().value, 1.0);
        let golden = -(1.0 + 5f64.sqrt()) / 2.0;
        assert!((chi("D5", "psi1").mu().value - golden).abs() < 1e-12);
        assert!((chi("D5", "psi2").mu().value - golden).abs() < 1e-12);
        let f20 = builtin("F20").unwrap();
        let psi = VirtualCharacter::from_terms(f20.clone(), &[("psi4", 1), ("psi4bar", 1)]).unwrap();
        let psi_p = VirtualCharacter::named(f20.clone(), "deg4").unwrap();
        assert_eq!(psi.mu().value, -2.0);
        assert_eq!(psi_p.mu().value, -1.0);
        assert_eq!(psi.checked_add(&psi_p).unwrap().mu().value, -2.0);
    }

    #[test]
    fn power_classes() {
        let s3 = builtin("S3").unwrap();
        assert_eq!(s3.power_class_by_id("c3", 2).unwrap(), "c3");
        assert_eq!(s3.power_class_by_id("c2", 2).unwrap(), "e");
        let d5 = builtin("D5").unwrap();
        assert_eq!(d5.power_class_by_id("r", 2).unwrap(), "r2");
        assert!(s3.power_class_by_id("zz", 1).is_err());
    }

    #[test]
    fn potentially_quadratic() {
        assert!(chi("S3", "sgn").is_potentially_quadratic().unwrap());
        assert!(!chi("S3", "std").is_potentially_quadratic().unwrap());
        assert!(!chi("F20", "psi4").is_potentially_quadratic().unwrap());
        assert!(chi("F20", "lambda2").is_potentially_quadratic().unwrap());
        let reg = VirtualCharacter::regular(builtin("S3").unwrap());
        assert_eq!(reg.is_potentially_quadratic(), Err(crate::Error::NotIrreducible));
    }

    #[test]
    fn regular_decomposition() {
        let s3 = builtin("S3").unwrap();
        assert_eq!(VirtualCharacter::regular(s3.clone()).decompose(), vec![1, 1, 2]);
        let perm = ClassFunction::from_integers(s3, &[3, 1, 0]).unwrap();
        assert_eq!(perm.decompose().unwrap().coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn mismatched_tables_error() {
        let a = chi("S3", "std");
        let b = chi("D5", "psi1");
        assert!(matches!(a.inner_product(&b), Err(crate::Error::TableMismatch(..))));
    }

    #[test]
    fn induction_default_bound() {
        let std = chi("S3", "std");
        let ind = InductionData::from_character(&std, 2);
        assert_eq!(ind.tilde_degree, 4);
        assert_eq!(ind.mu_tilde, -2.0);
        assert!(InductionData::with_mu_tilde(&std, 2, -3.0).is_err());
        let triv = chi("S3", "1");
        assert_eq!(InductionData::from_character(&triv, 3).mu_tilde, 0.0);
    }

    #[test]
    fn labels() {
        let s3 = builtin("S3").unwrap();
        assert_eq!(VirtualCharacter::regular(s3.clone()).label(), "1+sgn+2*std");
        assert_eq!(VirtualCharacter::from_terms(s3, &[("std", -1)]).unwrap().label(), "-std");
    }
}
