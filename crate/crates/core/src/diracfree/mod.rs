//! Free Dirac two-point functions, the fermionic Wick sum and the
//! product with the exponential-field expectation.

mod gamma;
mod npoint;
mod spinor;

pub use gamma::{gamma_check, CMatrix4, GammaBasis, GammaReport, METRIC};
pub use npoint::{
    charges_for, dirac_npoint, dirac_npoint_matchings, dirac_npoint_with, full_model_vev,
    FieldKind, Label,
};
pub use spinor::{s_bar_minus_with, s_boundary_with, s_minus, s_minus_with, SpinorMatrix};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussmodel::{rho_vev, ContourSpec};
    use crate::propagator::{ComplexFourVector, Mass, QuadratureConfig};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn kind() -> impl Strategy<Value = FieldKind> {
        prop_oneof![Just(FieldKind::Psi), Just(FieldKind::PsiBar)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn full_model_is_the_product_of_its_factors(
            x in proptest::collection::vec(proptest::array::uniform4(-1.0f64..1.0), 4),
            kinds in proptest::collection::vec(kind(), 4),
            spinors in proptest::collection::vec(0usize..4, 4),
            l in 0.0f64..1.0,
        ) {
            let q = QuadratureConfig::default();
            let pts = ContourSpec::evenly_spaced(4, 0.5).place(&x).unwrap();
            let labels: Vec<Label> = kinds.iter().zip(&spinors).map(|(&kind, &spinor)| Label { kind, spinor }).collect();
            let r = charges_for(&labels).unwrap();
            let (m, dm) = (Mass::new(1.0).unwrap(), Mass::new(0.6).unwrap());
            let joint = full_model_vev(l, m, dm, &pts, &r, &labels, &q).unwrap();
            let product = dirac_npoint(dm, &pts, &labels, &q).unwrap() * rho_vev(l, m, &pts, &r, &q).unwrap();
            prop_assert!((joint - product).norm() <= 1e-12 * product.norm());
        }

        #[test]
        fn trace_is_representation_independent(
            x in proptest::array::uniform4(-1.0f64..1.0),
            eps in 0.3f64..1.0,
            seed in 0u64..1000,
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s = CMatrix4::from_fn(|_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).qr().q();
            let basis = GammaBasis::dirac().similarity(&s).unwrap();
            let q = QuadratureConfig::default();
            let m = Mass::new(0.9).unwrap();
            let z = ComplexFourVector::with_time_damping(x, eps);
            let a = s_minus(m, &z, &q).unwrap().trace();
            let b = s_minus_with(&basis, m, &z, &q).unwrap().trace();
            prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-6));
        }
    }
}
