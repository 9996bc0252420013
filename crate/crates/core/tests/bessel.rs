use bkk_core::bessel::{
    bessel_on_torus, finite_mellin, gauss_product, gauss_product_check, inverse_mellin, point_count, TorusFunction,
    WeightSet,
};
use bkk_core::cyclotomic::IntCyclotomic;
use bkk_core::field::{gauss_sum, standard_conductor, AdditiveCharacter, MultiplicativeCharacter, PrimeField};
use bkk_core::rootdata::{Preset, RootDatum, TorusCharacter};
use bkk_core::scalar::Scalar;
use num_complex::Complex64;
use proptest::prelude::*;

fn gl2_weight_sets() -> Vec<WeightSet> {
    let std = WeightSet::standard(2);
    vec![std.clone(), std.direct_sum(&std), WeightSet::sym2(2), std.det_twist(1)]
}

#[test]
fn gauss_product_identity_exact_small_q() {
    for q in [3u32, 5] {
        let f = PrimeField::new(q, 1).unwrap();
        let psi = AdditiveCharacter::standard(q);
        let c = standard_conductor(q);
        for w in gl2_weight_sets() {
            let r = gauss_product_check::<IntCyclotomic>(&w, &RootDatum::new(Preset::Gl2), &psi, &f, c).unwrap();
            assert_eq!(r.exact_failures, Some(0), "q={q} weights {}", w.canonical_string());
        }
        let kl = WeightSet::parse("1;1").unwrap();
        let r = gauss_product_check::<IntCyclotomic>(&kl, &RootDatum::new(Preset::Gl1), &psi, &f, c).unwrap();
        assert_eq!(r.exact_failures, Some(0));
    }
}

#[test]
fn kloosterman_mellin_is_a_gauss_square() {
    let q = 7;
    let f = PrimeField::new(q, 1).unwrap();
    let psi = AdditiveCharacter::standard(q);
    let c = standard_conductor(q);
    let kl = WeightSet::parse("1;1").unwrap();
    let phi: TorusFunction<IntCyclotomic> = bessel_on_torus(&kl, &psi, &f, c).unwrap();
    for a in 0..6 {
        let chi = TorusCharacter::new(6, &[a]).unwrap();
        let g: IntCyclotomic = gauss_sum(&MultiplicativeCharacter::new(6, a), &psi, &f, c).unwrap();
        assert_eq!(finite_mellin(&phi, &chi), Scalar::mul(&g, &g));
    }
}

#[test]
fn trivial_character_gives_one() {
    let f = PrimeField::new(5, 1).unwrap();
    let psi = AdditiveCharacter::standard(5);
    for w in gl2_weight_sets() {
        let chi = TorusCharacter::trivial(4, 2);
        let v: IntCyclotomic = gauss_product(&w, &chi, &psi, &f, standard_conductor(5)).unwrap();
        assert_eq!(v, IntCyclotomic::from_int(standard_conductor(5), 1));
    }
}

#[test]
fn mellin_inverts() {
    for (q, rank) in [(5u32, 1usize), (7, 2)] {
        let f = PrimeField::new(q, 1).unwrap();
        let psi = AdditiveCharacter::standard(q);
        let w = if rank == 1 { WeightSet::parse("1;1").unwrap() } else { WeightSet::sym2(2) };
        let phi: TorusFunction<Complex64> = bessel_on_torus(&w, &psi, &f, 1).unwrap();
        let rd = RootDatum::new(if rank == 1 { Preset::Gl1 } else { Preset::Gl2 });
        let values: Vec<Complex64> = rd.all_characters(q - 1).iter().map(|chi| finite_mellin(&phi, chi)).collect();
        let back = inverse_mellin(q, rank, &values);
        let err = back.iter().zip(phi.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-9, "q={q} error {err}");
    }
}

#[test]
fn bessel_functions_are_weyl_invariant() {
    let rd = RootDatum::new(Preset::Gl2);
    for q in [3u32, 5, 7] {
        let f = PrimeField::new(q, 1).unwrap();
        let psi = AdditiveCharacter::standard(q);
        for w in gl2_weight_sets() {
            assert!(w.is_weyl_stable(&rd));
            let phi: TorusFunction<IntCyclotomic> = bessel_on_torus(&w, &psi, &f, standard_conductor(q)).unwrap();
            for m in rd.weyl_elements() {
                assert_eq!(phi.weyl_translate(m), phi);
            }
        }
    }
}

fn torus_function(q: u32, rank: usize) -> impl Strategy<Value = TorusFunction<IntCyclotomic>> {
    let n = point_count(q, rank);
    let conductor = q - 1;
    prop::collection::vec(prop::collection::vec(-2i64..=2, conductor as usize), n).prop_map(move |vals| {
        let values = vals
            .iter()
            .map(|c| IntCyclotomic::from_counts(conductor, conductor, c))
            .collect();
        TorusFunction::from_values(q, rank, values)
    })
}

fn case() -> impl Strategy<Value = (u32, usize)> {
    prop::sample::select(vec![(3u32, 1usize), (5, 1), (7, 1), (3, 2), (5, 2), (7, 2)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_is_multiplicative(
        (f, g) in case().prop_flat_map(|(q, r)| (torus_function(q, r), torus_function(q, r)))
    ) {
        let rd = RootDatum::new(if f.rank() == 1 { Preset::Gl1 } else { Preset::Gl2 });
        let fg = f.convolve(&g);
        for chi in rd.all_characters(f.q() - 1) {
            let lhs = finite_mellin(&fg, &chi);
            let rhs = Scalar::mul(&finite_mellin(&f, &chi), &finite_mellin(&g, &chi));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
