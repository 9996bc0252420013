use bkk_core::bessel::WeightSet;
use bkk_core::cyclotomic::{Cyclotomic, IntCyclotomic};
use bkk_core::field::{standard_conductor, AdditiveCharacter, PrimeField};
use bkk_core::kernel::{fit_std_kernel, kernel_on_group, CharacterTable, ClassFunction, Convention, Mat2};
use bkk_core::scalar::Scalar;
use bkk_core::vanishing::{class_function_sums, coset_representatives, coset_sums, extension_scalars_sums};
use num_complex::Complex64;

fn canonical() -> Convention {
    Convention::new(1, true, -4).unwrap()
}

fn weight_sets() -> Vec<WeightSet> {
    let std = WeightSet::standard(2);
    vec![std.clone(), std.direct_sum(&std), std.det_twist(1), std.det_twist(2), WeightSet::sym2(2)]
}

#[test]
fn every_weight_set_vanishes_off_borel() {
    for q in [3u32, 5, 7] {
        let t = CharacterTable::new(q).unwrap();
        let psi = AdditiveCharacter::standard(q);
        for w in weight_sets() {
            let phi: ClassFunction<Complex64> = kernel_on_group(&t, &w, &psi, canonical(), 1).unwrap();
            let r = class_function_sums(t.classes(), &phi, 1).unwrap();
            assert!(r.passes(), "q={q} {} off {}", w.canonical_string(), r.relative_off_borel());
            assert!(r.nontrivial(), "q={q} {}", w.canonical_string());
        }
    }
}

#[test]
fn exact_sums_vanish_identically_at_q3() {
    let q = 3;
    let t = CharacterTable::new(q).unwrap();
    let psi = AdditiveCharacter::standard(q);
    let c = standard_conductor(q);
    for w in weight_sets() {
        let phi: ClassFunction<Cyclotomic> = kernel_on_group(&t, &w, &psi, canonical(), c).unwrap();
        let r = class_function_sums(t.classes(), &phi, c).unwrap();
        assert_eq!(r.off_borel_exact_zero, Some(true), "{}", w.canonical_string());
    }
}

#[test]
fn antidiagonal_line_sum_is_zero() {
    let f = PrimeField::new(5, 1).unwrap();
    let psi = AdditiveCharacter::standard(5);
    let r = extension_scalars_sums(5, 1, &IntCyclotomic::from_int(5, 1), &psi, 5).unwrap();
    let anti = Mat2::new(f.zero(), f.one(), f.one(), f.zero());
    let s = r.sums.iter().find(|s| s.representative == anti).unwrap();
    assert!(!s.on_borel);
    assert_eq!(s.exact_zero, Some(true));
}

#[test]
fn std_over_f9_vanishes() {
    let psi = AdditiveCharacter::standard(3);
    let r = extension_scalars_sums(3, 2, &IntCyclotomic::from_int(3, 1), &psi, 3).unwrap();
    assert_eq!(r.field_order, 9);
    assert_eq!(r.sums.len(), 80 * 8);
    assert_eq!(r.off_borel_exact_zero, Some(true));
    assert!(r.passes() && r.nontrivial());
}

#[test]
fn degree_one_extension_is_the_std_kernel() {
    for q in [3u32, 5, 7] {
        let t = CharacterTable::new(q).unwrap();
        let psi = AdditiveCharacter::standard(q);
        let phi: ClassFunction<Complex64> = kernel_on_group(&t, &WeightSet::standard(2), &psi, canonical(), 1).unwrap();
        let fit = fit_std_kernel(t.classes(), &phi, &psi, 1);
        let direct = class_function_sums(t.classes(), &phi, 1).unwrap();
        let lifted = extension_scalars_sums(q, 1, &fit.constant, &psi, 1).unwrap();
        assert_eq!(direct.sums.len(), lifted.sums.len());
        for (a, b) in direct.sums.iter().zip(&lifted.sums) {
            assert_eq!(a.representative, b.representative);
            assert!((a.value - b.value).norm() <= 1e-9 * direct.max_phi.max(1.0));
        }
    }
}

fn exact_sum(t: &CharacterTable, phi: &ClassFunction<Cyclotomic>, g: &Mat2, c: u32) -> Cyclotomic {
    let f = t.classes().base_field();
    f.elements().fold(Cyclotomic::zero(c), |acc, x| {
        let u = Mat2::new(f.one(), x, f.zero(), f.one());
        acc.add(phi.at(t.classes().class_of(&g.mul(f, &u))))
    })
}

#[test]
fn left_translation_by_borel_moves_sums_by_conjugation() {
    let q = 3;
    let t = CharacterTable::new(q).unwrap();
    let f = t.classes().base_field().clone();
    let psi = AdditiveCharacter::standard(q);
    let c = standard_conductor(q);
    let mut borel = Vec::new();
    for a in f.units() {
        for d in f.units() {
            for b in f.elements() {
                borel.push(Mat2::new(a, b, f.zero(), d));
            }
        }
    }
    assert_eq!(borel.len(), 12);
    for w in weight_sets() {
        let phi: ClassFunction<Cyclotomic> = kernel_on_group(&t, &w, &psi, canonical(), c).unwrap();
        for (g, on_borel) in coset_representatives(&f) {
            let here = exact_sum(&t, &phi, &g, c);
            for b in &borel {
                let bg = b.mul(&f, &g);
                let left = exact_sum(&t, &phi, &bg, c);
                // φ(bgu) = φ(g·b·(b⁻¹ub)) and b normalizes U
                assert_eq!(left, exact_sum(&t, &phi, &g.mul(&f, b), c));
                let moved_on_borel = bg.c == f.zero();
                assert_eq!(moved_on_borel, on_borel);
                if !on_borel {
                    assert!(left.is_zero() && here.is_zero(), "{}", w.canonical_string());
                }
            }
        }
    }
}

#[test]
fn on_borel_sums_are_weyl_symmetric_for_std() {
    for q in [3u32, 5, 7] {
        let t = CharacterTable::new(q).unwrap();
        let psi = AdditiveCharacter::standard(q);
        let phi: ClassFunction<Complex64> = kernel_on_group(&t, &WeightSet::standard(2), &psi, canonical(), 1).unwrap();
        let table = class_function_sums(t.classes(), &phi, 1).unwrap().on_borel_table();
        assert_eq!(table.len() as u32, (q - 1) * (q - 1));
        for &((a, d), v) in &table {
            let (_, swapped) = table.iter().find(|((x, y), _)| *x == d && *y == a).unwrap();
            assert!((v - swapped).norm() < 1e-9, "q={q} ({a},{d})");
        }
    }
}

#[test]
fn enumeration_budget_is_enforced() {
    // |GL_2(F_97)| is far above the budget
    let f = PrimeField::new(97, 1).unwrap();
    assert!(coset_sums(&f, |_| Complex64::new(1.0, 0.0), 1).is_err());
}
