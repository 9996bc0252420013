use bkk_core::rootdata::{Preset, RootDatum, TorusCharacter};
use proptest::prelude::*;

#[test]
fn weyl_groups_and_reflections() {
    for (preset, order) in [(Preset::Gl1, 1), (Preset::Sl2, 2), (Preset::Gl2, 2), (Preset::Gl3, 6)] {
        let rd = RootDatum::new(preset);
        assert_eq!(rd.weyl().order(), order);
        for (i, (root, coroot)) in rd.positive_roots().iter().zip(rd.positive_coroots()).enumerate() {
            let pairing: i64 = root.iter().zip(coroot).map(|(a, b)| a * b).sum();
            assert_eq!(pairing, 2);
            let s = rd.reflection(i);
            assert!(s.mul(&s).is_identity());
        }
    }
}

#[test]
fn connected_center_stabilizers_coincide() {
    for preset in [Preset::Gl1, Preset::Gl2, Preset::Gl3] {
        let rd = RootDatum::new(preset);
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13] {
            for chi in rd.all_characters(q - 1) {
                let stab = rd.stabilizers(&chi);
                assert_eq!(stab.reflection, stab.full, "{} q={q} χ={chi}", preset.name());
            }
        }
    }
}

#[test]
fn sl2_stabilizer_gap_is_exactly_the_quadratic_character() {
    let rd = RootDatum::new(Preset::Sl2);
    for q in [3u32, 5, 7, 9, 11, 13] {
        for chi in rd.all_characters(q - 1) {
            let stab = rd.stabilizers(&chi);
            let quadratic = 2 * chi.exponents()[0] == q - 1;
            assert_eq!(stab.reflection.len() < stab.full.len(), quadratic, "q={q} χ={chi}");
        }
    }
}

#[test]
fn spec_orbit_examples() {
    let gl2 = RootDatum::new(Preset::Gl2);
    let chi = TorusCharacter::new(6, &[1, 4]).unwrap();
    let mut orbit = gl2.orbit(&chi);
    orbit.sort();
    assert_eq!(orbit, vec![chi.clone(), TorusCharacter::new(6, &[4, 1]).unwrap()]);
    let fixed = TorusCharacter::new(6, &[3, 3]).unwrap();
    assert_eq!(gl2.orbit(&fixed), vec![fixed.clone()]);
    let sl2 = RootDatum::new(Preset::Sl2);
    let quad = TorusCharacter::new(4, &[2]).unwrap();
    assert_eq!(sl2.orbit(&quad), vec![quad]);
}

fn preset() -> impl Strategy<Value = Preset> {
    prop::sample::select(Preset::ALL.to_vec())
}

proptest! {
    #[test]
    fn orbit_stabilizer(p in preset(), m in 1u32..13, seed in any::<u64>()) {
        let rd = RootDatum::new(p);
        let all = rd.all_characters(m);
        let chi = &all[(seed % all.len() as u64) as usize];
        let stab = rd.stabilizers(chi);
        prop_assert_eq!(rd.orbit(chi).len() * stab.full.len(), rd.weyl().order());
        // W_χ ⊆ W'_χ, normal
        let weyl = rd.weyl();
        for &w in &stab.reflection {
            prop_assert!(stab.full.contains(&w));
        }
        for &h in &stab.full {
            let mut conj = weyl.conjugate_subgroup(h, &stab.reflection);
            conj.sort();
            let mut base = stab.reflection.clone();
            base.sort();
            prop_assert_eq!(conj, base);
        }
        for &g in &stab.generators {
            let i = (0..rd.positive_roots().len()).find(|&i| weyl.element(g) == &rd.reflection(i)).unwrap();
            prop_assert_eq!(chi.pair(&rd.positive_coroots()[i]), 0);
        }
    }

    #[test]
    fn stabilizers_are_conjugation_equivariant(p in preset(), m in 1u32..13, seed in any::<u64>(), w_seed in any::<u64>()) {
        let rd = RootDatum::new(p);
        let all = rd.all_characters(m);
        let chi = &all[(seed % all.len() as u64) as usize];
        let w = (w_seed % rd.weyl().order() as u64) as usize;
        let moved = rd.act(w, chi);
        let (a, b) = (rd.stabilizers(chi), rd.stabilizers(&moved));
        let sorted = |mut v: Vec<usize>| { v.sort(); v };
        prop_assert_eq!(sorted(rd.weyl().conjugate_subgroup(w, &a.full)), sorted(b.full));
        prop_assert_eq!(sorted(rd.weyl().conjugate_subgroup(w, &a.reflection)), sorted(b.reflection));
    }

    #[test]
    fn action_is_a_group_action(p in preset(), m in 1u32..13, seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let rd = RootDatum::new(p);
        let all = rd.all_characters(m);
        let chi = &all[(seed % all.len() as u64) as usize];
        let n = rd.weyl().order() as u64;
        let (a, b) = ((a % n) as usize, (b % n) as usize);
        prop_assert_eq!(rd.act(rd.weyl().mul(a, b), chi), rd.act(a, &rd.act(b, chi)));
    }
}
