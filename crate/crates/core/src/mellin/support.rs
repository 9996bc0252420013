//! Support points as points of the dual torus Lie algebra modulo the
//! character lattice, and their affine stabilizers.

use alloc::format;
use alloc::vec::Vec;

use crate::error::MellinError;
use crate::rootdata::{RootDatum, TorusCharacter};

/// A character `χ'` written as `λ = e / m` with stabilizers
/// `W_{a,λ} ≅ W_χ'` (reflection part) and `W^ex_{a,λ} ≅ W'_χ'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPoint {
    pub character: TorusCharacter,
    /// `W_χ'`, as Weyl element indices.
    pub reflection: Vec<usize>,
    /// `W'_χ'`.
    pub full: Vec<usize>,
}

/// `(w, μ)` acting by `x ↦ w(x + μ)`, with `μ` stored as `m·μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineElement {
    pub linear: usize,
    pub scaled_translation: Vec<i64>,
}

impl SupportPoint {
    pub fn new(rd: &RootDatum, character: &TorusCharacter) -> Result<Self, MellinError> {
        rd.check_character(character)?;
        let stab = rd.stabilizers(character);
        Ok(Self {
            character: character.clone(),
            reflection: stab.reflection,
            full: stab.full,
        })
    }

    fn numerators(&self) -> Vec<i64> {
        self.character.exponents().iter().map(|&e| e as i64).collect()
    }

    /// Dual action `w·x = A_{w^{-1}}^T x` on numerators.
    fn dual(rd: &RootDatum, w: usize, x: &[i64]) -> Vec<i64> {
        let weyl = rd.weyl();
        weyl.element(weyl.inverse(w)).transpose().apply(x)
    }

    /// `w ↦ (w, w^{-1}λ − λ)`.
    pub fn affine(&self, rd: &RootDatum, w: usize) -> AffineElement {
        let e = self.numerators();
        let moved = Self::dual(rd, rd.weyl().inverse(w), &e);
        AffineElement {
            linear: w,
            scaled_translation: moved.iter().zip(&e).map(|(a, b)| a - b).collect(),
        }
    }

    fn integral(&self, v: &[i64]) -> bool {
        let m = self.character.modulus() as i64;
        v.iter().all(|x| x.rem_euclid(m) == 0)
    }

    /// Checks that `w ↦ (w, w^{-1}λ − λ)` identifies `W'_χ'` with the affine
    /// stabilizer of `λ` and `W_χ'` with the subgroup generated by affine
    /// reflections through `λ`.
    pub fn check_isomorphism(&self, rd: &RootDatum) -> Result<(), MellinError> {
        let weyl = rd.weyl();
        let m = self.character.modulus() as i64;
        let e = self.numerators();
        let fail = |msg: alloc::string::String| Err(MellinError::Stabilizer(msg));
        for w in 0..weyl.order() {
            let image = self.affine(rd, w);
            if self.integral(&image.scaled_translation) != self.full.contains(&w) {
                return fail(format!("translation of element {w} is integral iff it stabilizes"));
            }
            // w(λ + μ) = λ
            let shifted: Vec<i64> = e.iter().zip(&image.scaled_translation).map(|(a, b)| a + b).collect();
            if Self::dual(rd, w, &shifted) != e {
                return fail(format!("element {w} does not fix λ"));
            }
        }
        for &a in &self.full {
            for &b in &self.full {
                let (fa, fb) = (self.affine(rd, a), self.affine(rd, b));
                let composed = self.affine(rd, weyl.mul(a, b));
                // (w1, μ1)(w2, μ2) = (w1 w2, μ2 + w2^{-1} μ1)
                let pulled = Self::dual(rd, weyl.inverse(b), &fa.scaled_translation);
                let expect: Vec<i64> = fb.scaled_translation.iter().zip(&pulled).map(|(x, y)| x + y).collect();
                if composed.scaled_translation != expect {
                    return fail(format!("not multiplicative on ({a}, {b})"));
                }
            }
        }
        let mut generators = Vec::new();
        for (i, (root, coroot)) in rd.positive_roots().iter().zip(rd.positive_coroots()).enumerate() {
            if self.character.pair(coroot) != 0 {
                continue;
            }
            // the image of s_α is x ↦ s x + s μ with s μ ∈ Z α
            let s = weyl.index_of(&rd.reflection(i)).expect("reflections lie in W");
            let image = self.affine(rd, s);
            let moved = Self::dual(rd, s, &image.scaled_translation);
            if !is_integral_multiple(&moved, root, m) {
                return fail(format!("reflection {i} is not an affine reflection through λ"));
            }
            generators.push(s);
        }
        let generated = weyl.subgroup_generated(&generators);
        if generated != self.reflection || !self.reflection.iter().all(|w| self.full.contains(w)) {
            return fail("reflection stabilizer is not generated by affine reflections".into());
        }
        Ok(())
    }

    /// `W'/W`, as a number of cosets.
    pub fn component_index(&self) -> usize {
        self.full.len() / self.reflection.len()
    }
}

/// Whether `v / m` is an integer multiple of `root`.
fn is_integral_multiple(v: &[i64], root: &[i64], m: i64) -> bool {
    let Some(i) = root.iter().position(|&r| r != 0) else {
        return false;
    };
    if v[i] % (root[i] * m) != 0 {
        return false;
    }
    let k = v[i] / root[i];
    v.iter().zip(root).all(|(x, r)| *x == k * r)
}

/// Support points of a character list, in the given order.
pub fn support_points(rd: &RootDatum, characters: &[TorusCharacter]) -> Result<Vec<SupportPoint>, MellinError> {
    characters.iter().map(|c| SupportPoint::new(rd, c)).collect()
}
