//! `GL_2(F_q)`: conjugacy classes, the character table with its
//! Deligne–Lusztig data, gamma values, the spectral kernel and the Fourier
//! operator it defines.

mod characters;
mod fourier;
mod gamma;

pub use characters::{CharacterTable, DlDatum, Irrep, IrrepFamily, IrrepLabel, SparseRootSum};
pub use fourier::{
    convolve_by_characters, fit_std_kernel, kernel_numerators, kernel_on_group, kernel_prefactor,
    psi_trace_function, ClassAlgebra, ClassFunction, EigenReport, EigenRow, StdFit,
};
pub use gamma::{
    gamma0_nonsplit_formula, gamma0_of_datum, Convention, ConventionParseError, GammaFields,
    GammaTable,
};

use alloc::vec;
use alloc::vec::Vec;

use crate::error::GroupError;
use crate::field::{FieldElement, PrimeField};

/// 2×2 matrix `[[a, b], [c, d]]` over a [`PrimeField`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2 {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl Mat2 {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Self {
        Self { a, b, c, d }
    }

    pub fn diag(x: FieldElement, y: FieldElement) -> Self {
        Self::new(x, FieldElement(0), FieldElement(0), y)
    }

    pub fn mul(&self, f: &PrimeField, o: &Mat2) -> Mat2 {
        Mat2 {
            a: f.add(f.mul(self.a, o.a), f.mul(self.b, o.c)),
            b: f.add(f.mul(self.a, o.b), f.mul(self.b, o.d)),
            c: f.add(f.mul(self.c, o.a), f.mul(self.d, o.c)),
            d: f.add(f.mul(self.c, o.b), f.mul(self.d, o.d)),
        }
    }

    pub fn det(&self, f: &PrimeField) -> FieldElement {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn trace(&self, f: &PrimeField) -> FieldElement {
        f.add(self.a, self.d)
    }

    pub fn inverse(&self, f: &PrimeField) -> Option<Mat2> {
        let inv = f.inv(self.det(f))?;
        Some(Mat2 {
            a: f.mul(self.d, inv),
            b: f.mul(f.neg(self.b), inv),
            c: f.mul(f.neg(self.c), inv),
            d: f.mul(self.a, inv),
        })
    }

    pub fn is_scalar(&self) -> bool {
        self.b.0 == 0 && self.c.0 == 0 && self.a == self.d
    }
}

/// Every invertible matrix, in lexicographic order of `(a, b, c, d)`.
pub fn group_elements(f: &PrimeField) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    let m = Mat2::new(a, b, c, d);
                    if m.det(f).0 != 0 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// `|GL_2(F_q)| = (q² − 1)(q² − q)`.
pub fn group_order(q: u64) -> u64 {
    (q * q - 1) * (q * q - q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassFamily {
    Central,
    NonSemisimple,
    SplitRegular,
    Anisotropic,
}

impl ClassFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ClassFamily::Central => "central",
            ClassFamily::NonSemisimple => "nonsemisimple",
            ClassFamily::SplitRegular => "split-regular",
            ClassFamily::Anisotropic => "anisotropic",
        }
    }
}

/// Eigenvalue data of a class, as discrete logs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassParams {
    /// `x·I`, `x = g^i`.
    Central(u32),
    /// `[[x, 1], [0, x]]`.
    NonSemisimple(u32),
    /// `diag(x, y)` with `log x < log y`.
    Split(u32, u32),
    /// Eigenvalue `z = G^j ∈ F_{q²} \ F_q`, with `j` the smaller of `j, jq`.
    Anisotropic(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub family: ClassFamily,
    pub params: ClassParams,
    pub representative: Mat2,
    pub size: u64,
}

/// The `q² − 1` conjugacy classes of `GL_2(F_q)` and a class lookup.
#[derive(Clone, Debug)]
pub struct ClassTable {
    q: u32,
    base: PrimeField,
    quadratic: PrimeField,
    classes: Vec<ConjugacyClass>,
    // indexed by (trace·q + det)·2 + is_scalar
    lookup: Vec<u32>,
}

const NO_CLASS: u32 = u32::MAX;

fn check_q(q: u32) -> Result<(), GroupError> {
    let prime = q >= 2 && (2..q).all(|d| !q.is_multiple_of(d));
    if !prime || !(3..=13).contains(&q) {
        return Err(GroupError::QOutOfRange(q));
    }
    Ok(())
}

impl ClassTable {
    pub fn new(q: u32) -> Result<Self, GroupError> {
        check_q(q)?;
        let base = PrimeField::new(q, 1)?;
        let quadratic = PrimeField::new(q, 2)?;
        let qq = q as u64;
        let m = q - 1;
        let n2 = q * q - 1;
        let mut classes = Vec::new();
        for i in 0..m {
            let x = base.exp(i as u64);
            classes.push(ConjugacyClass {
                family: ClassFamily::Central,
                params: ClassParams::Central(i),
                representative: Mat2::diag(x, x),
                size: 1,
            });
        }
        for i in 0..m {
            let x = base.exp(i as u64);
            classes.push(ConjugacyClass {
                family: ClassFamily::NonSemisimple,
                params: ClassParams::NonSemisimple(i),
                representative: Mat2::new(x, FieldElement(1), FieldElement(0), x),
                size: qq * qq - 1,
            });
        }
        for i in 0..m {
            for j in i + 1..m {
                classes.push(ConjugacyClass {
                    family: ClassFamily::SplitRegular,
                    params: ClassParams::Split(i, j),
                    representative: Mat2::diag(base.exp(i as u64), base.exp(j as u64)),
                    size: qq * qq + qq,
                });
            }
        }
        for j in 0..n2 {
            let frob = (j as u64 * q as u64 % n2 as u64) as u32;
            if frob <= j {
                continue;
            }
            let z = quadratic.exp(j as u64);
            let tr = quadratic.trace_to_prime(z);
            let nm = quadratic.norm_to_prime(z);
            // companion matrix of X² − tr·X + nm
            classes.push(ConjugacyClass {
                family: ClassFamily::Anisotropic,
                params: ClassParams::Anisotropic(j),
                representative: Mat2::new(
                    FieldElement(0),
                    base.neg(FieldElement(nm)),
                    FieldElement(1),
                    FieldElement(tr),
                ),
                size: qq * qq - qq,
            });
        }
        let mut table = Self {
            q,
            base,
            quadratic,
            classes,
            lookup: vec![NO_CLASS; (q * q * 2) as usize],
        };
        table.build_lookup();
        Ok(table)
    }

    fn build_lookup(&mut self) {
        let q = self.q;
        let f = &self.base;
        let two_inv = f.inv(f.from_int(2)).expect("q is odd");
        for t in 0..q {
            for d in 1..q {
                let (tf, df) = (FieldElement(t), FieldElement(d));
                let disc = f.sub(f.mul(tf, tf), f.mul(f.from_int(4), df));
                let half_t = f.mul(tf, two_inv);
                let key = ((t * q + d) * 2) as usize;
                if disc.0 == 0 {
                    let x = f.log(half_t).expect("double root of a unit");
                    self.lookup[key + 1] = self.index_of(ClassParams::Central(x));
                    self.lookup[key] = self.index_of(ClassParams::NonSemisimple(x));
                    continue;
                }
                let idx = match self.sqrt_in_base(disc) {
                    Some(s) => {
                        let half_s = f.mul(s, two_inv);
                        let x = f.log(f.add(half_t, half_s)).unwrap();
                        let y = f.log(f.sub(half_t, half_s)).unwrap();
                        self.index_of(ClassParams::Split(x.min(y), x.max(y)))
                    }
                    None => {
                        // disc = n·u² with n the nonresidue in the model of F_{q²}
                        let n = FieldElement(self.quadratic.nonresidue().unwrap());
                        let u2 = f.mul(disc, f.inv(n).unwrap());
                        let u = self.sqrt_in_base(u2).expect("disc/n is a square");
                        let z = self
                            .quadratic
                            .from_coeffs(half_t.0, f.mul(u, two_inv).0);
                        let j = self.quadratic.log(z).unwrap();
                        self.index_of(ClassParams::Anisotropic(self.frobenius_canonical(j)))
                    }
                };
                self.lookup[key] = idx;
            }
        }
    }

    fn sqrt_in_base(&self, x: FieldElement) -> Option<FieldElement> {
        self.base.elements().find(|&s| self.base.mul(s, s) == x)
    }

    fn index_of(&self, params: ClassParams) -> u32 {
        self.classes
            .iter()
            .position(|c| c.params == params)
            .expect("class parameters enumerated") as u32
    }

    /// `min(j, jq mod (q² − 1))`.
    pub fn frobenius_canonical(&self, j: u32) -> u32 {
        let n2 = self.q * self.q - 1;
        j.min((j as u64 * self.q as u64 % n2 as u64) as u32)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn base_field(&self) -> &PrimeField {
        &self.base
    }

    pub fn quadratic_field(&self) -> &PrimeField {
        &self.quadratic
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        group_order(self.q as u64)
    }

    /// Class index of an invertible matrix.
    pub fn class_of(&self, m: &Mat2) -> usize {
        let f = &self.base;
        let t = m.trace(f).0;
        let d = m.det(f).0;
        let key = ((t * self.q + d) * 2 + u32::from(m.is_scalar())) as usize;
        let idx = self.lookup[key];
        debug_assert!(idx != NO_CLASS, "singular matrix has no class");
        idx as usize
    }

    /// `log_G(x)` in `F_{q²}` of an element of `F_q^×`.
    pub fn embedded_log(&self, x: FieldElement) -> u32 {
        self.quadratic
            .log(self.quadratic.from_coeffs(x.0, 0))
            .expect("unit")
    }

    /// `log_G(g)` for the fixed generator `g` of `F_q^×`, a multiple of `q + 1`.
    pub fn base_generator_log(&self) -> u32 {
        self.embedded_log(self.base.generator())
    }
}

/// Conjugacy partition by brute force: class index per element of
/// [`group_elements`], numbered by first appearance.
pub fn brute_force_partition(f: &PrimeField) -> (Vec<Mat2>, Vec<usize>) {
    let elements = group_elements(f);
    let mut class_id = vec![usize::MAX; elements.len()];
    let index = |m: &Mat2| elements.binary_search(m).expect("element listed");
    let mut next = 0;
    for i in 0..elements.len() {
        if class_id[i] != usize::MAX {
            continue;
        }
        for g in &elements {
            let conj = g.mul(f, &elements[i]).mul(f, &g.inverse(f).unwrap());
            class_id[index(&conj)] = next;
        }
        next += 1;
    }
    (elements, class_id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_and_sizes() {
        for q in [3u32, 5, 7, 11, 13] {
            let t = ClassTable::new(q).unwrap();
            assert_eq!(t.len() as u32, q * q - 1);
            let total: u64 = t.classes().iter().map(|c| c.size).sum();
            assert_eq!(total, t.group_order());
            let count = |fam| t.classes().iter().filter(|c| c.family == fam).count() as u32;
            assert_eq!(count(ClassFamily::Central), q - 1);
            assert_eq!(count(ClassFamily::NonSemisimple), q - 1);
            assert_eq!(count(ClassFamily::SplitRegular), (q - 1) * (q - 2) / 2);
            assert_eq!(count(ClassFamily::Anisotropic), (q * q - q) / 2);
        }
    }

    #[test]
    fn representatives_land_in_their_class() {
        for q in [3u32, 5, 7] {
            let t = ClassTable::new(q).unwrap();
            for (i, c) in t.classes().iter().enumerate() {
                assert_eq!(t.class_of(&c.representative), i);
            }
        }
    }

    #[test]
    fn rejects_bad_q() {
        assert!(ClassTable::new(2).is_err());
        assert!(ClassTable::new(9).is_err());
        assert!(ClassTable::new(17).is_err());
    }

    #[test]
    fn brute_force_partition_q3_matches() {
        let t = ClassTable::new(3).unwrap();
        let (elements, ids) = brute_force_partition(t.base_field());
        assert_eq!(elements.len(), 48);
        let mut sizes = [0u64; 8];
        let mut mapping = [usize::MAX; 8];
        for (m, &id) in elements.iter().zip(&ids) {
            let c = t.class_of(m);
            if mapping[id] == usize::MAX {
                mapping[id] = c;
            }
            assert_eq!(mapping[id], c, "brute class {id} splits");
            sizes[c] += 1;
        }
        for (c, cls) in t.classes().iter().enumerate() {
            assert_eq!(sizes[c], cls.size);
        }
    }
}
