//! Root data for GL1, GL2, GL3 and SL2, their Weyl groups, and stabilizers
//! of torus characters.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::RootDataError;

/// Square integer matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Self { n, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a != 0 {
                    for j in 0..n {
                        entries[i * n + j] += a * other.get(k, j);
                    }
                }
            }
        }
        Self { n, entries }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j);
            }
        }
        Self { n, entries }
    }

    pub fn det(&self) -> i64 {
        match self.n {
            0 => 1,
            1 => self.entries[0],
            _ => (0..self.n)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * self.get(0, j) * self.minor(0, j).det()
                })
                .sum(),
        }
    }

    fn minor(&self, row: usize, col: usize) -> Self {
        let n = self.n - 1;
        let mut entries = Vec::with_capacity(n * n);
        for i in (0..self.n).filter(|&i| i != row) {
            for j in (0..self.n).filter(|&j| j != col) {
                entries.push(self.get(i, j));
            }
        }
        Self { n, entries }
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d != 1 && d != -1 {
            return None;
        }
        let n = self.n;
        if n == 1 {
            return Some(Self {
                n,
                entries: vec![d],
            });
        }
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                // adjugate is the transposed cofactor matrix
                entries[j * n + i] = sign * self.minor(i, j).det() * d;
            }
        }
        Some(Self { n, entries })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Preset {
    Gl1,
    Gl2,
    Gl3,
    Sl2,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Gl1, Preset::Gl2, Preset::Gl3, Preset::Sl2];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Gl1 => "gl1",
            Preset::Gl2 => "gl2",
            Preset::Gl3 => "gl3",
            Preset::Sl2 => "sl2",
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Preset::Gl1 | Preset::Sl2 => 1,
            Preset::Gl2 => 2,
            Preset::Gl3 => 3,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = RootDataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gl1" => Ok(Preset::Gl1),
            "gl2" => Ok(Preset::Gl2),
            "gl3" => Ok(Preset::Gl3),
            "sl2" => Ok(Preset::Sl2),
            _ => Err(RootDataError::UnknownPreset(s.to_string())),
        }
    }
}

/// Positive roots (characters) and coroots (cocharacters) of a preset.
#[derive(Clone, Debug)]
pub struct RootDatum {
    preset: Preset,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    simple: Vec<usize>,
    weyl: WeylGroup,
}

fn pair(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDatum {
    pub fn new(preset: Preset) -> Self {
        let n = preset.rank();
        let (roots, coroots, simple) = match preset {
            Preset::Sl2 => (vec![vec![2]], vec![vec![1]], vec![0]),
            _ => {
                let mut roots = Vec::new();
                let mut simple = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        let mut r = vec![0; n];
                        r[i] = 1;
                        r[j] = -1;
                        if j == i + 1 {
                            simple.push(roots.len());
                        }
                        roots.push(r);
                    }
                }
                (roots.clone(), roots, simple)
            }
        };
        let reflections: Vec<IntMatrix> = simple
            .iter()
            .map(|&i| reflection_matrix(&roots[i], &coroots[i]))
            .collect();
        let weyl = WeylGroup::generate(n, &reflections);
        Self {
            preset,
            roots,
            coroots,
            simple,
            weyl,
        }
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn rank(&self) -> usize {
        self.preset.rank()
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    /// `⟨α_i, α̌_j⟩` over simple roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple
            .iter()
            .map(|&i| {
                self.simple
                    .iter()
                    .map(|&j| pair(&self.roots[i], &self.coroots[j]))
                    .collect()
            })
            .collect()
    }

    /// Reflection `s_α` for the positive root with the given index, acting on
    /// cocharacters.
    pub fn reflection(&self, root: usize) -> IntMatrix {
        reflection_matrix(&self.roots[root], &self.coroots[root])
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    /// Weyl group elements as lattice automorphisms of the cocharacters.
    pub fn weyl_elements(&self) -> &[IntMatrix] {
        &self.weyl.elements
    }

    /// `w·χ` with `w` given by its element index.
    pub fn act(&self, w: usize, chi: &TorusCharacter) -> TorusCharacter {
        // characters transform by the inverse transpose
        let inv = &self.weyl.elements[self.weyl.inverse[w]];
        let exps: Vec<i64> = inv
            .transpose()
            .apply(&chi.exps.iter().map(|&e| e as i64).collect::<Vec<_>>());
        TorusCharacter::new(chi.modulus, &exps).expect("modulus already validated")
    }

    pub fn check_character(&self, chi: &TorusCharacter) -> Result<(), RootDataError> {
        if chi.exps.len() != self.rank() {
            return Err(RootDataError::RankMismatch {
                rank: self.rank(),
                got: chi.exps.len(),
            });
        }
        Ok(())
    }

    /// Full stabilizer and its reflection subgroup.
    pub fn stabilizers(&self, chi: &TorusCharacter) -> StabilizerPair {
        let full: Vec<usize> = (0..self.weyl.order())
            .filter(|&w| self.act(w, chi) == *chi)
            .collect();
        let generators: Vec<usize> = self
            .coroots
            .iter()
            .enumerate()
            .filter(|(_, cr)| chi.pair(cr) == 0)
            .map(|(i, _)| {
                self.weyl
                    .index_of(&self.reflection(i))
                    .expect("reflections lie in W")
            })
            .collect();
        let reflection = self.weyl.subgroup_generated(&generators);
        StabilizerPair {
            full,
            reflection,
            generators,
        }
    }

    /// Weyl orbit in first-occurrence order of the element list.
    pub fn orbit(&self, chi: &TorusCharacter) -> Vec<TorusCharacter> {
        let mut out: Vec<TorusCharacter> = Vec::new();
        for w in 0..self.weyl.order() {
            let image = self.act(w, chi);
            if !out.contains(&image) {
                out.push(image);
            }
        }
        out
    }

    /// Every character with exponents mod `modulus`, in odometer order.
    pub fn all_characters(&self, modulus: u32) -> Vec<TorusCharacter> {
        let n = self.rank();
        let total = (modulus as usize).pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut exps = vec![0i64; n];
                for e in exps.iter_mut() {
                    *e = (idx % modulus as usize) as i64;
                    idx /= modulus as usize;
                }
                TorusCharacter::new(modulus, &exps).expect("positive modulus")
            })
            .collect()
    }
}

fn reflection_matrix(root: &[i64], coroot: &[i64]) -> IntMatrix {
    // λ ↦ λ − ⟨α, λ⟩ α̌
    let n = root.len();
    let mut entries = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { 1 } else { 0 };
            entries[i * n + j] = id - coroot[i] * root[j];
        }
    }
    IntMatrix { n, entries }
}

/// Weyl group generated by the simple reflections, with its multiplication
/// table. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<IntMatrix>,
    words: Vec<Vec<usize>>,
    mult: Vec<usize>,
    inverse: Vec<usize>,
    simple: Vec<usize>,
}

impl WeylGroup {
    fn generate(rank: usize, reflections: &[IntMatrix]) -> Self {
        let mut elements = vec![IntMatrix::identity(rank)];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut lookup: BTreeMap<IntMatrix, usize> = BTreeMap::new();
        lookup.insert(elements[0].clone(), 0);
        let mut head = 0;
        while head < elements.len() {
            for (s, refl) in reflections.iter().enumerate() {
                let next = elements[head].mul(refl);
                if !lookup.contains_key(&next) {
                    lookup.insert(next.clone(), elements.len());
                    let mut word = words[head].clone();
                    word.push(s);
                    words.push(word);
                    elements.push(next);
                }
            }
            head += 1;
        }
        let order = elements.len();
        let mut mult = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                mult[a * order + b] = lookup[&elements[a].mul(&elements[b])];
            }
        }
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| mult[a * order + b] == 0).unwrap())
            .collect();
        let simple = reflections.iter().map(|r| lookup[r]).collect();
        Self {
            rank,
            elements,
            words,
            mult,
            inverse,
            simple,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, w: usize) -> &IntMatrix {
        &self.elements[w]
    }

    /// Word in simple reflections: `w = s_{word[0]} ⋯ s_{word[k]}`.
    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Element indices of the simple reflections.
    pub fn simple_reflections(&self) -> &[usize] {
        &self.simple
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    /// `det` of the lattice action, which is the sign character.
    pub fn sign(&self, w: usize) -> i64 {
        self.elements[w].det()
    }

    /// Element order.
    pub fn element_order(&self, w: usize) -> usize {
        let mut acc = w;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, w);
            k += 1;
        }
        k
    }

    /// Sorted closure of a generating set (always contains the identity).
    pub fn subgroup_generated(&self, generators: &[usize]) -> Vec<usize> {
        let mut members = vec![0usize];
        let mut head = 0;
        while head < members.len() {
            for &g in generators {
                let next = self.mul(members[head], g);
                if !members.contains(&next) {
                    members.push(next);
                }
            }
            head += 1;
        }
        members.sort_unstable();
        members
    }

    pub fn conjugate_subgroup(&self, w: usize, subgroup: &[usize]) -> Vec<usize> {
        let winv = self.inverse(w);
        let mut out: Vec<usize> = subgroup
            .iter()
            .map(|&h| self.mul(self.mul(w, h), winv))
            .collect();
        out.sort_unstable();
        out
    }

    /// Left coset representatives `w_j` of `W / H`, each the first element
    /// of its coset in element order.
    pub fn coset_representatives(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for w in 0..self.order() {
            if seen[w] {
                continue;
            }
            reps.push(w);
            for &h in subgroup {
                seen[self.mul(w, h)] = true;
            }
        }
        reps
    }
}

/// Character of the split torus `(F_q^×)^n`, as exponents mod `q − 1` with
/// respect to a fixed generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusCharacter {
    modulus: u32,
    exps: Vec<u32>,
}

impl TorusCharacter {
    pub fn new(modulus: u32, exps: &[i64]) -> Result<Self, RootDataError> {
        if modulus == 0 {
            return Err(RootDataError::ZeroModulus);
        }
        Ok(Self {
            modulus,
            exps: exps
                .iter()
                .map(|&e| e.rem_euclid(modulus as i64) as u32)
                .collect(),
        })
    }

    pub fn trivial(modulus: u32, rank: usize) -> Self {
        Self {
            modulus,
            exps: vec![0; rank],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// `⟨m, λ⟩ mod modulus` for a cocharacter `λ`.
    pub fn pair(&self, cocharacter: &[i64]) -> u32 {
        let s: i64 = self
            .exps
            .iter()
            .zip(cocharacter)
            .map(|(&e, &c)| e as i64 * c)
            .sum();
        s.rem_euclid(self.modulus as i64) as u32
    }

    pub fn inverse(&self) -> Self {
        let exps: Vec<i64> = self.exps.iter().map(|&e| -(e as i64)).collect();
        Self::new(self.modulus, &exps).unwrap()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        let exps: Vec<i64> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a as i64 + b as i64)
            .collect();
        Self::new(self.modulus, &exps).unwrap()
    }
}

impl fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// `W'_χ` (full stabilizer) and `W_χ` (generated by the reflections that
/// kill `χ` on their coroot), as sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerPair {
    pub full: Vec<usize>,
    pub reflection: Vec<usize>,
    /// The qualifying reflections, as element indices.
    pub generators: Vec<usize>,
}

impl StabilizerPair {
    pub fn coincide(&self) -> bool {
        self.full == self.reflection
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_orders() {
        let orders: Vec<usize> = Preset::ALL
            .iter()
            .map(|&p| RootDatum::new(p).weyl().order())
            .collect();
        assert_eq!(orders, vec![1, 2, 6, 2]);
    }

    #[test]
    fn reflections_square_to_one() {
        for p in Preset::ALL {
            let rd = RootDatum::new(p);
            for (i, (a, c)) in rd.positive_roots().iter().zip(rd.positive_coroots()).enumerate() {
                assert_eq!(pair(a, c), 2);
                let s = rd.reflection(i);
                assert!(s.mul(&s).is_identity());
                assert_eq!(s.det(), -1);
            }
        }
    }

    #[test]
    fn sl2_reflection_is_minus_one() {
        let rd = RootDatum::new(Preset::Sl2);
        assert_eq!(rd.weyl_elements()[1], IntMatrix::from_rows(&[vec![-1]]));
    }

    #[test]
    fn gl3_elements_are_permutations() {
        let rd = RootDatum::new(Preset::Gl3);
        for m in rd.weyl_elements() {
            for i in 0..3 {
                let row: i64 = (0..3).map(|j| m.get(i, j)).sum();
                assert_eq!(row, 1);
                assert!((0..3).all(|j| m.get(i, j) == 0 || m.get(i, j) == 1));
            }
        }
    }

    #[test]
    fn spec_stabilizer_examples() {
        let sl2 = RootDatum::new(Preset::Sl2);
        let quad = TorusCharacter::new(4, &[2]).unwrap();
        let st = sl2.stabilizers(&quad);
        assert_eq!(st.reflection, vec![0]);
        assert_eq!(st.full, vec![0, 1]);
        assert_eq!(sl2.orbit(&quad), vec![quad.clone()]);

        let gl2 = RootDatum::new(Preset::Gl2);
        let reg = TorusCharacter::new(6, &[1, 4]).unwrap();
        let st = gl2.stabilizers(&reg);
        assert_eq!(st.full, vec![0]);
        assert_eq!(st.reflection, vec![0]);
        assert_eq!(
            gl2.orbit(&reg),
            vec![reg.clone(), TorusCharacter::new(6, &[4, 1]).unwrap()]
        );
        let sym = TorusCharacter::new(6, &[3, 3]).unwrap();
        assert_eq!(gl2.stabilizers(&sym).full, vec![0, 1]);
        assert!(gl2.stabilizers(&sym).coincide());
    }

    #[test]
    fn unimodular_inverse() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
        assert!(IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).inverse().is_none());
    }
}
