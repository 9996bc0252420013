//! Closed-form character table of `GL_2(F_q)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use super::{ClassParams, ClassTable};
use crate::cyclotomic::IntCyclotomic;
use crate::error::GroupError;
use crate::scalar::Scalar;

/// `Σ mult·ζ_order^exp` with few terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRootSum {
    order: u32,
    terms: Vec<(u32, i64)>,
}

impl SparseRootSum {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(order: u32, terms: &[(i64, i64)]) -> Self {
        let mut out = Self::zero(order);
        for &(e, m) in terms {
            out.push(e, m);
        }
        out
    }

    fn push(&mut self, exp: i64, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = exp.rem_euclid(self.order as i64) as u32;
        match self.terms.iter_mut().find(|(x, _)| *x == e) {
            Some(t) => t.1 += mult,
            None => self.terms.push((e, mult)),
        }
        self.terms.retain(|t| t.1 != 0);
        self.terms.sort_unstable();
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &[(u32, i64)] {
        &self.terms
    }

    pub fn conj(&self) -> Self {
        let terms: Vec<(i64, i64)> = self.terms.iter().map(|&(e, m)| (-(e as i64), m)).collect();
        Self::from_terms(self.order, &terms)
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, &(e, m)| {
            acc + Complex64::from_polar(
                m as f64,
                2.0 * core::f64::consts::PI * e as f64 / self.order as f64,
            )
        })
    }

    pub fn to_scalar<S: Scalar>(&self, conductor: u32) -> S {
        let mut counts = vec![0i64; self.order as usize];
        for &(e, m) in &self.terms {
            counts[e as usize] += m;
        }
        S::from_counts(conductor, self.order, &counts)
    }

    /// `acc += scale·(self)·(other)` on a group-ring accumulator of
    /// conductor `self.order`.
    pub fn accumulate_product(&self, other: &Self, scale: i64, acc: &mut IntCyclotomic) {
        for &(e1, m1) in &self.terms {
            for &(e2, m2) in &other.terms {
                acc.add_root(e1 as i64 + e2 as i64, scale * m1 * m2);
            }
        }
    }

    /// Integer value, if the sum is a plain integer.
    pub fn as_integer(&self) -> Option<i64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, m)] => Some(*m),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IrrepFamily {
    OneDim,
    SteinbergTwist,
    PrincipalSeries,
    Cuspidal,
}

impl IrrepFamily {
    pub fn name(&self) -> &'static str {
        match self {
            IrrepFamily::OneDim => "one-dim",
            IrrepFamily::SteinbergTwist => "steinberg-twist",
            IrrepFamily::PrincipalSeries => "principal-series",
            IrrepFamily::Cuspidal => "cuspidal",
        }
    }
}

/// Parameters of an irreducible: `α`, `(α, β)` as exponents mod `q − 1`,
/// or `φ` as an exponent mod `q² − 1` (the smaller of `j, jq`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IrrepLabel {
    OneDim(u32),
    Steinberg(u32),
    Principal(u32, u32),
    Cuspidal(u32),
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::OneDim(a) => write!(f, "U[{a}]"),
            IrrepLabel::Steinberg(a) => write!(f, "V[{a}]"),
            IrrepLabel::Principal(a, b) => write!(f, "W[{a},{b}]"),
            IrrepLabel::Cuspidal(j) => write!(f, "X[{j}]"),
        }
    }
}

/// Deligne–Lusztig datum: a torus type and a character of its rational
/// points, up to the Weyl/Frobenius action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DlDatum {
    /// `(θ_1, θ_2)` on the split torus, exponents mod `q − 1`, sorted.
    Split(u32, u32),
    /// `θ` on `F_{q²}^×` with `θ ≠ θ^q`, exponent mod `q² − 1`, the smaller
    /// of `j` and `jq`.
    Nonsplit(u32),
    /// `η` on `F_q^×` for the rank-one torus of `GL_1`.
    Rank1(u32),
}

impl fmt::Display for DlDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DlDatum::Split(a, b) => write!(f, "split({a},{b})"),
            DlDatum::Nonsplit(j) => write!(f, "nonsplit({j})"),
            DlDatum::Rank1(a) => write!(f, "rank1({a})"),
        }
    }
}

impl DlDatum {
    pub fn split(a: u32, b: u32) -> Self {
        DlDatum::Split(a.min(b), a.max(b))
    }

    /// Datum of `θ = G^j ↦ ζ^{j}` on the nonsplit torus; characters that
    /// factor through the norm route to the split datum `(α, α)`.
    pub fn nonsplit(table: &ClassTable, j: u32) -> Self {
        let q = table.q();
        let n2 = q * q - 1;
        let j = j % n2;
        if j.is_multiple_of(q + 1) {
            // θ = α∘N with N(G) = g^c; θ(G) = α(g)^c
            let c = table
                .base_field()
                .log(crate::field::FieldElement(
                    table.quadratic_field().norm_to_prime(table.quadratic_field().generator()),
                ))
                .expect("norm of a unit");
            let m = q - 1;
            let c_inv = (1..m).find(|&x| x * c % m == 1).expect("norm of a generator generates");
            let a = (j / (q + 1)) * c_inv % m;
            DlDatum::Split(a, a)
        } else {
            DlDatum::Nonsplit(table.frobenius_canonical(j))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Irrep {
    pub label: IrrepLabel,
    pub family: IrrepFamily,
    pub dim: u64,
    pub datum: DlDatum,
    /// Character values per class, as sums of `(q² − 1)`-th roots of unity.
    pub values: Vec<SparseRootSum>,
}

/// Rows of the character table; row order is a presentation detail and
/// every consumer keyed by label or datum ignores it.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    classes: ClassTable,
    rows: Vec<Irrep>,
}

impl CharacterTable {
    pub fn new(q: u32) -> Result<Self, GroupError> {
        let classes = ClassTable::new(q)?;
        let rows = build_rows(&classes);
        Ok(Self { classes, rows })
    }

    pub fn classes(&self) -> &ClassTable {
        &self.classes
    }

    pub fn rows(&self) -> &[Irrep] {
        &self.rows
    }

    pub fn q(&self) -> u32 {
        self.classes.q()
    }

    /// Order of the roots of unity in character values.
    pub fn value_order(&self) -> u32 {
        self.q() * self.q() - 1
    }

    /// The same table with rows reordered by `perm` (`new[i] = old[perm[i]]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows.len());
        Self {
            classes: self.classes.clone(),
            rows: perm.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// Row indices sorted by label.
    pub fn canonical_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.rows[i].label);
        idx
    }

    pub fn dimension_square_sum(&self) -> u64 {
        self.rows.iter().map(|r| r.dim * r.dim).sum()
    }

    /// `|G|·⟨χ_a, χ_b⟩` computed exactly.
    pub fn scaled_inner_product(&self, a: usize, b: usize) -> IntCyclotomic {
        let mut acc = IntCyclotomic::zero(self.value_order());
        let conj_b: Vec<SparseRootSum> = self.rows[b].values.iter().map(|v| v.conj()).collect();
        for (c, cls) in self.classes.classes().iter().enumerate() {
            self.rows[a].values[c].accumulate_product(&conj_b[c], cls.size as i64, &mut acc);
        }
        acc
    }

    /// First pair of rows violating exact orthonormality, if any.
    pub fn orthogonality_violation(&self) -> Option<(usize, usize)> {
        let order = self.classes.group_order() as i64;
        for a in 0..self.rows.len() {
            for b in a..self.rows.len() {
                let expected = if a == b { order } else { 0 };
                let ip = self.scaled_inner_product(a, b);
                if ip != IntCyclotomic::from_int(self.value_order(), expected) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Largest deviation of the float Gram matrix from the identity.
    pub fn orthogonality_float_error(&self) -> f64 {
        let order = self.classes.group_order() as f64;
        let values: Vec<Vec<Complex64>> = self
            .rows
            .iter()
            .map(|r| r.values.iter().map(|v| v.to_complex()).collect())
            .collect();
        let mut worst: f64 = 0.0;
        for a in 0..values.len() {
            for b in a..values.len() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (c, cls) in self.classes.classes().iter().enumerate() {
                    acc += values[a][c] * values[b][c].conj() * cls.size as f64;
                }
                let expected = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((acc / order - expected).norm());
            }
        }
        worst
    }
}

fn build_rows(t: &ClassTable) -> Vec<Irrep> {
    let q = t.q();
    let m = q - 1;
    let n2 = q * q - 1;
    let lift = (q + 1) as i64; // ζ_{q−1} = ζ_{q²−1}^{q+1}
    let base_gen_log = t.base_generator_log() as i64;
    let base = t.base_field();
    let quad = t.quadratic_field();
    let qi = q as i64;

    // exponent (mod q²−1) of α(x) where x = g^i
    let alpha = |a: u32, i: u32| a as i64 * i as i64 * lift;
    // exponent of α(N z) for z = G^j
    let alpha_norm = |a: u32, j: u32| {
        let nz = quad.norm_to_prime(quad.exp(j as u64));
        let i = base.log(crate::field::FieldElement(nz)).expect("norm of a unit");
        alpha(a, i)
    };
    let phi = |jj: u32, j: u32| jj as i64 * j as i64;

    let value = |terms: &[(i64, i64)]| SparseRootSum::from_terms(n2, terms);
    let mut rows = Vec::new();

    let mut push_row = |label, family, dim, datum, f: &dyn Fn(&ClassParams) -> SparseRootSum| {
        let values = t.classes().iter().map(|c| f(&c.params)).collect();
        rows.push(Irrep {
            label,
            family,
            dim,
            datum,
            values,
        });
    };

    for a in 0..m {
        push_row(
            IrrepLabel::OneDim(a),
            IrrepFamily::OneDim,
            1,
            DlDatum::Split(a, a),
            &|c| match *c {
                ClassParams::Central(i) | ClassParams::NonSemisimple(i) => value(&[(2 * alpha(a, i), 1)]),
                ClassParams::Split(i, k) => value(&[(alpha(a, i) + alpha(a, k), 1)]),
                ClassParams::Anisotropic(j) => value(&[(alpha_norm(a, j), 1)]),
            },
        );
    }
    for a in 0..m {
        push_row(
            IrrepLabel::Steinberg(a),
            IrrepFamily::SteinbergTwist,
            q as u64,
            DlDatum::Split(a, a),
            &|c| match *c {
                ClassParams::Central(i) => value(&[(2 * alpha(a, i), qi)]),
                ClassParams::NonSemisimple(_) => value(&[]),
                ClassParams::Split(i, k) => value(&[(alpha(a, i) + alpha(a, k), 1)]),
                ClassParams::Anisotropic(j) => value(&[(alpha_norm(a, j), -1)]),
            },
        );
    }
    for a in 0..m {
        for b in a + 1..m {
            push_row(
                IrrepLabel::Principal(a, b),
                IrrepFamily::PrincipalSeries,
                (q + 1) as u64,
                DlDatum::Split(a, b),
                &|c| match *c {
                    ClassParams::Central(i) => value(&[(alpha(a, i) + alpha(b, i), qi + 1)]),
                    ClassParams::NonSemisimple(i) => value(&[(alpha(a, i) + alpha(b, i), 1)]),
                    ClassParams::Split(i, k) => value(&[
                        (alpha(a, i) + alpha(b, k), 1),
                        (alpha(a, k) + alpha(b, i), 1),
                    ]),
                    ClassParams::Anisotropic(_) => value(&[]),
                },
            );
        }
    }
    for jj in 0..n2 {
        let frob = (jj as u64 * q as u64 % n2 as u64) as u32;
        if frob <= jj {
            continue;
        }
        push_row(
            IrrepLabel::Cuspidal(jj),
            IrrepFamily::Cuspidal,
            (q - 1) as u64,
            DlDatum::Nonsplit(jj),
            &|c| match *c {
                ClassParams::Central(i) => value(&[(jj as i64 * i as i64 * base_gen_log, qi - 1)]),
                ClassParams::NonSemisimple(i) => value(&[(jj as i64 * i as i64 * base_gen_log, -1)]),
                ClassParams::Split(_, _) => value(&[]),
                ClassParams::Anisotropic(j) => value(&[(phi(jj, j), -1), (phi(jj, j) * qi, -1)]),
            },
        );
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q3_dimensions() {
        let t = CharacterTable::new(3).unwrap();
        let mut dims: Vec<u64> = t.rows().iter().map(|r| r.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 3, 3, 4]);
        assert_eq!(t.dimension_square_sum(), 48);
    }

    #[test]
    fn trivial_row_is_all_ones() {
        let t = CharacterTable::new(5).unwrap();
        let triv = t.rows().iter().find(|r| r.label == IrrepLabel::OneDim(0)).unwrap();
        assert!(triv.values.iter().all(|v| v.as_integer() == Some(1)));
    }

    #[test]
    fn exact_orthogonality_small() {
        for q in [3u32, 5] {
            let t = CharacterTable::new(q).unwrap();
            assert_eq!(t.orthogonality_violation(), None, "q={q}");
            assert!(t.orthogonality_float_error() < 1e-9);
        }
    }

    #[test]
    fn degenerate_nonsplit_routes_to_split() {
        let t = CharacterTable::new(5).unwrap();
        // θ = α∘N for every α; all land on split data (a, a)
        let mut seen = Vec::new();
        for k in 0..4 {
            match DlDatum::nonsplit(t.classes(), 6 * k) {
                DlDatum::Split(a, b) => {
                    assert_eq!(a, b);
                    seen.push(a);
                }
                other => panic!("expected split, got {other}"),
            }
        }
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2, 3]);
    }
}
