//! Graded quotients of `Q[y_1, …, y_n]` by homogeneous ideals, including
//! coinvariant algebras of Weyl subgroups.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::linalg::Matrix;
use crate::cyclotomic::Cyclotomic;
use crate::error::MellinError;
use crate::rootdata::{IntMatrix, WeylGroup};

/// Polynomial with rational coefficients, keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exps: &[u32], coeff: BigRational) -> Self {
        let mut p = Self::zero(exps.len());
        if !coeff.is_zero() {
            p.terms.insert(exps.to_vec(), coeff);
        }
        p
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(&vec![0; vars], BigRational::one())
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(&e, BigRational::one())
    }

    /// `Σ c_i y_i`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let mut p = Self::zero(coeffs.len());
        for (i, &c) in coeffs.iter().enumerate() {
            p = p.add(&Self::var(coeffs.len(), i).scale(&BigRational::from_integer(BigInt::from(c))));
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.vars);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.vars), |acc, _| acc.mul(self))
    }

    /// Image under the lattice map `y_i ↦ Σ_k a_{ki} y_k`.
    pub fn transform(&self, a: &IntMatrix) -> Self {
        let n = self.vars;
        let images: Vec<Poly> = (0..n)
            .map(|i| Poly::linear(&(0..n).map(|k| a.get(k, i)).collect::<Vec<_>>()))
            .collect();
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let mut t = Self::monomial(&vec![0; n], c.clone());
            for (i, &k) in e.iter().enumerate() {
                t = t.mul(&images[i].pow(k));
            }
            out = out.add(&t);
        }
        out
    }

    /// `p(m_1, …, m_n)` for pairwise commuting square matrices.
    pub fn evaluate(&self, mats: &[Matrix]) -> Matrix {
        let k = mats[0].rows();
        let conductor = mats[0].conductor();
        let mut out = Matrix::zeros(k, k, conductor);
        for (e, c) in &self.terms {
            let mut t = Matrix::identity(k, conductor);
            for (m, &p) in mats.iter().zip(e) {
                if p > 0 {
                    t = t.mul(&m.pow(p));
                }
            }
            out = out.add(&t.scale(&Cyclotomic::from_rational(conductor, c.clone())));
        }
        out
    }
}

/// Exponent vectors of total degree `d` in `n` variables, in
/// lexicographically decreasing order.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug)]
struct DegreePiece {
    monomials: Vec<Vec<u32>>,
    /// Reduced row echelon basis of the ideal in this degree.
    reduced: Matrix,
    pivots: Vec<usize>,
}

/// `Q[y_1, …, y_n] / I` for a homogeneous ideal `I` of finite colength, with
/// a basis of standard monomials.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    vars: usize,
    generators: Vec<Poly>,
    pieces: Vec<DegreePiece>,
    basis: Vec<Vec<u32>>,
}

/// Degrees beyond this are not explored.
const DEGREE_CAP: u32 = 16;

fn homogeneous_degree(p: &Poly) -> Option<u32> {
    let mut degs = p.terms.keys().map(|e| e.iter().sum::<u32>());
    let d = degs.next()?;
    degs.all(|x| x == d).then_some(d)
}

impl QuotientAlgebra {
    /// Quotient by the ideal generated by homogeneous polynomials of positive
    /// degree.
    pub fn new(vars: usize, generators: Vec<Poly>) -> Result<Self, MellinError> {
        let mut gens: Vec<(u32, Poly)> = Vec::new();
        for g in generators {
            if g.is_zero() {
                continue;
            }
            let d = homogeneous_degree(&g)
                .filter(|&d| d > 0)
                .ok_or_else(|| MellinError::Shape("ideal generators must be homogeneous of positive degree".into()))?;
            gens.push((d, g));
        }
        let mut pieces = Vec::new();
        let mut basis = Vec::new();
        for d in 0..=DEGREE_CAP {
            let mons = monomials(vars, d);
            let index: BTreeMap<&Vec<u32>, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows: Vec<Vec<BigRational>> = Vec::new();
            for (e, g) in &gens {
                if *e > d {
                    continue;
                }
                for m in monomials(vars, d - e) {
                    let p = g.mul(&Poly::monomial(&m, BigRational::one()));
                    let mut row = vec![BigRational::zero(); mons.len()];
                    for (exp, c) in p.terms() {
                        row[index[exp]] = c.clone();
                    }
                    rows.push(row);
                }
            }
            let flat: Vec<BigRational> = rows.iter().flatten().cloned().collect();
            let span = Matrix::from_rationals(rows.len(), mons.len(), 1, &flat);
            let (reduced, pivots) = span.rref();
            let reduced = reduced.block(0, 0, pivots.len(), mons.len());
            let standard: Vec<Vec<u32>> = (0..mons.len())
                .filter(|c| !pivots.contains(c))
                .map(|c| mons[c].clone())
                .collect();
            let done = standard.is_empty();
            basis.extend(standard);
            pieces.push(DegreePiece {
                monomials: mons,
                reduced,
                pivots,
            });
            if done {
                return Ok(Self {
                    vars,
                    generators: gens.into_iter().map(|(_, g)| g).collect(),
                    pieces,
                    basis,
                });
            }
        }
        Err(MellinError::Shape("quotient is not finite-dimensional".into()))
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Standard monomials, by increasing degree.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Degree at which the quotient vanishes.
    pub fn vanishing_degree(&self) -> u32 {
        self.pieces.len() as u32 - 1
    }

    /// Coordinates of `p` in the standard basis.
    pub fn normal_form(&self, p: &Poly) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dim()];
        let mut by_degree: BTreeMap<u32, Vec<(&Vec<u32>, &BigRational)>> = BTreeMap::new();
        for (e, c) in p.terms() {
            by_degree.entry(e.iter().sum()).or_default().push((e, c));
        }
        for (d, terms) in by_degree {
            let Some(piece) = self.pieces.get(d as usize) else {
                continue;
            };
            let mut v = vec![BigRational::zero(); piece.monomials.len()];
            for (e, c) in terms {
                let i = piece.monomials.iter().position(|m| m == e).expect("monomial of degree d");
                v[i] = c.clone();
            }
            for (r, &p) in piece.pivots.iter().enumerate() {
                if v[p].is_zero() {
                    continue;
                }
                let f = v[p].clone();
                for (j, x) in v.iter_mut().enumerate() {
                    let rv = piece.reduced.get(r, j).as_rational().expect("rational").clone();
                    if !rv.is_zero() {
                        *x -= &f * rv;
                    }
                }
            }
            for (i, m) in piece.monomials.iter().enumerate() {
                if !v[i].is_zero() {
                    let b = self.basis.iter().position(|x| x == m).expect("standard monomial");
                    out[b] = v[i].clone();
                }
            }
        }
        out
    }

    fn operator(&self, conductor: u32, image: impl Fn(&Vec<u32>) -> Poly) -> Matrix {
        let k = self.dim();
        let mut m = Matrix::zeros(k, k, conductor);
        for (j, b) in self.basis.iter().enumerate() {
            for (i, c) in self.normal_form(&image(b)).into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(i, j, Cyclotomic::from_rational(conductor, c));
                }
            }
        }
        m
    }

    /// Multiplication by `y_i`.
    pub fn multiplication(&self, i: usize, conductor: u32) -> Matrix {
        let y = Poly::var(self.vars, i);
        self.operator(conductor, |b| y.mul(&Poly::monomial(b, BigRational::one())))
    }

    /// Multiplication by `Σ λ_i y_i`.
    pub fn multiplication_by(&self, lambda: &[i64], conductor: u32) -> Matrix {
        let y = Poly::linear(lambda);
        self.operator(conductor, |b| y.mul(&Poly::monomial(b, BigRational::one())))
    }

    /// Action of a lattice automorphism preserving the ideal.
    pub fn action(&self, a: &IntMatrix, conductor: u32) -> Matrix {
        self.operator(conductor, |b| Poly::monomial(b, BigRational::one()).transform(a))
    }

    /// Whether the ideal is stable under `a`.
    pub fn ideal_stable_under(&self, a: &IntMatrix) -> bool {
        self.generators
            .iter()
            .all(|g| self.normal_form(&g.transform(a)).iter().all(|c| c.is_zero()))
    }
}

/// Reynolds average `|Γ|^{-1} Σ_w w·p`.
pub fn reynolds(weyl: &WeylGroup, subgroup: &[usize], p: &Poly) -> Poly {
    let mut acc = Poly::zero(p.vars());
    for &w in subgroup {
        acc = acc.add(&p.transform(weyl.element(w)));
    }
    acc.scale(&BigRational::new(BigInt::one(), BigInt::from(subgroup.len())))
}

/// `Q[Λ] / ⟨positive-degree Γ-invariants⟩`.
pub fn coinvariant_algebra(weyl: &WeylGroup, subgroup: &[usize]) -> Result<QuotientAlgebra, MellinError> {
    let n = weyl.rank();
    if !(1..=3).contains(&n) {
        return Err(MellinError::Rank(n));
    }
    let mut generators = Vec::new();
    for d in 1..=subgroup.len() as u32 {
        for m in monomials(n, d) {
            let r = reynolds(weyl, subgroup, &Poly::monomial(&m, BigRational::one()));
            if !r.is_zero() {
                generators.push(r);
            }
        }
    }
    QuotientAlgebra::new(n, generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{Preset, RootDatum};

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 3).len(), 4);
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(1, 0), vec![vec![0]]);
    }

    #[test]
    fn trivial_group_gives_rationals() {
        let rd = RootDatum::new(Preset::Gl2);
        let a = coinvariant_algebra(rd.weyl(), &[0]).unwrap();
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn sl2_coinvariants_are_dual_numbers() {
        let rd = RootDatum::new(Preset::Sl2);
        let all: Vec<usize> = (0..rd.weyl().order()).collect();
        let a = coinvariant_algebra(rd.weyl(), &all).unwrap();
        assert_eq!(a.dim(), 2);
        let y = a.multiplication(0, 1);
        assert!(!y.is_zero());
        assert!(y.mul(&y).is_zero());
    }

    #[test]
    fn chevalley_dimensions() {
        for preset in [Preset::Gl2, Preset::Gl3] {
            let rd = RootDatum::new(preset);
            let all: Vec<usize> = (0..rd.weyl().order()).collect();
            let a = coinvariant_algebra(rd.weyl(), &all).unwrap();
            assert_eq!(a.dim(), all.len());
            for i in 0..rd.rank() {
                assert!(a.multiplication(i, 1).is_nilpotent());
            }
        }
    }

    #[test]
    fn gl2_swap_quotient() {
        let rd = RootDatum::new(Preset::Gl2);
        let all: Vec<usize> = (0..rd.weyl().order()).collect();
        let a = coinvariant_algebra(rd.weyl(), &all).unwrap();
        // y1 + y2 is invariant, so y1 ≡ −y2
        let s = Poly::linear(&[1, 1]);
        assert!(a.normal_form(&s).iter().all(|c| c.is_zero()));
        let d = Poly::linear(&[1, -1]);
        assert!(a.normal_form(&d).iter().any(|c| !c.is_zero()));
        let swap = rd.weyl().element(rd.weyl().simple_reflections()[0]);
        let act = a.action(swap, 1);
        assert!(act.mul(&act).is_identity());
        assert!(!act.is_identity());
    }

    #[test]
    fn non_finite_quotient_is_rejected() {
        let g = vec![Poly::var(2, 0)];
        assert!(QuotientAlgebra::new(2, g).is_err());
    }
}
