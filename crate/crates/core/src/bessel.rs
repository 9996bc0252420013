//! Torus Bessel functions, the finite Mellin transform on `T(F_q)`, and the
//! Gauss-product identity.
//!
//! Points of `T(F_q) = (F_q^×)^n` are stored by their generator exponents
//! `(a_1, …, a_n)` and indexed in mixed radix `q − 1` with `a_1` fastest.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_complex::Complex64;

use crate::error::BesselError;
use crate::field::{gauss_sum, AdditiveCharacter, MultiplicativeCharacter, PrimeField};
use crate::rootdata::{IntMatrix, RootDatum, TorusCharacter};
use crate::scalar::Scalar;

/// Largest number of points `bessel_on_torus` will enumerate.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

/// Multiset of cocharacters `λ_1, …, λ_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightSet {
    rank: usize,
    weights: Vec<Vec<i64>>,
}

impl WeightSet {
    pub fn new(rank: usize, weights: Vec<Vec<i64>>) -> Result<Self, BesselError> {
        if weights.is_empty() {
            return Err(BesselError::EmptyWeights);
        }
        for (index, w) in weights.iter().enumerate() {
            if w.len() != rank {
                return Err(BesselError::WeightRank {
                    index,
                    rank,
                    got: w.len(),
                });
            }
        }
        Ok(Self { rank, weights })
    }

    /// Parse `"1,0;0,1"`: vectors joined by `;`, entries by `,`.
    pub fn parse(text: &str) -> Result<Self, BesselError> {
        let mut weights = Vec::new();
        for (i, chunk) in text.split(';').enumerate() {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                return Err(BesselError::Parse(format!("vector {i} is empty")));
            }
            let v: Result<Vec<i64>, _> = chunk.split(',').map(|e| e.trim().parse::<i64>()).collect();
            match v {
                Ok(v) => weights.push(v),
                Err(_) => return Err(BesselError::Parse(format!("vector {i} ({chunk:?}) is not a list of integers"))),
            }
        }
        let rank = weights[0].len();
        Self::new(rank, weights)
    }

    /// Canonical text form accepted by [`WeightSet::parse`].
    pub fn canonical_string(&self) -> String {
        let mut out = String::new();
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            for (j, e) in w.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{e}");
            }
        }
        out
    }

    /// Coordinate cocharacters `e_1, …, e_n`.
    pub fn standard(rank: usize) -> Self {
        let weights = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        Self { rank, weights }
    }

    /// Weights of the symmetric square of the standard representation.
    pub fn sym2(rank: usize) -> Self {
        let mut weights = Vec::new();
        for i in 0..rank {
            for j in i..rank {
                let mut w = vec![0; rank];
                w[i] += 1;
                w[j] += 1;
                weights.push(w);
            }
        }
        weights.sort_by(|a, b| b.cmp(a));
        Self { rank, weights }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        Self {
            rank: self.rank,
            weights,
        }
    }

    /// `det^k ⊗ ρ`: add `k·(1, …, 1)` to every weight.
    pub fn det_twist(&self, k: i64) -> Self {
        Self {
            rank: self.rank,
            weights: self
                .weights
                .iter()
                .map(|w| w.iter().map(|&e| e + k).collect())
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    fn sorted(&self) -> Vec<Vec<i64>> {
        let mut w = self.weights.clone();
        w.sort();
        w
    }

    /// True when every Weyl element permutes the multiset.
    pub fn is_weyl_stable(&self, rd: &RootDatum) -> bool {
        let base = self.sorted();
        rd.weyl_elements().iter().all(|m| {
            let mut moved: Vec<Vec<i64>> = self.weights.iter().map(|w| m.apply(w)).collect();
            moved.sort();
            moved == base
        })
    }
}

/// A function on `T(F_q)` for a split torus of rank `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusFunction<S> {
    q: u32,
    rank: usize,
    values: Vec<S>,
}

impl<S: Scalar> TorusFunction<S> {
    pub fn from_values(q: u32, rank: usize, values: Vec<S>) -> Self {
        assert_eq!(values.len(), point_count(q, rank));
        Self { q, rank, values }
    }

    pub fn constant(q: u32, rank: usize, value: S) -> Self {
        Self {
            q,
            rank,
            values: vec![value; point_count(q, rank)],
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn at(&self, point: &[u32]) -> &S {
        &self.values[point_index(self.q, point)]
    }

    /// `(f*g)(t) = Σ_s f(s) g(s^{-1} t)`.
    pub fn convolve(&self, other: &Self) -> Self {
        assert_eq!((self.q, self.rank), (other.q, other.rank));
        let count = self.values.len();
        let conductor = self.values[0].conductor_hint();
        let points: Vec<Vec<u32>> = (0..count).map(|i| point_exponents(self.q, self.rank, i)).collect();
        let m = self.q - 1;
        let values = (0..count)
            .map(|t| {
                let mut acc = S::zero(conductor);
                for s in 0..count {
                    let diff: Vec<u32> = points[t]
                        .iter()
                        .zip(&points[s])
                        .map(|(&a, &b)| (a + m - b) % m)
                        .collect();
                    let term = self.values[s].mul(&other.values[point_index(self.q, &diff)]);
                    acc = acc.add(&term);
                }
                acc
            })
            .collect();
        Self {
            q: self.q,
            rank: self.rank,
            values,
        }
    }

    /// `f(t) ↦ f(w^{-1}·t)`: the Weyl translate of a function.
    pub fn weyl_translate(&self, w: &IntMatrix) -> Self {
        let inv = w.inverse().expect("Weyl elements are unimodular");
        let values = (0..self.values.len())
            .map(|i| {
                let t = point_exponents(self.q, self.rank, i);
                let moved = act_on_point(&inv, self.q, &t);
                self.values[point_index(self.q, &moved)].clone()
            })
            .collect();
        Self {
            q: self.q,
            rank: self.rank,
            values,
        }
    }
}

/// `(q − 1)^n`.
pub fn point_count(q: u32, rank: usize) -> usize {
    ((q - 1) as usize).pow(rank as u32)
}

pub fn point_index(q: u32, point: &[u32]) -> usize {
    let m = (q - 1) as usize;
    point.iter().rev().fold(0, |acc, &a| acc * m + a as usize)
}

pub fn point_exponents(q: u32, rank: usize, mut index: usize) -> Vec<u32> {
    let m = (q - 1) as usize;
    (0..rank)
        .map(|_| {
            let a = (index % m) as u32;
            index /= m;
            a
        })
        .collect()
}

/// Cocharacter action on `T(F_q) = X_* ⊗ F_q^×` in exponent coordinates.
pub fn act_on_point(w: &IntMatrix, q: u32, point: &[u32]) -> Vec<u32> {
    let m = (q - 1) as i64;
    let v: Vec<i64> = point.iter().map(|&a| a as i64).collect();
    w.apply(&v).into_iter().map(|a| a.rem_euclid(m) as u32).collect()
}

/// `φ_T(t) = (−1)^r Σ_{pr_λ(x) = t} ψ(x_1 + ⋯ + x_r)`.
pub fn bessel_on_torus<S: Scalar>(
    weights: &WeightSet,
    psi: &AdditiveCharacter,
    field: &PrimeField,
    conductor: u32,
) -> Result<TorusFunction<S>, BesselError> {
    bessel_on_torus_with_budget(weights, psi, field, conductor, ENUMERATION_BUDGET)
}

pub fn bessel_on_torus_with_budget<S: Scalar>(
    weights: &WeightSet,
    psi: &AdditiveCharacter,
    field: &PrimeField,
    conductor: u32,
    budget: u128,
) -> Result<TorusFunction<S>, BesselError> {
    let counts = bessel_counts(weights, psi, field, budget)?;
    let q = field.order();
    let p = field.characteristic();
    let n = weights.rank();
    let values = counts
        .chunks(p as usize)
        .map(|c| S::from_counts(conductor, p, c))
        .collect();
    Ok(TorusFunction {
        q,
        rank: n,
        values,
    })
}

/// Signed counts `c[t·p + j]` of `x` over `t` with `ψ(Σx) = ζ_p^j`.
pub fn bessel_counts(
    weights: &WeightSet,
    psi: &AdditiveCharacter,
    field: &PrimeField,
    budget: u128,
) -> Result<Vec<i64>, BesselError> {
    assert_eq!(field.degree(), 1, "torus Bessel functions live over F_p");
    let q = field.order();
    let p = field.characteristic() as usize;
    let m = (q - 1) as usize;
    let r = weights.len();
    let n = weights.rank();
    let needed = (m as u128).pow(r as u32);
    if needed > budget {
        return Err(BesselError::BudgetExceeded { needed, budget });
    }
    let sign: i64 = if r.is_multiple_of(2) { 1 } else { -1 };
    let mut counts = vec![0i64; point_count(q, n) * p];
    let mut x = vec![0usize; r];
    let mut t = vec![0u32; n];
    loop {
        for (j, tj) in t.iter_mut().enumerate() {
            let s: i64 = weights
                .weights
                .iter()
                .zip(&x)
                .map(|(w, &a)| w[j] * a as i64)
                .sum();
            *tj = s.rem_euclid(m as i64) as u32;
        }
        let total = x
            .iter()
            .fold(field.zero(), |acc, &a| field.add(acc, field.exp(a as u64)));
        let e = psi.exponent(field, total) as usize;
        counts[point_index(q, &t) * p + e] += sign;
        // odometer step, first coordinate fastest
        let mut i = 0;
        loop {
            if i == r {
                return Ok(counts);
            }
            x[i] += 1;
            if x[i] < m {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// `Σ_t f(t)·χ(t)`.
pub fn finite_mellin<S: Scalar>(f: &TorusFunction<S>, chi: &TorusCharacter) -> S {
    let m = f.q - 1;
    assert_eq!(chi.modulus(), m);
    let conductor = f.values[0].conductor_hint();
    let mut acc = S::zero(conductor);
    for (i, v) in f.values.iter().enumerate() {
        let t = point_exponents(f.q, f.rank, i);
        let e: i64 = t
            .iter()
            .zip(chi.exponents())
            .map(|(&a, &c)| a as i64 * c as i64)
            .sum();
        acc = acc.add(&v.mul(&S::root(conductor, e, m)));
    }
    acc
}

/// Recover `f` from its Mellin values, listed in the order of
/// [`RootDatum::all_characters`].
pub fn inverse_mellin(q: u32, rank: usize, mellin: &[Complex64]) -> Vec<Complex64> {
    let m = q - 1;
    let count = point_count(q, rank);
    assert_eq!(mellin.len(), count);
    let norm = count as f64;
    (0..count)
        .map(|i| {
            let t = point_exponents(q, rank, i);
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, value) in mellin.iter().enumerate() {
                let chi = point_exponents(q, rank, c);
                let e: i64 = t.iter().zip(&chi).map(|(&a, &b)| a as i64 * b as i64).sum();
                let angle = -2.0 * core::f64::consts::PI * (e.rem_euclid(m as i64)) as f64 / m as f64;
                acc += value * Complex64::from_polar(1.0, angle);
            }
            acc / norm
        })
        .collect()
}

/// Character of `F_q^×` obtained by composing `χ` with a cocharacter.
pub fn compose_with_cocharacter(chi: &TorusCharacter, lambda: &[i64]) -> MultiplicativeCharacter {
    MultiplicativeCharacter::new(chi.modulus(), chi.pair(lambda) as i64)
}

/// `(−1)^r Π_i g(χ∘λ_i, ψ)`.
pub fn gauss_product<S: Scalar>(
    weights: &WeightSet,
    chi: &TorusCharacter,
    psi: &AdditiveCharacter,
    field: &PrimeField,
    conductor: u32,
) -> Result<S, BesselError> {
    let sign = if weights.len().is_multiple_of(2) { 1 } else { -1 };
    let mut acc = S::from_i64(conductor, sign);
    for lambda in &weights.weights {
        let eta = compose_with_cocharacter(chi, lambda);
        let g: S = gauss_sum(&eta, psi, field, conductor)?;
        acc = acc.mul(&g);
    }
    Ok(acc)
}

/// Outcome of comparing both sides of the Gauss-product identity over every
/// character of `T(F_q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussProductReport {
    pub characters: usize,
    pub max_discrepancy: f64,
    /// Number of characters where exact equality fails (exact mode only).
    pub exact_failures: Option<usize>,
}

impl GaussProductReport {
    pub fn passes(&self, tol: f64) -> bool {
        match self.exact_failures {
            Some(k) => k == 0,
            None => self.max_discrepancy < tol,
        }
    }
}

pub fn gauss_product_check<S: Scalar>(
    weights: &WeightSet,
    rd: &RootDatum,
    psi: &AdditiveCharacter,
    field: &PrimeField,
    conductor: u32,
) -> Result<GaussProductReport, BesselError> {
    let phi: TorusFunction<S> = bessel_on_torus(weights, psi, field, conductor)?;
    let mut max_discrepancy: f64 = 0.0;
    let mut exact_failures: Option<usize> = None;
    let characters = rd.all_characters(field.order() - 1);
    for chi in &characters {
        let lhs = finite_mellin(&phi, chi);
        let rhs: S = gauss_product(weights, chi, psi, field, conductor)?;
        let diff = lhs.sub(&rhs);
        max_discrepancy = max_discrepancy.max(diff.to_complex().norm());
        if let Some(z) = diff.exact_zero() {
            let failures = exact_failures.get_or_insert(0);
            if !z {
                *failures += 1;
            }
        }
    }
    Ok(GaussProductReport {
        characters: characters.len(),
        max_discrepancy,
        exact_failures,
    })
}
