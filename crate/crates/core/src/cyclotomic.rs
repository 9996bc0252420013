//! Exact arithmetic in cyclotomic fields.
//!
//! Two representations live here. [`IntCyclotomic`] is an element of the
//! group ring `Z[Z/n]`, stored densely and reduced modulo the cyclotomic
//! polynomial only when compared or converted; it is the workhorse for
//! character sums. [`Cyclotomic`] is a canonical element of `Q(ζ_n)` in the
//! power basis `1, ζ, …, ζ^{φ(n)-1}` and supports division.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut out = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            while m.is_multiple_of(d) {
                m /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Coefficients (low degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly: Vec<i64> = vec![1];
    // multiply first so every division below is exact
    for &d in &divisors {
        if mobius(n / d) == 1 {
            let du = d as usize;
            let mut next = vec![0i64; poly.len() + du];
            for (i, &c) in poly.iter().enumerate() {
                next[i + du] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            let du = d as usize;
            let out_len = poly.len() - du;
            let mut q = vec![0i64; out_len];
            for k in 0..out_len {
                let prev = if k >= du { q[k - du] } else { 0 };
                q[k] = prev - poly[k];
            }
            poly = q;
        }
    }
    // a product of (x^d - 1) factors leaves an overall sign of ±1
    if *poly.last().unwrap() < 0 {
        for c in poly.iter_mut() {
            *c = -*c;
        }
    }
    poly
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

/// Least common multiple of two conductors.
pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

fn root_complex(k: i64, n: u32) -> Complex64 {
    let k = k.rem_euclid(n as i64) as f64;
    let angle = 2.0 * core::f64::consts::PI * k / n as f64;
    Complex64::new(libm_cos(angle), libm_sin(angle))
}

fn libm_cos(x: f64) -> f64 {
    num_traits::Float::cos(x)
}

fn libm_sin(x: f64) -> f64 {
    num_traits::Float::sin(x)
}

/// Reduce a group-ring vector of length `n` modulo `Φ_n`, returning the
/// `φ(n)` power-basis coefficients.
fn reduce_int(n: u32, dense: &[i64]) -> Vec<i128> {
    let poly = cyclotomic_poly(n);
    let deg = poly.len() - 1;
    let mut work: Vec<i128> = dense.iter().map(|&c| c as i128).collect();
    for top in (deg..work.len()).rev() {
        let c = work[top];
        if c == 0 {
            continue;
        }
        let base = top - deg;
        for (j, &pc) in poly.iter().enumerate() {
            if pc != 0 {
                work[base + j] = work[base + j]
                    .checked_sub(c * pc as i128)
                    .expect("cyclotomic reduction overflowed i128");
            }
        }
    }
    work.truncate(deg);
    work
}

fn reduce_rational(n: u32, mut work: Vec<BigRational>) -> Vec<BigRational> {
    let poly = cyclotomic_poly(n);
    let deg = poly.len() - 1;
    if work.len() < deg {
        work.resize(deg, BigRational::zero());
    }
    for top in (deg..work.len()).rev() {
        if work[top].is_zero() {
            continue;
        }
        let c = work[top].clone();
        let base = top - deg;
        for (j, &pc) in poly.iter().enumerate() {
            if pc != 0 {
                let delta = &c * BigRational::from_integer(BigInt::from(pc));
                work[base + j] -= delta;
            }
        }
    }
    work.truncate(deg);
    work
}

/// Element of the integral group ring `Z[Z/n]`, read as a cyclotomic integer.
#[derive(Clone, Debug)]
pub struct IntCyclotomic {
    n: u32,
    coeffs: Vec<i64>,
}

impl IntCyclotomic {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1);
        Self {
            n,
            coeffs: vec![0; n as usize],
        }
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[0] = v;
        out
    }

    /// `ζ_n^k`.
    pub fn root(n: u32, k: i64) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[k.rem_euclid(n as i64) as usize] = 1;
        out
    }

    /// `Σ counts[j]·ζ_order^j`, embedded at conductor `n` (`order | n`).
    pub fn from_counts(n: u32, order: u32, counts: &[i64]) -> Self {
        assert!(n.is_multiple_of(order), "order {order} does not divide conductor {n}");
        let step = (n / order) as usize;
        let mut out = Self::zero(n);
        for (j, &c) in counts.iter().enumerate() {
            out.coeffs[(j % order as usize) * step] += c;
        }
        out
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Raw group-ring coefficients indexed by exponent.
    pub fn group_ring(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        let other = other.lifted(self.n);
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a += *b;
        }
    }

    /// Add `mult·ζ_n^k`.
    pub fn add_root(&mut self, k: i64, mult: i64) {
        let idx = k.rem_euclid(self.n as i64) as usize;
        self.coeffs[idx] += mult;
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|&v| v * c).collect(),
        }
    }

    /// Multiply by `ζ_n^k` (a cyclic shift).
    pub fn mul_root(&self, k: i64) -> Self {
        let n = self.n as usize;
        let shift = k.rem_euclid(self.n as i64) as usize;
        let mut coeffs = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + shift) % n] = c;
        }
        Self { n: self.n, coeffs }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let n = lcm_u32(self.n, other.n);
        let a = self.lifted(n);
        let b = other.lifted(n);
        let nu = n as usize;
        let mut coeffs = vec![0i64; nu];
        let nz_b: Vec<(usize, i64)> = b
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        for (i, &ca) in a.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for &(j, cb) in &nz_b {
                let idx = if i + j >= nu { i + j - nu } else { i + j };
                coeffs[idx] += ca * cb;
            }
        }
        Self { n, coeffs }
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.n as usize;
        let mut coeffs = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(n - i) % n] = c;
        }
        Self { n: self.n, coeffs }
    }

    /// Re-embed at a multiple `m` of the conductor.
    pub fn lifted(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.n), "cannot lift conductor {} to {m}", self.n);
        let step = (m / self.n) as usize;
        let mut coeffs = vec![0; m as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c;
        }
        Self { n: m, coeffs }
    }

    /// Power-basis coefficients modulo `Φ_n`.
    pub fn canonical(&self) -> Vec<i128> {
        reduce_int(self.n, &self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(|&c| c == 0) {
            return true;
        }
        self.canonical().iter().all(|&c| c == 0)
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                acc += root_complex(k as i64, self.n) * c as f64;
            }
        }
        acc
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        let coeffs = self
            .canonical()
            .into_iter()
            .map(|c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        Cyclotomic { n: self.n, coeffs }
    }
}

impl PartialEq for IntCyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let n = lcm_u32(self.n, other.n);
        let mut diff = self.lifted(n);
        for (a, b) in diff.coeffs.iter_mut().zip(other.lifted(n).coeffs) {
            *a -= b;
        }
        diff.is_zero()
    }
}

/// Canonical element of `Q(ζ_n)` in the power basis.
#[derive(Clone)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(n={}, [", self.n)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            coeffs: vec![BigRational::zero(); euler_phi(n) as usize],
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_rational(n: u32, r: BigRational) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[0] = r;
        out
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(BigInt::from(v)))
    }

    /// `ζ_n^k`.
    pub fn root(n: u32, k: i64) -> Self {
        let mut dense = vec![BigRational::zero(); n as usize];
        dense[k.rem_euclid(n as i64) as usize] = BigRational::one();
        Self {
            n,
            coeffs: reduce_rational(n, dense),
        }
    }

    /// Build from a dense group-ring vector of length `n` (exponent-indexed).
    pub fn from_group_ring(n: u32, dense: Vec<BigRational>) -> Self {
        assert_eq!(dense.len(), n as usize);
        Self {
            n,
            coeffs: reduce_rational(n, dense),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Power-basis coefficients (length `φ(n)`).
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn lifted(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.n), "cannot lift conductor {} to {m}", self.n);
        let step = (m / self.n) as usize;
        let mut dense = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[i * step] = c.clone();
        }
        Self {
            n: m,
            coeffs: reduce_rational(m, dense),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.n == other.n {
            (self.clone(), other.clone())
        } else {
            let m = lcm_u32(self.n, other.n);
            (self.lifted(m), other.lifted(m))
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.n == other.n {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return Self { n: self.n, coeffs };
        }
        let (a, b) = self.aligned(other);
        a.add_ref(&b)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.n != other.n {
            let (a, b) = self.aligned(other);
            return a.mul_ref(&b);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        let len = self.coeffs.len();
        let mut work = vec![BigRational::zero(); 2 * len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    work[i + j] += a * b;
                }
            }
        }
        Self {
            n: self.n,
            coeffs: reduce_rational(self.n, work),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        let n = self.n as usize;
        let mut dense = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[(n - i) % n] = c.clone();
        }
        Self {
            n: self.n,
            coeffs: reduce_rational(self.n, dense),
        }
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(self.n, r.recip()));
        }
        // solve (multiplication-by-self) · x = 1 in the power basis
        let d = self.coeffs.len();
        let mut columns = Vec::with_capacity(d);
        for j in 0..d {
            let mut dense = vec![BigRational::zero(); self.n as usize];
            dense[j] = BigRational::one();
            let basis = Self::from_group_ring(self.n, dense);
            columns.push(self.mul_ref(&basis).coeffs);
        }
        // augmented matrix rows
        let mut rows: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..d).map(|j| columns[j][i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, pivot);
            let inv_p = rows[col][col].recip();
            for v in rows[col].iter_mut() {
                *v *= &inv_p;
            }
            for r in 0..d {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in col..=d {
                        let delta = &f * &rows[col][c];
                        rows[r][c] -= delta;
                    }
                }
            }
        }
        let coeffs = rows.into_iter().map(|mut r| r.pop().unwrap()).collect();
        Some(Self { n: self.n, coeffs })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += root_complex(k as i64, self.n) * rational_to_f64(c);
            }
        }
        acc
    }
}

/// Lossy conversion used only for float summaries of exact values.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // scale both down by a common power of two
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let a = (r.numer().abs() >> shift).to_f64().unwrap_or(f64::MAX);
            let b = (r.denom() >> shift).to_f64().unwrap_or(f64::MAX);
            let v = a / b;
            if r.is_negative() {
                -v
            } else {
                v
            }
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.aligned(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_eval_root(poly: &[i64], n: u32) -> Complex64 {
        let z = root_complex(1, n);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for &c in poly {
            acc += p * c as f64;
            p *= z;
        }
        acc
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cyclotomic_poly_vanishes_at_primitive_root() {
        for n in [5u32, 8, 15, 24, 30, 105, 120, 1320] {
            let poly = cyclotomic_poly(n);
            assert_eq!(poly.len() as u32 - 1, euler_phi(n));
            assert!(poly_eval_root(&poly, n).norm() < 1e-6, "n={n}");
        }
    }

    #[test]
    fn full_root_sum_is_zero() {
        for n in [2u32, 3, 6, 12, 40] {
            let mut s = IntCyclotomic::zero(n);
            for k in 0..n as i64 {
                s.add_root(k, 1);
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let n = 12;
        let a = Cyclotomic::root(n, 1).add_ref(&Cyclotomic::from_int(n, 2));
        let inv = a.inv().unwrap();
        assert!(a.mul_ref(&inv).is_one());
    }

    #[test]
    fn lift_preserves_value() {
        let a = Cyclotomic::root(4, 1);
        let b = a.lifted(12);
        assert_eq!(a, b);
        assert!((a.to_complex() - b.to_complex()).norm() < 1e-12);
    }

    #[test]
    fn conjugate_of_root() {
        let a = Cyclotomic::root(7, 3);
        assert_eq!(a.conj(), Cyclotomic::root(7, -3));
        assert!(a.mul_ref(&a.conj()).is_one());
    }
}
