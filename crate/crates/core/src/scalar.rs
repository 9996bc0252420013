//! The scalar abstraction shared by float and exact evaluation.

use alloc::vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::cyclotomic::{Cyclotomic, IntCyclotomic};

/// Which arithmetic a computation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScalarMode {
    Float,
    Exact,
}

/// Ring operations plus roots of unity.
///
/// Exact implementations need a conductor; float ones ignore it.
pub trait Scalar: Clone + Debug + PartialEq {
    fn zero(conductor: u32) -> Self;
    fn from_i64(conductor: u32, v: i64) -> Self;
    /// `Σ_j counts[j]·ζ_order^j`; `order` must divide the conductor.
    fn from_counts(conductor: u32, order: u32, counts: &[i64]) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn to_complex(&self) -> Complex64;
    /// `Some(is_zero)` for exact types, `None` for floats.
    fn exact_zero(&self) -> Option<bool>;

    fn one(conductor: u32) -> Self {
        Self::from_i64(conductor, 1)
    }

    fn root(conductor: u32, k: i64, order: u32) -> Self {
        let mut counts = vec![0; order as usize];
        counts[k.rem_euclid(order as i64) as usize] = 1;
        Self::from_counts(conductor, order, &counts)
    }

    fn scale_i64(&self, c: i64) -> Self {
        self.mul(&Self::from_i64(self.conductor_hint(), c))
    }

    fn conductor_hint(&self) -> u32;

    /// `self·ζ_order^k`.
    fn mul_root(&self, conductor: u32, k: i64, order: u32) -> Self {
        self.mul(&Self::root(conductor, k, order))
    }

    /// Distance used in reports; exact values are compared via their floats.
    fn distance(&self, other: &Self) -> f64 {
        (self.to_complex() - other.to_complex()).norm()
    }
}

fn float_root(k: i64, order: u32) -> Complex64 {
    let k = k.rem_euclid(order as i64) as f64;
    Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI * k / order as f64)
}

impl Scalar for Complex64 {
    fn zero(_: u32) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_i64(_: u32, v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_counts(_: u32, order: u32, counts: &[i64]) -> Self {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &c) in counts.iter().enumerate() {
            if c != 0 {
                acc += float_root(j as i64, order) * c as f64;
            }
        }
        acc
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn exact_zero(&self) -> Option<bool> {
        None
    }
    fn conductor_hint(&self) -> u32 {
        1
    }
    fn mul_root(&self, _: u32, k: i64, order: u32) -> Self {
        self * float_root(k, order)
    }
}

impl Scalar for IntCyclotomic {
    fn zero(conductor: u32) -> Self {
        IntCyclotomic::zero(conductor)
    }
    fn from_i64(conductor: u32, v: i64) -> Self {
        IntCyclotomic::from_int(conductor, v)
    }
    fn from_counts(conductor: u32, order: u32, counts: &[i64]) -> Self {
        IntCyclotomic::from_counts(conductor, order, counts)
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(&other.scale(-1));
        out
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn neg(&self) -> Self {
        self.scale(-1)
    }
    fn conj(&self) -> Self {
        IntCyclotomic::conj(self)
    }
    fn to_complex(&self) -> Complex64 {
        IntCyclotomic::to_complex(self)
    }
    fn exact_zero(&self) -> Option<bool> {
        Some(self.is_zero())
    }
    fn scale_i64(&self, c: i64) -> Self {
        self.scale(c)
    }
    fn conductor_hint(&self) -> u32 {
        self.conductor()
    }
    fn mul_root(&self, _: u32, k: i64, order: u32) -> Self {
        let n = self.conductor();
        assert!(n.is_multiple_of(order), "order {order} does not divide conductor {n}");
        IntCyclotomic::mul_root(self, k * (n / order) as i64)
    }
}

impl Scalar for Cyclotomic {
    fn zero(conductor: u32) -> Self {
        Cyclotomic::zero(conductor)
    }
    fn from_i64(conductor: u32, v: i64) -> Self {
        Cyclotomic::from_int(conductor, v)
    }
    fn from_counts(conductor: u32, order: u32, counts: &[i64]) -> Self {
        IntCyclotomic::from_counts(conductor, order, counts).to_cyclotomic()
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn conj(&self) -> Self {
        Cyclotomic::conj(self)
    }
    fn to_complex(&self) -> Complex64 {
        Cyclotomic::to_complex(self)
    }
    fn exact_zero(&self) -> Option<bool> {
        Some(self.is_zero())
    }
    fn conductor_hint(&self) -> u32 {
        self.conductor()
    }
}

/// Scalars that also divide by nonzero rationals.
pub trait FieldScalar: Scalar {
    /// Integral companion used for hot accumulation loops.
    type Ring: Scalar;
    fn from_ring(r: &Self::Ring) -> Self;
    fn from_ratio(conductor: u32, num: i64, den: i64) -> Self;
    /// `sign · base^exponent` for a possibly negative exponent.
    fn signed_power(conductor: u32, sign: i64, base: u32, exponent: i32) -> Self;
}

impl FieldScalar for Complex64 {
    type Ring = Complex64;
    fn from_ring(r: &Complex64) -> Self {
        *r
    }
    fn from_ratio(_: u32, num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn signed_power(_: u32, sign: i64, base: u32, exponent: i32) -> Self {
        Complex64::new(sign as f64 * num_traits::Float::powi(base as f64, exponent), 0.0)
    }
}

impl FieldScalar for Cyclotomic {
    type Ring = IntCyclotomic;
    fn from_ring(r: &IntCyclotomic) -> Self {
        r.to_cyclotomic()
    }
    fn from_ratio(conductor: u32, num: i64, den: i64) -> Self {
        Cyclotomic::from_rational(
            conductor,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }
    fn signed_power(conductor: u32, sign: i64, base: u32, exponent: i32) -> Self {
        let b = BigInt::from(base).pow(exponent.unsigned_abs());
        let r = if exponent >= 0 {
            BigRational::from_integer(b)
        } else {
            BigRational::new(BigInt::from(1), b)
        };
        Cyclotomic::from_rational(conductor, r * BigRational::from_integer(BigInt::from(sign)))
    }
}
