//! Finite fields `F_p` and `F_{p^2}`, with additive and multiplicative
//! characters and Gauss sums.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::FieldError;
use crate::scalar::Scalar;

/// Element of a [`PrimeField`], stored as `c0 + c1·p` for `c0 + c1·t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u32);

/// `F_p` (k = 1) or `F_p[t]/(t² − n)` with `n` the least nonresidue (k = 2).
#[derive(Clone, Debug)]
pub struct PrimeField {
    p: u32,
    k: u32,
    nonresidue: u32,
    generator: FieldElement,
    exp: Vec<FieldElement>,
    log: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PrimeField {
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p) || p > 97 {
            return Err(FieldError::UnsupportedPrime(p));
        }
        if !(k == 1 || k == 2) || (k == 2 && p == 2) {
            return Err(FieldError::UnsupportedDegree { p, k });
        }
        let nonresidue = if k == 2 {
            (2..p)
                .find(|&a| mod_pow(a, (p - 1) / 2, p) == p - 1)
                .expect("odd prime has a nonresidue")
        } else {
            0
        };
        let mut field = Self {
            p,
            k,
            nonresidue,
            generator: FieldElement(0),
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = field.order();
        let unit_order = order - 1;
        let factors = prime_factors(unit_order);
        // lexicographic in (c0, c1): c0 is the major key
        let generator = (0..p)
            .flat_map(|c0| (0..p.pow(k - 1)).map(move |c1| (c0, c1)))
            .map(|(c0, c1)| FieldElement(c0 + c1 * p))
            .filter(|x| x.0 != 0)
            .find(|&x| {
                factors
                    .iter()
                    .all(|&f| field.slow_pow(x, unit_order / f) != field.one())
            })
            .ok_or(FieldError::NoGenerator { p, k })?;
        field.generator = generator;
        let mut exp = Vec::with_capacity(unit_order as usize);
        let mut log = vec![NO_LOG; order as usize];
        let mut x = field.one();
        for j in 0..unit_order {
            if log[x.0 as usize] != NO_LOG {
                return Err(FieldError::NoGenerator { p, k });
            }
            log[x.0 as usize] = j;
            exp.push(x);
            x = field.slow_mul(x, generator);
        }
        if x != field.one() {
            return Err(FieldError::NoGenerator { p, k });
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// `p^k`.
    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }

    /// Order of the multiplicative group.
    pub fn unit_order(&self) -> u32 {
        self.order() - 1
    }

    pub fn nonresidue(&self) -> Option<u32> {
        (self.k == 2).then_some(self.nonresidue)
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(FieldElement)
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.exp.iter().copied()
    }

    pub fn coeffs(&self, x: FieldElement) -> (u32, u32) {
        (x.0 % self.p, x.0 / self.p)
    }

    pub fn from_coeffs(&self, c0: u32, c1: u32) -> FieldElement {
        debug_assert!(self.k == 2 || c1 == 0);
        FieldElement(c0 % self.p + (c1 % self.p) * self.p)
    }

    /// Image of an integer under `Z → F_p ⊆ F`.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn is_prime_subfield(&self, x: FieldElement) -> bool {
        x.0 < self.p
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (a0, a1) = self.coeffs(a);
        let (b0, b1) = self.coeffs(b);
        self.from_coeffs((a0 + b0) % self.p, (a1 + b1) % self.p)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let (a0, a1) = self.coeffs(a);
        self.from_coeffs((self.p - a0) % self.p, (self.p - a1) % self.p)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    fn slow_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u64;
        let (a0, a1) = self.coeffs(a);
        let (b0, b1) = self.coeffs(b);
        let (a0, a1, b0, b1) = (a0 as u64, a1 as u64, b0 as u64, b1 as u64);
        let c0 = (a0 * b0 + self.nonresidue as u64 * (a1 * b1 % p)) % p;
        let c1 = (a0 * b1 + a1 * b0) % p;
        self.from_coeffs(c0 as u32, c1 as u32)
    }

    fn slow_pow(&self, x: FieldElement, mut e: u32) -> FieldElement {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (self.log(a), self.log(b)) {
            (Some(la), Some(lb)) => self.exp(la as u64 + lb as u64),
            _ => self.zero(),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        self.log(a)
            .map(|l| self.exp((self.unit_order() - l) as u64))
    }

    pub fn pow(&self, a: FieldElement, e: i64) -> FieldElement {
        match self.log(a) {
            Some(l) => {
                let m = self.unit_order() as i64;
                self.exp((l as i64 * e.rem_euclid(m)).rem_euclid(m) as u64)
            }
            None if e == 0 => self.one(),
            None => self.zero(),
        }
    }

    /// Discrete logarithm to the fixed generator.
    pub fn log(&self, x: FieldElement) -> Option<u32> {
        match self.log[x.0 as usize] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    /// `generator^j`.
    pub fn exp(&self, j: u64) -> FieldElement {
        self.exp[(j % self.unit_order() as u64) as usize]
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p as i64)
    }

    /// Absolute trace to `F_p`, returned as an integer in `[0, p)`.
    pub fn trace_to_prime(&self, x: FieldElement) -> u32 {
        match self.k {
            1 => x.0,
            _ => {
                // (c0 + c1 t) + (c0 − c1 t) since t^p = −t
                let (c0, _) = self.coeffs(x);
                (2 * c0) % self.p
            }
        }
    }

    /// Norm to `F_p`, as an integer in `[0, p)`.
    pub fn norm_to_prime(&self, x: FieldElement) -> u32 {
        match self.k {
            1 => x.0,
            _ => {
                let n = self.mul(x, self.frobenius(x));
                debug_assert!(self.is_prime_subfield(n));
                n.0
            }
        }
    }
}

fn mod_pow(base: u32, mut e: u32, m: u32) -> u32 {
    let m64 = m as u64;
    let mut acc = 1u64 % m64;
    let mut b = base as u64 % m64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m64;
        }
        b = b * b % m64;
        e >>= 1;
    }
    acc as u32
}

/// `ψ(x) = ζ_p^{root_index·Tr(x)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdditiveCharacter {
    p: u32,
    root_index: u32,
}

impl AdditiveCharacter {
    pub fn new(p: u32, root_index: u32) -> Result<Self, FieldError> {
        if root_index == 0 || root_index >= p {
            return Err(FieldError::TrivialAdditiveCharacter { p, root_index });
        }
        Ok(Self { p, root_index })
    }

    pub fn standard(p: u32) -> Self {
        Self { p, root_index: 1 }
    }

    pub fn root_index(&self) -> u32 {
        self.root_index
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// `ψ^{-1}`.
    pub fn inverse(&self) -> Self {
        Self {
            p: self.p,
            root_index: self.p - self.root_index,
        }
    }

    /// Exponent `e` with `ψ(x) = ζ_p^e`.
    pub fn exponent(&self, field: &PrimeField, x: FieldElement) -> u32 {
        (self.root_index as u64 * field.trace_to_prime(x) as u64 % self.p as u64) as u32
    }

    pub fn eval<S: Scalar>(&self, conductor: u32, field: &PrimeField, x: FieldElement) -> S {
        S::root(conductor, self.exponent(field, x) as i64, self.p)
    }
}

/// `η(generator^j) = ζ_modulus^{exponent·j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiplicativeCharacter {
    modulus: u32,
    exponent: u32,
}

impl MultiplicativeCharacter {
    pub fn new(modulus: u32, exponent: i64) -> Self {
        assert!(modulus >= 1);
        Self {
            modulus,
            exponent: exponent.rem_euclid(modulus as i64) as u32,
        }
    }

    pub fn trivial(modulus: u32) -> Self {
        Self::new(modulus, 0)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.modulus, -(self.exponent as i64))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        Self::new(self.modulus, self.exponent as i64 + other.exponent as i64)
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::new(self.modulus, self.exponent as i64 * e)
    }

    /// Exponent of `η(x)` as a power of `ζ_modulus`, `None` at zero.
    pub fn exponent_at(&self, field: &PrimeField, x: FieldElement) -> Option<u32> {
        field
            .log(x)
            .map(|l| (self.exponent as u64 * l as u64 % self.modulus as u64) as u32)
    }

    pub fn eval<S: Scalar>(&self, conductor: u32, field: &PrimeField, x: FieldElement) -> Option<S> {
        self.exponent_at(field, x)
            .map(|e| S::root(conductor, e as i64, self.modulus))
    }
}

/// Conductor that holds every value arising over `F_p` and `F_{p^2}`:
/// `lcm(p, p²−1) = p(p²−1)`.
pub fn standard_conductor(p: u32) -> u32 {
    p * (p * p - 1)
}

/// `g(η, ψ) = Σ_{x ∈ F^×} η(x)ψ(x)`.
pub fn gauss_sum<S: Scalar>(
    eta: &MultiplicativeCharacter,
    psi: &AdditiveCharacter,
    field: &PrimeField,
    conductor: u32,
) -> Result<S, FieldError> {
    let counts = gauss_sum_counts(eta, psi, field)?;
    Ok(S::from_counts(conductor, eta.modulus * psi.p, &counts))
}

/// Integer counts `c_j` with `g(η, ψ) = Σ c_j ζ_{mp}^j`, where `m` is the
/// character modulus.
pub fn gauss_sum_counts(
    eta: &MultiplicativeCharacter,
    psi: &AdditiveCharacter,
    field: &PrimeField,
) -> Result<Vec<i64>, FieldError> {
    if eta.modulus != field.unit_order() {
        return Err(FieldError::CharacterMismatch {
            modulus: eta.modulus,
            unit_order: field.unit_order(),
        });
    }
    if psi.p != field.characteristic() {
        return Err(FieldError::CharacteristicMismatch {
            psi: psi.p,
            field: field.characteristic(),
        });
    }
    let m = eta.modulus as u64;
    let p = psi.p as u64;
    let order = m * p;
    let mut counts = vec![0i64; order as usize];
    for (j, x) in field.units().enumerate() {
        let e_eta = eta.exponent as u64 * j as u64 % m;
        let e_psi = psi.exponent(field, x) as u64;
        counts[((e_eta * p + e_psi * m) % order) as usize] += 1;
    }
    Ok(counts)
}
