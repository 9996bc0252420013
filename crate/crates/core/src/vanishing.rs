//! Sums of a function on `GL_2` over the cosets `gU`, `U` upper unitriangular.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::VanishingError;
use crate::field::{AdditiveCharacter, FieldElement, PrimeField};
use crate::kernel::{group_order, ClassFunction, ClassTable, Mat2};
use crate::scalar::Scalar;

/// Largest group enumerated.
pub const GROUP_BUDGET: u64 = 1_000_000;

/// Off-Borel sums must stay below this multiple of `max |φ|`.
pub const RELATIVE_TOLERANCE: f64 = 1e-8;

/// Some on-Borel sum must exceed this multiple of `max |φ|`.
pub const NONTRIVIAL_THRESHOLD: f64 = 1e-3;

/// One representative per coset `gU`: `[[a, b], [c, 0]]` with `b, c ≠ 0`
/// off the Borel, `diag(a, d)` on it. Returned with the on-Borel flag.
pub fn coset_representatives(f: &PrimeField) -> Vec<(Mat2, bool)> {
    let zero = f.zero();
    let mut out = Vec::new();
    for a in f.units() {
        for d in f.units() {
            out.push((Mat2::diag(a, d), true));
        }
    }
    for a in f.elements() {
        for b in f.units() {
            for c in f.units() {
                out.push((Mat2::new(a, b, c, zero), false));
            }
        }
    }
    out
}

fn unipotent(f: &PrimeField, x: FieldElement) -> Mat2 {
    Mat2::new(f.one(), x, f.zero(), f.one())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CosetSum {
    pub representative: Mat2,
    pub on_borel: bool,
    pub value: Complex64,
    pub exact_zero: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VanishingReport {
    pub field_order: u32,
    pub sums: Vec<CosetSum>,
    pub max_off_borel: f64,
    pub max_on_borel: f64,
    pub max_phi: f64,
    pub relative_tolerance: f64,
    /// In exact mode, whether every off-Borel sum is exactly zero.
    pub off_borel_exact_zero: Option<bool>,
}

impl VanishingReport {
    pub fn tolerance(&self) -> f64 {
        self.relative_tolerance * self.max_phi
    }

    pub fn passes(&self) -> bool {
        self.max_off_borel <= self.tolerance() && self.off_borel_exact_zero != Some(false)
    }

    /// Some on-Borel sum is clearly nonzero.
    pub fn nontrivial(&self) -> bool {
        self.max_on_borel > NONTRIVIAL_THRESHOLD * self.max_phi
    }

    /// `max_off / max |φ|`.
    pub fn relative_off_borel(&self) -> f64 {
        if self.max_phi == 0.0 {
            0.0
        } else {
            self.max_off_borel / self.max_phi
        }
    }

    /// On-Borel sums as `((a, d), value)` for the representative `diag(a, d)`.
    pub fn on_borel_table(&self) -> Vec<((u32, u32), Complex64)> {
        self.sums
            .iter()
            .filter(|s| s.on_borel)
            .map(|s| ((s.representative.a.0, s.representative.d.0), s.value))
            .collect()
    }

    /// Off-Borel pass/fail pattern, in representative order.
    pub fn off_borel_pattern(&self) -> Vec<bool> {
        let tol = self.tolerance();
        self.sums
            .iter()
            .filter(|s| !s.on_borel)
            .map(|s| s.value.norm() <= tol && s.exact_zero != Some(false))
            .collect()
    }
}

/// `s(gU) = Σ_{u ∈ U} φ(gu)` for every coset.
pub fn coset_sums<S: Scalar>(
    f: &PrimeField,
    phi: impl Fn(&Mat2) -> S,
    conductor: u32,
) -> Result<VanishingReport, VanishingError> {
    let q = f.order();
    let needed = group_order(q as u64);
    if needed > GROUP_BUDGET {
        return Err(VanishingError::BudgetExceeded {
            needed,
            budget: GROUP_BUDGET,
        });
    }
    let mut sums = Vec::new();
    let mut max_phi: f64 = 0.0;
    let mut max_on: f64 = 0.0;
    let mut max_off: f64 = 0.0;
    let mut exact: Option<bool> = None;
    for (g, on_borel) in coset_representatives(f) {
        let mut acc = S::zero(conductor);
        for x in f.elements() {
            let v = phi(&g.mul(f, &unipotent(f, x)));
            max_phi = max_phi.max(v.to_complex().norm());
            acc = acc.add(&v);
        }
        let value = acc.to_complex();
        let exact_zero = acc.exact_zero();
        if on_borel {
            max_on = max_on.max(value.norm());
        } else {
            max_off = max_off.max(value.norm());
            if let Some(z) = exact_zero {
                exact = Some(exact.unwrap_or(true) && z);
            }
        }
        sums.push(CosetSum {
            representative: g,
            on_borel,
            value,
            exact_zero,
        });
    }
    Ok(VanishingReport {
        field_order: q,
        sums,
        max_off_borel: max_off,
        max_on_borel: max_on,
        max_phi,
        relative_tolerance: RELATIVE_TOLERANCE,
        off_borel_exact_zero: exact,
    })
}

/// [`coset_sums`] for a class function on `GL_2(F_q)`.
pub fn class_function_sums<S: Scalar>(
    classes: &ClassTable,
    phi: &ClassFunction<S>,
    conductor: u32,
) -> Result<VanishingReport, VanishingError> {
    coset_sums(classes.base_field(), |g| phi.at(classes.class_of(g)).clone(), conductor)
}

/// Coset sums of `g ↦ c·ψ(Tr tr g)` over `GL_2(F_{q^m})`, with `ψ` the
/// character of `F_q` composed with the trace down to `F_q`.
pub fn extension_scalars_sums<S: Scalar>(
    q: u32,
    m: u32,
    constant: &S,
    psi: &AdditiveCharacter,
    conductor: u32,
) -> Result<VanishingReport, VanishingError> {
    if !(1..=2).contains(&m) {
        return Err(VanishingError::Unsupported { q, m });
    }
    let f = PrimeField::new(q, m).map_err(|_| VanishingError::Unsupported { q, m })?;
    if f.characteristic() != psi.characteristic() {
        return Err(VanishingError::Unsupported { q, m });
    }
    coset_sums(
        &f,
        |g| psi.eval::<S>(conductor, &f, g.trace(&f)).mul(constant),
        conductor,
    )
}
