//! Gamma values as products of Gauss sums over Frobenius orbits of weights.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::characters::{CharacterTable, DlDatum};
use crate::bessel::WeightSet;
use crate::error::GroupError;
use crate::field::{gauss_sum, AdditiveCharacter, MultiplicativeCharacter, PrimeField};
use crate::scalar::Scalar;

/// Normalization `γ = sign · q^{q_exponent} · γ₀(θ or θ^{-1})`.
///
/// Ordered lexicographically by `(sign, invert, q_exponent)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Convention {
    pub sign: i8,
    pub invert: bool,
    pub q_exponent: i8,
}

impl Convention {
    pub const EXPONENT_RANGE: core::ops::RangeInclusive<i8> = -4..=4;

    pub fn new(sign: i8, invert: bool, q_exponent: i8) -> Option<Self> {
        ((sign == 1 || sign == -1) && Self::EXPONENT_RANGE.contains(&q_exponent)).then_some(Self {
            sign,
            invert,
            q_exponent,
        })
    }

    /// No sign change, no inversion, no power of `q`.
    pub fn raw() -> Self {
        Self {
            sign: 1,
            invert: false,
            q_exponent: 0,
        }
    }

    /// All 36 records, in ascending order.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::new();
        for sign in [-1i8, 1] {
            for invert in [false, true] {
                for e in Self::EXPONENT_RANGE {
                    out.push(Self {
                        sign,
                        invert,
                        q_exponent: e,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{}",
            if self.sign > 0 { "+1" } else { "-1" },
            u8::from(self.invert),
            self.q_exponent
        )
    }
}

impl FromStr for Convention {
    type Err = ConventionParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [sign, invert, exp] = parts.as_slice() else {
            return Err(ConventionParseError);
        };
        let sign: i8 = sign.parse().map_err(|_| ConventionParseError)?;
        let invert = match *invert {
            "0" => false,
            "1" => true,
            _ => return Err(ConventionParseError),
        };
        let exp: i8 = exp.parse().map_err(|_| ConventionParseError)?;
        Self::new(sign, invert, exp).ok_or(ConventionParseError)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConventionParseError;

impl fmt::Display for ConventionParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("convention must be SIGN,INVERT,EXPONENT with SIGN in {+1,-1}, INVERT in {0,1}, EXPONENT in -4..=4")
    }
}

/// Fields needed to evaluate gamma values at a given `q`.
pub struct GammaFields<'a> {
    pub base: &'a PrimeField,
    pub quadratic: Option<&'a PrimeField>,
}

/// `γ₀ = Π_orbits (−g_o)`, with `θ` inverted first when `invert` is set.
///
/// Split data use one Gauss sum over `F_q` per weight. On the nonsplit torus
/// of `GL_2` a pair `{(a, b), (b, a)}` with `a ≠ b` contributes
/// `−g_{F_{q²}}(θ^{a + bq})`, and a fixed weight `(a, a)` contributes
/// `−g_{F_q}(x ↦ θ(x^a))`.
pub fn gamma0_of_datum<S: Scalar>(
    datum: &DlDatum,
    weights: &WeightSet,
    psi: &AdditiveCharacter,
    fields: &GammaFields<'_>,
    conductor: u32,
    invert: bool,
) -> Result<S, GroupError> {
    let base = fields.base;
    let q = base.order();
    let m = q - 1;
    let sgn: i64 = if invert { -1 } else { 1 };
    let mut acc = S::one(conductor);
    let minus_gauss = |eta: MultiplicativeCharacter, field: &PrimeField| -> Result<S, GroupError> {
        let g: S = gauss_sum(&eta, psi, field, conductor)?;
        Ok(g.neg())
    };
    match *datum {
        DlDatum::Rank1(a) => {
            check_rank(weights, 1)?;
            for w in weights.weights() {
                let eta = MultiplicativeCharacter::new(m, sgn * a as i64 * w[0]);
                acc = acc.mul(&minus_gauss(eta, base)?);
            }
        }
        DlDatum::Split(a, b) => {
            check_rank(weights, 2)?;
            check_swap_stable(weights)?;
            for w in weights.weights() {
                let e = a as i64 * w[0] + b as i64 * w[1];
                acc = acc.mul(&minus_gauss(MultiplicativeCharacter::new(m, sgn * e), base)?);
            }
        }
        DlDatum::Nonsplit(j) => {
            acc = gamma0_nonsplit_formula(j, weights, psi, fields, conductor, invert)?;
        }
    }
    Ok(acc)
}

/// The nonsplit orbit product for any exponent `j`, including characters
/// that factor through the norm.
pub fn gamma0_nonsplit_formula<S: Scalar>(
    j: u32,
    weights: &WeightSet,
    psi: &AdditiveCharacter,
    fields: &GammaFields<'_>,
    conductor: u32,
    invert: bool,
) -> Result<S, GroupError> {
    check_rank(weights, 2)?;
    let base = fields.base;
    let quad = fields.quadratic.expect("nonsplit data need F_{q²}");
    let q = base.order() as i64;
    let m = q - 1;
    let n2 = q * q - 1;
    let j = if invert { -(j as i64) } else { j as i64 };
    // log_G(g) = (q + 1)·ell for the generator g of F_q^×
    let g_log = quad
        .log(quad.from_coeffs(base.generator().0, 0))
        .expect("unit") as i64;
    let ell = g_log / (q + 1);
    let mut remaining: Vec<Vec<i64>> = weights.weights().to_vec();
    let mut acc = S::one(conductor);
    while let Some(w) = remaining.pop() {
        let (a, b) = (w[0], w[1]);
        let g: S = if a == b {
            let eta = MultiplicativeCharacter::new(m as u32, j * a * ell);
            gauss_sum(&eta, psi, base, conductor)?
        } else {
            let partner = remaining
                .iter()
                .position(|v| v[0] == b && v[1] == a)
                .ok_or(GroupError::UnpairedWeights)?;
            remaining.swap_remove(partner);
            let eta = MultiplicativeCharacter::new(n2 as u32, j * (a + b * q));
            gauss_sum(&eta, psi, quad, conductor)?
        };
        acc = acc.mul(&g.neg());
    }
    Ok(acc)
}

fn check_rank(weights: &WeightSet, rank: usize) -> Result<(), GroupError> {
    if weights.rank() != rank {
        return Err(GroupError::RankMismatch {
            rank,
            got: weights.rank(),
        });
    }
    Ok(())
}

fn check_swap_stable(weights: &WeightSet) -> Result<(), GroupError> {
    let mut a: Vec<Vec<i64>> = weights.weights().to_vec();
    let mut b: Vec<Vec<i64>> = a.iter().map(|w| alloc::vec![w[1], w[0]]).collect();
    a.sort();
    b.sort();
    if a == b {
        Ok(())
    } else {
        Err(GroupError::UnpairedWeights)
    }
}

/// `γ₀` per Deligne–Lusztig datum, plus the convention to finish it.
#[derive(Clone, Debug)]
pub struct GammaTable<S> {
    pub convention: Convention,
    by_datum: BTreeMap<DlDatum, S>,
}

impl<S: Scalar> GammaTable<S> {
    pub fn for_gl2(
        table: &CharacterTable,
        weights: &WeightSet,
        psi: &AdditiveCharacter,
        convention: Convention,
        conductor: u32,
    ) -> Result<Self, GroupError> {
        let fields = GammaFields {
            base: table.classes().base_field(),
            quadratic: Some(table.classes().quadratic_field()),
        };
        let mut by_datum = BTreeMap::new();
        for row in table.rows() {
            if by_datum.contains_key(&row.datum) {
                continue;
            }
            let g = gamma0_of_datum(&row.datum, weights, psi, &fields, conductor, convention.invert)?;
            by_datum.insert(row.datum, g);
        }
        Ok(Self {
            convention,
            by_datum,
        })
    }

    pub fn for_gl1(
        field: &PrimeField,
        weights: &WeightSet,
        psi: &AdditiveCharacter,
        convention: Convention,
        conductor: u32,
    ) -> Result<Self, GroupError> {
        let fields = GammaFields {
            base: field,
            quadratic: None,
        };
        let mut by_datum = BTreeMap::new();
        for a in 0..field.unit_order() {
            let d = DlDatum::Rank1(a);
            let g = gamma0_of_datum(&d, weights, psi, &fields, conductor, convention.invert)?;
            by_datum.insert(d, g);
        }
        Ok(Self {
            convention,
            by_datum,
        })
    }

    /// `γ₀` (sign and `q`-power not yet applied).
    pub fn gamma0(&self, datum: &DlDatum) -> &S {
        &self.by_datum[datum]
    }

    pub fn by_datum(&self) -> &BTreeMap<DlDatum, S> {
        &self.by_datum
    }

    /// `γ₀` for each row of the table, in row order.
    pub fn per_row(&self, table: &CharacterTable) -> Vec<S> {
        table.rows().iter().map(|r| self.by_datum[&r.datum].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::cyclotomic::IntCyclotomic;
    use crate::field::standard_conductor;
    use num_complex::Complex64;

    fn fields(q: u32) -> (PrimeField, PrimeField) {
        (PrimeField::new(q, 1).unwrap(), PrimeField::new(q, 2).unwrap())
    }

    #[test]
    fn trivial_data_give_one() {
        let (b, qd) = fields(5);
        let f = GammaFields {
            base: &b,
            quadratic: Some(&qd),
        };
        let psi = AdditiveCharacter::standard(5);
        let c = standard_conductor(5);
        let std = WeightSet::standard(2);
        let g: IntCyclotomic = gamma0_of_datum(&DlDatum::Split(0, 0), &std, &psi, &f, c, false).unwrap();
        assert_eq!(g, IntCyclotomic::from_int(c, 1));
        let g: IntCyclotomic = gamma0_nonsplit_formula(0, &std, &psi, &f, c, false).unwrap();
        assert_eq!(g, IntCyclotomic::from_int(c, 1));
    }

    #[test]
    fn split_std_q5_is_product_of_two_gauss_sums() {
        let (b, qd) = fields(5);
        let f = GammaFields {
            base: &b,
            quadratic: Some(&qd),
        };
        let psi = AdditiveCharacter::standard(5);
        let g: Complex64 =
            gamma0_of_datum(&DlDatum::Split(2, 3), &WeightSet::standard(2), &psi, &f, 1, false).unwrap();
        let brute = |e: u32| {
            let mut s = Complex64::new(0.0, 0.0);
            for x in 1..5u32 {
                let l = b.log(crate::field::FieldElement(x)).unwrap();
                let ang = 2.0 * core::f64::consts::PI * ((e * l) % 4) as f64 / 4.0
                    + 2.0 * core::f64::consts::PI * x as f64 / 5.0;
                s += Complex64::from_polar(1.0, ang);
            }
            s
        };
        assert!((g - brute(2) * brute(3)).norm() < 1e-12);
    }

    #[test]
    fn unpaired_weights_are_rejected() {
        let (b, qd) = fields(5);
        let f = GammaFields {
            base: &b,
            quadratic: Some(&qd),
        };
        let psi = AdditiveCharacter::standard(5);
        let w = WeightSet::parse("1,0").unwrap();
        let err = gamma0_of_datum::<Complex64>(&DlDatum::Nonsplit(1), &w, &psi, &f, 1, false).unwrap_err();
        assert_eq!(err, GroupError::UnpairedWeights);
        let err = gamma0_of_datum::<Complex64>(&DlDatum::Split(1, 2), &w, &psi, &f, 1, false).unwrap_err();
        assert_eq!(err, GroupError::UnpairedWeights);
    }

    #[test]
    fn convention_text_roundtrip() {
        for c in Convention::all() {
            assert_eq!(c.to_string().parse::<Convention>().unwrap(), c);
        }
        assert!("2,0,0".parse::<Convention>().is_err());
        assert!("1,0,5".parse::<Convention>().is_err());
        assert_eq!(Convention::all().len(), 36);
        let mut sorted = Convention::all();
        sorted.sort();
        assert_eq!(sorted, Convention::all());
    }
}
