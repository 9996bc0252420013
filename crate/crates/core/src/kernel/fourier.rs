//! Class functions, the spectral kernel and convolution on `GL_2(F_q)`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::characters::{CharacterTable, IrrepLabel};
use super::gamma::{Convention, GammaTable};
use super::{group_elements, ClassTable};
use crate::bessel::WeightSet;
use crate::cyclotomic::IntCyclotomic;
use crate::error::GroupError;
use crate::field::AdditiveCharacter;
use crate::scalar::{FieldScalar, Scalar};

/// Values indexed by the classes of a [`ClassTable`].
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction<S> {
    q: u32,
    values: Vec<S>,
}

impl<S: Scalar> ClassFunction<S> {
    pub fn new(q: u32, values: Vec<S>) -> Self {
        Self { q, values }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn at(&self, class: usize) -> &S {
        &self.values[class]
    }

    /// Indicator of the identity class.
    pub fn identity_indicator(classes: &ClassTable, conductor: u32) -> Self {
        let one = classes.base_field().one();
        let id = classes.class_of(&super::Mat2::diag(one, one));
        let values = (0..classes.len())
            .map(|c| S::from_i64(conductor, i64::from(c == id)))
            .collect();
        Self::new(classes.q(), values)
    }

    /// Character of row `row`.
    pub fn character(table: &CharacterTable, row: usize, conductor: u32) -> Self {
        let values = table.rows()[row]
            .values
            .iter()
            .map(|v| v.to_scalar(conductor))
            .collect();
        Self::new(table.q(), values)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ClassFunction<T> {
        ClassFunction::new(self.q, self.values.iter().map(f).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| v.mul(c))
    }

    pub fn to_complex(&self) -> ClassFunction<Complex64> {
        self.map(|v| v.to_complex())
    }

    /// `max_C |self(C) − other(C)|`.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.to_complex().norm()).fold(0.0, f64::max)
    }

    fn check_same(&self, other: &Self) -> Result<(), GroupError> {
        if self.q != other.q || self.values.len() != other.values.len() {
            return Err(GroupError::ShapeMismatch);
        }
        Ok(())
    }
}

/// `C ↦ ψ(tr C)`.
pub fn psi_trace_function<S: Scalar>(
    classes: &ClassTable,
    psi: &AdditiveCharacter,
    conductor: u32,
) -> ClassFunction<S> {
    let f = classes.base_field();
    let values = classes
        .classes()
        .iter()
        .map(|c| psi.eval(conductor, f, c.representative.trace(f)))
        .collect();
    ClassFunction::new(classes.q(), values)
}

/// `N(C) = Σ_π γ₀(π)·dim π·χ_π(C)`, summed in canonical row order.
pub fn kernel_numerators<R: Scalar>(
    table: &CharacterTable,
    gammas: &GammaTable<R>,
    conductor: u32,
) -> ClassFunction<R> {
    let order = table.value_order();
    let rows = table.rows();
    let per_row: Vec<(usize, R)> = table
        .canonical_order()
        .into_iter()
        .map(|i| {
            let g = gammas.gamma0(&rows[i].datum).scale_i64(rows[i].dim as i64);
            (i, g)
        })
        .collect();
    let values = (0..table.classes().len())
        .map(|c| {
            let mut acc = R::zero(conductor);
            for (i, g) in &per_row {
                for &(e, m) in rows[*i].values[c].terms() {
                    acc = acc.add(&g.mul_root(conductor, e as i64, order).scale_i64(m));
                }
            }
            acc
        })
        .collect();
    ClassFunction::new(table.q(), values)
}

/// `s·q^e / |G|`, the factor turning numerators into the kernel.
pub fn kernel_prefactor<F: FieldScalar>(q: u32, convention: Convention, conductor: u32) -> F {
    let power = F::signed_power(conductor, convention.sign as i64, q, convention.q_exponent as i32);
    let order = super::group_order(q as u64) as i64;
    power.mul(&F::from_ratio(conductor, 1, order))
}

/// `φ_G = |G|^{-1} Σ_π γ(π)·dim π·χ_π`.
pub fn kernel_on_group<F: FieldScalar>(
    table: &CharacterTable,
    weights: &WeightSet,
    psi: &AdditiveCharacter,
    convention: Convention,
    conductor: u32,
) -> Result<ClassFunction<F>, GroupError> {
    let gammas = GammaTable::<F::Ring>::for_gl2(table, weights, psi, convention, conductor)?;
    let numerators = kernel_numerators(table, &gammas, conductor);
    let pre: F = kernel_prefactor(table.q(), convention, conductor);
    Ok(numerators.map(|n| F::from_ring(n).mul(&pre)))
}

/// Structure constants `a_{ij}^k = #{(x, y) ∈ C_i × C_j : xy = z_k}` for
/// fixed representatives `z_k`.
#[derive(Clone, Debug)]
pub struct ClassAlgebra {
    q: u32,
    len: usize,
    // index (k·len + i)·len + j
    constants: Vec<u32>,
}

impl ClassAlgebra {
    pub fn new(classes: &ClassTable) -> Self {
        let f = classes.base_field();
        let len = classes.len();
        let elements = group_elements(f);
        let element_class: Vec<usize> = elements.iter().map(|m| classes.class_of(m)).collect();
        let inverse_class: Vec<(usize, super::Mat2)> = elements
            .iter()
            .zip(&element_class)
            .map(|(m, &c)| (c, m.inverse(f).expect("invertible")))
            .collect();
        let mut constants = vec![0u32; len * len * len];
        for (k, cls) in classes.classes().iter().enumerate() {
            let z = cls.representative;
            for (i, hinv) in &inverse_class {
                let j = classes.class_of(&hinv.mul(f, &z));
                constants[(k * len + i) * len + j] += 1;
            }
        }
        Self {
            q: classes.q(),
            len,
            constants,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.constants[(k * self.len + i) * self.len + j]
    }

    /// `(f * g)(z_k) = Σ_{i,j} a_{ij}^k f(C_i) g(C_j)`.
    pub fn convolve<S: Scalar>(
        &self,
        f: &ClassFunction<S>,
        g: &ClassFunction<S>,
        conductor: u32,
    ) -> Result<ClassFunction<S>, GroupError> {
        f.check_same(g)?;
        if f.q != self.q || f.values.len() != self.len {
            return Err(GroupError::ShapeMismatch);
        }
        let n = self.len;
        let values = (0..n)
            .map(|k| {
                let mut acc = S::zero(conductor);
                for i in 0..n {
                    if f.values[i].exact_zero() == Some(true) {
                        continue;
                    }
                    let row = &self.constants[(k * n + i) * n..(k * n + i + 1) * n];
                    let mut inner = S::zero(conductor);
                    for (j, &a) in row.iter().enumerate() {
                        if a != 0 {
                            inner = inner.add(&g.values[j].scale_i64(a as i64));
                        }
                    }
                    acc = acc.add(&inner.mul(&f.values[i]));
                }
                acc
            })
            .collect();
        Ok(ClassFunction::new(self.q, values))
    }
}

/// `f * g = Σ_π (|G|/dim π)·⟨f, χ_π⟩⟨g, χ_π⟩·χ_π`.
pub fn convolve_by_characters<F: FieldScalar>(
    table: &CharacterTable,
    f: &ClassFunction<F>,
    g: &ClassFunction<F>,
    conductor: u32,
) -> Result<ClassFunction<F>, GroupError> {
    f.check_same(g)?;
    let classes = table.classes();
    if f.q != table.q() || f.values.len() != classes.len() {
        return Err(GroupError::ShapeMismatch);
    }
    let order = classes.group_order() as i64;
    let mut out = vec![F::zero(conductor); classes.len()];
    for &r in &table.canonical_order() {
        let row = &table.rows()[r];
        let chi: Vec<F> = row.values.iter().map(|v| v.to_scalar(conductor)).collect();
        // |G|·⟨h, χ⟩
        let pair = |h: &ClassFunction<F>| {
            let mut acc = F::zero(conductor);
            for (c, cls) in classes.classes().iter().enumerate() {
                acc = acc.add(&h.values[c].mul(&chi[c].conj()).scale_i64(cls.size as i64));
            }
            acc
        };
        let coeff = pair(f)
            .mul(&pair(g))
            .mul(&F::from_ratio(conductor, 1, order * row.dim as i64));
        for (o, x) in out.iter_mut().zip(&chi) {
            *o = o.add(&coeff.mul(x));
        }
    }
    Ok(ClassFunction::new(table.q(), out))
}

/// One row of an eigen check: `‖φ * χ_π − γ(π)χ_π‖_∞` against its bound.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenRow {
    pub label: IrrepLabel,
    pub gamma: Complex64,
    pub error: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenReport {
    pub rows: Vec<EigenRow>,
    /// Result of the exact check `N * χ_π = |G|·γ₀(π)·χ_π`, when run.
    pub exact: Option<bool>,
}

impl EigenReport {
    pub const RELATIVE_TOLERANCE: f64 = 1e-8;

    /// Float check of `φ * χ_π = γ(π)χ_π` for every row, using the
    /// structure-constant route.
    pub fn float(
        algebra: &ClassAlgebra,
        table: &CharacterTable,
        kernel: &ClassFunction<Complex64>,
        gamma: &GammaTable<Complex64>,
    ) -> Result<Self, GroupError> {
        let q = table.q();
        let factor = Complex64::signed_power(1, gamma.convention.sign as i64, q, gamma.convention.q_exponent as i32);
        let mut rows = Vec::new();
        for &r in &table.canonical_order() {
            let irrep = &table.rows()[r];
            let chi = ClassFunction::<Complex64>::character(table, r, 1);
            let g = gamma.gamma0(&irrep.datum) * factor;
            let image = algebra.convolve(kernel, &chi, 1)?;
            let error = image.sup_distance(&chi.scale(&g));
            rows.push(EigenRow {
                label: irrep.label,
                gamma: g,
                error,
                bound: Self::RELATIVE_TOLERANCE * g.norm().max(1.0) * irrep.dim as f64,
            });
        }
        Ok(Self { rows, exact: None })
    }

    /// Exact check on numerators: `N * χ_π = |G|·γ₀(π)·χ_π` in the group ring.
    pub fn exact_numerators(
        algebra: &ClassAlgebra,
        table: &CharacterTable,
        numerators: &ClassFunction<IntCyclotomic>,
        gamma: &GammaTable<IntCyclotomic>,
        conductor: u32,
    ) -> Result<bool, GroupError> {
        let order = table.classes().group_order() as i64;
        for &r in &table.canonical_order() {
            let chi = ClassFunction::<IntCyclotomic>::character(table, r, conductor);
            let image = algebra.convolve(numerators, &chi, conductor)?;
            let g = gamma.gamma0(&table.rows()[r].datum).scale(order);
            if image != chi.scale(&g) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn passes(&self) -> bool {
        self.rows.iter().all(|r| r.error <= r.bound) && self.exact != Some(false)
    }

    /// Largest `error / bound`.
    pub fn worst_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.error / r.bound).fold(0.0, f64::max)
    }
}

/// Result of fitting `φ ≈ c·ψ(tr)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StdFit {
    pub constant: Complex64,
    /// `max |φ − cψ∘tr| / max |φ|`.
    pub residual: f64,
    /// `Some(true)` if the fit was verified exactly.
    pub exact: Option<bool>,
}

impl StdFit {
    pub const TOLERANCE: f64 = 1e-9;

    pub fn passes(&self) -> bool {
        self.residual < Self::TOLERANCE && self.exact != Some(false)
    }

    /// `c = q^k` for some integer `k`, with `|k| ≤ 8`.
    pub fn power_of_q(&self, q: u32) -> Option<i32> {
        if self.constant.im.abs() > 1e-9 * self.constant.norm().max(1.0) || self.constant.re <= 0.0 {
            return None;
        }
        (-8..=8).find(|&k| {
            let target = num_traits::Float::powi(q as f64, k);
            (self.constant.re - target).abs() <= 1e-9 * target
        })
    }
}

/// Least-squares constant `c = Σ_C |C| φ(C) conj ψ(tr C) / |G|` and the
/// residual; exact scalars also check `φ = c·ψ∘tr` exactly.
pub fn fit_std_kernel<F: FieldScalar>(
    classes: &ClassTable,
    kernel: &ClassFunction<F>,
    psi: &AdditiveCharacter,
    conductor: u32,
) -> StdFit {
    let target: ClassFunction<F> = psi_trace_function(classes, psi, conductor);
    let mut acc = F::zero(conductor);
    for (c, cls) in classes.classes().iter().enumerate() {
        acc = acc.add(&kernel.values[c].mul(&target.values[c].conj()).scale_i64(cls.size as i64));
    }
    let c = acc.mul(&F::from_ratio(conductor, 1, classes.group_order() as i64));
    let fitted = target.scale(&c);
    let scale = kernel.sup_norm();
    let residual = if scale == 0.0 {
        0.0
    } else {
        kernel.sup_distance(&fitted) / scale
    };
    let exact = kernel
        .values
        .iter()
        .zip(&fitted.values)
        .map(|(a, b)| a.sub(b).exact_zero())
        .try_fold(true, |all, z| z.map(|z| all && z));
    StdFit {
        constant: c.to_complex(),
        residual,
        exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Cyclotomic;
    use crate::field::standard_conductor;

    #[test]
    fn all_ones_gamma_gives_identity_indicator() {
        let table = CharacterTable::new(5).unwrap();
        let conductor = standard_conductor(5);
        let mut acc = vec![IntCyclotomic::zero(conductor); table.classes().len()];
        for row in table.rows() {
            for (c, v) in row.values.iter().enumerate() {
                let x: IntCyclotomic = v.to_scalar(conductor);
                acc[c] = acc[c].add(&x.scale(row.dim as i64));
            }
        }
        let id = ClassFunction::<IntCyclotomic>::identity_indicator(table.classes(), conductor);
        let order = table.classes().group_order() as i64;
        for (c, v) in acc.iter().enumerate() {
            assert_eq!(*v, id.at(c).scale(order));
        }
    }

    #[test]
    fn structure_constants_count_pairs() {
        let classes = ClassTable::new(3).unwrap();
        let alg = ClassAlgebra::new(&classes);
        let order = classes.group_order();
        for k in 0..alg.len() {
            let total: u64 = (0..alg.len())
                .flat_map(|i| (0..alg.len()).map(move |j| (i, j)))
                .map(|(i, j)| alg.constant(i, j, k) as u64)
                .sum();
            assert_eq!(total, order);
        }
    }

    #[test]
    fn identity_indicator_is_a_unit() {
        let table = CharacterTable::new(5).unwrap();
        let alg = ClassAlgebra::new(table.classes());
        let id = ClassFunction::<Complex64>::identity_indicator(table.classes(), 1);
        let chi = ClassFunction::<Complex64>::character(&table, 7, 1);
        let out = alg.convolve(&id, &chi, 1).unwrap();
        assert!(out.sup_distance(&chi) < 1e-12);
    }

    #[test]
    fn convolution_routes_agree_exactly_q3() {
        let table = CharacterTable::new(3).unwrap();
        let conductor = standard_conductor(3);
        let alg = ClassAlgebra::new(table.classes());
        let psi = AdditiveCharacter::standard(3);
        let f: ClassFunction<Cyclotomic> = psi_trace_function(table.classes(), &psi, conductor);
        let g = ClassFunction::<Cyclotomic>::character(&table, 3, conductor)
            .map(|v| v.add(&Cyclotomic::from_int(conductor, 2)));
        let a = alg.convolve(&f, &g, conductor).unwrap();
        let b = convolve_by_characters(&table, &f, &g, conductor).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn std_kernel_is_proportional_to_psi_trace() {
        let q = 5;
        let table = CharacterTable::new(q).unwrap();
        let psi = AdditiveCharacter::standard(q);
        let k: ClassFunction<Complex64> =
            kernel_on_group(&table, &WeightSet::standard(2), &psi, Convention::new(1, true, 0).unwrap(), 1)
                .unwrap();
        let fit = fit_std_kernel(table.classes(), &k, &psi, 1);
        assert!(fit.residual < 1e-9, "{fit:?}");
        assert_eq!(fit.power_of_q(q), Some(-1));
        let raw: ClassFunction<Complex64> =
            kernel_on_group(&table, &WeightSet::standard(2), &psi, Convention::raw(), 1).unwrap();
        assert!(fit_std_kernel(table.classes(), &raw, &psi, 1).residual > 0.1);
    }

    #[test]
    fn std_kernel_exact_q3() {
        let q = 3;
        let conductor = standard_conductor(q);
        let table = CharacterTable::new(q).unwrap();
        let psi = AdditiveCharacter::standard(q);
        let conv = Convention::new(1, true, 1).unwrap();
        let k: ClassFunction<Cyclotomic> =
            kernel_on_group(&table, &WeightSet::standard(2), &psi, conv, conductor).unwrap();
        let fit = fit_std_kernel(table.classes(), &k, &psi, conductor);
        assert_eq!(fit.exact, Some(true));
        assert_eq!(fit.power_of_q(q), Some(0));
    }

    #[test]
    fn eigen_exact_q3() {
        let q = 3;
        let conductor = standard_conductor(q);
        let table = CharacterTable::new(q).unwrap();
        let alg = ClassAlgebra::new(table.classes());
        let psi = AdditiveCharacter::standard(q);
        let w = WeightSet::standard(2);
        let g = GammaTable::<IntCyclotomic>::for_gl2(&table, &w, &psi, Convention::raw(), conductor).unwrap();
        let n = kernel_numerators(&table, &g, conductor);
        assert!(EigenReport::exact_numerators(&alg, &table, &n, &g, conductor).unwrap());
    }

    #[test]
    fn eigen_property_float_q3() {
        let table = CharacterTable::new(3).unwrap();
        let alg = ClassAlgebra::new(table.classes());
        let psi = AdditiveCharacter::standard(3);
        let w = WeightSet::sym2(2);
        let conv = Convention::raw();
        let k: ClassFunction<Complex64> = kernel_on_group(&table, &w, &psi, conv, 1).unwrap();
        let g = GammaTable::<Complex64>::for_gl2(&table, &w, &psi, conv, 1).unwrap();
        let rep = EigenReport::float(&alg, &table, &k, &g).unwrap();
        assert!(rep.passes(), "{rep:?}");
    }
}
