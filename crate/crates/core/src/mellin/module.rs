//! Finite-dimensional modules over `W ⋉ Λ`, their support and Koszul fibers.

use alloc::format;
use alloc::vec::Vec;

use super::linalg::{restrict, Matrix, Subquotient};
use crate::cyclotomic::Cyclotomic;
use crate::error::MellinError;
use crate::rootdata::{IntMatrix, RootDatum, TorusCharacter};

/// Lattice generators `X_1, …, X_n` (for the cocharacter basis) and Weyl
/// generators `ω(s)` (one per simple reflection) over `Q(ζ_m)`.
///
/// With `sign_twist` set, every `ω(s)` is used with an extra factor `−1`.
#[derive(Clone, Debug)]
pub struct MellinModule {
    rd: RootDatum,
    order: u32,
    dim: usize,
    lattice: Vec<Matrix>,
    weyl: Vec<Matrix>,
    sign_twist: bool,
}

impl MellinModule {
    /// Builds and validates a module; eigenvalues of the lattice action must
    /// be `order`-th roots of unity.
    pub fn new(
        rd: RootDatum,
        order: u32,
        lattice: Vec<Matrix>,
        weyl: Vec<Matrix>,
        sign_twist: bool,
    ) -> Result<Self, MellinError> {
        let dim = lattice.first().map_or(0, |m| m.rows());
        let m = Self {
            rd,
            order,
            dim,
            lattice,
            weyl,
            sign_twist,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn conductor(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rd.rank()
    }

    pub fn lattice(&self) -> &[Matrix] {
        &self.lattice
    }

    /// Stored Weyl generators, before the sign twist.
    pub fn weyl_generators(&self) -> &[Matrix] {
        &self.weyl
    }

    pub fn sign_twist(&self) -> bool {
        self.sign_twist
    }

    /// The same module tensored with the sign character.
    pub fn twist(&self) -> Self {
        Self {
            sign_twist: !self.sign_twist,
            ..self.clone()
        }
    }

    /// `ω(s_k)` including the sign twist.
    pub fn simple_action(&self, k: usize) -> Matrix {
        if self.sign_twist {
            self.weyl[k].neg()
        } else {
            self.weyl[k].clone()
        }
    }

    /// `ω(w)` for a Weyl element index.
    pub fn weyl_action(&self, w: usize) -> Matrix {
        let mut acc = Matrix::identity(self.dim, self.order);
        for &k in self.rd.weyl().word(w) {
            acc = acc.mul(&self.simple_action(k));
        }
        acc
    }

    /// `X_λ = Π X_i^{λ_i}`.
    pub fn lattice_action(&self, lambda: &[i64]) -> Result<Matrix, MellinError> {
        let mut acc = Matrix::identity(self.dim, self.order);
        for (i, &l) in lambda.iter().enumerate() {
            if l == 0 {
                continue;
            }
            let base = if l > 0 {
                self.lattice[i].clone()
            } else {
                self.lattice[i]
                    .inverse()
                    .ok_or_else(|| MellinError::NotInvertible(format!("X_{}", i + 1)))?
            };
            acc = acc.mul(&base.pow(l.unsigned_abs() as u32));
        }
        Ok(acc)
    }

    /// Exact check of the defining relations of `W ⋉ Λ`.
    pub fn validate(&self) -> Result<(), MellinError> {
        let n = self.rd.rank();
        let simple = self.rd.weyl().simple_reflections();
        if self.lattice.len() != n {
            return Err(MellinError::Shape(format!(
                "{} lattice generators for rank {n}",
                self.lattice.len()
            )));
        }
        if self.weyl.len() != simple.len() {
            return Err(MellinError::Shape(format!(
                "{} Weyl generators for {} simple reflections",
                self.weyl.len(),
                simple.len()
            )));
        }
        for m in self.lattice.iter().chain(&self.weyl) {
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(MellinError::Shape(format!("expected {0}x{0} matrices", self.dim)));
            }
        }
        let mut inverses = Vec::new();
        for (i, x) in self.lattice.iter().enumerate() {
            inverses.push(x.inverse().ok_or_else(|| MellinError::NotInvertible(format!("X_{}", i + 1)))?);
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.lattice[i].mul(&self.lattice[j]) != self.lattice[j].mul(&self.lattice[i]) {
                    return Err(MellinError::NonCommuting(i + 1, j + 1));
                }
            }
        }
        let weyl = self.rd.weyl();
        for (k, &s) in simple.iter().enumerate() {
            let om = self.simple_action(k);
            let om_inv = om
                .inverse()
                .ok_or_else(|| MellinError::NotInvertible(format!("ω(s_{})", k + 1)))?;
            let a = weyl.element(s);
            for i in 0..n {
                let image: Vec<i64> = (0..n).map(|r| a.get(r, i)).collect();
                let lhs = om.mul(&self.lattice[i]).mul(&om_inv);
                if lhs != self.lattice_action(&image)? {
                    return Err(MellinError::Relation(format!(
                        "ω(s_{}) X_{} ω(s_{})^-1 ≠ X_(s e_{})",
                        k + 1,
                        i + 1,
                        k + 1,
                        i + 1
                    )));
                }
            }
        }
        for (k, &s) in simple.iter().enumerate() {
            for (l, &t) in simple.iter().enumerate() {
                let m = weyl.element_order(weyl.mul(s, t));
                let prod = self.simple_action(k).mul(&self.simple_action(l));
                if !prod.pow(m as u32).is_identity() {
                    return Err(MellinError::Relation(format!(
                        "(ω(s_{})ω(s_{}))^{m} ≠ 1",
                        k + 1,
                        l + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, MellinError> {
        self.check_compatible(other)?;
        let c = self.order;
        // the sign twist is baked into the Weyl matrices of both summands
        let lattice = self
            .lattice
            .iter()
            .zip(&other.lattice)
            .map(|(a, b)| Matrix::block_diagonal(&[a.clone(), b.clone()], c))
            .collect();
        let weyl = (0..self.weyl.len())
            .map(|k| Matrix::block_diagonal(&[self.simple_action(k), other.simple_action(k)], c))
            .collect();
        Self::new(self.rd.clone(), c, lattice, weyl, false)
    }

    /// The module transported along `p`: every operator `T ↦ p T p^{-1}`.
    pub fn conjugate(&self, p: &Matrix) -> Result<Self, MellinError> {
        let inv = p
            .inverse()
            .ok_or_else(|| MellinError::NotInvertible("change of basis".into()))?;
        let tr = |m: &Matrix| p.mul(m).mul(&inv);
        Self::new(
            self.rd.clone(),
            self.order,
            self.lattice.iter().map(tr).collect(),
            self.weyl.iter().map(tr).collect(),
            self.sign_twist,
        )
    }

    /// Tensor product over the field, with diagonal actions.
    pub fn tensor(&self, other: &Self) -> Result<Self, MellinError> {
        self.check_compatible(other)?;
        let lattice = self
            .lattice
            .iter()
            .zip(&other.lattice)
            .map(|(a, b)| a.kron(b))
            .collect();
        let weyl = (0..self.weyl.len())
            .map(|k| self.simple_action(k).kron(&other.simple_action(k)))
            .collect();
        Self::new(self.rd.clone(), self.order, lattice, weyl, false)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), MellinError> {
        if self.rd.preset() != other.rd.preset() || self.order != other.order {
            return Err(MellinError::Shape("modules over different groups or orders".into()));
        }
        Ok(())
    }

    /// Simultaneous generalized eigenspaces, keyed by the exponent vector of
    /// the eigenvalues `ζ_m^{e_i}` of `X_i`, in increasing order.
    pub fn generalized_eigenspaces(&self) -> Result<Vec<(TorusCharacter, Matrix)>, MellinError> {
        let n = self.rd.rank();
        let mut found: Vec<(Vec<i64>, Matrix)> = Vec::new();
        let mut stack = alloc::vec![(Vec::<i64>::new(), Matrix::identity(self.dim, self.order))];
        while let Some((prefix, basis)) = stack.pop() {
            if basis.cols() == 0 {
                continue;
            }
            if prefix.len() == n {
                found.push((prefix, basis));
                continue;
            }
            let i = prefix.len();
            let local = restrict(&self.lattice[i], &basis).expect("invariant subspace");
            let k = local.rows();
            for e in 0..self.order as i64 {
                let shifted = local.sub(&Matrix::scalar(k, &Cyclotomic::root(self.order, e)));
                let ker = shifted.pow(k as u32).kernel();
                if ker.cols() > 0 {
                    let mut next = prefix.clone();
                    next.push(e);
                    stack.push((next, basis.mul(&ker)));
                }
            }
        }
        let total: usize = found.iter().map(|(_, b)| b.cols()).sum();
        if total != self.dim {
            return Err(MellinError::Spectrum(self.order));
        }
        let mut out: Vec<(TorusCharacter, Matrix)> = found
            .into_iter()
            .map(|(e, b)| (TorusCharacter::new(self.order, &e).expect("positive order"), b))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Support points with multiplicities.
    pub fn support(&self) -> Result<Vec<(TorusCharacter, usize)>, MellinError> {
        Ok(self
            .generalized_eigenspaces()?
            .into_iter()
            .map(|(p, b)| (p, b.cols()))
            .collect())
    }

    /// Generalized eigenspace at `point` with the logarithms
    /// `N_i = log(χ'(e_i)^{-1} X_i)` of the restricted lattice action.
    pub fn local_data(&self, point: &TorusCharacter) -> Result<LocalData, MellinError> {
        self.rd.check_character(point)?;
        if point.modulus() != self.order {
            return Err(MellinError::Shape("point has the wrong order".into()));
        }
        let n = self.rd.rank();
        let eigenvalues: Vec<Cyclotomic> = point
            .exponents()
            .iter()
            .map(|&e| Cyclotomic::root(self.order, e as i64))
            .collect();
        let basis = joint_generalized_eigenspace(&self.lattice, &eigenvalues, self.order);
        let k = basis.cols();
        let nilpotents = if k == 0 {
            (0..n).map(|_| Matrix::zeros(0, 0, self.order)).collect()
        } else {
            (0..n)
                .map(|i| {
                    let c_inv = Cyclotomic::root(self.order, -(point.exponents()[i] as i64));
                    restrict(&self.lattice[i], &basis)
                        .expect("invariant subspace")
                        .scale(&c_inv)
                        .log_unipotent()
                })
                .collect()
        };
        Ok(LocalData {
            point: point.clone(),
            basis,
            nilpotents,
        })
    }

    /// `ω(w)` restricted to the generalized eigenspace of a point it fixes.
    pub fn local_weyl_action(&self, local: &LocalData, w: usize) -> Matrix {
        restrict(&self.weyl_action(w), &local.basis).expect("stabilizer preserves the eigenspace")
    }

    /// Koszul homology at `point`; `group` elements act by
    /// `∧^p(w) ⊗ ω(w)`. Every element must fix the point.
    pub fn koszul_fibers(&self, point: &TorusCharacter, group: &[usize]) -> Result<KoszulFibers, MellinError> {
        let local = self.local_data(point)?;
        for &w in group {
            if self.rd.act(w, point) != *point {
                return Err(MellinError::Shape(format!("Weyl element {w} moves the point {point}")));
            }
        }
        let weyl = self.rd.weyl();
        let ops: Vec<(IntMatrix, Matrix)> = if local.dim() == 0 {
            Vec::new()
        } else {
            group
                .iter()
                .map(|&w| (weyl.element(w).clone(), self.local_weyl_action(&local, w)))
                .collect()
        };
        let homology = koszul_homology(self.rd.rank(), &local.nilpotents, local.dim(), &ops, self.order);
        Ok(KoszulFibers {
            point: point.clone(),
            group: group.to_vec(),
            homology,
        })
    }
}

/// Columns spanning `{v : (X_i − c_i)^N v = 0 for all i}` for commuting `X_i`.
pub fn joint_generalized_eigenspace(ops: &[Matrix], eigenvalues: &[Cyclotomic], conductor: u32) -> Matrix {
    let dim = ops.first().map_or(0, Matrix::rows);
    let mut basis = Matrix::identity(dim, conductor);
    for (op, c) in ops.iter().zip(eigenvalues) {
        if basis.cols() == 0 {
            break;
        }
        let local = restrict(op, &basis).expect("invariant subspace");
        let k = local.rows();
        let ker = local.sub(&Matrix::scalar(k, c)).pow(k as u32).kernel();
        basis = basis.mul(&ker);
    }
    basis
}

/// The generalized eigenspace at a point and the nilpotent logarithms there.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub point: TorusCharacter,
    /// Columns spanning the eigenspace.
    pub basis: Matrix,
    pub nilpotents: Vec<Matrix>,
}

impl LocalData {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

/// One homology group with the induced operators, in the order given.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub dim: usize,
    pub operators: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct KoszulFibers {
    pub point: TorusCharacter,
    pub group: Vec<usize>,
    /// `H_0, …, H_n`.
    pub homology: Vec<HomologyGroup>,
}

impl KoszulFibers {
    pub fn dims(&self) -> Vec<usize> {
        self.homology.iter().map(|h| h.dim).collect()
    }

    pub fn h0(&self) -> &HomologyGroup {
        &self.homology[0]
    }

    pub fn h1(&self) -> &HomologyGroup {
        &self.homology[1]
    }

    /// `Σ (−1)^p dim H_p`.
    pub fn euler_characteristic(&self) -> i64 {
        self.homology
            .iter()
            .enumerate()
            .map(|(p, h)| if p % 2 == 0 { h.dim as i64 } else { -(h.dim as i64) })
            .sum()
    }

    /// Group elements acting nontrivially on `H_p`, for each degree `p` listed.
    pub fn nontrivial_actions(&self, degrees: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &p in degrees {
            let Some(h) = self.homology.get(p) else {
                continue;
            };
            for (op, &w) in h.operators.iter().zip(&self.group) {
                if !op.is_identity() {
                    out.push((p, w));
                }
            }
        }
        out
    }
}

/// Size-`p` subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

fn minor(a: &IntMatrix, rows: &[usize], cols: &[usize]) -> i64 {
    match rows.len() {
        0 => 1,
        1 => a.get(rows[0], cols[0]),
        _ => {
            // expansion along the first row
            let mut acc = 0;
            for (j, _) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> = cols.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &c)| c).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * a.get(rows[0], cols[j]) * minor(a, &rows[1..], &sub_cols);
            }
            acc
        }
    }
}

/// `∧^p a` on the lexicographic basis `e_I`.
pub fn exterior_power(a: &IntMatrix, p: usize, conductor: u32) -> Matrix {
    let s = subsets(a.dim(), p);
    Matrix::from_fn(s.len(), s.len(), conductor, |j, i| {
        Cyclotomic::from_int(conductor, minor(a, &s[j], &s[i]))
    })
}

/// Homology of `K_p = ∧^p Q^n ⊗ V` with
/// `d(e_I ⊗ v) = Σ_j (−1)^j e_{I∖i_j} ⊗ N_{i_j} v`, together with the maps
/// induced by `∧^p a ⊗ t` for each `(a, t)` in `ops`.
pub fn koszul_homology(
    n: usize,
    nilpotents: &[Matrix],
    k: usize,
    ops: &[(IntMatrix, Matrix)],
    conductor: u32,
) -> Vec<HomologyGroup> {
    let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| subsets(n, p)).collect();
    let differential = |p: usize| -> Matrix {
        // K_p → K_{p−1}
        let src = &bases[p];
        let dst = &bases[p - 1];
        let mut d = Matrix::zeros(dst.len() * k, src.len() * k, conductor);
        for (a, set) in src.iter().enumerate() {
            for (j, &i) in set.iter().enumerate() {
                let rest: Vec<usize> = set.iter().copied().filter(|&x| x != i).collect();
                let b = dst.iter().position(|s| *s == rest).expect("subset");
                let block = if j % 2 == 0 {
                    nilpotents[i].clone()
                } else {
                    nilpotents[i].neg()
                };
                d.set_block(b * k, a * k, &block);
            }
        }
        d
    };
    let diffs: Vec<Matrix> = (1..=n).map(differential).collect();
    (0..=n)
        .map(|p| {
            let size = bases[p].len() * k;
            let cycles = if p == 0 {
                Matrix::identity(size, conductor)
            } else {
                diffs[p - 1].kernel()
            };
            let boundaries = if p == n {
                Matrix::zeros(size, 0, conductor)
            } else {
                diffs[p].clone()
            };
            let sq = Subquotient::new(size, &boundaries, &cycles, conductor);
            let operators = ops
                .iter()
                .map(|(a, t)| {
                    let full = exterior_power(a, p, conductor).kron(t);
                    sq.induced(&full).expect("operator preserves cycles and boundaries")
                })
                .collect();
            HomologyGroup {
                dim: sq.dim(),
                operators,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Preset;

    fn jordan_sl2(order: u32) -> MellinModule {
        // X = [[1, 1], [0, 1]], s acts by diag(−1, 1)
        let x = Matrix::from_ints(2, 2, order, &[1, 1, 0, 1]);
        let s = Matrix::from_ints(2, 2, order, &[-1, 0, 0, 1]);
        MellinModule::new(RootDatum::new(Preset::Sl2), order, alloc::vec![x], alloc::vec![s], false).unwrap()
    }

    #[test]
    fn relations_are_enforced() {
        let x = Matrix::from_ints(2, 2, 4, &[1, 1, 0, 1]);
        let s = Matrix::identity(2, 4);
        let err = MellinModule::new(RootDatum::new(Preset::Sl2), 4, alloc::vec![x], alloc::vec![s], false);
        assert!(matches!(err, Err(MellinError::Relation(_))));
    }

    #[test]
    fn jordan_block_fibers() {
        let m = jordan_sl2(4);
        let support = m.support().unwrap();
        assert_eq!(support.len(), 1);
        assert_eq!(support[0].1, 2);
        let f = m.koszul_fibers(&support[0].0, &[0, 1]).unwrap();
        assert_eq!(f.dims(), alloc::vec![1, 1]);
        assert_eq!(f.euler_characteristic(), 0);
        assert!(f.nontrivial_actions(&[0, 1]).is_empty());
        let g = m.twist().koszul_fibers(&support[0].0, &[0, 1]).unwrap();
        assert_eq!(g.nontrivial_actions(&[0, 1]), alloc::vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn out_of_support_fibers_vanish() {
        let m = jordan_sl2(4);
        let far = TorusCharacter::new(4, &[2]).unwrap();
        let f = m.koszul_fibers(&far, &[0, 1]).unwrap();
        assert_eq!(f.dims(), alloc::vec![0, 0]);
    }

    #[test]
    fn exterior_powers_of_swap() {
        let rd = RootDatum::new(Preset::Gl2);
        let s = rd.weyl().element(rd.weyl().simple_reflections()[0]);
        assert_eq!(exterior_power(s, 2, 1), Matrix::from_ints(1, 1, 1, &[-1]));
        assert_eq!(exterior_power(s, 0, 1), Matrix::identity(1, 1));
    }

    #[test]
    fn tensor_support_is_pairwise_products() {
        let rd = RootDatum::new(Preset::Gl1);
        let a = MellinModule::new(
            rd.clone(),
            6,
            alloc::vec![Matrix::block_diagonal(
                &[Matrix::scalar(1, &Cyclotomic::root(6, 1)), Matrix::scalar(1, &Cyclotomic::root(6, 2))],
                6
            )],
            Vec::new(),
            false,
        )
        .unwrap();
        let b = MellinModule::new(rd, 6, alloc::vec![Matrix::scalar(1, &Cyclotomic::root(6, 3))], Vec::new(), false)
            .unwrap();
        let t = a.tensor(&b).unwrap();
        let pts: Vec<u32> = t.support().unwrap().iter().map(|(p, _)| p.exponents()[0]).collect();
        assert_eq!(pts, alloc::vec![4, 5]);
    }
}
