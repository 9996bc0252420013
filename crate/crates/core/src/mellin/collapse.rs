//! Derived tensor products over the lattice group algebra, and the collapse
//! of a strongly central module against `E_θ ⊗ sign`.

use alloc::vec::Vec;

use super::algebra::coinvariant_algebra;
use super::checks::{check_centrality, CentralityMode, Violation};
use super::etheta::build_e_theta;
use super::linalg::{restrict, Matrix};
use super::module::{joint_generalized_eigenspace, koszul_homology, MellinModule};
use crate::cyclotomic::Cyclotomic;
use crate::error::MellinError;
use crate::rootdata::{IntMatrix, TorusCharacter};

/// `Tor_k^{Q[Λ]}(M, N)` for `k = 0, …, n`, each a `W ⋉ Λ`-module: lattice
/// vectors act through `M`, and `s` by `∧^k s ⊗ ω_M(s) ⊗ ω_N(s)`.
pub fn tor_modules(m: &MellinModule, other: &MellinModule) -> Result<Vec<MellinModule>, MellinError> {
    if m.root_datum().preset() != other.root_datum().preset() || m.order() != other.order() {
        return Err(MellinError::Shape("modules over different groups or orders".into()));
    }
    let rd = m.root_datum();
    let c = m.order();
    let n = rd.rank();
    let id_n = Matrix::identity(other.dim(), c);
    let mut diagonal = Vec::new();
    for (xm, xn) in m.lattice().iter().zip(other.lattice()) {
        let inv = xn
            .inverse()
            .ok_or_else(|| MellinError::NotInvertible("lattice generator".into()))?;
        diagonal.push(xm.kron(&inv));
    }
    let ones: Vec<Cyclotomic> = (0..n).map(|_| Cyclotomic::one(c)).collect();
    let basis = joint_generalized_eigenspace(&diagonal, &ones, c);
    let k = basis.cols();
    if k == 0 {
        let zero = Matrix::zeros(0, 0, c);
        return (0..=n)
            .map(|_| {
                MellinModule::new(
                    rd.clone(),
                    c,
                    (0..n).map(|_| zero.clone()).collect(),
                    rd.weyl().simple_reflections().iter().map(|_| zero.clone()).collect(),
                    false,
                )
            })
            .collect();
    }
    let local = |op: &Matrix| restrict(op, &basis).expect("commutes with the diagonal action");
    let logs: Vec<Matrix> = diagonal.iter().map(|z| local(z).log_unipotent()).collect();
    let mut ops: Vec<(IntMatrix, Matrix)> = Vec::new();
    for x in m.lattice() {
        ops.push((IntMatrix::identity(n), local(&x.kron(&id_n))));
    }
    let weyl = rd.weyl();
    for (i, &s) in weyl.simple_reflections().iter().enumerate() {
        ops.push((weyl.element(s).clone(), local(&m.simple_action(i).kron(&other.simple_action(i)))));
    }
    koszul_homology(n, &logs, k, &ops, c)
        .into_iter()
        .map(|h| {
            let (lattice, weyl_gens) = h.operators.split_at(n);
            MellinModule::new(rd.clone(), c, lattice.to_vec(), weyl_gens.to_vec(), false)
        })
        .collect()
}

/// Outcome in one homological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCollapse {
    pub degree: usize,
    pub tor_dim: usize,
    /// Koszul `H_degree` of the module at `χ^{-1}`.
    pub fiber_dim: usize,
    /// An explicit intertwiner `E_θ^{⊕ fiber_dim} → Tor_degree` was found
    /// and verified.
    pub isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseReport {
    pub character: TorusCharacter,
    /// Strong-centrality violations of the input; nonempty means the
    /// precondition failed and nothing else was computed.
    pub precondition_violations: Vec<Violation>,
    pub degrees: Vec<DegreeCollapse>,
}

impl CollapseReport {
    pub fn precondition_holds(&self) -> bool {
        self.precondition_violations.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.precondition_holds() && self.degrees.iter().all(|d| d.isomorphic)
    }

    /// Total fiber dimension `Σ_k dim H_k`.
    pub fn fiber_dim(&self) -> usize {
        self.degrees.iter().map(|d| d.fiber_dim).sum()
    }
}

/// For `F` (read in the sign-twisted convention) strongly central, checks
/// `Tor_k(M(F), M(E_θ ⊗ sign)) ≅ H_k(F at χ^{-1}) ⊗ M(E_θ)` degree by
/// degree, with explicit intertwiners.
pub fn tensor_and_collapse(f: &MellinModule, chi: &TorusCharacter, q: u32) -> Result<CollapseReport, MellinError> {
    let strong = check_centrality(f, CentralityMode::StronglyCentral)?;
    if !strong.passes() {
        return Ok(CollapseReport {
            character: chi.clone(),
            precondition_violations: strong.violations,
            degrees: Vec::new(),
        });
    }
    if chi.modulus() != f.order() {
        return Err(MellinError::Shape("character order differs from the module order".into()));
    }
    let rd = f.root_datum();
    let e = build_e_theta(rd, chi, q)?;
    let target = e.twist();
    let fibers = f.koszul_fibers(&chi.inverse(), &[])?;
    let tor = tor_modules(&f.twist(), &e)?;
    let mut degrees = Vec::new();
    for (degree, (b, h)) in tor.iter().zip(&fibers.homology).enumerate() {
        degrees.push(DegreeCollapse {
            degree,
            tor_dim: b.dim(),
            fiber_dim: h.dim,
            isomorphic: copies_intertwiner(b, &target, chi, h.dim)?.is_some(),
        });
    }
    Ok(CollapseReport {
        character: chi.clone(),
        precondition_violations: Vec::new(),
        degrees,
    })
}

/// An isomorphism `target^{⊕ copies} → b`, built from generators of `b` at
/// `χ^{-1}` that are killed by the invariants and transform by the sign of
/// `W'_χ`, then verified. `target` must be `build_e_theta(χ).twist()`.
fn copies_intertwiner(
    b: &MellinModule,
    target: &MellinModule,
    chi: &TorusCharacter,
    copies: usize,
) -> Result<Option<Matrix>, MellinError> {
    if b.dim() != copies * target.dim() {
        return Ok(None);
    }
    if copies == 0 {
        return Ok(Some(Matrix::zeros(0, 0, b.order())));
    }
    let rd = b.root_datum();
    let weyl = rd.weyl();
    let c = b.order();
    let point = chi.inverse();
    let stab = rd.stabilizers(chi);
    let algebra = coinvariant_algebra(weyl, &stab.reflection)?;
    let local = b.local_data(&point)?;
    let k = local.dim();
    let mut conditions: Vec<Matrix> = algebra
        .generators()
        .iter()
        .map(|p| p.evaluate(&local.nilpotents))
        .collect();
    for &h in &stab.full {
        let sign = Matrix::scalar(k, &Cyclotomic::from_int(c, weyl.sign(h)));
        conditions.push(b.local_weyl_action(&local, h).sub(&sign));
    }
    let refs: Vec<&Matrix> = conditions.iter().collect();
    let generators = Matrix::vstack(&refs, k, c).kernel();
    if generators.cols() != copies {
        return Ok(None);
    }
    let minus_n: Vec<Matrix> = local.nilpotents.iter().map(Matrix::neg).collect();
    let monomial = |alpha: &[u32]| -> Matrix {
        let mut acc = Matrix::identity(k, c);
        for (n, &a) in minus_n.iter().zip(alpha) {
            acc = acc.mul(&n.pow(a));
        }
        acc
    };
    let reps = weyl.coset_representatives(&stab.full);
    let mut columns = Vec::new();
    for i in 0..copies {
        let g = generators.select_columns(&[i]);
        for &w in &reps {
            let sign = Cyclotomic::from_int(c, weyl.sign(w));
            let transport = b.weyl_action(w).mul(&local.basis).scale(&sign);
            for alpha in algebra.basis() {
                columns.push(transport.mul(&monomial(alpha)).mul(&g));
            }
        }
    }
    let refs: Vec<&Matrix> = columns.iter().collect();
    let t = Matrix::hstack(&refs, b.dim(), c);
    let mut source = target.clone();
    for _ in 1..copies {
        source = source.direct_sum(target)?;
    }
    Ok(is_intertwiner(&t, &source, b).then_some(t))
}

/// `t` is invertible and `t·op_a = op_b·t` for every generator.
pub fn is_intertwiner(t: &Matrix, a: &MellinModule, b: &MellinModule) -> bool {
    if t.rows() != b.dim() || t.cols() != a.dim() || t.inverse().is_none() {
        return false;
    }
    let lattice = a.lattice().iter().zip(b.lattice()).all(|(x, y)| t.mul(x) == y.mul(t));
    lattice && (0..a.weyl_generators().len()).all(|i| t.mul(&a.simple_action(i)) == b.simple_action(i).mul(t))
}

/// Basis of `Hom_{W ⋉ Λ}(a, b)`, each element a `dim b × dim a` matrix.
pub fn hom_space(a: &MellinModule, b: &MellinModule) -> Vec<Matrix> {
    let (da, db) = (a.dim(), b.dim());
    let c = a.order();
    let mut pairs: Vec<(Matrix, Matrix)> = a.lattice().iter().cloned().zip(b.lattice().iter().cloned()).collect();
    for i in 0..a.weyl_generators().len() {
        pairs.push((a.simple_action(i), b.simple_action(i)));
    }
    // unknown t_{rc} at index r·da + c; rows encode (t·x − y·t)_{rc}
    let mut blocks = Vec::new();
    for (x, y) in &pairs {
        let mut eq = Matrix::zeros(db * da, db * da, c);
        for r in 0..db {
            for col in 0..da {
                let row = r * da + col;
                for t in 0..da {
                    let v = eq.get(row, r * da + t).add_ref(x.get(t, col));
                    eq.set(row, r * da + t, v);
                }
                for t in 0..db {
                    let v = eq.get(row, t * da + col).sub_ref(y.get(r, t));
                    eq.set(row, t * da + col, v);
                }
            }
        }
        blocks.push(eq);
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let kernel = Matrix::vstack(&refs, db * da, c).kernel();
    (0..kernel.cols())
        .map(|j| Matrix::from_fn(db, da, c, |r, col| kernel.get(r * da + col, j).clone()))
        .collect()
}

/// Tries for an invertible element of `Hom(a, b)`: basis elements first,
/// then fixed pseudo-random integer combinations. `None` means no
/// isomorphism was found, which is conclusive only when `Hom` is empty or
/// the dimensions differ.
pub fn find_isomorphism(a: &MellinModule, b: &MellinModule) -> Option<Matrix> {
    if a.dim() != b.dim() {
        return None;
    }
    let basis = hom_space(a, b);
    if let Some(t) = basis.iter().find(|t| t.inverse().is_some()) {
        return Some(t.clone());
    }
    let c = a.order();
    for trial in 1..=COMBINATION_TRIALS {
        let mut t = Matrix::zeros(b.dim(), a.dim(), c);
        for (i, h) in basis.iter().enumerate() {
            let coeff = 1 + ((trial * 31 + i * 17 + trial * i * 7) % 61) as i64;
            t = t.add(&h.scale(&Cyclotomic::from_int(c, coeff)));
        }
        if t.inverse().is_some() {
            return Some(t);
        }
    }
    None
}

const COMBINATION_TRIALS: usize = 32;
