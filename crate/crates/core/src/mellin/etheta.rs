//! Induced modules from a local algebra at one point, and the modules of the
//! canonical central local systems built from coinvariant algebras.

use alloc::format;
use alloc::vec::Vec;

use super::algebra::{coinvariant_algebra, QuotientAlgebra};
use super::checks::{check_centrality, check_descent, CentralityMode};
use super::linalg::Matrix;
use super::module::MellinModule;
use super::support::SupportPoint;
use crate::cyclotomic::Cyclotomic;
use crate::error::MellinError;
use crate::rootdata::{RootDatum, TorusCharacter};

/// `Ind_{W'_p ⋉ Λ}^{W ⋉ Λ}` of `A/J` placed at `point`: lattice vectors act
/// by `p(λ)·exp(−y_λ)` and `h ∈ W'_p` by `ε(h)·(h acting on polynomials)`,
/// with `ε` the sign character when `sign` is set.
///
/// Block `j` of the result is `w_j ⊗ A/J` for the coset representatives
/// `w_j` of `W / W'_p`, so it sits at the point `w_j·p`.
pub fn induce_local(
    rd: &RootDatum,
    point: &TorusCharacter,
    algebra: &QuotientAlgebra,
    sign: bool,
) -> Result<MellinModule, MellinError> {
    rd.check_character(point)?;
    if algebra.vars() != rd.rank() {
        return Err(MellinError::Shape(format!(
            "algebra in {} variables for rank {}",
            algebra.vars(),
            rd.rank()
        )));
    }
    let order = point.modulus();
    let weyl = rd.weyl();
    let stab = rd.stabilizers(point).full;
    for &h in &stab {
        if !algebra.ideal_stable_under(weyl.element(h)) {
            return Err(MellinError::Relation(format!("ideal not stable under element {h}")));
        }
    }
    let reps = weyl.coset_representatives(&stab);
    let k = algebra.dim();
    let n = rd.rank();
    let local_lattice = |lambda: &[i64]| -> Matrix {
        let c = Cyclotomic::root(order, point.pair(lambda) as i64);
        algebra.multiplication_by(lambda, order).neg().exp_nilpotent().scale(&c)
    };
    let local_weyl = |h: usize| -> Matrix {
        let a = algebra.action(weyl.element(h), order);
        if sign && weyl.sign(h) < 0 {
            a.neg()
        } else {
            a
        }
    };
    let lattice: Vec<Matrix> = (0..n)
        .map(|i| {
            let blocks: Vec<Matrix> = reps
                .iter()
                .map(|&w| {
                    let a = weyl.element(weyl.inverse(w));
                    let lambda: Vec<i64> = (0..n).map(|r| a.get(r, i)).collect();
                    local_lattice(&lambda)
                })
                .collect();
            Matrix::block_diagonal(&blocks, order)
        })
        .collect();
    let weyl_gens: Vec<Matrix> = weyl
        .simple_reflections()
        .iter()
        .map(|&s| {
            let mut m = Matrix::zeros(reps.len() * k, reps.len() * k, order);
            for (j, &w) in reps.iter().enumerate() {
                let sw = weyl.mul(s, w);
                let (jp, h) = reps
                    .iter()
                    .enumerate()
                    .find_map(|(jp, &wp)| {
                        let h = weyl.mul(weyl.inverse(wp), sw);
                        stab.contains(&h).then_some((jp, h))
                    })
                    .expect("cosets cover W");
                m.set_block(jp * k, j * k, &local_weyl(h));
            }
            m
        })
        .collect();
    MellinModule::new(rd.clone(), order, lattice, weyl_gens, false)
}

/// The module of `E_θ ⊗ sign` for the orbit of `chi`: the coinvariant algebra
/// of `W_χ` with its natural `W'_χ` action, placed at `χ^{-1}` and induced.
/// Read in the sign-twisted convention this is the module of `E_θ`.
pub fn build_e_theta(rd: &RootDatum, chi: &TorusCharacter, q: u32) -> Result<MellinModule, MellinError> {
    rd.check_character(chi)?;
    if q < 2 || !(q - 1).is_multiple_of(chi.modulus()) {
        return Err(MellinError::CharacterOrder {
            modulus: chi.modulus(),
            q,
        });
    }
    let stab = rd.stabilizers(chi);
    let algebra = coinvariant_algebra(rd.weyl(), &stab.reflection)?;
    induce_local(rd, &chi.inverse(), &algebra, false)
}

/// Everything checked about one `E_θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EThetaReport {
    pub character: TorusCharacter,
    pub dim: usize,
    /// `[W : W'_χ]·|W_χ|`.
    pub expected_dim: usize,
    pub reflection_stabilizer: usize,
    pub full_stabilizer: usize,
    /// Support with multiplicities, sorted.
    pub support: Vec<(TorusCharacter, usize)>,
    /// The orbit of `χ^{-1}`, each point with multiplicity `|W_χ|`.
    pub support_matches: bool,
    pub stabilizer_isomorphisms: bool,
    pub central: bool,
    pub strongly_central: bool,
    pub descent: bool,
    /// Annihilator equals the translated invariant ideal at every point.
    pub annihilator_matches: bool,
}

impl EThetaReport {
    /// Everything required of every `E_θ`; strong centrality is recorded but
    /// not required, since it fails when `W_χ ≠ W'_χ`.
    pub fn passes(&self) -> bool {
        self.dim == self.expected_dim
            && self.support_matches
            && self.stabilizer_isomorphisms
            && self.central
            && self.descent
            && self.annihilator_matches
    }
}

pub fn verify_e_theta(rd: &RootDatum, chi: &TorusCharacter, q: u32) -> Result<EThetaReport, MellinError> {
    let m = build_e_theta(rd, chi, q)?;
    let stab = rd.stabilizers(chi);
    let w = rd.weyl().order();
    let expected_dim = w / stab.full.len() * stab.reflection.len();
    let support = m.support()?;
    let mut expected: Vec<(TorusCharacter, usize)> = rd
        .orbit(&chi.inverse())
        .into_iter()
        .map(|p| (p, stab.reflection.len()))
        .collect();
    expected.sort();
    let mut stabilizer_isomorphisms = true;
    for (p, _) in &support {
        stabilizer_isomorphisms &= SupportPoint::new(rd, p)?.check_isomorphism(rd).is_ok();
    }
    let descent = check_descent(&m)?;
    Ok(EThetaReport {
        character: chi.clone(),
        dim: m.dim(),
        expected_dim,
        reflection_stabilizer: stab.reflection.len(),
        full_stabilizer: stab.full.len(),
        support_matches: support == expected,
        support,
        stabilizer_isomorphisms,
        central: check_centrality(&m, CentralityMode::Central)?.passes(),
        strongly_central: check_centrality(&m, CentralityMode::StronglyCentral)?.passes(),
        descent: descent.passes(),
        annihilator_matches: descent.points.iter().all(|p| p.annihilator_matches()),
    })
}
