//! Random small modules: induced point blocks `(A/J) ⊗ ε`, direct sums of
//! them, changes of basis and sign twists.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::algebra::{Poly, QuotientAlgebra};
use super::etheta::induce_local;
use super::linalg::Matrix;
use super::module::MellinModule;
use crate::error::MellinError;
use crate::rootdata::{Preset, RootDatum, TorusCharacter};

/// Upper bound on module dimension.
pub const MAX_DIM: usize = 6;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub module: MellinModule,
}

/// Local ideals of finite colength, named for labels.
pub fn local_ideals(rank: usize) -> Vec<(&'static str, Vec<Poly>)> {
    let y = |i| Poly::var(rank, i);
    match rank {
        1 => alloc::vec![
            ("y", alloc::vec![y(0)]),
            ("y^2", alloc::vec![y(0).pow(2)]),
            ("y^3", alloc::vec![y(0).pow(3)]),
        ],
        2 => {
            let plus = Poly::linear(&[1, 1]);
            let minus = Poly::linear(&[1, -1]);
            alloc::vec![
                ("m", alloc::vec![y(0), y(1)]),
                ("m^2", alloc::vec![y(0).pow(2), y(0).mul(&y(1)), y(1).pow(2)]),
                ("coinv", alloc::vec![plus.clone(), y(0).mul(&y(1))]),
                ("diag^2", alloc::vec![minus, plus.pow(2)]),
                ("y1,y2^2", alloc::vec![y(0), y(1).pow(2)]),
            ]
        }
        _ => Vec::new(),
    }
}

/// One induced block at a random point, or `None` when the draw is too big
/// or the ideal is not stable under the stabilizer.
pub fn random_block<R: Rng + ?Sized>(
    rd: &RootDatum,
    order: u32,
    max_dim: usize,
    rng: &mut R,
) -> Result<Option<CorpusEntry>, MellinError> {
    let points = rd.all_characters(order);
    let point = points.choose(rng).expect("at least one character").clone();
    let ideals = local_ideals(rd.rank());
    let (name, gens) = ideals.choose(rng).expect("rank has ideals");
    let algebra = QuotientAlgebra::new(rd.rank(), gens.clone())?;
    let stab = rd.stabilizers(&point).full;
    let weyl = rd.weyl();
    if !stab.iter().all(|&h| algebra.ideal_stable_under(weyl.element(h))) {
        return Ok(None);
    }
    if weyl.order() / stab.len() * algebra.dim() > max_dim {
        return Ok(None);
    }
    let sign = rng.gen_bool(0.5);
    let module = induce_local(rd, &point, &algebra, sign)?;
    let label = format!("[{}:{}{}]", point, name, if sign { ":sign" } else { "" });
    Ok(Some(CorpusEntry { label, module }))
}

/// Unimodular integer matrix: a product of a few elementary moves.
pub fn random_unimodular<R: Rng + ?Sized>(k: usize, order: u32, rng: &mut R) -> Matrix {
    let mut p = Matrix::identity(k, order);
    if k < 2 {
        return p;
    }
    for _ in 0..k {
        let i = rng.gen_range(0..k);
        let mut j = rng.gen_range(0..k - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = Matrix::identity(k, order);
        e.set(i, j, crate::cyclotomic::Cyclotomic::from_int(order, c));
        p = p.mul(&e);
    }
    p
}

/// A direct sum of one or two random blocks, conjugated and maybe twisted.
pub fn random_module<R: Rng + ?Sized>(
    rd: &RootDatum,
    order: u32,
    rng: &mut R,
) -> Result<CorpusEntry, MellinError> {
    loop {
        let Some(first) = random_block(rd, order, MAX_DIM, rng)? else {
            continue;
        };
        let mut entry = first;
        if rng.gen_bool(0.4) {
            let room = MAX_DIM - entry.module.dim();
            if room > 0 {
                if let Some(second) = random_block(rd, order, room, rng)? {
                    entry = CorpusEntry {
                        label: format!("{}+{}", entry.label, second.label),
                        module: entry.module.direct_sum(&second.module)?,
                    };
                }
            }
        }
        let p = random_unimodular(entry.module.dim(), order, rng);
        let mut module = entry.module.conjugate(&p)?;
        let mut label = format!("{} {}", rd.preset().name(), entry.label);
        if rng.gen_bool(0.25) {
            module = module.twist();
            label.push_str(" twisted");
        }
        return Ok(CorpusEntry { label, module });
    }
}

/// `per_case` modules for every preset and order, in a reproducible order.
pub fn generate_corpus<R: Rng + ?Sized>(
    presets: &[Preset],
    orders: &[u32],
    per_case: usize,
    rng: &mut R,
) -> Result<Vec<CorpusEntry>, MellinError> {
    let mut out = Vec::new();
    for &preset in presets {
        let rd = RootDatum::new(preset);
        for &order in orders {
            for _ in 0..per_case {
                out.push(random_module(&rd, order, rng)?);
            }
        }
    }
    Ok(out)
}

/// Orbit representatives of characters of the given order: the least
/// element of each orbit.
pub fn orbit_representatives(rd: &RootDatum, order: u32) -> Vec<TorusCharacter> {
    let mut reps: Vec<TorusCharacter> = rd
        .all_characters(order)
        .into_iter()
        .filter(|chi| rd.orbit(chi).iter().all(|o| o >= chi))
        .collect();
    reps.sort();
    reps
}
