//! `bkk gamma`: the γ-table keyed by Deligne–Lusztig datum and by irreducible.

use bkk_core::cyclotomic::{Cyclotomic, IntCyclotomic};
use bkk_core::field::standard_conductor;
use bkk_core::kernel::{CharacterTable, Convention, DlDatum, GammaTable};
use bkk_core::rootdata::Preset;
use bkk_core::scalar::FieldScalar;
use num_complex::Complex64;

use crate::config::{Mode, RunConfig};
use crate::error::UsageError;
use crate::report::{ComplexPair, ExactValue, GammaEntry, GammaRecord, IrrepEntry, Report};

/// `GL_2(F_q)` character table, or a usage error for other groups or `q`.
pub fn gl2_table(config: &RunConfig) -> Result<CharacterTable, UsageError> {
    if config.group != Preset::Gl2 {
        return Err(UsageError::new(format!("this command needs --group gl2, got {}", config.group)));
    }
    CharacterTable::new(config.q).map_err(|e| UsageError::new(e.to_string()))
}

/// `γ = sign·q^e·γ₀`, exact.
pub fn finish_exact(gamma0: &IntCyclotomic, convention: Convention, q: u32) -> Cyclotomic {
    let c = gamma0.conductor();
    Cyclotomic::signed_power(c, convention.sign as i64, q, convention.q_exponent as i32)
        .mul_ref(&Cyclotomic::from_ring(gamma0))
}

pub fn finish_float(gamma0: &Complex64, convention: Convention, q: u32) -> Complex64 {
    gamma0 * Complex64::signed_power(1, convention.sign as i64, q, convention.q_exponent as i32)
}

enum Rows<'a> {
    Gl2(&'a CharacterTable),
    Gl1(u32),
}

fn irreducibles(rows: &Rows<'_>) -> Vec<IrrepEntry> {
    match rows {
        Rows::Gl2(table) => table
            .canonical_order()
            .into_iter()
            .enumerate()
            .map(|(index, r)| {
                let row = &table.rows()[r];
                IrrepEntry {
                    index,
                    label: row.label.to_string(),
                    family: row.family.name().to_string(),
                    dim: row.dim,
                    datum: row.datum.to_string(),
                }
            })
            .collect(),
        Rows::Gl1(units) => (0..*units)
            .map(|a| IrrepEntry {
                index: a as usize,
                label: format!("eta[{a}]"),
                family: "character".into(),
                dim: 1,
                datum: DlDatum::Rank1(a).to_string(),
            })
            .collect(),
    }
}

/// The γ-record for `config`; `table` overrides the `GL_2` table (used to
/// check invariance under reordering of irreducibles).
pub fn gamma_record(config: &RunConfig, table: Option<&CharacterTable>) -> Result<GammaRecord, UsageError> {
    let owned;
    let rows = match config.group {
        Preset::Gl2 => {
            let t = match table {
                Some(t) => t,
                None => {
                    owned = gl2_table(config)?;
                    &owned
                }
            };
            Rows::Gl2(t)
        }
        Preset::Gl1 => Rows::Gl1(config.q - 1),
        other => {
            return Err(UsageError::new(format!("gamma tables exist for gl1 and gl2, not {other}")));
        }
    };
    let psi = config.additive_character();
    let conv = config.convention;
    let q = config.q;
    let core_err = |e: bkk_core::error::GroupError| UsageError::new(e.to_string());
    let by_datum = match config.mode {
        Mode::Exact => {
            let c = standard_conductor(config.characteristic());
            let gammas: GammaTable<IntCyclotomic> = match &rows {
                Rows::Gl2(t) => GammaTable::for_gl2(t, &config.weights, &psi, conv, c),
                Rows::Gl1(_) => GammaTable::for_gl1(&config.field()?, &config.weights, &psi, conv, c),
            }
            .map_err(core_err)?;
            gammas
                .by_datum()
                .iter()
                .map(|(d, g)| {
                    let exact = finish_exact(g, conv, q);
                    GammaEntry {
                        datum: d.to_string(),
                        value: ComplexPair(exact.to_complex()),
                        exact: Some(ExactValue::from(&exact)),
                    }
                })
                .collect()
        }
        Mode::Float => {
            let gammas: GammaTable<Complex64> = match &rows {
                Rows::Gl2(t) => GammaTable::for_gl2(t, &config.weights, &psi, conv, 1),
                Rows::Gl1(_) => GammaTable::for_gl1(&config.field()?, &config.weights, &psi, conv, 1),
            }
            .map_err(core_err)?;
            gammas
                .by_datum()
                .iter()
                .map(|(d, g)| GammaEntry {
                    datum: d.to_string(),
                    value: ComplexPair(finish_float(g, conv, q)),
                    exact: None,
                })
                .collect()
        }
    };
    Ok(GammaRecord {
        convention: conv.to_string(),
        by_datum,
        irreducibles: irreducibles(&rows),
    })
}

pub fn run_gamma(config: &RunConfig) -> Result<Report, UsageError> {
    let mut report = Report::new("gamma", config);
    report.gamma = Some(gamma_record(config, None)?);
    Ok(report)
}
