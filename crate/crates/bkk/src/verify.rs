//! Function-level check suites: Gauss product, eigen-property, packet
//! constancy and coset-sum vanishing.

use std::time::Instant;

use bkk_core::bessel::{gauss_product_check, WeightSet};
use bkk_core::cyclotomic::{Cyclotomic, IntCyclotomic};
use bkk_core::error::{BesselError, VanishingError};
use bkk_core::field::standard_conductor;
use bkk_core::kernel::{
    kernel_numerators, kernel_on_group, CharacterTable, ClassAlgebra, ClassFunction, EigenReport, GammaTable,
};
use bkk_core::rootdata::RootDatum;
use bkk_core::vanishing::{class_function_sums, extension_scalars_sums, VanishingReport};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::config::{Mode, RunConfig};
use crate::error::UsageError;
use crate::gamma::{gamma_record, gl2_table};
use crate::report::{complex_value, real_value, Check};

fn usage<E: std::fmt::Display>(e: E) -> UsageError {
    UsageError::new(e.to_string())
}

fn conductor(config: &RunConfig) -> u32 {
    match config.mode {
        Mode::Exact => standard_conductor(config.characteristic()),
        Mode::Float => 1,
    }
}

/// Mellin transform of the torus Bessel function against the Gauss product.
pub fn gauss_product(config: &RunConfig) -> Result<Vec<Check>, UsageError> {
    let start = Instant::now();
    let rd = RootDatum::new(config.group);
    let field = config.field()?;
    let psi = config.additive_character();
    let c = conductor(config);
    let result = match config.mode {
        Mode::Exact => gauss_product_check::<IntCyclotomic>(&config.weights, &rd, &psi, &field, c),
        Mode::Float => gauss_product_check::<Complex64>(&config.weights, &rd, &psi, &field, c),
    };
    let name = "gauss-product";
    let r = match result {
        Ok(r) => r,
        Err(e @ BesselError::BudgetExceeded { .. }) => return Ok(vec![Check::skipped(name, e.to_string())]),
        Err(e) => return Err(usage(e)),
    };
    let tol = (config.mode == Mode::Float).then_some(config.tol.gauss);
    let mut check = Check::new(name, r.passes(config.tol.gauss))
        .discrepancy(r.max_discrepancy, tol)
        .with("characters", r.characters);
    if let Some(k) = r.exact_failures {
        check = check.with("exact_failures", k);
    }
    Ok(vec![check.timed(start.elapsed())])
}

/// `φ * χ_π = γ(π)·χ_π` for every irreducible, in floats; exact mode also
/// checks `N * χ_π = |G|·γ₀(π)·χ_π` on integral numerators.
pub fn eigen(config: &RunConfig) -> Result<Vec<Check>, UsageError> {
    let start = Instant::now();
    let table = gl2_table(config)?;
    let algebra = ClassAlgebra::new(table.classes());
    let psi = config.additive_character();
    let conv = config.convention;
    let kernel: ClassFunction<Complex64> = kernel_on_group(&table, &config.weights, &psi, conv, 1).map_err(usage)?;
    let gammas = GammaTable::<Complex64>::for_gl2(&table, &config.weights, &psi, conv, 1).map_err(usage)?;
    let mut r = EigenReport::float(&algebra, &table, &kernel, &gammas).map_err(usage)?;
    if config.mode == Mode::Exact {
        let c = conductor(config);
        let exact_gammas = GammaTable::<IntCyclotomic>::for_gl2(&table, &config.weights, &psi, conv, c).map_err(usage)?;
        let numerators = kernel_numerators(&table, &exact_gammas, c);
        r.exact = Some(EigenReport::exact_numerators(&algebra, &table, &numerators, &exact_gammas, c).map_err(usage)?);
    }
    // errors relative to dim π · max(1, |γ(π)|)
    let relative: Vec<f64> = r
        .rows
        .iter()
        .map(|row| row.error * EigenReport::RELATIVE_TOLERANCE / row.bound)
        .collect();
    let worst = relative.iter().copied().fold(0.0, f64::max);
    let pass = worst <= config.tol.eigen && r.exact != Some(false);
    let rows: Vec<Value> = r
        .rows
        .iter()
        .zip(&relative)
        .map(|(row, rel)| {
            json!({
                "label": row.label.to_string(),
                "gamma": complex_value(row.gamma),
                "relative_error": real_value(*rel),
            })
        })
        .collect();
    let mut check = Check::new("eigen", pass)
        .discrepancy(worst, Some(config.tol.eigen))
        .with("irreducibles", rows.len())
        .with("rows", rows);
    if let Some(exact) = r.exact {
        check = check.with("exact", exact);
    }
    Ok(vec![check.timed(start.elapsed())])
}

/// Row orders tried by the packet check: identity, reversed, and a rotation.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    vec![(0..n).collect(), (0..n).rev().collect(), (0..n).map(|i| (i + n / 2 + 1) % n).collect()]
}

/// γ is a function of the datum: every row of a packet gets the same value,
/// and reordering the rows changes neither the γ-record nor the kernel.
pub fn packets(config: &RunConfig) -> Result<Vec<Check>, UsageError> {
    let start = Instant::now();
    let table = gl2_table(config)?;
    let psi = config.additive_character();
    let conv = config.convention;
    let c = conductor(config);
    let gammas = GammaTable::<Complex64>::for_gl2(&table, &config.weights, &psi, conv, 1).map_err(usage)?;
    let per_row = gammas.per_row(&table);
    let mut packet_spread: f64 = 0.0;
    let mut largest = 0;
    for (datum, g) in gammas.by_datum() {
        let members: Vec<usize> = (0..table.rows().len()).filter(|&i| table.rows()[i].datum == *datum).collect();
        largest = largest.max(members.len());
        for &i in &members {
            packet_spread = packet_spread.max((per_row[i] - g).norm());
        }
    }
    let base_record = serde_json::to_string(&gamma_record(config, Some(&table))?).expect("records serialize");
    let base_kernel = kernel_values(config, &table, c)?;
    let mut identical = true;
    let perms = permutations(table.rows().len());
    for perm in &perms {
        let shuffled = table.permuted(perm);
        let record = serde_json::to_string(&gamma_record(config, Some(&shuffled))?).expect("records serialize");
        identical &= record == base_record;
        identical &= kernel_values(config, &shuffled, c)? == base_kernel;
    }
    let check = Check::new("packets", packet_spread == 0.0 && identical)
        .discrepancy(packet_spread, None)
        .with("data", gammas.by_datum().len())
        .with("largest_packet", largest)
        .with("permutations", perms.len())
        .with("reports_identical", identical);
    Ok(vec![check.timed(start.elapsed())])
}

/// Kernel values in the configured mode, as comparable strings.
fn kernel_values(config: &RunConfig, table: &CharacterTable, c: u32) -> Result<Vec<String>, UsageError> {
    let psi = config.additive_character();
    Ok(match config.mode {
        Mode::Exact => {
            let k: ClassFunction<Cyclotomic> =
                kernel_on_group(table, &config.weights, &psi, config.convention, c).map_err(usage)?;
            k.values().iter().map(|v| format!("{v:?}")).collect()
        }
        Mode::Float => {
            let k: ClassFunction<Complex64> =
                kernel_on_group(table, &config.weights, &psi, config.convention, 1).map_err(usage)?;
            k.values().iter().map(|v| format!("{:?}", (v.re.to_bits(), v.im.to_bits()))).collect()
        }
    })
}

fn coset_checks(prefix: &str, r: &VanishingReport, config: &RunConfig) -> Vec<Check> {
    let relative = r.relative_off_borel();
    let off_pass = relative <= config.tol.vanishing && r.off_borel_exact_zero != Some(false);
    let mut off = Check::new(format!("{prefix}.off-borel"), off_pass)
        .discrepancy(relative, Some(config.tol.vanishing))
        .with("field_order", r.field_order)
        .with("cosets", r.sums.len())
        .with("max_phi", real_value(r.max_phi));
    if let Some(z) = r.off_borel_exact_zero {
        off = off.with("exact_zero", z);
    }
    let on_relative = if r.max_phi == 0.0 { 0.0 } else { r.max_on_borel / r.max_phi };
    // recorded only; no relation to the torus kernel is asserted
    let table: Vec<Value> = r
        .on_borel_table()
        .into_iter()
        .map(|((a, d), v)| json!({ "diag": [a, d], "sum": complex_value(v) }))
        .collect();
    let on = Check::new(format!("{prefix}.nontrivial"), on_relative > config.tol.nontrivial)
        .with("max_on_borel_relative", real_value(on_relative))
        .with("threshold", real_value(config.tol.nontrivial))
        .with("on_borel_sums", table);
    vec![off, on]
}

/// Coset sums `Σ_{u ∈ U} φ(gu)` over `G/U`; with `degree = 2` and standard
/// weights, also `c·ψ∘tr` over `GL_2(F_{q²})`.
pub fn vanishing(config: &RunConfig, degree: u32) -> Result<Vec<Check>, UsageError> {
    let start = Instant::now();
    let table = gl2_table(config)?;
    let psi = config.additive_character();
    let c = conductor(config);
    let r = match config.mode {
        Mode::Exact => {
            let k: ClassFunction<Cyclotomic> =
                kernel_on_group(&table, &config.weights, &psi, config.convention, c).map_err(usage)?;
            class_function_sums(table.classes(), &k, c)
        }
        Mode::Float => {
            let k: ClassFunction<Complex64> =
                kernel_on_group(&table, &config.weights, &psi, config.convention, 1).map_err(usage)?;
            class_function_sums(table.classes(), &k, 1)
        }
    };
    let mut checks = match r {
        Ok(r) => coset_checks("vanishing", &r, config),
        Err(e @ VanishingError::BudgetExceeded { .. }) => vec![Check::skipped("vanishing.off-borel", e.to_string())],
        Err(e) => return Err(usage(e)),
    };
    let elapsed = start.elapsed();
    for check in &mut checks {
        check.runtime_ms = Some(elapsed.as_millis() as u64);
    }
    match degree {
        1 => {}
        2 => checks.extend(extension(config)?),
        _ => return Err(UsageError::new(format!("--degree must be 1 or 2, got {degree}"))),
    }
    Ok(checks)
}

fn extension(config: &RunConfig) -> Result<Vec<Check>, UsageError> {
    let start = Instant::now();
    if config.weights != WeightSet::standard(2) {
        return Err(UsageError::new("--degree 2 needs the standard weights 1,0;0,1"));
    }
    let prefix = "vanishing.degree-2";
    let (p, k) = crate::config::prime_power(config.q).expect("validated");
    if k != 1 {
        return Err(UsageError::new("--degree 2 needs q prime"));
    }
    let psi = config.additive_character();
    let result = match config.mode {
        Mode::Exact => extension_scalars_sums(p, 2, &IntCyclotomic::from_int(p, 1), &psi, p),
        Mode::Float => extension_scalars_sums(p, 2, &Complex64::new(1.0, 0.0), &psi, 1),
    };
    let mut checks = match result {
        Ok(r) => coset_checks(prefix, &r, config),
        Err(e @ VanishingError::BudgetExceeded { .. }) => {
            vec![Check::skipped(format!("{prefix}.off-borel"), e.to_string())]
        }
        Err(e) => return Err(usage(e)),
    };
    for check in &mut checks {
        check.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(checks)
}
