//! `bkk calibrate`: search the 36 normalization records for those under
//! which the std kernel is `q^k·ψ∘tr` and the eigen and vanishing suites
//! pass, for every root index of `ψ`.

use std::time::Instant;

use bkk_core::bessel::WeightSet;
use bkk_core::field::AdditiveCharacter;
use bkk_core::kernel::{
    fit_std_kernel, kernel_on_group, CharacterTable, ClassAlgebra, ClassFunction, Convention, EigenReport, GammaTable,
};
use bkk_core::vanishing::class_function_sums;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::config::{RunConfig, CANONICAL_CONVENTION};
use crate::error::UsageError;
use crate::gamma::gl2_table;
use crate::report::{complex_value, real_value, Check, Report};

/// Diagnostics for one convention under one `ψ`.
#[derive(Clone, Debug)]
pub struct Trial {
    pub convention: Convention,
    pub constant: Complex64,
    pub std_residual: f64,
    pub power_of_q: Option<i32>,
    /// `min_k |c − q^k| / |c|`: zero iff `c` is a positive power of `q`.
    pub anchor_defect: f64,
    pub eigen_worst: f64,
    pub vanishing_relative: f64,
    pub pass: bool,
}

impl Trial {
    /// Largest normalized residual; below 1 iff every criterion holds.
    pub fn residual(&self, config: &RunConfig) -> f64 {
        [
            self.std_residual / config.tol.std,
            self.anchor_defect / config.tol.std,
            self.eigen_worst / config.tol.eigen,
            self.vanishing_relative / config.tol.vanishing,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    fn to_json(&self) -> Value {
        json!({
            "convention": self.convention.to_string(),
            "pass": self.pass,
            "constant": complex_value(self.constant),
            "power_of_q": self.power_of_q,
            "std_residual": real_value(self.std_residual),
            "anchor_defect": real_value(self.anchor_defect),
            "eigen_worst": real_value(self.eigen_worst),
            "vanishing_relative": real_value(self.vanishing_relative),
        })
    }
}

fn anchor_defect(c: Complex64, q: u32) -> f64 {
    if c.norm() == 0.0 {
        return f64::INFINITY;
    }
    (-8..=8)
        .map(|k| (c - Complex64::new((q as f64).powi(k), 0.0)).norm() / c.norm())
        .fold(f64::INFINITY, f64::min)
}

pub fn trial(
    config: &RunConfig,
    table: &CharacterTable,
    algebra: &ClassAlgebra,
    psi: &AdditiveCharacter,
    convention: Convention,
) -> Result<Trial, UsageError> {
    let usage = |e: bkk_core::error::GroupError| UsageError::new(e.to_string());
    let q = config.q;
    let kernel: ClassFunction<Complex64> = kernel_on_group(table, &config.weights, psi, convention, 1).map_err(usage)?;
    let fit = fit_std_kernel(table.classes(), &kernel, psi, 1);
    let gammas = GammaTable::<Complex64>::for_gl2(table, &config.weights, psi, convention, 1).map_err(usage)?;
    let eigen = EigenReport::float(algebra, table, &kernel, &gammas).map_err(usage)?;
    let eigen_worst = eigen
        .rows
        .iter()
        .map(|r| r.error * EigenReport::RELATIVE_TOLERANCE / r.bound)
        .fold(0.0, f64::max);
    let sums = class_function_sums(table.classes(), &kernel, 1).map_err(|e| UsageError::new(e.to_string()))?;
    let vanishing_relative = sums.relative_off_borel();
    let nontrivial = sums.max_on_borel > config.tol.nontrivial * sums.max_phi;
    let defect = anchor_defect(fit.constant, q);
    let pass = fit.residual < config.tol.std
        && defect < config.tol.std
        && eigen_worst <= config.tol.eigen
        && vanishing_relative <= config.tol.vanishing
        && nontrivial;
    Ok(Trial {
        convention,
        constant: fit.constant,
        std_residual: fit.residual,
        power_of_q: fit.power_of_q(q),
        anchor_defect: defect,
        eigen_worst,
        vanishing_relative,
        pass,
    })
}

/// All trials for one root index, in ascending convention order.
pub fn search(config: &RunConfig, table: &CharacterTable, root_index: u32, sign: Option<i8>) -> Result<Vec<Trial>, UsageError> {
    let algebra = ClassAlgebra::new(table.classes());
    let psi = AdditiveCharacter::new(config.characteristic(), root_index).map_err(|e| UsageError::new(e.to_string()))?;
    Convention::all()
        .into_iter()
        .filter(|c| sign.is_none_or(|s| c.sign == s))
        .map(|c| trial(config, table, &algebra, &psi, c))
        .collect()
}

/// `restrict_sign` limits the search to one sign; `Some(-1)` is the
/// negative control and must fail.
pub fn run_calibrate(config: &RunConfig, restrict_sign: Option<i8>) -> Result<Report, UsageError> {
    if config.weights != WeightSet::standard(2) {
        return Err(UsageError::new("calibration anchors on the standard weights 1,0;0,1"));
    }
    if let Some(s) = restrict_sign {
        if s != 1 && s != -1 {
            return Err(UsageError::new("--restrict-sign must be +1 or -1"));
        }
    }
    let table = gl2_table(config)?;
    let start = Instant::now();
    let mut per_psi = Vec::new();
    let mut passing_sets: Vec<Vec<Convention>> = Vec::new();
    let mut own_trials = Vec::new();
    for r in 1..config.characteristic() {
        let trials = search(config, &table, r, restrict_sign)?;
        let passing: Vec<Convention> = trials.iter().filter(|t| t.pass).map(|t| t.convention).collect();
        per_psi.push(json!({
            "psi": r,
            "passing": passing.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }));
        passing_sets.push(passing);
        if r == config.psi {
            own_trials = trials;
        }
    }
    let elapsed = start.elapsed();
    let own = &passing_sets[(config.psi - 1) as usize];
    let canonical = own.iter().min().copied();
    let best = own_trials
        .iter()
        .map(|t| t.residual(config))
        .fold(f64::INFINITY, f64::min);
    let independent = passing_sets.windows(2).all(|w| w[0] == w[1]);

    let mut report = Report::new("calibrate", config);
    report.push(
        Check::new("calibration.nonempty", !own.is_empty())
            .discrepancy(best, Some(1.0))
            .with("searched", own_trials.len())
            .with("passing", own.len())
            .timed(elapsed),
    );
    report.push(
        Check::new("calibration.psi-independent", independent)
            .with("root_indices", passing_sets.len())
            .timed(elapsed),
    );
    report.push(
        Check::new("calibration.canonical", canonical == Some(CANONICAL_CONVENTION))
            .with("found", canonical.map(|c| Value::String(c.to_string())).unwrap_or(Value::Null))
            .with("frozen", CANONICAL_CONVENTION.to_string())
            .timed(elapsed),
    );
    report.calibration = Some(json!({
        "restrict_sign": restrict_sign,
        "canonical": canonical.map(|c| c.to_string()),
        "per_psi": per_psi,
        "trials": own_trials.iter().map(Trial::to_json).collect::<Vec<_>>(),
    }));
    Ok(report)
}
