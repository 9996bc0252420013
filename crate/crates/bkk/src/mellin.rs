//! Module-level suites, always exact: `E_θ`, descent versus centrality, and
//! convolution collapse.

use std::time::Instant;

use bkk_core::error::MellinError;
use bkk_core::mellin::{
    build_e_theta, check_centrality, check_descent, generate_corpus, orbit_representatives, tensor_and_collapse,
    verify_e_theta, CentralityMode, EThetaReport,
};
use bkk_core::rootdata::{Preset, RootDatum, TorusCharacter};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::UsageError;
use crate::report::Check;

fn usage(e: MellinError) -> UsageError {
    UsageError::new(e.to_string())
}

/// `--chi 1,4` as a character of order dividing `q − 1`.
pub fn parse_character(config: &RunConfig, text: &str) -> Result<TorusCharacter, UsageError> {
    let exps: Vec<i64> = text
        .split(',')
        .map(|e| e.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| UsageError::new(format!("--chi {text:?} is not a list of integers")))?;
    if exps.len() != config.group.rank() {
        return Err(UsageError::new(format!(
            "--chi has {} exponents, {} has rank {}",
            exps.len(),
            config.group,
            config.group.rank()
        )));
    }
    TorusCharacter::new(config.q - 1, &exps).map_err(|e| UsageError::new(e.to_string()))
}

fn character_list(chis: &[&TorusCharacter]) -> Value {
    Value::Array(chis.iter().map(|c| Value::String(c.to_string())).collect())
}

/// One check per property, each over every character given.
pub fn etheta(config: &RunConfig, chi: Option<&str>) -> Result<Vec<Check>, UsageError> {
    let start = Instant::now();
    let rd = RootDatum::new(config.group);
    let characters = match chi {
        Some(text) => vec![parse_character(config, text)?],
        None => rd.all_characters(config.q - 1),
    };
    let mut reports: Vec<EThetaReport> = Vec::new();
    let mut relation_failures = Vec::new();
    for chi in &characters {
        let m = build_e_theta(&rd, chi, config.q).map_err(usage)?;
        if m.validate().is_err() {
            relation_failures.push(chi);
        }
        reports.push(verify_e_theta(&rd, chi, config.q).map_err(usage)?);
    }
    let elapsed = start.elapsed();
    let failing = |pred: &dyn Fn(&EThetaReport) -> bool| -> Vec<&TorusCharacter> {
        reports.iter().filter(|r| !pred(r)).map(|r| &r.character).collect()
    };
    let property = |name: &str, pred: &dyn Fn(&EThetaReport) -> bool| {
        let bad = failing(pred);
        Check::new(format!("etheta.{name}"), bad.is_empty())
            .with("characters", reports.len())
            .with("failures", character_list(&bad))
            .timed(elapsed)
    };
    let mut dimension = property("dimension", &|r| r.dim == r.expected_dim);
    let mut support = property("support", &|r| r.support_matches);
    if let [r] = reports.as_slice() {
        let points: Vec<Value> = r
            .support
            .iter()
            .map(|(p, mult)| json!({ "point": p.to_string(), "multiplicity": mult }))
            .collect();
        dimension = dimension
            .with("dim", r.dim)
            .with("expected_dim", r.expected_dim)
            .with("reflection_stabilizer", r.reflection_stabilizer)
            .with("full_stabilizer", r.full_stabilizer);
        support = support.with("support", points);
    }
    Ok(vec![
        Check::new("etheta.relations", relation_failures.is_empty())
            .with("characters", reports.len())
            .with("failures", character_list(&relation_failures))
            .timed(elapsed),
        dimension,
        support,
        property("stabilizer-isomorphism", &|r| r.stabilizer_isomorphisms),
        property("central", &|r| r.central),
        property("descent", &|r| r.descent),
        property("annihilator", &|r| r.annihilator_matches),
        // fails exactly when W_χ ≠ W'_χ; recorded, not required
        property("strongly-central", &|r| r.strongly_central).informational(),
    ])
}

/// Options for the descent suite's random corpus.
#[derive(Clone, Copy, Debug)]
pub struct CorpusOptions {
    pub seed: u64,
    pub size: usize,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        Self { seed: 2024, size: 100 }
    }
}

/// Every `E_θ` descends; centrality and descent agree on a random corpus;
/// strongly central corpus modules collapse against every `E_θ`.
pub fn descent(config: &RunConfig, corpus: CorpusOptions) -> Result<Vec<Check>, UsageError> {
    if !matches!(config.group, Preset::Gl1 | Preset::Gl2 | Preset::Sl2) {
        return Err(UsageError::new(format!("descent corpora exist for rank at most 2, not {}", config.group)));
    }
    let rd = RootDatum::new(config.group);
    let order = config.q - 1;
    let start = Instant::now();
    let mut not_descending = Vec::new();
    for chi in rd.all_characters(order) {
        let m = build_e_theta(&rd, &chi, config.q).map_err(usage)?;
        if !check_descent(&m).map_err(usage)?.passes() {
            not_descending.push(chi);
        }
    }
    let etheta = Check::new("descent.etheta", not_descending.is_empty())
        .with("characters", rd.all_characters(order).len())
        .with("failures", character_list(&not_descending.iter().collect::<Vec<_>>()))
        .timed(start.elapsed());

    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(corpus.seed);
    let modules = generate_corpus(&[config.group], &[order], corpus.size, &mut rng).map_err(usage)?;
    let mut disagreements = Vec::new();
    let mut central = 0usize;
    let mut strong = Vec::new();
    for e in &modules {
        let c = check_centrality(&e.module, CentralityMode::Central).map_err(usage)?.passes();
        let d = check_descent(&e.module).map_err(usage)?.passes();
        central += usize::from(c);
        if c != d {
            disagreements.push(Value::String(e.label.clone()));
        }
        if check_centrality(&e.module, CentralityMode::StronglyCentral).map_err(usage)?.passes() {
            strong.push(e);
        }
    }
    let equivalence = Check::new("descent.equivalence", disagreements.is_empty())
        .with("seed", corpus.seed)
        .with("modules", modules.len())
        .with("central", central)
        .with("disagreements", disagreements)
        .timed(start.elapsed());

    let start = Instant::now();
    let reps = orbit_representatives(&rd, order);
    let mut runs = 0usize;
    let mut vanishing = 0usize;
    let mut failures = Vec::new();
    for e in &strong {
        for chi in &reps {
            let r = tensor_and_collapse(&e.module, chi, config.q).map_err(usage)?;
            runs += 1;
            vanishing += usize::from(r.fiber_dim() == 0);
            if !r.passes() {
                failures.push(Value::String(format!("{} x {}", e.label, chi)));
            }
        }
    }
    let collapse = Check::new("descent.collapse", failures.is_empty())
        .with("strongly_central_modules", strong.len())
        .with("orbits", reps.len())
        .with("runs", runs)
        .with("zero_fiber_runs", vanishing)
        .with("failures", failures)
        .timed(start.elapsed());
    Ok(vec![etheta, equivalence, collapse])
}
