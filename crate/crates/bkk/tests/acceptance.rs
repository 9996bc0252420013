//! The eleven acceptance criteria, each at its stated tolerance and runtime
//! budget. Prints one line per criterion; exits nonzero if any fails.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bkk::config::{Mode, RunConfig};
use bkk::mellin::{self, CorpusOptions};
use bkk::report::{Check, Status};
use bkk::{run_from, verify};
use bkk_core::bessel::{gauss_product_check, WeightSet};
use bkk_core::cyclotomic::IntCyclotomic;
use bkk_core::field::{standard_conductor, AdditiveCharacter, PrimeField};
use bkk_core::kernel::{brute_force_partition, fit_std_kernel, group_order, kernel_on_group, CharacterTable, ClassFunction};
use bkk_core::mellin::generate_corpus;
use bkk_core::rootdata::{Preset, RootDatum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn gl2_weight_sets() -> Vec<WeightSet> {
    let std = WeightSet::standard(2);
    vec![std.clone(), std.direct_sum(&std), WeightSet::sym2(2), std.det_twist(1), std.det_twist(2)]
}

fn config(group: Preset, q: u32, weights: &WeightSet, mode: Mode) -> RunConfig {
    let mut c = RunConfig::new(group, q).expect("valid config");
    c.weights = weights.clone();
    c.mode = mode;
    c
}

fn require(checks: &[Check], name: &str, context: &str) -> Result<(), String> {
    let c = checks
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| format!("{context}: no check {name}"))?;
    match c.status {
        Status::Pass => Ok(()),
        _ => Err(format!("{context}: {name} is {}", c.status.label())),
    }
}

fn within(elapsed: Duration, budget_s: u64) -> Result<(), String> {
    if elapsed > Duration::from_secs(budget_s) {
        Err(format!("took {:.1}s, budget {budget_s}s", elapsed.as_secs_f64()))
    } else {
        Ok(())
    }
}

fn gauss_product() -> Outcome {
    let start = Instant::now();
    let mut cases = vec![(Preset::Gl1, WeightSet::parse("1;1").unwrap()), (Preset::Gl1, WeightSet::standard(1))];
    cases.extend(gl2_weight_sets().into_iter().map(|w| (Preset::Gl2, w)));
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for q in [3u32, 5, 7, 11] {
        let field = PrimeField::new(q, 1).unwrap();
        let psi = AdditiveCharacter::standard(q);
        for (preset, w) in &cases {
            let rd = RootDatum::new(*preset);
            let ctx = format!("{preset} q={q} {}", w.canonical_string());
            let exact = gauss_product_check::<IntCyclotomic>(w, &rd, &psi, &field, standard_conductor(q))
                .map_err(|e| format!("{ctx}: {e}"))?;
            if exact.exact_failures != Some(0) {
                return Err(format!("{ctx}: {:?} exact failures", exact.exact_failures));
            }
            let float = gauss_product_check::<Complex64>(w, &rd, &psi, &field, 1).map_err(|e| format!("{ctx}: {e}"))?;
            if float.max_discrepancy.is_nan() || float.max_discrepancy >= 1e-9 {
                return Err(format!("{ctx}: float discrepancy {:e}", float.max_discrepancy));
            }
            worst = worst.max(float.max_discrepancy);
            runs += 2;
        }
    }
    within(start.elapsed(), 10)?;
    Ok(format!("{runs} runs, float max {worst:.1e}"))
}

fn table_integrity() -> Outcome {
    let start = Instant::now();
    for q in [3u32, 5, 7, 11] {
        let t = CharacterTable::new(q).map_err(|e| e.to_string())?;
        if t.rows().len() as u32 != q * q - 1 {
            return Err(format!("q={q}: {} rows", t.rows().len()));
        }
        if let Some(v) = t.orthogonality_violation() {
            return Err(format!("q={q}: orthogonality {v:?}"));
        }
        if t.dimension_square_sum() != group_order(q as u64) {
            return Err(format!("q={q}: sum of squared dimensions"));
        }
    }
    let t = CharacterTable::new(3).unwrap();
    let (elements, ids) = brute_force_partition(t.classes().base_field());
    if elements.len() != 48 {
        return Err(format!("{} elements of GL_2(F_3)", elements.len()));
    }
    let brute_classes = ids.iter().max().map_or(0, |m| m + 1);
    if brute_classes != t.classes().classes().len() {
        return Err(format!("{brute_classes} brute-force classes"));
    }
    for (g, id) in elements.iter().zip(&ids) {
        let closed = t.classes().class_of(g);
        let size = ids.iter().filter(|&&j| j == *id).count() as u64;
        let partner = elements.iter().zip(&ids).find(|(_, &j)| j == *id).map(|(h, _)| t.classes().class_of(h));
        if partner != Some(closed) || t.classes().classes()[closed].size != size {
            return Err("brute-force class differs from the closed form".into());
        }
    }
    within(start.elapsed(), 30)?;
    Ok("q in {3,5,7,11}, 48-element partition".into())
}

fn eigen_property() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for q in [3u32, 5, 7] {
        for w in gl2_weight_sets() {
            let c = config(Preset::Gl2, q, &w, Mode::Float);
            let ctx = format!("q={q} {}", w.canonical_string());
            let checks = verify::eigen(&c).map_err(|e| format!("{ctx}: {e}"))?;
            require(&checks, "eigen", &ctx)?;
            worst = worst.max(checks[0].max_discrepancy.map_or(0.0, |r| r.0));
        }
    }
    within(start.elapsed(), 60)?;
    Ok(format!("worst relative error {worst:.1e} (tolerance 1e-8)"))
}

fn std_kernel() -> Outcome {
    let w = WeightSet::standard(2);
    let mut out = Vec::new();
    for q in [3u32, 5, 7] {
        let c = config(Preset::Gl2, q, &w, Mode::Float);
        let table = CharacterTable::new(q).map_err(|e| e.to_string())?;
        let psi = c.additive_character();
        let kernel: ClassFunction<Complex64> =
            kernel_on_group(&table, &w, &psi, c.convention, 1).map_err(|e| e.to_string())?;
        let fit = fit_std_kernel(table.classes(), &kernel, &psi, 1);
        if fit.residual.is_nan() || fit.residual >= 1e-9 {
            return Err(format!("q={q}: residual {:e}", fit.residual));
        }
        match fit.power_of_q(q) {
            Some(k) => out.push(format!("q={q}: c=q^{k}")),
            None => return Err(format!("q={q}: c={} is not a power of q", fit.constant)),
        }
    }
    Ok(out.join(", "))
}

fn vanishing() -> Outcome {
    let mut slowest = Duration::ZERO;
    for q in [3u32, 5, 7, 11] {
        let start = Instant::now();
        for w in gl2_weight_sets() {
            let c = config(Preset::Gl2, q, &w, Mode::Float);
            let ctx = format!("q={q} {}", w.canonical_string());
            let checks = verify::vanishing(&c, 1).map_err(|e| format!("{ctx}: {e}"))?;
            require(&checks, "vanishing.off-borel", &ctx)?;
            require(&checks, "vanishing.nontrivial", &ctx)?;
        }
        slowest = slowest.max(start.elapsed());
    }
    within(slowest, 300)?;
    let c = config(Preset::Gl2, 3, &WeightSet::standard(2), Mode::Exact);
    let checks = verify::vanishing(&c, 2).map_err(|e| e.to_string())?;
    require(&checks, "vanishing.degree-2.off-borel", "F_9")?;
    require(&checks, "vanishing.degree-2.nontrivial", "F_9")?;
    Ok(format!("20 cases plus std over F_9, slowest q {:.1}s", slowest.as_secs_f64()))
}

fn packets() -> Outcome {
    for q in [3u32, 5, 7] {
        for w in gl2_weight_sets() {
            let c = config(Preset::Gl2, q, &w, Mode::Exact);
            let ctx = format!("q={q} {}", w.canonical_string());
            require(&verify::packets(&c).map_err(|e| format!("{ctx}: {e}"))?, "packets", &ctx)?;
        }
    }
    let args = ["bkk", "gamma", "--group", "gl2", "--q", "5", "--mode", "exact"];
    let a = run_from(args, None).map_err(|e| format!("{e:?}"))?.report.to_json();
    let b = run_from(args, None).map_err(|e| format!("{e:?}"))?.report.to_json();
    if a != b {
        return Err("repeated gamma reports differ".into());
    }
    Ok("exact γ-records and kernels identical under row permutations".into())
}

const E_THETA_CHECKS: [&str; 7] = [
    "etheta.relations",
    "etheta.dimension",
    "etheta.support",
    "etheta.stabilizer-isomorphism",
    "etheta.central",
    "etheta.descent",
    "etheta.annihilator",
];

fn e_theta() -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    for group in [Preset::Sl2, Preset::Gl2] {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13] {
            let c = config(group, q, &WeightSet::standard(group.rank()), Mode::Exact);
            let ctx = format!("{group} q={q}");
            let checks = mellin::etheta(&c, None).map_err(|e| format!("{ctx}: {e}"))?;
            for name in E_THETA_CHECKS {
                require(&checks, name, &ctx)?;
            }
            runs += 1;
        }
    }
    for (q, chi) in [(3u32, "1"), (5, "2"), (7, "3")] {
        let c = config(Preset::Sl2, q, &WeightSet::standard(1), Mode::Exact);
        let checks = mellin::etheta(&c, Some(chi)).map_err(|e| e.to_string())?;
        let ctx = format!("sl2 q={q} chi={chi}");
        require(&checks, "etheta.central", &ctx)?;
        let strong = checks.iter().find(|c| c.name == "etheta.strongly-central").unwrap();
        if strong.status != Status::Fail {
            return Err(format!("{ctx}: quadratic character is strongly central"));
        }
    }
    within(start.elapsed(), 30)?;
    Ok(format!("{runs} group/q suites, SL2 quadratic example reproduced"))
}

/// Descent-suite reports for the corpora behind criteria 8 and 9.
fn descent_runs() -> Result<Vec<(String, Vec<Check>)>, String> {
    let mut out = Vec::new();
    for group in [Preset::Sl2, Preset::Gl2] {
        for q in [5u32, 7] {
            let c = config(group, q, &WeightSet::standard(group.rank()), Mode::Exact);
            let checks = mellin::descent(&c, CorpusOptions { seed: 2024, size: 100 }).map_err(|e| e.to_string())?;
            out.push((format!("{group} q={q}"), checks));
        }
    }
    Ok(out)
}

fn detail_u64(check: &Check, key: &str) -> u64 {
    check.detail.get(key).and_then(Value::as_u64).unwrap_or(0)
}

fn equivalence(runs: &[(String, Vec<Check>)]) -> Outcome {
    let mut modules = 0;
    let mut central = 0;
    for (ctx, checks) in runs {
        require(checks, "descent.equivalence", ctx)?;
        let c = checks.iter().find(|c| c.name == "descent.equivalence").unwrap();
        modules += detail_u64(c, "modules");
        central += detail_u64(c, "central");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let corpus = generate_corpus(&[Preset::Sl2, Preset::Gl2], &[4, 6], 30, &mut rng).map_err(|e| e.to_string())?;
    if let Some(e) = corpus.iter().find(|e| e.module.dim() > 6) {
        return Err(format!("{} has dimension {}", e.label, e.module.dim()));
    }
    if central == 0 || central == modules {
        return Err(format!("degenerate corpus: {central} of {modules} central"));
    }
    Ok(format!("{modules} modules agree ({central} central)"))
}

fn collapse(runs: &[(String, Vec<Check>)]) -> Outcome {
    let (mut total, mut zero) = (0, 0);
    for (ctx, checks) in runs {
        require(checks, "descent.collapse", ctx)?;
        let c = checks.iter().find(|c| c.name == "descent.collapse").unwrap();
        total += detail_u64(c, "runs");
        zero += detail_u64(c, "zero_fiber_runs");
    }
    if zero == 0 || zero == total {
        return Err(format!("{zero} of {total} runs out of support"));
    }
    Ok(format!("{total} pairings, {zero} out of support"))
}

fn connected_center() -> Outcome {
    let mut characters = 0;
    for group in [Preset::Gl1, Preset::Gl2, Preset::Gl3] {
        let rd = RootDatum::new(group);
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13] {
            for chi in rd.all_characters(q - 1) {
                if !rd.stabilizers(&chi).coincide() {
                    return Err(format!("{group} q={q}: W_chi != W'_chi at {chi}"));
                }
                characters += 1;
            }
        }
    }
    Ok(format!("{characters} characters"))
}

fn calibration() -> Outcome {
    let mut canonicals = Vec::new();
    for q in ["3", "5"] {
        let out = run_from(["bkk", "calibrate", "--group", "gl2", "--q", q], None).map_err(|e| format!("{e:?}"))?;
        let r = &out.report;
        for name in ["calibration.nonempty", "calibration.psi-independent"] {
            let c = r.check(name).ok_or(format!("no check {name}"))?;
            if c.status != Status::Pass {
                return Err(format!("q={q}: {name} fails"));
            }
        }
        let found = r.calibration.as_ref().and_then(|c| c["canonical"].as_str()).ok_or("no canonical")?;
        canonicals.push(found.to_string());
    }
    if canonicals[0] != canonicals[1] {
        return Err(format!("canonical record differs across q: {canonicals:?}"));
    }
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (q, file) in [("3", "gamma_gl2_q3_std_exact.json"), ("5", "gamma_gl2_q5_std_exact.json")] {
        let args = ["bkk", "gamma", "--group", "gl2", "--q", q, "--mode", "exact", "--convention", &canonicals[0]];
        let report = run_from(args, None).map_err(|e| format!("{e:?}"))?.report.to_json();
        let pinned = std::fs::read_to_string(golden.join(file)).map_err(|e| e.to_string())?;
        if report != pinned {
            return Err(format!("{file} not reproduced"));
        }
    }
    Ok(format!("canonical {} reproduces both pinned reports", canonicals[0]))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: usize, name: &str, outcome: Outcome, elapsed: Duration| {
        let (label, note) = match outcome {
            Ok(note) => ("PASS", note),
            Err(note) => {
                failed += 1;
                ("FAIL", note)
            }
        };
        println!("{label} criterion {n:>2} {name}: {note} [{:.1}s]", elapsed.as_secs_f64());
    };
    let single: [Criterion; 7] = [
        ("gauss product identity", gauss_product),
        ("character table integrity", table_integrity),
        ("eigen-property", eigen_property),
        ("std kernel comparison", std_kernel),
        ("cell-sum vanishing", vanishing),
        ("packet constancy", packets),
        ("E_theta suite", e_theta),
    ];
    for (i, (name, f)) in single.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        report(i + 1, name, outcome, start.elapsed());
    }
    let start = Instant::now();
    match descent_runs() {
        Ok(runs) => {
            let shared = start.elapsed();
            report(8, "characterization equivalence", equivalence(&runs), shared);
            report(9, "convolution collapse", collapse(&runs), shared);
        }
        Err(e) => {
            report(8, "characterization equivalence", Err(e.clone()), start.elapsed());
            report(9, "convolution collapse", Err(e), start.elapsed());
        }
    }
    let start = Instant::now();
    report(10, "connected-center stabilizers", connected_center(), start.elapsed());
    let start = Instant::now();
    report(11, "calibration", calibration(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
