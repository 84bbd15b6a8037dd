use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use discknot_core::pipeline::{
    admissible_m, analyze, verify_family, AnalysisConfig, BundleStatus, PipelineError, FamilyBundle, SampleRun,
};
use discknot_core::poly::fmt_rat;
use discknot_core::Rat;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::branches::{family, q_choice};
use crate::encode;
use crate::report::{Failure, Report, Status};
use crate::Format;

const NU1_NOTE: &str = "nu = 1 has no admissible m; ran m = 1 at s = 0 only";
const SCOPE_NOTE: &str =
    "branch data are compared as discrete invariants (counts, exponents, denominators, separation profile) at the sampled s only";

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Inclusive range `a..b`, or a single ν.
    #[arg(long, default_value = "2..12")]
    nu_range: String,
    /// Comma-separated s values; s = 0 is always added.
    #[arg(long, default_value = "0,1/10,1/100", allow_hyphen_values = true)]
    s_samples: String,
    #[arg(long, conflicts_with = "q_power")]
    no_q: bool,
    #[arg(long, value_name = "K")]
    q_power: Option<u32>,
    #[arg(long, default_value_t = 4)]
    extra_terms: u32,
    #[arg(long, default_value_t = 3)]
    retries: u32,
    /// Where counterexample reports go (default: a directory under the system temp dir).
    #[arg(long, value_name = "DIR")]
    report_dir: Option<PathBuf>,
}

fn parse_range(text: &str) -> Result<(u32, u32), String> {
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| format!("bad bound {s:?} in --nu-range"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(text)?;
            (n, n)
        }
    };
    if a == 0 || a > b {
        return Err(format!("--nu-range {text:?} must be a..b with 1 <= a <= b"));
    }
    Ok((a, b))
}

fn parse_samples(text: &str) -> Result<Vec<Rat>, String> {
    let mut out: Vec<Rat> = Vec::new();
    for s in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let r = encode::parse_rat(s)?;
        if !out.contains(&r) {
            out.push(r);
        }
    }
    Ok(out)
}

fn run_family(nu: u32, m: u32, samples: &[Rat], a: &Args) -> Result<FamilyBundle, PipelineError> {
    let choice = q_choice(a.no_q, a.q_power);
    let cfg = AnalysisConfig {
        extra_terms: a.extra_terms,
        retries: a.retries,
    };
    if nu == 1 {
        let fam = family(1, 1, choice)?;
        let s = Rat::zero();
        let result = fam.at(&s).and_then(|u| analyze(&u, cfg));
        return Ok(FamilyBundle::assemble(fam, vec![SampleRun { s, result }]));
    }
    verify_family(nu, m, samples, choice, cfg)
}

fn status_str(s: BundleStatus) -> &'static str {
    match s {
        BundleStatus::Pass => "pass",
        BundleStatus::Fail => "fail",
        BundleStatus::Inconclusive => "inconclusive",
    }
}

fn run_json(r: &SampleRun) -> Value {
    match &r.result {
        Ok(rep) => json!({
            "s": encode::rat(&r.s),
            "mu": encode::order(rep.invariants.mu),
            "sigma": encode::order(rep.invariants.sigma),
            "branch_count": rep.branch_count(),
            "verdict": encode::verdict_status(rep.verdict.status),
            "leading_exponents": rep.pieces.iter().map(|p| encode::opt_rat(p.u.leading_exponent.as_ref())).collect::<Vec<_>>(),
        }),
        Err(e) => json!({
            "s": encode::rat(&r.s),
            "error": { "code": encode::pipeline_error_code(e), "message": e.to_string() },
        }),
    }
}

fn bundle_json(b: &FamilyBundle, report_path: Option<&Path>) -> Value {
    json!({
        "nu": b.family.nu,
        "m": b.family.m,
        "case": encode::case(Some(&b.family.case)),
        "q": b.family.q.to_string(),
        "status": status_str(b.status),
        "mu_constant": b.mu_constant,
        "sigma_transition": b.sigma_transition,
        "all_reduced": b.all_reduced,
        "data_constant": b.data_constant,
        "samples": b.runs.iter().map(run_json).collect::<Vec<_>>(),
        "failures": b.failures,
        "report_path": report_path.map(|p| p.display().to_string()),
    })
}

/// Full per-sample reports for one family that did not pass.
fn write_counterexample(dir: &Path, b: &FamilyBundle) -> Result<PathBuf, String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let path = dir.join(format!("nu{}-m{}.json", b.family.nu, b.family.m));
    let runs: Vec<Value> = b
        .runs
        .iter()
        .map(|r| match &r.result {
            Ok(rep) => json!({ "s": encode::rat(&r.s), "report": encode::report(rep) }),
            Err(e) => json!({ "s": encode::rat(&r.s), "error": e.to_string() }),
        })
        .collect();
    let body = json!({
        "family": bundle_json(b, None),
        "runs": runs,
    });
    let mut text = serde_json::to_string_pretty(&body).expect("serializing a Value cannot fail");
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(path)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(a: &Args, format: Format, jobs: Option<usize>) -> Result<Report, Failure> {
    let report_dir = a
        .report_dir
        .clone()
        .unwrap_or_else(|| std::env::temp_dir().join("discknot-reports"));
    let mut inputs = json!({
        "nu_range": a.nu_range,
        "s_samples": a.s_samples,
        "no_q": a.no_q,
        "q_power": a.q_power,
        "extra_terms": a.extra_terms,
        "retries": a.retries,
        "report_dir": report_dir.display().to_string(),
    });
    if matches!(format, Format::Plain | Format::Gap) {
        return Err(Failure::usage("format", "plain and gap formats apply to `present` only", inputs));
    }
    let (lo, hi) = parse_range(&a.nu_range).map_err(|e| Failure::usage("parse", e, inputs.clone()))?;
    let samples = parse_samples(&a.s_samples).map_err(|e| Failure::usage("parse", e, inputs.clone()))?;
    let mut all_samples = vec![Rat::zero()];
    all_samples.extend(samples.iter().filter(|s| !s.is_zero()).cloned());
    inputs["samples_used"] = Value::Array(all_samples.iter().map(encode::rat).collect());

    let tasks: Vec<(u32, u32)> = (lo..=hi)
        .flat_map(|nu| {
            let ms: Vec<u32> = if nu == 1 { vec![1] } else { admissible_m(nu).collect() };
            ms.into_iter().map(move |m| (nu, m))
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::usage("jobs", e.to_string(), inputs.clone()))?;
    // collect keeps task order whatever the completion order
    let bundles: Vec<Result<FamilyBundle, PipelineError>> =
        pool.install(|| tasks.par_iter().map(|&(nu, m)| run_family(nu, m, &all_samples, a)).collect());

    let mut text = String::new();
    let mut stderr = Vec::new();
    let mut families = Vec::new();
    let (mut passed, mut failed, mut inconclusive) = (0usize, 0usize, 0usize);
    let _ = writeln!(
        text,
        "samples: s in {{{}}}",
        all_samples.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
    );
    let _ = writeln!(
        text,
        "{:>4} {:>4}  {:<4} {:>7} {:>6} {:>8} {:>9}  {}",
        "nu", "m", "case", "mu", "sigma", "reduced", "constant", "status"
    );
    for (&(nu, m), bundle) in tasks.iter().zip(&bundles) {
        let b = match bundle {
            Ok(b) => b,
            Err(e) => {
                return Err(Failure::computation(
                    encode::pipeline_error_code(e),
                    format!("nu = {nu}, m = {m}: {e}"),
                    inputs,
                ))
            }
        };
        let path = if b.status == BundleStatus::Pass {
            None
        } else {
            let p = write_counterexample(&report_dir, b).map_err(|e| Failure::computation("io", e, inputs.clone()))?;
            stderr.push(format!("counterexample report: {}", p.display()));
            Some(p)
        };
        match b.status {
            BundleStatus::Pass => passed += 1,
            BundleStatus::Fail => failed += 1,
            BundleStatus::Inconclusive => inconclusive += 1,
        }
        let _ = writeln!(
            text,
            "{:>4} {:>4}  {:<4} {:>7} {:>6} {:>8} {:>9}  {}",
            nu,
            m,
            b.case().to_string(),
            if b.mu_constant { "const" } else { "VARIES" },
            if b.sigma_transition { "ok" } else { "BAD" },
            yes_no(b.all_reduced),
            yes_no(b.data_constant),
            status_str(b.status)
        );
        for f in &b.failures {
            let _ = writeln!(text, "            {f}");
        }
        if let Some(p) = &path {
            let _ = writeln!(text, "            report: {}", p.display());
        }
        families.push(bundle_json(b, path.as_deref()));
    }
    let mut notes = vec![String::from(SCOPE_NOTE)];
    if lo == 1 {
        notes.push(String::from(NU1_NOTE));
    }
    for n in &notes {
        let _ = writeln!(text, "note: {n}");
    }
    let total = families.len();
    let _ = writeln!(text, "{passed}/{total} families pass, {failed} fail, {inconclusive} inconclusive");
    let status = if failed > 0 {
        Status::Fail
    } else if inconclusive > 0 {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    let results = json!({
        "families": families,
        "summary": { "total": total, "passed": passed, "failed": failed, "inconclusive": inconclusive },
        "notes": notes,
    });
    Ok(Report {
        inputs,
        results,
        status,
        text,
        stderr,
    })
}
