use std::fmt::Write as _;

use discknot_core::newton::XBranch;
use discknot_core::pipeline::{
    analyze, numeric_validate, select_perturbation, AnalysisConfig, DiscriminantReport, NumericDiagnostic,
    NumericOptions, PerturbationFamily, PipelineError, QChoice, VerdictStatus,
};
use discknot_core::poly::fmt_rat;
use serde_json::{json, Value};

use crate::encode;
use crate::report::{Failure, Report, Status};
use crate::Format;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long)]
    nu: u32,
    /// Order of P₀ = s·x^m (default: ν).
    #[arg(long)]
    m: Option<u32>,
    /// The parameter s, an integer or p/q.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    s: String,
    /// Use q = 0 even where the family calls for a modified q.
    #[arg(long, conflicts_with = "q_power")]
    no_q: bool,
    /// Use q = x^K.
    #[arg(long, value_name = "K")]
    q_power: Option<u32>,
    /// Series terms wanted past each leading term.
    #[arg(long, default_value_t = 4)]
    extra_terms: u32,
    /// Doublings of --extra-terms allowed on an inconclusive verdict.
    #[arg(long, default_value_t = 3)]
    retries: u32,
    /// Also track the branches numerically and compare log-log slopes.
    #[arg(long)]
    numeric: bool,
}

pub fn q_choice(no_q: bool, q_power: Option<u32>) -> QChoice {
    match (no_q, q_power) {
        (true, _) => QChoice::Zero,
        (false, Some(k)) => QChoice::Monomial(k),
        (false, None) => QChoice::Default,
    }
}

/// `ν = 1` has no admissible `m`; it is run with `m = 1`.
pub fn family(nu: u32, m: u32, choice: QChoice) -> Result<PerturbationFamily, PipelineError> {
    if nu == 1 && m == 1 {
        Ok(PerturbationFamily::new(1, 1, choice))
    } else {
        select_perturbation(nu, m, choice)
    }
}

pub fn pipeline_failure(e: &PipelineError, inputs: &Value) -> Failure {
    let code = encode::pipeline_error_code(e);
    match e {
        PipelineError::Hypothesis(_) => Failure::usage(code, e.to_string(), inputs.clone()),
        _ => Failure::computation(code, e.to_string(), inputs.clone()),
    }
}

pub fn render_report(text: &mut String, r: &DiscriminantReport) {
    let u = &r.unfolding;
    let _ = writeln!(
        text,
        "unfolding: P0 = {}, Q0 = {}, p = {}, q = {}, s = {}",
        u.base.p(),
        u.base.q(),
        u.p,
        u.q,
        fmt_rat(&u.s_value)
    );
    if let Some(c) = &r.case {
        let _ = write!(text, "case {}", c.case);
        if let Some(e) = c.e {
            let _ = write!(text, " (e = {e}");
            if let Some(rho) = c.rho {
                let _ = write!(text, ", rho = {rho}");
            }
            text.push(')');
        }
        text.push('\n');
    }
    let _ = writeln!(text, "mu = {}, sigma = {}", r.invariants.mu, r.invariants.sigma);
    let _ = writeln!(text, "curve: {}", r.curve);
    let verts: Vec<String> = r.polygon.hull_vertices.iter().map(|(i, j)| format!("({i},{j})")).collect();
    let _ = writeln!(text, "polygon: {} ; x-power {}", verts.join(" "), r.polygon.x_pow);
    for f in &r.faces {
        let _ = writeln!(
            text,
            "  face ({},{})-({},{}): lambda = {}, face polynomial {}, {} branches",
            f.start.0,
            f.start.1,
            f.end.0,
            f.end.1,
            fmt_rat(&f.lambda),
            f.face_poly,
            f.branch_points()
        );
    }
    let _ = writeln!(text, "branches: {}", r.branch_count());
    for p in &r.pieces {
        match &p.branch {
            XBranch::Zero { multiplicity } => {
                let _ = writeln!(text, "  x = 0 (multiplicity {multiplicity})");
            }
            XBranch::Puiseux(b) => {
                let _ = writeln!(
                    text,
                    "  {} conjugate(s) over ({}), ramification {}: x = {}",
                    b.conjugacy_size(),
                    b.modulus().poly(),
                    b.ramification(),
                    b.x
                );
            }
        }
        let lead = p.u.leading_exponent.as_ref().map_or_else(|| String::from("none"), fmt_rat);
        let ess: Vec<String> = p.u.essential_exponents.iter().map(fmt_rat).collect();
        let _ = writeln!(
            text,
            "    u = {}\n    u exponents: leading {lead}, essential [{}], denominator {}{}",
            p.u.u,
            ess.join(", "),
            p.u.denominator_cert,
            if p.u.cert_established { "" } else { " (not established)" }
        );
    }
    let v = &r.verdict;
    let _ = writeln!(text, "reduced: {} ({})", encode::verdict_status(v.status), v.reason);
    let a = &v.accounting;
    let parts: Vec<String> = a.contributions.iter().map(|(n, d)| format!("{n}*{d}")).collect();
    let _ = writeln!(
        text,
        "accounting: {} + {} = {} vs mu = {} ({})",
        a.zero_branch,
        if parts.is_empty() { String::from("0") } else { parts.join(" + ") },
        a.total,
        a.mu,
        if a.holds { "holds" } else { "fails" }
    );
    for n in &r.notes {
        let _ = writeln!(text, "note: {n}");
    }
}

fn numeric_json(d: &NumericDiagnostic) -> Value {
    let branches: Vec<Value> = d
        .branches
        .iter()
        .map(|b| {
            json!({
                "root": [b.root.re, b.root.im],
                "lambda": encode::rat(&b.lambda),
                "x_slope": b.x_slope,
                "x_ok": b.x_ok,
                "u_exponent": encode::opt_rat(b.u_exponent.as_ref()),
                "u_slope": b.u_slope,
                "u_ok": b.u_ok,
            })
        })
        .collect();
    json!({
        "zero_branch_exact": d.zero_branch_exact,
        "within_tolerance": d.all_within_tolerance(),
        "worst_deviation": d.worst_deviation(),
        "branches": branches,
    })
}

pub fn run(a: &Args, format: Format) -> Result<Report, Failure> {
    let m = a.m.unwrap_or(a.nu);
    let inputs = json!({
        "nu": a.nu,
        "m": m,
        "s": a.s,
        "no_q": a.no_q,
        "q_power": a.q_power,
        "extra_terms": a.extra_terms,
        "retries": a.retries,
        "numeric": a.numeric,
    });
    if matches!(format, Format::Plain | Format::Gap) {
        return Err(Failure::usage("format", "plain and gap formats apply to `present` only", inputs));
    }
    if a.nu == 0 {
        return Err(Failure::usage("parameter", "nu must be at least 1", inputs));
    }
    let s = encode::parse_rat(&a.s).map_err(|e| Failure::usage("parse", e, inputs.clone()))?;
    let fam = family(a.nu, m, q_choice(a.no_q, a.q_power)).map_err(|e| pipeline_failure(&e, &inputs))?;
    let cfg = AnalysisConfig {
        extra_terms: a.extra_terms,
        retries: a.retries,
    };
    let r = fam
        .at(&s)
        .and_then(|u| analyze(&u, cfg))
        .map_err(|e| pipeline_failure(&e, &inputs))?;

    let mut results = encode::report(&r);
    let mut text = String::new();
    render_report(&mut text, &r);
    let mut stderr = Vec::new();
    if a.numeric {
        match numeric_validate(&r.unfolding, &r, &NumericOptions::default()) {
            Ok(d) => {
                let _ = writeln!(
                    text,
                    "numeric: worst slope deviation {:.4} ({})",
                    d.worst_deviation(),
                    if d.all_within_tolerance() { "within tolerance" } else { "outside tolerance" }
                );
                if !d.all_within_tolerance() {
                    stderr.push(String::from("warning: numeric slopes disagree with the exact exponents"));
                }
                results["numeric"] = numeric_json(&d);
            }
            Err(e) => {
                stderr.push(format!("warning: numeric cross-check failed: {e}"));
                results["numeric"] = json!({ "error": e.to_string() });
            }
        }
    }
    let status = if r.verdict.status == VerdictStatus::Inconclusive {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Ok(Report {
        inputs,
        results,
        status,
        text,
        stderr,
    })
}
