use std::fmt::Write as _;

use clap::ValueEnum;
use discknot_core::invariants::{milnor_oracle, normal_form, ArnoldFamily, GermPQ, InvariantPair};
use discknot_core::poly::{parse, UniPoly, Var};
use discknot_core::Order;
use serde_json::{json, Value};

use crate::encode;
use crate::report::{Failure, Report, Status};
use crate::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `y³ + y²x^k + a(x)x^{3k+i}`
    Jki,
    /// `y³ + y·x^{2k+1} + a(x)x^{3k+2}`
    E6k1,
    /// `y³ + x^{ν+1}`
    Bp,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    /// P(x), e.g. "x^3 - 2*x^4".
    #[arg(long = "P", value_name = "POLY", requires = "q_poly", conflicts_with = "family")]
    p_poly: Option<String>,
    /// Q(x).
    #[arg(long = "Q", value_name = "POLY", requires = "p_poly", conflicts_with = "family")]
    q_poly: Option<String>,
    /// A normal form instead of explicit P and Q.
    #[arg(long, value_enum, ignore_case = true, required_unless_present = "p_poly")]
    family: Option<Family>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    nu: Option<u32>,
    /// The unit a(x) of J_{k,i} and E_{6k+1}.
    #[arg(long, default_value = "1", value_name = "POLY")]
    unit: String,
    /// Degree at which a(x)·x^n is cut (default: 8 past the leading term).
    #[arg(long)]
    truncation: Option<u32>,
}

fn caret(text: &str, column: usize) -> String {
    format!("  {text}\n  {}^", " ".repeat(column.saturating_sub(1)))
}

fn x_poly(name: &str, text: &str, inputs: &Value) -> Result<UniPoly, Failure> {
    let parsed = parse(text).map_err(|e| {
        Failure::usage("parse", format!("{name}: {e}\n{}", caret(text, e.column)), inputs.clone())
    })?;
    parsed
        .into_x_poly()
        .ok_or_else(|| Failure::usage("parse", format!("{name} must be a polynomial in x alone"), inputs.clone()))
}

fn need(v: Option<u32>, flag: &str, inputs: &Value) -> Result<u32, Failure> {
    v.ok_or_else(|| Failure::usage("missing_parameter", format!("this family needs --{flag}"), inputs.clone()))
}

fn inputs_of(a: &Args) -> Value {
    json!({
        "P": a.p_poly,
        "Q": a.q_poly,
        "family": a.family.map(|f| f.to_possible_value().map(|v| v.get_name().to_string())),
        "k": a.k,
        "i": a.i,
        "nu": a.nu,
        "unit": a.unit,
        "truncation": a.truncation,
    })
}

/// The germ and, for families, the σ the normal form is known to carry.
fn germ(a: &Args, inputs: &Value) -> Result<(GermPQ, Option<u32>, Option<String>), Failure> {
    let bad = |e: discknot_core::invariants::InvariantsError| Failure::usage("parameter", e.to_string(), inputs.clone());
    if let (Some(p), Some(q)) = (&a.p_poly, &a.q_poly) {
        let g = GermPQ::new(x_poly("P", p, inputs)?, x_poly("Q", q, inputs)?).map_err(bad)?;
        return Ok((g, None, None));
    }
    let unit = || x_poly("unit", &a.unit, inputs).map(|u| u.with_var(Var::X));
    let (fam, expected, label) = match a.family.expect("clap requires --family without --P") {
        Family::Jki => {
            let (k, i) = (need(a.k, "k", inputs)?, need(a.i, "i", inputs)?);
            let truncation = a.truncation.unwrap_or(3 * k + i + 8);
            (ArnoldFamily::Jki { k, i, unit: unit()?, truncation }, 2 * k, format!("J_{{{k},{i}}}"))
        }
        Family::E6k1 => {
            let k = need(a.k, "k", inputs)?;
            let truncation = a.truncation.unwrap_or(3 * k + 8);
            (ArnoldFamily::E6k1 { k, unit: unit()?, truncation }, 2 * k + 1, format!("E_{}", 6 * k + 1))
        }
        Family::Bp => {
            let nu = need(a.nu, "nu", inputs)?;
            (ArnoldFamily::BP { nu }, nu, format!("y^3 + x^{}", nu + 1))
        }
    };
    Ok((normal_form(&fam).map_err(bad)?, Some(expected), Some(label)))
}

pub fn run(a: &Args, format: Format) -> Result<Report, Failure> {
    let inputs = inputs_of(a);
    if matches!(format, Format::Plain | Format::Gap) {
        return Err(Failure::usage("format", "plain and gap formats apply to `present` only", inputs));
    }
    let (g, expected_sigma, label) = germ(a, &inputs)?;
    let inv = InvariantPair::of(&g);
    let oracle = milnor_oracle(&g);
    let agrees = oracle == inv.mu;
    let sigma_ok = expected_sigma.map(|s| inv.sigma == Order::Finite(s));
    let status = if agrees && sigma_ok != Some(false) { Status::Pass } else { Status::Fail };

    let results = json!({
        "family": label,
        "P": g.p().to_string(),
        "Q": g.q().to_string(),
        "mu": encode::order(inv.mu),
        "sigma": encode::order(inv.sigma),
        "mu_resultant": encode::order(oracle),
        "oracle_agrees": agrees,
        "expected_sigma": expected_sigma,
        "sigma_matches": sigma_ok,
    });

    let mut text = String::new();
    if let Some(l) = &label {
        let _ = writeln!(text, "family: {l}");
    }
    let _ = writeln!(text, "P = {}", g.p());
    let _ = writeln!(text, "Q = {}", g.q());
    let _ = writeln!(text, "mu = {}", inv.mu);
    let _ = writeln!(text, "sigma = {}", inv.sigma);
    let _ = writeln!(
        text,
        "mu via resultant = {oracle} ({})",
        if agrees { "agrees" } else { "DISAGREES" }
    );
    if let Some(s) = expected_sigma {
        let _ = writeln!(text, "expected sigma = {s} ({})", if sigma_ok == Some(true) { "ok" } else { "MISMATCH" });
    }
    let _ = writeln!(text, "status: {}", status.as_str());
    Ok(Report {
        inputs,
        results,
        status,
        text,
        stderr: Vec::new(),
    })
}
