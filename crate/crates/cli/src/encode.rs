//! JSON encodings of core values. Rationals are always strings `p/q`.

use discknot_core::invariants::InvariantPair;
use discknot_core::newton::{FaceData, NewtonPolygon, PuiseuxSeries, XBranch};
use discknot_core::pipeline::{
    BranchPiece, CaseLabel, DiscriminantReport, PipelineError, ReducednessVerdict, Unfolding, VerdictStatus,
};
use discknot_core::poly::{fmt_rat, parse};
use discknot_core::presenter::{GroupPresentation, Letter, Relator, Word};
use discknot_core::{Order, Rat};
use serde_json::{json, Value};

pub fn rat(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn opt_rat(r: Option<&Rat>) -> Value {
    r.map_or(Value::Null, rat)
}

pub fn order(o: Order) -> Value {
    match o {
        Order::Finite(n) => json!(n),
        Order::Infinite => json!("inf"),
    }
}

/// Parses a rational written as an integer, `p/q` or a constant expression.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let p = parse(text)
        .map_err(|e| format!("{text:?}: {e}"))?
        .into_x_poly()
        .filter(|p| p.is_constant())
        .ok_or_else(|| format!("{text:?} is not a rational number"))?;
    Ok(p.coeff(0))
}

pub fn series(s: &PuiseuxSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(k, c)| json!({ "exponent": rat(&s.exponent(k)), "coeff": c.to_string() }))
        .collect();
    json!({
        "text": s.to_string(),
        "ramification": s.ramification(),
        "precision": opt_rat(s.precision_exponent().as_ref()),
        "terms": terms,
    })
}

pub fn unfolding(u: &Unfolding) -> Value {
    json!({
        "P0": u.base.p().to_string(),
        "Q0": u.base.q().to_string(),
        "p": u.p.to_string(),
        "q": u.q.to_string(),
        "s": rat(&u.s_value),
    })
}

pub fn invariants(i: &InvariantPair) -> Value {
    json!({ "mu": order(i.mu), "sigma": order(i.sigma) })
}

pub fn case(c: Option<&CaseLabel>) -> Value {
    match c {
        None => Value::Null,
        Some(c) => json!({ "label": c.case.to_string(), "e": c.e, "rho": c.rho }),
    }
}

pub fn polygon(np: &NewtonPolygon) -> Value {
    let vertices: Vec<Value> = np.hull_vertices.iter().map(|&(i, j)| json!([i, j])).collect();
    json!({ "hull_vertices": vertices, "x_pow": np.x_pow })
}

pub fn face(f: &FaceData) -> Value {
    json!({
        "start": [f.start.0, f.start.1],
        "end": [f.end.0, f.end.1],
        "lambda": rat(&f.lambda),
        "p": f.p,
        "q": f.q,
        "face_poly": f.face_poly.to_string(),
        "branches": f.branch_points(),
    })
}

pub fn piece(p: &BranchPiece) -> Value {
    let x = match &p.branch {
        XBranch::Zero { multiplicity } => json!({ "kind": "zero", "multiplicity": multiplicity }),
        XBranch::Puiseux(b) => json!({
            "kind": "puiseux",
            "lambda": rat(b.lambda()),
            "ramification": b.ramification(),
            "conjugates": b.conjugacy_size(),
            "modulus": b.modulus().poly().to_string(),
            "series": series(&b.x),
        }),
    };
    json!({
        "x": x,
        "branches": p.branch_count(),
        "pprime": {
            "nonzero": p.pprime.nonzero,
            "leading_exponent": opt_rat(p.pprime.leading_exponent.as_ref()),
        },
        "u": {
            "series": series(&p.u.u),
            "leading_exponent": opt_rat(p.u.leading_exponent.as_ref()),
            "essential_exponents": p.u.essential_exponents.iter().map(rat).collect::<Vec<_>>(),
            "denominator": p.u.denominator_cert,
            "denominator_established": p.u.cert_established,
        },
    })
}

pub fn verdict_status(s: VerdictStatus) -> &'static str {
    match s {
        VerdictStatus::Reduced => "reduced",
        VerdictStatus::NotReduced => "not_reduced",
        VerdictStatus::Inconclusive => "inconclusive",
    }
}

pub fn verdict(v: &ReducednessVerdict) -> Value {
    let a = &v.accounting;
    json!({
        "status": verdict_status(v.status),
        "reduced": v.as_bool(),
        "separated": v.separated,
        "algebra_dim": v.algebra_dim,
        "separation_profile": v.separation_profile.iter().map(|(e, d)| json!([rat(e), d])).collect::<Vec<_>>(),
        "horizon": opt_rat(v.horizon.as_ref()),
        "symmetry": v.symmetry,
        "accounting": {
            "zero_branch": a.zero_branch,
            "contributions": a.contributions.iter().map(|&(n, d)| json!([n, d])).collect::<Vec<_>>(),
            "total": a.total,
            "mu": order(a.mu),
            "established": a.established,
            "holds": a.holds,
        },
        "reason": v.reason,
    })
}

pub fn report(r: &DiscriminantReport) -> Value {
    json!({
        "unfolding": unfolding(&r.unfolding),
        "invariants": invariants(&r.invariants),
        "case": case(r.case.as_ref()),
        "curve": r.curve.to_string(),
        "polygon": polygon(&r.polygon),
        "faces": r.faces.iter().map(face).collect::<Vec<_>>(),
        "branch_count": r.branch_count(),
        "pieces": r.pieces.iter().map(piece).collect::<Vec<_>>(),
        "verdict": verdict(&r.verdict),
        "extra_terms": r.extra_terms,
        "notes": r.notes,
    })
}

pub fn pipeline_error_code(e: &PipelineError) -> &'static str {
    match e {
        PipelineError::TrivialPerturbation => "trivial_perturbation",
        PipelineError::ZeroCurve => "zero_curve",
        PipelineError::VerticalComponent => "vertical_component",
        PipelineError::PprimeVanishes => "pprime_vanishes",
        PipelineError::Hypothesis(_) => "hypothesis",
        PipelineError::Germ(_) => "germ",
        PipelineError::Newton(_) => "newton",
    }
}

fn word(w: &[Letter]) -> Value {
    Value::Array(w.iter().map(|l| Value::String(l.to_string())).collect())
}

pub fn presentation(p: &GroupPresentation) -> Value {
    let generators: Vec<String> = (1..=p.generators).map(|k| format!("t{k}")).collect();
    let relators: Vec<Value> = p
        .relators
        .iter()
        .map(|r| json!({ "kind": r.kind.as_str(), "lhs": word(&r.lhs), "rhs": word(&r.rhs) }))
        .collect();
    json!({ "generators": generators, "relators": relators })
}

fn parse_letter(v: &Value, generators: usize) -> Result<Letter, String> {
    let tok = v.as_str().ok_or_else(|| format!("letter {v} is not a string"))?;
    let (name, inverse) = match tok.strip_suffix("^-1") {
        Some(n) => (n, true),
        None => (tok, false),
    };
    match name.strip_prefix('t').and_then(|k| k.parse::<usize>().ok()) {
        Some(k) if (1..=generators).contains(&k) => Ok(Letter { gen: k - 1, inverse }),
        _ => Err(format!("unknown letter {tok:?}")),
    }
}

fn parse_word(v: &Value, generators: usize) -> Result<Word, String> {
    v.as_array()
        .ok_or_else(|| String::from("word must be an array of letters"))?
        .iter()
        .map(|l| parse_letter(l, generators))
        .collect()
}

/// Reads back what [`presentation`] writes. Relator kinds are recomputed
/// from the word shapes; a stored kind that disagrees is an error.
pub fn presentation_from_json(v: &Value) -> Result<GroupPresentation, String> {
    let gens = v
        .get("generators")
        .and_then(Value::as_array)
        .ok_or("missing generators array")?;
    for (i, g) in gens.iter().enumerate() {
        if g.as_str() != Some(&format!("t{}", i + 1)) {
            return Err(String::from("generators must be t1, t2, ... in order"));
        }
    }
    let generators = gens.len();
    let mut relators = Vec::new();
    for r in v.get("relators").and_then(Value::as_array).ok_or("missing relators array")? {
        let lhs = parse_word(r.get("lhs").ok_or("relator without lhs")?, generators)?;
        let rhs = parse_word(r.get("rhs").ok_or("relator without rhs")?, generators)?;
        let kind = Relator::infer_kind(&lhs, &rhs);
        if let Some(stored) = r.get("kind").and_then(Value::as_str) {
            if stored != kind.as_str() {
                return Err(format!("relator kind {stored:?} does not match its words ({})", kind.as_str()));
            }
        }
        relators.push(Relator { kind, lhs, rhs });
    }
    Ok(GroupPresentation { generators, relators })
}
