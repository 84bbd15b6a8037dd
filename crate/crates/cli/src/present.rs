use std::fmt::Write as _;
use std::path::PathBuf;

use clap::ValueEnum;
use discknot_core::presenter::{
    abelianization, bp_diagram, hom_count, hom_count_exhaustive, parse_gap, parse_plain, presentation, squares,
    to_gap, to_plain, todd_coxeter, AbelianInvariants, CosetStatus, DynkinDiagram, GroupPresentation, HomError,
    DEFAULT_COSET_CAP,
};
use serde_json::{json, Value};

use crate::encode;
use crate::report::{Failure, Report, Status};
use crate::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quotient {
    /// Add `t² = 1` for every generator.
    Squares,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Build the presentation for `y³ + x^{ν+1}`.
    #[arg(long, required_unless_present = "from", conflicts_with = "from")]
    nu: Option<u32>,
    /// Read a presentation (JSON, plain or GAP text) instead.
    #[arg(long, value_name = "FILE")]
    from: Option<PathBuf>,
    /// Enumerate cosets of this finite quotient.
    #[arg(long, value_enum)]
    quotient: Option<Quotient>,
    /// Coset cap for the enumeration.
    #[arg(long, default_value_t = DEFAULT_COSET_CAP)]
    cap: usize,
    /// Count homomorphisms into the symmetric group on N letters.
    #[arg(long, value_name = "N")]
    homs: Option<usize>,
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

fn import(text: &str) -> Result<GroupPresentation, String> {
    let body = strip_comments(text);
    let trimmed = body.trim_start();
    if trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(trimmed).map_err(|e| format!("invalid JSON: {e}"))?;
        // a full `present` report or a bare presentation object
        let p = v.pointer("/results/presentation").unwrap_or(&v);
        encode::presentation_from_json(p)
    } else if trimmed.contains("FreeGroup(") {
        parse_gap(trimmed).map_err(|e| e.to_string())
    } else {
        parse_plain(trimmed).map_err(|e| e.to_string())
    }
}

fn diagram_json(d: &DynkinDiagram) -> Value {
    let name = |i: usize| d.vertices[i].to_string();
    json!({
        "nu": d.nu,
        "vertices": d.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "edges": d.edges.iter().map(|&(a, b)| json!([name(a), name(b)])).collect::<Vec<_>>(),
        "triangles": d.triangles().iter().map(|&(a, b, c)| json!([name(a), name(b), name(c)])).collect::<Vec<_>>(),
    })
}

fn abelian_text(a: &AbelianInvariants) -> String {
    let mut parts: Vec<String> = vec![String::from("Z"); a.rank];
    parts.extend(a.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        String::from("trivial")
    } else {
        parts.join(" x ")
    }
}

struct QuotientRun {
    json: Value,
    line: String,
    capped: bool,
}

fn enumerate(p: &GroupPresentation, cap: usize, inputs: &Value) -> Result<QuotientRun, Failure> {
    let extra: Vec<_> = squares(p.generators).iter().map(|r| r.word()).collect();
    let t = todd_coxeter(p, &extra, &[], cap).map_err(|e| Failure::usage("enumeration", e.to_string(), inputs.clone()))?;
    let capped = t.status == CosetStatus::Capped;
    let line = if capped {
        format!("squares quotient: capped at {cap} cosets ({} defined), order unknown", t.total_defined)
    } else {
        format!("squares quotient: order {} ({} cosets defined)", t.coset_count(), t.total_defined)
    };
    let json = json!({
        "relators": "squares",
        "cap": cap,
        "status": if capped { "capped" } else { "complete" },
        "order": if capped { Value::Null } else { json!(t.coset_count()) },
        "cosets_defined": t.total_defined,
    });
    Ok(QuotientRun { json, line, capped })
}

fn homs(p: &GroupPresentation, n: usize, inputs: &Value) -> Result<(Value, String), Failure> {
    let err = |e: HomError| Failure::usage("homs", e.to_string(), inputs.clone());
    let count = hom_count(p, n).map_err(err)?;
    let exhaustive = match hom_count_exhaustive(p, n) {
        Ok(c) => Some(c),
        Err(HomError::SearchTooLarge(_)) => None,
        Err(e) => return Err(err(e)),
    };
    let agrees = exhaustive.map(|c| c == count);
    let line = match exhaustive {
        Some(c) if c == count => format!("homomorphisms into S_{n}: {count} (exhaustive count agrees)"),
        Some(c) => format!("homomorphisms into S_{n}: {count} (EXHAUSTIVE COUNT {c} DISAGREES)"),
        None => format!("homomorphisms into S_{n}: {count} (exhaustive count skipped, search too large)"),
    };
    let json = json!({ "degree": n, "count": count, "exhaustive": exhaustive, "agrees": agrees });
    Ok((json, line))
}

pub fn run(a: &Args, format: Format) -> Result<Report, Failure> {
    let inputs = json!({
        "nu": a.nu,
        "from": a.from.as_ref().map(|p| p.display().to_string()),
        "quotient": a.quotient.map(|_| "squares"),
        "cap": a.cap,
        "homs": a.homs,
    });
    let (diagram, p) = match (a.nu, &a.from) {
        (Some(nu), _) => {
            let d = bp_diagram(nu).map_err(|e| Failure::usage("parameter", e.to_string(), inputs.clone()))?;
            let p = presentation(&d);
            (Some(d), p)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage("io", format!("cannot read {}: {e}", path.display()), inputs.clone()))?;
            let p = import(&text).map_err(|e| Failure::usage("parse", e, inputs.clone()))?;
            (None, p)
        }
        (None, None) => unreachable!("clap requires --nu or --from"),
    };
    let census = p.census();
    let ab = abelianization(&p);
    let quotient = match a.quotient {
        Some(Quotient::Squares) => Some(enumerate(&p, a.cap, &inputs)?),
        None => None,
    };
    let hom = match a.homs {
        Some(n) => Some(homs(&p, n, &inputs)?),
        None => None,
    };
    let status = if quotient.as_ref().is_some_and(|q| q.capped) {
        Status::Capped
    } else {
        Status::Ok
    };
    let mut extra_lines: Vec<String> = quotient.iter().map(|q| q.line.clone()).collect();
    extra_lines.extend(hom.iter().map(|h| h.1.clone()));

    let results = json!({
        "diagram": diagram.as_ref().map(diagram_json),
        "presentation": encode::presentation(&p),
        "census": {
            "commute": census.commute,
            "braid": census.braid,
            "triangle": census.triangle,
            "other": census.other,
        },
        "abelianization": {
            "rank": ab.rank,
            "torsion": ab.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "infinite_cyclic": ab.is_infinite_cyclic(),
        },
        "quotient": quotient.as_ref().map(|q| q.json.clone()),
        "homs": hom.as_ref().map(|h| h.0.clone()),
    });

    let mut text = String::new();
    match format {
        Format::Plain | Format::Gap => {
            text = if format == Format::Plain { to_plain(&p) + "\n" } else { to_gap(&p) };
            for l in &extra_lines {
                let _ = writeln!(text, "# {l}");
            }
        }
        Format::Text | Format::Json => {
            if let Some(d) = &diagram {
                let _ = writeln!(
                    text,
                    "diagram of y^3 + x^{}: {} vertices, {} edges, {} triangles",
                    d.nu + 1,
                    d.vertex_count(),
                    d.edges.len(),
                    d.triangles().len()
                );
                let names: Vec<String> = d.vertices.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(text, "vertices (t1..t{}): {}", names.len(), names.join(" "));
                let edges: Vec<String> = d.edges.iter().map(|&(i, j)| format!("{}-{}", names[i], names[j])).collect();
                let _ = writeln!(text, "edges: {}", edges.join(" "));
            }
            let _ = writeln!(text, "{}", to_plain(&p));
            let _ = writeln!(
                text,
                "relators: {} commute, {} braid, {} triangle, {} other",
                census.commute, census.braid, census.triangle, census.other
            );
            let _ = writeln!(text, "abelianization: {}", abelian_text(&ab));
            for l in &extra_lines {
                let _ = writeln!(text, "{l}");
            }
        }
    }
    Ok(Report {
        inputs,
        results,
        status,
        text,
        stderr: Vec::new(),
    })
}
