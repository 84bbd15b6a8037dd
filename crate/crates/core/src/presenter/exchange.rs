//! Plain and GAP-style text forms of a presentation.
//!
//! Plain: `<t1,t2 | t1 t2 t1 = t2 t1 t2, t1 t1 = 1>`, letters separated by
//! spaces, inverses written `t1^-1`, the empty word written `1`.
//!
//! GAP: a `FreeGroup` declaration followed by `G := F / [ ... ];;` with
//! each relation `lhs = rhs` written `lhs/(rhs)`.
//!
//! Relator kinds are not stored; import infers them from the shape.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{GroupPresentation, Letter, Relator, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExchangeError {
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
}

fn malformed(what: &str) -> ExchangeError {
    ExchangeError::Malformed(what.to_string())
}

fn plain_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return String::from("1");
    }
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn to_plain(p: &GroupPresentation) -> String {
    let gens: Vec<String> = (1..=p.generators).map(|k| format!("t{k}")).collect();
    let rels: Vec<String> = p
        .relators
        .iter()
        .map(|r| format!("{} = {}", plain_word(&r.lhs), plain_word(&r.rhs)))
        .collect();
    format!("<{} | {}>", gens.join(","), rels.join(", "))
}

fn parse_letter(tok: &str, generators: usize) -> Result<Letter, ExchangeError> {
    let bad = || ExchangeError::UnknownLetter(tok.to_string());
    let (name, inverse) = match tok.strip_suffix("^-1") {
        Some(n) => (n, true),
        None => (tok, false),
    };
    let k: usize = name.strip_prefix('t').ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if k == 0 || k > generators {
        return Err(bad());
    }
    Ok(Letter { gen: k - 1, inverse })
}

fn parse_plain_word(s: &str, generators: usize) -> Result<Word, ExchangeError> {
    let s = s.trim();
    if s == "1" {
        return Ok(Vec::new());
    }
    s.split_whitespace().map(|t| parse_letter(t, generators)).collect()
}

pub fn parse_plain(text: &str) -> Result<GroupPresentation, ExchangeError> {
    let body = text
        .trim()
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .ok_or_else(|| malformed("expected <generators | relations>"))?;
    let (gens, rels) = body.split_once('|').ok_or_else(|| malformed("missing '|'"))?;
    let names: Vec<&str> = gens.split(',').map(str::trim).filter(|g| !g.is_empty()).collect();
    for (i, g) in names.iter().enumerate() {
        if *g != format!("t{}", i + 1) {
            return Err(malformed("generators must be t1, t2, ... in order"));
        }
    }
    let generators = names.len();
    let mut relators = Vec::new();
    for rel in rels.split(',').map(str::trim).filter(|r| !r.is_empty()) {
        let (l, r) = rel.split_once('=').ok_or_else(|| malformed("relation without '='"))?;
        let lhs = parse_plain_word(l, generators)?;
        let rhs = parse_plain_word(r, generators)?;
        relators.push(Relator {
            kind: Relator::infer_kind(&lhs, &rhs),
            lhs,
            rhs,
        });
    }
    Ok(GroupPresentation { generators, relators })
}

fn gap_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return String::from("One(F)");
    }
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("*")
}

pub fn to_gap(p: &GroupPresentation) -> String {
    let names: Vec<String> = (1..=p.generators).map(|k| format!("\"t{k}\"")).collect();
    let rels: Vec<String> = p
        .relators
        .iter()
        .map(|r| {
            if r.rhs.is_empty() {
                gap_word(&r.lhs)
            } else {
                format!("{}/({})", gap_word(&r.lhs), gap_word(&r.rhs))
            }
        })
        .collect();
    format!(
        "F := FreeGroup({});;\nAssignGeneratorVariables(F);;\nG := F / [ {} ];;\n",
        names.join(", "),
        rels.join(", ")
    )
}

fn parse_gap_word(s: &str, generators: usize) -> Result<Word, ExchangeError> {
    let s = s.trim();
    if s == "One(F)" {
        return Ok(Vec::new());
    }
    s.split('*').map(|t| parse_letter(t.trim(), generators)).collect()
}

pub fn parse_gap(text: &str) -> Result<GroupPresentation, ExchangeError> {
    let decl = text
        .split("FreeGroup(")
        .nth(1)
        .and_then(|s| s.split_once(')'))
        .ok_or_else(|| malformed("missing FreeGroup declaration"))?
        .0;
    let names: Vec<&str> = decl.split(',').map(|g| g.trim().trim_matches('"')).filter(|g| !g.is_empty()).collect();
    for (i, g) in names.iter().enumerate() {
        if *g != format!("t{}", i + 1) {
            return Err(malformed("generators must be t1, t2, ... in order"));
        }
    }
    let generators = names.len();
    let list = text
        .split_once("F / [")
        .and_then(|(_, rest)| rest.rsplit_once(']'))
        .ok_or_else(|| malformed("missing relator list"))?
        .0;
    let mut relators = Vec::new();
    for rel in list.split(',').map(str::trim).filter(|r| !r.is_empty()) {
        let (lhs, rhs) = match rel.split_once("/(") {
            Some((l, r)) => {
                let r = r.strip_suffix(')').ok_or_else(|| malformed("unbalanced parenthesis"))?;
                (parse_gap_word(l, generators)?, parse_gap_word(r, generators)?)
            }
            None => (parse_gap_word(rel, generators)?, Vec::new()),
        };
        relators.push(Relator {
            kind: Relator::infer_kind(&lhs, &rhs),
            lhs,
            rhs,
        });
    }
    Ok(GroupPresentation { generators, relators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presenter::{bp_diagram, presentation, squares};

    #[test]
    fn plain_nu_one() {
        let p = presentation(&bp_diagram(1).unwrap());
        assert_eq!(to_plain(&p), "<t1,t2 | t1 t2 t1 = t2 t1 t2>");
    }

    #[test]
    fn round_trips() {
        for nu in 1..=5 {
            let p = presentation(&bp_diagram(nu).unwrap());
            assert_eq!(parse_plain(&to_plain(&p)).unwrap(), p);
            assert_eq!(parse_gap(&to_gap(&p)).unwrap(), p);
        }
        let mut p = presentation(&bp_diagram(2).unwrap()).with_relators(squares(4));
        p.relators[0].rhs[1].inverse = true;
        p.relators[0].kind = Relator::infer_kind(&p.relators[0].lhs, &p.relators[0].rhs);
        assert_eq!(parse_plain(&to_plain(&p)).unwrap(), p);
        assert_eq!(parse_gap(&to_gap(&p)).unwrap(), p);
        assert_eq!(parse_plain("<t1 | >").unwrap(), GroupPresentation::free(1));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_plain("t1 t2").is_err());
        assert!(parse_plain("<t1,t3 | t1 = t3>").is_err());
        assert_eq!(parse_plain("<t1 | t2 = 1>"), Err(ExchangeError::UnknownLetter("t2".into())));
        assert!(parse_gap("G := 3;").is_err());
    }
}
