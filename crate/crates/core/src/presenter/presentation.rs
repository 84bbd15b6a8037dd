use alloc::vec::Vec;
use core::fmt;

use super::DynkinDiagram;

/// A generator or its inverse; generators are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Column in a coset table: `2·gen` or `2·gen + 1` for inverses.
    pub fn column(self) -> usize {
        2 * self.gen + self.inverse as usize
    }
}

pub type Word = Vec<Letter>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelatorKind {
    Commute,
    Braid,
    Triangle,
    /// Added for a quotient, or of no recognised shape.
    Other,
}

impl RelatorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RelatorKind::Commute => "commute",
            RelatorKind::Braid => "braid",
            RelatorKind::Triangle => "triangle",
            RelatorKind::Other => "other",
        }
    }
}

/// A relation `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub kind: RelatorKind,
    pub lhs: Word,
    pub rhs: Word,
}

impl Relator {
    /// The relator word `lhs · rhs⁻¹`.
    pub fn word(&self) -> Word {
        let mut w = self.lhs.clone();
        w.extend(self.rhs.iter().rev().map(|l| l.inv()));
        w
    }

    fn from_gens(kind: RelatorKind, lhs: &[usize], rhs: &[usize]) -> Self {
        Relator {
            kind,
            lhs: lhs.iter().map(|&g| Letter::gen(g)).collect(),
            rhs: rhs.iter().map(|&g| Letter::gen(g)).collect(),
        }
    }

    /// Kind guessed from shape: positive words of equal length 2, 3 or 4.
    pub fn infer_kind(lhs: &[Letter], rhs: &[Letter]) -> RelatorKind {
        if lhs.len() != rhs.len() || lhs.iter().chain(rhs).any(|l| l.inverse) {
            return RelatorKind::Other;
        }
        let g = |w: &[Letter]| w.iter().map(|l| l.gen).collect::<Vec<_>>();
        let (a, b) = (g(lhs), g(rhs));
        match a.len() {
            2 if a[0] != a[1] && b == [a[1], a[0]] => RelatorKind::Commute,
            3 if a[0] == a[2] && a[0] != a[1] && b == [a[1], a[0], a[1]] => RelatorKind::Braid,
            4 if a[0] == a[3] && b == [a[2], a[0], a[1], a[2]] && b[0] == b[3] => RelatorKind::Triangle,
            _ => RelatorKind::Other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Relator>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelatorCensus {
    pub commute: usize,
    pub braid: usize,
    pub triangle: usize,
    pub other: usize,
}

impl GroupPresentation {
    pub fn free(generators: usize) -> Self {
        GroupPresentation {
            generators,
            relators: Vec::new(),
        }
    }

    pub fn census(&self) -> RelatorCensus {
        let count = |k| self.relators.iter().filter(|r| r.kind == k).count();
        RelatorCensus {
            commute: count(RelatorKind::Commute),
            braid: count(RelatorKind::Braid),
            triangle: count(RelatorKind::Triangle),
            other: count(RelatorKind::Other),
        }
    }

    /// Relator words, in order.
    pub fn words(&self) -> Vec<Word> {
        self.relators.iter().map(Relator::word).collect()
    }

    pub fn with_relators(&self, extra: impl IntoIterator<Item = Relator>) -> Self {
        let mut p = self.clone();
        p.relators.extend(extra);
        p
    }

    pub fn without_kind(&self, kind: RelatorKind) -> Self {
        GroupPresentation {
            generators: self.generators,
            relators: self.relators.iter().filter(|r| r.kind != kind).cloned().collect(),
        }
    }
}

/// `t_i t_j = t_j t_i` for non-adjacent pairs, `t_i t_j t_i = t_j t_i t_j`
/// along edges, then `t_i t_k t_j t_i = t_j t_i t_k t_j` for each triangle
/// `i < j < k`. Pairs are visited in lexicographic order.
pub fn presentation(d: &DynkinDiagram) -> GroupPresentation {
    let n = d.vertex_count();
    let mut relators = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            relators.push(if d.has_edge(i, j) {
                Relator::from_gens(RelatorKind::Braid, &[i, j, i], &[j, i, j])
            } else {
                Relator::from_gens(RelatorKind::Commute, &[i, j], &[j, i])
            });
        }
    }
    for (i, j, k) in d.triangles() {
        relators.push(Relator::from_gens(RelatorKind::Triangle, &[i, k, j, i], &[j, i, k, j]));
    }
    GroupPresentation { generators: n, relators }
}

/// `t_g² = 1` for every generator.
pub fn squares(generators: usize) -> Vec<Relator> {
    (0..generators)
        .map(|g| Relator {
            kind: RelatorKind::Other,
            lhs: alloc::vec![Letter::gen(g); 2],
            rhs: Vec::new(),
        })
        .collect()
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.gen + 1)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presenter::bp_diagram;

    #[test]
    fn nu_one_is_the_braid_group() {
        let p = presentation(&bp_diagram(1).unwrap());
        assert_eq!(p.generators, 2);
        assert_eq!(p.relators.len(), 1);
        let r = &p.relators[0];
        assert_eq!(r.kind, RelatorKind::Braid);
        assert_eq!(r.lhs, [Letter::gen(0), Letter::gen(1), Letter::gen(0)]);
        assert_eq!(r.rhs, [Letter::gen(1), Letter::gen(0), Letter::gen(1)]);
    }

    #[test]
    fn census_matches_formula() {
        for nu in 1..=20usize {
            let d = bp_diagram(nu as u32).unwrap();
            let p = presentation(&d);
            let c = p.census();
            let n = 2 * nu;
            let e = 4 * nu - 3;
            assert_eq!((c.commute, c.braid, c.triangle, c.other), (n * (n - 1) / 2 - e, e, 2 * (nu - 1), 0));
        }
    }

    #[test]
    fn triangle_pairs_are_edges() {
        let d = bp_diagram(6).unwrap();
        for r in presentation(&d).relators.iter().filter(|r| r.kind == RelatorKind::Triangle) {
            let (i, k, j) = (r.lhs[0].gen, r.lhs[1].gen, r.lhs[2].gen);
            assert!(i < j && j < k);
            assert!(d.has_edge(i, j) && d.has_edge(i, k) && d.has_edge(j, k));
        }
    }

    #[test]
    fn kinds_are_recoverable() {
        let p = presentation(&bp_diagram(4).unwrap());
        for r in &p.relators {
            assert_eq!(Relator::infer_kind(&r.lhs, &r.rhs), r.kind);
        }
        let sq = &squares(1)[0];
        assert_eq!(Relator::infer_kind(&sq.lhs, &sq.rhs), RelatorKind::Other);
    }
}
