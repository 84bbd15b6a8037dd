use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::newton::{QuotientElem, XBranch};
use crate::poly::{Order, Rat};

use super::BranchPiece;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictStatus {
    Reduced,
    NotReduced,
    Inconclusive,
}

/// `multiplicity(x = 0) + Σ (branches × denominator certificate)` against μ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Accounting {
    pub zero_branch: u32,
    /// `(classical branches, denominator certificate)` per piece.
    pub contributions: Vec<(u32, u32)>,
    pub total: u32,
    pub mu: Order,
    pub established: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducednessVerdict {
    pub status: VerdictStatus,
    /// Whether the known terms already tell all parametrizations apart.
    pub separated: bool,
    /// Number of classical parametrizations (roots over all pieces).
    pub algebra_dim: usize,
    /// `(exponent, dimension)` each time the coefficients seen up to that
    /// exponent generate a larger subalgebra.
    pub separation_profile: Vec<(Rat, usize)>,
    /// First exponent not known on every branch; `None` if all are exact.
    pub horizon: Option<Rat>,
    pub accounting: Accounting,
    /// Order of a cyclic symmetry `x ↦ ζx` preserving `u`, if any.
    pub symmetry: Option<u32>,
    pub reason: String,
}

impl ReducednessVerdict {
    pub fn as_bool(&self) -> Option<bool> {
        match self.status {
            VerdictStatus::Reduced => Some(true),
            VerdictStatus::NotReduced => Some(false),
            VerdictStatus::Inconclusive => None,
        }
    }
}

/// Decides reducedness of the discriminant from the `u`-branches.
///
/// Over `ℂ` the pieces are `Σ deg φ_i` parametrizations `t ↦ u_r(t)`; the
/// discriminant is reduced iff they are pairwise distinct. Coefficient
/// functions separate the roots iff they generate the whole product
/// algebra `Π ℚ[c]/(φ_i)`, which is a rank computation over `ℚ`.
///
/// A cyclic symmetry of order `d > 1` (see `Unfolding::cyclic_symmetry`)
/// sends each nonzero branch to a different one with the same `u`, which
/// certifies non-reducedness without further terms.
pub fn reducedness(pieces: &[BranchPiece], x_pow: u32, mu: Order, symmetry: Option<u32>) -> ReducednessVerdict {
    let algebra_dim: usize = pieces.iter().map(|p| p.u.u.modulus().degree()).sum();
    let horizon = pieces
        .iter()
        .filter_map(|p| p.u.u.precision_exponent())
        .min();
    let mut exponents: BTreeSet<Rat> = BTreeSet::new();
    for p in pieces {
        for (k, _) in p.u.u.terms() {
            let e = p.u.u.exponent(k);
            if horizon.as_ref().is_none_or(|h| &e < h) {
                exponents.insert(e);
            }
        }
    }

    let mut algebra = Subalgebra::new(pieces.iter().map(|p| QuotientElem::one(p.u.u.modulus())).collect());
    let mut profile = Vec::new();
    let mut dim = algebra.dim();
    for e in &exponents {
        if dim == algebra_dim {
            break;
        }
        let gen: Vec<QuotientElem> = pieces.iter().map(|p| coefficient_at(p, e)).collect();
        algebra.add_generator(gen);
        if algebra.dim() > dim {
            dim = algebra.dim();
            profile.push((e.clone(), dim));
        }
    }
    let separated = dim == algebra_dim;

    let mut zero_branch = 0;
    let mut contributions = Vec::new();
    let mut established = true;
    for p in pieces {
        match &p.branch {
            XBranch::Zero { multiplicity } => zero_branch += multiplicity,
            XBranch::Puiseux(b) => {
                contributions.push((b.conjugacy_size(), p.u.denominator_cert));
                established &= p.u.cert_established;
            }
        }
    }
    let total = zero_branch + contributions.iter().map(|(n, d)| n * d).sum::<u32>();
    let holds = established && mu == Order::Finite(total);
    let accounting = Accounting {
        zero_branch,
        contributions,
        total,
        mu,
        established,
        holds,
    };

    let all_exact = pieces.iter().all(|p| p.u.u.is_exact());
    let moved = symmetry.filter(|_| pieces.iter().any(|p| matches!(p.branch, XBranch::Puiseux(_))));
    debug_assert!(moved.is_none() || !separated);
    let (status, reason) = if x_pow > 1 {
        (VerdictStatus::NotReduced, String::from("x = 0 is a multiple component of the critical curve"))
    } else if let Some(d) = moved {
        (VerdictStatus::NotReduced, format!("u is invariant under x -> zeta*x with zeta^{d} = 1"))
    } else if separated && holds {
        (VerdictStatus::Reduced, String::from("parametrizations pairwise distinct and accounting holds"))
    } else if separated && !established {
        (VerdictStatus::Inconclusive, String::from("denominator certificate not established"))
    } else if separated {
        (VerdictStatus::NotReduced, String::from("accounting identity fails"))
    } else if all_exact {
        (VerdictStatus::NotReduced, String::from("exact parametrizations coincide"))
    } else {
        (VerdictStatus::Inconclusive, String::from("parametrizations not yet separated at this truncation"))
    };
    ReducednessVerdict {
        status,
        separated,
        algebra_dim,
        separation_profile: profile,
        horizon,
        accounting,
        symmetry,
        reason,
    }
}

fn coefficient_at(p: &BranchPiece, e: &Rat) -> QuotientElem {
    let ram = Rat::from_integer((p.u.u.ramification() as i64).into());
    let k = e * ram;
    if k.is_integer() {
        let k: i64 = k.to_integer().try_into().expect("exponent fits in i64");
        p.u.u.coeff(k)
    } else {
        QuotientElem::zero(p.u.u.modulus())
    }
}

/// ℚ-subalgebra of a product of residue rings, grown by generators.
struct Subalgebra {
    basis: Vec<Vec<QuotientElem>>,
    echelon: Echelon,
    generators: Vec<Vec<QuotientElem>>,
}

impl Subalgebra {
    fn new(one: Vec<QuotientElem>) -> Self {
        let mut s = Subalgebra {
            basis: Vec::new(),
            echelon: Echelon::default(),
            generators: Vec::new(),
        };
        s.try_insert(one);
        s
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn try_insert(&mut self, v: Vec<QuotientElem>) -> bool {
        let coords: Vec<Rat> = v.iter().flat_map(QuotientElem::coords).collect();
        if self.echelon.insert(coords) {
            self.basis.push(v);
            true
        } else {
            false
        }
    }

    fn add_generator(&mut self, g: Vec<QuotientElem>) {
        self.generators.push(g);
        // close the span under multiplication by every generator
        let mut frontier: Vec<usize> = (0..self.basis.len()).collect();
        while let Some(i) = frontier.pop() {
            for gi in 0..self.generators.len() {
                let prod: Vec<QuotientElem> = self.basis[i]
                    .iter()
                    .zip(&self.generators[gi])
                    .map(|(a, b)| a.mul(b))
                    .collect();
                if self.try_insert(prod) {
                    frontier.push(self.basis.len() - 1);
                }
            }
        }
    }
}

#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        let Some(pivot) = v.iter().position(|a| !a.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for a in v.iter_mut() {
            *a *= &inv;
        }
        debug_assert!(v[pivot].is_one());
        // keep earlier rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let f = row[pivot].clone();
            for (a, b) in row.iter_mut().zip(&v) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}
