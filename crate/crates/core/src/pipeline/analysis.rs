use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::invariants::InvariantPair;
use crate::newton::{branches, lift_face, FaceData, NewtonError, NewtonPolygon, PuiseuxBranch, XBranch};
use crate::poly::BiPoly;

use super::{
    check_pprime, classify, reducedness, u_branch, CaseLabel, PipelineError, PprimeCertificate, ReducednessVerdict,
    UBranch, Unfolding, VerdictStatus,
};

/// Truncation control. `extra_terms` is the number of coefficients wanted
/// past the leading term of every `u`-branch; an inconclusive verdict
/// doubles it, at most `retries` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub extra_terms: u32,
    pub retries: u32,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            extra_terms: 4,
            retries: 3,
        }
    }
}

/// One branch (or bundle of conjugate branches) with its certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchPiece {
    pub branch: XBranch,
    pub pprime: PprimeCertificate,
    pub u: UBranch,
}

impl BranchPiece {
    /// Classical branches in this piece.
    pub fn branch_count(&self) -> u32 {
        match &self.branch {
            XBranch::Zero { .. } => 1,
            XBranch::Puiseux(b) => b.conjugacy_size(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantReport {
    pub unfolding: Unfolding,
    pub invariants: InvariantPair,
    pub case: Option<CaseLabel>,
    pub curve: BiPoly,
    pub polygon: NewtonPolygon,
    pub faces: Vec<FaceData>,
    pub pieces: Vec<BranchPiece>,
    pub verdict: ReducednessVerdict,
    /// Truncation the verdict was reached with.
    pub extra_terms: u32,
    pub notes: Vec<String>,
}

impl DiscriminantReport {
    pub fn branch_count(&self) -> u32 {
        self.pieces.iter().map(BranchPiece::branch_count).sum()
    }
}

/// Runs the whole chain for one unfolding: curve, polygon, branches,
/// `P'` certificates, `u`-branches and the reducedness verdict.
pub fn analyze(u: &Unfolding, cfg: AnalysisConfig) -> Result<DiscriminantReport, PipelineError> {
    let invariants = InvariantPair::of(&u.base);
    let curve = super::build_curve(u)?;
    let mut extra = cfg.extra_terms.max(1);
    let mut notes = Vec::new();
    let mut attempt = 0;
    loop {
        let set = branches(&curve, extra)?;
        if set.polygon.t_pow() > 0 {
            return Err(PipelineError::VerticalComponent);
        }
        let mut pieces = Vec::new();
        for b in &set.branches {
            pieces.extend(build_pieces(u, &curve, &set.polygon, b.clone(), extra)?);
        }
        let verdict = reducedness(&pieces, set.polygon.x_pow, invariants.mu, u.cyclic_symmetry());
        if verdict.status == VerdictStatus::Inconclusive && attempt < cfg.retries {
            notes.push(format!("inconclusive with {extra} extra terms; retrying with {}", extra * 2));
            extra *= 2;
            attempt += 1;
            continue;
        }
        return Ok(DiscriminantReport {
            unfolding: u.clone(),
            invariants,
            case: u.nu().map(classify),
            curve,
            polygon: set.polygon,
            faces: set.faces,
            pieces,
            verdict,
            extra_terms: extra,
            notes,
        });
    }
}

// Builds the pieces for one branch, splitting its modulus whenever a zero
// divisor shows up in P' or among the u-coefficients.
fn build_pieces(
    u: &Unfolding,
    curve: &BiPoly,
    polygon: &NewtonPolygon,
    branch: XBranch,
    extra: u32,
) -> Result<Vec<BranchPiece>, PipelineError> {
    let mut work = vec![branch];
    let mut out = Vec::new();
    while let Some(b) = work.pop() {
        match piece(u, curve, polygon, &b, extra) {
            Ok(p) => out.push(p),
            Err(PipelineError::Newton(NewtonError::ZeroDivisorSplit(factor))) => {
                let XBranch::Puiseux(pb) = &b else {
                    unreachable!("the zero branch lives over Q")
                };
                let (first, second) = pb.split(&factor)?;
                // pushed in reverse so the factor is processed first
                work.push(XBranch::Puiseux(second));
                work.push(XBranch::Puiseux(first));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn piece(
    u: &Unfolding,
    curve: &BiPoly,
    polygon: &NewtonPolygon,
    branch: &XBranch,
    extra: u32,
) -> Result<BranchPiece, PipelineError> {
    let pprime = check_pprime(u, branch)?;
    if !pprime.nonzero {
        return Err(PipelineError::PprimeVanishes);
    }
    let mut branch = branch.clone();
    let mut terms = extra;
    let ub = loop {
        let ub = u_branch(u, &branch, terms as i64 + 2)?;
        let enough = ub.u.is_exact() || ub.relative_precision().is_some_and(|r| ub.leading_exponent.is_some() && r >= extra as i64);
        if enough || terms >= extra * 8 {
            break ub;
        }
        terms += extra;
        if let XBranch::Puiseux(pb) = &branch {
            let x = lift_face(curve, polygon, &pb.face, pb.modulus(), terms)?;
            branch = XBranch::Puiseux(PuiseuxBranch { face: pb.face.clone(), x });
        }
    };
    for (_, c) in ub.u.terms() {
        if !c.is_unit() {
            return Err(NewtonError::ZeroDivisorSplit(c.gcd_with_modulus()).into());
        }
    }
    Ok(BranchPiece { branch, pprime, u: ub })
}
