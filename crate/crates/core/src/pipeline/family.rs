use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_traits::Zero;

use crate::invariants::GermPQ;
use crate::newton::XBranch;
use crate::poly::{Order, Rat, UniPoly, Var};

use super::{analyze, classify, AnalysisConfig, Case, CaseLabel, DiscriminantReport, PipelineError, Unfolding, VerdictStatus};

/// How the `q` part of the perturbation `t·(x·y + q(x))` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QChoice {
    /// `q = x^{3ρ+4}` in case C, `q = 0` otherwise.
    Default,
    /// `q = 0` in every case.
    Zero,
    /// `q = x^k`.
    Monomial(u32),
}

/// The `s`-indexed family `P₀ = s·x^m`, `Q₀ = x^{ν+1}`, `p = x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationFamily {
    pub nu: u32,
    pub m: u32,
    pub case: CaseLabel,
    pub q: UniPoly,
}

impl PerturbationFamily {
    /// Builds the family without checking `2ν ≤ 3m − 2`, `m ≤ ν`.
    pub fn new(nu: u32, m: u32, choice: QChoice) -> Self {
        let case = classify(nu);
        let q = match (choice, case.rho) {
            (QChoice::Default, Some(rho)) => UniPoly::power_of_var(Var::X, 3 * rho + 4),
            (QChoice::Default, None) | (QChoice::Zero, _) => UniPoly::zero(Var::X),
            (QChoice::Monomial(k), _) => UniPoly::power_of_var(Var::X, k),
        };
        PerturbationFamily { nu, m, case, q }
    }

    pub fn at(&self, s: &Rat) -> Result<Unfolding, PipelineError> {
        let p0 = UniPoly::power_of_var(Var::X, self.m).scale(s);
        let q0 = UniPoly::power_of_var(Var::X, self.nu + 1);
        Unfolding::new(GermPQ::new(p0, q0)?, UniPoly::power_of_var(Var::X, 1), self.q.clone(), s.clone())
    }
}

/// `⌈(2ν+2)/3⌉ ..= ν`, the `m` with `2ν ≤ 3m − 2` and `m ≤ ν`.
pub fn admissible_m(nu: u32) -> RangeInclusive<u32> {
    (2 * nu + 4) / 3..=nu
}

pub fn select_perturbation(nu: u32, m: u32, choice: QChoice) -> Result<PerturbationFamily, PipelineError> {
    if nu < 1 {
        return Err(PipelineError::Hypothesis(String::from("nu must be at least 1")));
    }
    if 2 * nu + 2 > 3 * m {
        return Err(PipelineError::Hypothesis(format!("2nu = {} exceeds 3m - 2 = {}", 2 * nu, (3 * m) as i64 - 2)));
    }
    if m > nu {
        return Err(PipelineError::Hypothesis(format!("m = {m} exceeds nu = {nu}")));
    }
    Ok(PerturbationFamily::new(nu, m, choice))
}

/// Discrete branch data compared across the `s`-samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchSignature {
    pub branch_count: u32,
    pub zero_multiplicity: u32,
    /// `(λ, ramification, classical branches)` per face.
    pub faces: Vec<(Rat, u32, u32)>,
    /// `(leading u-exponent, essential exponents, denominator)` with the
    /// number of classical branches carrying it.
    pub u_data: Vec<((Option<Rat>, Vec<Rat>, u32), u32)>,
    pub separation_profile: Vec<(Rat, usize)>,
}

impl BranchSignature {
    pub fn of(r: &DiscriminantReport) -> Self {
        let mut u_data: BTreeMap<(Option<Rat>, Vec<Rat>, u32), u32> = BTreeMap::new();
        let mut zero_multiplicity = 0;
        for p in &r.pieces {
            if let XBranch::Zero { multiplicity } = p.branch {
                zero_multiplicity += multiplicity;
            }
            let key = (
                p.u.leading_exponent.clone(),
                p.u.essential_exponents.clone(),
                p.u.denominator_cert,
            );
            *u_data.entry(key).or_default() += p.branch_count();
        }
        BranchSignature {
            branch_count: r.branch_count(),
            zero_multiplicity,
            faces: r
                .faces
                .iter()
                .map(|f| (f.lambda.clone(), f.q, f.branch_points() / f.q))
                .collect(),
            u_data: u_data.into_iter().collect(),
            separation_profile: r.verdict.separation_profile.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BundleStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleRun {
    pub s: Rat,
    pub result: Result<DiscriminantReport, PipelineError>,
}

/// Outcome of the three checks over one `(ν, m)` family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyBundle {
    pub family: PerturbationFamily,
    pub runs: Vec<SampleRun>,
    /// μ equals `2ν` at every sample.
    pub mu_constant: bool,
    /// σ is `ν` at `s = 0` and `m` elsewhere.
    pub sigma_transition: bool,
    /// Every verdict is `Reduced`.
    pub all_reduced: bool,
    /// Signatures agree across samples.
    pub data_constant: bool,
    pub status: BundleStatus,
    pub failures: Vec<String>,
}

impl FamilyBundle {
    /// Combines per-sample runs, given in sample order.
    pub fn assemble(family: PerturbationFamily, runs: Vec<SampleRun>) -> Self {
        let nu = family.nu;
        let mut failures = Vec::new();
        let mut inconclusive = false;
        let mut mu_constant = true;
        let mut sigma_transition = true;
        let mut all_reduced = true;
        let mut signatures: Vec<BranchSignature> = Vec::new();
        for run in &runs {
            let s = crate::poly::fmt_rat(&run.s);
            let report = match &run.result {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("s = {s}: {e}"));
                    mu_constant = false;
                    sigma_transition = false;
                    all_reduced = false;
                    continue;
                }
            };
            if report.invariants.mu != Order::Finite(2 * nu) {
                mu_constant = false;
                failures.push(format!("s = {s}: mu = {} != 2nu = {}", report.invariants.mu, 2 * nu));
            }
            let want_sigma = if run.s.is_zero() { nu } else { family.m.min(nu) };
            if report.invariants.sigma != Order::Finite(want_sigma) {
                sigma_transition = false;
                failures.push(format!("s = {s}: sigma = {} != {want_sigma}", report.invariants.sigma));
            }
            match report.verdict.status {
                VerdictStatus::Reduced => {}
                VerdictStatus::NotReduced => {
                    all_reduced = false;
                    failures.push(format!("s = {s}: not reduced ({})", report.verdict.reason));
                }
                VerdictStatus::Inconclusive => {
                    all_reduced = false;
                    inconclusive = true;
                    failures.push(format!("s = {s}: inconclusive ({})", report.verdict.reason));
                }
            }
            signatures.push(BranchSignature::of(report));
        }
        let data_constant = signatures.windows(2).all(|w| w[0] == w[1]);
        if !data_constant {
            failures.push(String::from("branch data differ across samples"));
        }
        let certified_failure = !mu_constant
            || !sigma_transition
            || runs.iter().any(|r| match &r.result {
                Ok(rep) => rep.verdict.status == VerdictStatus::NotReduced,
                Err(_) => true,
            });
        let status = if certified_failure {
            BundleStatus::Fail
        } else if inconclusive {
            BundleStatus::Inconclusive
        } else if !data_constant {
            BundleStatus::Fail
        } else {
            BundleStatus::Pass
        };
        FamilyBundle {
            family,
            runs,
            mu_constant,
            sigma_transition,
            all_reduced,
            data_constant,
            status,
            failures,
        }
    }

    pub fn case(&self) -> Case {
        self.family.case.case
    }
}

/// Runs the family at `s = 0` and every sample and checks μ-constancy,
/// reducedness with constant branch data, and the σ transition `ν → m`.
pub fn verify_family(
    nu: u32,
    m: u32,
    samples: &[Rat],
    choice: QChoice,
    cfg: AnalysisConfig,
) -> Result<FamilyBundle, PipelineError> {
    let family = select_perturbation(nu, m, choice)?;
    let mut all: Vec<Rat> = Vec::with_capacity(samples.len() + 1);
    if !samples.iter().any(Zero::is_zero) {
        all.push(Rat::zero());
    }
    all.extend(samples.iter().cloned());
    let runs = all
        .into_iter()
        .map(|s| {
            let result = family.at(&s).and_then(|u| analyze(&u, cfg));
            SampleRun { s, result }
        })
        .collect();
    Ok(FamilyBundle::assemble(family, runs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn admissible_ranges() {
        assert_eq!(admissible_m(2), 2..=2);
        assert_eq!(admissible_m(5), 4..=5);
        assert_eq!(admissible_m(12), 9..=12);
        assert!(admissible_m(1).is_empty());
        for nu in 1..40 {
            for m in 1..=nu {
                let ok = 2 * nu <= 3 * m - 2;
                assert_eq!(admissible_m(nu).contains(&m), ok, "nu={nu} m={m}");
            }
        }
    }

    #[test]
    fn selection() {
        let f = select_perturbation(2, 2, QChoice::Default).unwrap();
        assert!(f.q.is_zero());
        let f = select_perturbation(5, 4, QChoice::Default).unwrap();
        assert_eq!(f.q, UniPoly::power_of_var(Var::X, 4));
        assert!(matches!(select_perturbation(3, 2, QChoice::Default), Err(PipelineError::Hypothesis(_))));
    }

    #[test]
    fn case_a_bundle_passes() {
        let b = verify_family(3, 3, &[rat(1, 10)], QChoice::Default, AnalysisConfig::default()).unwrap();
        assert_eq!(b.runs.len(), 2);
        assert_eq!(b.status, BundleStatus::Pass, "{:?}", b.failures);
    }
}
