//! Discriminant curves of one-parameter unfoldings
//! `y³ − P(x,t)·y + Q(x,t) − u` with `P = P₀ + t·p`, `Q = Q₀ + t·q`.
//!
//! The critical locus, projected to `(x, t)`, is `3Q'² − P·P'² = 0`
//! (derivatives in `x`). Its branches `x(t)` are pushed to the `(t, u)`
//! plane through `u = −(2/3)(P/P')·Q' + Q`; the discriminant is reduced when
//! the resulting parametrizations are pairwise distinct.

mod analysis;
mod numeric;
mod family;
mod reduced;
mod ubranch;

pub use analysis::{analyze, AnalysisConfig, BranchPiece, DiscriminantReport};
pub use numeric::{numeric_validate, NumericBranch, NumericDiagnostic, NumericError, NumericOptions};
pub use family::{
    admissible_m, select_perturbation, verify_family, BranchSignature, BundleStatus, PerturbationFamily, FamilyBundle,
    QChoice, SampleRun,
};
pub use reduced::{reducedness, Accounting, ReducednessVerdict, VerdictStatus};
pub use ubranch::{check_pprime, u_branch, x_series, PprimeCertificate, UBranch};

use alloc::string::String;

use num_integer::Integer;

use crate::invariants::{GermPQ, InvariantsError};
use crate::newton::NewtonError;
use crate::poly::{int, BiPoly, Rat, UniPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("perturbation p and q are both zero")]
    TrivialPerturbation,
    #[error("the curve 3Q'^2 - PP'^2 vanishes identically")]
    ZeroCurve,
    #[error("t divides the critical curve; the discriminant contains t = 0")]
    VerticalComponent,
    #[error("P' vanishes along a branch")]
    PprimeVanishes,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Germ(#[from] InvariantsError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
}

/// `f − u + t·(p(x)·y + q(x))` over the base germ `f = y³ − P₀y + Q₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unfolding {
    pub base: GermPQ,
    pub p: UniPoly,
    pub q: UniPoly,
    /// Value of the family parameter already substituted into `base`.
    pub s_value: Rat,
}

impl Unfolding {
    pub fn new(base: GermPQ, p: UniPoly, q: UniPoly, s_value: Rat) -> Result<Self, PipelineError> {
        if p.is_zero() && q.is_zero() {
            return Err(PipelineError::TrivialPerturbation);
        }
        Ok(Unfolding {
            base,
            p: p.with_var(Var::X),
            q: q.with_var(Var::X),
            s_value,
        })
    }

    /// `P(x, t) = P₀ + t·p`.
    pub fn p_xt(&self) -> BiPoly {
        &BiPoly::from_uni(self.base.p()) + &BiPoly::from_uni(&self.p).shift(0, 1)
    }

    /// `Q(x, t) = Q₀ + t·q`.
    pub fn q_xt(&self) -> BiPoly {
        &BiPoly::from_uni(self.base.q()) + &BiPoly::from_uni(&self.q).shift(0, 1)
    }

    /// Smallest `d > 1` such that `x ↦ ζx`, `ζ` a primitive `d`-th root of
    /// unity, fixes `Q`, scales `P` by `ζ^a` with `3a ≡ 0 (mod d)`, and hence
    /// maps the critical curve to itself while leaving `u` unchanged.
    pub fn cyclic_symmetry(&self) -> Option<u32> {
        let g = self.q_xt().terms().fold(0u32, |g, ((j, _), _)| g.gcd(&j));
        let p_exps: alloc::vec::Vec<u32> = self.p_xt().terms().map(|((j, _), _)| j).collect();
        (2..=g).find(|d| {
            g % d == 0
                && p_exps.first().is_none_or(|a| {
                    (3 * a) % d == 0 && p_exps.iter().all(|b| b % d == a % d)
                })
        })
    }

    /// `ν` when `Q₀ = x^{ν+1}`, the Brieskorn–Pham situation.
    pub fn nu(&self) -> Option<u32> {
        let q0 = self.base.q();
        match (q0.num_terms(), q0.degree()) {
            (1, Some(d)) if d >= 2 && q0.leading_coeff() == int(1) => Some(d - 1),
            _ => None,
        }
    }
}

/// `3Q'² − P·P'²` as a polynomial in `(x, t)`.
pub fn build_curve(u: &Unfolding) -> Result<BiPoly, PipelineError> {
    let p = u.p_xt();
    let q = u.q_xt();
    let dp = p.derivative(Var::X);
    let dq = q.derivative(Var::X);
    let f = &dq.pow(2).scale(&int(3)) - &(&p * &dp.pow(2));
    if f.is_zero() {
        return Err(PipelineError::ZeroCurve);
    }
    Ok(f)
}

/// `A₀, …, A₃` with `3Q'² − P·P'² = Σ A_i tⁱ`, written out from
/// `P = P₀ + t·p`, `Q = Q₀ + t·q`.
pub fn table_coefficients(p0: &UniPoly, q0: &UniPoly, p: &UniPoly, q: &UniPoly) -> [UniPoly; 4] {
    let dp0 = p0.derivative();
    let dq0 = q0.derivative();
    let dp = p.derivative();
    let dq = q.derivative();
    let k = |n: i64| int(n);
    let a0 = &dq0.pow(2).scale(&k(3)) - &(p0 * &dp0.pow(2));
    let a1 = &(&(&dq0 * &dq).scale(&k(6)) - &(p * &dp0.pow(2))) - &(&(p0 * &dp0) * &dp).scale(&k(2));
    let a2 = &(&dq.pow(2).scale(&k(3)) - &(&(p * &dp0) * &dp).scale(&k(2))) - &(p0 * &dp.pow(2));
    let a3 = -&(p * &dp.pow(2));
    [a0, a1, a2, a3]
}

/// Which of the three residue situations `2ν − 1` falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// `gcd(2ν − 1, 3) = 1`.
    A,
    /// `3 | 2ν − 1`, `9 ∤ 2ν − 1`.
    B,
    /// `9 | 2ν − 1`.
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CaseLabel {
    pub case: Case,
    /// `2ν − 1 = 3e` in cases B and C.
    pub e: Option<u32>,
    /// `ν − 5 = 9ρ` in case C.
    pub rho: Option<u32>,
}

pub fn classify(nu: u32) -> CaseLabel {
    assert!(nu >= 1, "nu must be positive");
    let n = 2 * nu - 1;
    if n % 3 != 0 {
        CaseLabel { case: Case::A, e: None, rho: None }
    } else if n % 9 != 0 {
        CaseLabel { case: Case::B, e: Some(n / 3), rho: None }
    } else {
        CaseLabel { case: Case::C, e: Some(n / 3), rho: Some((nu - 5) / 9) }
    }
}

impl core::fmt::Display for Case {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Case::A => "A",
            Case::B => "B",
            Case::C => "C",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn x(e: u32) -> UniPoly {
        UniPoly::power_of_var(Var::X, e)
    }

    #[test]
    fn classify_small() {
        assert_eq!(classify(3), CaseLabel { case: Case::A, e: None, rho: None });
        assert_eq!(classify(2), CaseLabel { case: Case::B, e: Some(1), rho: None });
        assert_eq!(classify(5), CaseLabel { case: Case::C, e: Some(3), rho: Some(0) });
        assert_eq!(classify(14).rho, Some(1));
    }

    #[test]
    fn curve_of_the_cube() {
        let base = GermPQ::new(UniPoly::zero(Var::X), UniPoly::zero(Var::X)).unwrap();
        let u = Unfolding::new(base, x(1), UniPoly::zero(Var::X), int(0)).unwrap();
        assert_eq!(build_curve(&u).unwrap(), BiPoly::monomial(int(-1), 1, 3));
    }

    #[test]
    fn table_at_p_equal_x() {
        let p0 = x(3).scale(&rat(1, 2));
        let q0 = x(4);
        let zero = UniPoly::zero(Var::X);
        let [a0, a1, a2, a3] = table_coefficients(&p0, &q0, &x(1), &zero);
        let dp0 = p0.derivative();
        assert_eq!(a1, &-&(&x(1) * &dp0.pow(2)) - &(&p0 * &dp0).scale(&int(2)));
        assert_eq!(a2, &-&p0 - &(&x(1) * &dp0).scale(&int(2)));
        assert_eq!(a3, -&x(1));
        let base = GermPQ::new(p0, q0).unwrap();
        let u = Unfolding::new(base, x(1), zero, rat(1, 2)).unwrap();
        let f = build_curve(&u).unwrap();
        for (i, a) in [a0, a1, a2, a3].iter().enumerate() {
            assert_eq!(&f.t_coeff(i as u32), a);
        }
    }

    #[test]
    fn trivial_perturbation_rejected() {
        let base = GermPQ::new(UniPoly::zero(Var::X), x(3)).unwrap();
        let zero = UniPoly::zero(Var::X);
        assert_eq!(
            Unfolding::new(base, zero.clone(), zero, int(0)),
            Err(PipelineError::TrivialPerturbation)
        );
    }

    #[test]
    fn nu_is_read_from_q0() {
        let base = GermPQ::new(UniPoly::zero(Var::X), x(4)).unwrap();
        let u = Unfolding::new(base, x(1), UniPoly::zero(Var::X), int(0)).unwrap();
        assert_eq!(u.nu(), Some(3));
    }
}
