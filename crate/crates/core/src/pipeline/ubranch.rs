use alloc::sync::Arc;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::newton::{Modulus, NewtonError, PuiseuxSeries, QuotientElem, XBranch};
use crate::poly::{rat, Rat, UniPoly, Var};

use super::{PipelineError, Unfolding};

pub(crate) fn rational_modulus() -> Arc<Modulus> {
    Modulus::new(&UniPoly::power_of_var(Var::C, 1)).expect("c is squarefree")
}

/// `x(t)` along a branch; the zero branch becomes the exact zero series
/// over `ℚ`.
pub fn x_series(b: &XBranch) -> PuiseuxSeries {
    match b {
        XBranch::Zero { .. } => PuiseuxSeries::zero(&rational_modulus(), 1),
        XBranch::Puiseux(p) => p.x.clone(),
    }
}

/// Leading term of `P'(x(t), t)` along a branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PprimeCertificate {
    pub nonzero: bool,
    pub leading_exponent: Option<Rat>,
    pub leading_coeff: Option<QuotientElem>,
}

pub fn check_pprime(u: &Unfolding, b: &XBranch) -> Result<PprimeCertificate, PipelineError> {
    let x = x_series(b);
    let dp = PuiseuxSeries::substitute(&u.p_xt().derivative(Var::X), &x, None);
    match dp.leading() {
        Some((k, c)) => {
            // a zero divisor here must split the branch before continuing
            c.inverse()?;
            Ok(PprimeCertificate {
                nonzero: true,
                leading_exponent: Some(dp.exponent(k)),
                leading_coeff: Some(c.clone()),
            })
        }
        None if dp.is_exact() => Ok(PprimeCertificate {
            nonzero: false,
            leading_exponent: None,
            leading_coeff: None,
        }),
        None => Err(NewtonError::NotEnoughPrecision.into()),
    }
}

/// `u(t) = −(2/3)·P·Q'/P' + Q` along one branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UBranch {
    pub u: PuiseuxSeries,
    pub leading_exponent: Option<Rat>,
    /// Exponents at which the common denominator of the exponents seen so
    /// far grows; the first one is the leading exponent.
    pub essential_exponents: Vec<Rat>,
    /// Least common denominator of the known exponents of `u`.
    pub denominator_cert: u32,
    /// Whether no later term can raise `denominator_cert`: either `u` is
    /// exact or the certificate already equals the ramification of `x`.
    pub cert_established: bool,
}

impl UBranch {
    fn from_series(u: PuiseuxSeries) -> Self {
        let ram = u.ramification() as i64;
        let mut g = ram;
        let mut essential = Vec::new();
        for (k, _) in u.terms() {
            let next = g.gcd(&k);
            if next < g || essential.is_empty() {
                essential.push(u.exponent(k));
            }
            g = next;
        }
        let cert = (ram / g) as u32;
        UBranch {
            leading_exponent: u.leading().map(|(k, _)| u.exponent(k)),
            essential_exponents: essential,
            denominator_cert: cert,
            cert_established: u.is_exact() || cert as i64 == ram,
            u,
        }
    }

    /// Known terms past the leading one, counted in steps of the
    /// ramification; `None` for exact series.
    pub fn relative_precision(&self) -> Option<i64> {
        let p = self.u.precision()?;
        Some(match self.u.valuation() {
            Some(v) => p - v,
            None => 0,
        })
    }
}

/// Evaluates `u` along `b`; `max_relative` caps the inversion of `P'`.
pub fn u_branch(u: &Unfolding, b: &XBranch, max_relative: i64) -> Result<UBranch, PipelineError> {
    let x = x_series(b);
    let p = u.p_xt();
    let q = u.q_xt();
    let p_s = PuiseuxSeries::substitute(&p, &x, None);
    let dp_s = PuiseuxSeries::substitute(&p.derivative(Var::X), &x, None);
    let dq_s = PuiseuxSeries::substitute(&q.derivative(Var::X), &x, None);
    let q_s = PuiseuxSeries::substitute(&q, &x, None);
    if dp_s.is_exact_zero() {
        return Err(PipelineError::PprimeVanishes);
    }
    let inv = dp_s.invert(max_relative)?;
    let series = q_s.sub(&p_s.mul(&dq_s).mul(&inv).scale(&rat(2, 3)));
    Ok(UBranch::from_series(series))
}
