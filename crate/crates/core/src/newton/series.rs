use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::poly::{fmt_rat, BiPoly, Rat};

use super::{Modulus, NewtonError, QuotientElem};

/// Truncated Laurent–Puiseux series in `t` with coefficients in
/// `ℚ[c]/(φ)`.
///
/// Exponents are integers `k` standing for `t^{k/ramification}`.
/// `precision = Some(n)` means every coefficient with `k < n` is known and
/// nothing is known from `n` on; `None` marks an exact (finite) series.
#[derive(Clone, PartialEq, Eq)]
pub struct PuiseuxSeries {
    ramification: u32,
    modulus: Arc<Modulus>,
    terms: BTreeMap<i64, QuotientElem>,
    precision: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl PuiseuxSeries {
    pub fn zero(modulus: &Arc<Modulus>, ramification: u32) -> Self {
        assert!(ramification >= 1, "ramification must be positive");
        PuiseuxSeries {
            ramification,
            modulus: modulus.clone(),
            terms: BTreeMap::new(),
            precision: None,
        }
    }

    /// Exact `coeff · t^{exp/ramification}`.
    pub fn monomial(coeff: QuotientElem, exp: i64, ramification: u32) -> Self {
        let mut s = Self::zero(coeff.modulus(), ramification);
        s.add_term(exp, coeff);
        s
    }

    pub fn constant(coeff: QuotientElem, ramification: u32) -> Self {
        Self::monomial(coeff, 0, ramification)
    }

    /// Exact `t^k`.
    pub fn t_power(modulus: &Arc<Modulus>, ramification: u32, k: u32) -> Self {
        Self::monomial(
            QuotientElem::one(modulus),
            k as i64 * ramification as i64,
            ramification,
        )
    }

    pub fn from_terms<I>(modulus: &Arc<Modulus>, ramification: u32, terms: I, precision: Option<i64>) -> Self
    where
        I: IntoIterator<Item = (i64, QuotientElem)>,
    {
        let mut s = Self::zero(modulus, ramification);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s.with_precision(precision)
    }

    fn add_term(&mut self, k: i64, c: QuotientElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(slot) => {
                *slot = slot.add(&c);
                if slot.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn modulus(&self) -> &Arc<Modulus> {
        &self.modulus
    }

    /// First unknown exponent (in units of `t^{1/ramification}`).
    pub fn precision(&self) -> Option<i64> {
        self.precision
    }

    /// First unknown exponent as a rational power of `t`.
    pub fn precision_exponent(&self) -> Option<Rat> {
        self.precision.map(|k| self.exponent(k))
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// Rational exponent of the integer index `k`.
    pub fn exponent(&self, k: i64) -> Rat {
        Rat::new(k.into(), (self.ramification as i64).into())
    }

    /// Known nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &QuotientElem)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: i64) -> QuotientElem {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| QuotientElem::zero(&self.modulus))
    }

    /// Index of the lowest known nonzero term.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn leading(&self) -> Option<(i64, &QuotientElem)> {
        self.terms.iter().next().map(|(&k, c)| (k, c))
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.precision.is_none()
    }

    // Guaranteed lower bound on the true valuation; `None` for exact zero.
    fn valuation_bound(&self) -> Option<i64> {
        self.valuation().or(self.precision)
    }

    /// Drops terms at or beyond `precision` (no-op for `None`).
    pub fn with_precision(mut self, precision: Option<i64>) -> Self {
        let precision = min_prec(self.precision, precision);
        if let Some(n) = precision {
            self.terms.retain(|&k, _| k < n);
        }
        self.precision = precision;
        self
    }

    /// Re-expresses the series with a finer ramification `r`, a multiple of
    /// the current one.
    pub fn with_ramification(&self, r: u32) -> Self {
        assert!(r % self.ramification == 0, "ramification {r} is not a multiple of {}", self.ramification);
        let f = (r / self.ramification) as i64;
        PuiseuxSeries {
            ramification: r,
            modulus: self.modulus.clone(),
            terms: self.terms.iter().map(|(&k, c)| (k * f, c.clone())).collect(),
            precision: self.precision.map(|p| p * f),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let r = self.ramification.lcm(&other.ramification);
        (self.with_ramification(r), other.with_ramification(r))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (k, c) in b.terms {
            a.add_term(k, c);
        }
        a.with_precision(b.precision)
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            ramification: self.ramification,
            modulus: self.modulus.clone(),
            terms: self.terms.iter().map(|(&k, c)| (k, c.neg())).collect(),
            precision: self.precision,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        self.mul_elem(&QuotientElem::from_rat(&self.modulus, k))
    }

    pub fn mul_elem(&self, c: &QuotientElem) -> Self {
        let mut out = Self::zero(&self.modulus, self.ramification);
        for (&k, a) in &self.terms {
            out.add_term(k, a.mul(c));
        }
        out.precision = if c.is_zero() { None } else { self.precision };
        out
    }

    /// Multiplies by `t^{k/ramification}`.
    pub fn shift(&self, k: i64) -> Self {
        PuiseuxSeries {
            ramification: self.ramification,
            modulus: self.modulus.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
            precision: self.precision.map(|p| p + k),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let precision = match (a.valuation_bound(), b.valuation_bound()) {
            (None, _) | (_, None) => return Self::zero(&a.modulus, a.ramification),
            (Some(va), Some(vb)) => min_prec(a.precision.map(|p| p + vb), b.precision.map(|p| p + va)),
        };
        let mut out = Self::zero(&a.modulus, a.ramification);
        for (&ka, ca) in &a.terms {
            for (&kb, cb) in &b.terms {
                if precision.is_some_and(|n| ka + kb >= n) {
                    break;
                }
                out.add_term(ka + kb, ca.mul(cb));
            }
        }
        out.with_precision(precision)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::constant(QuotientElem::one(&self.modulus), self.ramification);
        for _ in 0..n {
            result = result.mul(self);
        }
        result
    }

    /// Reciprocal to relative precision at most `max_relative` past the
    /// leading term; exact for exact monomials.
    pub fn invert(&self, max_relative: i64) -> Result<Self, NewtonError> {
        let (v, lead) = match self.leading() {
            Some(l) => l,
            None if self.is_exact() => return Err(NewtonError::DivisionByZero),
            None => return Err(NewtonError::NotEnoughPrecision),
        };
        let lead_inv = lead.inverse()?;
        if self.is_exact() && self.terms.len() == 1 {
            return Ok(Self::monomial(lead_inv, -v, self.ramification));
        }
        let rel = match self.precision {
            Some(p) => (p - v).min(max_relative),
            None => max_relative,
        };
        let h: Vec<QuotientElem> = (0..rel).map(|k| self.coeff(v + k).mul(&lead_inv)).collect();
        let mut b: Vec<QuotientElem> = Vec::with_capacity(rel as usize);
        b.push(QuotientElem::one(&self.modulus));
        for n in 1..rel as usize {
            let mut acc = QuotientElem::zero(&self.modulus);
            for k in 1..=n {
                if !h[k].is_zero() && !b[n - k].is_zero() {
                    acc = acc.add(&h[k].mul(&b[n - k]));
                }
            }
            b.push(acc.neg());
        }
        Ok(Self::from_terms(
            &self.modulus,
            self.ramification,
            b.into_iter().enumerate().map(|(n, c)| (n as i64 - v, c.mul(&lead_inv))),
            Some(rel - v),
        ))
    }

    /// `g(x(t), t)` for `x = self`, keeping at most terms below `cap`.
    pub fn substitute(g: &BiPoly, x: &Self, cap: Option<i64>) -> Self {
        let ram = x.ramification;
        let modulus = &x.modulus;
        let coeff_series = |j: u32| {
            let mut s = Self::zero(modulus, ram);
            for ((xe, te), c) in g.terms() {
                if xe == j {
                    s.add_term(te as i64 * ram as i64, QuotientElem::from_rat(modulus, c));
                }
            }
            s.with_precision(cap)
        };
        let Some(deg) = g.degree(crate::poly::Var::X) else {
            return Self::zero(modulus, ram);
        };
        let mut acc = coeff_series(deg);
        for j in (0..deg).rev() {
            acc = acc.mul(x).add(&coeff_series(j)).with_precision(cap);
        }
        acc
    }

    /// Image of every coefficient in `ℚ[c]/(ψ)` for a factor `ψ` of `φ`.
    pub fn reduce_to(&self, factor: &Arc<Modulus>) -> Self {
        let mut out = Self::zero(factor, self.ramification);
        for (&k, c) in &self.terms {
            out.add_term(k, c.reduce_to(factor));
        }
        out.precision = self.precision;
        out
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&k, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*t^({})", fmt_rat(&self.exponent(k)))?;
        }
        if let Some(p) = self.precision {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "O(t^({}))", fmt_rat(&self.exponent(p)))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PuiseuxSeries({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat, UniPoly, Var};
    use alloc::string::ToString;

    fn rationals() -> Arc<Modulus> {
        Modulus::new(&UniPoly::power_of_var(Var::C, 1)).unwrap()
    }

    fn q(m: &Arc<Modulus>, r: Rat) -> QuotientElem {
        QuotientElem::from_rat(m, &r)
    }

    #[test]
    fn geometric_inverse() {
        let m = rationals();
        let one = q(&m, int(1));
        // 1 + t^{1/2}
        let s = PuiseuxSeries::from_terms(&m, 2, [(0, one.clone()), (1, one.clone())], None);
        let inv = s.invert(3).unwrap();
        let expected = PuiseuxSeries::from_terms(&m, 2, [(0, one.clone()), (1, one.neg()), (2, one)], Some(3));
        assert_eq!(inv, expected);
        assert_eq!(inv.precision_exponent(), Some(rat(3, 2)));
        assert_eq!(inv.to_string(), "(1)*t^(0) + (-1)*t^(1/2) + (1)*t^(1) + O(t^(3/2))");
    }

    #[test]
    fn common_denominator_in_products() {
        let m = rationals();
        let one = q(&m, int(1));
        let a = PuiseuxSeries::monomial(one.clone(), 1, 3);
        let b = PuiseuxSeries::monomial(one, 1, 2);
        let p = a.mul(&b);
        assert_eq!(p.ramification(), 6);
        assert_eq!(p.leading().map(|(k, _)| p.exponent(k)), Some(rat(5, 6)));
        assert!(p.is_exact());
    }

    #[test]
    fn product_precision() {
        let m = rationals();
        let one = q(&m, int(1));
        // (t + O(t^3)) · (t^2 + O(t^4)) = t^3 + O(t^5)
        let a = PuiseuxSeries::from_terms(&m, 1, [(1, one.clone())], Some(3));
        let b = PuiseuxSeries::from_terms(&m, 1, [(2, one)], Some(4));
        assert_eq!(a.mul(&b).precision(), Some(5));
        assert_eq!(a.add(&b).precision(), Some(3));
    }

    #[test]
    fn monomial_inverse_is_exact() {
        let m = rationals();
        let s = PuiseuxSeries::monomial(q(&m, int(4)), 3, 5);
        let inv = s.invert(2).unwrap();
        assert!(inv.is_exact());
        assert_eq!(inv.leading().unwrap().0, -3);
        assert_eq!(inv.leading().unwrap().1.as_rat(), Some(rat(1, 4)));
    }

    #[test]
    fn invert_needs_a_known_term() {
        let m = rationals();
        let s = PuiseuxSeries::zero(&m, 1).with_precision(Some(4));
        assert_eq!(s.invert(3), Err(NewtonError::NotEnoughPrecision));
        assert_eq!(PuiseuxSeries::zero(&m, 1).invert(3), Err(NewtonError::DivisionByZero));
    }

    #[test]
    fn substitution_into_power() {
        // x = c·t^{3/5} modulo 48c^5 − 1 into x^4: leading exponent 12/5
        let phi = UniPoly::from_terms(Var::C, [(5, int(48)), (0, int(-1))]);
        let m = Modulus::new(&phi).unwrap();
        let x = PuiseuxSeries::monomial(QuotientElem::generator(&m), 3, 5);
        let g = BiPoly::monomial(int(1), 4, 0);
        let v = PuiseuxSeries::substitute(&g, &x, None);
        let (k, c) = v.leading().unwrap();
        assert_eq!(v.exponent(k), rat(12, 5));
        assert_eq!(c, &QuotientElem::generator(&m).pow(4));
    }
}
