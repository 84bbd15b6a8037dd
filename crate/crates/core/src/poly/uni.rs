use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Order, Rat, Var};

/// Sparse univariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial has an empty
/// support. Constants may be combined with a polynomial in any variable;
/// combining two non-constant polynomials in different variables panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    var: Var,
    coeffs: BTreeMap<u32, Rat>,
}

impl UniPoly {
    pub fn zero(var: Var) -> Self {
        UniPoly {
            var,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, Rat::one())
    }

    pub fn constant(var: Var, c: Rat) -> Self {
        Self::monomial(var, c, 0)
    }

    pub fn monomial(var: Var, c: Rat, exp: u32) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, c);
        p
    }

    /// `var^exp` with coefficient one.
    pub fn power_of_var(var: Var, exp: u32) -> Self {
        Self::monomial(var, Rat::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rat)>>(var: Var, terms: I) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Dense constructor: `coeffs[i]` is the coefficient of `var^i`.
    pub fn from_dense(var: Var, coeffs: &[Rat]) -> Self {
        Self::from_terms(var, coeffs.iter().cloned().enumerate().map(|(i, c)| (i as u32, c)))
    }

    pub fn add_term(&mut self, exp: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().map_or(true, |d| d == 0)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Least exponent in the support; `Order::Infinite` for zero.
    pub fn ord(&self) -> Order {
        self.coeffs
            .keys()
            .next()
            .map_or(Order::Infinite, |&e| Order::Finite(e))
    }

    pub fn coeff(&self, exp: u32) -> Rat {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rat)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients `[c_0, …, c_{n-1}]`, zero-padded to length `n`.
    /// Terms of degree `≥ n` are ignored.
    pub fn to_dense(&self, n: usize) -> alloc::vec::Vec<Rat> {
        let mut v = alloc::vec![Rat::zero(); n];
        for (e, c) in self.terms() {
            if (e as usize) < n {
                v[e as usize] = c.clone();
            }
        }
        v
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.var,
            self.terms()
                .filter(|&(e, _)| e > 0)
                .map(|(e, c)| (e - 1, c * Rat::from_integer(e.into()))),
        )
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero(self.var);
        }
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: u32) -> Self {
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Drops all terms of degree `> max_deg`.
    pub fn truncate(&self, max_deg: u32) -> Self {
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.range(..=max_deg).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.var);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        let mut last = self.degree().unwrap_or(0);
        for (e, c) in self.terms().rev() {
            for _ in e..last {
                acc *= at;
            }
            acc += c;
            last = e;
        }
        for _ in 0..last {
            acc *= at;
        }
        acc
    }

    /// Substitutes `var := inner`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(inner.var);
        let mut last = self.degree().unwrap_or(0);
        for (e, c) in self.terms().rev() {
            for _ in e..last {
                acc = &acc * inner;
            }
            acc.add_term(0, c.clone());
            last = e;
        }
        for _ in 0..last {
            acc = &acc * inner;
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading_coeff();
        let var = combine_var(self, divisor);
        let mut quot = UniPoly::zero(var);
        let mut rem = self.clone().with_var(var);
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let k = &rem.leading_coeff() / &lc;
            let shift = rd - dd;
            quot.add_term(shift, k.clone());
            for (e, c) in divisor.terms() {
                rem.add_term(e + shift, -(c * &k));
            }
        }
        (quot, rem)
    }

    /// Scales to leading coefficient one. Zero stays zero.
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let var = combine_var(self, other);
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(var), UniPoly::zero(var));
        let (mut t0, mut t1) = (UniPoly::zero(var), UniPoly::one(var));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = r0.leading_coeff().recip();
        (r0.scale(&k), s0.scale(&k), t0.scale(&k))
    }

    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

fn combine_var(a: &UniPoly, b: &UniPoly) -> Var {
    if a.var == b.var || b.is_constant() {
        a.var
    } else if a.is_constant() {
        b.var
    } else {
        panic!("mixing polynomials in {} and {}", a.var, b.var)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        out.var = combine_var(self, rhs);
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        out.var = combine_var(self, rhs);
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero(combine_var(self, rhs));
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(UniPoly, Add::add, Sub::sub, Mul::mul);

impl Neg for UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        -&self
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.var.symbol();
        super::parse::write_terms(
            f,
            self.terms().rev().map(|(e, c)| (c, [(sym, e)])),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SquarefreeError {
    #[error("squarefree test of the zero polynomial")]
    ZeroPolynomial,
}

/// Returns `gcd(p, p')` (monic) and whether `p` is squarefree, i.e. whether
/// that gcd is a nonzero constant.
pub fn gcd_sqfree(p: &UniPoly) -> Result<(UniPoly, bool), SquarefreeError> {
    if p.is_zero() {
        return Err(SquarefreeError::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    let sqfree = g.degree() == Some(0);
    Ok((g, sqfree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use alloc::string::ToString;

    fn x(e: u32) -> UniPoly {
        UniPoly::power_of_var(Var::X, e)
    }

    #[test]
    fn ord_of_sparse_and_zero() {
        let p = &x(5) - &x(7).scale(&int(2));
        assert_eq!(p.ord(), Order::Finite(5));
        assert_eq!(UniPoly::zero(Var::X).ord(), Order::Infinite);
        // 3(ν+1)² x^{2ν} at ν = 3
        let nu = 3u32;
        let a0 = x(2 * nu).scale(&int(3 * 16));
        assert_eq!(a0.ord(), Order::Finite(6));
    }

    #[test]
    fn power_rule() {
        let p = x(3).derivative();
        assert_eq!(p, x(2).scale(&int(3)));
        // d/dx (s x^σ + t x) with s = 1/2, σ = 3 and t kept as a number 5
        let s = rat(1, 2);
        let p = &x(3).scale(&s) + &x(1).scale(&int(5));
        assert_eq!(p.derivative(), &x(2).scale(&rat(3, 2)) + &UniPoly::constant(Var::X, int(5)));
    }

    #[test]
    fn gcd_and_squarefree() {
        let p = &x(2) + &UniPoly::one(Var::X);
        assert!(gcd_sqfree(&p).unwrap().1);
        let q = (&x(1) - &UniPoly::one(Var::X)).pow(2);
        let (g, sf) = gcd_sqfree(&q).unwrap();
        assert!(!sf);
        assert_eq!(g, &x(1) - &UniPoly::one(Var::X));
        assert_eq!(gcd_sqfree(&UniPoly::zero(Var::X)), Err(SquarefreeError::ZeroPolynomial));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = &x(4) - &UniPoly::one(Var::X);
        let b = &x(3) + &x(1).scale(&int(2));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert_eq!(g, a.gcd(&b));
    }

    #[test]
    fn eval_and_compose() {
        let p = &x(3).scale(&int(2)) - &x(1);
        assert_eq!(p.eval(&int(2)), int(14));
        let inner = &x(1) + &UniPoly::one(Var::X);
        assert_eq!(p.compose(&inner).eval(&int(1)), p.eval(&int(2)));
    }

    #[test]
    fn display() {
        let p = &x(4) - &x(1).scale(&rat(2, 3));
        assert_eq!(p.to_string(), "x^4 - 2/3*x");
        assert_eq!(UniPoly::zero(Var::X).to_string(), "0");
        assert_eq!((-&x(2)).to_string(), "-x^2");
    }
}
