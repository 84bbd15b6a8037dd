use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::uni::forward_owned;
use super::{Order, Rat, UniPoly, Var};

/// Sparse polynomial in `(x, t)`, keyed by `(x-exponent, t-exponent)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rat, x_exp: u32, t_exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(x_exp, t_exp, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Embeds a univariate polynomial; a `t`-polynomial goes to the t-axis,
    /// everything else to the x-axis.
    pub fn from_uni(p: &UniPoly) -> Self {
        let on_t = p.var() == Var::T;
        Self::from_terms(p.terms().map(|(e, c)| {
            let key = if on_t { (0, e) } else { (e, 0) };
            (key, c.clone())
        }))
    }

    pub fn add_term(&mut self, x_exp: u32, t_exp: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = (x_exp, t_exp);
        let slot = self.coeffs.entry(key).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, x_exp: u32, t_exp: u32) -> Rat {
        self.coeffs
            .get(&(x_exp, t_exp))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Terms ordered by `(x-exponent, t-exponent)`.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ((u32, u32), &Rat)> + '_ {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn support(&self) -> Vec<(u32, u32)> {
        self.coeffs.keys().copied().collect()
    }

    /// Least exponent of `var` over the support (`x` or `t`).
    pub fn ord(&self, var: Var) -> Order {
        self.terms()
            .map(|((i, j), _)| if var == Var::T { j } else { i })
            .min()
            .map_or(Order::Infinite, Order::Finite)
    }

    /// Largest exponent of `var`, `None` for zero.
    pub fn degree(&self, var: Var) -> Option<u32> {
        self.terms()
            .map(|((i, j), _)| if var == Var::T { j } else { i })
            .max()
    }

    pub fn derivative(&self, var: Var) -> Self {
        let by_t = var == Var::T;
        Self::from_terms(self.terms().filter_map(|((i, j), c)| {
            let e = if by_t { j } else { i };
            if e == 0 {
                return None;
            }
            let key = if by_t { (i, j - 1) } else { (i - 1, j) };
            Some((key, c * Rat::from_integer(e.into())))
        }))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        BiPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    /// Multiplies by `x^a t^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| ((i + a, j + b), c.clone()))
                .collect(),
        }
    }

    /// Divides by `x^a`; every term must have x-exponent at least `a`.
    pub fn unshift_x(&self, a: u32) -> Self {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| {
                    assert!(i >= a, "x^{a} does not divide the polynomial");
                    ((i - a, j), c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
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

    /// Coefficient of `t^k` as a polynomial in `x`.
    pub fn t_coeff(&self, k: u32) -> UniPoly {
        UniPoly::from_terms(
            Var::X,
            self.terms().filter(|&((_, j), _)| j == k).map(|((i, _), c)| (i, c.clone())),
        )
    }

    /// Coefficient of `x^k` as a polynomial in `t`.
    pub fn x_coeff(&self, k: u32) -> UniPoly {
        UniPoly::from_terms(
            Var::T,
            self.terms().filter(|&((i, _), _)| i == k).map(|((_, j), c)| (j, c.clone())),
        )
    }

    /// Substitutes `t := value`.
    pub fn eval_t(&self, value: &Rat) -> UniPoly {
        let mut out = UniPoly::zero(Var::X);
        for ((i, j), c) in self.terms() {
            out.add_term(i, c * num_traits::pow(value.clone(), j as usize));
        }
        out
    }

    /// Substitutes `x := value`.
    pub fn eval_x(&self, value: &Rat) -> UniPoly {
        let mut out = UniPoly::zero(Var::T);
        for ((i, j), c) in self.terms() {
            out.add_term(j, c * num_traits::pow(value.clone(), i as usize));
        }
        out
    }

    /// The polynomial as a univariate one in `x` if it has no `t`.
    pub fn as_x_poly(&self) -> Option<UniPoly> {
        if self.terms().all(|((_, j), _)| j == 0) {
            Some(self.t_coeff(0))
        } else {
            None
        }
    }

    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

impl From<&UniPoly> for BiPoly {
    fn from(p: &UniPoly) -> Self {
        BiPoly::from_uni(p)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in rhs.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in rhs.terms() {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((ia, ja), ca) in self.terms() {
            for ((ib, jb), cb) in rhs.terms() {
                out.add_term(ia + ib, ja + jb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

forward_owned!(BiPoly, Add::add, Sub::sub, Mul::mul);

impl Neg for BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        -&self
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // descending x-exponent, then descending t-exponent
        super::parse::write_terms(
            f,
            self.terms().rev().map(|((i, j), c)| (c, [('x', i), ('t', j)])),
        )
    }
}
