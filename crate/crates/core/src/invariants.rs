//! Milnor number and σ-invariant of `f = y³ − P(x)·y + Q(x)`.
//!
//! Both are read off orders of vanishing:
//! `σ = min(ord P, ord Q')` and `μ = ord(3Q'² − P·P'²)`. The second
//! formula is cross-checked by an independent route that eliminates `y`
//! from `f_y` and `f_x` with a Sylvester resultant.

use alloc::vec;

use num_traits::One;

use crate::poly::{int, rat, resultant_y_formal, BiPoly, Order, Rat, UniPoly, Var, YPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantsError {
    #[error("{name} must vanish at the origin (order {order})")]
    NotVanishing { name: &'static str, order: Order },
    #[error("parameter out of range: {0}")]
    ParameterRange(&'static str),
}

/// The germ `y³ − P(x)·y + Q(x)` with `P(0) = Q(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermPQ {
    p: UniPoly,
    q: UniPoly,
}

impl GermPQ {
    pub fn new(p: UniPoly, q: UniPoly) -> Result<Self, InvariantsError> {
        for (name, poly) in [("P", &p), ("Q", &q)] {
            let order = poly.ord();
            if order == Order::Finite(0) {
                return Err(InvariantsError::NotVanishing { name, order });
            }
        }
        Ok(GermPQ {
            p: p.with_var(Var::X),
            q: q.with_var(Var::X),
        })
    }

    pub fn p(&self) -> &UniPoly {
        &self.p
    }

    pub fn q(&self) -> &UniPoly {
        &self.q
    }

    /// `3Q'² − P·P'²`.
    pub fn milnor_polynomial(&self) -> UniPoly {
        let dp = self.p.derivative();
        let dq = self.q.derivative();
        &dq.pow(2).scale(&int(3)) - &(&self.p * &dp.pow(2))
    }
}

/// μ and σ of a germ; `Order::Infinite` marks a non-isolated singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvariantPair {
    pub mu: Order,
    pub sigma: Order,
}

impl InvariantPair {
    pub fn of(g: &GermPQ) -> Self {
        InvariantPair {
            mu: milnor(g),
            sigma: sigma(g),
        }
    }
}

pub fn sigma(g: &GermPQ) -> Order {
    g.p.ord().min(g.q.derivative().ord())
}

pub fn milnor(g: &GermPQ) -> Order {
    g.milnor_polynomial().ord()
}

/// μ via the resultant in `y` of `3y² − P` and `−P'y + Q'` (formal
/// degrees 2 and 1), independent of the closed form.
pub fn milnor_oracle(g: &GermPQ) -> Order {
    elimination_resultant(g).ord(Var::X)
}

/// `Res_y(f_y, f_x)` for `f = y³ − P·y + Q`.
pub fn elimination_resultant(g: &GermPQ) -> BiPoly {
    let lift = |p: &UniPoly| BiPoly::from_uni(p);
    let f_y = YPoly::new(vec![-lift(&g.p), BiPoly::zero(), BiPoly::constant(int(3))]);
    let f_x = YPoly::new(vec![lift(&g.q.derivative()), -lift(&g.p.derivative())]);
    resultant_y_formal(&f_y, &f_x, 2, 1)
}

/// Depresses `y³ + A·y² + B·y + C` by `y ↦ y − A/3`, giving
/// `P = A²/3 − B` and `Q = C − A·B/3 + 2A³/27`.
pub fn tschirnhaus(a: &UniPoly, b: &UniPoly, c: &UniPoly) -> Result<GermPQ, InvariantsError> {
    for (name, poly) in [("A", a), ("B", b), ("C", c)] {
        let order = poly.ord();
        if order == Order::Finite(0) {
            return Err(InvariantsError::NotVanishing { name, order });
        }
    }
    let p = &a.pow(2).scale(&rat(1, 3)) - b;
    let q = &(c - &(a * b).scale(&rat(1, 3))) + &a.pow(3).scale(&rat(2, 27));
    GermPQ::new(p, q)
}

/// Arnol'd normal forms of trigonal germs, plus the Brieskorn–Pham family.
///
/// `unit` is a truncated unit series `a(x)` (nonzero constant term);
/// it is cut at degree `truncation`, which must reach the orders that the
/// invariants compare.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArnoldFamily {
    /// `y³ + y²x^k + a(x)x^{3k+i}`, `k ≥ 2`, `i > 0`.
    Jki { k: u32, i: u32, unit: UniPoly, truncation: u32 },
    /// `y³ + y·x^{2k+1} + a(x)x^{3k+2}`, `k ≥ 2`.
    E6k1 { k: u32, unit: UniPoly, truncation: u32 },
    /// `y³ + x^{ν+1}`, `ν ≥ 1`.
    BP { nu: u32 },
}

impl ArnoldFamily {
    pub fn validate(&self) -> Result<(), InvariantsError> {
        let check_unit = |unit: &UniPoly| {
            if unit.ord() != Order::Finite(0) {
                Err(InvariantsError::ParameterRange("a(x) must have a nonzero constant term"))
            } else {
                Ok(())
            }
        };
        match self {
            ArnoldFamily::Jki { k, i, unit, truncation } => {
                if *k < 2 {
                    return Err(InvariantsError::ParameterRange("J_{k,i} needs k >= 2"));
                }
                if *i == 0 {
                    return Err(InvariantsError::ParameterRange("J_{k,i} needs i > 0"));
                }
                if *truncation < 3 * k + i + 2 {
                    return Err(InvariantsError::ParameterRange("truncation must be at least 3k+i+2"));
                }
                check_unit(unit)
            }
            ArnoldFamily::E6k1 { k, unit, truncation } => {
                if *k < 2 {
                    return Err(InvariantsError::ParameterRange("E_{6k+1} needs k >= 2"));
                }
                if *truncation < 3 * k + 4 {
                    return Err(InvariantsError::ParameterRange("truncation must be at least 3k+4"));
                }
                check_unit(unit)
            }
            ArnoldFamily::BP { nu } => {
                if *nu < 1 {
                    return Err(InvariantsError::ParameterRange("Brieskorn-Pham needs nu >= 1"));
                }
                Ok(())
            }
        }
    }
}

/// Brings a normal form to `(P, Q)` shape.
pub fn normal_form(fam: &ArnoldFamily) -> Result<GermPQ, InvariantsError> {
    fam.validate()?;
    let x = |e: u32| UniPoly::power_of_var(Var::X, e);
    match fam {
        ArnoldFamily::Jki { k, i, unit, truncation } => {
            let c = (&unit.clone().with_var(Var::X) * &x(3 * k + i)).truncate(*truncation);
            tschirnhaus(&x(*k), &UniPoly::zero(Var::X), &c)
        }
        ArnoldFamily::E6k1 { k, unit, truncation } => {
            let q = (&unit.clone().with_var(Var::X) * &x(3 * k + 2)).truncate(*truncation);
            GermPQ::new(-&x(2 * k + 1), q)
        }
        ArnoldFamily::BP { nu } => GermPQ::new(UniPoly::zero(Var::X), x(nu + 1)),
    }
}

/// Expands `(y − A/3)³ + A(y − A/3)² + B(y − A/3) + C` and returns the
/// coefficients of `y⁰, y¹, y², y³`. Test oracle for [`tschirnhaus`].
pub fn shifted_cubic(a: &UniPoly, b: &UniPoly, c: &UniPoly) -> [UniPoly; 4] {
    // coefficients of (y + h)^k for h = −A/3
    let h = a.scale(&rat(-1, 3));
    let one = UniPoly::one(Var::X);
    let zero = UniPoly::zero(Var::X);
    let mut out = [zero.clone(), zero.clone(), zero.clone(), zero];
    let binom = |n: u32, k: u32| -> Rat {
        let mut r = Rat::one();
        for j in 0..k {
            r = r * int((n - j) as i64) / int((j + 1) as i64);
        }
        r
    };
    let coeffs = [c.clone(), b.clone(), a.clone(), one];
    for (n, coef) in coeffs.iter().enumerate() {
        let n = n as u32;
        for k in 0..=n {
            let term = &(coef * &h.pow(n - k)).scale(&binom(n, k));
            out[k as usize] = &out[k as usize] + term;
        }
    }
    out
}
