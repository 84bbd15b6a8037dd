use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{gcd_sqfree, Rat, UniPoly, Var};

use super::NewtonError;

/// A squarefree modulus `φ(c)` together with the reductions of
/// `c^d, …, c^{2d−2}` needed to multiply residues.
#[derive(Debug, PartialEq, Eq)]
pub struct Modulus {
    poly: UniPoly,
    degree: usize,
    // c^{d+r} ≡ reductions[r] / common_den
    reductions: Vec<Vec<BigInt>>,
    common_den: BigInt,
}

impl Modulus {
    /// Normalizes `phi` to be monic in `c`; rejects constants and
    /// polynomials with repeated factors.
    pub fn new(phi: &UniPoly) -> Result<Arc<Self>, NewtonError> {
        let phi = phi.clone().with_var(Var::C);
        let degree = match phi.degree() {
            Some(d) if d >= 1 => d as usize,
            _ => return Err(NewtonError::ConstantModulus),
        };
        let (_, sqfree) = gcd_sqfree(&phi).map_err(|_| NewtonError::ConstantModulus)?;
        if !sqfree {
            return Err(NewtonError::NonSquarefreeModulus(phi));
        }
        let poly = phi.monic();
        let mut rat_reductions: Vec<Vec<Rat>> = Vec::with_capacity(degree.saturating_sub(1));
        // c^d ≡ −(φ − c^d)
        let mut current: Vec<Rat> = (0..degree).map(|i| -poly.coeff(i as u32)).collect();
        for _ in 0..degree.saturating_sub(1).max(1) {
            rat_reductions.push(current.clone());
            // multiply by c and fold the overflow back
            let top = current[degree - 1].clone();
            let mut next = vec![Rat::zero(); degree];
            for i in (1..degree).rev() {
                next[i] = current[i - 1].clone();
            }
            if !top.is_zero() {
                for (i, slot) in next.iter_mut().enumerate() {
                    *slot -= &top * poly.coeff(i as u32);
                }
            }
            current = next;
        }
        let mut common_den = BigInt::one();
        for row in &rat_reductions {
            for r in row {
                common_den = common_den.lcm(r.denom());
            }
        }
        let reductions = rat_reductions
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| r.numer() * (&common_den / r.denom()))
                    .collect()
            })
            .collect();
        Ok(Arc::new(Modulus {
            poly,
            degree,
            reductions,
            common_den,
        }))
    }

    /// The monic modulus polynomial in `c`.
    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Residue class in `ℚ[c]/(φ)`, stored as an integer vector over a shared
/// positive denominator with no common factor.
#[derive(Clone)]
pub struct QuotientElem {
    modulus: Arc<Modulus>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for QuotientElem {
    fn eq(&self, other: &Self) -> bool {
        same_modulus(&self.modulus, &other.modulus) && self.num == other.num && self.den == other.den
    }
}

impl Eq for QuotientElem {}

fn same_modulus(a: &Arc<Modulus>, b: &Arc<Modulus>) -> bool {
    Arc::ptr_eq(a, b) || a.poly == b.poly
}

impl fmt::Debug for QuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self.to_poly(), self.modulus.poly)
    }
}

impl fmt::Display for QuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl QuotientElem {
    fn normalized(modulus: Arc<Modulus>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), modulus.degree);
        if den.is_negative() {
            den = -den;
            for n in num.iter_mut() {
                *n = -&*n;
            }
        }
        let mut g = den.clone();
        for n in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !g.is_one() {
            for n in num.iter_mut() {
                *n = &*n / &g;
            }
            den /= &g;
        }
        QuotientElem { modulus, num, den }
    }

    pub fn zero(modulus: &Arc<Modulus>) -> Self {
        QuotientElem {
            modulus: modulus.clone(),
            num: vec![BigInt::zero(); modulus.degree],
            den: BigInt::one(),
        }
    }

    pub fn one(modulus: &Arc<Modulus>) -> Self {
        Self::from_rat(modulus, &Rat::one())
    }

    pub fn from_rat(modulus: &Arc<Modulus>, r: &Rat) -> Self {
        let mut num = vec![BigInt::zero(); modulus.degree];
        num[0] = r.numer().clone();
        Self::normalized(modulus.clone(), num, r.denom().clone())
    }

    /// The class of `c`.
    pub fn generator(modulus: &Arc<Modulus>) -> Self {
        Self::from_poly(modulus, &UniPoly::power_of_var(Var::C, 1))
    }

    /// The class of an arbitrary polynomial in `c`.
    pub fn from_poly(modulus: &Arc<Modulus>, p: &UniPoly) -> Self {
        let (_, r) = p.clone().with_var(Var::C).div_rem(&modulus.poly);
        let mut den = BigInt::one();
        for (_, c) in r.terms() {
            den = den.lcm(c.denom());
        }
        let mut num = vec![BigInt::zero(); modulus.degree];
        for (e, c) in r.terms() {
            num[e as usize] = c.numer() * (&den / c.denom());
        }
        Self::normalized(modulus.clone(), num, den)
    }

    pub fn modulus(&self) -> &Arc<Modulus> {
        &self.modulus
    }

    /// Canonical representative of degree below `deg φ`.
    pub fn to_poly(&self) -> UniPoly {
        UniPoly::from_terms(
            Var::C,
            self.num
                .iter()
                .enumerate()
                .filter(|(_, n)| !n.is_zero())
                .map(|(i, n)| (i as u32, Rat::new(n.clone(), self.den.clone()))),
        )
    }

    /// Coordinates in the basis `1, c, …, c^{d−1}`.
    pub fn coords(&self) -> Vec<Rat> {
        self.num
            .iter()
            .map(|n| Rat::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The element as a rational, if it lies in `ℚ ⊂ ℚ[c]/(φ)`.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rat::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert!(
            same_modulus(&self.modulus, &other.modulus),
            "residues modulo different polynomials"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        Self::normalized(self.modulus.clone(), num, &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        QuotientElem {
            modulus: self.modulus.clone(),
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let num = self.num.iter().map(|n| n * k.numer()).collect();
        Self::normalized(self.modulus.clone(), num, &self.den * k.denom())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.modulus);
        }
        let m = &*self.modulus;
        let d = m.degree;
        let mut wide = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let den = &self.den * &other.den;
        if wide[d..].iter().all(Zero::is_zero) {
            wide.truncate(d);
            return Self::normalized(self.modulus.clone(), wide, den);
        }
        let mut num: Vec<BigInt> = wide[..d].iter().map(|v| v * &m.common_den).collect();
        for (r, v) in wide[d..].iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for (slot, red) in num.iter_mut().zip(&m.reductions[r]) {
                if !red.is_zero() {
                    *slot += v * red;
                }
            }
        }
        Self::normalized(self.modulus.clone(), num, den * &m.common_den)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(&self.modulus);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `gcd(representative, φ)`; the element is a unit iff this is `1`.
    pub fn gcd_with_modulus(&self) -> UniPoly {
        self.to_poly().gcd(&self.modulus.poly)
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.gcd_with_modulus().degree() == Some(0)
    }

    /// Multiplicative inverse. A nonzero zero divisor yields the proper
    /// factor `gcd(representative, φ)` of the modulus instead.
    pub fn inverse(&self) -> Result<Self, NewtonError> {
        if self.is_zero() {
            return Err(NewtonError::DivisionByZero);
        }
        if let Some(r) = self.as_rat() {
            return Ok(Self::from_rat(&self.modulus, &r.recip()));
        }
        let (g, s, _) = self.to_poly().ext_gcd(&self.modulus.poly);
        if g.degree() != Some(0) {
            return Err(NewtonError::ZeroDivisorSplit(g));
        }
        Ok(Self::from_poly(&self.modulus, &s))
    }

    /// Image under `ℚ[c]/(φ) → ℚ[c]/(ψ)` for a factor `ψ` of `φ`.
    pub fn reduce_to(&self, factor: &Arc<Modulus>) -> Self {
        debug_assert!(self.modulus.poly.div_rem(&factor.poly).1.is_zero());
        Self::from_poly(factor, &self.to_poly())
    }
}
