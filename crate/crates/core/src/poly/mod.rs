//! Exact arithmetic foundation.

mod bi;
mod parse;
mod resultant;
mod uni;

use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

use num_bigint::BigInt;

pub use bi::BiPoly;
pub use parse::{parse, ParseError, Parsed};
pub use resultant::{resultant_y, resultant_y_formal, PolyMatrix, ResultantError, YPoly};
pub use uni::{gcd_sqfree, SquarefreeError, UniPoly};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// `n / d` as a [`Rat`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rat`].
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Variable tag carried by univariate polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    T,
    C,
    Y,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::X => 'x',
            Var::T => 't',
            Var::C => 'c',
            Var::Y => 'y',
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Order of vanishing. `Infinite` is the order of the zero polynomial and
/// compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl Ord for Order {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => a.cmp(b),
            (Order::Finite(_), Order::Infinite) => Ordering::Less,
            (Order::Infinite, Order::Finite(_)) => Ordering::Greater,
            (Order::Infinite, Order::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Order {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Order {
    type Output = Order;

    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinite,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// Writes a rational the way the polynomial printer and the reports do:
/// `p` for integers, `p/q` otherwise.
pub fn fmt_rat(r: &Rat) -> alloc::string::String {
    use alloc::string::ToString;
    if r.is_integer() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}
