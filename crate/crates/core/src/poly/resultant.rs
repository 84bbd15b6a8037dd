use alloc::vec;
use alloc::vec::Vec;

use super::BiPoly;

/// Polynomial in an auxiliary variable `y` with [`BiPoly`] coefficients;
/// `coeffs[k]` multiplies `y^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YPoly {
    coeffs: Vec<BiPoly>,
}

impl YPoly {
    /// Builds from coefficients in increasing powers of `y`; trailing zero
    /// coefficients are dropped.
    pub fn new(mut coeffs: Vec<BiPoly>) -> Self {
        while coeffs.last().is_some_and(BiPoly::is_zero) {
            coeffs.pop();
        }
        YPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `y`, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BiPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }
}

/// Square matrix of [`BiPoly`] entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<BiPoly>,
}

impl PolyMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        PolyMatrix {
            dim,
            entries: vec![BiPoly::zero(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BiPoly {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BiPoly) {
        self.entries[row * self.dim + col] = value;
    }

    /// Sylvester matrix of `f` and `g` in `y`: `deg g` shifted rows of `f`
    /// followed by `deg f` shifted rows of `g`, each written leading
    /// coefficient first.
    pub fn sylvester(f: &YPoly, g: &YPoly) -> Option<Self> {
        Self::sylvester_formal(f, g, f.degree()?, g.degree()?)
    }

    /// Sylvester matrix for formal degrees `m ≥ deg f` and `n ≥ deg g`.
    pub fn sylvester_formal(f: &YPoly, g: &YPoly, m: usize, n: usize) -> Option<Self> {
        assert!(f.degree().is_none_or(|d| d <= m) && g.degree().is_none_or(|d| d <= n));
        if m + n == 0 {
            return None;
        }
        let mut s = PolyMatrix::zeros(m + n);
        for row in 0..n {
            for k in 0..=m {
                s.set(row, row + k, f.coeff(m - k));
            }
        }
        for row in 0..m {
            for k in 0..=n {
                s.set(n + row, row + k, g.coeff(n - k));
            }
        }
        Some(s)
    }

    /// Determinant by expansion over minors: rows are consumed top to
    /// bottom while a table indexed by the set of used columns accumulates
    /// the signed partial products.
    pub fn determinant(&self) -> BiPoly {
        let n = self.dim;
        assert!(n < usize::BITS as usize, "matrix too large for minor expansion");
        let mut layer: Vec<Option<BiPoly>> = vec![None; 1 << n];
        layer[0] = Some(BiPoly::one());
        for row in 0..n {
            let mut next: Vec<Option<BiPoly>> = vec![None; 1 << n];
            for (mask, acc) in layer.iter().enumerate() {
                let Some(acc) = acc else { continue };
                if acc.is_zero() {
                    continue;
                }
                for col in 0..n {
                    if mask & (1 << col) != 0 {
                        continue;
                    }
                    let entry = self.get(row, col);
                    if entry.is_zero() {
                        continue;
                    }
                    // inversions added by placing this row in `col`
                    let above = (mask >> (col + 1)).count_ones();
                    let mut term = acc * entry;
                    if above % 2 == 1 {
                        term = -term;
                    }
                    let slot = &mut next[mask | (1 << col)];
                    *slot = Some(match slot.take() {
                        Some(prev) => &prev + &term,
                        None => term,
                    });
                }
            }
            layer = next;
        }
        layer[(1 << n) - 1].take().unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResultantError {
    #[error("resultant with the zero polynomial")]
    ZeroInput,
}

/// Resultant of `f` and `g` with respect to `y`, as the determinant of
/// their Sylvester matrix.
///
/// With this orientation `resultant_y(3y² − P, −P'y + Q')` is exactly
/// `3Q'² − P·P'²`.
pub fn resultant_y(f: &YPoly, g: &YPoly) -> Result<BiPoly, ResultantError> {
    if f.is_zero() || g.is_zero() {
        return Err(ResultantError::ZeroInput);
    }
    Ok(match PolyMatrix::sylvester(f, g) {
        Some(s) => s.determinant(),
        None => BiPoly::one(),
    })
}

/// Resultant for formal degrees `m` and `n`; vanishing leading
/// coefficients are kept in the Sylvester matrix.
///
/// `resultant_y_formal(3y² − P, −P'y + Q', 2, 1)` is `3Q'² − P·P'²` even
/// when `P'` vanishes.
pub fn resultant_y_formal(f: &YPoly, g: &YPoly, m: usize, n: usize) -> BiPoly {
    match PolyMatrix::sylvester_formal(f, g, m, n) {
        Some(s) => s.determinant(),
        None => BiPoly::one(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, Rat};

    fn c(v: i64) -> BiPoly {
        BiPoly::constant(int(v))
    }

    #[test]
    fn linear_case_is_difference() {
        let a = &BiPoly::x() + &c(2);
        let b = BiPoly::t();
        let f = YPoly::new(vec![-&a, BiPoly::one()]);
        let g = YPoly::new(vec![-&b, BiPoly::one()]);
        assert_eq!(resultant_y(&f, &g).unwrap(), &a - &b);
    }

    #[test]
    fn zero_input_rejected() {
        let f = YPoly::new(vec![BiPoly::zero()]);
        let g = YPoly::new(vec![BiPoly::one()]);
        assert_eq!(resultant_y(&f, &g), Err(ResultantError::ZeroInput));
    }

    #[test]
    fn numeric_determinant() {
        let mut m = PolyMatrix::zeros(3);
        let vals = [[2, -1, 0], [1, 3, 4], [0, 5, -2]];
        for (i, row) in vals.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, c(v));
            }
        }
        // 2(3·(−2) − 20) + 1·(1·(−2) − 0) = −52 − 2
        assert_eq!(m.determinant(), BiPoly::constant(Rat::from_integer((-54).into())));
    }

    #[test]
    fn constant_against_constant() {
        let f = YPoly::new(vec![c(3)]);
        let g = YPoly::new(vec![c(5)]);
        assert_eq!(resultant_y(&f, &g).unwrap(), BiPoly::one());
        // Res(3, y − 1) = 3
        let g = YPoly::new(vec![c(-1), c(1)]);
        assert_eq!(resultant_y(&f, &g).unwrap(), c(3));
    }

    #[test]
    fn formal_degree_keeps_vanishing_leading_term() {
        let f = YPoly::new(vec![BiPoly::zero(), BiPoly::zero(), c(3)]);
        let g = YPoly::new(vec![c(1)]);
        assert_eq!(resultant_y(&f, &g).unwrap(), c(1));
        assert_eq!(resultant_y_formal(&f, &g, 2, 1), c(3));
        assert_eq!(resultant_y_formal(&f, &g, 2, 0), c(1));
    }
}
