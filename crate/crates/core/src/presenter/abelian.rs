use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::GroupPresentation;

/// `ℤ^rank ⊕ ⊕ ℤ/d_i`, with `1 < d_1 | d_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }

    /// Invariant factors with `0` standing for each copy of `ℤ`.
    pub fn factors(&self) -> Vec<BigInt> {
        let mut v = self.torsion.clone();
        v.extend((0..self.rank).map(|_| BigInt::zero()));
        v
    }
}

/// Diagonal of the Smith normal form, nonzero entries only, each dividing
/// the next.
pub fn smith_normal_form(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut r0 = 0;
    for c0 in 0..cols {
        if r0 == rows {
            break;
        }
        loop {
            // smallest nonzero entry of the remaining block as pivot
            let pivot = (r0..rows)
                .flat_map(|r| (c0..cols).map(move |c| (r, c)))
                .filter(|&(r, c)| !m[r][c].is_zero())
                .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()));
            let Some((pr, pc)) = pivot else {
                return finish(diag);
            };
            m.swap(r0, pr);
            for row in m.iter_mut() {
                row.swap(c0, pc);
            }
            let p = m[r0][c0].clone();
            let mut clean = true;
            for r in r0 + 1..rows {
                let q = m[r][c0].div_floor(&p);
                if !q.is_zero() {
                    for c in c0..cols {
                        let v = &q * &m[r0][c];
                        m[r][c] -= v;
                    }
                }
                clean &= m[r][c0].is_zero();
            }
            for c in c0 + 1..cols {
                let q = m[r0][c].div_floor(&p);
                if !q.is_zero() {
                    for row in m.iter_mut().skip(r0) {
                        let v = &q * &row[c0];
                        row[c] -= v;
                    }
                }
                clean &= m[r0][c].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (r0 + 1..rows).find(|&r| (c0 + 1..cols).any(|c| !m[r][c].is_multiple_of(&p)));
            match bad {
                Some(r) => {
                    for c in c0..cols {
                        let v = m[r][c].clone();
                        m[r0][c] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[r0][c0].abs());
        r0 += 1;
    }
    finish(diag)
}

fn finish(diag: Vec<BigInt>) -> Vec<BigInt> {
    debug_assert!(diag.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    diag
}

/// Abelianization from the exponent-sum matrix of the relators.
pub fn abelianization(p: &GroupPresentation) -> AbelianInvariants {
    let matrix: Vec<Vec<BigInt>> = p
        .words()
        .iter()
        .map(|w| {
            let mut row = vec![BigInt::zero(); p.generators];
            for l in w {
                if l.inverse {
                    row[l.gen] -= 1;
                } else {
                    row[l.gen] += 1;
                }
            }
            row
        })
        .collect();
    let diag = smith_normal_form(matrix);
    AbelianInvariants {
        rank: p.generators - diag.len(),
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presenter::{bp_diagram, presentation, squares};

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn snf_examples() {
        let d = smith_normal_form(ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(d, [2, 6, 12].map(BigInt::from));
        let d = smith_normal_form(ints(&[&[2, 0], &[0, 3]]));
        assert_eq!(d, [1, 6].map(BigInt::from));
        assert!(smith_normal_form(ints(&[&[0, 0]])).is_empty());
    }

    #[test]
    fn free_and_cyclic() {
        let a = abelianization(&GroupPresentation::free(3));
        assert_eq!((a.rank, a.torsion.len()), (3, 0));
        for nu in 1..=10 {
            let p = presentation(&bp_diagram(nu).unwrap());
            assert!(abelianization(&p).is_infinite_cyclic(), "nu = {nu}");
        }
        let p = presentation(&bp_diagram(1).unwrap()).with_relators(squares(2));
        let a = abelianization(&p);
        assert_eq!((a.rank, a.torsion.clone()), (0, alloc::vec![BigInt::from(2)]));
        assert_eq!(a.factors(), [BigInt::from(2)]);
    }
}
