use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::poly::{BiPoly, Order, Rat, UniPoly, Var};

use super::NewtonError;

/// Lower-left Newton polygon of a curve `F(x, t) = 0`, seen as points
/// `(j, i)` with `j` the x-exponent and `i` the t-exponent.
///
/// Only edges whose branches satisfy `x(t) → 0` are kept: the chain from
/// the lowest point on the `j = 0` axis down to the lowest-leftmost point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Support of `F / x^{x_pow}`.
    pub support: BTreeSet<(u32, u32)>,
    /// Hull vertices from the largest x-exponent to `j = 0`.
    pub hull_vertices: Vec<(u32, u32)>,
    pub x_pow: u32,
}

/// One compact edge `(j₁, i₁) → (j₂, i₂)` with `j₁ > j₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceData {
    pub start: (u32, u32),
    pub end: (u32, u32),
    /// `λ = (i₂ − i₁)/(j₁ − j₂)` in lowest terms `p/q`.
    pub lambda: Rat,
    pub p: u32,
    pub q: u32,
    /// `φ(c) = Σ coeff·c^{j − j₂}` over the support points on the edge.
    pub face_poly: UniPoly,
}

impl NewtonPolygon {
    /// Edges as consecutive vertex pairs.
    pub fn edges(&self) -> impl Iterator<Item = ((u32, u32), (u32, u32))> + '_ {
        self.hull_vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// t-exponent of the lowest hull vertex; positive iff `t` divides the
    /// reduced curve.
    pub fn t_pow(&self) -> u32 {
        self.hull_vertices.first().map_or(0, |v| v.1)
    }

    /// Total x-width covered by the compact edges.
    pub fn x_width(&self) -> u32 {
        self.hull_vertices.first().map_or(0, |v| v.0)
    }
}

impl FaceData {
    /// Number of classical branches carried by this face.
    pub fn branch_points(&self) -> u32 {
        self.start.0 - self.end.0
    }

    /// Weighted degree `p·j + q·i` shared by the points on the edge.
    pub fn weight(&self) -> u64 {
        self.p as u64 * self.end.0 as u64 + self.q as u64 * self.end.1 as u64
    }
}

pub fn newton_polygon(f: &BiPoly) -> Result<NewtonPolygon, NewtonError> {
    let x_pow = match f.ord(Var::X) {
        Order::Finite(n) => n,
        Order::Infinite => return Err(NewtonError::ZeroPolynomial),
    };
    let support: BTreeSet<(u32, u32)> = f.support().into_iter().map(|(j, i)| (j - x_pow, i)).collect();

    let i_min = support.iter().map(|&(_, i)| i).min().expect("nonzero");
    let j_star = support
        .iter()
        .filter(|&&(_, i)| i == i_min)
        .map(|&(j, _)| j)
        .min()
        .expect("nonzero");
    // lowest point per column, left of j*
    let mut columns: Vec<(u32, u32)> = Vec::new();
    for &(j, i) in &support {
        if j > j_star {
            continue;
        }
        match columns.last_mut() {
            Some(last) if last.0 == j => last.1 = last.1.min(i),
            _ => columns.push((j, i)),
        }
    }
    // monotone chain from the right end; collinear middle points are dropped
    let mut hull: Vec<(u32, u32)> = Vec::new();
    for &pt in columns.iter().rev() {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if cross(a, b, pt) >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    Ok(NewtonPolygon {
        support,
        hull_vertices: hull,
        x_pow,
    })
}

// z-component of (b − a) × (c − a) in the (j, i) plane
fn cross(a: (u32, u32), b: (u32, u32), c: (u32, u32)) -> i128 {
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    let (bx, by) = (b.0 as i128, b.1 as i128);
    let (cx, cy) = (c.0 as i128, c.1 as i128);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

/// One [`FaceData`] per compact edge, ordered from the largest x-exponent
/// down (increasing `λ`).
pub fn faces(np: &NewtonPolygon, f: &BiPoly) -> Vec<FaceData> {
    np.edges()
        .map(|(start, end)| {
            let dj = start.0 - end.0;
            let di = end.1 - start.1;
            let g = dj.gcd(&di);
            let (p, q) = (di / g, dj / g);
            let mut face_poly = UniPoly::zero(Var::C);
            for &(j, i) in &np.support {
                if j < end.0 || j > start.0 {
                    continue;
                }
                // on the edge iff p·j + q·i equals the edge weight
                if p as u64 * j as u64 + q as u64 * i as u64 == p as u64 * end.0 as u64 + q as u64 * end.1 as u64 {
                    face_poly.add_term(j - end.0, f.coeff(j + np.x_pow, i));
                }
            }
            FaceData {
                start,
                end,
                lambda: Rat::new((p as i64).into(), (q as i64).into()),
                p,
                q,
                face_poly,
            }
        })
        .collect()
}
