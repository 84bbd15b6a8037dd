use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::poly::{gcd_sqfree, BiPoly, Rat, UniPoly, Var};

use super::{faces, newton_polygon, FaceData, Modulus, NewtonError, NewtonPolygon, PuiseuxSeries, QuotientElem};

/// Conjugate Puiseux branches of one face, bundled over `ℚ[c]/(φ)`.
///
/// `x = c·t^{p/q} + …`; the `deg φ` roots of `φ` give `deg φ` classical
/// parametrizations, which fall into `deg φ / q` branches of
/// ramification `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxBranch {
    pub face: FaceData,
    pub x: PuiseuxSeries,
}

impl PuiseuxBranch {
    pub fn modulus(&self) -> &Arc<Modulus> {
        self.x.modulus()
    }

    pub fn lambda(&self) -> &Rat {
        &self.face.lambda
    }

    pub fn ramification(&self) -> u32 {
        self.face.q
    }

    /// Number of classical branches bundled in this object.
    pub fn conjugacy_size(&self) -> u32 {
        self.modulus().degree() as u32 / self.face.q
    }

    /// Number of classical parametrizations (roots of the modulus).
    pub fn root_count(&self) -> u32 {
        self.modulus().degree() as u32
    }

    pub fn truncation_order(&self) -> Option<Rat> {
        self.x.precision_exponent()
    }

    /// Splits along `factor | φ` into the part over `factor` and the part
    /// over `φ / factor`.
    pub fn split(&self, factor: &UniPoly) -> Result<(Self, Self), NewtonError> {
        let phi = self.modulus().poly();
        let (cofactor, rem) = phi.div_rem(&factor.clone().with_var(Var::C));
        if !rem.is_zero() {
            return Err(NewtonError::NonSquarefreeModulus(factor.clone()));
        }
        let part = |poly: &UniPoly| -> Result<Self, NewtonError> {
            let m = Modulus::new(poly)?;
            Ok(PuiseuxBranch {
                face: self.face.clone(),
                x: self.x.reduce_to(&m),
            })
        };
        Ok((part(factor)?, part(&cofactor)?))
    }
}

/// A branch of the critical curve as seen from `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XBranch {
    /// `x ≡ 0`, with multiplicity `x_pow`.
    Zero { multiplicity: u32 },
    Puiseux(PuiseuxBranch),
}

/// Everything [`branches`] finds for a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchSet {
    pub polygon: NewtonPolygon,
    pub faces: Vec<FaceData>,
    pub branches: Vec<XBranch>,
}

impl BranchSet {
    /// Classical branch count: the zero branch plus `deg φ / q` per face.
    pub fn branch_count(&self) -> u32 {
        self.branches
            .iter()
            .map(|b| match b {
                XBranch::Zero { .. } => 1,
                XBranch::Puiseux(p) => p.conjugacy_size(),
            })
            .sum()
    }
}

/// Enumerates the branches `x(t) → 0` of `F(x, t) = 0`, each lifted to
/// `extra_terms` coefficients past the leading one.
pub fn branches(f: &BiPoly, extra_terms: u32) -> Result<BranchSet, NewtonError> {
    let polygon = newton_polygon(f)?;
    let faces = faces(&polygon, f);
    let mut out = Vec::new();
    if polygon.x_pow > 0 {
        out.push(XBranch::Zero {
            multiplicity: polygon.x_pow,
        });
    }
    for face in &faces {
        let (_, sqfree) = gcd_sqfree(&face.face_poly).map_err(|_| NewtonError::ZeroPolynomial)?;
        if !sqfree {
            return Err(NewtonError::NonSquarefreeFace(face.clone()));
        }
        let modulus = Modulus::new(&face.face_poly)?;
        let x = lift_face(f, &polygon, face, &modulus, extra_terms)?;
        out.push(XBranch::Puiseux(PuiseuxBranch {
            face: face.clone(),
            x,
        }));
    }
    Ok(BranchSet {
        polygon,
        faces,
        branches: out,
    })
}

/// Lifts `x = t^{p/q}·y` with `y(0) = c` by Newton iteration on
/// `G(y, T) = F̃(T^p y, T^q) / T^N`, `T = t^{1/q}`, where `F̃ = F / x^{x_pow}`
/// and `N` is the weight of the face. `modulus` may be any factor of the
/// face polynomial.
///
/// The result is exact when `G(c, T)` vanishes identically.
pub fn lift_face(
    f: &BiPoly,
    polygon: &NewtonPolygon,
    face: &FaceData,
    modulus: &Arc<Modulus>,
    extra_terms: u32,
) -> Result<PuiseuxSeries, NewtonError> {
    let (p, q) = (face.p as i64, face.q as i64);
    let n = face.weight() as i64;
    // G keyed by (y-exponent, T-exponent), reusing the (x, t) slots
    let g = BiPoly::from_terms(f.terms().map(|((xe, te), c)| {
        let j = (xe - polygon.x_pow) as i64;
        let w = p * j + q * te as i64 - n;
        debug_assert!(w >= 0, "support point below the face");
        ((j as u32, w as u32), c.clone())
    }));
    let g_y = g.derivative(Var::X);

    let c = QuotientElem::generator(modulus);
    let y0 = PuiseuxSeries::constant(c, 1);
    let residual = PuiseuxSeries::substitute(&g, &y0, None);
    let y = if residual.is_exact_zero() {
        y0
    } else {
        let target = extra_terms as i64 + 1;
        let mut y = y0;
        let mut known = 1i64;
        while known < target {
            let next = (2 * known).min(target);
            let cap = Some(next);
            let r = PuiseuxSeries::substitute(&g, &y, cap);
            let d = PuiseuxSeries::substitute(&g_y, &y, cap);
            let step = r.mul(&d.invert(next)?).with_precision(cap);
            y = y.sub(&step).with_precision(cap);
            // the known terms of y are treated as exact for the next pass
            y = PuiseuxSeries::from_terms(modulus, 1, y.terms().map(|(k, c)| (k, c.clone())), None);
            known = next;
        }
        y.with_precision(Some(target))
    };
    let x = PuiseuxSeries::from_terms(
        modulus,
        face.q,
        y.terms().map(|(k, c)| (k + p, c.clone())),
        y.precision().map(|k| k + p),
    );
    Ok(x)
}
