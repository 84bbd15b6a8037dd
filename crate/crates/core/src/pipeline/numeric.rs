//! Floating-point cross-check of branch exponents.
//!
//! Each root of each piece modulus seeds a solution `x(t)` of the curve,
//! followed by Newton's method as `t` decreases; least-squares slopes of
//! `log|x|` and `log|u|` against `log t` are compared with the exact
//! exponents. Diagnostic only.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::newton::XBranch;
use crate::poly::{BiPoly, Rat, UniPoly, Var};

use super::{DiscriminantReport, Unfolding};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    pub t_start: f64,
    pub t_end: f64,
    pub samples: usize,
    /// Allowed relative deviation of a slope from its exponent.
    pub tolerance: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            t_start: 1e-3,
            t_end: 1e-6,
            samples: 31,
            tolerance: 0.02,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error("root finding for {0} did not converge")]
    RootFinding(UniPoly),
    #[error("tracking from root {root} failed at t = {t:e}")]
    TrackingFailed { root: usize, t: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericBranch {
    pub root: Complex64,
    pub lambda: Rat,
    pub x_slope: f64,
    pub x_ok: bool,
    pub u_exponent: Option<Rat>,
    pub u_slope: Option<f64>,
    pub u_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericDiagnostic {
    /// `x ≡ 0` solves the curve exactly.
    pub zero_branch_exact: bool,
    pub branches: Vec<NumericBranch>,
}

impl NumericDiagnostic {
    pub fn all_within_tolerance(&self) -> bool {
        self.branches.iter().all(|b| b.x_ok && b.u_ok != Some(false))
    }

    /// Largest relative slope deviation over all checks.
    pub fn worst_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for b in &self.branches {
            worst = worst.max(rel_dev(b.x_slope, &b.lambda));
            if let (Some(s), Some(e)) = (b.u_slope, &b.u_exponent) {
                worst = worst.max(rel_dev(s, e));
            }
        }
        worst
    }
}

fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn rel_dev(slope: f64, exact: &Rat) -> f64 {
    let e = to_f64(exact);
    (slope - e).abs() / e.abs()
}

/// Bivariate polynomial with `f64` coefficients, grouped by x-exponent.
struct FloatPoly {
    cols: Vec<Vec<(i32, f64)>>,
}

impl FloatPoly {
    fn new(p: &BiPoly) -> Self {
        let deg = p.degree(Var::X).unwrap_or(0) as usize;
        let mut cols = vec![Vec::new(); deg + 1];
        for ((j, i), c) in p.terms() {
            cols[j as usize].push((i as i32, to_f64(c)));
        }
        FloatPoly { cols }
    }

    fn eval(&self, x: Complex64, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for col in self.cols.iter().rev() {
            let c: f64 = col.iter().map(|&(i, a)| a * t.powi(i)).sum();
            acc = acc * x + c;
        }
        acc
    }
}

/// All complex roots of a univariate polynomial (Aberth iteration).
pub(crate) fn complex_roots(p: &UniPoly) -> Option<Vec<Complex64>> {
    let n = p.degree()? as usize;
    if n == 0 {
        return Some(Vec::new());
    }
    let lead = to_f64(&p.leading_coeff());
    let coeffs: Vec<f64> = (0..=n).map(|i| to_f64(&p.coeff(i as u32)) / lead).collect();
    let eval = |z: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &a in coeffs.iter().rev() {
            d = d * z + v;
            v = v * z + a;
        }
        (v, d)
    };
    let radius = coeffs[..n]
        .iter()
        .enumerate()
        .map(|(i, a)| a.abs().powf(1.0 / (n - i) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut moved: f64 = 0.0;
        for k in 0..n {
            let (v, d) = eval(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let w = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            z[k] -= step;
            moved = moved.max(step.norm() / z[k].norm().max(1e-300));
        }
        if moved < 1e-15 {
            return Some(z);
        }
    }
    let ok = z.iter().all(|&r| eval(r).0.norm() < 1e-8 * (1.0 + r.norm().powi(n as i32)));
    ok.then_some(z)
}

/// Tracks every conjugate branch of the report and regresses its slopes.
pub fn numeric_validate(
    u: &Unfolding,
    report: &DiscriminantReport,
    opts: &NumericOptions,
) -> Result<NumericDiagnostic, NumericError> {
    let f = FloatPoly::new(&report.curve);
    let f_x = FloatPoly::new(&report.curve.derivative(Var::X));
    let p = u.p_xt();
    let q = u.q_xt();
    let p_f = FloatPoly::new(&p);
    let dp_f = FloatPoly::new(&p.derivative(Var::X));
    let q_f = FloatPoly::new(&q);
    let dq_f = FloatPoly::new(&q.derivative(Var::X));
    let u_at = |x: Complex64, t: f64| q_f.eval(x, t) - p_f.eval(x, t) * dq_f.eval(x, t) / dp_f.eval(x, t) * (2.0 / 3.0);

    let n = opts.samples.max(2);
    let ts: Vec<f64> = (0..n)
        .map(|k| {
            let a = k as f64 / (n - 1) as f64;
            (opts.t_start.ln() * (1.0 - a) + opts.t_end.ln() * a).exp()
        })
        .collect();
    let log_t: Vec<f64> = ts.iter().map(|t| t.ln()).collect();

    let mut zero_branch_exact = false;
    let mut out = Vec::new();
    let mut root_index = 0;
    for piece in &report.pieces {
        let b = match &piece.branch {
            XBranch::Zero { .. } => {
                zero_branch_exact = report.curve.t_coeff(0).coeff(0) == Rat::from_integer(0.into())
                    && report.curve.terms().all(|((j, _), _)| j >= 1);
                continue;
            }
            XBranch::Puiseux(b) => b,
        };
        let lambda = b.lambda().clone();
        let lam = to_f64(&lambda);
        let roots = complex_roots(b.modulus().poly()).ok_or_else(|| NumericError::RootFinding(b.modulus().poly().clone()))?;
        for c in roots {
            let mut x = c * ts[0].powf(lam);
            let mut log_x = Vec::with_capacity(n);
            let mut log_u = Vec::with_capacity(n);
            for (idx, &t) in ts.iter().enumerate() {
                if idx > 0 {
                    x *= (t / ts[idx - 1]).powf(lam);
                }
                let predicted = x;
                let mut converged = false;
                for _ in 0..60 {
                    let dx = f.eval(x, t) / f_x.eval(x, t);
                    if !dx.re.is_finite() || !dx.im.is_finite() {
                        break;
                    }
                    x -= dx;
                    if dx.norm() <= 1e-14 * x.norm() {
                        converged = true;
                        break;
                    }
                }
                if !converged || (x - predicted).norm() > 0.5 * predicted.norm() {
                    return Err(NumericError::TrackingFailed { root: root_index, t });
                }
                log_x.push(x.norm().ln());
                log_u.push(u_at(x, t).norm().ln());
            }
            let x_slope = slope(&log_t, &log_x);
            let u_exponent = piece.u.leading_exponent.clone();
            let u_slope = u_exponent.as_ref().map(|_| slope(&log_t, &log_u));
            out.push(NumericBranch {
                root: c,
                x_ok: rel_dev(x_slope, &lambda) <= opts.tolerance,
                lambda: lambda.clone(),
                x_slope,
                u_ok: u_slope.zip(u_exponent.as_ref()).map(|(s, e)| rel_dev(s, e) <= opts.tolerance),
                u_slope,
                u_exponent,
            });
            root_index += 1;
        }
    }
    Ok(NumericDiagnostic {
        zero_branch_exact,
        branches: out,
    })
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
