//! Bracketed scalar root finding with Brent's method.

use crate::error::{Error, Result};

/// Default absolute tolerance on the root abscissa.
pub const DEFAULT_TOL_ABS: f64 = 1e-12;
/// Default iteration cap.
pub const DEFAULT_MAX_ITER: usize = 200;

/// A one-dimensional root problem on a sign-changing bracket.
///
/// The returned root `r` satisfies `bracket_lo <= r <= bracket_hi` and is
/// within `tol_abs` (plus a machine-precision term proportional to `|r|`) of
/// a true zero, so the residual `|objective(r)|` is bounded by the local
/// derivative magnitude times that abscissa tolerance.
pub struct RootProblem<F> {
    pub objective: F,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub tol_abs: f64,
    pub max_iter: usize,
}

impl<F: Fn(f64) -> f64> RootProblem<F> {
    pub fn new(objective: F, bracket_lo: f64, bracket_hi: f64) -> Self {
        RootProblem {
            objective,
            bracket_lo,
            bracket_hi,
            tol_abs: DEFAULT_TOL_ABS,
            max_iter: DEFAULT_MAX_ITER,
        }
    }

    pub fn solve(&self) -> Result<f64> {
        find_root(self)
    }
}

/// Brent's method: inverse quadratic interpolation and secant steps guarded
/// by bisection. Requires `objective(bracket_lo)` and `objective(bracket_hi)`
/// to have opposite signs.
pub fn find_root<F: Fn(f64) -> f64>(problem: &RootProblem<F>) -> Result<f64> {
    let f = &problem.objective;
    let mut a = problem.bracket_lo;
    let mut b = problem.bracket_hi;
    let mut fa = f(a);
    let mut fb = f(b);

    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo: a, hi: b, f_lo: fa, f_hi: fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..problem.max_iter {
        if fb.signum() == fc.signum() {
            // b and c straddle no root anymore; reset c to the old a side.
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * problem.tol_abs;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Interpolation step: secant if a == c, inverse quadratic otherwise.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0));
                q = (q0 - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }

        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::NonFinite { what: "objective value during root iteration" });
        }
    }

    Err(Error::NoConvergence { what: "root iteration cap exceeded" })
}

/// Expands a bracket geometrically from a positive initial guess until the
/// objective changes sign, doubling the upper end and halving the lower end
/// in alternation. Intended for strictly monotone objectives on `(0, inf)`,
/// e.g. the energy-versus-inverse-temperature map.
pub fn expand_bracket<F: Fn(f64) -> f64>(f: &F, guess: f64) -> Result<(f64, f64)> {
    if !(guess > 0.0) || !guess.is_finite() {
        return Err(Error::domain(format!(
            "bracket expansion needs a positive finite guess, got {guess}"
        )));
    }
    let mut lo = guess;
    let mut hi = guess;
    let mut f_lo = f(lo);
    let mut f_hi = f_lo;
    if f_lo == 0.0 {
        return Ok((lo, hi));
    }
    // 600 doublings cover every representable positive magnitude.
    for _ in 0..600 {
        if f_lo.signum() != f_hi.signum() {
            return Ok((lo, hi));
        }
        lo *= 0.5;
        f_lo = f(lo);
        if f_lo == 0.0 || f_lo.signum() != f_hi.signum() {
            return Ok((lo, hi));
        }
        hi *= 2.0;
        f_hi = f(hi);
        if f_hi == 0.0 {
            return Ok((lo, hi));
        }
    }
    Err(Error::NoSignChange { lo, hi, f_lo, f_hi })
}
