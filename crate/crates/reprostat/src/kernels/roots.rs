//! One-dimensional root finding.

use super::Interval;
use crate::error::Error;

/// Find a root of `g` inside `bracket` by Brent's method.
///
/// Requires g(lo) and g(hi) to have opposite signs (or one endpoint to be an
/// exact root). Stops once the bracket width falls below `tol`.
pub fn find_root<F: FnMut(f64) -> f64>(
    mut g: F,
    bracket: Interval,
    tol: f64,
) -> Result<f64, Error> {
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let mut fa = g(a);
    let mut fb = g(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::Bracket(format!(
            "no sign change on [{a}, {b}]: g(lo)={fa}, g(hi)={fb}"
        )));
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    let tol = tol.max(f64::EPSILON);

    for _ in 0..200 {
        if fb.abs() > fc.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic interpolation / secant
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
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
        b += if d.abs() > tol1 {
            d
        } else {
            tol1.copysign(xm)
        };
        fb = g(b);
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    Ok(b)
}

/// Plain bisection for a monotone-crossing function; robust when `g` is
/// extremely flat near the root. Requires g(lo) >= 0 >= g(hi) or the
/// reverse.
pub fn bisect<F: FnMut(f64) -> f64>(mut g: F, lo: f64, hi: f64, tol: f64) -> Result<f64, Error> {
    let (mut a, mut b) = (lo, hi);
    let fa = g(a);
    let fb = g(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::Bracket(format!(
            "no sign change on [{a}, {b}]: g(lo)={fa}, g(hi)={fb}"
        )));
    }
    let decreasing = fa > 0.0;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if b - a < tol || m <= a || m >= b {
            break;
        }
        let fm = g(m);
        let positive = if decreasing { fm > 0.0 } else { fm < 0.0 };
        if positive {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}
