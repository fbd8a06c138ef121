//! Adaptive Simpson quadrature for smooth one-dimensional integrands.

use crate::error::{Error, Result};

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_DEPTH: usize = 40;

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol`.
///
/// The tolerance is converted into an absolute one using the coarse
/// three-point estimate, then halved at each bisection. Any panel that
/// still fails the Richardson test at `max_depth` is an error rather than a
/// silently inaccurate result.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, rel_tol: f64, max_depth: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    // Floor keeps integrands that vanish on average from demanding zero error.
    let abs_tol = (rel_tol * whole.abs()).max(f64::MIN_POSITIVE);
    recurse(&f, Panel { a, b, fa, fm, fb, whole }, abs_tol, max_depth, max_depth)
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn recurse<F: Fn(f64) -> f64>(f: &F, p: Panel, tol: f64, depth: usize, cap: usize) -> Result<f64> {
    let m = 0.5 * (p.a + p.b);
    let lm = 0.5 * (p.a + m);
    let rm = 0.5 * (m + p.b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(p.a, m, p.fa, flm, p.fm);
    let right = simpson(m, p.b, p.fm, frm, p.fb);
    let delta = left + right - p.whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Quadrature(cap, p.a, p.b));
    }
    let l = recurse(
        f,
        Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left },
        0.5 * tol,
        depth - 1,
        cap,
    )?;
    let r = recurse(
        f,
        Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right },
        0.5 * tol,
        depth - 1,
        cap,
    )?;
    Ok(l + r)
}
