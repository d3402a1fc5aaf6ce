//! Adaptive Simpson quadrature for scalar integrands.

use crate::error::{GeomError, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_INTERVALS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpsonOptions {
    /// Absolute error target over the whole interval.
    pub tol: f64,
    /// Cap on the number of accepted plus pending subintervals.
    pub max_intervals: usize,
}

impl Default for SimpsonOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_intervals: DEFAULT_MAX_INTERVALS,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// `∫_a^b f` by adaptive Simpson with Richardson correction.
///
/// `b < a` yields the negated integral over `[b, a]`. The integrand may fail; its error
/// is propagated unchanged.
pub fn integrate<F>(mut f: F, a: f64, b: f64, opts: SimpsonOptions) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return integrate(f, b, a, opts).map(|v| -v);
    }
    let fail = || GeomError::QuadratureNonConvergence {
        a,
        b,
        tol: opts.tol,
        max_intervals: opts.max_intervals,
    };
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a)?, f(m)?, f(b)?);
    let mut stack = vec![Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole: simpson(a, b, fa, fm, fb),
        tol: opts.tol,
    }];
    let mut total = 0.0;
    let mut intervals = 1usize;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let (flm, frm) = (f(lm)?, f(rm)?);
        if !(flm.is_finite() && frm.is_finite()) {
            return Err(fail());
        }
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        if delta.abs() <= 15.0 * p.tol || m <= p.a || m >= p.b {
            total += left + right + delta / 15.0;
            continue;
        }
        intervals += 1;
        if intervals > opts.max_intervals {
            return Err(fail());
        }
        let tol = 0.5 * p.tol;
        stack.push(Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
            tol,
        });
        stack.push(Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
            tol,
        });
    }
    if total.is_finite() {
        Ok(total)
    } else {
        Err(fail())
    }
}
