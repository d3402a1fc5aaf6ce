//! Classical fixed-step fourth-order Runge-Kutta.

/// One RK4 step of `y′ = f(x, y)` from `(x, y)` with step `h` (may be negative).
pub fn rk4_step<const N: usize, F, E>(f: &mut F, x: f64, y: [f64; N], h: f64) -> Result<[f64; N], E>
where
    F: FnMut(f64, [f64; N]) -> Result<[f64; N], E>,
{
    let axpy = |y: [f64; N], k: [f64; N], s: f64| {
        let mut out = y;
        for i in 0..N {
            out[i] += s * k[i];
        }
        out
    };
    let k1 = f(x, y)?;
    let k2 = f(x + 0.5 * h, axpy(y, k1, 0.5 * h))?;
    let k3 = f(x + 0.5 * h, axpy(y, k2, 0.5 * h))?;
    let k4 = f(x + h, axpy(y, k3, h))?;
    let mut out = y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(out)
}

/// Integrates from `x0` to `x_end` with uniform steps of size `step`, shortening the last
/// step so the trajectory lands exactly on `x_end`. Returns every node including `x0`.
pub fn rk4_trajectory<const N: usize, F, E>(
    mut f: F,
    x0: f64,
    y0: [f64; N],
    x_end: f64,
    step: f64,
) -> Result<Vec<(f64, [f64; N])>, E>
where
    F: FnMut(f64, [f64; N]) -> Result<[f64; N], E>,
{
    let span = x_end - x0;
    let dir = span.signum();
    let full = (span.abs() / step).floor() as usize;
    let mut out = Vec::with_capacity(full + 2);
    out.push((x0, y0));
    let mut y = y0;
    for i in 0..full {
        let x = x0 + dir * step * i as f64;
        let next = x0 + dir * step * (i + 1) as f64;
        y = rk4_step(&mut f, x, y, next - x)?;
        out.push((next, y));
    }
    let last = out.last().map(|p| p.0).unwrap_or(x0);
    let rest = x_end - last;
    if rest.abs() > 1e-12 * step {
        y = rk4_step(&mut f, last, y, rest)?;
        out.push((x_end, y));
    } else if let Some(p) = out.last_mut() {
        p.0 = x_end;
    }
    Ok(out)
}
