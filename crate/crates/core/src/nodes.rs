//! Roots of `P_d^(α,β)` in O(d) work.
//!
//! Starting from one point in the middle of the interval (where `P` and `P'`
//! come from the three-term recurrence) the solution of the Jacobi ODE
//!
//! ```text
//! (1-x²) y'' + (β-α-(α+β+2)x) y' + d(d+α+β+1) y = 0
//! ```
//!
//! is carried outward in both directions by local Taylor series whose
//! coefficients follow from the differentiated ODE. Steps are at most half a
//! local root spacing and a third of the distance to the nearer endpoint, so
//! every root is bracketed by a sign change and refined by safeguarded Newton
//! on the local series. Moderate degrees get a final Newton polish on the full
//! recurrence; small ones finish with a double-double step that also yields
//! the part of the root below the last bit.

use std::f64::consts::PI;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::jacobi::{recurrence, JacobiParams};

/// Above this degree the O(d²) recurrence polish is skipped.
const POLISH_MAX_DEGREE: usize = 4096;
/// Above this degree the double-double step is skipped and `dx` stays 0.
const RESIDUAL_MAX_DEGREE: usize = 1024;
const MAX_TERMS: usize = 96;
const MAX_NEWTON: usize = 100;
const STEP_FRACTION_OF_SPACING: f64 = 0.5;
const STEP_FRACTION_OF_RADIUS: f64 = 0.35;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Root {
    pub x: f64,
    /// `P_d'` at the exact root
    pub dp: f64,
    /// exact root minus `x`, below half an ulp; 0 where not resolved
    pub dx: f64,
}

struct JacobiOde {
    a: f64,
    b: f64,
    degree: usize,
    lambda: f64,
    /// `d + (α+β+1)/2`, the effective frequency in the angle variable.
    rho: f64,
}

impl JacobiOde {
    fn new(params: JacobiParams, degree: usize) -> Self {
        let (a, b) = (params.alpha, params.beta);
        let d = degree as f64;
        JacobiOde {
            a,
            b,
            degree,
            lambda: d * (d + a + b + 1.0),
            rho: d + 0.5 * (a + b + 1.0),
        }
    }

    /// Taylor coefficients `c_j = y^(j)(x)/j!` of the ODE solution through
    /// `(x, y, dy)`, truncated once terms at distance `h` are negligible.
    /// Returns the number of coefficients written.
    fn taylor(&self, x: f64, y: f64, dy: f64, h: f64, c: &mut [f64]) -> usize {
        let (a, b) = (self.a, self.b);
        let one_minus_x2 = (1.0 - x) * (1.0 + x);
        c[0] = y;
        c[1] = dy;
        let scale = y.abs() + (dy * h).abs();
        let mut hp = h;
        let mut small_run = 0;
        for r in 0..MAX_TERMS - 2 {
            let rf = r as f64;
            let lin = (b - a - (a + b + 2.0 * rf + 2.0) * x) * (rf + 1.0);
            let cst = self.lambda - rf * (a + b + rf + 1.0);
            c[r + 2] = -(lin * c[r + 1] + cst * c[r]) / (one_minus_x2 * (rf + 2.0) * (rf + 1.0));
            hp *= h;
            if (c[r + 2] * hp).abs() <= 1e-18 * scale {
                small_run += 1;
                if small_run == 2 {
                    return r + 3;
                }
            } else {
                small_run = 0;
            }
        }
        MAX_TERMS
    }
}

/// `(p(t), p'(t))` for `p(t) = Σ c_j t^j`.
fn horner(c: &[f64], t: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &cj in c.iter().rev() {
        dp = dp * t + p;
        p = p * t + cj;
    }
    (p, dp)
}

struct MarchState {
    x: f64,
    y: f64,
    dy: f64,
    at_root: bool,
}

/// Finds the next `count` roots from `start` in direction `dir` (±1).
fn march(
    ode: &JacobiOde,
    start: MarchState,
    dir: f64,
    count: usize,
    out: &mut Vec<Root>,
) -> Result<()> {
    let mut s = start;
    let mut c = vec![0.0; MAX_TERMS];
    let found_before = out.len();
    let fail = |found: usize| Error::NoConvergence {
        index: found,
        degree: ode.degree,
    };
    while out.len() - found_before < count {
        let radius = 1.0 - s.x.abs();
        if radius <= 4.0 * f64::EPSILON {
            return Err(fail(out.len()));
        }
        let spacing = PI * ((1.0 - s.x) * (1.0 + s.x)).sqrt() / ode.rho;
        let h = (STEP_FRACTION_OF_SPACING * spacing).min(STEP_FRACTION_OF_RADIUS * radius);
        let nterms = ode.taylor(s.x, s.y, s.dy, h, &mut c);
        let c = &c[..nterms];

        // snap the step so that x + t is exactly representable
        let x_end = s.x + dir * h;
        let t_end = x_end - s.x;
        let (y_end, dy_end) = horner(c, t_end);
        let sign_start = if s.at_root {
            s.dy.signum() * dir
        } else {
            s.y.signum()
        };

        if y_end == 0.0 || y_end.signum() != sign_start {
            let t_lo = if s.at_root { t_end * 1e-6 } else { 0.0 };
            let t = bracketed_newton(c, s.x, t_lo, t_end, sign_start, h)
                .ok_or_else(|| fail(out.len()))?;
            let x_root = s.x + t;
            let t = x_root - s.x;
            let (y, dy) = horner(c, t);
            s = MarchState {
                x: x_root,
                y,
                dy,
                at_root: true,
            };
            out.push(Root {
                x: x_root,
                dp: dy,
                dx: 0.0,
            });
        } else {
            s = MarchState {
                x: x_end,
                y: y_end,
                dy: dy_end,
                at_root: false,
            };
        }
    }
    Ok(())
}

/// Root of the local series in the bracket `[t_lo, t_hi]` (either order),
/// where the series has sign `sign_lo` at `t_lo` and the opposite at `t_hi`.
fn bracketed_newton(c: &[f64], x0: f64, t_lo: f64, t_hi: f64, sign_lo: f64, h: f64) -> Option<f64> {
    let (mut lo, mut hi) = (t_lo, t_hi);
    let (f_lo, _) = horner(c, lo);
    let (f_hi, _) = horner(c, hi);
    let mut t = if f_lo != f_hi && f_lo.signum() == sign_lo {
        lo - f_lo * (hi - lo) / (f_hi - f_lo)
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..MAX_NEWTON {
        let (f, df) = horner(c, t);
        if f == 0.0 {
            return Some(t);
        }
        if f.signum() == sign_lo {
            lo = t;
        } else {
            hi = t;
        }
        let mut next = t - f / df;
        let inside = (next - lo) * (next - hi) < 0.0;
        if !inside || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        let step = next - t;
        t = next;
        if step.abs() <= 2.0 * f64::EPSILON * (x0 + t).abs() + 1e-3 * f64::EPSILON * h {
            return Some(t);
        }
    }
    None
}

/// Ascending roots of `P_degree^(α,β)` together with `P'` at each root.
pub(crate) fn jacobi_roots(params: JacobiParams, degree: usize) -> Result<Vec<Root>> {
    let (a, b) = (params.alpha, params.beta);
    match degree {
        0 => return Ok(Vec::new()),
        1 => {
            return Ok(vec![Root {
                x: (b - a) / (a + b + 2.0),
                dp: 0.5 * (a + b + 2.0),
                dx: 0.0,
            }])
        }
        _ => {}
    }
    let ode = JacobiOde::new(params, degree);
    let mut roots = if params.is_symmetric() {
        symmetric_roots(params, &ode)?
    } else {
        // midpoint (in angle) between the two central asymptotic root guesses
        let theta = ((degree / 2) as f64 + 0.5 * a + 0.25) * PI / ode.rho;
        let xs = theta.cos();
        let (p, dp, above) = recurrence(params, degree, xs, true);
        let below = degree - above;
        let mut left = Vec::with_capacity(below);
        let start = || MarchState {
            x: xs,
            y: p,
            dy: dp,
            at_root: false,
        };
        march(&ode, start(), -1.0, below, &mut left)?;
        left.reverse();
        march(&ode, start(), 1.0, above, &mut left)?;
        left
    };

    if degree <= POLISH_MAX_DEGREE {
        let dd = (degree <= RESIDUAL_MAX_DEGREE).then(|| DdRecurrence::new(params, degree));
        for r in roots.iter_mut() {
            polish(params, degree, r, dd.as_ref());
        }
    }
    for (i, w) in roots.windows(2).enumerate() {
        if !(w[0].x < w[1].x) {
            return Err(Error::NoConvergence {
                index: i + 1,
                degree,
            });
        }
    }
    if let (Some(first), Some(last)) = (roots.first(), roots.last()) {
        if !(first.x > -1.0 && last.x < 1.0) {
            return Err(Error::NoConvergence { index: 0, degree });
        }
    }
    Ok(roots)
}

/// For α = β only the nonnegative half is marched; the rest is mirrored, so
/// the computed node set is exactly antisymmetric.
fn symmetric_roots(params: JacobiParams, ode: &JacobiOde) -> Result<Vec<Root>> {
    let degree = ode.degree;
    let (p0, dp0, _) = recurrence(params, degree, 0.0, false);
    let odd = degree % 2 == 1;
    let half = degree / 2;
    let mut right = Vec::with_capacity(half);
    let start = MarchState {
        x: 0.0,
        y: if odd { 0.0 } else { p0 },
        dy: dp0,
        at_root: odd,
    };
    march(ode, start, 1.0, half, &mut right)?;
    // P(-x) = (-1)^d P(x), so P'(-x) = (-1)^(d+1) P'(x)
    let parity = if odd { 1.0 } else { -1.0 };
    let mut roots: Vec<Root> = right
        .iter()
        .rev()
        .map(|r| Root {
            x: -r.x,
            dp: parity * r.dp,
            dx: -r.dx,
        })
        .collect();
    if odd {
        roots.push(Root {
            x: 0.0,
            dp: dp0,
            dx: 0.0,
        });
    }
    roots.extend(right);
    Ok(roots)
}

fn polish(params: JacobiParams, degree: usize, root: &mut Root, dd: Option<&DdRecurrence>) {
    if root.x == 0.0 && params.is_symmetric() {
        return;
    }
    let (a, b) = (params.alpha, params.beta);
    let (p, dp, _) = recurrence(params, degree, root.x, false);
    let x1 = root.x - p / dp;
    let (p1, dp1, t) = match dd {
        Some(rec) => {
            let (p1, dp1) = rec.eval(x1);
            let t = -(p1 / dp1);
            let x = (Dd::from(x1) + t).hi;
            root.dx = (Dd::diff(x1, x) + t).hi;
            root.x = x;
            (p1.hi, dp1, t.hi)
        }
        None => {
            let (p1, dp1, _) = recurrence(params, degree, x1, false);
            let t = -p1 / dp1;
            root.x = x1 + t;
            (p1, Dd::from(dp1), t)
        }
    };
    // P'' from the ODE, then P' carried from x1 to the root
    let lambda = degree as f64 * (degree as f64 + a + b + 1.0);
    let d2p = (((a + b + 2.0) * x1 + a - b) * dp1.hi - lambda * p1) / ((1.0 - x1) * (1.0 + x1));
    root.dp = (dp1 + Dd::from(t * d2p)).hi;
}

/// The three-term recurrence with coefficients held in double-double, built
/// once per degree.
struct DdRecurrence {
    /// `P_1 = h x + g`
    h: Dd,
    g: Dd,
    /// `(c2, c3, c4, 1/c1)` for k = 2..=degree
    coeffs: Vec<[Dd; 4]>,
}

impl DdRecurrence {
    fn new(params: JacobiParams, degree: usize) -> Self {
        let (a, b) = (Dd::from(params.alpha), Dd::from(params.beta));
        let one = Dd::from(1.0);
        let two = Dd::from(2.0);
        let ab = a + b;
        let a2b2 = (a - b) * ab;
        let coeffs = (2..=degree)
            .map(|k| {
                let kf = Dd::from(k as f64);
                let s = two * kf + ab;
                let c1 = two * kf * (kf + ab) * (s - two);
                let c2 = (s - one) * a2b2;
                let c3 = (s - two) * (s - one) * s;
                let c4 = two * (kf + a - one) * (kf + b - one) * s;
                [c2, c3, c4, one / c1]
            })
            .collect();
        let half = Dd::from(0.5);
        DdRecurrence {
            h: half * (ab + two),
            g: half * (a - b),
            coeffs,
        }
    }

    /// `(P(x), P'(x))`
    fn eval(&self, x: f64) -> (Dd, Dd) {
        let xd = Dd::from(x);
        let (mut p_prev, mut dp_prev) = (Dd::from(1.0), Dd::from(0.0));
        let (mut p, mut dp) = (self.h * xd + self.g, self.h);
        for &[c2, c3, c4, inv] in &self.coeffs {
            let lin = c2 + c3 * xd;
            let p_next = (lin * p - c4 * p_prev) * inv;
            let dp_next = (lin * dp + c3 * p - c4 * dp_prev) * inv;
            p_prev = p;
            dp_prev = dp;
            p = p_next;
            dp = dp_next;
        }
        (p, dp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::jacobi_eval;

    fn check_roots(params: JacobiParams, degree: usize) {
        let roots = jacobi_roots(params, degree).unwrap();
        assert_eq!(roots.len(), degree);
        for r in &roots {
            let (p, dp) = jacobi_eval(params, degree, r.x);
            assert!(
                p.abs() <= 1e-13 * dp.abs().max(1.0),
                "residual {p} at {} (a={}, b={}, d={degree})",
                r.x,
                params.alpha,
                params.beta
            );
            assert!((dp - r.dp).abs() <= 1e-10 * dp.abs());
        }
    }

    #[test]
    fn residuals_small_across_parameters() {
        for &(a, b) in &[
            (0.0, 0.0),
            (-0.5, -0.5),
            (0.5, 0.5),
            (1.5, 1.5),
            (-0.9, 0.7),
            (1.9, -0.95),
            (0.3, 1.2),
        ] {
            let params = JacobiParams::new(a, b).unwrap();
            for d in [2, 3, 4, 7, 10, 33, 100, 257] {
                check_roots(params, d);
            }
        }
    }

    #[test]
    fn unpolished_march_is_accurate() {
        // above the polish threshold only the march runs
        let params = JacobiParams::new(0.4, -0.3).unwrap();
        let d = POLISH_MAX_DEGREE + 904;
        let roots = jacobi_roots(params, d).unwrap();
        assert_eq!(roots.len(), d);
        for r in roots.iter().step_by(97) {
            let (p, dp) = jacobi_eval(params, d, r.x);
            assert!(
                p.abs() <= 1e-11 * dp.abs(),
                "residual {p} vs {dp} at {}",
                r.x
            );
        }
    }

    #[test]
    fn taylor_series_reproduces_polynomial() {
        let params = JacobiParams::new(0.2, 0.9).unwrap();
        let d = 12;
        let ode = JacobiOde::new(params, d);
        let x = 0.3;
        let (y, dy) = jacobi_eval(params, d, x);
        let mut c = vec![0.0; MAX_TERMS];
        let h = 0.1;
        let n = ode.taylor(x, y, dy, h, &mut c);
        let (yt, dyt) = horner(&c[..n], h);
        let (ye, dye) = jacobi_eval(params, d, x + h);
        assert!((yt - ye).abs() < 1e-13 * (1.0 + ye.abs()));
        assert!((dyt - dye).abs() < 1e-12 * (1.0 + dye.abs()));
    }
}
