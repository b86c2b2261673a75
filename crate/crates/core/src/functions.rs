//! Test functions with closed-form derivatives.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    /// `1 / (1 + x²)`
    Runge,
    /// `exp(-1/x²)`, extended by 0 at the origin
    ExpInv,
    /// `1 - |x|³`
    Cusp,
}

impl TestFunction {
    pub const ALL: [TestFunction; 3] = [
        TestFunction::Runge,
        TestFunction::ExpInv,
        TestFunction::Cusp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TestFunction::Runge => "runge",
            TestFunction::ExpInv => "expinv",
            TestFunction::Cusp => "cusp",
        }
    }

    /// Highest derivative order that is actually available; orders above it
    /// are filled with zeros by [`TestFunction::fill`].
    pub fn max_order(self) -> Option<usize> {
        match self {
            TestFunction::Cusp => Some(2),
            _ => None,
        }
    }

    /// Whether `count` data values per node can all be true derivatives.
    pub fn has_derivatives(self, count: usize) -> bool {
        self.max_order().is_none_or(|d| count <= d + 1)
    }

    pub fn value(self, x: f64) -> f64 {
        let mut v = [0.0];
        self.fill(x, &mut v);
        v[0]
    }

    /// `out[j] = f^(j)(x)` for `j < out.len()`.
    pub fn fill(self, x: f64, out: &mut [f64]) {
        match self {
            TestFunction::Runge => runge(x, out),
            TestFunction::ExpInv => expinv(x, out),
            TestFunction::Cusp => cusp(x, out),
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        TestFunction::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown function '{s}'")))
    }
}

/// `f^(j)(x) = (-1)^j j! Im (x - i)^{-(j+1)}`.
fn runge(x: f64, out: &mut [f64]) {
    let r = x.hypot(1.0);
    let theta = (-1.0f64).atan2(x);
    let mut fact = 1.0;
    for (j, o) in out.iter_mut().enumerate() {
        if j > 0 {
            fact *= j as f64;
        }
        let p = (j + 1) as f64;
        let im = -r.powf(-p) * (p * theta).sin();
        *o = if j % 2 == 0 { fact * im } else { -fact * im };
    }
}

/// `f^(j)(x) = P_j(1/x) exp(-1/x²)` with `P_{j+1}(t) = -t² P_j'(t) + 2t³ P_j(t)`.
fn expinv(x: f64, out: &mut [f64]) {
    if x == 0.0 {
        out.fill(0.0);
        return;
    }
    let t = 1.0 / x;
    let (lt, st) = (t.abs().ln(), t.signum());
    let t2 = t * t;
    let mut poly: Vec<f64> = vec![1.0];
    for o in out.iter_mut() {
        // each term separately in log form, so e^{-t²} never underflows first
        let mut acc = 0.0;
        for (i, &c) in poly.iter().enumerate() {
            if c != 0.0 {
                let s = c.signum() * if i % 2 == 1 { st } else { 1.0 };
                acc += s * (c.abs().ln() + i as f64 * lt - t2).exp();
            }
        }
        *o = acc;
        let mut next = vec![0.0; poly.len() + 3];
        for (i, &c) in poly.iter().enumerate() {
            if i > 0 {
                next[i + 1] -= i as f64 * c;
            }
            next[i + 3] += 2.0 * c;
        }
        poly = next;
    }
}

fn cusp(x: f64, out: &mut [f64]) {
    let a = x.abs();
    for (j, o) in out.iter_mut().enumerate() {
        *o = match j {
            0 => 1.0 - a * a * a,
            1 => -3.0 * x * a,
            2 => -6.0 * a,
            _ => 0.0,
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(f: TestFunction, x: f64, j: usize) -> f64 {
        let h = 1e-5;
        let mut a = vec![0.0; j + 1];
        let mut b = vec![0.0; j + 1];
        f.fill(x + h, &mut a);
        f.fill(x - h, &mut b);
        (a[j] - b[j]) / (2.0 * h)
    }

    #[test]
    fn runge_closed_forms() {
        let mut d = [0.0; 3];
        for x in [-0.8, 0.0, 0.35] {
            runge(x, &mut d);
            let q = 1.0 + x * x;
            assert!((d[0] - 1.0 / q).abs() < 1e-15);
            assert!((d[1] + 2.0 * x / (q * q)).abs() < 1e-15);
            assert!((d[2] - (6.0 * x * x - 2.0) / (q * q * q)).abs() < 1e-14);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for f in [TestFunction::Runge, TestFunction::ExpInv] {
            for x in [-0.9, -0.4, 0.3, 0.75] {
                let mut d = vec![0.0; 6];
                f.fill(x, &mut d);
                for j in 0..5 {
                    let e = fd(f, x, j);
                    assert!(
                        (d[j + 1] - e).abs() < 1e-5 * (1.0 + e.abs()),
                        "{f} x={x} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn expinv_flat_at_origin() {
        let mut d = vec![1.0; 5];
        expinv(0.0, &mut d);
        assert_eq!(d, vec![0.0; 5]);
        expinv(0.05, &mut d);
        assert!(d.iter().all(|v| v.is_finite() && v.abs() < 1e-150));
        assert!((TestFunction::ExpInv.value(0.5) - (-4.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn cusp_is_truncated_after_second_derivative() {
        let mut d = vec![9.0; 5];
        cusp(-0.5, &mut d);
        assert_eq!(d, vec![0.875, 0.75, -3.0, 0.0, 0.0]);
        assert!(TestFunction::Cusp.has_derivatives(3));
        assert!(!TestFunction::Cusp.has_derivatives(4));
        assert!(TestFunction::Runge.has_derivatives(40));
    }

    #[test]
    fn names_round_trip() {
        for f in TestFunction::ALL {
            assert_eq!(f.name().parse::<TestFunction>().unwrap(), f);
        }
        assert!("sine".parse::<TestFunction>().is_err());
    }
}
