//! Double-double arithmetic, just enough for residuals and the Newton oracle.

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        Dd {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn quick(a: f64, b: f64) -> Self {
        let s = a + b;
        Dd {
            hi: s,
            lo: b - (s - a),
        }
    }

    /// `a - b` exactly.
    pub fn diff(a: f64, b: f64) -> Self {
        Dd::two_sum(a, -b)
    }
}

impl std::ops::Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, o.hi);
        let t = Dd::two_sum(self.lo, o.lo);
        let u = Dd::quick(s.hi, s.lo + t.hi);
        Dd::quick(u.hi, u.lo + t.lo)
    }
}

impl std::ops::Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + Dd {
            hi: -o.hi,
            lo: -o.lo,
        }
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Dd::quick(p, e + (self.hi * o.lo + self.lo * o.hi))
    }
}

impl std::ops::Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        // one long-division correction step on the double quotient
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::from(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::from(q2);
        let q3 = r.hi / o.hi;
        let q = Dd::quick(q1, q2);
        q + Dd::from(q3)
    }
}

impl std::ops::Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_is_double_double_accurate() {
        let q = Dd::from(2.0) / Dd::from(3.0) * Dd::from(3.0) - Dd::from(2.0);
        assert!(q.hi.abs() < 1e-30);
        let t = Dd::from(1.0) / Dd::from(10.0);
        let r = t * Dd::from(10.0) - Dd::from(1.0);
        assert!(r.hi.abs() < 1e-31);
    }

    #[test]
    fn sums_keep_the_low_part() {
        let s = Dd::from(1e10) + Dd::from(1e-10) - Dd::from(1e10);
        assert_eq!(s.hi, 1e-10);
        let d = Dd::diff(1.0, f64::EPSILON / 4.0);
        assert_eq!((d.hi, d.lo), (1.0, -f64::EPSILON / 4.0));
    }
}
