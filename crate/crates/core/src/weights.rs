//! Barycentric weight tables `w_{k,r}` for Hermite–Fejér interpolation with
//! `m` data values per node.
//!
//! Both algorithms turn the per-node Taylor ratios `M_{k,r}` into the
//! coefficients of `1/ℓ_k(x)^m` about `x_k`, which the weights are, up to the
//! factor `w_{k,0}`. Cost is O(n m²) with O(m) scratch.

use crate::error::{Error, Result};
use crate::jacobi::{common_factor, Grid, GridKind, JacobiParams};
use crate::scaled::LogScaled;
use crate::taylor::node_ratios_into;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scaling {
    /// The large common factor `C^m` is dropped. Only usable in the second
    /// (ratio) barycentric form, which is immune to it.
    Simplified,
    /// True weights, held as sign and decimal exponent.
    FullLogScaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Logarithmic derivative, exponential, then reciprocal series.
    One,
    /// Logarithmic derivative of `1/ℓ^m` directly, then exponential.
    Two,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightValues {
    Simplified(Vec<f64>),
    Full(Vec<LogScaled>),
}

/// Row-major `n × m` table; row `k` belongs to node `k` in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct BaryWeightTable {
    pub n: usize,
    pub m: usize,
    pub kind: GridKind,
    pub params: JacobiParams,
    pub values: WeightValues,
}

impl BaryWeightTable {
    pub fn scaling(&self) -> Scaling {
        match self.values {
            WeightValues::Simplified(_) => Scaling::Simplified,
            WeightValues::Full(_) => Scaling::FullLogScaled,
        }
    }

    /// Simplified weights as a flat slice, `None` for a full table.
    pub fn simplified(&self) -> Option<&[f64]> {
        match &self.values {
            WeightValues::Simplified(v) => Some(v),
            WeightValues::Full(_) => None,
        }
    }

    pub fn simplified_mut(&mut self) -> Option<&mut [f64]> {
        match &mut self.values {
            WeightValues::Simplified(v) => Some(v),
            WeightValues::Full(_) => None,
        }
    }

    pub fn row(&self, k: usize) -> Option<&[f64]> {
        self.simplified().map(|v| &v[k * self.m..(k + 1) * self.m])
    }

    /// Entry `(k, r)` in log form, whatever the scaling.
    pub fn get_scaled(&self, k: usize, r: usize) -> LogScaled {
        let i = k * self.m + r;
        match &self.values {
            WeightValues::Simplified(v) => LogScaled::from_f64(v[i]),
            WeightValues::Full(v) => v[i],
        }
    }

    /// Full weights converted to doubles; fails naming the first entry that
    /// is out of range.
    pub fn full_as_f64(&self) -> Result<Vec<f64>> {
        let WeightValues::Full(v) = &self.values else {
            return Err(Error::InvalidArgument(
                "table holds simplified weights, not full ones".into(),
            ));
        };
        v.iter()
            .enumerate()
            .map(|(i, w)| {
                w.to_f64().map_err(|_| {
                    Error::Range(format!(
                        "weight w[{}][{}] = {} overflows double precision",
                        i / self.m + 1,
                        i % self.m,
                        w
                    ))
                })
            })
            .collect()
    }
}

/// `ln |w_{k,0}|` without the common factor, and its sign.
fn ln_leading(grid: &Grid, k: usize, m: usize) -> (i8, f64) {
    let q = match grid.kind {
        GridKind::GaussJacobi => grid.one_minus_x2(k) * grid.gauss_weights[k],
        // endpoint η·ŵ is already fused into the grid
        GridKind::JacobiGaussLobatto => grid.gauss_weights[k],
    };
    let sign = if (m * k) % 2 == 1 { -1 } else { 1 };
    (sign, 0.5 * m as f64 * q.ln())
}

/// Simplified `w_{k,0}`, computed as a power of `q` rather than through the
/// log so that `m = 1, 2` stay exact to rounding.
fn leading(grid: &Grid, k: usize, m: usize) -> f64 {
    let q = match grid.kind {
        GridKind::GaussJacobi => grid.one_minus_x2(k) * grid.gauss_weights[k],
        GridKind::JacobiGaussLobatto => grid.gauss_weights[k],
    };
    let mag = if m.is_multiple_of(2) {
        q.powi((m / 2) as i32)
    } else {
        q.sqrt().powi(m as i32)
    };
    if (m * k) % 2 == 1 {
        -mag
    } else {
        mag
    }
}

/// Log of `|C|^m` and its sign for this grid (degree `n - 2` for Lobatto).
fn grid_common_factor(grid: &Grid, m: usize) -> LogScaled {
    common_factor(grid.params, grid.jacobi_degree(), m)
}

struct Scratch {
    ratios: Vec<f64>,
    aux: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
}

impl Scratch {
    fn new(m: usize) -> Self {
        Scratch {
            ratios: vec![0.0; m],
            aux: vec![0.0; m],
            a: vec![0.0; m],
            b: vec![0.0; m],
            c: vec![0.0; m],
        }
    }
}

/// `a_i = sign·i·m·M_i - Σ_{j<i} a_j M_{i-j}`: the series of `sign·m·ℓ'/ℓ`
/// (shifted by one power) obtained by dividing by `ℓ`'s coefficients.
fn log_derivative(ratios: &[f64], m: usize, sign: f64, a: &mut [f64]) {
    let mf = m as f64;
    for i in 1..ratios.len() {
        let mut acc = sign * i as f64 * mf * ratios[i];
        for j in 1..i {
            acc -= a[j] * ratios[i - j];
        }
        a[i] = acc;
    }
}

/// `b_0 = 1`, `b_i = (1/i) Σ_{v=1..i} a_v b_{i-v}`: exponentiate the series.
fn exponentiate(a: &[f64], b: &mut [f64]) {
    b[0] = 1.0;
    for i in 1..a.len() {
        let mut acc = 0.0;
        for v in 1..=i {
            acc += a[v] * b[i - v];
        }
        b[i] = acc / i as f64;
    }
}

/// Coefficients `c_r = w_{k,r} / w_{k,0}` for node `k`.
fn row_multipliers(grid: &Grid, k: usize, m: usize, alg: Algorithm, s: &mut Scratch) {
    node_ratios_into(grid, k, &mut s.ratios, &mut s.aux);
    match alg {
        Algorithm::One => {
            log_derivative(&s.ratios, m, 1.0, &mut s.a);
            exponentiate(&s.a, &mut s.b);
            // reciprocal of the ℓ^m series
            s.c[0] = 1.0;
            for i in 1..m {
                let mut acc = 0.0;
                for j in 0..i {
                    acc -= s.c[j] * s.b[i - j];
                }
                s.c[i] = acc;
            }
        }
        Algorithm::Two => {
            log_derivative(&s.ratios, m, -1.0, &mut s.a);
            exponentiate(&s.a, &mut s.c);
        }
    }
}

fn check_grid(grid: &Grid, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if grid.is_empty() || grid.nodes.len() != grid.gauss_weights.len() {
        return Err(Error::Shape(
            "grid nodes and weights differ in length".into(),
        ));
    }
    Ok(())
}

/// Builds the weight table with the chosen algorithm and scaling.
pub fn bary_weights(
    grid: &Grid,
    m: usize,
    scaling: Scaling,
    alg: Algorithm,
) -> Result<BaryWeightTable> {
    check_grid(grid, m)?;
    let n = grid.len();
    let mut s = Scratch::new(m);
    let values = match scaling {
        Scaling::Simplified => {
            let mut out = vec![0.0; n * m];
            for (k, row) in out.chunks_mut(m).enumerate() {
                row_multipliers(grid, k, m, alg, &mut s);
                let w0 = leading(grid, k, m);
                for (w, c) in row.iter_mut().zip(&s.c) {
                    *w = w0 * c;
                }
            }
            WeightValues::Simplified(out)
        }
        Scaling::FullLogScaled => {
            let common = grid_common_factor(grid, m);
            let mut out = Vec::with_capacity(n * m);
            for k in 0..n {
                row_multipliers(grid, k, m, alg, &mut s);
                let (sign, ln) = ln_leading(grid, k, m);
                let w0 = common * LogScaled::from_ln(sign, ln);
                out.extend(s.c.iter().map(|&c| w0 * LogScaled::from_f64(c)));
            }
            WeightValues::Full(out)
        }
    };
    Ok(BaryWeightTable {
        n,
        m,
        kind: grid.kind,
        params: grid.params,
        values,
    })
}

pub fn weights_alg1(grid: &Grid, m: usize, scaling: Scaling) -> Result<BaryWeightTable> {
    bary_weights(grid, m, scaling, Algorithm::One)
}

pub fn weights_alg2(grid: &Grid, m: usize, scaling: Scaling) -> Result<BaryWeightTable> {
    bary_weights(grid, m, scaling, Algorithm::Two)
}

/// Closed-form simplified weights for `m ∈ {2, 3, 4}`.
pub fn explicit_low_order(grid: &Grid, m: usize) -> Result<BaryWeightTable> {
    if !(2..=4).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "closed forms exist for m = 2, 3, 4 only, got {m}"
        )));
    }
    check_grid(grid, m)?;
    let n = grid.len();
    let mut ratios = vec![0.0; m];
    let mut aux = vec![0.0; m];
    let mut out = vec![0.0; n * m];
    for (k, row) in out.chunks_mut(m).enumerate() {
        node_ratios_into(grid, k, &mut ratios, &mut aux);
        let w0 = leading(grid, k, m);
        // ω''/ω' = 2 M1, ω'''/ω' = 6 M2, ω''''/ω' = 24 M3
        let m1 = ratios[1];
        row[0] = w0;
        match m {
            2 => row[1] = -2.0 * m1 * w0,
            3 => {
                let m2 = ratios[2];
                row[1] = -3.0 * m1 * w0;
                row[2] = (6.0 * m1 * m1 - 3.0 * m2) * w0;
            }
            _ => {
                let (m2, m3) = (ratios[2], ratios[3]);
                row[1] = -4.0 * m1 * w0;
                row[2] = (10.0 * m1 * m1 - 4.0 * m2) * w0;
                row[3] = (-4.0 * m3 + 20.0 * m1 * m2 - 20.0 * m1 * m1 * m1) * w0;
            }
        }
    }
    Ok(BaryWeightTable {
        n,
        m,
        kind: grid.kind,
        params: grid.params,
        values: WeightValues::Simplified(out),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    fn grids() -> Vec<Grid> {
        let mut v = Vec::new();
        for &(a, b) in &[
            (-0.5, -0.5),
            (0.0, 0.0),
            (0.5, 0.5),
            (1.5, 1.5),
            (0.3, -0.7),
        ] {
            let p = JacobiParams::new(a, b).unwrap();
            v.push(Grid::gauss_jacobi(p, 11).unwrap());
            v.push(Grid::lobatto(p, 11).unwrap());
        }
        v
    }

    #[test]
    fn m_one_is_gauss_barycentric_weight() {
        let g = Grid::gauss_jacobi(JacobiParams::new(0.2, 0.9).unwrap(), 9).unwrap();
        let t = weights_alg1(&g, 1, Scaling::Simplified).unwrap();
        for k in 0..9 {
            let x = g.nodes[k];
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let expect = sign * ((1.0 - x * x) * g.gauss_weights[k]).sqrt();
            assert!(rel(t.row(k).unwrap()[0], expect) < 1e-15);
        }
        assert_eq!(t, weights_alg2(&g, 1, Scaling::Simplified).unwrap());
    }

    #[test]
    fn chebyshev_m2_second_column() {
        let g = Grid::gauss_jacobi(JacobiParams::chebyshev(), 16).unwrap();
        let t = weights_alg2(&g, 2, Scaling::Simplified).unwrap();
        for k in 0..16 {
            let expect = -g.nodes[k] * g.gauss_weights[k];
            assert!((t.row(k).unwrap()[1] - expect).abs() < 1e-15, "k={k}");
        }
    }

    #[test]
    fn algorithms_agree() {
        for g in grids() {
            for m in 1..=6 {
                let a = weights_alg1(&g, m, Scaling::Simplified).unwrap();
                let b = weights_alg2(&g, m, Scaling::Simplified).unwrap();
                for (x, y) in a.simplified().unwrap().iter().zip(b.simplified().unwrap()) {
                    assert!(rel(*x, *y) < 1e-11, "{x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn explicit_forms_match_algorithm_two() {
        for g in grids() {
            for m in 2..=4 {
                let e = explicit_low_order(&g, m).unwrap();
                let b = weights_alg2(&g, m, Scaling::Simplified).unwrap();
                for (x, y) in e.simplified().unwrap().iter().zip(b.simplified().unwrap()) {
                    assert!(rel(*x, *y) < 1e-11 || (x - y).abs() < 1e-15, "{x} vs {y}");
                }
            }
        }
        let g = &grids()[0];
        assert!(explicit_low_order(g, 1).is_err());
        assert!(explicit_low_order(g, 5).is_err());
    }

    #[test]
    fn gauss_m2_printed_form() {
        let (a, b) = (0.3, -0.7);
        let g = Grid::gauss_jacobi(JacobiParams::new(a, b).unwrap(), 12).unwrap();
        let t = explicit_low_order(&g, 2).unwrap();
        for k in 0..12 {
            let x = g.nodes[k];
            let expect = (b - a - (a + b + 2.0) * x) * g.gauss_weights[k];
            assert!(rel(t.row(k).unwrap()[1], expect) < 1e-12);
        }
    }

    #[test]
    fn lobatto_m2_printed_forms() {
        let (a, b) = (1.2, 0.4);
        let n = 10;
        let g = Grid::lobatto(JacobiParams::new(a, b).unwrap(), n).unwrap();
        let t = explicit_low_order(&g, 2).unwrap();
        let nf = n as f64;
        let lam = (nf - 2.0) * (nf + a + b - 1.0);
        let first = (1.0 + lam / (b + 1.0)) * g.gauss_weights[0];
        let last = (-1.0 - lam / (a + 1.0)) * g.gauss_weights[n - 1];
        assert!(rel(t.row(0).unwrap()[1], first) < 1e-13);
        assert!(rel(t.row(n - 1).unwrap()[1], last) < 1e-13);
        for k in 1..n - 1 {
            let x = g.nodes[k];
            let expect = (b - a - (a + b - 2.0) * x) * g.gauss_weights[k] / (1.0 - x * x);
            assert!(rel(t.row(k).unwrap()[1], expect) < 1e-12, "k={k}");
        }
    }

    #[test]
    fn interior_slopes_vanish_at_alpha_beta_one() {
        let g = Grid::lobatto(JacobiParams::new(1.0, 1.0).unwrap(), 12).unwrap();
        let t = weights_alg2(&g, 2, Scaling::Simplified).unwrap();
        for k in 1..11 {
            assert!(t.row(k).unwrap()[1].abs() < 1e-14);
        }
        assert!(t.row(0).unwrap()[1].abs() > 0.1);
    }

    #[test]
    fn sign_pattern_and_symmetry() {
        for g in grids().into_iter().filter(|g| g.params.is_symmetric()) {
            let n = g.len();
            for m in 1..=4 {
                let t = weights_alg2(&g, m, Scaling::Simplified).unwrap();
                for k in 0..n {
                    let w0 = t.row(k).unwrap()[0];
                    assert_eq!(w0 < 0.0, (m * k) % 2 == 1);
                    for r in 0..m {
                        let (x, y) = (t.row(k).unwrap()[r], t.row(n - 1 - k).unwrap()[r]);
                        assert!(rel(x.abs(), y.abs()) < 1e-12 || x.abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn full_is_common_factor_times_simplified() {
        let g = Grid::gauss_jacobi(JacobiParams::legendre(), 30).unwrap();
        let s = weights_alg2(&g, 3, Scaling::Simplified).unwrap();
        let f = weights_alg2(&g, 3, Scaling::FullLogScaled).unwrap();
        let c = common_factor(g.params, 30, 3);
        for k in 0..30 {
            for r in 0..3 {
                let (a, b) = (f.get_scaled(k, r), c * s.get_scaled(k, r));
                assert_eq!(a.sign, b.sign);
                assert!((a.log10_mag - b.log10_mag).abs() < 1e-12);
            }
        }
        assert!(f.simplified().is_none());
        assert!(s.full_as_f64().is_err());
    }

    #[test]
    fn full_weights_are_inverse_nodal_derivative_powers() {
        // w_{k,0} = 1/ω'(x_k)^m for the monic nodal polynomial
        for kind in [GridKind::GaussJacobi, GridKind::JacobiGaussLobatto] {
            let g = Grid::new(kind, JacobiParams::new(0.5, 1.5).unwrap(), 8).unwrap();
            let f = weights_alg1(&g, 2, Scaling::FullLogScaled).unwrap();
            let full = f.full_as_f64().unwrap();
            for k in 0..8 {
                let d: f64 = (0..8)
                    .filter(|&j| j != k)
                    .map(|j| g.nodes[k] - g.nodes[j])
                    .product();
                assert!(rel(full[k * 2], 1.0 / (d * d)) < 1e-12);
            }
            let f1 = weights_alg1(&g, 1, Scaling::FullLogScaled)
                .unwrap()
                .full_as_f64()
                .unwrap();
            for k in 0..8 {
                let d: f64 = (0..8)
                    .filter(|&j| j != k)
                    .map(|j| g.nodes[k] - g.nodes[j])
                    .product();
                assert!(rel(f1[k], 1.0 / d) < 1e-12, "{kind:?} k={k}");
            }
        }
    }

    #[test]
    fn rejects_zero_m() {
        let g = Grid::gauss_jacobi(JacobiParams::legendre(), 3).unwrap();
        assert!(weights_alg1(&g, 0, Scaling::Simplified).is_err());
    }
}
