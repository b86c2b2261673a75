//! Jacobi polynomials `P_n^(α,β)`, Gauss–Jacobi and Jacobi–Gauss–Lobatto
//! point systems, and the normalising constant that the simplified barycentric
//! weights drop.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::nodes;
use crate::scaled::{ln_gamma, LogScaled};

/// Exponents of the Jacobi weight `(1-x)^α (1+x)^β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        // written so that NaN is rejected too
        if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParams { alpha, beta });
        }
        Ok(JacobiParams { alpha, beta })
    }

    /// First-kind Chebyshev weight, `α = β = -1/2`.
    pub fn chebyshev() -> Self {
        JacobiParams {
            alpha: -0.5,
            beta: -0.5,
        }
    }

    pub fn legendre() -> Self {
        JacobiParams {
            alpha: 0.0,
            beta: 0.0,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }

    /// `∫ (1-x)^α (1+x)^β dx` over `[-1, 1]`.
    pub fn total_mass(&self) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        ((a + b + 1.0) * LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp()
    }
}

/// Value and first derivative of `P_degree^(α,β)(x)` by the three-term
/// recurrence (differentiated alongside).
pub fn jacobi_eval(params: JacobiParams, degree: usize, x: f64) -> (f64, f64) {
    let (p, dp, _) = recurrence(params, degree, x, false);
    (p, dp)
}

/// Recurrence driver. When `count_changes` is set also returns the number of
/// sign changes in `P_0(x), ..., P_degree(x)`, which equals the number of
/// roots of `P_degree` lying above `x`.
pub(crate) fn recurrence(
    params: JacobiParams,
    degree: usize,
    x: f64,
    count_changes: bool,
) -> (f64, f64, usize) {
    let (a, b) = (params.alpha, params.beta);
    if degree == 0 {
        return (1.0, 0.0, 0);
    }
    let mut p_prev = 1.0;
    let mut dp_prev = 0.0;
    let mut p = 0.5 * ((a + b + 2.0) * x + a - b);
    let mut dp = 0.5 * (a + b + 2.0);
    let mut changes = 0usize;
    let mut last_sign = 1.0f64;
    if count_changes && p != 0.0 {
        if p.signum() != last_sign {
            changes += 1;
        }
        last_sign = p.signum();
    }
    let ab = a + b;
    let a2b2 = (a - b) * (a + b);
    for k in 2..=degree {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let c1 = 2.0 * kf * (kf + ab) * (s - 2.0);
        let c2 = (s - 1.0) * a2b2;
        let c3 = (s - 2.0) * (s - 1.0) * s;
        let c4 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * s;
        let lin = c2 + c3 * x;
        let p_next = (lin * p - c4 * p_prev) / c1;
        let dp_next = (lin * dp + c3 * p - c4 * dp_prev) / c1;
        p_prev = p;
        dp_prev = dp;
        p = p_next;
        dp = dp_next;
        if count_changes && p != 0.0 {
            if p.signum() != last_sign {
                changes += 1;
            }
            last_sign = p.signum();
        }
    }
    (p, dp, changes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridKind {
    GaussJacobi,
    JacobiGaussLobatto,
}

/// An interpolation point system on `[-1, 1]`, nodes in ascending order.
///
/// `gauss_weights` holds the Gauss–Jacobi quadrature weights for
/// [`GridKind::GaussJacobi`]. For [`GridKind::JacobiGaussLobatto`] it holds
/// `η_k ŵ_k`: the interior entries are `w̄_k / (1 - x_k²)` with `w̄_k` the
/// degree `n-2` Gauss–Jacobi weight, the two endpoint entries are the products
/// `β ŵ_1` and `α ŵ_n`, which stay finite as `β → 0` or `α → 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub kind: GridKind,
    pub params: JacobiParams,
    pub nodes: Vec<f64>,
    pub gauss_weights: Vec<f64>,
    /// Exact root minus the stored node, a fraction of an ulp. Zero for the
    /// endpoints, closed-form nodes, and degrees too large to polish.
    pub node_corrections: Vec<f64>,
}

impl Grid {
    pub fn gauss_jacobi(params: JacobiParams, n: usize) -> Result<Grid> {
        gauss_jacobi_grid(params, n)
    }

    pub fn lobatto(params: JacobiParams, n: usize) -> Result<Grid> {
        lobatto_grid(params, n)
    }

    pub fn new(kind: GridKind, params: JacobiParams, n: usize) -> Result<Grid> {
        match kind {
            GridKind::GaussJacobi => gauss_jacobi_grid(params, n),
            GridKind::JacobiGaussLobatto => lobatto_grid(params, n),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// `1 - x_k²` at the corrected node. Near `±1` this is what the weights
    /// are most sensitive to.
    pub fn one_minus_x2(&self, k: usize) -> f64 {
        let (x, dx) = (self.nodes[k], self.node_corrections[k]);
        ((1.0 - x) - dx) * ((1.0 + x) + dx)
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Degree of the Jacobi polynomial whose roots are the (interior) nodes.
    pub fn jacobi_degree(&self) -> usize {
        match self.kind {
            GridKind::GaussJacobi => self.len(),
            GridKind::JacobiGaussLobatto => self.len() - 2,
        }
    }
}

pub fn gauss_jacobi_grid(params: JacobiParams, n: usize) -> Result<Grid> {
    let params = JacobiParams::new(params.alpha, params.beta)?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "Gauss-Jacobi grid needs n >= 1".into(),
        ));
    }
    let (nodes, gauss_weights, node_corrections) = if params.alpha == -0.5 && params.beta == -0.5 {
        let (x, w) = chebyshev_first_kind(n);
        (x, w, vec![0.0; n])
    } else {
        let roots = nodes::jacobi_roots(params, n)?;
        let nodes: Vec<f64> = roots.iter().map(|r| r.x).collect();
        let (weights, _) = normalised_weights(params, &roots);
        (nodes, weights, roots.iter().map(|r| r.dx).collect())
    };
    Ok(Grid {
        kind: GridKind::GaussJacobi,
        params,
        nodes,
        gauss_weights,
        node_corrections,
    })
}

pub fn lobatto_grid(params: JacobiParams, n: usize) -> Result<Grid> {
    let params = JacobiParams::new(params.alpha, params.beta)?;
    if n < 3 {
        return Err(Error::InvalidArgument("Lobatto grid needs n >= 3".into()));
    }
    let degree = n - 2;
    let roots = nodes::jacobi_roots(params, degree)?;
    let (interior, scale) = normalised_weights(params, &roots);

    // every fused entry is scale / ω'(x_k)² with ω = (x² - 1) P_{n-2}, and
    // ω'(±1) = ±2 P(±1); sharing the scale keeps endpoints and interior
    // consistent to rounding
    let end = |near: f64| scale / (4.0 * jacobi_at_one(near, degree).powi(2));
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut corrections = Vec::with_capacity(n);
    nodes.push(-1.0);
    weights.push(end(params.beta));
    corrections.push(0.0);
    for (r, w) in roots.iter().zip(interior) {
        nodes.push(r.x);
        weights.push(w / (((1.0 - r.x) - r.dx) * ((1.0 + r.x) + r.dx)));
        corrections.push(r.dx);
    }
    nodes.push(1.0);
    weights.push(end(params.alpha));
    corrections.push(0.0);
    Ok(Grid {
        kind: GridKind::JacobiGaussLobatto,
        params,
        nodes,
        gauss_weights: weights,
        node_corrections: corrections,
    })
}

/// `|P_d^(α,β)(±1)| = binom(d + e, d)` with `e` the exponent at that end.
fn jacobi_at_one(e: f64, degree: usize) -> f64 {
    (1..=degree).map(|j| (j as f64 + e) / j as f64).product()
}

/// Gauss–Jacobi weights `∝ 1 / ((1-x_k²) P'(x_k)²)`, scaled to the total mass,
/// and the scale that was applied.
fn normalised_weights(params: JacobiParams, roots: &[nodes::Root]) -> (Vec<f64>, f64) {
    let raw: Vec<f64> = roots
        .iter()
        .map(|r| 1.0 / (((1.0 - r.x) - r.dx) * ((1.0 + r.x) + r.dx) * r.dp * r.dp))
        .collect();
    let total: f64 = raw.iter().sum();
    let scale = params.total_mass() / total;
    (raw.into_iter().map(|w| w * scale).collect(), scale)
}

/// Closed form for `α = β = -1/2`: `cos((2j-1)π/(2n))` in ascending order,
/// every weight `π/n`.
fn chebyshev_first_kind(n: usize) -> (Vec<f64>, Vec<f64>) {
    let nf = n as f64;
    // sin of an odd-symmetric argument keeps the nodes exactly antisymmetric
    let nodes = (1..=n)
        .map(|k| {
            let j = (n + 1 - k) as f64;
            (PI * (nf + 1.0 - 2.0 * j) / (2.0 * nf)).sin()
        })
        .collect();
    (nodes, vec![PI / nf; n])
}

/// `ln |C_n^(α,β)|` and its sign `σ_n` (+1 for odd n, -1 for even n).
fn ln_common_factor(params: JacobiParams, n: usize) -> (i8, f64) {
    let (a, b) = (params.alpha, params.beta);
    let nf = n as f64;
    let ln = ln_gamma(2.0 * nf + a + b + 1.0)
        - (nf + 0.5 * (a + b + 1.0)) * LN_2
        - 0.5
            * (ln_gamma(nf + 1.0)
                + ln_gamma(nf + a + b + 1.0)
                + ln_gamma(nf + a + 1.0)
                + ln_gamma(nf + b + 1.0));
    let sign = if n % 2 == 1 { 1 } else { -1 };
    (sign, ln)
}

/// `(C_n^(α,β))^m`, the factor cancelled from the Gauss–Jacobi barycentric
/// weights. Evaluated entirely through log-gamma, so it is exact in range for
/// any realistic `n` and `m`.
pub fn common_factor(params: JacobiParams, n: usize, m: usize) -> LogScaled {
    assert!(n >= 1 && m >= 1, "common_factor needs n >= 1 and m >= 1");
    let (sign, ln) = ln_common_factor(params, n);
    LogScaled::from_ln(sign, ln).powi(m as u32)
}
