//! Scaled derivative ratios of the nodal polynomial,
//! `M_{k,r} = ω^(r+1)(x_k) / ((r+1)! ω'(x_k))`, i.e. the Taylor coefficients
//! of the Lagrange basis polynomial `ℓ_k` about its own node. Both point
//! systems produce them in O(m) per node from the Jacobi differential
//! equation.

use crate::error::{Error, Result};
use crate::jacobi::{Grid, GridKind, JacobiParams};

/// Truncated power series, `coeffs[j]` multiplying `t^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoeffs(pub Vec<f64>);

impl SeriesCoeffs {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `F = A / B + O(t^s)` by forward substitution:
/// `B_0 F_j = A_j - Σ_{i=1..j} B_i F_{j-i}`.
pub fn series_divide(numer: &SeriesCoeffs, denom: &SeriesCoeffs, s: usize) -> Result<SeriesCoeffs> {
    if numer.len() < s || denom.len() < s {
        return Err(Error::Shape(format!(
            "series of length {} and {} cannot be divided to order {s}",
            numer.len(),
            denom.len()
        )));
    }
    let mut out = vec![0.0; s];
    divide_into(&numer.0[..s], &denom.0[..s], &mut out)?;
    Ok(SeriesCoeffs(out))
}

/// Slice form of [`series_divide`]; `out.len()` sets the order.
pub(crate) fn divide_into(numer: &[f64], denom: &[f64], out: &mut [f64]) -> Result<()> {
    let b0 = denom[0];
    if b0 == 0.0 {
        return Err(Error::DivisionByZero);
    }
    for j in 0..out.len() {
        let mut acc = numer[j];
        for i in 1..=j {
            acc -= denom[i] * out[j - i];
        }
        out[j] = acc / b0;
    }
    Ok(())
}

/// `M_{k,0..m-1}` for one node. `values[0]` is always exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorRatios {
    pub node_index: usize,
    pub values: Vec<f64>,
}

/// Ratios `P^(r+1)(x)/((r+1)! P'(x))`, r = 0..len, at a root `x` of
/// `P_degree^(α,β)`, written into `out`. Two-term recursion from the
/// differentiated Sturm–Liouville equation. `omx2` is `1 - x²`, passed in so
/// callers can supply it at the unrounded root.
pub(crate) fn gauss_ratios_into(
    params: JacobiParams,
    degree: usize,
    x: f64,
    omx2: f64,
    out: &mut [f64],
) {
    let (a, b) = (params.alpha, params.beta);
    let d = degree as f64;
    let lambda = d * (d + a + b + 1.0);
    let inv = 1.0 / omx2;
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    // M_{r+1} from M_r and M_{r-1}, with M_{-1} = P(x)/P'(x) = 0
    let mut prev = 0.0;
    for r in 0..out.len() - 1 {
        let rf = r as f64;
        let first = ((a + b + 2.0 * (rf + 1.0)) * x + a - b) * inv / (rf + 2.0);
        let second = (rf * (a + b + rf + 1.0) - lambda) * inv / ((rf + 2.0) * (rf + 1.0));
        let next = first * out[r] + second * prev;
        prev = out[r];
        out[r + 1] = next;
    }
}

/// Ratios at a Gauss–Jacobi node `x_k` (a root of `P_n^(α,β)`).
pub fn gauss_m(params: JacobiParams, n: usize, x_k: f64, m: usize) -> Result<TaylorRatios> {
    if !(x_k.abs() < 1.0) {
        return Err(Error::Domain { x: x_k });
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let mut values = vec![0.0; m];
    gauss_ratios_into(params, n, x_k, (1.0 - x_k) * (1.0 + x_k), &mut values);
    Ok(TaylorRatios {
        node_index: 0,
        values,
    })
}

/// `P^(r)(s)/(r! P(s))` for `r = 0..out.len()` at the endpoint `s = ±1`.
pub(crate) fn endpoint_ratios_into(
    params: JacobiParams,
    degree: usize,
    side: f64,
    out: &mut [f64],
) {
    let (a, b) = (params.alpha, params.beta);
    let d = degree as f64;
    let lambda = d * (d + a + b + 1.0);
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    for r in 1..out.len() {
        let rf = r as f64;
        let num = lambda - (rf - 1.0) * (a + b + rf);
        let den = rf * (side * (a + b + 2.0 * rf) + a - b);
        out[r] = num / den * out[r - 1];
    }
}

/// Lobatto ratios for node `index` (0-based) of a Lobatto grid, where
/// `ω(x) = (x² - 1) P_{n-2}(x)`. `scratch` must hold at least `m` values.
pub(crate) fn lobatto_ratios_into(
    params: JacobiParams,
    n: usize,
    index: usize,
    x: f64,
    omx2: f64,
    out: &mut [f64],
    scratch: &mut [f64],
) {
    let m = out.len();
    let degree = n - 2;
    if m == 0 {
        return;
    }
    if index == 0 || index == n - 1 {
        let side = if index == 0 { -1.0 } else { 1.0 };
        let e = &mut scratch[..m];
        endpoint_ratios_into(params, degree, side, e);
        out[0] = 1.0;
        for j in 1..m {
            out[j] = e[j] + 0.5 * side * e[j - 1];
        }
    } else {
        let g = &mut scratch[..m];
        gauss_ratios_into(params, degree, x, omx2, g);
        let inv = -1.0 / omx2;
        out[0] = 1.0;
        for r in 1..m {
            // g_{-1} = P(x_k)/P'(x_k) = 0
            let g2 = if r >= 2 { g[r - 2] } else { 0.0 };
            out[r] = g[r] + 2.0 * x * inv * g[r - 1] + inv * g2;
        }
    }
}

/// Ratios at node `node_index` (1-based) of a Jacobi–Gauss–Lobatto grid.
pub fn lobatto_m(grid: &Grid, node_index: usize, m: usize) -> Result<TaylorRatios> {
    if grid.kind != GridKind::JacobiGaussLobatto {
        return Err(Error::InvalidArgument(
            "lobatto_m needs a Lobatto grid".into(),
        ));
    }
    let n = grid.len();
    if node_index == 0 || node_index > n {
        return Err(Error::InvalidArgument(format!(
            "node index {node_index} outside 1..={n}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let mut values = vec![0.0; m];
    let mut scratch = vec![0.0; m];
    let i = node_index - 1;
    lobatto_ratios_into(
        grid.params,
        n,
        i,
        grid.nodes[i],
        grid.one_minus_x2(i),
        &mut values,
        &mut scratch,
    );
    Ok(TaylorRatios { node_index, values })
}

/// Ratios for every node of `grid`, row-major `n × m`.
pub fn grid_ratios(grid: &Grid, m: usize) -> Vec<f64> {
    let n = grid.len();
    let mut out = vec![0.0; n * m];
    let mut scratch = vec![0.0; m];
    for (i, row) in out.chunks_mut(m.max(1)).enumerate().take(n) {
        node_ratios_into(grid, i, row, &mut scratch);
    }
    out
}

pub(crate) fn node_ratios_into(grid: &Grid, i: usize, out: &mut [f64], scratch: &mut [f64]) {
    match grid.kind {
        GridKind::GaussJacobi => gauss_ratios_into(
            grid.params,
            grid.len(),
            grid.nodes[i],
            grid.one_minus_x2(i),
            out,
        ),
        GridKind::JacobiGaussLobatto => lobatto_ratios_into(
            grid.params,
            grid.len(),
            i,
            grid.nodes[i],
            grid.one_minus_x2(i),
            out,
            scratch,
        ),
    }
}
