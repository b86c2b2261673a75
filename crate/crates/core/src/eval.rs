//! Evaluation of the Hermite interpolant `H_{mn-1}(f, x)` from a weight table.
//!
//! The second barycentric form is
//!
//! ```text
//!          Σ_k Σ_{r+s<m} w_{k,r} f_{k,s}/s! (x-x_k)^{r+s-m}
//! H(x) = ---------------------------------------------------
//!                  Σ_k Σ_{r<m} w_{k,r} (x-x_k)^{r-m}
//! ```
//!
//! and is unchanged when every weight is multiplied by one constant.

use crate::error::{Error, Result};
use crate::jacobi::Grid;
use crate::weights::{BaryWeightTable, WeightValues};

/// Per-node data `values[k*m + j] = f^(j)(x_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteData {
    pub n: usize,
    pub m: usize,
    pub values: Vec<f64>,
}

impl HermiteData {
    pub fn new(n: usize, m: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * m {
            return Err(Error::Shape(format!(
                "{} data values for {n} nodes with {m} each",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "data value {v} is not finite"
            )));
        }
        Ok(HermiteData { n, m, values })
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.values[k * self.m..(k + 1) * self.m]
    }

    /// Rows as separate vectors, the layout the Newton oracle takes.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.values.chunks(self.m).map(<[f64]>::to_vec).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataMode {
    /// True derivatives at every node.
    Full,
    /// Function values with all derivative slots zero (classical
    /// Hermite–Fejér data).
    FejerZero,
}

/// Samples `f` on the grid; `f(x, out)` writes `f^(j)(x)` into `out[j]`.
pub fn sample_hermite_data<F>(f: F, grid: &Grid, m: usize, mode: DataMode) -> Result<HermiteData>
where
    F: Fn(f64, &mut [f64]),
{
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let n = grid.len();
    let mut values = vec![0.0; n * m];
    for (x, row) in grid.nodes.iter().zip(values.chunks_mut(m)) {
        match mode {
            DataMode::Full => f(*x, row),
            DataMode::FejerZero => f(*x, &mut row[..1]),
        }
    }
    HermiteData::new(n, m, values)
}

/// Precomputed second-form interpolant. Building it costs O(n m²); each
/// evaluation costs O(n m).
#[derive(Debug, Clone)]
pub struct Interpolant {
    nodes: Vec<f64>,
    m: usize,
    /// denominator coefficients, `w_{k,r}`
    den: Vec<f64>,
    /// numerator coefficients, `Σ_{r≤t} w_{k,r} f_{k,t-r}/(t-r)!`
    num: Vec<f64>,
    /// the same sums taken over absolute values
    num_abs: Vec<f64>,
    at_nodes: Vec<f64>,
}

impl Interpolant {
    /// From a simplified weight table.
    pub fn new(table: &BaryWeightTable, grid: &Grid, data: &HermiteData) -> Result<Self> {
        let WeightValues::Simplified(w) = &table.values else {
            return Err(Error::InvalidArgument(
                "the second form needs simplified weights; convert full weights first".into(),
            ));
        };
        if table.n != grid.len() {
            return Err(Error::Shape(format!(
                "table has {} rows but the grid has {} nodes",
                table.n,
                grid.len()
            )));
        }
        Self::from_raw(grid.nodes.clone(), table.m, w.clone(), data)
    }

    /// From any weights in plain doubles, row-major `n × m`.
    pub fn from_raw(
        nodes: Vec<f64>,
        m: usize,
        weights: Vec<f64>,
        data: &HermiteData,
    ) -> Result<Self> {
        let n = nodes.len();
        if m == 0 || weights.len() != n * m {
            return Err(Error::Shape(format!(
                "{} weights for {n} nodes, m = {m}",
                weights.len()
            )));
        }
        if data.n != n || data.m != m {
            return Err(Error::Shape(format!(
                "data is {}×{} but weights are {n}×{m}",
                data.n, data.m
            )));
        }
        let mut num = vec![0.0; n * m];
        let mut num_abs = vec![0.0; n * m];
        let mut g = vec![0.0; m];
        for k in 0..n {
            let f = data.row(k);
            let mut fact = 1.0;
            for s in 0..m {
                if s > 0 {
                    fact *= s as f64;
                }
                g[s] = f[s] / fact;
            }
            let w = &weights[k * m..(k + 1) * m];
            for t in 0..m {
                let mut acc = 0.0;
                let mut abs = 0.0;
                for r in 0..=t {
                    acc += w[r] * g[t - r];
                    abs += (w[r] * g[t - r]).abs();
                }
                num[k * m + t] = acc;
                num_abs[k * m + t] = abs;
            }
        }
        let at_nodes = (0..n).map(|k| data.values[k * m]).collect();
        Ok(Interpolant {
            nodes,
            m,
            den: weights,
            num,
            num_abs,
            at_nodes,
        })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let m = self.m;
        let mut top = 0.0;
        let mut bottom = 0.0;
        for (k, &xk) in self.nodes.iter().enumerate() {
            if x == xk {
                return Ok(self.at_nodes[k]);
            }
            let u = 1.0 / (x - xk);
            let a = &self.num[k * m..(k + 1) * m];
            let b = &self.den[k * m..(k + 1) * m];
            let mut pa = a[0];
            let mut pb = b[0];
            for t in 1..m {
                pa = pa * u + a[t];
                pb = pb * u + b[t];
            }
            top += pa * u;
            bottom += pb * u;
        }
        let v = top / bottom;
        if !v.is_finite() {
            return Err(Error::Contract(format!(
                "second form produced {v} at x = {x} (numerator {top}, denominator {bottom})"
            )));
        }
        Ok(v)
    }

    /// Value at `x` and its condition number with respect to relative
    /// perturbations of the weights: perturbing every `w_{k,r}` by a relative
    /// amount `≤ ε` moves the value by at most about `ε·κ` relatively. At a
    /// node the value is exact and `κ = 0`.
    pub fn eval_with_condition(&self, x: f64) -> Result<(f64, f64)> {
        let v = self.eval(x)?;
        if self.nodes.contains(&x) {
            return Ok((v, 0.0));
        }
        let m = self.m;
        let (mut top, mut bottom, mut top_abs, mut bottom_abs) = (0.0, 0.0, 0.0, 0.0);
        for (k, &xk) in self.nodes.iter().enumerate() {
            let u = 1.0 / (x - xk);
            let ua = u.abs();
            let range = k * m..(k + 1) * m;
            let (a, aa, b) = (
                &self.num[range.clone()],
                &self.num_abs[range.clone()],
                &self.den[range],
            );
            let (mut pa, mut paa, mut pb, mut pba) = (a[0], aa[0], b[0], b[0].abs());
            for t in 1..m {
                pa = pa * u + a[t];
                paa = paa * ua + aa[t];
                pb = pb * u + b[t];
                pba = pba * ua + b[t].abs();
            }
            top += pa * u;
            top_abs += paa * ua;
            bottom += pb * u;
            bottom_abs += pba * ua;
        }
        Ok((v, top_abs / top.abs() + bottom_abs / bottom.abs()))
    }

    pub fn eval_many(&self, xs: &[f64]) -> Result<Vec<f64>> {
        xs.iter().map(|&x| self.eval(x)).collect()
    }
}

/// One-off second-form evaluation. Build an [`Interpolant`] when evaluating
/// at many points.
pub fn eval_second_form(
    table: &BaryWeightTable,
    grid: &Grid,
    data: &HermiteData,
    x: f64,
) -> Result<f64> {
    Interpolant::new(table, grid, data)?.eval(x)
}

/// First form, `H*(x) Σ_k Σ_{r+s<m} w_{k,r} f_{k,s}/s! (x-x_k)^{r+s-m}` with
/// `H*(x) = Π (x-x_k)^m`, using full weights in double precision. Only
/// meaningful while both the weights and `H*` are in range.
pub fn eval_first_form(
    table: &BaryWeightTable,
    grid: &Grid,
    data: &HermiteData,
    x: f64,
) -> Result<f64> {
    let m = table.m;
    let w = table.full_as_f64()?;
    if table.n != grid.len() || data.n != table.n || data.m != m {
        return Err(Error::Shape("table, grid and data disagree in size".into()));
    }
    if let Some(k) = grid.nodes.iter().position(|&xk| xk == x) {
        return Ok(data.values[k * m]);
    }
    let mut hstar = 1.0;
    for &xk in &grid.nodes {
        hstar *= (x - xk).powi(m as i32);
    }
    if !hstar.is_finite() || hstar == 0.0 {
        return Err(Error::Range(format!(
            "node polynomial power H*({x}) = {hstar} is out of double-precision range"
        )));
    }
    let interp = Interpolant::from_raw(grid.nodes.clone(), m, w, data)?;
    let mut sum = 0.0;
    for (k, &xk) in grid.nodes.iter().enumerate() {
        let u = 1.0 / (x - xk);
        let a = &interp.num[k * m..(k + 1) * m];
        let mut pa = a[0];
        for &c in &a[1..] {
            pa = pa * u + c;
        }
        sum += pa * u;
    }
    let v = hstar * sum;
    if !v.is_finite() {
        return Err(Error::Range(format!("first form overflowed at x = {x}")));
    }
    Ok(v)
}
