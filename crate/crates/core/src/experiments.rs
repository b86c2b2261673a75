//! Numerical experiments producing tabular reports: overflow thresholds of
//! the unscaled weights, convergence studies, common-factor tables,
//! normality scans and stability limits.

use std::io::Write;

use crate::error::{Error, Result};
use crate::eval::{sample_hermite_data, DataMode, Interpolant};
use crate::functions::TestFunction;
use crate::jacobi::{common_factor, Grid, GridKind, JacobiParams};
use crate::oracle::{sv_weights, MultiNodeSpec};
use crate::scaled::LogScaled;
use crate::taylor::node_ratios_into;
use crate::weights::{weights_alg2, Scaling};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Scaled(LogScaled),
    Text(String),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<LogScaled> for Cell {
    fn from(v: LogScaled) -> Self {
        Cell::Scaled(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Int(v as i64)
    }
}

/// 17 significant digits, enough to round-trip any double.
pub fn format_real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// A named table. A `Scaled` cell occupies two CSV columns, so its column
/// name `c` expands to `c_sign`, `c_log10_mag`, or to plain `sign`,
/// `log10_mag` when `c` is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ExperimentReport {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        ExperimentReport {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width differs from header"
        );
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Real or integer value at `(row, column name)`.
    pub fn real(&self, row: usize, name: &str) -> Option<f64> {
        match self.rows.get(row)?.get(self.column(name)?)? {
            Cell::Real(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    fn header(&self) -> Vec<String> {
        let scaled: Vec<bool> = match self.rows.first() {
            Some(r) => r.iter().map(|c| matches!(c, Cell::Scaled(_))).collect(),
            None => vec![false; self.columns.len()],
        };
        let mut out = Vec::new();
        for (c, s) in self.columns.iter().zip(scaled) {
            if s {
                if c.is_empty() {
                    out.push("sign".to_string());
                    out.push("log10_mag".to_string());
                } else {
                    out.push(format!("{c}_sign"));
                    out.push(format!("{c}_log10_mag"));
                }
            } else {
                out.push(c.clone());
            }
        }
        out
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::InvalidArgument(format!("writing CSV: {e}"));
        wr.write_record(self.header()).map_err(io)?;
        for row in &self.rows {
            let mut rec = Vec::with_capacity(row.len() + 1);
            for c in row {
                match c {
                    Cell::Int(v) => rec.push(v.to_string()),
                    Cell::Real(v) => rec.push(format_real(*v)),
                    Cell::Text(s) => rec.push(s.clone()),
                    Cell::Scaled(s) => {
                        rec.push(s.sign.to_string());
                        rec.push(format_real(s.log10_mag));
                    }
                }
            }
            wr.write_record(&rec).map_err(io)?;
        }
        wr.flush()
            .map_err(|e| Error::InvalidArgument(format!("writing CSV: {e}")))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }
}

/// Point system: kind plus Jacobi exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSystem {
    pub kind: GridKind,
    pub params: JacobiParams,
}

impl PointSystem {
    pub fn gauss(alpha: f64, beta: f64) -> Result<Self> {
        Ok(PointSystem {
            kind: GridKind::GaussJacobi,
            params: JacobiParams::new(alpha, beta)?,
        })
    }

    pub fn lobatto(alpha: f64, beta: f64) -> Result<Self> {
        Ok(PointSystem {
            kind: GridKind::JacobiGaussLobatto,
            params: JacobiParams::new(alpha, beta)?,
        })
    }

    /// First-kind Chebyshev points.
    pub fn chebyshev() -> Self {
        PointSystem {
            kind: GridKind::GaussJacobi,
            params: JacobiParams::chebyshev(),
        }
    }

    /// Second-kind Chebyshev points `cos((k-1)π/(n-1))`.
    pub fn chebyshev_second_kind() -> Self {
        PointSystem {
            kind: GridKind::JacobiGaussLobatto,
            params: JacobiParams::new(0.5, 0.5).expect("valid exponents"),
        }
    }

    pub fn grid(&self, n: usize) -> Result<Grid> {
        Grid::new(self.kind, self.params, n)
    }

    pub fn label(&self) -> &'static str {
        match self.kind {
            GridKind::GaussJacobi => "gauss",
            GridKind::JacobiGaussLobatto => "lobatto",
        }
    }
}

/// `n + 1` equispaced points on `[-1, 1]`, computed from integers so that
/// `±1` and `0` are hit exactly.
pub fn uniform_points(intervals: usize) -> Vec<f64> {
    let h = intervals as f64;
    (0..=intervals).map(|i| (2.0 * i as f64 - h) / h).collect()
}

fn sv_overflows(system: PointSystem, n: usize, m: usize) -> Result<bool> {
    let grid = system.grid(n)?;
    let spec = MultiNodeSpec::uniform(grid.nodes, m)?;
    Ok(sv_weights(&spec)?.any_nonfinite())
}

/// Smallest `n` at which the unscaled weights (Sadiq–Viswanath recursion in
/// plain doubles) contain a non-finite or vanished entry.
pub fn overflow_threshold(system: PointSystem, m: usize) -> Result<usize> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let mut lo = 2;
    let mut hi = 64;
    while !sv_overflows(system, hi, m)? {
        lo = hi;
        hi *= 2;
        if hi > 1 << 16 {
            return Err(Error::Contract("no overflow found below n = 65536".into()));
        }
    }
    // invariant: lo is finite, hi overflows
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if sv_overflows(system, mid, m)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // the binary search assumes monotonicity; confirm just below the result
    for n in hi.saturating_sub(4).max(2)..hi {
        if sv_overflows(system, n, m)? {
            return Err(Error::Contract(format!(
                "overflow at n = {n} below the bracketed threshold {hi}"
            )));
        }
    }
    Ok(hi)
}

pub fn experiment_overflow(
    systems: &[(&str, PointSystem)],
    ms: &[usize],
) -> Result<ExperimentReport> {
    let mut rep =
        ExperimentReport::new("overflow", &["system", "alpha", "beta", "m", "threshold_n"]);
    for (label, sys) in systems {
        for &m in ms {
            let s = overflow_threshold(*sys, m)?;
            rep.push(vec![
                (*label).into(),
                sys.params.alpha.into(),
                sys.params.beta.into(),
                m.into(),
                s.into(),
            ]);
        }
    }
    Ok(rep)
}

/// Max error of the interpolant of `f` over `points`.
pub fn max_error(
    f: TestFunction,
    system: PointSystem,
    n: usize,
    m: usize,
    mode: DataMode,
    points: &[f64],
) -> Result<f64> {
    let grid = system.grid(n)?;
    let table = weights_alg2(&grid, m, Scaling::Simplified)?;
    let data = sample_hermite_data(|x, o: &mut [f64]| f.fill(x, o), &grid, m, mode)?;
    let p = Interpolant::new(&table, &grid, &data)?;
    let mut worst: f64 = 0.0;
    for &x in points {
        let e = (p.eval(x)? - f.value(x)).abs();
        worst = worst.max(e);
    }
    Ok(worst)
}

fn mode_label(mode: DataMode) -> &'static str {
    match mode {
        DataMode::Full => "full",
        DataMode::FejerZero => "fejer_zero",
    }
}

/// Max-error table on the equispaced grid with `intervals` subintervals.
pub fn experiment_convergence(
    f: TestFunction,
    system: PointSystem,
    ms: &[usize],
    ns: &[usize],
    mode: DataMode,
    intervals: usize,
) -> Result<ExperimentReport> {
    let pts = uniform_points(intervals);
    let mut rep = ExperimentReport::new(
        "convergence",
        &[
            "function",
            "system",
            "alpha",
            "beta",
            "n",
            "m",
            "data_mode",
            "derivatives_truncated",
            "max_error",
        ],
    );
    for &m in ms {
        for &n in ns {
            let e = max_error(f, system, n, m, mode, &pts)?;
            let truncated = mode == DataMode::Full && !f.has_derivatives(m);
            rep.push(vec![
                f.name().into(),
                system.label().into(),
                system.params.alpha.into(),
                system.params.beta.into(),
                n.into(),
                m.into(),
                mode_label(mode).into(),
                truncated.into(),
                e.into(),
            ]);
        }
    }
    Ok(rep)
}

pub fn experiment_common_factor(
    params: JacobiParams,
    ns: &[usize],
    ms: &[usize],
) -> ExperimentReport {
    let mut rep = ExperimentReport::new(
        "common_factor",
        &["alpha", "beta", "n", "m", "", "mantissa", "exponent"],
    );
    for &n in ns {
        for &m in ms {
            let c = common_factor(params, n, m);
            let (mant, exp) = c.mantissa_exponent();
            rep.push(vec![
                params.alpha.into(),
                params.beta.into(),
                n.into(),
                m.into(),
                c.into(),
                mant.into(),
                Cell::Int(exp),
            ]);
        }
    }
    rep
}

/// Minimum of `v_k(x) = 1 - (x - x_k) ω''(x_k)/ω'(x_k)` over nodes and the
/// sample points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalityMin {
    pub min: f64,
    /// 1-based node index
    pub node: usize,
    pub x: f64,
}

pub fn normality_min(grid: &Grid, points: &[f64]) -> NormalityMin {
    let mut best = NormalityMin {
        min: f64::INFINITY,
        node: 0,
        x: f64::NAN,
    };
    let mut ratios = [0.0; 2];
    let mut scratch = [0.0; 2];
    for (k, &xk) in grid.nodes.iter().enumerate() {
        node_ratios_into(grid, k, &mut ratios, &mut scratch);
        let slope = 2.0 * ratios[1];
        for &x in points {
            let v = 1.0 - (x - xk) * slope;
            if v < best.min {
                best = NormalityMin {
                    min: v,
                    node: k + 1,
                    x,
                };
            }
        }
    }
    best
}

pub fn experiment_normality(
    system: PointSystem,
    ns: &[usize],
    resolution: usize,
) -> Result<ExperimentReport> {
    if resolution < 2 {
        return Err(Error::InvalidArgument(
            "at least two sample points are needed".into(),
        ));
    }
    let pts = uniform_points(resolution - 1);
    let mut rep = ExperimentReport::new(
        "normality",
        &[
            "system",
            "alpha",
            "beta",
            "n",
            "min_v",
            "argmin_node",
            "argmin_x",
        ],
    );
    for &n in ns {
        let g = system.grid(n)?;
        let r = normality_min(&g, &pts);
        rep.push(vec![
            system.label().into(),
            system.params.alpha.into(),
            system.params.beta.into(),
            n.into(),
            r.min.into(),
            r.node.into(),
            r.x.into(),
        ]);
    }
    Ok(rep)
}

/// Runge function at second-kind Chebyshev points, sampled on a step-0.002
/// grid.
pub fn experiment_failure_second_kind(
    ns: &[usize],
    ms: &[usize],
    mode: DataMode,
) -> Result<ExperimentReport> {
    let pts = uniform_points(1000);
    let sys = PointSystem::chebyshev_second_kind();
    let mut rep =
        ExperimentReport::new("failure_second_kind", &["n", "m", "data_mode", "max_error"]);
    for &m in ms {
        for &n in ns {
            let e = max_error(TestFunction::Runge, sys, n, m, mode, &pts)?;
            rep.push(vec![n.into(), m.into(), mode_label(mode).into(), e.into()]);
        }
    }
    Ok(rep)
}

/// Whether every simplified weight is finite and every nonzero weight is a
/// normal double; a vanished `w_{k,0}` counts as underflow. Exact zeros at
/// `r ≥ 1` come from symmetry and are allowed.
pub fn weights_in_range(values: &[f64], m: usize) -> bool {
    values.iter().enumerate().all(|(i, &w)| {
        if !w.is_finite() {
            return false;
        }
        if w == 0.0 {
            return i % m != 0;
        }
        w.is_normal()
    })
}

/// Largest `m ≤ m_max` for which the simplified weights at `n` nodes stay in
/// range, or 0 if even `m = 1` fails.
pub fn stability_limit(grid: &Grid, m_max: usize) -> Result<usize> {
    let ok = |m: usize| -> Result<bool> {
        let t = weights_alg2(grid, m, Scaling::Simplified)?;
        Ok(weights_in_range(
            t.simplified().expect("simplified table"),
            m,
        ))
    };
    if !ok(1)? {
        return Ok(0);
    }
    if ok(m_max)? {
        return Ok(m_max);
    }
    let (mut lo, mut hi) = (1, m_max);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

pub fn experiment_stability_limit(
    system: PointSystem,
    ns: &[usize],
    m_max: usize,
) -> Result<ExperimentReport> {
    let mut rep = ExperimentReport::new(
        "stability_limit",
        &["system", "alpha", "beta", "n", "m_max_searched", "max_m"],
    );
    for &n in ns {
        let g = system.grid(n)?;
        let lim = stability_limit(&g, m_max)?;
        rep.push(vec![
            system.label().into(),
            system.params.alpha.into(),
            system.params.beta.into(),
            n.into(),
            m_max.into(),
            lim.into(),
        ]);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut r = ExperimentReport::new("t", &["n", "", "err"]);
        r.push(vec![
            3usize.into(),
            LogScaled::new(-1, 2.5).into(),
            0.1.into(),
        ]);
        let s = r.to_csv_string();
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("n,sign,log10_mag,err"));
        assert_eq!(
            lines.next(),
            Some("3,-1,2.5000000000000000e0,1.0000000000000001e-1")
        );
        assert_eq!(r.real(0, "err"), Some(0.1));
        assert_eq!(r.real(0, "n"), Some(3.0));
    }

    #[test]
    fn uniform_points_are_exact() {
        let p = uniform_points(100);
        assert_eq!(p.len(), 101);
        assert_eq!((p[0], p[50], p[100]), (-1.0, 0.0, 1.0));
    }

    #[test]
    fn common_factor_rows() {
        let r = experiment_common_factor(JacobiParams::chebyshev(), &[100], &[2]);
        assert_eq!(r.real(0, "exponent"), Some(57.0));
        let m = r.real(0, "mantissa").unwrap();
        assert!((m - 1.27876).abs() < 5e-6);
    }

    #[test]
    fn range_check() {
        assert!(weights_in_range(&[1.0, 0.0, -2.0, 3.0], 2));
        assert!(!weights_in_range(&[0.0, 1.0], 2));
        assert!(!weights_in_range(&[1.0, f64::INFINITY], 2));
        assert!(!weights_in_range(&[1.0, 1e-310], 2));
    }

    #[test]
    fn normality_chebyshev_small() {
        let g = PointSystem::chebyshev().grid(20).unwrap();
        let r = normality_min(&g, &uniform_points(200));
        assert!(r.min >= 0.5 - 1e-12, "{r:?}");
    }
}
