//! Reference implementations for arbitrary nodes and multiplicities: the
//! Sadiq–Viswanath weight recursion and a confluent Newton divided-difference
//! interpolant. Both are O(N²)-ish and meant for validation at modest sizes.

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Distinct nodes `x_k`, each carrying `n_k ≥ 1` data values.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiNodeSpec {
    nodes: Vec<f64>,
    multiplicities: Vec<usize>,
}

impl MultiNodeSpec {
    pub fn new(nodes: Vec<f64>, multiplicities: Vec<usize>) -> Result<Self> {
        if nodes.len() != multiplicities.len() {
            return Err(Error::Shape(format!(
                "{} nodes but {} multiplicities",
                nodes.len(),
                multiplicities.len()
            )));
        }
        if multiplicities.contains(&0) {
            return Err(Error::InvalidArgument(
                "multiplicities must be positive".into(),
            ));
        }
        if let Some(x) = nodes.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("node {x} is not finite")));
        }
        let mut sorted = nodes.clone();
        sorted.sort_by(|a, b| a.total_cmp(b));
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateNode(w[0]));
        }
        Ok(MultiNodeSpec {
            nodes,
            multiplicities,
        })
    }

    /// Every node with the same multiplicity `m`.
    pub fn uniform(nodes: Vec<f64>, m: usize) -> Result<Self> {
        let k = nodes.len();
        Self::new(nodes, vec![m; k])
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Total number of interpolation conditions `N`.
    pub fn total(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

/// Output of [`sv_weights`]. `weights[k][r] = leading[k] * ratios[k][r]`,
/// all in plain double precision.
#[derive(Debug, Clone, PartialEq)]
pub struct SvWeights {
    pub weights: Vec<Vec<f64>>,
    /// `C_k = Π_{j≠k} (x_k - x_j)^{-n_j}`.
    pub leading: Vec<f64>,
    /// `I_{k,r}`, with `I_{k,0} = 1`.
    pub ratios: Vec<Vec<f64>>,
    /// Entries that overflowed, underflowed to zero, or became NaN.
    pub nonfinite: Vec<Vec<bool>>,
}

impl SvWeights {
    pub fn any_nonfinite(&self) -> bool {
        self.nonfinite.iter().flatten().any(|&b| b)
    }
}

/// `C_k` carried as mantissa and binary exponent, so that the only loss of
/// range is the final conversion.
fn leading_factor(spec: &MultiNodeSpec, k: usize) -> f64 {
    let xk = spec.nodes[k];
    let mut mant = 1.0;
    let mut exp: i64 = 0;
    for (j, (&xj, &nj)) in spec.nodes.iter().zip(&spec.multiplicities).enumerate() {
        if j == k {
            continue;
        }
        let (fm, fe) = libm::frexp(xk - xj);
        mant /= fm.powi(nj as i32);
        exp -= fe as i64 * nj as i64;
        let (rm, re) = libm::frexp(mant);
        mant = rm;
        exp += re as i64;
    }
    let e = exp.clamp(i32::MIN as i64 / 2, i32::MAX as i64 / 2) as i32;
    libm::ldexp(mant, e)
}

/// Hermite barycentric weights by the Sadiq–Viswanath recursion
/// `I_{k,r} = (1/r) Σ_{s=1..r} P_{k,s} I_{k,r-s}` with the power sums
/// `P_{k,s} = Σ_{j≠k} n_j (x_j - x_k)^{-s}`.
pub fn sv_weights(spec: &MultiNodeSpec) -> Result<SvWeights> {
    let n = spec.len();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "at least two nodes are needed".into(),
        ));
    }
    let mut weights = Vec::with_capacity(n);
    let mut leading = Vec::with_capacity(n);
    let mut ratios = Vec::with_capacity(n);
    let mut nonfinite = Vec::with_capacity(n);
    for k in 0..n {
        let nk = spec.multiplicities[k];
        let xk = spec.nodes[k];
        let mut p = vec![0.0; nk];
        for (j, (&xj, &nj)) in spec.nodes.iter().zip(&spec.multiplicities).enumerate() {
            if j == k {
                continue;
            }
            let inv = 1.0 / (xj - xk);
            let mut pw = 1.0;
            for ps in p.iter_mut().skip(1) {
                pw *= inv;
                *ps += nj as f64 * pw;
            }
        }
        let mut ik = vec![0.0; nk];
        ik[0] = 1.0;
        for r in 1..nk {
            let mut acc = 0.0;
            for s in 1..=r {
                acc += p[s] * ik[r - s];
            }
            ik[r] = acc / r as f64;
        }
        let ck = leading_factor(spec, k);
        let bad_c = !ck.is_finite() || ck == 0.0;
        let row: Vec<f64> = ik.iter().map(|&i| ck * i).collect();
        let flags = row.iter().map(|w| bad_c || !w.is_finite()).collect();
        weights.push(row);
        leading.push(ck);
        ratios.push(ik);
        nonfinite.push(flags);
    }
    Ok(SvWeights {
        weights,
        leading,
        ratios,
        nonfinite,
    })
}

/// Newton form of the Hermite interpolant, coefficients from a confluent
/// divided-difference table built in the given node order.
///
/// The table and the nested evaluation run in double-double arithmetic, so the
/// result is close to the exact interpolant of the (double) data even where a
/// plain double tableau loses many digits.
#[derive(Debug, Clone)]
pub struct NewtonHermite {
    points: Vec<f64>,
    coeffs: Vec<Dd>,
}

impl NewtonHermite {
    /// `data[k][j] = f^(j)(x_k)` for `j < n_k`.
    pub fn new(spec: &MultiNodeSpec, data: &[Vec<f64>]) -> Result<Self> {
        if data.len() != spec.len() {
            return Err(Error::Shape(format!(
                "{} data rows for {} nodes",
                data.len(),
                spec.len()
            )));
        }
        for (k, (row, &nk)) in data.iter().zip(&spec.multiplicities).enumerate() {
            if row.len() != nk {
                return Err(Error::Shape(format!(
                    "node {k} has multiplicity {nk} but {} data values",
                    row.len()
                )));
            }
        }
        // expanded point list, remembering which node each entry came from
        let mut points = Vec::with_capacity(spec.total());
        let mut owner = Vec::with_capacity(spec.total());
        for (k, (&x, &nk)) in spec.nodes.iter().zip(&spec.multiplicities).enumerate() {
            for _ in 0..nk {
                points.push(x);
                owner.push(k);
            }
        }
        let total = points.len();
        let mut c: Vec<Dd> = owner.iter().map(|&k| Dd::from(data[k][0])).collect();
        let mut fact = Dd::from(1.0);
        for j in 1..total {
            fact = fact * Dd::from(j as f64);
            for i in (j..total).rev() {
                if owner[i] == owner[i - j] {
                    c[i] = Dd::from(data[owner[i]][j]) / fact;
                } else {
                    c[i] = (c[i] - c[i - 1]) / Dd::diff(points[i], points[i - j]);
                }
            }
        }
        Ok(NewtonHermite { points, coeffs: c })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.coeffs.len();
        let mut acc = self.coeffs[n - 1];
        for i in (0..n - 1).rev() {
            acc = acc * Dd::diff(x, self.points[i]) + self.coeffs[i];
        }
        acc.hi
    }
}

pub fn newton_hermite_eval(spec: &MultiNodeSpec, data: &[Vec<f64>], x: f64) -> Result<f64> {
    Ok(NewtonHermite::new(spec, data)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_nodes_double() {
        let s = MultiNodeSpec::uniform(vec![-1.0, 1.0], 2).unwrap();
        let w = sv_weights(&s).unwrap();
        assert_eq!(w.weights, vec![vec![0.25, 0.25], vec![0.25, -0.25]]);
        assert!(!w.any_nonfinite());
    }

    #[test]
    fn two_nodes_simple() {
        let s = MultiNodeSpec::uniform(vec![-1.0, 1.0], 1).unwrap();
        let w = sv_weights(&s).unwrap();
        assert_eq!(w.weights, vec![vec![-0.5], vec![0.5]]);
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(
            MultiNodeSpec::uniform(vec![0.0, 0.5, 0.0], 2),
            Err(Error::DuplicateNode(0.0))
        );
        assert!(MultiNodeSpec::new(vec![0.0, 1.0], vec![1]).is_err());
        assert!(MultiNodeSpec::new(vec![0.0, 1.0], vec![1, 0]).is_err());
        let one = MultiNodeSpec::uniform(vec![0.3], 2).unwrap();
        assert!(sv_weights(&one).is_err());
    }

    #[test]
    fn overflow_is_flagged_not_masked() {
        let nodes: Vec<f64> = (0..800).map(|i| -1.0 + 2.0 * i as f64 / 799.0).collect();
        let w = sv_weights(&MultiNodeSpec::uniform(nodes, 2).unwrap()).unwrap();
        assert!(w.any_nonfinite());
    }

    #[test]
    fn leading_factor_matches_direct_product() {
        let nodes = vec![-0.9, -0.2, 0.1, 0.7];
        let s = MultiNodeSpec::new(nodes.clone(), vec![1, 3, 2, 1]).unwrap();
        let w = sv_weights(&s).unwrap();
        for k in 0..4 {
            let mut direct = 1.0;
            for j in 0..4 {
                if j != k {
                    direct *= (nodes[k] - nodes[j]).powi(-(s.multiplicities()[j] as i32));
                }
            }
            assert!((w.leading[k] - direct).abs() <= 1e-14 * direct.abs());
        }
    }

    #[test]
    fn newton_constant_and_taylor() {
        let s = MultiNodeSpec::new(vec![-0.5, 0.2, 0.9], vec![2, 1, 3]).unwrap();
        let data = vec![vec![3.0, 0.0], vec![3.0], vec![3.0, 0.0, 0.0]];
        for x in [-1.0, -0.3, 0.0, 0.55, 1.0] {
            assert!((newton_hermite_eval(&s, &data, x).unwrap() - 3.0).abs() < 1e-14);
        }
        let t = MultiNodeSpec::uniform(vec![0.0], 3).unwrap();
        let d = vec![vec![0.0, 0.0, 2.0]];
        for x in [-1.0, 0.25, 2.0] {
            assert_eq!(newton_hermite_eval(&t, &d, x).unwrap(), x * x);
        }
    }

    #[test]
    fn newton_reproduces_cubic_from_endpoint_slopes() {
        // p(x) = x³ - x, p' = 3x² - 1
        let s = MultiNodeSpec::uniform(vec![-1.0, 1.0], 2).unwrap();
        let d = vec![vec![0.0, 2.0], vec![0.0, 2.0]];
        for x in [-0.7, 0.1, 0.4] {
            let v = newton_hermite_eval(&s, &d, x).unwrap();
            assert!((v - (x * x * x - x)).abs() < 1e-15);
        }
    }

    #[test]
    fn newton_shape_errors() {
        let s = MultiNodeSpec::uniform(vec![-1.0, 1.0], 2).unwrap();
        assert!(newton_hermite_eval(&s, &[vec![1.0, 0.0]], 0.0).is_err());
        assert!(newton_hermite_eval(&s, &[vec![1.0], vec![1.0, 0.0]], 0.0).is_err());
    }
}
