#![allow(dead_code)]

use hermite_bary::MultiNodeSpec;

/// `p^(j)(x)` for the monomial-basis coefficients `c`.
pub fn poly_derivs(c: &[f64], x: f64, out: &mut [f64]) {
    for (j, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for i in (j..c.len()).rev() {
            let f: f64 = ((i - j + 1)..=i).map(|v| v as f64).product();
            acc = acc * x + c[i] * f;
        }
        *o = acc;
    }
}

pub fn sample_points() -> Vec<f64> {
    (0..=200).map(|i| (i as f64 - 100.0) / 100.0).collect()
}

/// Leja ordering of distinct nodes with uniform multiplicity: start at the
/// largest |x|, then repeatedly take the node maximising the product of
/// distances to the ones already chosen. Keeps the Newton tableau tame.
pub fn leja_order(nodes: &[f64]) -> Vec<usize> {
    let n = nodes.len();
    let mut order = Vec::with_capacity(n);
    let mut score = vec![0.0f64; n];
    let mut used = vec![false; n];
    let mut next = (0..n)
        .max_by(|&a, &b| nodes[a].abs().total_cmp(&nodes[b].abs()))
        .unwrap();
    for _ in 0..n {
        used[next] = true;
        order.push(next);
        for i in 0..n {
            score[i] += (nodes[i] - nodes[next]).abs().ln();
        }
        match (0..n)
            .filter(|&i| !used[i])
            .max_by(|&a, &b| score[a].total_cmp(&score[b]))
        {
            Some(i) => next = i,
            None => break,
        }
    }
    order
}

/// Node set and data rows permuted into Leja order.
pub fn leja_spec(nodes: &[f64], rows: &[Vec<f64>], m: usize) -> (MultiNodeSpec, Vec<Vec<f64>>) {
    let order = leja_order(nodes);
    let spec = MultiNodeSpec::uniform(order.iter().map(|&i| nodes[i]).collect(), m).unwrap();
    (spec, order.iter().map(|&i| rows[i].clone()).collect())
}
