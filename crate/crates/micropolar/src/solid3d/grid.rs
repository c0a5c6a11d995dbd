use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

/// Chebyshev–Gauss–Lobatto nodes on `[−h/2, h/2]`, top face first.
#[derive(Debug, Clone)]
pub struct CollocationGrid {
    pub nodes: DVector<f64>,
    pub d1: DMatrix<f64>,
    pub d2: DMatrix<f64>,
    pub h: f64,
}

impl CollocationGrid {
    /// `n` nodes, `n ≥ 2`.
    pub fn new(n: usize, h: f64) -> Self {
        assert!(n >= 2, "need at least two nodes");
        let x: Vec<f64> = (0..n).map(|j| (PI * j as f64 / (n - 1) as f64).cos()).collect();
        let c: Vec<f64> = (0..n)
            .map(|j| {
                let e = if j == 0 || j == n - 1 { 2.0 } else { 1.0 };
                if j % 2 == 0 {
                    e
                } else {
                    -e
                }
            })
            .collect();
        let half = h / 2.0;
        let mut d = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    // x_i − x_j via the sine identity, exact to rounding
                    let t = PI / (2.0 * (n - 1) as f64);
                    let dx = 2.0 * (t * (i + j) as f64).sin() * (t * (j as f64 - i as f64)).sin();
                    d[(i, j)] = c[i] / c[j] / dx / half;
                }
            }
            // Rows sum to zero so constants differentiate to exactly zero.
            let s: f64 = d.row(i).sum();
            d[(i, i)] = -s;
        }
        let d2 = &d * &d;
        Self {
            nodes: DVector::from_iterator(n, x.iter().map(|v| v * half)),
            d1: d,
            d2,
            h,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_descend_over_thickness() {
        let g = CollocationGrid::new(16, 0.1);
        assert!((g.nodes[0] - 0.05).abs() < 1e-15);
        assert!((g.nodes[15] + 0.05).abs() < 1e-15);
        assert!(g.nodes.as_slice().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn differentiates_polynomials() {
        let g = CollocationGrid::new(16, 0.1);
        let ones = DVector::from_element(16, 1.0);
        assert!((&g.d1 * &ones).amax() < 1e-12);
        let cube = g.nodes.map(|x| x * x * x);
        let d = &g.d1 * &cube;
        let dd = &g.d2 * &cube;
        for i in 0..16 {
            let x = g.nodes[i];
            assert!((d[i] - 3.0 * x * x).abs() < 1e-10);
            assert!((dd[i] - 6.0 * x).abs() < 1e-8);
        }
    }
}
