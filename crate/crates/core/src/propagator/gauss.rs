//! Gauss–Legendre rules on `[0, 1]`, weights summing to one.

use std::sync::OnceLock;

#[derive(Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Legendre `P_n(x)` and its derivative by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Computes the `n`-point rule by Newton iteration on the roots of `P_n`.
pub fn compute_rule(n: usize) -> GaussRule {
    assert!(n >= 1);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 1..=n {
        let mut x = -(std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        if n == 1 {
            x = 0.0;
        }
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            if n == 1 {
                break;
            }
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = if n == 1 {
            2.0
        } else {
            let (_, dp) = legendre(n, x);
            2.0 / ((1.0 - x * x) * dp * dp)
        };
        nodes.push(0.5 * (1.0 + x));
        weights.push(0.5 * w);
    }
    GaussRule { nodes, weights }
}

/// Cached rule for `ν ∈ {1, 2, 4}`; other orders are computed on demand.
pub fn rule(nu: usize) -> &'static GaussRule {
    static R1: OnceLock<GaussRule> = OnceLock::new();
    static R2: OnceLock<GaussRule> = OnceLock::new();
    static R4: OnceLock<GaussRule> = OnceLock::new();
    match nu {
        1 => R1.get_or_init(|| compute_rule(1)),
        2 => R2.get_or_init(|| compute_rule(2)),
        4 => R4.get_or_init(|| compute_rule(4)),
        _ => panic!("unsupported Gauss rule size {nu}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_nodes() {
        let r = rule(2);
        let s = 3f64.sqrt() / 6.0;
        assert!((r.nodes[0] - (0.5 - s)).abs() < 1e-15);
        assert!((r.nodes[1] - (0.5 + s)).abs() < 1e-15);
        assert!((r.weights[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn four_point_exact_to_degree_seven() {
        let r = rule(4);
        assert!((r.weights.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        for d in 0..=7 {
            let q: f64 = r.nodes.iter().zip(&r.weights).map(|(c, w)| w * c.powi(d)).sum();
            assert!((q - 1.0 / (d as f64 + 1.0)).abs() < 1e-15, "degree {d}");
        }
        let q: f64 = r.nodes.iter().zip(&r.weights).map(|(c, w)| w * c.powi(8)).sum();
        assert!((q - 1.0 / 9.0).abs() > 1e-6);
    }

    #[test]
    fn midpoint_rule() {
        let r = rule(1);
        assert_eq!(r.nodes, vec![0.5]);
        assert_eq!(r.weights, vec![1.0]);
    }
}
