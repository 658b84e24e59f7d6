//! One-dimensional rules used as tensor-product factors.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[a, b]`.
pub fn gauss_legendre(count: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    assert!(count > 0, "need at least one node");
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut out = vec![(0.0, 0.0); count];
    let m = count.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (count as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(count, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(count, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (mid - half * x, half * w);
        out[count - 1 - i] = (mid + half * x, half * w);
    }
    out
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Midpoint nodes on a full period `[a, a + period)` with equal weights;
/// exact for trigonometric polynomials of degree below `count`.
pub fn periodic_midpoint(count: usize, a: f64, period: f64) -> Vec<(f64, f64)> {
    assert!(count > 0, "need at least one node");
    let h = period / count as f64;
    (0..count).map(|k| (a + (k as f64 + 0.5) * h, h)).collect()
}
