//! Shared helpers for the integration suites: an independent Romberg
//! integrator (deliberately not the library's Gauss-Kronrod code) and the
//! pass/fail formatter.

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Romberg integration on [a, b] with Richardson extrapolation. Completely
/// independent of the crate's quadrature module so oracle comparisons are
/// meaningful.
pub fn romberg<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    const MAX_LEVELS: usize = 22;
    let mut r = vec![vec![0.0f64; MAX_LEVELS]; MAX_LEVELS];
    let h = b - a;
    r[0][0] = 0.5 * h * (f(a) + f(b));
    for i in 1..MAX_LEVELS {
        let n = 1usize << i;
        let hi = h / n as f64;
        let mut sum = 0.0;
        let mut k = 1;
        while k < n {
            sum += f(a + k as f64 * hi);
            k += 2;
        }
        r[i][0] = 0.5 * r[i - 1][0] + hi * sum;
        for j in 1..=i {
            let factor = 4f64.powi(j as i32);
            r[i][j] = (factor * r[i][j - 1] - r[i - 1][j - 1]) / (factor - 1.0);
        }
        if i > 3 {
            let err = (r[i][i] - r[i - 1][i - 1]).abs();
            if err <= tol * r[i][i].abs().max(1e-300) {
                return r[i][i];
            }
        }
    }
    r[MAX_LEVELS - 1][MAX_LEVELS - 1]
}

#[allow(dead_code)]
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
