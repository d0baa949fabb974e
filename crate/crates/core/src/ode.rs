//! Adaptive Dormand-Prince 5(4) integration for the scalar linear
//! transport equations y′ = c(t)·y with sampled, linearly interpolated
//! coefficients.

/// Dormand-Prince coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One adaptive integration of y′ = c(t)·y from t0 to t1.
pub(crate) fn integrate_linear(
    coeff: &impl Fn(f64) -> f64,
    t0: f64,
    t1: f64,
    y0: f64,
    rtol: f64,
) -> f64 {
    if t1 == t0 || y0 == 0.0 {
        return y0;
    }
    let f = |t: f64, y: f64| coeff(t) * y;
    let mut t = t0;
    let mut y = y0;
    let mut h = t1 - t0;
    let dir = h.signum();
    let mut k = [0.0f64; 7];
    while (t1 - t) * dir > 0.0 {
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }
        k[0] = f(t, y);
        for stage in 0..6 {
            let mut acc = 0.0;
            for (j, kj) in k.iter().enumerate().take(stage + 1) {
                acc += A[stage][j] * kj;
            }
            k[stage + 1] = f(t + C[stage] * h, y + h * acc);
        }
        let mut y5 = y;
        let mut y4 = y;
        for (j, kj) in k.iter().enumerate() {
            y5 += h * B5[j] * kj;
            y4 += h * B4[j] * kj;
        }
        let err = (y5 - y4).abs();
        let tol_abs = rtol * y5.abs().max(y.abs()).max(1e-290);
        if err <= tol_abs {
            t += h;
            y = y5;
            let grow = if err == 0.0 {
                5.0
            } else {
                0.9 * (tol_abs / err).powf(0.2)
            };
            h *= grow.clamp(0.2, 5.0);
        } else {
            h *= (0.9 * (tol_abs / err).powf(0.2)).clamp(0.2, 0.9);
        }
    }
    y
}

/// Integrates y′ = c(t)·y across a sample grid, returning y at each node.
/// The coefficient is linear between its samples.
pub(crate) fn integrate_on_grid(t_grid: &[f64], coeff: &[f64], y0: f64, rtol: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(t_grid.len());
    let mut y = y0;
    out.push(y);
    for i in 1..t_grid.len() {
        let (ta, tb) = (t_grid[i - 1], t_grid[i]);
        let (ca, cb) = (coeff[i - 1], coeff[i]);
        let line = move |t: f64| {
            if tb == ta {
                ca
            } else {
                ca + (cb - ca) * (t - ta) / (tb - ta)
            }
        };
        y = integrate_linear(&line, ta, tb, y, rtol);
        out.push(y);
    }
    out
}

/// Closed form y(t_i) = y0 · exp(∫ c) with the integral taken exactly on
/// the piecewise-linear interpolant (trapezoid is exact there).
pub(crate) fn closed_form_on_grid(t_grid: &[f64], coeff: &[f64], y0: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(t_grid.len());
    let mut integral = 0.0;
    out.push(y0);
    for i in 1..t_grid.len() {
        integral += 0.5 * (coeff[i - 1] + coeff[i]) * (t_grid[i] - t_grid[i - 1]);
        out.push(y0 * integral.exp());
    }
    out
}

/// Value at an off-node parameter: continue the integration from the last
/// node at or before `t`.
pub(crate) fn value_at(
    t_grid: &[f64],
    coeff: &[f64],
    node_values: &[f64],
    t: f64,
    rtol: f64,
) -> Option<f64> {
    let n = t_grid.len();
    let span = t_grid[n - 1] - t_grid[0];
    let eps = 1e-12 * span.abs().max(1.0);
    if t < t_grid[0] - eps || t > t_grid[n - 1] + eps {
        return None;
    }
    let t = t.clamp(t_grid[0], t_grid[n - 1]);
    let i = match t_grid.partition_point(|&x| x <= t) {
        0 => 0,
        k => k - 1,
    };
    if t == t_grid[i] {
        return Some(node_values[i]);
    }
    let j = (i + 1).min(n - 1);
    let (ta, tb) = (t_grid[i], t_grid[j]);
    let (ca, cb) = (coeff[i], coeff[j]);
    let line = move |x: f64| {
        if tb == ta {
            ca
        } else {
            ca + (cb - ca) * (x - ta) / (tb - ta)
        }
    };
    Some(integrate_linear(&line, ta, t, node_values[i], rtol))
}

/// Linear interpolation of a sampled function.
pub(crate) fn interp(t_grid: &[f64], values: &[f64], t: f64) -> f64 {
    let n = t_grid.len();
    if t <= t_grid[0] {
        return values[0];
    }
    if t >= t_grid[n - 1] {
        return values[n - 1];
    }
    let i = match t_grid.partition_point(|&x| x <= t) {
        0 => 0,
        k => k - 1,
    };
    let j = (i + 1).min(n - 1);
    let (ta, tb) = (t_grid[i], t_grid[j]);
    if tb == ta {
        return values[i];
    }
    values[i] + (values[j] - values[i]) * (t - ta) / (tb - ta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_decay() {
        // y' = -2y over [0,1]: y(1) = e^{-2}
        let y = integrate_linear(&|_| -2.0, 0.0, 1.0, 1.0, 1e-10);
        assert!((y - (-2.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn grid_matches_closed_form() {
        let t: Vec<f64> = (0..=200).map(|i| 1.0 + 4.0 * i as f64 / 200.0).collect();
        let c: Vec<f64> = t.iter().map(|r| -2.0 / r).collect();
        let rk = integrate_on_grid(&t, &c, 3.0, 1e-10);
        let cf = closed_form_on_grid(&t, &c, 3.0);
        for (a, b) in rk.iter().zip(&cf) {
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0));
        }
    }

    #[test]
    fn zero_initial_stays_zero() {
        let t: Vec<f64> = (0..=10).map(|i| i as f64).collect();
        let c = vec![0.7; 11];
        let y = integrate_on_grid(&t, &c, 0.0, 1e-10);
        assert!(y.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn off_node_value() {
        let t: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
        let c = vec![-1.0; 101];
        let nodes = integrate_on_grid(&t, &c, 1.0, 1e-12);
        let v = value_at(&t, &c, &nodes, 0.505, 1e-12).unwrap();
        assert!((v - (-0.505f64).exp()).abs() < 1e-10);
        assert!(value_at(&t, &c, &nodes, -0.1, 1e-12).is_none());
    }
}
