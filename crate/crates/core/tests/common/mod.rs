#![allow(dead_code, clippy::excessive_precision)]

pub mod filon;

use std::collections::HashMap;

use sturm_core::{builtin, Problem64};

/// 15-point Kronrod nodes on [−1, 1] (non-negative half) and weights.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
/// 7-point Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Returns the Kronrod value, the Kronrod−Gauss difference and `∫|f|`.
fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut abs = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = r * XGK[j];
        let (fl, fr) = (f(c - dx), f(c + dx));
        k += WGK[j] * (fl + fr);
        abs += WGK[j] * (fl.abs() + fr.abs());
        if j % 2 == 1 {
            g += WG[j / 2] * (fl + fr);
        }
    }
    (k * r, ((k - g) * r).abs(), abs * r.abs())
}

/// Adaptive Gauss–Kronrod quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn integrate(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let mut stack = vec![(a, b, 0u32)];
    let mut total = 0.0;
    let width = (b - a).abs().max(f64::MIN_POSITIVE);
    while let Some((l, r, depth)) = stack.pop() {
        let (v, err, abs) = gk15(&mut f, l, r);
        let local_tol = tol * (r - l).abs() / width;
        // roundoff floor of the estimate itself
        let floor = 64.0 * f64::EPSILON * abs;
        if err <= local_tol.max(floor).max(1e-300) || depth >= 20 {
            total += v;
        } else {
            let m = 0.5 * (l + r);
            stack.push((l, m, depth + 1));
            stack.push((m, r, depth + 1));
        }
    }
    total
}

/// `∫₀^h ∫₀^{x} f(x, y) dy dx` by nested adaptive quadrature.
pub fn integrate_triangle(f: impl Fn(f64, f64) -> f64, h: f64, tol: f64) -> f64 {
    integrate(|x| integrate(|y| f(x, y), 0.0, x, tol * 1e-2), 0.0, h, tol)
}

pub fn mat_integrate(f: impl Fn(f64) -> [f64; 4], a: f64, b: f64, tol: f64) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (i, o) in out.iter_mut().enumerate() {
        *o = integrate(|x| f(x)[i], a, b, tol);
    }
    out
}

pub fn mat_integrate_triangle(f: impl Fn(f64, f64) -> [f64; 4], h: f64, tol: f64) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (i, o) in out.iter_mut().enumerate() {
        *o = integrate_triangle(|x, y| f(x, y)[i], h, tol);
    }
    out
}

/// Classical RK4 on `y″ = (q − λ)y` in the state `(y, y′)` with `n` steps.
pub fn rk4_schroedinger(
    q: impl Fn(f64) -> f64,
    lambda: f64,
    a: f64,
    b: f64,
    y0: (f64, f64),
    n: usize,
) -> Vec<(f64, f64, f64)> {
    let h = (b - a) / n as f64;
    let rhs = |x: f64, s: (f64, f64)| (s.1, (q(x) - lambda) * s.0);
    let mut s = y0;
    let mut out = vec![(a, s.0, s.1)];
    for i in 0..n {
        let x = a + i as f64 * h;
        let k1 = rhs(x, s);
        let k2 = rhs(x + 0.5 * h, (s.0 + 0.5 * h * k1.0, s.1 + 0.5 * h * k1.1));
        let k3 = rhs(x + 0.5 * h, (s.0 + 0.5 * h * k2.0, s.1 + 0.5 * h * k2.1));
        let k4 = rhs(x + h, (s.0 + h * k3.0, s.1 + h * k3.1));
        s = (
            s.0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            s.1 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        );
        out.push((x + h, s.0, s.1));
    }
    out
}

/// Continuous Prüfer angle `atan2(y, y′)` along a dense trajectory.
pub fn unwrapped_phase(traj: &[(f64, f64, f64)]) -> f64 {
    let mut theta = traj[0].1.atan2(traj[0].2);
    let mut prev = theta;
    for &(_, y, py) in &traj[1..] {
        let a = y.atan2(py);
        let mut d = a - prev;
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        theta += d;
        prev = a;
    }
    theta
}

pub fn woods_saxon() -> Problem64 {
    builtin("woods_saxon", &HashMap::new()).unwrap()
}

pub fn coffey_evans(beta: f64) -> Problem64 {
    builtin("coffey_evans", &HashMap::from([("beta".to_string(), beta)])).unwrap()
}

pub fn woods_saxon_singular(l: f64) -> Problem64 {
    builtin("woods_saxon_singular", &HashMap::from([("l".to_string(), l)])).unwrap()
}

pub fn free_problem() -> Problem64 {
    builtin("constant", &HashMap::new()).unwrap()
}

#[allow(unused_imports)]
pub use sturm_core::reference::woods_saxon_lambda;
