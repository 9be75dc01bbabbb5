//! Independent evaluation of the correction integrands for quadrature oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sturm_core::{interval_coefficients, IntervalData, Mat2};

pub fn shifted_legendre(t: f64) -> [f64; 3] {
    // Rodrigues form on [0, 1], written out independently of the library
    [2.0 * t - 1.0, 6.0 * t * t - 6.0 * t + 1.0, 20.0 * t.powi(3) - 30.0 * t * t + 12.0 * t - 1.0]
}

/// `Δq(δ) = −Σ (Q̂_s/h)·P*_s(δ/h)`.
pub fn model_dq(iv: &IntervalData<f64>, delta: f64) -> f64 {
    let p = shifted_legendre(delta / iv.h);
    -(iv.qhat[0] * p[0] + iv.qhat[1] * p[1] + iv.qhat[2] * p[2]) / iv.h
}

pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

pub fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

/// `(ξ(Z_{2δ}), δ·η₀(Z_{2δ}), (1−ξ(Z_{2δ}))/(2(λ−q̄)))`; the last is `sin²(sδ)/s²` or `sinh²(sδ)/s²`.
pub fn kernels(qbar: f64, lambda: f64, delta: f64) -> (f64, f64, f64) {
    let k2 = lambda - qbar;
    if k2 >= 0.0 {
        let s = k2.sqrt() * delta;
        ((2.0 * s).cos(), delta * sinc(2.0 * s), delta * delta * sinc(s) * sinc(s))
    } else {
        let s = (-k2).sqrt() * delta;
        ((2.0 * s).cosh(), delta * sinhc(2.0 * s), delta * delta * sinhc(s) * sinhc(s))
    }
}

pub fn b_oracle(iv: &IntervalData<f64>, lambda: f64, delta: f64) -> [f64; 4] {
    let dq = model_dq(iv, delta);
    let (x, de, tail) = kernels(iv.qbar, lambda, delta);
    [dq * de, dq * tail, -dq * (1.0 + x) / 2.0, -dq * de]
}

pub fn mat(a: [f64; 4]) -> Mat2<f64> {
    Mat2::new(a[0], a[1], a[2], a[3])
}

pub fn mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]]
}

pub struct Instance {
    pub iv: IntervalData<f64>,
    pub lambda: f64,
}

/// Random smooth potential, step and energy; `small` forces `|Z_h| < 0.5`.
pub fn instance(rng: &mut ChaCha8Rng, small: bool) -> Instance {
    let c: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-30.0..30.0));
    let w = rng.gen_range(0.5..4.0);
    let q = move |x: f64| c[0] + c[1] * (w * x).sin() + c[2] * (-x * x).exp() + c[3] * x * x + c[4] / (2.0 + x.cos());
    let h = rng.gen_range(0.05..0.6);
    let x0 = rng.gen_range(-2.0..2.0);
    let iv = interval_coefficients(q, x0, h, 4).unwrap();
    let lambda = if small {
        iv.qbar - rng.gen_range(-0.49..0.49) / (h * h)
    } else {
        // oscillatory up to Z_h = −200, mildly evanescent up to Z_h = 10
        iv.qbar - rng.gen_range(-200.0..10.0) / (h * h)
    };
    Instance { iv, lambda }
}

pub fn instances() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f11);
    (0..100).map(|i| instance(&mut rng, i < 20)).collect()
}

pub fn z_of(inst: &Instance) -> f64 {
    (inst.iv.qbar - inst.lambda) * inst.iv.h * inst.iv.h
}
