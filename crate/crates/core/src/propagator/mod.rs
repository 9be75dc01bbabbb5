//! Per-interval transfer matrices for the state `(y, p·y′)`.
//!
//! Every method factors a step as `E·C`: `E` is the exact propagator of the
//! constant-coefficient reference problem and `C` a correction accounting for
//! `q − q̄` (absent for `Pruess2`).

pub mod filon;
pub mod gauss;
mod interval;

use std::fmt;
use std::str::FromStr;

use crate::error::SolveError;
use crate::scalar::Real;
use crate::specfun::{expm_of, xi_eta0, Mat2};

pub use interval::{delta_poly, interval_coefficients, shifted_legendre, IntervalData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Pruess2,
    Neumann4,
    Neumann8,
    Magnus4,
    Magnus8,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::Pruess2, Method::Neumann4, Method::Magnus4, Method::Neumann8, Method::Magnus8];

    pub fn order(self) -> u32 {
        match self {
            Method::Pruess2 => 2,
            Method::Neumann4 | Method::Magnus4 => 4,
            Method::Neumann8 | Method::Magnus8 => 8,
        }
    }

    /// Number of Gauss–Legendre nodes per interval.
    pub fn nu(self) -> usize {
        match self.order() {
            2 => 1,
            4 => 2,
            _ => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Pruess2 => "pruess2",
            Method::Neumann4 => "neumann4",
            Method::Neumann8 => "neumann8",
            Method::Magnus4 => "magnus4",
            Method::Magnus8 => "magnus8",
        }
    }

    pub fn is_modified(self) -> bool {
        self != Method::Pruess2
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| format!("unknown method `{s}` (expected pruess2|neumann4|neumann8|magnus4|magnus8)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// `Z = h²(q̄ − λw̄)/p̄` for the reference problem on `iv`.
pub fn reference_z<T: Real>(iv: &IntervalData<T>, lambda: T) -> T {
    iv.h * iv.h * (iv.qbar - lambda * iv.wbar) / iv.pbar
}

/// Order-2 step: exact propagator of the problem with `p̄, q̄, w̄` frozen.
pub fn pruess_step<T: Real>(iv: &IntervalData<T>, lambda: T, direction: Direction) -> Mat2<T> {
    let z = reference_z(iv, lambda);
    let (x, e) = xi_eta0(z);
    let h = match direction {
        Direction::Forward => iv.h,
        Direction::Backward => -iv.h,
    };
    Mat2::new(x, h * e / iv.pbar, iv.pbar * z * e / h, x)
}

/// `B(δ) = Δq·[[δη₀(Z_{2δ}), (1−ξ(Z_{2δ}))/(2(λ−q̄))], [−(1+ξ(Z_{2δ}))/2, −δη₀(Z_{2δ})]]`
/// for an explicit value `Δq = q̄ − q(x_left + δ)`.
///
/// Evaluated through the half-angle form `Z_δ = (q̄−λ)δ²`, which has no
/// removable singularity at `λ = q̄`.
pub fn b_matrix<T: Real>(delta_q: T, qbar: T, lambda: T, delta: T) -> Mat2<T> {
    let zd = (qbar - lambda) * delta * delta;
    let (x, e) = xi_eta0(zd);
    let de = delta * e;
    Mat2::new(de * x, de * de, -x * x, -de * x).scale(delta_q)
}

/// `B(δ)` with `Δq` taken from the interval's Legendre model.
pub fn modified_b_entries<T: Real>(iv: &IntervalData<T>, lambda: T, delta: T) -> Mat2<T> {
    let p = iv.delta_poly();
    let t = delta / iv.h;
    let dq = (p[0] + t * (p[1] + t * (p[2] + t * p[3]))) / iv.h;
    b_matrix(dq, iv.qbar, lambda, delta)
}

/// `Z_h = (q̄ − λ)h²` for the Schrödinger-form correction integrals.
fn z_h<T: Real>(iv: &IntervalData<T>, lambda: T) -> T {
    (iv.qbar - lambda) * iv.h * iv.h
}

/// Filon approximation of `∫₀^h B(δ)dδ`.
pub fn univariate_integral<T: Real>(iv: &IntervalData<T>, lambda: T) -> Mat2<T> {
    filon::sigma1(&iv.qhat, z_h(iv, lambda), iv.h)
}

/// Second Magnus term `½∫₀^h∫₀^{δ₁}[B(δ₁), B(δ₂)]`.
pub fn magnus_sigma2<T: Real>(iv: &IntervalData<T>, lambda: T) -> Mat2<T> {
    filon::sigma2(&iv.qhat, z_h(iv, lambda), iv.h)
}

/// Ordered Neumann double integral `∫₀^h∫₀^{δ₁}B(δ₁)B(δ₂)`.
///
/// The ordered product splits as `½σ₁² + σ₂` since the symmetric part of
/// the ordered integral is half the square of `σ₁`.
pub fn neumann_double<T: Real>(iv: &IntervalData<T>, lambda: T) -> Mat2<T> {
    let s1 = univariate_integral(iv, lambda);
    (s1 * s1).scale(T::lit(0.5)) + magnus_sigma2(iv, lambda)
}

/// Correction factor `C` of a forward step, `None` for `Pruess2`.
pub fn correction<T: Real>(method: Method, iv: &IntervalData<T>, lambda: T) -> Option<Mat2<T>> {
    let id = Mat2::identity();
    match method {
        Method::Pruess2 => None,
        Method::Neumann4 => Some(id + univariate_integral(iv, lambda)),
        Method::Magnus4 => Some(expm_of(&univariate_integral(iv, lambda))),
        Method::Neumann8 => {
            let s1 = univariate_integral(iv, lambda);
            let n2 = (s1 * s1).scale(T::lit(0.5)) + magnus_sigma2(iv, lambda);
            Some(id + s1 + n2)
        }
        Method::Magnus8 => Some(expm_of(&(univariate_integral(iv, lambda) + magnus_sigma2(iv, lambda)))),
    }
}

/// Inverse of a correction factor; exact `exp(−σ)` for Magnus, adjugate/det for Neumann.
pub fn correction_inverse<T: Real>(method: Method, iv: &IntervalData<T>, lambda: T) -> Option<Mat2<T>> {
    match method {
        Method::Pruess2 => None,
        Method::Magnus4 => Some(expm_of(&-univariate_integral(iv, lambda))),
        Method::Magnus8 => Some(expm_of(&-(univariate_integral(iv, lambda) + magnus_sigma2(iv, lambda)))),
        Method::Neumann4 | Method::Neumann8 => correction(method, iv, lambda).map(|c| c.inverse()),
    }
}

pub(crate) fn check_form<T: Real>(method: Method, iv: &IntervalData<T>) -> Result<(), SolveError> {
    if method.is_modified() && (iv.pbar != T::one() || iv.wbar != T::one()) {
        return Err(SolveError::NotSchroedinger { method: method.name() });
    }
    Ok(())
}

/// Full transfer matrix over one interval.
///
/// Forward maps the state at `x_left` to `x_left + h`; backward is its inverse.
pub fn step<T: Real>(
    method: Method,
    iv: &IntervalData<T>,
    lambda: T,
    direction: Direction,
) -> Result<Mat2<T>, SolveError> {
    check_form(method, iv)?;
    let e = pruess_step(iv, lambda, direction);
    Ok(match direction {
        Direction::Forward => match correction(method, iv, lambda) {
            Some(c) => e * c,
            None => e,
        },
        Direction::Backward => match correction_inverse(method, iv, lambda) {
            Some(ci) => ci * e,
            None => e,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{eta0, xi};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn const_iv(q: f64, h: f64, nu: usize) -> IntervalData<f64> {
        interval_coefficients(|_| q, 0.0, h, nu).unwrap()
    }

    fn expm_taylor(m: Mat2<f64>) -> Mat2<f64> {
        let mut term = Mat2::identity();
        let mut acc = Mat2::identity();
        for k in 1..80 {
            term = (term * m).scale(1.0 / k as f64);
            acc += term;
        }
        acc
    }

    #[test]
    fn pruess_examples() {
        let m = pruess_step(&const_iv(0.0, PI, 1), 1.0, Direction::Forward);
        assert!((m - Mat2::new(-1.0, 0.0, 0.0, -1.0)).max_abs() < 1e-15);

        let m = pruess_step(&const_iv(3.0, 0.7, 1), 3.0, Direction::Forward);
        assert_eq!(m, Mat2::new(1.0, 0.7, 0.0, 1.0));

        let m = pruess_step(&const_iv(2.0, 1.0, 1), 1.0, Direction::Forward);
        let oracle = expm_taylor(Mat2::new(0.0, 1.0, 1.0, 0.0));
        assert!((m - oracle).max_abs() < 1e-14);
        assert!((m.m11 - 1f64.cosh()).abs() < 1e-15);
        assert!((m.m12 - 1f64.sinh()).abs() < 1e-15);
    }

    #[test]
    fn general_form_pruess_matches_matrix_exponential() {
        // (y, py)′ = [[0, 1/p], [q − λw, 0]](y, py)
        let mut iv = const_iv(1.5, 0.4, 1);
        iv.pbar = 2.0;
        iv.wbar = 0.5;
        for lambda in [-3.0, 3.0, 40.0] {
            let gen = Mat2::new(0.0, 1.0 / iv.pbar, iv.qbar - lambda * iv.wbar, 0.0).scale(iv.h);
            let m = pruess_step(&iv, lambda, Direction::Forward);
            assert!((m - expm_taylor(gen)).max_abs() < 1e-13, "lambda={lambda}");
        }
    }

    #[test]
    fn b_examples() {
        let iv = const_iv(4.0, 0.3, 4);
        for d in [0.0, 0.1, 0.3] {
            assert_eq!(modified_b_entries(&iv, 7.0, d), Mat2::zero());
        }
        let b = b_matrix(0.8, 1.0, 5.0, 0.0);
        assert_eq!(b, Mat2::new(0.0, 0.0, -0.8, 0.0));
        let b: Mat2<f64> = b_matrix(0.8, 1.0, 5.0, 0.2);
        assert!(b.trace().abs() < 1e-16);
    }

    #[test]
    fn b_matrix_matches_printed_form_away_from_threshold() {
        let (dq, qbar, lambda, d) = (0.3, 1.0, 9.0, 0.25);
        let z2 = (qbar - lambda) * (2.0 * d) * (2.0 * d);
        let printed =
            Mat2::new(d * eta0(z2), (1.0 - xi(z2)) / (2.0 * (lambda - qbar)), -(1.0 + xi(z2)) / 2.0, -d * eta0(z2))
                .scale(dq);
        assert!((b_matrix(dq, qbar, lambda, d) - printed).max_abs() < 1e-15);
    }

    #[test]
    fn order_four_example_at_quarter_turn() {
        // Z_h = −π²/4 makes ξ̂ = −1, η̂₀ = 0, and σ₁₁ = −Q̂₁(ξ̂+1)/(4Z) = 0
        let h = 0.5;
        let lambda = PI * PI / (4.0 * h * h);
        let iv = interval_coefficients(|x: f64| 1.0 + 0.3 * x, 0.0, h, 2).unwrap();
        let iv = IntervalData { qbar: 0.0, ..iv };
        let s = univariate_integral(&iv, lambda);
        assert!(s.m11.abs() < 1e-15);
    }

    #[test]
    fn constant_q_every_method_equals_pruess() {
        for m in Method::ALL {
            let iv = const_iv(2.5, 0.37, m.nu());
            for lambda in [-10.0, 2.5, 100.0] {
                for dir in [Direction::Forward, Direction::Backward] {
                    let a = step(m, &iv, lambda, dir).unwrap();
                    let b = pruess_step(&iv, lambda, dir);
                    assert!((a - b).max_abs() < 1e-15, "{m} {lambda}");
                }
            }
        }
    }

    #[test]
    fn modified_methods_reject_general_form() {
        let mut iv = const_iv(1.0, 0.1, 4);
        iv.pbar = 2.0;
        assert!(matches!(step(Method::Magnus8, &iv, 1.0, Direction::Forward), Err(SolveError::NotSchroedinger { .. })));
        iv.nu = 1;
        assert!(step(Method::Pruess2, &iv, 1.0, Direction::Forward).is_ok());
    }

    #[test]
    fn method_metadata() {
        assert_eq!((Method::Pruess2.order(), Method::Pruess2.nu()), (2, 1));
        assert_eq!((Method::Neumann4.order(), Method::Magnus4.nu()), (4, 2));
        assert_eq!((Method::Magnus8.order(), Method::Neumann8.nu()), (8, 4));
        assert_eq!("magnus8".parse::<Method>().unwrap(), Method::Magnus8);
        assert!("rk4".parse::<Method>().is_err());
    }

    fn smooth_iv(seed: [f64; 3], h: f64, nu: usize) -> IntervalData<f64> {
        let [a, b, c] = seed;
        interval_coefficients(move |x: f64| a * (b * x).sin() + c * x * x, 0.3, h, nu).unwrap()
    }

    proptest! {
        #[test]
        fn forward_backward_is_identity(
            a in -20.0f64..20.0, b in 0.1f64..5.0, c in -5.0f64..5.0,
            h in 0.01f64..0.5, lambda in -50.0f64..500.0,
            mi in 0usize..5,
        ) {
            let m = Method::ALL[mi];
            let iv = smooth_iv([a, b, c], h, m.nu());
            let f = step(m, &iv, lambda, Direction::Forward).unwrap();
            let g = step(m, &iv, lambda, Direction::Backward).unwrap();
            let scale = f.max_abs() * g.max_abs();
            prop_assert!((f * g - Mat2::identity()).max_abs() <= 1e-12 * scale.max(1.0));
        }

        #[test]
        fn exponential_methods_have_unit_determinant(
            a in -20.0f64..20.0, b in 0.1f64..5.0, c in -5.0f64..5.0,
            h in 0.01f64..0.5, lambda in -50.0f64..500.0,
            mi in prop::sample::select(vec![0usize, 2, 4]),
        ) {
            let m = Method::ALL[mi];
            let iv = smooth_iv([a, b, c], h, m.nu());
            let f = step(m, &iv, lambda, Direction::Forward).unwrap();
            let scale = (f.m11 * f.m22).abs().max((f.m12 * f.m21).abs()).max(1.0);
            prop_assert!((f.det() - 1.0).abs() <= 1e-12 * scale);
        }

        #[test]
        fn sigmas_are_trace_free(
            a in -20.0f64..20.0, b in 0.1f64..5.0, c in -5.0f64..5.0,
            h in 0.01f64..0.5, lambda in -50.0f64..500.0,
        ) {
            let iv = smooth_iv([a, b, c], h, 4);
            prop_assert_eq!(univariate_integral(&iv, lambda).trace(), 0.0);
            prop_assert_eq!(magnus_sigma2(&iv, lambda).trace(), 0.0);
        }
    }
}
