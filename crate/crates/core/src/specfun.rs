//! The `ξ`/`η₀` kernel pair and the closed-form exponential of a trace-free 2×2 matrix.
//!
//! With `Z = (q̄ − λ)h²` the constant-coefficient propagator over one step is
//! built entirely from
//!
//! ```text
//! ξ(Z)  = cos(√−Z)        (Z ≤ 0)     cosh(√Z)       (Z > 0)
//! η₀(Z) = sin(√−Z)/√−Z    (Z < 0)     sinh(√Z)/√Z    (Z > 0),  η₀(0) = 1
//! ```
//!
//! Both are the entire functions `Σ Zⁿ/(2n)!` and `Σ Zⁿ/(2n+1)!`. Near `Z = 0`
//! the closed forms lose digits (`sin s / s`), so a fixed-length power series
//! is used for `|Z| < SERIES_SWITCH`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::scalar::Real;

/// Below this `|Z|` the kernels are evaluated from their power series.
pub const SERIES_SWITCH: f64 = 0.1;

/// Number of series terms used below [`SERIES_SWITCH`].
const SERIES_TERMS: usize = 10;

/// `ξ(Z)`: `cos(√|Z|)` for `Z ≤ 0`, `cosh(√Z)` for `Z > 0`.
pub fn xi<T: Real>(z: T) -> T {
    if z.abs() < T::lit(SERIES_SWITCH) {
        xi_series(z, SERIES_TERMS)
    } else {
        xi_closed(z)
    }
}

/// `η₀(Z)`: `sin(√|Z|)/√|Z|` for `Z < 0`, `1` at zero, `sinh(√Z)/√Z` for `Z > 0`.
pub fn eta0<T: Real>(z: T) -> T {
    if z.abs() < T::lit(SERIES_SWITCH) {
        eta0_series(z, SERIES_TERMS)
    } else {
        eta0_closed(z)
    }
}

/// Both kernels at once; most callers need the pair.
#[inline]
pub fn xi_eta0<T: Real>(z: T) -> (T, T) {
    (xi(z), eta0(z))
}

pub fn xi_closed<T: Real>(z: T) -> T {
    if z <= T::zero() {
        (-z).sqrt().cos()
    } else {
        z.sqrt().cosh()
    }
}

pub fn eta0_closed<T: Real>(z: T) -> T {
    if z == T::zero() {
        T::one()
    } else if z < T::zero() {
        let s = (-z).sqrt();
        s.sin() / s
    } else {
        let s = z.sqrt();
        s.sinh() / s
    }
}

/// Horner evaluation of `Σ_{n<terms} Zⁿ/(2n)!`.
pub fn xi_series<T: Real>(z: T, terms: usize) -> T {
    // term n+1 = term n · Z / ((2n+1)(2n+2))
    let mut acc = T::one();
    for n in (0..terms.saturating_sub(1)).rev() {
        let d = T::from_usize_exact((2 * n + 1) * (2 * n + 2));
        acc = T::one() + z * acc / d;
    }
    acc
}

/// Horner evaluation of `Σ_{n<terms} Zⁿ/(2n+1)!`.
pub fn eta0_series<T: Real>(z: T, terms: usize) -> T {
    let mut acc = T::one();
    for n in (0..terms.saturating_sub(1)).rev() {
        let d = T::from_usize_exact((2 * n + 2) * (2 * n + 3));
        acc = T::one() + z * acc / d;
    }
    acc
}

/// Real 2×2 matrix acting on the state `(y, p·y′)`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Mat2<T> {
    pub m11: T,
    pub m12: T,
    pub m21: T,
    pub m22: T,
}

impl<T: Real> Mat2<T> {
    pub const fn new(m11: T, m12: T, m21: T, m22: T) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn det(&self) -> T {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn trace(&self) -> T {
        self.m11 + self.m22
    }

    /// Adjugate; equals the inverse when `det = 1`.
    pub fn adjugate(&self) -> Self {
        Self::new(self.m22, -self.m12, -self.m21, self.m11)
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        self.adjugate().scale(T::one() / d)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.m11 * s, self.m12 * s, self.m21 * s, self.m22 * s)
    }

    pub fn apply(&self, v: (T, T)) -> (T, T) {
        (self.m11 * v.0 + self.m12 * v.1, self.m21 * v.0 + self.m22 * v.1)
    }

    pub fn max_abs(&self) -> T {
        self.m11.abs().max(self.m12.abs()).max(self.m21.abs()).max(self.m22.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.m11.is_finite() && self.m12.is_finite() && self.m21.is_finite() && self.m22.is_finite()
    }

    /// Matrix commutator `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn map<U: Real>(&self, f: impl Fn(T) -> U) -> Mat2<U> {
        Mat2::new(f(self.m11), f(self.m12), f(self.m21), f(self.m22))
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.m11 * r.m11 + self.m12 * r.m21,
            self.m11 * r.m12 + self.m12 * r.m22,
            self.m21 * r.m11 + self.m22 * r.m21,
            self.m21 * r.m12 + self.m22 * r.m22,
        )
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.m11 + r.m11, self.m12 + r.m12, self.m21 + r.m21, self.m22 + r.m22)
    }
}

impl<T: Real> AddAssign for Mat2<T> {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.m11 - r.m11, self.m12 - r.m12, self.m21 - r.m21, self.m22 - r.m22)
    }
}

impl<T: Real> Neg for Mat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.m11, -self.m12, -self.m21, -self.m22)
    }
}

/// `expm([[a, b], [c, −a]])` in closed form, `ω = a² + bc`.
pub fn expm_tracefree<T: Real>(a: T, b: T, c: T) -> Mat2<T> {
    let omega = a * a + b * c;
    if omega > T::one() {
        return expm_hyperbolic(a, b, c, omega);
    }
    let (x, e) = xi_eta0(omega);
    Mat2::new(x + a * e, b * e, c * e, x - a * e)
}

/// Hyperbolic branch with `ξ ∓ a·η₀` split into `e^{±r}` parts, so the
/// diagonal entry that nearly cancels keeps its relative accuracy.
fn expm_hyperbolic<T: Real>(a: T, b: T, c: T, omega: T) -> Mat2<T> {
    let r = omega.sqrt();
    let half = T::lit(0.5);
    let (up, down) = ((r * half).exp(), (-r * half).exp());
    let (grow, decay) = (half * up * up, half * down * down);
    // 1 ± a/r, with r ∓ a = bc/(r ± a) when the direct difference cancels
    let minus = if a > T::zero() { b * c / (r * (r + a)) } else { T::one() - a / r };
    let plus = if a < T::zero() { b * c / (r * (r - a)) } else { T::one() + a / r };
    let e = (grow - decay) / r;
    Mat2::new(grow * plus + decay * minus, b * e, c * e, grow * minus + decay * plus)
}

/// Convenience wrapper taking the generator as a matrix; the trace is ignored.
pub fn expm_of<T: Real>(m: &Mat2<T>) -> Mat2<T> {
    let a = (m.m11 - m.m22) / T::lit(2.0);
    expm_tracefree(a, m.m12, m.m21)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    /// Truncated Taylor series of the matrix exponential, used as an oracle.
    fn expm_taylor(m: Mat2<f64>) -> Mat2<f64> {
        let mut term = Mat2::identity();
        let mut acc = Mat2::identity();
        for k in 1..60 {
            term = (term * m).scale(1.0 / k as f64);
            acc += term;
        }
        acc
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi(0.0f64), 1.0);
        assert!((xi(-PI * PI) + 1.0).abs() < 1e-15);
        // Σ 1/(2n)! summed to convergence
        let mut oracle = 0.0;
        let mut f = 1.0;
        for n in 0..20 {
            if n > 0 {
                f *= ((2 * n - 1) * (2 * n)) as f64;
            }
            oracle += 1.0 / f;
        }
        assert!((oracle - 1.5430806348152437f64).abs() < 1e-15);
        assert!((xi(1.0f64) - oracle).abs() < 1e-15);
    }

    #[test]
    fn eta0_examples() {
        assert_eq!(eta0(0.0f64), 1.0);
        assert!(eta0(-PI * PI).abs() < 1e-15);
        assert!((eta0(-PI * PI / 4.0) - 2.0 / PI).abs() < 1e-15);
        assert!((eta0(-PI * PI / 4.0) - std::f64::consts::FRAC_2_PI).abs() < 1e-15);
    }

    #[test]
    fn expm_examples() {
        let h = 0.37;
        assert_eq!(expm_tracefree(0.0, h, 0.0), Mat2::new(1.0, h, 0.0, 1.0));

        let r = expm_tracefree(0.0f64, 1.0, -1.0);
        let oracle = expm_taylor(Mat2::new(0.0, 1.0, -1.0, 0.0));
        assert!((r - oracle).max_abs() < 1e-15);
        assert!((r.m11 - 1f64.cos()).abs() < 1e-15);
        assert!((r.m12 - 1f64.sin()).abs() < 1e-15);

        let d = expm_tracefree(1.0f64, 0.0, 0.0);
        assert!((d.m11 - std::f64::consts::E).abs() < 1e-15);
        assert!((d.m22 - 1.0 / std::f64::consts::E).abs() < 1e-15);
        assert_eq!(d.m12, 0.0);
        assert_eq!(d.m21, 0.0);
    }

    #[test]
    fn expm_zero_is_identity() {
        assert_eq!(expm_tracefree(0.0f64, 0.0, 0.0), Mat2::identity());
        assert_eq!(expm_tracefree(0.0f32, 0.0, 0.0), Mat2::identity());
    }

    #[test]
    fn series_agrees_with_closed_form_on_switch_band() {
        // log-uniform |Z| in [1e-4, 1], both signs
        for i in 0..=400 {
            let mag = 10f64.powf(-4.0 + 4.0 * i as f64 / 400.0);
            for z in [mag, -mag] {
                let xs = xi_series(z, 12);
                let es = eta0_series(z, 12);
                assert!((xs - xi_closed(z)).abs() <= 1e-13 * xs.abs(), "xi z={z}");
                assert!((es - eta0_closed(z)).abs() <= 1e-13 * es.abs(), "eta0 z={z}");
            }
        }
    }

    #[test]
    fn generic_over_f32() {
        let x: f32 = xi(-1.0f32);
        assert!((x - 1f32.cos()).abs() < 1e-6);
        let e: f32 = eta0(2.0f32);
        assert!((e - 2f32.sqrt().sinh() / 2f32.sqrt()).abs() < 1e-6);
    }

    /// Largest positive `Z` whose `cosh(√Z)` is representable in `f64`.
    const OVERFLOW_Z: f64 = 709.0 * 709.0;

    proptest! {
        #[test]
        fn pythagorean_identity(exp in -6.0f64..6.0, neg in any::<bool>()) {
            let z = if neg { -(10f64.powf(exp)) } else { 10f64.powf(exp) };
            let (x, e) = xi_eta0(z);
            if z > OVERFLOW_Z {
                // beyond f64 range both kernels saturate to +∞ rather than NaN
                prop_assert!(x == f64::INFINITY && e == f64::INFINITY);
            } else {
                let (lhs, rhs) = if z > 0.0 {
                    // divided through by ξ² so that large Z cannot overflow
                    let r = e / x;
                    (1.0 - z * r * r, 1.0 / (x * x))
                } else {
                    (x * x - z * e * e, 1.0)
                };
                prop_assert!((lhs - rhs).abs() <= 1e-12, "z={} lhs={} rhs={}", z, lhs, rhs);
            }
        }

        #[test]
        fn expm_has_unit_determinant(a in -1e3f64..1e3, b in -1e3f64..1e3, c in -1e3f64..1e3) {
            let m = expm_tracefree(a, b, c);
            prop_assume!(m.is_finite());
            // det in units of the largest entry squared, so huge ω cannot overflow the products
            let s = m.max_abs();
            let n = m.scale(1.0 / s);
            let det = n.m11 * n.m22 - n.m12 * n.m21;
            let scale = (n.m11 * n.m22).abs().max((n.m12 * n.m21).abs());
            prop_assert!((det - 1.0 / (s * s)).abs() <= 1e-12 * scale.max(1.0 / (s * s)));
        }
    }
}
