//! Filon-type closed forms for the correction integrals.
//!
//! All quantities are expressed in the normalized variable `t = δ/h` with
//! `Δq(δ) = P(t)/h`, `P(t) = −Σ Q̂_s P*_s(t)`, and `Z = Z_h = (q̄ − λ)h²`.
//! The closed forms are Laurent polynomials in `1/Z` multiplying
//! `X = ξ(4Z)` and `Y = η₀(4Z)`; for `|Z| < SERIES_BELOW` they cancel badly and
//! an exact power series in `Z` is summed instead.

use crate::propagator::interval::delta_poly;
use crate::scalar::Real;
use crate::specfun::{eta0, xi, Mat2};

/// `|Z_h|` below which the series branch is used.
pub const SERIES_BELOW: f64 = 0.5;

/// Series terms; the last retained term is below 1e-17 relative at `|Z| = 0.5`.
const SERIES_TERMS: usize = 14;

/// `I_η = ∫₀¹ P(t)·t·η₀(4Zt²) dt` and `I_ξ = ∫₀¹ P(t)·ξ(4Zt²) dt`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Univariate<T> {
    pub eta: T,
    pub xi: T,
    /// `I_ξ / Z`, finite at `Z = 0`.
    pub xi_over_z: T,
}

/// Ordered double integrals over `0 < t₂ < t₁ < 1` of `P(t₁)P(t₂)` against
///
/// ```text
/// d1: [sin(2θt₂) − sin(2θt₁)]/(2θ)   d2: cos(2θt₁) − cos(2θt₂)   d3: sin(2θ(t₁−t₂))/(2θ)
/// ```
///
/// with `θ² = −Z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Double<T> {
    pub d1: T,
    pub d2: T,
    pub d3: T,
    /// `d2 / Z`, finite at `Z = 0`.
    pub d2_over_z: T,
    /// `(d1 + d3) / Z`, finite at `Z = 0`.
    pub d13_over_z: T,
}

pub fn univariate<T: Real>(qhat: &[T; 3], z: T) -> Univariate<T> {
    if z.abs() < T::lit(SERIES_BELOW) {
        univariate_series(qhat, z)
    } else {
        univariate_closed(qhat, z)
    }
}

pub fn double<T: Real>(qhat: &[T; 3], z: T) -> Double<T> {
    if z.abs() < T::lit(SERIES_BELOW) {
        double_series(qhat, z)
    } else {
        double_closed(qhat, z)
    }
}

pub fn univariate_closed<T: Real>(qhat: &[T; 3], z: T) -> Univariate<T> {
    let [q1, q2, q3] = *qhat;
    let l = T::lit;
    let one = T::one();
    let x = xi(l(4.0) * z);
    let y = eta0(l(4.0) * z);
    let z2 = z * z;
    let eta = (q1 + l(3.0) * q2 + l(6.0) * q3) * y / (l(2.0) * z)
        - ((q3 + q1) * (x + one) + q2 * (x - one)) / (l(4.0) * z)
        + (l(3.0) * q2 * (one - x) - l(15.0) * q3 * (x + one)) / (l(4.0) * z2)
        + l(15.0) * q3 * y / (l(2.0) * z2);
    let neg_xi = (q1 + q2 + q3) * y + (l(3.0) * q2 + l(15.0) * q3) * y / z
        - (l(3.0) * q2 * (x + one) + (q1 + l(6.0) * q3) * (x - one)) / (l(2.0) * z)
        + l(15.0) * q3 * (one - x) / (l(2.0) * z2);
    Univariate { eta, xi: -neg_xi, xi_over_z: -neg_xi / z }
}

/// Exact termwise integration of the Taylor series of the kernels.
pub fn univariate_series<T: Real>(qhat: &[T; 3], z: T) -> Univariate<T> {
    let p = delta_poly(qhat);
    let four_z = T::lit(4.0) * z;
    // c = (4Z)^n/(2n+1)! and (4Z)^n/(2n)!; the ξ series starts at n = 1
    let mut ce = T::one();
    let mut eta = T::zero();
    let mut cx = T::lit(4.0) / T::lit(2.0);
    let mut xz = T::zero();
    for n in 0..SERIES_TERMS {
        let mut se = T::zero();
        let mut sx = T::zero();
        for (j, pj) in p.iter().enumerate() {
            se = se + *pj / T::from_usize_exact(2 * n + 2 + j);
            sx = sx + *pj / T::from_usize_exact(2 * n + 3 + j);
        }
        eta = eta + ce * se;
        xz = xz + cx * sx;
        ce = ce * four_z / T::from_usize_exact((2 * n + 2) * (2 * n + 3));
        cx = cx * four_z / T::from_usize_exact((2 * n + 3) * (2 * n + 4));
    }
    Univariate { eta, xi: xz * z, xi_over_z: xz }
}

type LaurentTable = [[[f64; 5]; 6]; 3];

// [part: 1, X, Y][monomial: Q1², Q1Q2, Q1Q3, Q2², Q2Q3, Q3²][power of 1/Z]
const D1_TABLE: LaurentTable = [
    [
        [0.0, 0.0, -3.0 / 4.0, 0.0, 0.0],
        [0.0, 0.0, 3.0, 15.0 / 2.0, 0.0],
        [0.0, 0.0, -21.0 / 4.0, -225.0 / 4.0, 0.0],
        [0.0, 0.0, -9.0 / 4.0, -45.0 / 2.0, 0.0],
        [0.0, 0.0, 27.0 / 4.0, 705.0 / 4.0, 1575.0 / 4.0],
        [0.0, 0.0, -9.0 / 2.0, -975.0 / 4.0, -7875.0 / 4.0],
    ],
    [
        [0.0, 0.0, -3.0 / 4.0, 0.0, 0.0],
        [0.0, 0.0, -3.0, -15.0 / 2.0, 0.0],
        [0.0, 0.0, -21.0 / 4.0, -225.0 / 4.0, 0.0],
        [0.0, 0.0, -9.0 / 4.0, -45.0 / 2.0, 0.0],
        [0.0, 0.0, -27.0 / 4.0, -705.0 / 4.0, -1575.0 / 4.0],
        [0.0, 0.0, -9.0 / 2.0, -975.0 / 4.0, -7875.0 / 4.0],
    ],
    [
        [0.0, 1.0 / 2.0, 3.0 / 2.0, 0.0, 0.0],
        [0.0, 1.0, 15.0, 0.0, 0.0],
        [0.0, 1.0, 48.0, 225.0 / 2.0, 0.0],
        [0.0, 1.0 / 2.0, 39.0 / 2.0, 45.0, 0.0],
        [0.0, 1.0, 90.0, 1575.0 / 2.0, 0.0],
        [0.0, 1.0 / 2.0, 84.0, 1800.0, 7875.0 / 2.0],
    ],
];

const D2_TABLE: LaurentTable = [
    [
        [0.0, 1.0 / 2.0, 3.0 / 2.0, 0.0, 0.0],
        [0.0, -1.0, -15.0, 0.0, 0.0],
        [0.0, 1.0, 48.0, 225.0 / 2.0, 0.0],
        [0.0, 1.0 / 2.0, 39.0 / 2.0, 45.0, 0.0],
        [0.0, -1.0, -90.0, -1575.0 / 2.0, 0.0],
        [0.0, 1.0 / 2.0, 84.0, 1800.0, 7875.0 / 2.0],
    ],
    [
        [0.0, -1.0 / 2.0, -3.0 / 2.0, 0.0, 0.0],
        [0.0, -1.0, -15.0, 0.0, 0.0],
        [0.0, -1.0, -48.0, -225.0 / 2.0, 0.0],
        [0.0, -1.0 / 2.0, -39.0 / 2.0, -45.0, 0.0],
        [0.0, -1.0, -90.0, -1575.0 / 2.0, 0.0],
        [0.0, -1.0 / 2.0, -84.0, -1800.0, -7875.0 / 2.0],
    ],
    [
        [0.0, 3.0, 0.0, 0.0, 0.0],
        [0.0, 12.0, 30.0, 0.0, 0.0],
        [0.0, 21.0, 225.0, 0.0, 0.0],
        [0.0, 9.0, 90.0, 0.0, 0.0],
        [0.0, 27.0, 705.0, 1575.0, 0.0],
        [0.0, 18.0, 975.0, 7875.0, 0.0],
    ],
];

fn eval_table<T: Real>(table: &LaurentTable, mono: &[T; 6], u: T, x: T, y: T) -> T {
    let mut parts = [T::zero(); 3];
    for (part, rows) in table.iter().enumerate() {
        let mut acc = T::zero();
        for (m, row) in rows.iter().enumerate() {
            let mut poly = T::zero();
            for c in row.iter().rev() {
                poly = poly * u + T::lit(*c);
            }
            acc = acc + mono[m] * poly;
        }
        parts[part] = acc;
    }
    parts[0] + parts[1] * x + parts[2] * y
}

/// The sin(2θ(t₁−t₂)) integral in its published form.
fn d3_closed<T: Real>(qhat: &[T; 3], z: T, x: T, y: T) -> T {
    let [q1, q2, q3] = *qhat;
    let l = T::lit;
    let (z2, z3, z4) = (z * z, z * z * z, z * z * z * z);
    let (q11, q22, q33, q13) = (q1 * q1, q2 * q2, q3 * q3, q3 * q1);
    ((q22 - q33 - q11 - l(2.0) * q13) / (l(4.0) * z)
        + (-q11 + l(15.0) * q22 - l(66.0) * q33 - l(42.0) * q13) / (l(4.0) * z2)
        + (l(9.0) * q22 - l(405.0) * q33 - l(30.0) * q13) / (l(4.0) * z3)
        - l(225.0) * q33 / (l(4.0) * z4))
        * y
        + ((q11 - l(3.0) * q22 + l(6.0) * q33 + l(7.0) * q13) / (l(4.0) * z2)
            + (l(30.0) * q13 - l(9.0) * q22 + l(105.0) * q33) / (l(4.0) * z3)
            + l(225.0) * q33 / (l(4.0) * z4))
            * x
        - (l(42.0) * q22 + l(70.0) * q11 + l(30.0) * q33) / (l(840.0) * z)
        - l(5.0) * q13 / (l(4.0) * z2)
}

pub fn double_closed<T: Real>(qhat: &[T; 3], z: T) -> Double<T> {
    let [q1, q2, q3] = *qhat;
    let mono = [q1 * q1, q1 * q2, q1 * q3, q2 * q2, q2 * q3, q3 * q3];
    let x = xi(T::lit(4.0) * z);
    let y = eta0(T::lit(4.0) * z);
    let u = T::one() / z;
    let d1 = eval_table(&D1_TABLE, &mono, u, x, y);
    let d2 = eval_table(&D2_TABLE, &mono, u, x, y);
    let d3 = d3_closed(qhat, z, x, y);
    Double { d1, d2, d3, d2_over_z: d2 / z, d13_over_z: (d1 + d3) / z }
}

/// `∫∫_{t₂<t₁} t₁^a t₂^b (t₁−t₂)^m = b!·m!/((b+m+1)!·(a+b+m+2))`.
fn triangle<T: Real>(a: usize, b: usize, m: usize) -> T {
    let mut r = T::one();
    for k in 1..=b {
        r = r * T::from_usize_exact(k) / T::from_usize_exact(m + k);
    }
    r / T::from_usize_exact((b + m + 1) * (a + b + m + 2))
}

pub fn double_series<T: Real>(qhat: &[T; 3], z: T) -> Double<T> {
    let p = delta_poly(qhat);
    let four_z = T::lit(4.0) * z;
    // Σ p_i p_j ∫∫ t₁^(i+s) t₂^(j+r) (t₁−t₂)^m
    let moment = |s: usize, r: usize, m: usize| {
        let mut acc = T::zero();
        for (i, pi) in p.iter().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                acc = acc + *pi * *pj * triangle::<T>(i + s, j + r, m);
            }
        }
        acc
    };
    let (mut d1, mut d2, mut d3) = (T::zero(), T::zero(), T::zero());
    let (mut d2z, mut d13z) = (T::zero(), T::zero());
    // ce = (4Z)^n/(2n+1)!, cx = (4Z)^n/(2n)!, and the same divided by Z
    let mut ce = T::one();
    let mut cx = T::one();
    let mut ce_z = T::zero();
    let mut cx_z = T::zero();
    for n in 0..SERIES_TERMS {
        let (o, e) = (2 * n + 1, 2 * n);
        let sin_part = moment(0, o, 0) - moment(o, 0, 0);
        let cos_part = moment(e, 0, 0) - moment(0, e, 0);
        let diff_part = moment(0, 0, o);
        d1 = d1 + ce * sin_part;
        d2 = d2 + cx * cos_part;
        d3 = d3 + ce * diff_part;
        if n >= 1 {
            d2z = d2z + cx_z * cos_part;
            d13z = d13z + ce_z * (sin_part + diff_part);
        }
        // advance: c_{n+1} = c_n · 4Z / ((2n+2)(2n+3)), and c_{n+1}/Z = c_n · 4 / (...)
        let de = T::from_usize_exact((2 * n + 2) * (2 * n + 3));
        let dx = T::from_usize_exact((2 * n + 1) * (2 * n + 2));
        ce_z = ce * T::lit(4.0) / de;
        cx_z = cx * T::lit(4.0) / dx;
        ce = ce * four_z / de;
        cx = cx * four_z / dx;
    }
    Double { d1, d2, d3, d2_over_z: d2z, d13_over_z: d13z }
}

/// `σ₁ = ∫₀^h B(δ)dδ` with `Δq` replaced by its Legendre model.
pub fn sigma1<T: Real>(qhat: &[T; 3], z: T, h: T) -> Mat2<T> {
    let u = univariate(qhat, z);
    let half = T::lit(0.5);
    Mat2::new(h * u.eta, h * h * u.xi_over_z * half, -u.xi * half, -h * u.eta)
}

/// `σ₂ = ½∫₀^h∫₀^{δ₁}[B(δ₁), B(δ₂)]dδ₂dδ₁`.
pub fn sigma2<T: Real>(qhat: &[T; 3], z: T, h: T) -> Mat2<T> {
    let d = double(qhat, z);
    let quarter = T::lit(0.25);
    let half = T::lit(0.5);
    let a = -h * h * d.d2_over_z * quarter;
    Mat2::new(a, h * h * h * d.d13_over_z * half, h * (d.d3 - d.d1) * half, -a)
}
