use crate::error::SolveError;
use crate::problem::{Form, SlProblem};
use crate::propagator::gauss;
use crate::scalar::Real;

/// Shifted Legendre polynomials `P*_1..P*_3` on `[0, 1]`.
pub fn shifted_legendre<T: Real>(t: T) -> [T; 3] {
    let l = T::lit;
    [l(2.0) * t - l(1.0), (l(6.0) * t - l(6.0)) * t + l(1.0), ((l(20.0) * t - l(30.0)) * t + l(12.0)) * t - l(1.0)]
}

/// One mesh interval with its λ-independent coefficient data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntervalData<T> {
    pub x_left: T,
    pub h: T,
    /// Reference constant: Gauss approximation of the interval mean of `q`.
    pub qbar: T,
    /// `Q̂_s` for `s = 1..ν−1`; unused slots are zero.
    pub qhat: [T; 3],
    pub nu: usize,
    /// `q` at the Gauss nodes; only the first `nu` entries are meaningful.
    pub node_values: [T; 4],
    /// Midpoint values of `p` and `w` (one in Schrödinger form).
    pub pbar: T,
    pub wbar: T,
}

impl<T: Real> IntervalData<T> {
    pub fn x_right(&self) -> T {
        self.x_left + self.h
    }

    /// Builds from already evaluated node values.
    pub fn from_node_values(x_left: T, h: T, nu: usize, values: &[T]) -> Self {
        let rule = gauss::rule(nu);
        let mut node_values = [T::zero(); 4];
        node_values[..nu].copy_from_slice(&values[..nu]);
        // deviations from the first node keep a constant q exactly constant
        let base = node_values[0];
        let mut dev = T::zero();
        let mut proj = [T::zero(); 3];
        for l in 0..nu {
            let w = T::lit(rule.weights[l]);
            let v = node_values[l] - base;
            dev = dev + w * v;
            let ps = shifted_legendre(T::lit(rule.nodes[l]));
            for s in 0..nu.saturating_sub(1) {
                proj[s] = proj[s] + w * v * ps[s];
            }
        }
        let qbar = base + dev;
        let mut qhat = [T::zero(); 3];
        for s in 0..nu.saturating_sub(1) {
            qhat[s] = T::from_usize_exact(2 * s + 3) * h * proj[s];
        }
        Self { x_left, h, qbar, qhat, nu, node_values, pbar: T::one(), wbar: T::one() }
    }

    /// Drops the polynomial part so only the constant reference `q̄` remains.
    pub fn reference_only(mut self) -> Self {
        self.qhat = [T::zero(); 3];
        self
    }

    /// Monomial coefficients of `P(t) = −Σ Q̂_s P*_s(t)`, so `Δq(δ) = P(δ/h)/h`.
    pub fn delta_poly(&self) -> [T; 4] {
        delta_poly(&self.qhat)
    }

    /// Polynomial model of `q` at `t ∈ [0, 1]`.
    pub fn model_q(&self, t: T) -> T {
        let ps = shifted_legendre(t);
        let mut v = self.qbar;
        for s in 0..3 {
            v = v + self.qhat[s] / self.h * ps[s];
        }
        v
    }

    /// Splits into two halves by re-projecting the polynomial model; no `q` evaluations.
    pub fn split(&self) -> (Self, Self) {
        let rule = gauss::rule(self.nu.max(1));
        let half = T::lit(0.5);
        let mk = |offset: T| {
            let vals: Vec<T> = rule.nodes.iter().map(|c| self.model_q(offset + half * T::lit(*c))).collect();
            let mut iv = Self::from_node_values(self.x_left + offset * self.h, self.h * half, self.nu.max(1), &vals);
            iv.pbar = self.pbar;
            iv.wbar = self.wbar;
            iv
        };
        (mk(T::zero()), mk(half))
    }
}

pub fn delta_poly<T: Real>(qhat: &[T; 3]) -> [T; 4] {
    let [q1, q2, q3] = *qhat;
    let l = T::lit;
    [q1 - q2 + q3, -(l(2.0) * q1 - l(6.0) * q2 + l(12.0) * q3), -(l(6.0) * q2 - l(30.0) * q3), -l(20.0) * q3]
}

/// Evaluates `q` at the `ν` Gauss nodes of `[x_left, x_left + h]` and projects.
pub fn interval_coefficients<T: Real>(
    q: impl Fn(T) -> T,
    x_left: T,
    h: T,
    nu: usize,
) -> Result<IntervalData<T>, SolveError> {
    if !(h > T::zero()) || !matches!(nu, 1 | 2 | 4) {
        return Err(SolveError::InvalidArgument(format!("interval h = {h}, nu = {nu}")));
    }
    let rule = gauss::rule(nu);
    let mut vals = [T::zero(); 4];
    for (l, c) in rule.nodes.iter().enumerate() {
        let x = x_left + T::lit(*c) * h;
        let v = q(x);
        if !v.is_finite() {
            return Err(SolveError::CoefficientEvaluation { x: x.to_f64_lossy() });
        }
        vals[l] = v;
    }
    Ok(IntervalData::from_node_values(x_left, h, nu, &vals))
}

impl<T: Real> IntervalData<T> {
    /// Interval data for a problem, including midpoint `p̄`, `w̄` in general form.
    pub fn from_problem(problem: &SlProblem<T>, x_left: T, h: T, nu: usize) -> Result<Self, SolveError> {
        let mut iv = interval_coefficients(|x| problem.q(x), x_left, h, nu)?;
        if problem.form() == Form::General {
            let mid = x_left + h * T::lit(0.5);
            let (p, w) = (problem.p(mid), problem.w(mid));
            if !(p > T::zero() && w > T::zero() && p.is_finite() && w.is_finite()) {
                return Err(SolveError::CoefficientEvaluation { x: mid.to_f64_lossy() });
            }
            iv.pbar = p;
            iv.wbar = w;
        }
        Ok(iv)
    }
}
