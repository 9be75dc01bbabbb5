//! λ-independent meshes with all interval data precomputed.

use crate::error::SolveError;
use crate::problem::{EndpointKind, Form, SlProblem};
use crate::propagator::{filon, IntervalData, Method};
use crate::scalar::Real;
use crate::specfun::Mat2;

/// Maximum fixed-point retries for one adaptive interval.
const MAX_RETRIES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ErrorEstimate<T> {
    pub eps: T,
}

/// Construction counters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct MeshStats {
    /// Intervals whose coefficients were computed (accepted or rejected).
    pub trials: usize,
    /// Coefficient evaluations spent building the mesh.
    pub evals: u64,
}

#[derive(Clone, Debug)]
pub struct Mesh<T> {
    pub intervals: Vec<IntervalData<T>>,
    /// Matching point `x_m` is the left end of `intervals[match_index]`.
    pub match_index: usize,
    pub method: Method,
    /// Construction tolerance, zero for uniform meshes.
    pub tol: T,
    pub stats: MeshStats,
}

fn check_method<T: Real>(problem: &SlProblem<T>, method: Method) -> Result<(), SolveError> {
    if method.is_modified() && problem.form() != Form::Schroedinger {
        return Err(SolveError::NotSchroedinger { method: method.name() });
    }
    Ok(())
}

impl<T: Real> Mesh<T> {
    /// `n` equal intervals.
    pub fn uniform(problem: &SlProblem<T>, n: usize, method: Method) -> Result<Self, SolveError> {
        if n == 0 {
            return Err(SolveError::InvalidArgument("uniform mesh needs n ≥ 1".into()));
        }
        check_method(problem, method)?;
        let before = problem.evals();
        let (a, b) = (problem.a, problem.b);
        let len = b - a;
        let point = |i: usize| {
            if i == n {
                b
            } else {
                a + len * T::from_usize_exact(i) / T::from_usize_exact(n)
            }
        };
        let mut intervals = Vec::with_capacity(n);
        for i in 0..n {
            let (xl, xr) = (point(i), point(i + 1));
            intervals.push(IntervalData::from_problem(problem, xl, xr - xl, method.nu())?);
        }
        let mut mesh = Mesh {
            intervals,
            match_index: 0,
            method,
            tol: T::zero(),
            stats: MeshStats { trials: n, evals: problem.evals() - before },
        };
        mesh.match_index = mesh.default_match_index(problem.left);
        Ok(mesh)
    }

    /// Greedy left-to-right stepsize selection driven by [`local_error_estimate`].
    pub fn adaptive(problem: &SlProblem<T>, tol: T, method: Method) -> Result<Self, SolveError> {
        let mut mesh = adaptive_on(problem, problem.a, problem.b, tol, method)?;
        mesh.match_index = mesh.default_match_index(problem.left);
        Ok(mesh)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn a(&self) -> T {
        self.intervals[0].x_left
    }

    pub fn b(&self) -> T {
        self.intervals[self.len() - 1].x_right()
    }

    /// Mesh points `x_0, …, x_n`.
    pub fn points(&self) -> Vec<T> {
        let mut v: Vec<T> = self.intervals.iter().map(|iv| iv.x_left).collect();
        v.push(self.b());
        v
    }

    pub fn match_point(&self) -> T {
        self.points()[self.match_index]
    }

    /// Mesh point nearest the midpoint, ties to the lower index; at least `n/4`
    /// when the left endpoint is a truncated singular one.
    pub fn default_match_index(&self, left: EndpointKind) -> usize {
        let pts = self.points();
        let mid = (self.a() + self.b()) * T::lit(0.5);
        let mut best = 0;
        for (i, x) in pts.iter().enumerate() {
            if (*x - mid).abs() < (pts[best] - mid).abs() {
                best = i;
            }
        }
        if left == EndpointKind::TruncatedSingular {
            best = best.max(self.len() / 4);
        }
        best
    }

    pub fn with_match_index(mut self, m: usize) -> Result<Self, SolveError> {
        if m > self.len() {
            return Err(SolveError::InvalidArgument(format!("match index {m} exceeds n = {}", self.len())));
        }
        self.match_index = m;
        Ok(self)
    }

    pub fn min_h(&self) -> T {
        self.intervals.iter().fold(T::infinity(), |m, iv| m.min(iv.h))
    }

    pub fn max_h(&self) -> T {
        self.intervals.iter().fold(T::zero(), |m, iv| m.max(iv.h))
    }

    /// Mean of `q̄` weighted by interval length.
    pub fn mean_qbar(&self) -> T {
        let (mut s, mut l) = (T::zero(), T::zero());
        for iv in &self.intervals {
            s = s + iv.qbar / iv.wbar * iv.h;
            l = l + iv.h;
        }
        s / l
    }

    /// Length-weighted mean of `p̄/w̄`.
    pub fn mean_p_over_w(&self) -> T {
        let (mut s, mut l) = (T::zero(), T::zero());
        for iv in &self.intervals {
            s = s + iv.pbar / iv.wbar * iv.h;
            l = l + iv.h;
        }
        s / l
    }

    /// Inserts a leading interval `[x, a_mesh]`, shifting the match index.
    pub fn prepend(&mut self, iv: IntervalData<T>) {
        self.intervals.insert(0, iv);
        self.match_index += 1;
    }

    /// Replaces the leading interval by its two halves, evaluated afresh.
    /// A reference-only leading interval stays reference-only.
    pub fn bisect_leading(&mut self, problem: &SlProblem<T>) -> Result<(), SolveError> {
        let first = self.intervals[0];
        let half = first.h * T::lit(0.5);
        let mut left = IntervalData::from_problem(problem, first.x_left, half, first.nu)?;
        if first.qhat.iter().all(|v| *v == T::zero()) {
            left = left.reference_only();
        }
        let right = IntervalData::from_problem(problem, first.x_left + half, first.h - half, first.nu)?;
        self.intervals[0] = right;
        self.intervals.insert(0, left);
        self.match_index += 1;
        self.stats.trials += 2;
        self.stats.evals += 2 * first.nu as u64;
        Ok(())
    }

    /// Tab-separated dump: index, x_left, h, qbar, Q̂₁..Q̂₃.
    pub fn dump(&self) -> String {
        let mut out = String::from("#index\tx_left\th\tqbar\tQhat1\tQhat2\tQhat3\n");
        for (i, iv) in self.intervals.iter().enumerate() {
            out.push_str(&format!(
                "{i}\t{:e}\t{:e}\t{:e}\t{:e}\t{:e}\t{:e}\n",
                iv.x_left, iv.h, iv.qbar, iv.qhat[0], iv.qhat[1], iv.qhat[2]
            ));
        }
        out
    }
}

/// Adaptive mesh on `[a, b]`; the match index is left at zero.
pub(crate) fn adaptive_on<T: Real>(
    problem: &SlProblem<T>,
    a: T,
    b: T,
    tol: T,
    method: Method,
) -> Result<Mesh<T>, SolveError> {
    if method.order() != 8 {
        return Err(SolveError::AdaptiveNeedsOrder8 { method: method.name() });
    }
    if !(tol > T::zero()) {
        return Err(SolveError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    check_method(problem, method)?;
    let before = problem.evals();
    let len = b - a;
    let h_max = len / T::lit(10.0);
    let h_min = len * T::lit(1e-10);
    let eighth = T::lit(0.125);
    let end_slack = len * T::lit(1e-12);

    let mut intervals = Vec::new();
    let mut trials = 0;
    let mut x = a;
    let mut h = len / T::lit(100.0);
    while b - x > end_slack {
        let mut retries = 0;
        loop {
            let remaining = b - x;
            let last = h >= remaining - end_slack;
            let ht = if last { remaining } else { h };
            let iv = IntervalData::from_problem(problem, x, ht, method.nu())?;
            trials += 1;
            let eps = local_error_estimate(&iv, &DEFAULT_TRIAL_Z).eps;
            let h_bar = if eps == T::zero() { h_max } else { (ht * (tol / eps).powf(eighth)).min(h_max) };
            if (h_bar / ht - T::one()).abs() <= T::lit(0.1) || (last && h_bar >= ht) {
                intervals.push(iv);
                x = if last { b } else { x + ht };
                h = h_bar;
                break;
            }
            retries += 1;
            if retries > MAX_RETRIES {
                return Err(SolveError::StepsizeNoConvergence { x: x.to_f64_lossy(), retries });
            }
            h = h_bar;
            if h < h_min {
                return Err(SolveError::StepsizeUnderflow { x: x.to_f64_lossy(), h: h.to_f64_lossy() });
            }
        }
    }
    Ok(Mesh { intervals, match_index: 0, method, tol, stats: MeshStats { trials, evals: problem.evals() - before } })
}

/// Trial values `Z_h = −m²π²`, `m = 0, 1, 2`, at which the reference propagator is `±I`.
pub const DEFAULT_TRIAL_Z: [f64; 3] =
    [0.0, -std::f64::consts::PI * std::f64::consts::PI, -4.0 * std::f64::consts::PI * std::f64::consts::PI];

/// Max-norm of the `Q̂₃`-only part of the order-8 univariate correction over `trial_z`.
pub fn local_error_estimate<T: Real>(iv: &IntervalData<T>, trial_z: &[f64]) -> ErrorEstimate<T> {
    let q3 = [T::zero(), T::zero(), iv.qhat[2]];
    let eps = trial_z.iter().fold(T::zero(), |m, z| {
        let s: Mat2<T> = filon::sigma1(&q3, T::lit(*z), iv.h);
        m.max(s.max_abs())
    });
    ErrorEstimate { eps }
}
