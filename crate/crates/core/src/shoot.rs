//! Prüfer-indexed shooting over a precomputed mesh.
//!
//! The continuous phase is stored as an integer half-turn count `band` plus
//! the state direction, `θ = band·π + φ` with `φ = atan2(S·y, py) mod π ∈ [0, π)`.
//! Changing the positive scale `S` never moves `φ` across a multiple of `π`,
//! so the band survives rescaling between intervals.

use crate::error::SolveError;
use crate::mesh::Mesh;
use crate::problem::{prufer_boundary_angles, BoundaryCondition, PruferAngles, SlProblem};
use crate::propagator::{
    check_form, correction, correction_inverse, pruess_step, reference_z, Direction, IntervalData,
};
use crate::scalar::Real;
use crate::specfun::Mat2;

/// Recursion limit when a correction turns the state by more than a quarter turn.
const MAX_SPLIT_DEPTH: u32 = 6;
/// Largest `Z_h` at which a correction is applied without splitting.
const BARRIER_SPLIT_Z: f64 = 64.0;
const MAX_EXPANSIONS: usize = 200;
const MAX_ITERATIONS: usize = 200;
/// Rounding allowance on `φ` before a decrease counts as non-monotone.
const MONOTONE_SLACK: f64 = 1e-9;

/// State `(y, p·y′)` with its continuous Prüfer phase at `scale = S`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShootState<T> {
    pub y: T,
    pub py: T,
    pub theta: T,
    pub scale: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenResult<T> {
    pub k: usize,
    pub lambda: T,
    /// `|φ(λ) − kπ|` at the returned λ.
    pub residual: T,
    pub iterations: usize,
    /// Final bracket `[lo, hi]` with `φ(lo) ≤ kπ ≤ φ(hi)`.
    pub bracket: (T, T),
    /// Successive λ iterates.
    pub history: Vec<T>,
    /// Coefficient evaluations performed during the solve (zero on a built mesh).
    pub fevals: u64,
}

/// Phase-tracked state during propagation.
#[derive(Clone, Copy, Debug)]
struct Tracked<T> {
    y: T,
    py: T,
    band: i64,
}

fn phase<T: Real>(s: T, y: T, py: T) -> T {
    // fold onto y ≥ 0 so that the band boundary is exactly y = 0 for every S
    let (y, py) = if y < T::zero() || (y == T::zero() && py < T::zero()) { (-y, -py) } else { (y, py) };
    if y == T::zero() {
        return T::zero();
    }
    let pi = T::PI();
    let r = (s * y).atan2(py);
    if r >= pi {
        pi * (T::one() - T::epsilon())
    } else {
        r
    }
}

/// Principal value of `arg(b) − arg(a)` in `(−π, π]`, angles taken in `(S·y, py)`.
fn turn<T: Real>(s: T, a: (T, T), b: (T, T)) -> T {
    let cross = s * (a.1 * b.0 - a.0 * b.1);
    let dot = s * s * a.0 * b.0 + a.1 * b.1;
    cross.atan2(dot)
}

fn round_i64<T: Real>(v: T) -> i64 {
    v.round().to_i64().unwrap_or(0)
}

impl<T: Real> Tracked<T> {
    fn theta(&self) -> T {
        T::from_i64(self.band).expect("band fits") * T::PI() + phase(T::one(), self.y, self.py)
    }

    fn normalize(&mut self) -> T {
        let n = self.y.hypot(self.py);
        self.y = self.y / n;
        self.py = self.py / n;
        n
    }

    fn is_finite(&self) -> bool {
        self.y.is_finite() && self.py.is_finite() && (self.y != T::zero() || self.py != T::zero())
    }

    /// Applies a full step matrix in a non-oscillatory interval, counting zeros of `y`.
    fn apply_sign_rule(&mut self, m: &Mat2<T>, dir: Direction) {
        let y_old = self.y;
        let (y, py) = m.apply((self.y, self.py));
        let zero = T::zero();
        let crossed = (y_old < zero && y > zero) || (y_old > zero && y < zero);
        match dir {
            Direction::Forward => {
                if y_old != zero && (y == zero || crossed) {
                    self.band += 1;
                }
            }
            Direction::Backward => {
                if y_old == zero || crossed {
                    self.band -= 1;
                }
            }
        }
        self.y = y;
        self.py = py;
    }

    /// Applies a matrix whose phase advance in `(S·y, py)` is known to be `advance`.
    fn apply_with_advance(&mut self, m: &Mat2<T>, s: T, advance: T) {
        let before = phase(s, self.y, self.py);
        let (y, py) = m.apply((self.y, self.py));
        let after = phase(s, y, py);
        self.band += round_i64((before + advance - after) / T::PI());
        self.y = y;
        self.py = py;
    }
}

/// Shooting driver bound to one problem and one mesh.
pub struct Solver<'a, T> {
    pub mesh: &'a Mesh<T>,
    problem: &'a SlProblem<T>,
    bc: BoundaryCondition<T>,
}

impl<'a, T: Real> Solver<'a, T> {
    pub fn new(problem: &'a SlProblem<T>, mesh: &'a Mesh<T>) -> Self {
        Self { mesh, problem, bc: problem.bc }
    }

    pub fn boundary_angles(&self) -> PruferAngles<T> {
        prufer_boundary_angles(self.problem, T::one(), T::one())
    }

    fn left_start(&self) -> Tracked<T> {
        let mut t = Tracked { y: -self.bc.a2, py: self.bc.a1, band: 0 };
        t.normalize();
        t
    }

    fn right_start(&self) -> Tracked<T> {
        let mut t = Tracked { y: -self.bc.b2, py: self.bc.b1, band: 0 };
        t.normalize();
        if phase(T::one(), t.y, t.py) == T::zero() {
            t.band = 1;
        }
        t
    }

    /// Advances the unit-norm state `st` across `iv`, tracking the phase;
    /// returns the log of the norm growth.
    fn advance(
        &self,
        st: &mut Tracked<T>,
        iv: &IntervalData<T>,
        lambda: T,
        dir: Direction,
        depth: u32,
    ) -> Result<T, SolveError> {
        let method = self.mesh.method;
        check_form(method, iv)?;
        let z = reference_z(iv, lambda);
        let e = pruess_step(iv, lambda, dir);
        let c = match dir {
            Direction::Forward => correction(method, iv, lambda),
            Direction::Backward => correction_inverse(method, iv, lambda),
        };
        let can_split = depth < MAX_SPLIT_DEPTH;
        if z >= T::zero() {
            if let Some(c) = &c {
                // a correction far from the identity means the series is not resolving the model
                let s = (iv.qbar - lambda).sqrt().max(iv.h.recip());
                let dev = Mat2::new(c.m11 - T::one(), s * c.m12, c.m21 / s, c.m22 - T::one()).max_abs();
                // the frame change amplifies truncation error like e^{2√Z}
                if (z > T::lit(BARRIER_SPLIT_Z) || !(dev <= T::one())) && can_split {
                    return self.advance_split(st, iv, lambda, dir, depth);
                }
            }
            let m = match (dir, c) {
                (_, None) => e,
                (Direction::Forward, Some(c)) => e * c,
                (Direction::Backward, Some(c)) => c * e,
            };
            st.apply_sign_rule(&m, dir);
        } else {
            let s = (iv.pbar * (lambda * iv.wbar - iv.qbar)).sqrt();
            let wh = (-z).sqrt();
            if let Some(c) = c {
                // the correction must turn the state by less than a quarter turn
                let probe = match dir {
                    Direction::Forward => (st.y, st.py),
                    Direction::Backward => e.apply((st.y, st.py)),
                };
                let d = turn(s, probe, c.apply(probe));
                if d.abs() > T::FRAC_PI_2() && can_split {
                    return self.advance_split(st, iv, lambda, dir, depth);
                }
                match dir {
                    Direction::Forward => {
                        st.apply_with_advance(&c, s, d);
                        st.apply_with_advance(&e, s, wh);
                    }
                    Direction::Backward => {
                        st.apply_with_advance(&e, s, -wh);
                        st.apply_with_advance(&c, s, d);
                    }
                }
            } else {
                let adv = match dir {
                    Direction::Forward => wh,
                    Direction::Backward => -wh,
                };
                st.apply_with_advance(&e, s, adv);
            }
        }
        if !st.is_finite() {
            return Err(SolveError::NonFinite { lambda: lambda.to_f64_lossy() });
        }
        Ok(st.normalize().ln())
    }

    fn advance_split(
        &self,
        st: &mut Tracked<T>,
        iv: &IntervalData<T>,
        lambda: T,
        dir: Direction,
        depth: u32,
    ) -> Result<T, SolveError> {
        let (l, r) = iv.split();
        let order = match dir {
            Direction::Forward => [l, r],
            Direction::Backward => [r, l],
        };
        let mut growth = T::zero();
        for half in order.iter() {
            growth = growth + self.advance(st, half, lambda, dir, depth + 1)?;
        }
        Ok(growth)
    }

    fn shoot_left(&self, lambda: T, mut visit: impl FnMut(usize, &Tracked<T>, T)) -> Result<Tracked<T>, SolveError> {
        let mut st = self.left_start();
        let mut log_amp = T::zero();
        visit(0, &st, log_amp);
        for (i, iv) in self.mesh.intervals[..self.mesh.match_index].iter().enumerate() {
            log_amp = log_amp + self.advance(&mut st, iv, lambda, Direction::Forward, 0)?;
            visit(i + 1, &st, log_amp);
        }
        Ok(st)
    }

    fn shoot_right(&self, lambda: T, mut visit: impl FnMut(usize, &Tracked<T>, T)) -> Result<Tracked<T>, SolveError> {
        let n = self.mesh.len();
        let mut st = self.right_start();
        let mut log_amp = T::zero();
        visit(n, &st, log_amp);
        for i in (self.mesh.match_index..n).rev() {
            let iv = &self.mesh.intervals[i];
            log_amp = log_amp + self.advance(&mut st, iv, lambda, Direction::Backward, 0)?;
            visit(i, &st, log_amp);
        }
        Ok(st)
    }

    fn to_state(t: &Tracked<T>) -> ShootState<T> {
        ShootState { y: t.y, py: t.py, theta: t.theta(), scale: T::one() }
    }

    /// Left solution at the matching point.
    pub fn propagate_left(&self, lambda: T) -> Result<ShootState<T>, SolveError> {
        let mut st = self.left_start();
        for iv in &self.mesh.intervals[..self.mesh.match_index] {
            self.advance(&mut st, iv, lambda, Direction::Forward, 0)?;
        }
        Ok(Self::to_state(&st))
    }

    /// Right solution at the matching point.
    pub fn propagate_right(&self, lambda: T) -> Result<ShootState<T>, SolveError> {
        let mut st = self.right_start();
        for iv in self.mesh.intervals[self.mesh.match_index..].iter().rev() {
            self.advance(&mut st, iv, lambda, Direction::Backward, 0)?;
        }
        Ok(Self::to_state(&st))
    }

    /// `φ(λ) = θ_L(x_m) − θ_R(x_m)`.
    pub fn mismatch(&self, lambda: T) -> Result<T, SolveError> {
        let l = self.propagate_left(lambda)?;
        let r = self.propagate_right(lambda)?;
        Ok(l.theta - r.theta)
    }

    fn initial_guess(&self, k: usize) -> T {
        let len = self.mesh.b() - self.mesh.a();
        let w = T::from_usize_exact(k + 1) * T::PI() / len;
        self.mesh.mean_qbar() + w * w * self.mesh.mean_p_over_w()
    }

    /// Solves `φ(λ) = kπ` to `|Δλ| ≤ tol·max(1, |λ|)`.
    pub fn eigenvalue(&self, k: usize, tol: T) -> Result<EigenResult<T>, SolveError> {
        self.eigenvalue_seeded(k, tol, None)
    }

    /// As [`Solver::eigenvalue`], optionally starting from a known `λ_lo` with `φ(λ_lo) < kπ`.
    pub fn eigenvalue_seeded(&self, k: usize, tol: T, lower: Option<T>) -> Result<EigenResult<T>, SolveError> {
        let guess = match lower {
            Some(lo) => lo.max(self.initial_guess(k)),
            None => self.initial_guess(k),
        };
        let radius = T::one().max(guess.abs() * T::lit(0.1));
        self.solve(k, tol, guess, radius, lower)
    }

    /// As [`Solver::eigenvalue`], starting from a close approximation `near`.
    pub fn eigenvalue_near(&self, k: usize, tol: T, near: T) -> Result<EigenResult<T>, SolveError> {
        let radius = T::lit(1e-6) * T::one().max(near.abs());
        self.solve(k, tol, near, radius, None)
    }

    fn solve(&self, k: usize, tol: T, guess: T, radius: T, lower: Option<T>) -> Result<EigenResult<T>, SolveError> {
        if !(tol > T::zero()) {
            return Err(SolveError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
        }
        let before = self.problem.evals();
        let target = T::from_usize_exact(k) * T::PI();
        let f = |lam: T| self.mismatch(lam).map(|v| v - target);
        let mut history = Vec::new();
        let mut evals = 0usize;

        // bracket search
        let mut step_r = radius;
        let (mut lo, mut flo, mut hi, mut fhi);
        let fg = f(guess)?;
        evals += 1;
        if fg < T::zero() {
            lo = guess;
            flo = fg;
            let mut expansions = 0;
            loop {
                let cand = lo + step_r;
                let fc = f(cand)?;
                evals += 1;
                if fc < flo - T::lit(MONOTONE_SLACK) {
                    return Err(SolveError::NonMonotone { lambda: cand.to_f64_lossy() });
                }
                if fc >= T::zero() {
                    hi = cand;
                    fhi = fc;
                    break;
                }
                lo = cand;
                flo = fc;
                step_r = step_r + step_r;
                expansions += 1;
                if expansions > MAX_EXPANSIONS {
                    return Err(SolveError::BracketNotFound { k, expansions });
                }
            }
        } else {
            hi = guess;
            fhi = fg;
            if let Some(l) = lower.filter(|l| *l < guess) {
                let fl = f(l)?;
                evals += 1;
                if fl < T::zero() {
                    step_r = guess - l;
                }
            }
            let mut expansions = 0;
            loop {
                let cand = hi - step_r;
                let fc = f(cand)?;
                evals += 1;
                if fc > fhi + T::lit(MONOTONE_SLACK) {
                    return Err(SolveError::NonMonotone { lambda: cand.to_f64_lossy() });
                }
                if fc < T::zero() {
                    lo = cand;
                    flo = fc;
                    break;
                }
                hi = cand;
                fhi = fc;
                step_r = step_r + step_r;
                expansions += 1;
                if expansions > MAX_EXPANSIONS {
                    return Err(SolveError::BracketNotFound { k, expansions });
                }
            }
        }

        let half = T::lit(0.5);
        let coarse = T::lit(0.5);
        let done = |a: T, b: T, lam: T| (b - a).abs() <= tol * T::one().max(lam.abs());
        let mut lam = if flo.abs() < fhi.abs() { lo } else { hi };
        let mut flam = if flo.abs() < fhi.abs() { flo } else { fhi };
        // Illinois weights for the retained endpoint; the unweighted values guard monotonicity
        let mut side = 0i8;
        let (mut true_lo, mut true_hi) = (flo, fhi);
        let slack = T::lit(MONOTONE_SLACK);
        let mut iterations = 0;
        while iterations < MAX_ITERATIONS {
            iterations += 1;
            if done(lo, hi, lam) {
                break;
            }
            let secant_ok = flo.abs() < coarse || fhi.abs() < coarse;
            let mut cand = if secant_ok && fhi > flo { lo - flo * (hi - lo) / (fhi - flo) } else { (lo + hi) * half };
            if !(cand > lo && cand < hi) {
                cand = (lo + hi) * half;
                if !(cand > lo && cand < hi) {
                    // adjacent floats: the bracket cannot shrink further
                    break;
                }
            }
            let fc = f(cand)?;
            evals += 1;
            history.push(cand);
            if fc < true_lo - slack || fc > true_hi + slack {
                return Err(SolveError::NonMonotone { lambda: cand.to_f64_lossy() });
            }
            lam = cand;
            flam = fc;
            if fc == T::zero() {
                lo = cand;
                hi = cand;
                break;
            }
            if fc < T::zero() {
                lo = cand;
                flo = fc;
                true_lo = fc;
                if side == -1 {
                    fhi = fhi * half;
                }
                side = -1;
            } else {
                hi = cand;
                fhi = fc;
                true_hi = fc;
                if side == 1 {
                    flo = flo * half;
                }
                side = 1;
            }
        }
        let exhausted = !((lo + hi) * half > lo && (lo + hi) * half < hi);
        if iterations >= MAX_ITERATIONS && !done(lo, hi, lam) && !exhausted {
            return Err(SolveError::NoConvergence { k });
        }
        let _ = evals;
        Ok(EigenResult {
            k,
            lambda: lam,
            residual: flam.abs(),
            iterations,
            bracket: (lo.min(lam), hi.max(lam)),
            history,
            fevals: self.problem.evals() - before,
        })
    }

    /// Eigenvalues `λ_{k_lo}..=λ_{k_hi}`, each lower bracket seeded from its predecessor.
    pub fn eigenvalue_range(&self, k_lo: usize, k_hi: usize, tol: T) -> Result<Vec<EigenResult<T>>, SolveError> {
        if k_lo > k_hi {
            return Err(SolveError::InvalidArgument(format!("empty index range {k_lo}..{k_hi}")));
        }
        let mut out: Vec<EigenResult<T>> = Vec::with_capacity(k_hi - k_lo + 1);
        for k in k_lo..=k_hi {
            let seed = out.last().map(|r| r.lambda);
            let r = self.eigenvalue_seeded(k, tol, seed)?;
            if let Some(prev) = out.last() {
                if !(r.lambda > prev.lambda) {
                    return Err(SolveError::NonMonotone { lambda: r.lambda.to_f64_lossy() });
                }
            }
            out.push(r);
        }
        Ok(out)
    }

    /// `(x, y, py)` at every mesh point, joined at `x_m` and scaled to `max|y| = 1`.
    pub fn eigenfunction_samples(&self, lambda: T) -> Result<Vec<(T, T, T)>, SolveError> {
        let n = self.mesh.len();
        let pts = self.mesh.points();
        // (y, py, log amplitude) per mesh point
        let mut raw = vec![(T::zero(), T::zero(), T::neg_infinity()); n + 1];
        let l = self.shoot_left(lambda, |i, st, la| raw[i] = (st.y, st.py, la))?;
        let mut right = vec![(T::zero(), T::zero(), T::neg_infinity()); n + 1];
        let r = self.shoot_right(lambda, |i, st, la| right[i] = (st.y, st.py, la))?;
        let m = self.mesh.match_index;
        // best scalar c with c·(y_R, py_R) ≈ (y_L, py_L) at x_m, in unit-norm coordinates
        let c = l.y * r.y + l.py * r.py;
        if c == T::zero() {
            return Err(SolveError::ZeroFunction { lambda: lambda.to_f64_lossy() });
        }
        let shift = raw[m].2 - right[m].2;
        for i in m..=n {
            let (y, py, la) = right[i];
            raw[i] = (y * c, py * c, la + shift);
        }
        let top = raw.iter().filter(|v| v.0 != T::zero()).map(|v| v.2 + v.0.abs().ln()).fold(T::neg_infinity(), T::max);
        if !top.is_finite() {
            return Err(SolveError::ZeroFunction { lambda: lambda.to_f64_lossy() });
        }
        Ok(raw
            .iter()
            .zip(pts)
            .map(|((y, py, la), x)| {
                let f = (*la - top).exp();
                (x, *y * f, *py * f)
            })
            .collect())
    }
}

/// Sign changes in a sample sequence, ignoring values below `floor·max|y|`.
pub fn sign_changes<T: Real>(ys: impl IntoIterator<Item = T>, floor: T) -> usize {
    let ys: Vec<T> = ys.into_iter().collect();
    let top = ys.iter().fold(T::zero(), |m, y| m.max(y.abs()));
    let mut last = T::zero();
    let mut count = 0;
    for y in ys {
        if y.abs() <= floor * top {
            continue;
        }
        if last != T::zero() && (y > T::zero()) != (last > T::zero()) {
            count += 1;
        }
        last = y;
    }
    count
}
