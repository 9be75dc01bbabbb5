//! Sturm–Liouville problem definitions.

mod builtin;
mod expr;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::ProblemError;
use crate::scalar::Real;

pub use builtin::{builtin, builtin_names, canonical_name, woods_saxon_q};
pub use expr::{parse_potential, Expr, Func};

/// Shared, thread-safe coefficient function of `x`.
pub type CoefFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Separated boundary conditions `a1·y(a) + a2·(py′)(a) = 0`, `b1·y(b) + b2·(py′)(b) = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryCondition<T> {
    pub a1: T,
    pub a2: T,
    pub b1: T,
    pub b2: T,
}

impl<T: Real> BoundaryCondition<T> {
    pub fn new(a1: T, a2: T, b1: T, b2: T) -> Result<Self, ProblemError> {
        let finite = [a1, a2, b1, b2].iter().all(|v| v.is_finite());
        if !finite || (a1 == T::zero() && a2 == T::zero()) {
            return Err(ProblemError::DegenerateBoundary(a1.to_f64_lossy(), a2.to_f64_lossy()));
        }
        if b1 == T::zero() && b2 == T::zero() {
            return Err(ProblemError::DegenerateBoundary(b1.to_f64_lossy(), b2.to_f64_lossy()));
        }
        Ok(Self { a1, a2, b1, b2 })
    }

    pub fn dirichlet() -> Self {
        Self { a1: T::one(), a2: T::zero(), b1: T::one(), b2: T::zero() }
    }

    pub fn neumann() -> Self {
        Self { a1: T::zero(), a2: T::one(), b1: T::zero(), b2: T::one() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// `p ≡ w ≡ 1`.
    Schroedinger,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndpointKind {
    Regular,
    /// Singular endpoint handled by never evaluating coefficients there.
    TruncatedSingular,
}

/// Boundary Prüfer angles, `alpha ∈ [0, π)` and `beta ∈ (0, π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PruferAngles<T> {
    pub alpha: T,
    pub beta: T,
}

/// A Sturm–Liouville problem on a finite interval.
///
/// Cloning shares the coefficient closures and the evaluation counter.
#[derive(Clone)]
pub struct SlProblem<T> {
    name: String,
    q: CoefFn<T>,
    p: Option<CoefFn<T>>,
    w: Option<CoefFn<T>>,
    pub a: T,
    pub b: T,
    pub bc: BoundaryCondition<T>,
    pub left: EndpointKind,
    pub right: EndpointKind,
    evals: Arc<AtomicU64>,
}

impl<T: Real> SlProblem<T> {
    /// Schrödinger-form problem `−y″ + q y = λ y`.
    pub fn schroedinger(q: CoefFn<T>, a: T, b: T, bc: BoundaryCondition<T>) -> Result<Self, ProblemError> {
        check_interval(a, b)?;
        Ok(Self {
            name: "custom".into(),
            q,
            p: None,
            w: None,
            a,
            b,
            bc,
            left: EndpointKind::Regular,
            right: EndpointKind::Regular,
            evals: Arc::new(AtomicU64::new(0)),
        })
    }

    /// General form with positive `p` and `w`; only the order-2 method accepts it.
    pub fn general(
        p: CoefFn<T>,
        q: CoefFn<T>,
        w: CoefFn<T>,
        a: T,
        b: T,
        bc: BoundaryCondition<T>,
    ) -> Result<Self, ProblemError> {
        let mut s = Self::schroedinger(q, a, b, bc)?;
        s.p = Some(p);
        s.w = Some(w);
        Ok(s)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_endpoints(mut self, left: EndpointKind, right: EndpointKind) -> Self {
        self.left = left;
        self.right = right;
        self
    }

    pub fn with_bc(mut self, bc: BoundaryCondition<T>) -> Self {
        self.bc = bc;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn form(&self) -> Form {
        if self.p.is_none() && self.w.is_none() {
            Form::Schroedinger
        } else {
            Form::General
        }
    }

    pub fn q(&self, x: T) -> T {
        self.evals.fetch_add(1, Ordering::Relaxed);
        (self.q)(x)
    }

    pub fn p(&self, x: T) -> T {
        match &self.p {
            Some(f) => {
                self.evals.fetch_add(1, Ordering::Relaxed);
                f(x)
            }
            None => T::one(),
        }
    }

    pub fn w(&self, x: T) -> T {
        match &self.w {
            Some(f) => {
                self.evals.fetch_add(1, Ordering::Relaxed);
                f(x)
            }
            None => T::one(),
        }
    }

    /// Total coefficient evaluations performed so far, across all clones.
    pub fn evals(&self) -> u64 {
        self.evals.load(Ordering::Relaxed)
    }

    /// Gives this problem its own zeroed evaluation counter.
    pub fn detach_counter(mut self) -> Self {
        self.evals = Arc::new(AtomicU64::new(0));
        self
    }

    /// Same problem restricted to a different interval.
    pub fn with_interval(mut self, a: T, b: T) -> Result<Self, ProblemError> {
        check_interval(a, b)?;
        self.a = a;
        self.b = b;
        Ok(self)
    }
}

impl<T: Real> fmt::Debug for SlProblem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SlProblem")
            .field("name", &self.name)
            .field("a", &self.a)
            .field("b", &self.b)
            .field("bc", &self.bc)
            .field("form", &self.form())
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

fn check_interval<T: Real>(a: T, b: T) -> Result<(), ProblemError> {
    if a.is_finite() && b.is_finite() && a < b {
        Ok(())
    } else {
        Err(ProblemError::InvalidInterval { a: a.to_f64_lossy(), b: b.to_f64_lossy() })
    }
}

/// Reduces `atan2(num, den)` into `[0, π)`.
fn angle_mod_pi<T: Real>(num: T, den: T) -> T {
    let pi = T::PI();
    let r = num.atan2(den).rem_euclid(&pi);
    if r >= pi {
        T::zero()
    } else {
        r
    }
}

/// Solves `tan α = −S_a·a2/a1` in `[0, π)` and `tan β = −S_b·b2/b1` in `(0, π]`.
pub fn prufer_boundary_angles<T: Real>(problem: &SlProblem<T>, s_a: T, s_b: T) -> PruferAngles<T> {
    let bc = &problem.bc;
    let alpha = angle_mod_pi(-s_a * bc.a2, bc.a1);
    let beta = angle_mod_pi(-s_b * bc.b2, bc.b1);
    let beta = if beta == T::zero() { T::PI() } else { beta };
    PruferAngles { alpha, beta }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn zero_problem(bc: BoundaryCondition<f64>) -> SlProblem<f64> {
        SlProblem::schroedinger(Arc::new(|_| 0.0), 0.0, PI, bc).unwrap()
    }

    #[test]
    fn boundary_angle_examples() {
        let d = prufer_boundary_angles(&zero_problem(BoundaryCondition::dirichlet()), 1.0, 1.0);
        assert_eq!((d.alpha, d.beta), (0.0, PI));
        let d = prufer_boundary_angles(&zero_problem(BoundaryCondition::dirichlet()), 3.0, 0.5);
        assert_eq!((d.alpha, d.beta), (0.0, PI));

        let n = prufer_boundary_angles(&zero_problem(BoundaryCondition::neumann()), 2.0, 7.0);
        assert!((n.alpha - FRAC_PI_2).abs() < 1e-15);
        assert!((n.beta - FRAC_PI_2).abs() < 1e-15);

        let bc = BoundaryCondition::new(1.0, -1.0, 1.0, 0.0).unwrap();
        let m = prufer_boundary_angles(&zero_problem(bc), 1.0, 1.0);
        assert!((m.alpha - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn degenerate_bc_rejected() {
        assert!(BoundaryCondition::new(0.0, 0.0, 1.0, 0.0).is_err());
        assert!(BoundaryCondition::new(1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn bad_interval_rejected() {
        let q: CoefFn<f64> = Arc::new(|_| 0.0);
        assert!(SlProblem::schroedinger(q.clone(), 1.0, 1.0, BoundaryCondition::dirichlet()).is_err());
        assert!(SlProblem::schroedinger(q, 0.0, f64::INFINITY, BoundaryCondition::dirichlet()).is_err());
    }

    #[test]
    fn evaluation_counter_is_shared_by_clones() {
        let p = zero_problem(BoundaryCondition::dirichlet());
        let c = p.clone();
        p.q(0.1);
        c.q(0.2);
        assert_eq!(p.evals(), 2);
        let d = c.detach_counter();
        d.q(0.3);
        assert_eq!(d.evals(), 1);
        assert_eq!(p.evals(), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn boundary_angles_in_window(
            a1 in -10.0f64..10.0, a2 in -10.0f64..10.0,
            b1 in -10.0f64..10.0, b2 in -10.0f64..10.0,
            za in any::<bool>(), zb in any::<bool>(),
            sa in 0.01f64..100.0, sb in 0.01f64..100.0,
        ) {
            // exercise exact zeros too
            let a1 = if za { 0.0 } else { a1 };
            let b2 = if zb { 0.0 } else { b2 };
            let bc = match BoundaryCondition::new(a1, a2, b1, b2) {
                Ok(bc) => bc,
                Err(_) => return Ok(()),
            };
            let ang = prufer_boundary_angles(&zero_problem(bc), sa, sb);
            prop_assert!(ang.alpha >= 0.0 && ang.alpha < PI);
            prop_assert!(ang.beta > 0.0 && ang.beta <= PI);
        }
    }
}
