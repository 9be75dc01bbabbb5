//! Eigenvalues of regular and truncated-singular Sturm–Liouville problems
//!
//! ```text
//! −(p y′)′ + q y = λ w y,   a1 y(a) + a2 p(a) y′(a) = 0,   b1 y(b) + b2 p(b) y′(b) = 0
//! ```
//!
//! by coefficient approximation: a piecewise-constant reference propagator
//! corrected by Neumann or Magnus series terms whose oscillatory integrals are
//! evaluated in closed form, combined with Prüfer-phase shooting.
//!
//! The numerical core is generic over [`Real`] (`f32`, `f64`); the aliases
//! at the crate root fix the common `f64` instantiation.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod mesh;
pub mod problem;
pub mod propagator;
pub mod reference;
pub mod scalar;
pub mod shoot;
pub mod singular;
pub mod specfun;

pub use error::{ParseError, ProblemError, SolveError};
pub use mesh::{ErrorEstimate, Mesh, MeshStats};
pub use problem::{
    builtin, parse_potential, prufer_boundary_angles, BoundaryCondition, EndpointKind, Form, PruferAngles, SlProblem,
};
pub use propagator::{interval_coefficients, Direction, IntervalData, Method};
pub use scalar::Real;
pub use shoot::{EigenResult, ShootState, Solver};
pub use singular::{solve_singular, SingularReport};
pub use specfun::{eta0, expm_tracefree, xi, Mat2};

pub type Mat2f64 = Mat2<f64>;
pub type Mat2f32 = Mat2<f32>;
pub type Problem64 = SlProblem<f64>;
pub type Problem32 = SlProblem<f32>;
pub type Interval64 = IntervalData<f64>;
pub type Interval32 = IntervalData<f32>;
pub type Mesh64 = Mesh<f64>;
pub type Mesh32 = Mesh<f32>;
pub type EigenResult64 = EigenResult<f64>;
pub type SingularReport64 = SingularReport<f64>;
