//! Truncated singular left endpoints: solve on `[a+ε, b]` with `[a, a+ε]`
//! prepended, then bisect the leading interval until successive eigenvalue
//! approximations agree.

use crate::error::SolveError;
use crate::mesh::{adaptive_on, Mesh};
use crate::problem::SlProblem;
use crate::propagator::{IntervalData, Method};
use crate::scalar::Real;
use crate::shoot::{EigenResult, Solver};

const MAX_BISECTIONS: usize = 30;

#[derive(Clone, Debug)]
pub struct SingularReport<T> {
    pub result: EigenResult<T>,
    pub nbisec: usize,
    pub epsilon: T,
    /// Eigenvalue after the initial solve and after each bisection.
    pub history: Vec<T>,
    /// Intervals in the initial mesh, the prepended one included.
    pub nint: usize,
    /// Intervals in the final mesh.
    pub nint_final: usize,
}

/// Shooting tolerance used for the inner solves, well below any sensible `tol`.
fn inner_tol<T: Real>(tol: T) -> T {
    (tol * T::lit(1e-4)).max(T::lit(1e-13)).min(T::lit(1e-11))
}

pub fn solve_singular<T: Real>(
    problem: &SlProblem<T>,
    k: usize,
    epsilon: T,
    tol: T,
    method: Method,
) -> Result<SingularReport<T>, SolveError> {
    if !(epsilon > T::zero() && epsilon < problem.b - problem.a) {
        return Err(SolveError::InvalidArgument(format!("epsilon = {epsilon} outside (0, b − a)")));
    }
    if !(tol > T::zero()) {
        return Err(SolveError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let before = problem.evals();
    let mut mesh: Mesh<T> = adaptive_on(problem, problem.a + epsilon, problem.b, tol, method)?;
    mesh.match_index = mesh.default_match_index(problem.left);
    // a cubic model of the singular term can change sign and add spurious nodes
    let lead = IntervalData::from_problem(problem, problem.a, epsilon, method.nu())?.reference_only();
    mesh.prepend(lead);
    let nint = mesh.len();

    let stol = inner_tol(tol);
    let mut result = Solver::new(problem, &mesh).eigenvalue(k, stol)?;
    let mut history = vec![result.lambda];
    let mut nbisec = 0;
    loop {
        if nbisec >= MAX_BISECTIONS {
            return Err(SolveError::SingularNoConvergence { bisections: nbisec });
        }
        mesh.bisect_leading(problem)?;
        nbisec += 1;
        let solver = Solver::new(problem, &mesh);
        let prev = result.lambda;
        // prev must still lie strictly between the new λ_{k−1} and λ_{k+1}
        let offset = solver.mismatch(prev)? / T::PI() - T::from_usize_exact(k);
        if offset.abs() >= T::one() {
            let found = offset.trunc() + T::from_usize_exact(k);
            return Err(SolveError::IndexDrift { expected: k, found: found.to_i64().unwrap_or(i64::MIN) });
        }
        result = solver.eigenvalue_near(k, stol, prev)?;
        history.push(result.lambda);
        if (result.lambda - prev).abs() <= tol {
            break;
        }
    }
    result.fevals = problem.evals() - before;
    Ok(SingularReport { result, nbisec, epsilon, history, nint, nint_final: mesh.len() })
}
