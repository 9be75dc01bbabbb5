use std::collections::HashMap;
use std::sync::Arc;

use crate::error::ProblemError;
use crate::problem::{BoundaryCondition, CoefFn, EndpointKind, SlProblem};
use crate::scalar::Real;

const NAMES: [&str; 5] = ["coffey_evans", "woods_saxon", "woods_saxon_singular", "constant", "harmonic"];

pub fn builtin_names() -> &'static [&'static str] {
    &NAMES
}

/// Normalizes `coffey-evans` and `coffey_evans` to the same key.
pub fn canonical_name(name: &str) -> String {
    name.trim().to_ascii_lowercase().replace('-', "_")
}

fn param(params: &HashMap<String, f64>, keys: &[&str]) -> Option<f64> {
    keys.iter().find_map(|k| params.get(*k).copied())
}

fn required(params: &HashMap<String, f64>, problem: &str, keys: &[&str]) -> Result<f64, ProblemError> {
    param(params, keys).ok_or_else(|| ProblemError::MissingParam { problem: problem.into(), param: keys[0].into() })
}

/// `q(x) = −50(1 − 5t/(3(1+t)))/(1+t)` with `t = e^{(x−7)/0.6}`.
pub fn woods_saxon_q<T: Real>(x: T) -> T {
    let t = ((x - T::lit(7.0)) / T::lit(0.6)).exp();
    let one = T::one();
    -T::lit(50.0) * (one - T::lit(5.0) * t / (T::lit(3.0) * (one + t))) / (one + t)
}

pub fn builtin<T: Real>(name: &str, params: &HashMap<String, f64>) -> Result<SlProblem<T>, ProblemError> {
    let key = canonical_name(name);
    let dirichlet = BoundaryCondition::dirichlet();
    let problem = match key.as_str() {
        "coffey_evans" => {
            let beta = T::lit(required(params, &key, &["beta", "β"])?);
            let q: CoefFn<T> = Arc::new(move |x: T| {
                let two = T::lit(2.0);
                let s = (two * x).sin();
                -two * beta * (two * x).cos() + beta * beta * s * s
            });
            SlProblem::schroedinger(q, -T::FRAC_PI_2(), T::FRAC_PI_2(), dirichlet)?
        }
        "woods_saxon" => SlProblem::schroedinger(Arc::new(woods_saxon_q::<T>), T::zero(), T::lit(15.0), dirichlet)?,
        "woods_saxon_singular" => {
            let l = required(params, &key, &["l"])?;
            if !(l >= 0.0) {
                return Err(ProblemError::InvalidParam { param: "l".into(), reason: "must be ≥ 0".into() });
            }
            let x_max = param(params, &["x_max", "xmax"]).unwrap_or(20.0);
            let ll = T::lit(l * (l + 1.0));
            let q: CoefFn<T> = Arc::new(move |x: T| woods_saxon_q(x) + ll / (x * x));
            SlProblem::schroedinger(q, T::zero(), T::lit(x_max), dirichlet)?
                .with_endpoints(EndpointKind::TruncatedSingular, EndpointKind::Regular)
        }
        "constant" => {
            let c = T::lit(param(params, &["c"]).unwrap_or(0.0));
            SlProblem::schroedinger(Arc::new(move |_| c), T::zero(), T::PI(), dirichlet)?
        }
        "harmonic" => {
            let half = param(params, &["L", "half_width"]).unwrap_or(6.0);
            if !(half > 0.0) {
                return Err(ProblemError::InvalidParam { param: "L".into(), reason: "must be > 0".into() });
            }
            let half = T::lit(half);
            SlProblem::schroedinger(Arc::new(|x: T| x * x), -half, half, dirichlet)?
        }
        _ => return Err(ProblemError::UnknownProblem(name.into())),
    };
    Ok(problem.with_name(key))
}
