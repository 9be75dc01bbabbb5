use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProblemError {
    #[error("unknown builtin problem `{0}`")]
    UnknownProblem(String),
    #[error("builtin `{problem}` requires parameter `{param}`")]
    MissingParam { problem: String, param: String },
    #[error("invalid parameter `{param}`: {reason}")]
    InvalidParam { param: String, reason: String },
    #[error("invalid interval [{a}, {b}]: need finite a < b")]
    InvalidInterval { a: f64, b: f64 },
    #[error("boundary condition coefficients ({0}, {1}) are both zero")]
    DegenerateBoundary(f64, f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("function `{name}` at position {pos} takes {expected} argument(s), got {got}")]
    Arity { name: String, pos: usize, expected: usize, got: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("coefficient evaluation at x = {x} returned a non-finite value")]
    CoefficientEvaluation { x: f64 },
    #[error("method {method} requires a problem in Schrödinger form")]
    NotSchroedinger { method: &'static str },
    #[error("adaptive meshing needs an order-8 method, got {method}")]
    AdaptiveNeedsOrder8 { method: &'static str },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("stepsize selection did not converge at x = {x} after {retries} retries")]
    StepsizeNoConvergence { x: f64, retries: usize },
    #[error("stepsize underflow at x = {x} (h = {h})")]
    StepsizeUnderflow { x: f64, h: f64 },
    #[error("no bracket for index {k} after {expansions} expansions")]
    BracketNotFound { k: usize, expansions: usize },
    #[error("mismatch is not monotone near lambda = {lambda} (mesh too coarse?)")]
    NonMonotone { lambda: f64 },
    #[error("propagation produced a non-finite state at lambda = {lambda}")]
    NonFinite { lambda: f64 },
    #[error("eigenvalue iteration for index {k} did not converge")]
    NoConvergence { k: usize },
    #[error("no nonzero eigenfunction at lambda = {lambda}")]
    ZeroFunction { lambda: f64 },
    #[error("singular refinement did not converge after {bisections} bisections")]
    SingularNoConvergence { bisections: usize },
    #[error("index drift: expected {expected}, mismatch indicates {found}")]
    IndexDrift { expected: usize, found: i64 },
}
