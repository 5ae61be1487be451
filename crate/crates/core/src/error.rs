use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// The s-domain algebra is deliberately restricted to the function shapes the
/// solver actually produces, so most variants flag an input outside that
/// closed family rather than a numerical failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Evaluation requested at (or within tolerance of) a pole location.
    #[error("evaluation at s = {s} hits the pole at s = {pole}")]
    PoleEvaluation { s: f64, pole: f64 },

    /// A factor with non-integer exponent was evaluated off its real branch.
    /// `(s - a)^p` with fractional `p` is only defined here for real `s > a`.
    #[error("branch restriction: (s - {branch_point})^{exponent} requires real s > {branch_point}")]
    BranchDomain { branch_point: f64, exponent: f64 },

    /// The function cannot be expanded around s = 0 with the supported
    /// factor shapes (e.g. a fractional power, or a branch point at 0).
    #[error("cannot expand around s = 0: {reason}")]
    NotExpandable { reason: String },

    /// An operand outside the closed function family an operation supports.
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    /// No residue inversion exists for this shape (essential singularity,
    /// improper rational part, fractional exponents, ...).
    #[error("no residue inversion for this input: {0}")]
    NotInvertible(String),

    /// The Bromwich line Re s = a does not lie to the right of every pole.
    #[error("contour Re s = {a} does not pass right of the pole at s = {pole}")]
    ContourThroughPole { a: f64, pole: f64 },

    /// A moment integral does not converge (some term decays too slowly).
    #[error("moment of order {order} diverges: term with decay rate {decay} is not integrable against xi^{order}")]
    DivergentMoment { order: usize, decay: f64 },

    /// Oscillator parameter outside its physical domain.
    #[error("domain error: {0}")]
    DomainError(String),

    /// Quantum number not in the allowed spectrum of the oscillator.
    #[error("quantum number n = {n} is not in the bound spectrum ({detail})")]
    InvalidQuantumNumber { n: u32, detail: String },

    /// Closed-form states are only tabulated for n = 0 and n = 1 here.
    #[error("closed-form states for this oscillator are implemented for n <= 1, got n = {n}")]
    UnsupportedExcitation { n: u32 },

    /// The potential supports no bound state at the given parameters.
    #[error("the potential supports no bound states at these parameters")]
    NoBoundStates,

    /// A quadrature or sampling grid would exceed the configured point cap.
    #[error("point budget exceeded: grid needs {needed} points, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    /// Filesystem failure while writing an output artifact.
    #[error("i/o failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
