use thiserror::Error;

/// Exponent cap for `exp` arguments. `e^700 ≈ 1.01e304` still leaves headroom
/// for the `alpha/beta` prefactor before hitting f64 infinity.
pub const EXP_CAP: f64 = 700.0;

/// Evaluation failure. Overflow is signalled, never returned as a silent
/// infinity; callers that aggregate verdicts map these to INCONCLUSIVE.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("exponent {arg} exceeds the cap {EXP_CAP}")]
    ExpOverflow { arg: f64 },
    #[error("domain error: {0}")]
    Domain(String),
}

impl EvalError {
    pub fn domain(msg: impl Into<String>) -> Self {
        EvalError::Domain(msg.into())
    }
}
