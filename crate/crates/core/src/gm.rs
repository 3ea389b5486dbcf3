//! The Gompertz-Makeham lifetime law.
//!
//! Hazard `h(x) = alpha·e^{beta·x} + lambda`, survival
//! `S(x) = exp(-lambda·x - (alpha/beta)(e^{beta·x} - 1))`. All survival math
//! runs in log space; the `beta = 0` boundary is evaluated through the exact
//! limit `(e^{beta·x} - 1)/beta → x`, which turns the law into an exponential
//! with rate `alpha + lambda`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{EvalError, EXP_CAP};
use crate::rng::SplitMix64;

/// Absolute tolerance the quantile inversion targets on the cdf scale.
pub const QUANTILE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("alpha must be finite and > 0, got {0}")]
    Alpha(f64),
    #[error("beta must be finite and >= 0, got {0}")]
    Beta(f64),
    #[error("lambda must be finite and >= 0, got {0}")]
    Lambda(f64),
}

/// One insuree's `(alpha, beta, lambda)` triple.
///
/// `alpha` is the initial mortality, `beta` the exponential coefficient of
/// mortality increase, `lambda` the age-independent mortality, all per unit
/// time. `beta = 0` and `lambda = 0` boundaries are accepted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct GMParams {
    alpha: f64,
    beta: f64,
    lambda: f64,
}

#[derive(Deserialize)]
struct RawParams {
    alpha: f64,
    beta: f64,
    lambda: f64,
}

impl TryFrom<RawParams> for GMParams {
    type Error = ParamError;
    fn try_from(raw: RawParams) -> Result<Self, ParamError> {
        GMParams::new(raw.alpha, raw.beta, raw.lambda)
    }
}

impl GMParams {
    pub fn new(alpha: f64, beta: f64, lambda: f64) -> Result<Self, ParamError> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(ParamError::Alpha(alpha));
        }
        if !beta.is_finite() || beta < 0.0 {
            return Err(ParamError::Beta(beta));
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(ParamError::Lambda(lambda));
        }
        Ok(GMParams {
            alpha,
            beta,
            lambda,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn check_x(&self, x: f64) -> Result<(), EvalError> {
        if !x.is_finite() || x < 0.0 {
            return Err(EvalError::domain(format!("x must be >= 0, got {x}")));
        }
        if self.beta * x > EXP_CAP {
            return Err(EvalError::ExpOverflow { arg: self.beta * x });
        }
        Ok(())
    }

    /// `alpha·e^{beta·x} + lambda`.
    pub fn hazard(&self, x: f64) -> Result<f64, EvalError> {
        self.check_x(x)?;
        Ok(self.alpha * (self.beta * x).exp() + self.lambda)
    }

    /// `log S(x) = -lambda·x - (alpha/beta)(e^{beta·x} - 1)`, computed with
    /// `exp_m1` so small `beta·x` loses no precision; `beta = 0` uses the
    /// exact limit `alpha·x`.
    pub fn log_survival(&self, x: f64) -> Result<f64, EvalError> {
        self.check_x(x)?;
        let growth = if self.beta == 0.0 {
            self.alpha * x
        } else {
            self.alpha * (self.beta * x).exp_m1() / self.beta
        };
        Ok(-(self.lambda * x + growth))
    }

    /// `exp(log_survival)`, flushed to 0 on underflow.
    pub fn survival(&self, x: f64) -> Result<f64, EvalError> {
        Ok(self.log_survival(x)?.exp())
    }

    pub fn cdf(&self, x: f64) -> Result<f64, EvalError> {
        // 1 - e^z evaluated stably for small |z|
        Ok(-self.log_survival(x)?.exp_m1())
    }

    pub fn pdf(&self, x: f64) -> Result<f64, EvalError> {
        Ok(self.hazard(x)? * self.survival(x)?)
    }

    /// Inverse cdf by a bracketed bisection/Newton hybrid on log-survival.
    /// `q = 0` returns 0 exactly; accuracy `|cdf(x) - q| <= 1e-12`.
    pub fn quantile(&self, q: f64) -> Result<f64, EvalError> {
        if !q.is_finite() || !(0.0..1.0).contains(&q) {
            return Err(EvalError::domain(format!(
                "quantile needs 0 <= q < 1, got {q}"
            )));
        }
        if q == 0.0 {
            return Ok(0.0);
        }
        // Solve log_survival(x) = ln(1-q); the left side decreases from 0.
        let target = (-q).ln_1p();
        let mut lo = 0.0_f64;
        let mut hi = 1.0_f64;
        loop {
            match self.log_survival(hi) {
                Ok(ls) if ls <= target => break,
                Ok(_) => {
                    lo = hi;
                    hi *= 2.0;
                }
                Err(e) => return Err(e),
            }
            if hi > 1e300 {
                return Err(EvalError::domain(
                    "quantile bracket search diverged".to_string(),
                ));
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..200 {
            let g = self.log_survival(x)? - target;
            // |cdf - q| ≈ (1-q)·|g|
            if (1.0 - q) * g.abs() <= 0.25 * QUANTILE_TOL || hi - lo <= f64::EPSILON * hi {
                return Ok(x);
            }
            if g >= 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let newton = x + g / self.hazard(x)?;
            x = if newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
        }
        Ok(x)
    }

    /// `n` inverse-cdf draws from the documented SplitMix64 stream; identical
    /// `(seed, n)` give identical sequences on every platform.
    pub fn sample(&self, seed: u64, n: usize) -> Result<Vec<f64>, EvalError> {
        let mut rng = SplitMix64::new(seed);
        (0..n).map(|_| self.quantile(rng.next_f64())).collect()
    }
}
