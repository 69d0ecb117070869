use std::fmt;
use std::str::FromStr;

use super::operator::parse_params;
use super::{AlgebraError, Value};

/// Folds an edge triple `(cost, time, risk)` into a single scalar weight.
///
/// Both builtin maps are monotone nondecreasing in each component on the
/// nonnegative orthant and send finite triples to finite values.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalMap {
    /// `w₀·cost + w₁·time + w₂·risk` with nonnegative weights.
    WeightedSum { weights: [f64; 3] },
    /// `cost + time·(1 + scale·risk)`: risk inflates the time term.
    RiskScaled { scale: f64 },
}

impl EvalMap {
    pub fn weighted_sum(weights: [f64; 3]) -> Result<EvalMap, AlgebraError> {
        for w in weights {
            if !w.is_finite() || w < 0.0 {
                return Err(AlgebraError::InvalidEvalMap(format!(
                    "sum weight {w} must be finite and nonnegative"
                )));
            }
        }
        Ok(EvalMap::WeightedSum { weights })
    }

    pub fn risk_scaled(scale: f64) -> Result<EvalMap, AlgebraError> {
        if !scale.is_finite() || scale < 0.0 {
            return Err(AlgebraError::InvalidEvalMap(format!(
                "riskscaled scale must be finite and nonnegative, got {scale}"
            )));
        }
        Ok(EvalMap::RiskScaled { scale })
    }

    /// Evaluates the map on one triple. Components are finite by network
    /// construction, so the result is finite as well.
    pub fn evaluate(&self, cost: f64, time: f64, risk: f64) -> Value {
        debug_assert!(cost.is_finite() && time.is_finite() && risk.is_finite());
        match self {
            EvalMap::WeightedSum { weights } => {
                Value::new(weights[0] * cost + weights[1] * time + weights[2] * risk)
            }
            EvalMap::RiskScaled { scale } => Value::new(cost + time * (1.0 + scale * risk)),
        }
    }

    /// Canonical textual form, the inverse of [`EvalMap::from_str`].
    pub fn spec(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for EvalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalMap::WeightedSum { weights } => {
                write!(f, "sum:{},{},{}", weights[0], weights[1], weights[2])
            }
            EvalMap::RiskScaled { scale } => write!(f, "riskscaled:{scale}"),
        }
    }
}

impl FromStr for EvalMap {
    type Err = AlgebraError;

    /// Parses `sum:WC,WT,WR` or `riskscaled:MU`.
    fn from_str(spec: &str) -> Result<EvalMap, AlgebraError> {
        let bad = |reason: &str| AlgebraError::Spec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let (family, params) = match spec.split_once(':') {
            Some((family, params)) => (family, params),
            None => return Err(bad("expected sum:WC,WT,WR or riskscaled:MU")),
        };
        match family {
            "sum" => {
                let values = parse_params(params).map_err(|reason| bad(&reason))?;
                let &[wc, wt, wr] = values.as_slice() else {
                    return Err(bad("sum takes exactly three parameters"));
                };
                EvalMap::weighted_sum([wc, wt, wr]).map_err(|e| bad(&e.to_string()))
            }
            "riskscaled" => {
                let values = parse_params(params).map_err(|reason| bad(&reason))?;
                let &[scale] = values.as_slice() else {
                    return Err(bad("riskscaled takes exactly one parameter"));
                };
                EvalMap::risk_scaled(scale).map_err(|e| bad(&e.to_string()))
            }
            other => Err(bad(&format!("unknown eval family `{other}`"))),
        }
    }
}
