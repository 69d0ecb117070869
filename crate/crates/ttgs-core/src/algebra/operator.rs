use std::fmt;
use std::str::FromStr;

use super::{AlgebraError, Value};

/// A ternary interaction on the extended-real cost domain.
///
/// Implementations must be absorbing in every argument they depend on: if
/// such an argument is `+∞` the result is `+∞`.
pub trait TernaryOp {
    fn apply(&self, x: Value, y: Value, z: Value) -> Value;
}

/// The builtin ternary operator families.
///
/// In solver use the arguments are `(label of the earlier vertex, label of
/// the later vertex, weight of the closing edge)`, but the operators
/// themselves are plain functions on the domain.
#[derive(Debug, Clone, PartialEq)]
pub enum GammaOperator {
    /// `x + y + z`.
    Linear,
    /// `c₀·x + c₁·y + c₂·z` with nonnegative coefficients, not all zero.
    ///
    /// An argument whose coefficient is exactly zero is not depended on at
    /// all: its term contributes nothing even when the argument is `+∞`.
    /// Zero coefficients are what make the binary min-plus reduction
    /// (`weighted:0,1,1`) expressible.
    Weighted { coeffs: [f64; 3] },
    /// `max(x, y, z) + amplification · min(x, y, z)` with a strictly
    /// positive amplification factor.
    RiskAmp { amplification: f64 },
}

impl GammaOperator {
    pub fn linear() -> GammaOperator {
        GammaOperator::Linear
    }

    pub fn weighted(coeffs: [f64; 3]) -> Result<GammaOperator, AlgebraError> {
        for c in coeffs {
            if !c.is_finite() {
                return Err(AlgebraError::InvalidOperator(format!(
                    "weighted coefficient {c} is not finite"
                )));
            }
            if c < 0.0 {
                return Err(AlgebraError::InvalidOperator(format!(
                    "weighted coefficient {c} is negative"
                )));
            }
        }
        if coeffs.iter().all(|&c| c == 0.0) {
            return Err(AlgebraError::InvalidOperator(
                "weighted coefficients must not all be zero".into(),
            ));
        }
        Ok(GammaOperator::Weighted { coeffs })
    }

    pub fn risk_amp(amplification: f64) -> Result<GammaOperator, AlgebraError> {
        if !amplification.is_finite() || amplification <= 0.0 {
            return Err(AlgebraError::InvalidOperator(format!(
                "riskamp amplification must be finite and positive, got {amplification}"
            )));
        }
        Ok(GammaOperator::RiskAmp { amplification })
    }

    /// Canonical textual form, the inverse of [`GammaOperator::from_str`].
    pub fn spec(&self) -> String {
        self.to_string()
    }
}

impl TernaryOp for GammaOperator {
    fn apply(&self, x: Value, y: Value, z: Value) -> Value {
        match self {
            GammaOperator::Linear => {
                if x.is_infinite() || y.is_infinite() || z.is_infinite() {
                    Value::INFINITY
                } else {
                    Value::new(x.get() + y.get() + z.get())
                }
            }
            GammaOperator::Weighted { coeffs } => {
                let mut total = 0.0;
                for (&c, v) in coeffs.iter().zip([x, y, z]) {
                    if c == 0.0 {
                        continue;
                    }
                    if v.is_infinite() {
                        return Value::INFINITY;
                    }
                    total += c * v.get();
                }
                Value::new(total)
            }
            GammaOperator::RiskAmp { amplification } => {
                if x.is_infinite() || y.is_infinite() || z.is_infinite() {
                    Value::INFINITY
                } else {
                    let (a, b, c) = (x.get(), y.get(), z.get());
                    let hi = a.max(b).max(c);
                    let lo = a.min(b).min(c);
                    Value::new(hi + amplification * lo)
                }
            }
        }
    }
}

impl fmt::Display for GammaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaOperator::Linear => write!(f, "linear"),
            GammaOperator::Weighted { coeffs } => {
                write!(f, "weighted:{},{},{}", coeffs[0], coeffs[1], coeffs[2])
            }
            GammaOperator::RiskAmp { amplification } => write!(f, "riskamp:{amplification}"),
        }
    }
}

impl FromStr for GammaOperator {
    type Err = AlgebraError;

    /// Parses `linear`, `weighted:A,B,C` or `riskamp:L`.
    fn from_str(spec: &str) -> Result<GammaOperator, AlgebraError> {
        let bad = |reason: &str| AlgebraError::Spec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let (family, params) = match spec.split_once(':') {
            Some((family, params)) => (family, Some(params)),
            None => (spec, None),
        };
        match family {
            "linear" => match params {
                None => Ok(GammaOperator::Linear),
                Some(_) => Err(bad("linear takes no parameters")),
            },
            "weighted" => {
                let values = parse_params(params.ok_or_else(|| bad("expected weighted:A,B,C"))?)
                    .map_err(|reason| bad(&reason))?;
                let &[a, b, c] = values.as_slice() else {
                    return Err(bad("weighted takes exactly three parameters"));
                };
                GammaOperator::weighted([a, b, c]).map_err(|e| bad(&e.to_string()))
            }
            "riskamp" => {
                let values = parse_params(params.ok_or_else(|| bad("expected riskamp:L"))?)
                    .map_err(|reason| bad(&reason))?;
                let &[amplification] = values.as_slice() else {
                    return Err(bad("riskamp takes exactly one parameter"));
                };
                GammaOperator::risk_amp(amplification).map_err(|e| bad(&e.to_string()))
            }
            other => Err(bad(&format!("unknown operator family `{other}`"))),
        }
    }
}

/// Splits a comma-separated parameter list, rejecting non-finite entries.
pub(super) fn parse_params(params: &str) -> Result<Vec<f64>, String> {
    params
        .split(',')
        .map(|token| {
            let token = token.trim();
            let value: f64 = token
                .parse()
                .map_err(|_| format!("`{token}` is not a number"))?;
            if !value.is_finite() {
                return Err(format!("parameter `{token}` is not finite"));
            }
            Ok(value)
        })
        .collect()
}
