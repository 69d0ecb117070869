use std::cmp::Ordering;
use std::fmt;

/// A point of the cost domain `ℝ ∪ {+∞}`.
///
/// `Value` is a plain wrapper around `f64` that keeps NaN and `-∞` out of
/// the domain, which makes the ordering total: `Ord` is implemented and
/// agrees with the usual `<` on reals, with `+∞` as the maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Value(f64);

impl Value {
    /// Neutral element of [`Value::oplus`].
    pub const INFINITY: Value = Value(f64::INFINITY);

    /// Cost of the empty walk.
    pub const ZERO: Value = Value(0.0);

    /// Wraps a raw float.
    ///
    /// Panics on NaN or `-∞`; untrusted text goes through the parsers, which
    /// reject non-members before this constructor runs.
    pub fn new(raw: f64) -> Value {
        assert!(!raw.is_nan(), "NaN is outside the cost domain");
        assert!(
            raw != f64::NEG_INFINITY,
            "negative infinity is outside the cost domain"
        );
        Value(raw)
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Idempotent addition: the minimum of the two operands.
    pub fn oplus(self, other: Value) -> Value {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }

    /// True when `self` is strictly below `other` in the `⊕` order, i.e.
    /// replacing `other` by `self` is a real improvement.
    pub fn strictly_improves(self, other: Value) -> bool {
        self.0 < other.0
    }

    /// Equality within an absolute tolerance; two infinities compare equal.
    pub fn approx_eq(self, other: Value, tolerance: f64) -> bool {
        if self.is_infinite() && other.is_infinite() {
            true
        } else {
            (self.0 - other.0).abs() <= tolerance
        }
    }
}

impl Eq for Value {}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Value) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Value) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}
