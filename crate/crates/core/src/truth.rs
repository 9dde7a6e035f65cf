//! Three-valued truth constants.

use std::fmt;
use std::ops::Not;

/// A Kleene truth value.
///
/// The derived `Ord` is the truth order: `False < Unknown < True`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    False,
    Unknown,
    True,
}

impl TruthValue {
    /// `self ≤t other` in the order f < u < t.
    #[inline]
    pub fn leq_t(self, other: TruthValue) -> bool {
        self <= other
    }

    /// Precision order on single truth values: `u` is below everything,
    /// `t` and `f` are only below themselves.
    #[inline]
    pub fn leq_p(self, other: TruthValue) -> bool {
        self == TruthValue::Unknown || self == other
    }

    #[inline]
    pub fn min_t(self, other: TruthValue) -> TruthValue {
        self.min(other)
    }

    #[inline]
    pub fn max_t(self, other: TruthValue) -> TruthValue {
        self.max(other)
    }

    pub fn is_true(self) -> bool {
        self == TruthValue::True
    }

    pub fn is_false(self) -> bool {
        self == TruthValue::False
    }

    pub fn symbol(self) -> char {
        match self {
            TruthValue::True => 't',
            TruthValue::False => 'f',
            TruthValue::Unknown => 'u',
        }
    }
}

/// Free-function form of [`TruthValue::leq_t`].
pub fn truth_leq_t(a: TruthValue, b: TruthValue) -> bool {
    a.leq_t(b)
}

impl Not for TruthValue {
    type Output = TruthValue;

    fn not(self) -> TruthValue {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            TruthValue::Unknown => TruthValue::Unknown,
        }
    }
}

impl From<bool> for TruthValue {
    fn from(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}
