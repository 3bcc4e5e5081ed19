//! Nonnegative reals extended by `+∞`.

use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

/// A value in `[0, ∞]`. Arithmetic saturates at `Inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Inf,
}

pub use ExtReal::{Finite, Inf};

impl ExtReal {
    pub const ZERO: ExtReal = Finite(0.0);

    /// Maps `f64::INFINITY` to `Inf`; finite inputs are kept as is.
    pub fn from_f64(x: f64) -> ExtReal {
        if x == f64::INFINITY {
            Inf
        } else {
            Finite(x)
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn is_inf(self) -> bool {
        matches!(self, Inf)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Finite(x) => Some(x),
            Inf => None,
        }
    }

    /// `Inf` becomes `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            Finite(x) => x,
            Inf => f64::INFINITY,
        }
    }

    /// `c · self` for `c ≥ 0`; `0 · Inf = 0`.
    pub fn scale(self, c: f64) -> ExtReal {
        match self {
            Finite(x) => Finite(c * x),
            Inf if c > 0.0 => Inf,
            Inf => Finite(0.0),
        }
    }

    pub fn max(self, other: ExtReal) -> ExtReal {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Inf,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &ExtReal) -> Option<Ordering> {
        match (self, other) {
            (Inf, Inf) => Some(Ordering::Equal),
            (Inf, Finite(_)) => Some(Ordering::Greater),
            (Finite(_), Inf) => Some(Ordering::Less),
            (Finite(a), Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> ExtReal {
        ExtReal::from_f64(x)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(x) => write!(f, "{x}"),
            Inf => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inf_is_maximum() {
        assert!(Inf > Finite(1e300));
        assert!(Finite(0.0) < Finite(1.0));
        assert_eq!(Finite(3.0).max(Inf), Inf);
        assert_eq!(Finite(3.0).min(Inf), Finite(3.0));
    }

    #[test]
    fn saturating_arithmetic() {
        assert_eq!(Finite(1.0) + Inf, Inf);
        assert_eq!(Finite(1.0) + Finite(2.5), Finite(3.5));
        assert_eq!(Inf.scale(2.0), Inf);
        assert_eq!(Inf.scale(0.0), Finite(0.0));
        assert_eq!(ExtReal::from_f64(f64::INFINITY), Inf);
        assert_eq!(Inf.to_f64(), f64::INFINITY);
    }
}
