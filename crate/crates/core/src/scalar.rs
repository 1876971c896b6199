use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_traits::{FromPrimitive, Num};

/// An exact field.
///
/// Elimination decides rank by testing entries against zero, so the scalar
/// must have exact arithmetic and exact equality. Rational types from
/// `num-rational` qualify; floating point types do not (they lack `Eq` and
/// `Hash`, which keeps them out by construction).
pub trait Field:
    Num + Neg<Output = Self> + Clone + Eq + Hash + Debug + Display + FromStr + FromPrimitive + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every exact field contains the integers")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }

    /// Parses the `p/q` (or `p`) notation used by every file format.
    fn parse_exact(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
}

impl<T> Field for T where
    T: Num + Neg<Output = T> + Clone + Eq + Hash + Debug + Display + FromStr + FromPrimitive + Send + Sync + 'static
{
}
