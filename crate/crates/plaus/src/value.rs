//! Plausibility values for every supported carrier.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, in_unit_interval, Rat};
use crate::worlds::Event;

/// Degree of surprise: a natural number or infinity. The plausibility
/// order on ranks is the reverse of the numeric order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    Finite(u64),
    Infinite,
}

impl Rank {
    pub fn numeric_le(self, other: Rank) -> bool {
        match (self, other) {
            (Rank::Finite(a), Rank::Finite(b)) => a <= b,
            (_, Rank::Infinite) => true,
            (Rank::Infinite, Rank::Finite(_)) => false,
        }
    }

    pub fn plus(self, other: Rank) -> Rank {
        match (self, other) {
            (Rank::Finite(a), Rank::Finite(b)) => Rank::Finite(a + b),
            _ => Rank::Infinite,
        }
    }

    pub fn numeric_min(self, other: Rank) -> Rank {
        if self.numeric_le(other) {
            self
        } else {
            other
        }
    }

    /// `self - other` when defined: the solution of `x + other = self`.
    pub fn checked_sub(self, other: Rank) -> Option<Rank> {
        match (self, other) {
            (_, Rank::Infinite) => None,
            (Rank::Infinite, Rank::Finite(_)) => Some(Rank::Infinite),
            (Rank::Finite(a), Rank::Finite(b)) => (a >= b).then(|| Rank::Finite(a - b)),
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(k) => write!(f, "{k}"),
            Rank::Infinite => write!(f, "inf"),
        }
    }
}

/// Lower/upper probability pair. `(a,b) <= (a',b')` iff equal or `b <= a'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalValue {
    pub lower: Rat,
    pub upper: Rat,
}

impl IntervalValue {
    pub fn new(lower: Rat, upper: Rat) -> Result<Self> {
        if !in_unit_interval(&lower) || !in_unit_interval(&upper) || lower > upper {
            return Err(Error::MalformedMeasure(format!(
                "bad interval [{}, {}]",
                fmt_rat(&lower),
                fmt_rat(&upper)
            )));
        }
        Ok(IntervalValue { lower, upper })
    }
}

impl fmt::Display for IntervalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", fmt_rat(&self.lower), fmt_rat(&self.upper))
    }
}

/// Element of the indexed-family carrier: a vector over the index set with
/// entries in `[0,1]` or `*` (undefined, stored as `None`), collapsed into
/// the distinguished bottom/top classes eagerly. A vector whose defined
/// entries are all zero is identified with `Bot`; all one, with `Top`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlpValue {
    Bot,
    Top,
    Vector(Vec<Option<Rat>>),
}

impl PlpValue {
    /// Builds and normalizes a vector value. At least one entry must be
    /// defined and every defined entry must lie in `[0,1]`.
    pub fn vector(entries: Vec<Option<Rat>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if entries.iter().all(|e| e.is_none()) {
            return Err(Error::MalformedMeasure(
                "family vector must have at least one defined entry".into(),
            ));
        }
        for e in entries.iter().flatten() {
            if !in_unit_interval(e) {
                return Err(Error::MalformedMeasure(format!(
                    "family vector entry {} outside [0,1]",
                    fmt_rat(e)
                )));
            }
        }
        if entries.iter().flatten().all(|e| e.is_zero()) {
            return Ok(PlpValue::Bot);
        }
        if entries.iter().flatten().all(|e| e.is_one()) {
            return Ok(PlpValue::Top);
        }
        Ok(PlpValue::Vector(entries))
    }

    pub fn is_const(&self) -> bool {
        !matches!(self, PlpValue::Vector(_))
    }
}

impl fmt::Display for PlpValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlpValue::Bot => write!(f, "bot"),
            PlpValue::Top => write!(f, "top"),
            PlpValue::Vector(es) => {
                let parts: Vec<String> = es
                    .iter()
                    .map(|e| match e {
                        Some(r) => fmt_rat(r),
                        None => "*".to_string(),
                    })
                    .collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// Element of the order lifted from an unconditional measure: a value
/// tagged with the conditioning event it was scaled by, plus distinguished
/// bottom/top classes. Values under different conditioning events are
/// incomparable except through the extremes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiftedValue {
    Bot,
    Top,
    Scaled { value: Box<Value>, given: Event },
}

impl fmt::Display for LiftedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftedValue::Bot => write!(f, "bot"),
            LiftedValue::Top => write!(f, "top"),
            LiftedValue::Scaled { value, given } => write!(f, "({value} given {given})"),
        }
    }
}

/// A plausibility value in one of the supported carriers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Prob(Rat),
    Rank(Rank),
    Poss(Rat),
    Plp(PlpValue),
    Interval(IntervalValue),
    Lifted(LiftedValue),
}

impl Value {
    pub fn carrier_name(&self) -> &'static str {
        match self {
            Value::Prob(_) => "probability",
            Value::Rank(_) => "ranking",
            Value::Poss(_) => "possibility",
            Value::Plp(_) => "indexed-family",
            Value::Interval(_) => "interval",
            Value::Lifted(_) => "lifted",
        }
    }

    pub fn as_prob(&self) -> &Rat {
        match self {
            Value::Prob(r) => r,
            _ => panic!("expected probability value, got {self}"),
        }
    }

    pub fn as_rank(&self) -> Rank {
        match self {
            Value::Rank(k) => *k,
            _ => panic!("expected ranking value, got {self}"),
        }
    }

    pub fn as_poss(&self) -> &Rat {
        match self {
            Value::Poss(r) => r,
            _ => panic!("expected possibility value, got {self}"),
        }
    }

    pub fn as_plp(&self) -> &PlpValue {
        match self {
            Value::Plp(v) => v,
            _ => panic!("expected indexed-family value, got {self}"),
        }
    }

    pub fn as_interval(&self) -> &IntervalValue {
        match self {
            Value::Interval(v) => v,
            _ => panic!("expected interval value, got {self}"),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Prob(r) => write!(f, "{}", fmt_rat(r)),
            Value::Rank(k) => write!(f, "{k}"),
            Value::Poss(r) => write!(f, "{}", fmt_rat(r)),
            Value::Plp(v) => write!(f, "{v}"),
            Value::Interval(v) => write!(f, "{v}"),
            Value::Lifted(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn plp_vectors_collapse_to_the_distinguished_classes() {
        let bot = PlpValue::vector(vec![Some(rat(0, 1)), None, Some(rat(0, 1))]).unwrap();
        assert_eq!(bot, PlpValue::Bot);
        let top = PlpValue::vector(vec![Some(rat(1, 1)), None]).unwrap();
        assert_eq!(top, PlpValue::Top);
        let mid = PlpValue::vector(vec![Some(rat(1, 2)), None]).unwrap();
        assert!(matches!(mid, PlpValue::Vector(_)));
        // normalization is idempotent: rebuilding the same entries gives
        // the same value
        let again = PlpValue::vector(vec![Some(rat(1, 2)), None]).unwrap();
        assert_eq!(mid, again);
    }

    #[test]
    fn plp_vector_needs_a_defined_entry() {
        assert!(PlpValue::vector(vec![None, None]).is_err());
        assert!(PlpValue::vector(vec![]).is_err());
        assert!(PlpValue::vector(vec![Some(rat(3, 2))]).is_err());
    }

    #[test]
    fn interval_bounds_validated() {
        assert!(IntervalValue::new(rat(1, 2), rat(1, 4)).is_err());
        assert!(IntervalValue::new(rat(0, 1), rat(1, 1)).is_ok());
    }
}
