//! Tropical (min, +) weights over the nonnegative integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonnegative path weight. `u64::MAX` is reserved as [`Weight::INF`].
///
/// `⊕` is [`Weight::plus`] (minimum, neutral element `INF`) and `⊗` is
/// [`Weight::times`] (addition saturating to `INF`, neutral element `0`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(u64);

impl Weight {
    pub const INF: Weight = Weight(u64::MAX);
    pub const ZERO: Weight = Weight(0);
    /// Largest finite weight.
    pub const MAX_FINITE: Weight = Weight(u64::MAX - 1);

    /// Builds a finite weight. `u64::MAX` is the sentinel, so it maps to `INF`.
    #[inline]
    pub const fn new(v: u64) -> Self {
        Weight(v)
    }

    #[inline]
    pub const fn raw(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn is_inf(self) -> bool {
        self.0 == u64::MAX
    }

    #[inline]
    pub fn finite(self) -> Option<u64> {
        (!self.is_inf()).then_some(self.0)
    }

    /// ⊕: the semiring sum, i.e. the minimum.
    #[inline]
    pub fn plus(self, other: Weight) -> Weight {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }

    /// ⊗: the semiring product, i.e. saturating addition with `INF` absorbing.
    #[inline]
    pub fn times(self, other: Weight) -> Weight {
        // u64::MAX is INF, so plain saturation already absorbs and never wraps.
        Weight(self.0.saturating_add(other.0))
    }
}

impl TryFrom<i64> for Weight {
    type Error = Error;

    fn try_from(v: i64) -> Result<Self> {
        if v < 0 {
            return Err(Error::Domain(format!("negative weight {v}")));
        }
        Ok(Weight(v as u64))
    }
}

impl From<u32> for Weight {
    fn from(v: u32) -> Self {
        Weight(u64::from(v))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            f.write_str("INF")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Weight::INF);
        }
        let v: i128 = s
            .parse()
            .map_err(|_| Error::Domain(format!("not a weight: {s:?}")))?;
        if v < 0 {
            return Err(Error::Domain(format!("negative weight {v}")));
        }
        if v >= i128::from(u64::MAX) {
            return Err(Error::Domain(format!("weight {v} collides with INF")));
        }
        Ok(Weight(v as u64))
    }
}

/// Single-source shortest distances in original vertex order; `INF` marks
/// unreachable vertices.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DistanceVector(pub Vec<Weight>);

impl DistanceVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Weight] {
        &self.0
    }
}

impl std::ops::Index<usize> for DistanceVector {
    type Output = Weight;
    fn index(&self, i: usize) -> &Weight {
        &self.0[i]
    }
}

impl fmt::Display for DistanceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]")
    }
}
