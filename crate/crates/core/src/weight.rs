//! Exact certainty weights in `[0, 1]`.
//!
//! Weights are compared with strict inequality when deciding weighted
//! argumentative consequence, so they are stored as an integer count of
//! millionths rather than as binary floating point.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Number of representable steps between 0 and 1.
pub const SCALE: u32 = 1_000_000;
const DIGITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(u32);

impl Weight {
    pub const ZERO: Weight = Weight(0);
    pub const ONE: Weight = Weight(SCALE);

    /// Builds a weight from a count of millionths; `None` above 1.
    pub const fn from_millionths(units: u32) -> Option<Weight> {
        if units > SCALE {
            None
        } else {
            Some(Weight(units))
        }
    }

    /// `num / den`, rounded down to the nearest millionth.
    pub fn from_ratio_floor(num: u64, den: u64) -> Option<Weight> {
        if den == 0 || num > den {
            return None;
        }
        let units = num * u64::from(SCALE) / den;
        Some(Weight(units as u32))
    }

    pub const fn millionths(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / f64::from(SCALE)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let int = self.0 / SCALE;
        let frac = self.0 % SCALE;
        if frac == 0 {
            return write!(f, "{int}");
        }
        let digits = format!("{frac:0width$}", width = DIGITS);
        write!(f, "{int}.{}", digits.trim_end_matches('0'))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidWeight(s.to_string());
        let s = s.trim();
        let (int, frac) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let frac = frac.trim_end_matches('0');
        if frac.len() > DIGITS {
            return Err(Error::InvalidWeight(format!(
                "{s} has more than {DIGITS} decimal places"
            )));
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let mut frac_units: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        for _ in frac.len()..DIGITS {
            frac_units *= 10;
        }
        let units = int
            .checked_mul(u64::from(SCALE))
            .and_then(|v| v.checked_add(frac_units))
            .ok_or_else(bad)?;
        if units > u64::from(SCALE) {
            return Err(Error::InvalidWeight(format!("{s} is greater than 1")));
        }
        Ok(Weight(units as u32))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.as_f64())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(deserializer)?;
        if !(0.0..=1.0).contains(&v) {
            return Err(serde::de::Error::custom(format!(
                "weight {v} outside [0, 1]"
            )));
        }
        Ok(Weight((v * f64::from(SCALE)).round() as u32))
    }
}
