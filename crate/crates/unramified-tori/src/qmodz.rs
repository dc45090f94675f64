//! Exact arithmetic in Q/Z.
//!
//! Character values, dual-torus coordinates and rectifier values are all
//! torsion rationals; every value here is kept reduced and normalized into
//! the half-open interval [0, 1).

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A rational number modulo 1, stored reduced with 0 <= value < 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ(Ratio<BigInt>);

impl QmodZ {
    pub fn zero() -> Self {
        QmodZ(Ratio::zero())
    }

    pub fn half() -> Self {
        QmodZ(Ratio::new(BigInt::one(), BigInt::from(2)))
    }

    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DimensionMismatch("zero denominator".into()));
        }
        Ok(Self::from_ratio(Ratio::new(numer.into(), denom)))
    }

    pub fn from_ratio(r: Ratio<BigInt>) -> Self {
        QmodZ(r.clone() - r.floor())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_ratio(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_ratio(&self.0 - &other.0)
    }

    pub fn neg(&self) -> Self {
        Self::from_ratio(-self.0.clone())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_ratio(&self.0 * k)
    }

    /// Smallest m >= 1 with m * self == 0; this is the reduced denominator.
    pub fn additive_order(&self) -> BigInt {
        self.0.denom().clone()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &Ratio<BigInt> {
        &self.0
    }

    /// The multiplicative reading e^{2 pi i x}, printed as +1/-1 when the
    /// value is 0 or 1/2 and as a rational exponent otherwise.
    pub fn as_sign_string(&self) -> String {
        if self.is_zero() {
            "+1".to_string()
        } else if *self == Self::half() {
            "-1".to_string()
        } else {
            format!("e(2*pi*i*{})", self)
        }
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
