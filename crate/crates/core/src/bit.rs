use std::fmt;
use std::ops::{BitAnd, BitXor, Not};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A classical bit. The protocols are written in ⊕/· algebra, so `^` is XOR
/// and `&` is the product.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(try_from = "u8", into = "u8")]
pub struct Bit(bool);

impl Bit {
    pub const ZERO: Bit = Bit(false);
    pub const ONE: Bit = Bit(true);
    pub const BOTH: [Bit; 2] = [Bit::ZERO, Bit::ONE];

    pub fn new(value: u8) -> Result<Self> {
        match value {
            0 => Ok(Bit::ZERO),
            1 => Ok(Bit::ONE),
            v => Err(Error::InvalidBit(v)),
        }
    }

    pub const fn from_bool(b: bool) -> Self {
        Bit(b)
    }

    pub const fn is_one(self) -> bool {
        self.0
    }

    pub const fn value(self) -> u8 {
        self.0 as u8
    }

    /// ±1 spin value, with 0 ↦ +1 and 1 ↦ −1.
    pub fn sign(self) -> f64 {
        if self.0 {
            -1.0
        } else {
            1.0
        }
    }

    /// Picks `if_one` when set, `if_zero` otherwise.
    pub fn select<T>(self, if_zero: T, if_one: T) -> T {
        if self.0 {
            if_one
        } else {
            if_zero
        }
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        Bit(b)
    }
}

impl From<Bit> for u8 {
    fn from(b: Bit) -> u8 {
        b.value()
    }
}

impl From<Bit> for bool {
    fn from(b: Bit) -> bool {
        b.0
    }
}

impl TryFrom<u8> for Bit {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        Bit::new(value)
    }
}

impl BitXor for Bit {
    type Output = Bit;

    fn bitxor(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

impl BitAnd for Bit {
    type Output = Bit;

    fn bitand(self, rhs: Bit) -> Bit {
        Bit(self.0 & rhs.0)
    }
}

impl Not for Bit {
    type Output = Bit;

    fn not(self) -> Bit {
        Bit(!self.0)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}
