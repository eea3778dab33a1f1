//! Exact Gaussian integers `a + bi`, generic over the signed primitive integer type.
//!
//! Arithmetic is checked: the operator impls panic on overflow instead of wrapping,
//! and the `checked_*` methods return `None`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{PrimInt, Signed};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Integer types usable as Gaussian-integer components.
pub trait GaussScalar: PrimInt + Signed + fmt::Display + fmt::Debug + std::hash::Hash {}

impl<T> GaussScalar for T where T: PrimInt + Signed + fmt::Display + fmt::Debug + std::hash::Hash {}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "(T, T)", into = "(T, T)")]
#[serde(bound(serialize = "T: GaussScalar + Serialize", deserialize = "T: GaussScalar + Deserialize<'de>"))]
pub struct Gaussian<T> {
    pub re: T,
    pub im: T,
}

impl<T: GaussScalar> From<(T, T)> for Gaussian<T> {
    fn from((re, im): (T, T)) -> Self {
        Self { re, im }
    }
}

impl<T: GaussScalar> From<Gaussian<T>> for (T, T) {
    fn from(z: Gaussian<T>) -> Self {
        (z.re, z.im)
    }
}

impl<T: GaussScalar> Gaussian<T> {
    pub const fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn from_int(re: T) -> Self {
        Self::new(re, T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re, -self.im)
    }

    /// `re² + im²`, or `None` on overflow.
    pub fn checked_norm(&self) -> Option<T> {
        self.re
            .checked_mul(&self.re)?
            .checked_add(&self.im.checked_mul(&self.im)?)
    }

    pub fn norm(&self) -> T {
        self.checked_norm().expect("Gaussian integer norm overflow")
    }

    /// `|re| + |im|`.
    pub fn mannheim(&self) -> T {
        self.re.abs() + self.im.abs()
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        Some(Self::new(self.re.checked_add(&rhs.re)?, self.im.checked_add(&rhs.im)?))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        Some(Self::new(self.re.checked_sub(&rhs.re)?, self.im.checked_sub(&rhs.im)?))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        let rr = self.re.checked_mul(&rhs.re)?;
        let ii = self.im.checked_mul(&rhs.im)?;
        let ri = self.re.checked_mul(&rhs.im)?;
        let ir = self.im.checked_mul(&rhs.re)?;
        Some(Self::new(rr.checked_sub(&ii)?, ri.checked_add(&ir)?))
    }

    /// Widen or narrow the component type, `None` if a component does not fit.
    pub fn cast<U: GaussScalar>(&self) -> Option<Gaussian<U>> {
        Some(Gaussian::new(U::from(self.re)?, U::from(self.im)?))
    }
}

impl<T: GaussScalar> Add for Gaussian<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("Gaussian integer addition overflow")
    }
}

impl<T: GaussScalar> Sub for Gaussian<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("Gaussian integer subtraction overflow")
    }
}

impl<T: GaussScalar> Mul for Gaussian<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("Gaussian integer multiplication overflow")
    }
}

impl<T: GaussScalar> Neg for Gaussian<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl<T: GaussScalar> fmt::Display for Gaussian<T> {
    /// Canonical literal: `a+bi`, `a-bi`, `bi`, `a`, with unit imaginary coefficients
    /// written as a bare `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = T::one();
        let imag = |f: &mut fmt::Formatter<'_>, im: T, lead: bool| -> fmt::Result {
            let sign = if im < T::zero() { "-" } else if lead { "" } else { "+" };
            if im.abs() == one {
                write!(f, "{sign}i")
            } else {
                write!(f, "{sign}{}i", im.abs())
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => imag(f, self.im, true),
            (false, false) => {
                write!(f, "{}", self.re)?;
                imag(f, self.im, false)
            }
        }
    }
}

impl<T: GaussScalar> fmt::Debug for Gaussian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: GaussScalar + FromStr> FromStr for Gaussian<T> {
    type Err = Error;

    /// Accepts `3`, `-2`, `i`, `-i`, `2i`, `1+2i`, `1-i`, `-1+1i`. Both `-` and `−` (U+2212)
    /// are read as minus; surrounding whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid Gaussian integer literal {s:?}"));
        let text: String = s.trim().replace('\u{2212}', "-");
        if text.is_empty() || text.chars().any(char::is_whitespace) {
            return Err(bad());
        }
        let int = |digits: &str| -> Result<T, Error> {
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            digits.parse::<T>().map_err(|_| bad())
        };
        let signed = |t: &str| -> Result<T, Error> {
            match t.strip_prefix('-') {
                Some(rest) => Ok(-int(rest)?),
                None => int(t.strip_prefix('+').unwrap_or(t)),
            }
        };

        let Some(body) = text.strip_suffix('i') else {
            return Ok(Self::from_int(signed(&text)?));
        };
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx)
            .last();
        let (re_part, im_part) = match split {
            Some(idx) => (Some(&body[..idx]), &body[idx..]),
            None => (None, body),
        };
        let im = match im_part {
            "" | "+" => T::one(),
            "-" => -T::one(),
            t => signed(t)?,
        };
        let re = match re_part {
            Some(r) => signed(r)?,
            None => T::zero(),
        };
        Ok(Self::new(re, im))
    }
}
