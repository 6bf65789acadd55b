//! Exact nonnegative rationals for conditional bounds.

use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::Error;

/// A nonnegative rational number kept in lowest terms.
///
/// Equality is structural, which is sound because the representation is
/// canonical; ordering cross-multiplies in `u128` and never rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Number of bits in the binary representation of `n`; zero takes one bit.
pub fn bit_length(n: u64) -> usize {
    if n == 0 {
        1
    } else {
        (u64::BITS - n.leading_zeros()) as usize
    }
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };
    pub const HALF: Rational = Rational { num: 1, den: 2 };

    /// Returns `None` when `den` is zero.
    pub fn new(num: u64, den: u64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let g = gcd(num, den);
        Some(Rational {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_one(&self) -> bool {
        self.num == 1 && self.den == 1
    }

    pub fn in_unit_interval(&self) -> bool {
        self.num <= self.den
    }

    /// Binary size of the number: bit length of numerator plus denominator.
    pub fn bit_size(&self) -> usize {
        bit_length(self.num) + bit_length(self.den)
    }

    /// `self <= part / whole`, decided exactly. `whole` must be positive.
    pub fn le_ratio(&self, part: u64, whole: u64) -> bool {
        (self.num as u128) * (whole as u128) <= (part as u128) * (self.den as u128)
    }

    /// `part / whole <= self`, decided exactly. `whole` must be positive.
    pub fn ge_ratio(&self, part: u64, whole: u64) -> bool {
        (part as u128) * (self.den as u128) <= (self.num as u128) * (whole as u128)
    }

    /// Smallest integer `x` with `self * n <= x`.
    pub fn ceil_mul(&self, n: u64) -> u128 {
        let p = self.num as u128 * n as u128;
        let d = self.den as u128;
        p.div_ceil(d)
    }

    /// Largest integer `x` with `x <= self * n`.
    pub fn floor_mul(&self, n: u64) -> u128 {
        self.num as u128 * n as u128 / self.den as u128
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q`, finite decimals such as `0.25`, and plain integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidRational(s.to_string());
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());

        if let Some((p, q)) = s.split_once('/') {
            if !digits(p) || !digits(q) {
                return Err(bad());
            }
            let p: u64 = p.parse().map_err(|_| bad())?;
            let q: u64 = q.parse().map_err(|_| bad())?;
            return Rational::new(p, q).ok_or_else(bad);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if !digits(int) || !digits(frac) || frac.len() > 18 {
                return Err(bad());
            }
            let den = 10u64.pow(frac.len() as u32);
            let int: u64 = int.parse().map_err(|_| bad())?;
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            let num = int
                .checked_mul(den)
                .and_then(|v| v.checked_add(frac))
                .ok_or_else(bad)?;
            return Rational::new(num, den).ok_or_else(bad);
        }
        if !digits(s) {
            return Err(bad());
        }
        let n: u64 = s.parse().map_err(|_| bad())?;
        Ok(Rational { num: n, den: 1 })
    }
}
