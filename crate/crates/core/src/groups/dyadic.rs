//! Exact dyadic rationals `m / 2^e`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A dyadic rational `mantissa / 2^exponent` kept in lowest terms: either
/// `exponent == 0` or `mantissa` is odd. Arithmetic panics on overflow of
/// the 128-bit mantissa, far outside anything the windows here produce.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: i128,
    exponent: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic {
        mantissa: 0,
        exponent: 0,
    };
    pub const ONE: Dyadic = Dyadic {
        mantissa: 1,
        exponent: 0,
    };

    pub fn new(mantissa: i128, exponent: u32) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn from_int(n: i128) -> Self {
        Dyadic::new(n, 0)
    }

    pub fn mantissa(&self) -> i128 {
        self.mantissa
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    fn normalize(&mut self) {
        if self.mantissa == 0 {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().min(self.exponent);
        self.mantissa >>= tz;
        self.exponent -= tz;
    }

    fn scaled_to(&self, exponent: u32) -> i128 {
        debug_assert!(exponent >= self.exponent);
        let shift = exponent - self.exponent;
        assert!(shift < 126, "dyadic exponent overflow");
        self.mantissa
            .checked_mul(1i128 << shift)
            .expect("dyadic mantissa overflow")
    }

    /// Multiply by `2^k` for any integer `k`.
    pub fn mul_pow2(&self, k: i32) -> Self {
        if k >= 0 {
            let k = k as u32;
            if k <= self.exponent {
                Dyadic::new(self.mantissa, self.exponent - k)
            } else {
                let shift = k - self.exponent;
                assert!(shift < 126, "dyadic exponent overflow");
                Dyadic::new(
                    self.mantissa
                        .checked_mul(1i128 << shift)
                        .expect("dyadic mantissa overflow"),
                    0,
                )
            }
        } else {
            Dyadic::new(self.mantissa, self.exponent + k.unsigned_abs())
        }
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa > 0
    }

    /// If `self / other` is a power of two `2^k` (both nonzero, same sign),
    /// return `k`.
    pub fn log2_ratio(&self, other: &Dyadic) -> Option<i32> {
        if self.mantissa == 0 || other.mantissa == 0 {
            return None;
        }
        if (self.mantissa < 0) != (other.mantissa < 0) {
            return None;
        }
        let (a, b) = (self.mantissa.unsigned_abs(), other.mantissa.unsigned_abs());
        let (ta, tb) = (a.trailing_zeros(), b.trailing_zeros());
        if a >> ta != b >> tb {
            return None;
        }
        Some(ta as i32 - tb as i32 + other.exponent as i32 - self.exponent as i32)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let e = self.exponent.max(rhs.exponent);
        let m = self
            .scaled_to(e)
            .checked_add(rhs.scaled_to(e))
            .expect("dyadic mantissa overflow");
        Dyadic::new(m, e)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        self.scaled_to(e).cmp(&other.scaled_to(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}/{}", self.mantissa, 1u128 << self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Dyadic {
    type Err = String;

    /// Accepts `"n"` or `"n/d"` with `d` a power of two.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: i128 = num.parse().map_err(|_| format!("bad numerator in `{s}`"))?;
        let den: u128 = den.parse().map_err(|_| format!("bad denominator in `{s}`"))?;
        if den == 0 || !den.is_power_of_two() {
            return Err(format!("denominator of `{s}` is not a power of two"));
        }
        Ok(Dyadic::new(num, den.trailing_zeros()))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All dyadics in the open unit interval with exponent at most `depth`,
/// in increasing order.
pub fn unit_interval_window(depth: u32) -> Vec<Dyadic> {
    let den = 1i128 << depth;
    (1..den).map(|m| Dyadic::new(m, depth)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let d = Dyadic::new(12, 4);
        assert_eq!((d.mantissa(), d.exponent()), (3, 2));
        assert_eq!(Dyadic::new(0, 9), Dyadic::ZERO);
        assert_eq!(Dyadic::new(8, 3), Dyadic::ONE);
    }

    #[test]
    fn parse_and_display() {
        let d: Dyadic = "6/16".parse().unwrap();
        assert_eq!(d.to_string(), "3/8");
        assert!("1/3".parse::<Dyadic>().is_err());
        assert_eq!("-5".parse::<Dyadic>().unwrap(), Dyadic::from_int(-5));
    }

    #[test]
    fn power_of_two_ratio() {
        let a: Dyadic = "3/8".parse().unwrap();
        let b: Dyadic = "3/2".parse().unwrap();
        assert_eq!(a.log2_ratio(&b), Some(-2));
        assert_eq!(b.log2_ratio(&a), Some(2));
        assert_eq!(a.log2_ratio(&Dyadic::ONE), None);
    }

    #[test]
    fn window_size() {
        let w = unit_interval_window(6);
        assert_eq!(w.len(), 63);
        assert!(w.windows(2).all(|p| p[0] < p[1]));
    }

    proptest! {
        #[test]
        fn order_matches_rationals(a in -1000i128..1000, e in 0u32..10, b in -1000i128..1000, f in 0u32..10) {
            let x = Dyadic::new(a, e);
            let y = Dyadic::new(b, f);
            // compare a/2^e with b/2^f by cross multiplication
            let lhs = a * (1i128 << f);
            let rhs = b * (1i128 << e);
            prop_assert_eq!(x.cmp(&y), lhs.cmp(&rhs));
            prop_assert_eq!((x + y) - y, x);
            prop_assert!(x.exponent() == 0 || x.mantissa() % 2 != 0);
        }
    }
}
