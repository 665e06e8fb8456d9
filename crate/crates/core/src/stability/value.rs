//! Exactly comparable values involving one square root.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactgeom::rational::{format_rational, to_f64, Rational};

/// The real number `sign · √square`, kept symbolically.
///
/// Invariant: `square ≥ 0`, and `sign = 0` iff `square = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedSquare {
    sign: i8,
    square: Rational,
}

impl SignedSquare {
    pub fn zero() -> Self {
        SignedSquare {
            sign: 0,
            square: Rational::zero(),
        }
    }

    /// `sign · √square`; the sign is forced to 0 when `square = 0`.
    pub fn new(sign: i8, square: Rational) -> Self {
        assert!(!square.is_negative(), "negative square");
        assert!((-1..=1).contains(&sign), "sign out of range");
        if square.is_zero() || sign == 0 {
            return Self::zero();
        }
        SignedSquare { sign, square }
    }

    /// The rational `x` itself.
    pub fn from_rational(x: &Rational) -> Self {
        let sign = if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        };
        Self::new(sign, x * x)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn square(&self) -> &Rational {
        &self.square
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Display-only approximation.
    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * to_f64(&self.square).sqrt()
    }

    /// Exact rendering: `"0/1"`, `"sqrt(p/q)"` or `"-sqrt(p/q)"`.
    pub fn to_exact_string(&self) -> String {
        match self.sign {
            0 => "0/1".to_string(),
            1 => format!("sqrt({})", format_rational(&self.square)),
            _ => format!("-sqrt({})", format_rational(&self.square)),
        }
    }

    /// `⌊sign · √square · 10^digits⌋`-style fixed point value, truncated toward
    /// zero. Used for decimal display with arbitrary digits.
    pub fn to_fixed_point(&self, digits: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(2 * digits);
        let scaled = (&self.square * Rational::from_integer(scale)).to_integer();
        BigInt::from(self.sign) * scaled.sqrt()
    }
}

impl Ord for SignedSquare {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Ordering::Equal,
                1 => self.square.cmp(&other.square),
                // both negative: the larger magnitude is the smaller value
                _ => other.square.cmp(&self.square),
            },
            o => o,
        }
    }
}

impl PartialOrd for SignedSquare {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

/// `μ = (μ₁, μ₂)`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StabilityValue {
    pub mu1: Rational,
    pub mu2: SignedSquare,
}

impl StabilityValue {
    pub fn zero() -> Self {
        StabilityValue {
            mu1: Rational::zero(),
            mu2: SignedSquare::zero(),
        }
    }
}

/// `c0 + ε c1` with `ε` a positive infinitesimal; lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncatedInvariant {
    pub c0: Rational,
    pub c1: SignedSquare,
}
