//! Rational scalars and vectors.
//!
//! Every quantity in the crate is an arbitrary-precision rational in lowest
//! terms; nothing is ever rounded.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always normalized with a positive denominator.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n / d`. Panics if `d == 0`.
pub fn qr(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` (optional sign, decimal digits only).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Renders as `"p/q"`, including `"0/1"` and `"5/1"` for integers.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of the denominators of `values` (1 if empty).
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// A vector of rationals, used for points of `M_Q` and directions in `N_Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VecQ(Vec<Rational>);

impl VecQ {
    pub fn new(coords: Vec<Rational>) -> Self {
        VecQ(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        VecQ(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        VecQ(coords.iter().map(|&c| q(c)).collect())
    }

    pub fn from_bigints(coords: &[BigInt]) -> Self {
        VecQ(coords.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Unit vector `e_i` in dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &VecQ) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, c: &Rational) -> VecQ {
        VecQ(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Rational, other: &VecQ) -> VecQ {
        VecQ(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + c * b)
                .collect(),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.0.iter().map(|x| x.to_integer()).collect())
    }

    /// The primitive integral vector spanning the same ray, or `None` for 0.
    pub fn primitive(&self) -> Option<VecQ> {
        if self.is_zero() {
            return None;
        }
        let l = lcm_denominators(&self.0);
        let ints: Vec<BigInt> = self.0.iter().map(|x| (x * &l).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        Some(VecQ::from_bigints(
            &ints.into_iter().map(|x| x / &g).collect::<Vec<_>>(),
        ))
    }

    /// Whether `other = c * self` for some rational `c > 0`.
    pub fn same_ray(&self, other: &VecQ) -> bool {
        match (self.primitive(), other.primitive()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }
}

impl From<Vec<Rational>> for VecQ {
    fn from(v: Vec<Rational>) -> Self {
        VecQ(v)
    }
}

impl Index<usize> for VecQ {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a VecQ {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Add for &VecQ {
    type Output = VecQ;
    fn add(self, rhs: &VecQ) -> VecQ {
        VecQ(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &VecQ {
    type Output = VecQ;
    fn sub(self, rhs: &VecQ) -> VecQ {
        VecQ(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &VecQ {
    type Output = VecQ;
    fn neg(self) -> VecQ {
        VecQ(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for VecQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if x.is_integer() {
                write!(f, "{}", x.numer())?;
            } else {
                write!(f, "{}", x)?;
            }
        }
        write!(f, ")")
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}
