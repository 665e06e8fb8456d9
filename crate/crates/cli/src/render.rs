//! Exact and decimal renderings. Decimals are display annotations only and are
//! never parsed back.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use toricstab_core::{format_rational, parse_rational, Matrix, Rational, SignedSquare, VecQ};

use crate::error::{CliError, CliResult};

pub fn exact(r: &Rational) -> String {
    format_rational(r)
}

pub fn exact_vec(v: &VecQ) -> Vec<String> {
    v.iter().map(exact).collect()
}

pub fn exact_matrix(m: &Matrix, n: usize) -> Vec<Vec<String>> {
    (0..n)
        .map(|i| (0..n).map(|j| exact(&m[(i, j)])).collect())
        .collect()
}

/// `x` rounded half away from zero to `digits` places.
pub fn decimal(x: &Rational, digits: u32) -> String {
    let scale = Rational::from_integer(BigInt::from(10u32).pow(digits + 1));
    let t = (x.abs() * scale).to_integer();
    let sign = if x.is_negative() { -1 } else { 1 };
    fixed_point(sign, &round_last(&t), digits)
}

/// `sign · √square` rounded half away from zero to `digits` places.
pub fn decimal_sqrt(s: &SignedSquare, digits: u32) -> String {
    let t = s.to_fixed_point(digits + 1).abs();
    fixed_point(s.sign(), &round_last(&t), digits)
}

pub fn decimal_vec(v: &VecQ, digits: u32) -> Vec<String> {
    v.iter().map(|x| decimal(x, digits)).collect()
}

// `t` holds one guard digit; since it is truncated, adding 5 and dropping the
// digit rounds the underlying exact value correctly.
fn round_last(t: &BigInt) -> BigInt {
    (t + 5u32) / 10u32
}

fn fixed_point(sign: i8, magnitude: &BigInt, digits: u32) -> String {
    let mut s = magnitude.to_string();
    let d = digits as usize;
    if s.len() <= d {
        s = format!("{}{s}", "0".repeat(d + 1 - s.len()));
    }
    if d > 0 {
        s.insert(s.len() - d, '.');
    }
    if sign < 0 && !magnitude.is_zero() {
        s.insert(0, '-');
    }
    s
}

/// Inverse of [`SignedSquare::to_exact_string`].
pub fn parse_signed_square(s: &str) -> Option<SignedSquare> {
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, s),
    };
    match rest.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => {
            let sq = parse_rational(inner)?;
            if !sq.is_positive() {
                return None;
            }
            Some(SignedSquare::new(sign, sq))
        }
        None => parse_rational(s)
            .filter(Zero::is_zero)
            .map(|_| SignedSquare::zero()),
    }
}

pub fn parse_exact(field: &str, s: &str) -> CliResult<Rational> {
    parse_rational(s).ok_or_else(|| CliError::Input(format!("{field}: not a rational: {s:?}")))
}

pub fn parse_exact_vec(field: &str, v: &[String]) -> CliResult<VecQ> {
    v.iter()
        .enumerate()
        .map(|(i, s)| parse_exact(&format!("{field}[{i}]"), s))
        .collect::<CliResult<Vec<_>>>()
        .map(VecQ::new)
}

/// Parses a `--v` argument: comma-separated rationals.
pub fn parse_direction(s: &str) -> CliResult<VecQ> {
    let coords = s
        .split(',')
        .map(|c| parse_exact("--v", c))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(VecQ::new(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use toricstab_core::qr;

    #[test]
    fn rounding() {
        assert_eq!(decimal(&qr(1, 3), 4), "0.3333");
        assert_eq!(decimal(&qr(2, 3), 4), "0.6667");
        assert_eq!(decimal(&qr(-1, 8), 2), "-0.13");
        assert_eq!(decimal(&qr(-1, 1000), 2), "0.00");
        assert_eq!(decimal(&qr(7, 2), 0), "4");
        assert_eq!(decimal(&qr(-12345, 100), 1), "-123.5");
    }

    #[test]
    fn sqrt_rendering() {
        assert_eq!(
            decimal_sqrt(&SignedSquare::new(-1, qr(1, 2)), 6),
            "-0.707107"
        );
        assert_eq!(decimal_sqrt(&SignedSquare::new(1, qr(4, 1)), 3), "2.000");
        assert_eq!(decimal_sqrt(&SignedSquare::zero(), 2), "0.00");
    }

    #[test]
    fn signed_square_round_trip() {
        for s in [
            SignedSquare::zero(),
            SignedSquare::new(1, qr(3, 7)),
            SignedSquare::new(-1, qr(1, 2)),
        ] {
            assert_eq!(parse_signed_square(&s.to_exact_string()), Some(s));
        }
        assert_eq!(parse_signed_square("sqrt(-1/2)"), None);
        assert_eq!(parse_signed_square("1/2"), None);
    }

    #[test]
    fn directions() {
        assert_eq!(parse_direction("0,-1").unwrap(), VecQ::from_ints(&[0, -1]));
        assert_eq!(
            parse_direction("1/2, 3").unwrap(),
            VecQ::new(vec![qr(1, 2), qr(3, 1)])
        );
        assert!(parse_direction("1,x").is_err());
    }
}
