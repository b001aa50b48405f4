//! Exact rational scalars and dense rational vectors.
//!
//! Every quantity in this crate is a `Scalar` (arbitrary-precision rational,
//! kept in lowest terms with a positive denominator) or a `Vector` of them.
//! No floating point is used anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced, denominator > 0.
pub type Scalar = BigRational;

/// Dense point / objective / direction. The derived `Ord` on `Vec` is the
/// coordinatewise lexicographic order, which is exactly the tie-break order
/// used throughout the crate.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn vec_i64(coords: &[i64]) -> Vector {
    coords.iter().map(|&c| int(c)).collect()
}

pub fn zeros(d: usize) -> Vector {
    vec![Scalar::zero(); d]
}

pub fn ones(d: usize) -> Vector {
    vec![Scalar::one(); d]
}

pub fn unit(d: usize, j: usize) -> Vector {
    let mut v = zeros(d);
    v[j] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(v: &[Scalar], s: &Scalar) -> Vector {
    v.iter().map(|x| x * s).collect()
}

pub fn neg(v: &[Scalar]) -> Vector {
    v.iter().map(|x| -x).collect()
}

/// a + s*b, in one pass.
pub fn add_scaled(a: &[Scalar], s: &Scalar, b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn check_dim(v: &[Scalar], expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: v.len(),
        });
    }
    Ok(())
}

/// Parses the wire format for rationals: "p/q" or "p" with optional sign,
/// exactly and without any rounding.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = || Error::ParseScalar(text.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(bad());
    }
    let (num_str, den_str) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let num: BigInt = num_str.parse().map_err(|_| bad())?;
    let den: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// Formats a rational as "p/q", or "p" when the denominator is 1.
pub fn format_scalar(s: &Scalar) -> String {
    s.to_string()
}

pub fn format_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(format_scalar).collect();
    format!("({})", parts.join(", "))
}

/// True if every coordinate has denominator 1.
pub fn is_integer_vector(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Binary encoding length of a rational: 1 + bits(|num|) + bits(den).
pub fn scalar_bits(s: &Scalar) -> u64 {
    1 + s.numer().bits() + s.denom().bits()
}

/// Encoding length of a vector: d plus the coordinate lengths.
pub fn vector_bits(v: &[Scalar]) -> u64 {
    v.len() as u64 + v.iter().map(scalar_bits).sum::<u64>()
}

/// Signum as an i8 in {-1, 0, 1}.
pub fn sign(s: &Scalar) -> i8 {
    if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for text in ["3", "-7", "2/3", "-5/9", "0"] {
            let s = parse_scalar(text).unwrap();
            assert_eq!(format_scalar(&s), text);
        }
        // reduction happens on parse
        assert_eq!(format_scalar(&parse_scalar("4/6").unwrap()), "2/3");
        assert_eq!(format_scalar(&parse_scalar("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_junk() {
        for text in ["", "1.5", "1/0", "a/b", "1/2/3", "2 /3"] {
            assert!(parse_scalar(text).is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn exact_arithmetic_round_trips() {
        let a = ratio(1, 3);
        let b = ratio(1, 6);
        assert_eq!(&a + &b, ratio(1, 2));
        assert_eq!((&a + &b) - &b, a);
    }

    #[test]
    fn dot_and_sub() {
        let a = vec_i64(&[1, 2, 3]);
        let b = vec_i64(&[4, 5, 6]);
        assert_eq!(dot(&a, &b), int(32));
        assert_eq!(sub(&b, &a), vec_i64(&[3, 3, 3]));
    }

    #[test]
    fn lexicographic_order_on_vectors() {
        assert!(vec_i64(&[1, 0]) > vec_i64(&[0, 1]));
        assert!(vec_i64(&[1, 1]) > vec_i64(&[1, 0]));
    }
}
