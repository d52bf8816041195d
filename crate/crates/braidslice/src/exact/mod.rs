//! Exact rational arithmetic: scalars, vectors, matrices, rank,
//! symmetric-matrix signature, and strict-inequality feasibility with
//! interior witnesses.
//!
//! All values are arbitrary-precision rationals ([`Rat`]), kept reduced
//! with positive denominators by construction. Operations never round;
//! `Infeasible` from the LP routines is an answer, not an error.

mod lp;
mod mat;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use lp::{feasible_affine_strict, feasible_strict, feasible_strict_homogeneous, Feasibility};
pub use mat::{RatMat, Signature};

/// Arbitrary-precision rational number. Always reduced, denominator > 0.
pub type Rat = num_rational::BigRational;

/// Vector of exact rationals.
pub type RatVec = Vec<Rat>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("cannot parse `{0}` as a rational number")]
    ParseRat(String),
}

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num/den` as a reduced rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_vec(entries: &[i64]) -> RatVec {
    entries.iter().map(|&n| rat(n)).collect()
}

/// Parses `p`, `p/q`, or a plain decimal like `-0.25` (denominator a
/// power of ten) into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, ExactError> {
    let s = s.trim();
    let err = || ExactError::ParseRat(s.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int_part.starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| err())?
        };
        let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
        let frac: BigInt = frac_part.parse().map_err(|_| err())?;
        let mut value = Rat::new(int_part.magnitude().clone().into(), BigInt::one())
            + Rat::new(frac, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rat::from_integer(n))
}

/// Approximate `f64` value, for display only.
pub fn to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Exact dot product.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], c: &Rat) -> RatVec {
    a.iter().map(|x| x * c).collect()
}

pub fn neg(a: &[Rat]) -> RatVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(Rat::is_zero)
}

/// Scales a vector by the positive factor that clears all denominators
/// and divides out the common integer content. The zero vector maps to
/// itself. Sign is preserved, so direction comparisons stay exact.
pub fn primitive_direction(a: &[Rat]) -> RatVec {
    use num_integer::Integer;
    if is_zero_vec(a) {
        return a.to_vec();
    }
    let mut lcm = BigInt::one();
    for x in a {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = a.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = gcd.gcd(n);
    }
    ints.into_iter()
        .map(|n| Rat::from_integer(n / &gcd))
        .collect()
}

/// True if `a = c * b` for some rational `c > 0`.
pub fn positively_proportional(a: &[Rat], b: &[Rat]) -> bool {
    if a.len() != b.len() || is_zero_vec(a) || is_zero_vec(b) {
        return false;
    }
    let mut factor: Option<Rat> = None;
    for (x, y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return false,
            (false, false) => {
                let c = x / y;
                match &factor {
                    None => {
                        if !c.is_positive() {
                            return false;
                        }
                        factor = Some(c);
                    }
                    Some(f) => {
                        if &c != f {
                            return false;
                        }
                    }
                }
            }
        }
    }
    factor.is_some()
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_integer_fraction_decimal() {
        assert_eq!(parse_rat("7").unwrap(), rat(7));
        assert_eq!(parse_rat("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rat("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rat(" 2/4 ").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat("-.5").unwrap(), ratio(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("1.2.3").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn primitive_direction_clears_denominators() {
        let v = vec![ratio(5, 98) * rat(-1), ratio(5, 98) * rat(5), ratio(5, 98) * rat(-4)];
        assert_eq!(primitive_direction(&v), rat_vec(&[-1, 5, -4]));
        assert_eq!(primitive_direction(&rat_vec(&[4, -6, 2])), rat_vec(&[2, -3, 1]));
        assert_eq!(primitive_direction(&rat_vec(&[0, 0])), rat_vec(&[0, 0]));
    }

    #[test]
    fn positive_proportionality() {
        assert!(positively_proportional(
            &rat_vec(&[2, -4, 6]),
            &rat_vec(&[1, -2, 3])
        ));
        assert!(!positively_proportional(
            &rat_vec(&[-1, 2, -3]),
            &rat_vec(&[1, -2, 3])
        ));
        assert!(!positively_proportional(
            &rat_vec(&[1, 0, 3]),
            &rat_vec(&[1, 1, 3])
        ));
        assert!(!positively_proportional(&rat_vec(&[0, 0]), &rat_vec(&[0, 0])));
    }
}
