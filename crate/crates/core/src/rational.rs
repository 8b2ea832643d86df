//! Exact scalar arithmetic: big rationals, complex rationals, and the
//! `p/q` text form used by every file format in this crate.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator (guaranteed by `num_rational`).
pub type Rat = BigRational;

/// Complex number with exact rational real and imaginary parts.
pub type CRat = Complex<BigRational>;

/// Shorthand for small rational literals.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(num: i64) -> Rat {
    BigRational::from_integer(BigInt::from(num))
}

pub fn crat(re: Rat, im: Rat) -> CRat {
    Complex::new(re, im)
}

/// A complex rational is zero only when both parts vanish.
pub fn crat_is_zero(z: &CRat) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

/// Size surrogate used for pivot selection in exact elimination:
/// total bit length of numerator and denominator.
pub fn bit_size(r: &Rat) -> u64 {
    r.numer().bits() + r.denom().bits()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError(pub String);

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal: {}", self.0)
    }
}

impl std::error::Error for ParseRatError {}

/// Parse the `p/q` text form. A bare integer `p` is accepted as `p/1`.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    let bad = || ParseRatError(s.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Canonical text form: `p` when the denominator is one, else `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `true` when `r > 0`.
pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-7/3", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rat("3/-6").unwrap(), rat(-1, 2));
        assert_eq!(format_rat(&parse_rat("3/1").unwrap()), "3");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x/2").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn complex_arithmetic_is_exact() {
        let i = crat(int(0), int(1));
        let z = i.clone() * i.clone();
        assert_eq!(z, crat(int(-1), int(0)));
        assert!(!crat_is_zero(&z));
        assert!(crat_is_zero(&(z + crat(int(1), int(0)))));
    }
}
