//! Exact scalar type and the text conversions used by the file formats.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision fraction, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.125"` or `"1e-3"`.
///
/// Decimals are converted exactly: `"0.133"` becomes `133/1000`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = |why: &str| Error::parse(format!("{s:?}"), why.to_string());
    if s.is_empty() {
        return Err(bad("empty number"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad("bad numerator"))?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad("bad denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp = i32::from_str(&s[pos + 1..]).map_err(|_| bad("bad exponent"))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad("no digits"));
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(bad("not a number"));
    }
    let all_digits = format!("{whole}{frac}");
    let mut value =
        Rational::from_integer(BigInt::from_str(&all_digits).map_err(|_| bad("not a number"))?);
    let scale = exponent - frac.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Exact text form: `"p/q"` or a bare integer.
pub fn format_exact(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal text rounded half away from zero to `digits` places, trailing zeros trimmed.
pub fn format_decimal(q: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q.abs() * Rational::from_integer(scale.clone());
    let mut units = scaled.floor().to_integer();
    if scaled.fract() * int(2) >= Rational::one() {
        units += 1;
    }
    let (whole, frac) = units.div_rem(&scale);
    let mut out = String::new();
    if q.is_negative() && !units.is_zero() {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 && !frac.is_zero() {
        let frac = format!("{:0>width$}", frac.to_string(), width = digits);
        out.push('.');
        out.push_str(frac.trim_end_matches('0'));
    }
    out
}

/// Lossy conversion for display and tolerance comparisons only.
pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Scales `v` by a positive factor so that its entries are coprime integers.
///
/// The zero vector is returned unchanged.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|n| Rational::from_integer(n / &gcd))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_rational("0.133").unwrap(), ratio(133, 1000));
        assert_eq!(parse_rational("1/3").unwrap(), ratio(1, 3));
        assert_eq!(parse_rational("-2/4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("25e-2").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-0.0").unwrap(), int(0));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "0.1.2", "-", "1/x", "nan", "inf"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(&ratio(1, 4), 2), "0.25");
        assert_eq!(format_decimal(&ratio(2, 15), 3), "0.133");
        assert_eq!(format_decimal(&ratio(1, 80), 3), "0.013");
        assert_eq!(format_decimal(&int(0), 3), "0");
        assert_eq!(format_decimal(&int(1), 3), "1");
        assert_eq!(format_decimal(&ratio(-1, 2000), 3), "-0.001");
        assert_eq!(format_decimal(&ratio(-1, 3000), 3), "0");
    }

    #[test]
    fn exact_formatting() {
        assert_eq!(format_exact(&ratio(133, 1000)), "133/1000");
        assert_eq!(format_exact(&int(-3)), "-3");
    }

    #[test]
    fn primitive_keeps_direction() {
        let v = vec![ratio(-1, 2), ratio(3, 4), int(0)];
        assert_eq!(primitive(&v), vec![int(-2), int(3), int(0)]);
    }
}
