//! Helpers for exact rational weights and their text form.

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

pub type Weight = BigRational;

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn one() -> BigRational {
    BigRational::one()
}

pub fn zero() -> BigRational {
    BigRational::zero()
}

/// Exact value of a finite float (every f64 is a dyadic rational).
pub fn from_f64(x: f64) -> BigRational {
    assert!(x.is_finite(), "non-finite weight {x}");
    BigRational::from_float(x).expect("finite float")
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // huge numerators/denominators: fall back through the quotient
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Always `p/q`, also for integers, so the JSON field type never changes.
pub fn format_fraction(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_fraction(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator in `{s}`"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator in `{s}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_text() {
        assert_eq!(format_fraction(&ratio(2, 4)), "1/2");
        assert_eq!(format_fraction(&one()), "1/1");
        assert_eq!(parse_fraction(" 3/6 ").unwrap(), ratio(1, 2));
        assert_eq!(parse_fraction("2").unwrap(), ratio(2, 1));
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("x").is_err());
    }

    #[test]
    fn float_is_exact() {
        assert_eq!(from_f64(0.25), ratio(1, 4));
        let third = from_f64(1.0 / 3.0);
        assert_eq!(one() - &third + &third, one());
    }
}
