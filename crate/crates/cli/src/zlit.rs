//! The `z` literal grammar: `1`, `-1`, `i`, `-i`, a real decimal `a`, or
//! `a+bi` / `a-bi` with decimal `a`, `b` (`b` may be omitted: `1+i`).
//!
//! Literals whose parts are both integral become exact Gaussian integers;
//! anything else is a double-precision complex number.

use circdet::{ComplexF, GaussInt, Scalar, UnitZ};
use num_bigint::BigInt;

const MAX_EXACT_FLOAT: f64 = 9_007_199_254_740_992.0; // 2^53

enum Part {
    Int(BigInt),
    Float(f64),
}

fn parse_part(s: &str) -> Result<Part, String> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return Err("empty number".into());
    }
    let digits = s.strip_prefix('-').unwrap_or(s);
    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        return s
            .parse::<BigInt>()
            .map(Part::Int)
            .map_err(|e| e.to_string());
    }
    let v: f64 = s
        .parse()
        .map_err(|_| format!("'{s}' is not a decimal number"))?;
    if !v.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    if v.fract() == 0.0 && v.abs() < MAX_EXACT_FLOAT {
        Ok(Part::Int(BigInt::from(v as i64)))
    } else {
        Ok(Part::Float(v))
    }
}

fn part_f64(p: &Part) -> f64 {
    match p {
        Part::Int(i) => i.to_string().parse().unwrap_or(f64::NAN),
        Part::Float(f) => *f,
    }
}

fn imag_coefficient(s: &str) -> Result<Part, String> {
    match s {
        "" | "+" => Ok(Part::Int(BigInt::from(1))),
        "-" => Ok(Part::Int(BigInt::from(-1))),
        other => parse_part(other),
    }
}

/// Parses a `z` literal.
pub fn parse_z(text: &str) -> Result<Scalar, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty z literal".into());
    }
    let (re, im) = match s.strip_suffix('i') {
        None => (parse_part(&s)?, Part::Int(BigInt::from(0))),
        Some(body) => {
            // the real/imaginary split is the last sign not at the start and
            // not inside an exponent
            let bytes = body.as_bytes();
            let split = (1..bytes.len()).rev().find(|&j| {
                (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E')
            });
            match split {
                Some(j) => (parse_part(&body[..j])?, imag_coefficient(&body[j..])?),
                None => (Part::Int(BigInt::from(0)), imag_coefficient(body)?),
            }
        }
    };
    Ok(match (re, im) {
        (Part::Int(a), Part::Int(b)) => Scalar::Exact(GaussInt::new(a, b)),
        (a, b) => Scalar::float(ComplexF::new(part_f64(&a), part_f64(&b))),
    })
}

/// Canonical text for a `z`: unit literals for the four units, `a+bi` otherwise.
pub fn format_z(z: &Scalar) -> String {
    match UnitZ::from_scalar(z) {
        Ok(u) => u.to_string(),
        Err(_) => z.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(re: i64, im: i64) -> Scalar {
        Scalar::Exact(GaussInt::new(re, im))
    }

    #[test]
    fn units_and_integers() {
        assert_eq!(parse_z("1").unwrap(), exact(1, 0));
        assert_eq!(parse_z("-1").unwrap(), exact(-1, 0));
        assert_eq!(parse_z("i").unwrap(), exact(0, 1));
        assert_eq!(parse_z("-i").unwrap(), exact(0, -1));
        assert_eq!(parse_z("2+3i").unwrap(), exact(2, 3));
        assert_eq!(parse_z("2-3i").unwrap(), exact(2, -3));
        assert_eq!(parse_z("1+i").unwrap(), exact(1, 1));
        assert_eq!(parse_z("-4i").unwrap(), exact(0, -4));
        assert_eq!(parse_z("2.0+0i").unwrap(), exact(2, 0));
        assert_eq!(parse_z(" 3 - i ").unwrap(), exact(3, -1));
    }

    #[test]
    fn floats() {
        assert_eq!(
            parse_z("0.6+0.8i").unwrap(),
            Scalar::float(ComplexF::new(0.6, 0.8))
        );
        assert_eq!(
            parse_z("1e-3-2.5i").unwrap(),
            Scalar::float(ComplexF::new(1e-3, -2.5))
        );
        assert_eq!(
            parse_z("0.5").unwrap(),
            Scalar::float(ComplexF::new(0.5, 0.0))
        );
    }

    #[test]
    fn big_integers_stay_exact() {
        let z = parse_z("123456789012345678901234567890+1i").unwrap();
        assert!(matches!(z, Scalar::Exact(_)));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x", "1+", "i+1", "1+2j", "nan", "1++2i", "inf"] {
            assert!(parse_z(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_z(&parse_z("i").unwrap()), "i");
        assert_eq!(format_z(&parse_z("-1").unwrap()), "-1");
        assert_eq!(format_z(&parse_z("2-3i").unwrap()), "2-3i");
        assert_eq!(format_z(&parse_z("0.6+0.8i").unwrap()), "0.6+0.8i");
    }
}
