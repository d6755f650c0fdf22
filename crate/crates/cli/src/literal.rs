//! Complex literals `[-]a[±bi]`; `i` alone means `1i`.

use crportrait::Complex;

fn real(text: &str, whole: &str) -> Result<f64, String> {
    let x: f64 = text.parse().map_err(|_| format!("invalid complex literal {whole:?}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("non-finite value in {whole:?}"))
    }
}

/// Coefficient of `i` from the text before it: empty or a bare sign means one.
fn imaginary(text: &str, whole: &str) -> Result<f64, String> {
    match text {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        t => real(t, whole),
    }
}

pub fn parse_complex(input: &str) -> Result<Complex, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(real(&s, input)?, 0.0));
    };
    // split at the last sign that is neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex::new(real(&body[..k], input)?, imaginary(&body[k..], input)?)),
        None => Ok(Complex::new(0.0, imaginary(body, input)?)),
    }
}

/// `;`-separated list of complex literals.
pub fn parse_list(input: &str) -> Result<Vec<Complex>, String> {
    input.split(';').map(parse_complex).collect()
}

fn real_text(x: f64) -> String {
    // shortest round-trip text; no negative zero
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x}")
    }
}

/// Inverse of [`parse_complex`], exact for every finite value.
pub fn format_complex(z: Complex) -> String {
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => real_text(z.re),
        (true, false) => format!("{}i", real_text(z.im)),
        (false, false) => {
            let sign = if z.im < 0.0 { '-' } else { '+' };
            format!("{}{sign}{}i", real_text(z.re), real_text(z.im.abs()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn grammar() {
        assert_eq!(parse_complex("0").unwrap(), c(0.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), c(-2.5, 0.0));
        assert_eq!(parse_complex("1+1i").unwrap(), c(1.0, 1.0));
        assert_eq!(parse_complex(" 2 - 3i ").unwrap(), c(2.0, -3.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1-i").unwrap(), c(1.0, -1.0));
        assert_eq!(parse_complex("1.5i").unwrap(), c(0.0, 1.5));
        assert_eq!(parse_complex("1e-3+2E+1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex("-1e-3i").unwrap(), c(0.0, -1e-3));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("").is_err());
        assert!(parse_complex("inf").is_err());
        assert_eq!(parse_list("0; 1+1i; 2+2i").unwrap(), vec![c(0.0, 0.0), c(1.0, 1.0), c(2.0, 2.0)]);
    }

    #[test]
    fn format_round_trips() {
        for z in [c(0.0, 0.0), c(-0.0, 2.0), c(0.1, -1.0 / 3.0), c(1e-20, 3e5), c(-7.0, 0.0), c(0.0, -1.0)] {
            let text = format_complex(z);
            assert_eq!(parse_complex(&text).unwrap(), z, "{text}");
        }
        assert_eq!(format_complex(c(1.0, -1.0)), "1-1i");
    }
}
