//! Angle parsing for `--phi`-style flags: plain radians or multiples of pi.

use autoqc_core::{Error, Result};

/// Accepts `"0.25pi"`, `"pi"`, `"-0.5pi"` or a plain radian value.
pub fn parse_angle(text: &str) -> Result<f64> {
    let trimmed = text.trim();
    if let Some(prefix) = trimmed.strip_suffix("pi") {
        let factor = if prefix.is_empty() {
            1.0
        } else {
            prefix.parse::<f64>().map_err(|_| bad_angle(text))?
        };
        return Ok(factor * std::f64::consts::PI);
    }
    trimmed.parse::<f64>().map_err(|_| bad_angle(text))
}

fn bad_angle(text: &str) -> Error {
    Error::InvalidParameter(format!(
        "angle '{text}' is neither a radian value nor a multiple of pi like 0.25pi"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_spellings_parse() {
        assert!((parse_angle("0.25pi").unwrap() - std::f64::consts::FRAC_PI_4).abs() <= 1e-15);
        assert!((parse_angle("pi").unwrap() - std::f64::consts::PI).abs() <= 1e-15);
        assert!((parse_angle("-0.5pi").unwrap() + std::f64::consts::FRAC_PI_2).abs() <= 1e-15);
        assert!((parse_angle("1.5707963").unwrap() - 1.5707963).abs() <= 1e-15);
        assert!(parse_angle("half a turn").is_err());
    }
}
