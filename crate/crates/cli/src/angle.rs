//! Half-angle parsing: decimal radians, `pi`, `pi/N`, `N*pi`, `N*pi/M`, or
//! decimal degrees.

use std::f64::consts::PI;

use crate::CliError;

fn number(s: &str, whole: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("cannot read angle '{whole}'")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Parse(format!("angle '{whole}' is not finite")))
    }
}

/// Parses a half-angle in radians. With `degrees`, the text must be a plain
/// decimal number of degrees.
pub fn parse_angle(text: &str, degrees: bool) -> Result<f64, CliError> {
    let s = text.trim().to_ascii_lowercase();
    if degrees {
        if s.contains("pi") {
            return Err(CliError::Parse(format!(
                "'{text}': multiples of pi are radians; drop --degrees"
            )));
        }
        return Ok(number(&s, text)?.to_radians());
    }
    let Some(pos) = s.find("pi") else {
        return number(&s, text);
    };
    let (head, tail) = (&s[..pos], &s[pos + 2..]);
    let factor = match head.trim() {
        "" => 1.0,
        h => match h.strip_suffix('*') {
            Some(n) => number(n, text)?,
            None => return Err(CliError::Parse(format!("cannot read angle '{text}'"))),
        },
    };
    let divisor = match tail.trim() {
        "" => 1.0,
        t => match t.strip_prefix('/') {
            Some(d) => number(d, text)?,
            None => return Err(CliError::Parse(format!("cannot read angle '{text}'"))),
        },
    };
    if divisor == 0.0 {
        return Err(CliError::Parse(format!("angle '{text}' divides by zero")));
    }
    Ok(factor * PI / divisor)
}
