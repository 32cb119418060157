use num_complex::Complex64;

use crate::error::{CliError, CliResult};

fn number(text: &str, literal: &str) -> CliResult<f64> {
    let x: f64 = text.parse().map_err(|_| {
        CliError::Usage(format!(
            "`{literal}` is not a complex literal (expected a, a+bi or a-bi)"
        ))
    })?;
    if !x.is_finite() {
        return Err(CliError::Usage(format!("`{literal}` has a non-finite part")));
    }
    Ok(x)
}

/// Parses `a`, `a+bi` or `a-bi`; `b` may be omitted (`1+i`) and either part
/// may use exponent notation.
pub fn parse_complex(literal: &str) -> CliResult<Complex64> {
    let text: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = text.strip_suffix('i') else {
        return Ok(Complex64::new(number(&text, literal)?, 0.0));
    };
    // split at the last sign that does not start the literal or an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(|| {
            CliError::Usage(format!(
                "`{literal}` is not a complex literal (expected a, a+bi or a-bi)"
            ))
        })?;
    let re = number(&body[..split], literal)?;
    let im = match &body[split..] {
        "+" => 1.0,
        "-" => -1.0,
        b => number(b, literal)?,
    };
    Ok(Complex64::new(re, im))
}
