//! Text formats: complex numbers, polynomial files and point files.
//!
//! A polynomial file holds either `monic n a_1 ... a_n` or `roots r_1 ... r_n`.
//! Tokens are whitespace-separated and may span lines; everything after `#`
//! on a line is ignored. Complex entries are written `re`, `re+imi`,
//! `re-imi` or `imi`.

use std::fmt::Write as _;

use simulzero::poly::BUILTIN_NAMES;
use simulzero::{builtin_suite, Complex64, Polynomial, RootSet};

use crate::error::CliError;

/// A polynomial together with its reference roots when they are known.
#[derive(Debug, Clone)]
pub struct PolySource {
    pub name: String,
    pub poly: Polynomial,
    pub roots: Option<RootSet>,
}

pub fn parse_complex(token: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Parse(format!("invalid complex number `{token}`"));
    let t = token.trim();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that does not start the string or an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// Inverse of [`parse_complex`]; full precision, imaginary part omitted when
/// it is zero.
pub fn format_complex(z: Complex64) -> String {
    let mut out = format!("{}", z.re);
    if z.im != 0.0 || z.im.is_sign_negative() {
        if z.im.is_sign_negative() {
            let _ = write!(out, "{}i", z.im);
        } else {
            let _ = write!(out, "+{}i", z.im);
        }
    }
    out
}

fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
}

pub fn parse_polynomial_text(name: &str, text: &str) -> Result<PolySource, CliError> {
    let mut toks = tokens(text);
    let kind = toks
        .next()
        .ok_or_else(|| CliError::Parse("empty polynomial description".into()))?;
    match kind.to_ascii_lowercase().as_str() {
        "monic" => {
            let n: usize = toks
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| CliError::Parse("`monic` must be followed by the degree".into()))?;
            let coeffs = toks.map(parse_complex).collect::<Result<Vec<_>, _>>()?;
            if coeffs.len() != n {
                return Err(CliError::Parse(format!(
                    "degree {n} needs {n} coefficients, found {}",
                    coeffs.len()
                )));
            }
            Ok(PolySource {
                name: name.to_string(),
                poly: Polynomial::monic(coeffs)?,
                roots: None,
            })
        }
        "roots" => {
            let roots = RootSet::new(toks.map(parse_complex).collect::<Result<Vec<_>, _>>()?)?;
            Ok(PolySource {
                name: name.to_string(),
                poly: Polynomial::from_roots(&roots),
                roots: Some(roots),
            })
        }
        other => Err(CliError::Parse(format!(
            "expected `monic` or `roots`, found `{other}`"
        ))),
    }
}

/// Comma-separated coefficients, highest power first, leading term included.
pub fn parse_coefficient_list(list: &str) -> Result<Polynomial, CliError> {
    let all = list
        .split(',')
        .map(parse_complex)
        .collect::<Result<Vec<_>, _>>()?;
    let (&leading, rest) = all
        .split_first()
        .ok_or_else(|| CliError::Parse("empty coefficient list".into()))?;
    Ok(Polynomial::from_coefficients(leading, rest)?)
}

pub fn builtin(name: &str) -> Result<PolySource, CliError> {
    let index = BUILTIN_NAMES
        .iter()
        .position(|b| b.eq_ignore_ascii_case(name))
        .ok_or_else(|| CliError::Usage(format!("unknown builtin polynomial `{name}` (P1..P4)")))?;
    let (poly, roots) = builtin_suite().swap_remove(index);
    Ok(PolySource {
        name: BUILTIN_NAMES[index].to_string(),
        poly,
        roots,
    })
}

/// Resolves `builtin:<name>`, `coeffs:<list>` or `file:<path>`.
pub fn resolve_polynomial(spec: &str) -> Result<PolySource, CliError> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("polynomial source `{spec}` lacks a `kind:` prefix")))?;
    match kind {
        "builtin" => builtin(rest),
        "coeffs" => Ok(PolySource {
            name: spec.to_string(),
            poly: parse_coefficient_list(rest)?,
            roots: None,
        }),
        "file" => {
            let text = std::fs::read_to_string(rest)
                .map_err(|e| CliError::Usage(format!("cannot read `{rest}`: {e}")))?;
            parse_polynomial_text(rest, &text)
        }
        other => Err(CliError::Usage(format!(
            "unknown polynomial source `{other}` (builtin, coeffs, file)"
        ))),
    }
}

/// One complex point per line; blank lines and `#` comments are skipped.
pub fn parse_points(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(parse_complex)
        .collect()
}
