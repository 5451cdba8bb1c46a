//! Term syntax for octonions on the command line: signed terms over the
//! unit names `1 i j k kl jl il l` with optional real coefficients, e.g.
//! `1+kl`, `-0.5i + 2*jl`, `3e-2l`. `ℓ` is accepted for `l`.

use std::str::FromStr;

use crate::error::Error;
use crate::octonion::Octonion;

const UNITS: [(&str, usize); 7] = [
    ("kl", 4),
    ("jl", 5),
    ("il", 6),
    ("i", 1),
    ("j", 2),
    ("k", 3),
    ("l", 7),
];

fn parse_error(input: &str, pos: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        context: format!("octonion {input:?} at offset {pos}"),
        message: message.into(),
    }
}

fn scan_number(s: &[u8], mut pos: usize) -> usize {
    let start = pos;
    while pos < s.len() && (s[pos].is_ascii_digit() || s[pos] == b'.') {
        pos += 1;
    }
    if pos > start && pos < s.len() && (s[pos] == b'e' || s[pos] == b'E') {
        let mut q = pos + 1;
        if q < s.len() && (s[q] == b'+' || s[q] == b'-') {
            q += 1;
        }
        let digits = q;
        while q < s.len() && s[q].is_ascii_digit() {
            q += 1;
        }
        if q > digits {
            pos = q;
        }
    }
    pos
}

impl FromStr for Octonion {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self, Error> {
        let cleaned: String = input
            .replace('ℓ', "l")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let s = cleaned.as_bytes();
        if s.is_empty() {
            return Err(parse_error(input, 0, "empty expression"));
        }
        let mut coeffs = [0.0; 8];
        let mut pos = 0;
        let mut first = true;
        while pos < s.len() {
            let mut sign = 1.0;
            match s[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -1.0;
                    pos += 1;
                }
                _ if first => {}
                _ => return Err(parse_error(input, pos, "expected '+' or '-'")),
            }
            first = false;

            let num_end = scan_number(s, pos);
            let coefficient = if num_end > pos {
                let text = &cleaned[pos..num_end];
                let v: f64 = text
                    .parse()
                    .map_err(|_| parse_error(input, pos, format!("bad number {text:?}")))?;
                pos = num_end;
                if pos < s.len() && s[pos] == b'*' {
                    pos += 1;
                }
                Some(v)
            } else {
                None
            };

            let unit = UNITS
                .iter()
                .find(|(name, _)| cleaned[pos..].starts_with(name))
                .copied();
            let index = match (coefficient, unit) {
                (_, Some((name, q))) => {
                    pos += name.len();
                    q
                }
                (Some(_), None) => 0,
                (None, None) => {
                    return Err(parse_error(input, pos, "expected a number or unit name"))
                }
            };
            coeffs[index] += sign * coefficient.unwrap_or(1.0);
        }
        Octonion::new(coeffs).map_err(|e| parse_error(input, 0, e.to_string()))
    }
}
