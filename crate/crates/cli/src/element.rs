//! Element input: JSON `{"level":h,"coeffs":{"k":m,..}}` or a shorthand sum of
//! terms such as `2*t3 - t1 + 5@6`.
//!
//! A term is an optional integer coefficient (joined by `*` or `·`) and an
//! atom: `t<m>` for `C_h/C_{h/m}`, `C<h>/C<k>` (or `G/C<k>`) for an orbit, or
//! nothing for a multiple of the unit. The level comes from an `@h` suffix or
//! from the command context.

use num_bigint::BigInt;
use tambara_core::{BurnsideElement, Error, Result};

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected {what}, got {s:?}")))
}

fn atom(level: u64, text: &str) -> Result<BurnsideElement> {
    if text.is_empty() {
        return Ok(BurnsideElement::one(level));
    }
    if let Some(m) = text.strip_prefix('t') {
        return BurnsideElement::from_t(level, parse_u64(m, "t<m>")?);
    }
    if let Some((top, bottom)) = text.split_once('/') {
        if top != "G" {
            let h = parse_u64(top.strip_prefix('C').unwrap_or(top), "C<h>")?;
            if h != level {
                return Err(Error::LevelMismatch { left: level, right: h });
            }
        }
        let k = parse_u64(bottom.strip_prefix('C').unwrap_or(bottom), "C<k>")?;
        return BurnsideElement::transitive(level, k);
    }
    Err(Error::Parse(format!("unrecognised term {text:?}")))
}

fn term(level: u64, text: &str) -> Result<BurnsideElement> {
    let digits = text.find(|c: char| !c.is_ascii_digit()).unwrap_or(text.len());
    let (coef, rest) = text.split_at(digits);
    let rest = rest
        .strip_prefix('*')
        .or_else(|| rest.strip_prefix('·'))
        .unwrap_or(rest);
    if coef.is_empty() && rest.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let coef: BigInt = if coef.is_empty() {
        BigInt::from(1)
    } else {
        coef.parse().expect("ascii digits")
    };
    Ok(atom(level, rest)?.scale(&coef))
}

/// Parses an element; `default_level` is used when the text carries no `@h`.
pub fn parse_element(text: &str, default_level: Option<u64>) -> Result<BurnsideElement> {
    let text = text.trim();
    if text.starts_with('{') {
        return serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()));
    }
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (body, level) = match compact.rsplit_once('@') {
        Some((body, h)) => (body.to_string(), parse_u64(h, "level after @")?),
        None => (
            compact.clone(),
            default_level
                .ok_or_else(|| Error::Parse("no level given: append @<h> or pass JSON".into()))?,
        ),
    };
    if level == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut acc = BurnsideElement::zero(level);
    let mut sign = 1;
    let mut start = 0;
    let bytes: Vec<(usize, char)> = body.char_indices().collect();
    let mut pieces = Vec::new();
    for &(i, c) in &bytes {
        if c == '+' || c == '-' {
            pieces.push((sign, &body[start..i]));
            sign = if c == '-' { -1 } else { 1 };
            start = i + 1;
        }
    }
    pieces.push((sign, &body[start..]));
    for (idx, (sign, piece)) in pieces.into_iter().enumerate() {
        if piece.is_empty() {
            // a leading sign leaves an empty first piece
            if idx == 0 {
                continue;
            }
            return Err(Error::Parse(format!("dangling operator in {text:?}")));
        }
        let t = term(level, piece)?;
        acc = if sign < 0 { acc.sub(&t)? } else { acc.add(&t)? };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(level: u64, terms: &[(u64, i64)]) -> BurnsideElement {
        BurnsideElement::from_coeffs(level, terms.iter().copied()).unwrap()
    }

    #[test]
    fn shorthand() {
        assert_eq!(parse_element("2*t3 - t1@6", None).unwrap(), el(6, &[(2, 2), (6, -1)]));
        assert_eq!(parse_element("C6/C2 + 3", Some(6)).unwrap(), el(6, &[(2, 1), (6, 3)]));
        assert_eq!(parse_element("-G/C1@2", None).unwrap(), el(2, &[(1, -1)]));
        assert_eq!(parse_element("2·t2@2", None).unwrap(), el(2, &[(1, 2)]));
        assert_eq!(parse_element("0@4", None).unwrap(), BurnsideElement::zero(4));
        assert!(parse_element("t5@6", None).is_err());
        assert!(parse_element("C4/C2@6", None).is_err());
        assert!(parse_element("t2", None).is_err());
        assert!(parse_element("t2 + - t1@2", None).is_err());
        assert!(parse_element("x@2", None).is_err());
    }

    #[test]
    fn json_input() {
        let x = parse_element(r#"{"level":6,"coeffs":{"2":1,"6":"-3"}}"#, None).unwrap();
        assert_eq!(x, el(6, &[(2, 1), (6, -3)]));
        assert!(parse_element(r#"{"level":6,"coeffs":{"4":1}}"#, None).is_err());
    }
}
