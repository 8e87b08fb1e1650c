//! Text formats: hexadecimal truth tables, ANF expressions and function files.
//!
//! Hex strings are the big-endian hexadecimal of the integer `sum_x f(x) 2^x`,
//! so the leftmost digit covers the highest indices. A function on `m >= 2`
//! variables takes `2^(m-2)` digits; `m < 2` uses a single digit.
//!
//! The ordering of external hex data published elsewhere may differ; callers
//! ingesting such data should check one known function before trusting a file.

use crate::anf::Anf;
use crate::boolfun::{BoolFun, MAX_VARS};
use crate::error::{parse_err, Error, Result};

pub fn hex_len(m: usize) -> usize {
    if m < 2 {
        1
    } else {
        1 << (m - 2)
    }
}

pub fn to_hex(f: &BoolFun) -> String {
    let m = f.num_vars();
    let digits = hex_len(m);
    let mut out = String::with_capacity(digits);
    for d in (0..digits).rev() {
        let bit = d * 4;
        let word = f.words()[bit >> 6];
        let nibble = (word >> (bit & 63)) & 0xf;
        out.push(char::from_digit(nibble as u32, 16).unwrap());
    }
    out
}

pub fn from_hex(m: usize, text: &str) -> Result<BoolFun> {
    if m > MAX_VARS {
        return Err(Error::Capacity(format!("{m} variables exceeds {MAX_VARS}")));
    }
    let text = text.trim();
    let digits = hex_len(m);
    if text.len() != digits {
        return Err(parse_err(
            text.len().min(digits),
            format!("expected {digits} hex digits for m={m}, found {}", text.len()),
        ));
    }
    let mut f = BoolFun::zero(m);
    let mut words = f.words().to_vec();
    for (pos, ch) in text.chars().enumerate() {
        let nibble = ch
            .to_digit(16)
            .ok_or_else(|| parse_err(pos, format!("invalid hex digit {ch:?}")))?
            as u64;
        let bit = (digits - 1 - pos) * 4;
        words[bit >> 6] |= nibble << (bit & 63);
    }
    if m < 2 {
        let limit = 1u64 << (1 << m);
        if words[0] >= limit {
            return Err(parse_err(0, format!("value too large for m={m}")));
        }
    }
    f = BoolFun::from_words(m, words)?;
    Ok(f)
}

/// Parses an ANF expression such as `"x1*x2 + x3 + 1"`.
///
/// Monomials are `*`-separated variables `x<i>` with `1 <= i <= m` (juxtaposed
/// variables like `x1x2` are accepted too); `0` and `1` are constants. Repeated
/// monomials cancel.
pub fn parse_anf(m: usize, text: &str) -> Result<Anf> {
    if m > MAX_VARS {
        return Err(Error::Capacity(format!("{m} variables exceeds {MAX_VARS}")));
    }
    let mut anf = Anf::zero(m);
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut expect_term = true;
    let mut seen_term = false;

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if !expect_term {
            if bytes[pos] != b'+' {
                return Err(parse_err(pos, format!("expected '+', found {:?}", bytes[pos] as char)));
            }
            pos += 1;
            expect_term = true;
            continue;
        }
        let start = pos;
        match bytes[pos] {
            b'0' | b'1' => {
                let c = bytes[pos];
                pos += 1;
                if pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
                    return Err(parse_err(start, "malformed constant"));
                }
                if c == b'1' {
                    anf.toggle(0);
                }
            }
            b'x' | b'X' => {
                let mut monomial = 0u32;
                loop {
                    skip_ws(&mut pos);
                    if pos >= bytes.len() || !(bytes[pos] == b'x' || bytes[pos] == b'X') {
                        return Err(parse_err(pos, "expected a variable"));
                    }
                    let var_pos = pos;
                    pos += 1;
                    let digits_start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if digits_start == pos {
                        return Err(parse_err(var_pos, "variable without index"));
                    }
                    let index: usize = text[digits_start..pos]
                        .parse()
                        .map_err(|_| parse_err(digits_start, "bad variable index"))?;
                    if index == 0 || index > m {
                        return Err(parse_err(
                            var_pos,
                            format!("variable x{index} outside x1..x{m}"),
                        ));
                    }
                    monomial |= 1 << (index - 1);
                    let save = pos;
                    skip_ws(&mut pos);
                    if pos < bytes.len() && bytes[pos] == b'*' {
                        pos += 1;
                        continue;
                    }
                    if pos < bytes.len() && (bytes[pos] == b'x' || bytes[pos] == b'X') && pos == save
                    {
                        continue;
                    }
                    pos = save;
                    break;
                }
                anf.toggle(monomial);
            }
            other => {
                return Err(parse_err(start, format!("unexpected character {:?}", other as char)));
            }
        }
        seen_term = true;
        expect_term = false;
    }
    if !seen_term {
        return Err(parse_err(0, "empty expression"));
    }
    if expect_term {
        return Err(parse_err(bytes.len(), "dangling '+'"));
    }
    Ok(anf)
}

/// Parses a function file: a header line `m=<int>` followed by one hex truth
/// table per line. Blank lines and lines starting with `#` are skipped.
pub fn parse_function_file(text: &str) -> Result<(usize, Vec<BoolFun>)> {
    let mut m = None;
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.lines() {
        let trimmed = line.trim();
        let line_start = offset;
        offset += line.len() + 1;
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match m {
            None => {
                let value = trimmed
                    .strip_prefix("m=")
                    .ok_or_else(|| parse_err(line_start, "missing header line \"m=<int>\""))?;
                let parsed: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(line_start + 2, "bad variable count"))?;
                if parsed > MAX_VARS {
                    return Err(Error::Capacity(format!("{parsed} variables exceeds {MAX_VARS}")));
                }
                m = Some(parsed);
            }
            Some(m) => {
                let f = from_hex(m, trimmed).map_err(|e| match e {
                    Error::Parse { position, message } => Error::Parse {
                        position: line_start + position,
                        message,
                    },
                    other => other,
                })?;
                out.push(f);
            }
        }
    }
    let m = m.ok_or(Error::EmptyInput)?;
    Ok((m, out))
}

pub fn write_function_file(m: usize, functions: &[BoolFun]) -> String {
    let mut out = format!("m={m}\n");
    for f in functions {
        debug_assert_eq!(f.num_vars(), m);
        out.push_str(&f.to_hex());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE_G: &str = "x1*x4 + x2*x4 + x3*x4 + x2*x3*x4 + x2*x5 + x3*x5 + x1*x3*x5";

    #[test]
    fn anf_to_table() {
        let f = BoolFun::from_anf_str(3, "x1*x2 + x3").unwrap();
        assert_eq!(f.to_hex(), "78");
        assert_eq!(BoolFun::from_anf_str(2, "0").unwrap().to_hex(), "0");
    }

    #[test]
    fn anf_round_trip_verbatim() {
        let anf = parse_anf(5, EXAMPLE_G).unwrap();
        assert_eq!(anf.to_string(), EXAMPLE_G);
    }

    #[test]
    fn anf_variants() {
        let a = parse_anf(4, "x1x2+x3 * x4 + 1").unwrap();
        let b = parse_anf(4, "1 + x1*x2 + x3*x4").unwrap();
        assert_eq!(a, b);
        assert!(parse_anf(3, "x1 + x1").unwrap().is_zero());
    }

    #[test]
    fn anf_errors_carry_positions() {
        assert_eq!(
            parse_anf(3, "x1 + x4"),
            Err(Error::Parse {
                position: 5,
                message: "variable x4 outside x1..x3".into()
            })
        );
        assert!(matches!(parse_anf(3, "x1 +"), Err(Error::Parse { position: 4, .. })));
        assert!(matches!(parse_anf(3, "x1 y2"), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_anf(3, ""), Err(Error::Parse { .. })));
        assert!(matches!(parse_anf(3, "x"), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse_anf(3, "x0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_anf(3, "12"), Err(Error::Parse { position: 0, .. })));
    }

    #[test]
    fn hex_layout() {
        let f = BoolFun::from_fn(4, |x| x == 0);
        assert_eq!(f.to_hex(), "0001");
        let f = BoolFun::from_fn(4, |x| x == 15);
        assert_eq!(f.to_hex(), "8000");
        let f = BoolFun::from_fn(7, |x| x == 64);
        let hex = f.to_hex();
        assert_eq!(hex.len(), 32);
        assert_eq!(&hex[15..16], "1");
        assert_eq!(from_hex(7, &hex).unwrap(), f);
        assert_eq!(from_hex(1, "2").unwrap().to_bits(), vec![false, true]);
    }

    #[test]
    fn hex_errors() {
        assert!(matches!(from_hex(4, "000"), Err(Error::Parse { .. })));
        assert!(matches!(from_hex(4, "00g0"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(from_hex(1, "4"), Err(Error::Parse { .. })));
    }

    #[test]
    fn function_files() {
        let fs = vec![
            BoolFun::from_anf_str(3, "x1").unwrap(),
            BoolFun::from_anf_str(3, "x1*x2*x3").unwrap(),
        ];
        let text = write_function_file(3, &fs);
        assert_eq!(text, "m=3\naa\n80\n");
        let (m, parsed) = parse_function_file(&format!("# comment\n{text}\n")).unwrap();
        assert_eq!((m, parsed), (3, fs));
        assert!(matches!(parse_function_file("aa\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_function_file("m=3\naa\nzz\n"), Err(Error::Parse { position: 7, .. })));
        assert_eq!(parse_function_file(""), Err(Error::EmptyInput));
    }
}
