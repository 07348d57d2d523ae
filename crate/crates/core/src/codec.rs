//! Hexadecimal encoding of quadruples and the listing file format.
//!
//! Digit `i < n` packs `(a_i, b_i, c_i, d_i)` with `+1 -> 0`, `-1 -> 1` as a
//! 4-bit number (`a` is the high bit); digit `n` packs `(a_n, b_n, c_n)` as a
//! 3-bit number. Canonical quadruples always end in digit `1`, which the
//! compact form omits.

use std::fmt;

use crate::binseq::{BinarySeq, Sequence};
use crate::error::{Error, Result};
use crate::quad::TurynQuad;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HexForm {
    /// `n` digits.
    Full,
    /// `n - 1` digits; the trailing `1` is implied.
    Compact,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HexCode {
    digits: String,
    form: HexForm,
}

impl HexCode {
    /// Validates `text` as a code for length `n`, detecting the form from the
    /// digit count.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let digits = text.trim().to_ascii_lowercase();
        if let Some((i, ch)) = digits.char_indices().find(|(_, c)| !c.is_ascii_hexdigit()) {
            return Err(Error::parse(i + 1, format!("non-hex character {ch:?}")));
        }
        let form = if n >= 1 && digits.len() == n {
            HexForm::Full
        } else if n >= 2 && digits.len() == n - 1 {
            HexForm::Compact
        } else {
            return Err(Error::parse(
                digits.len(),
                format!(
                    "expected {n} or {} digits for n={n}, found {}",
                    n.saturating_sub(1),
                    digits.len()
                ),
            ));
        };
        if form == HexForm::Full && digit_value(digits.as_bytes()[n - 1]) > 7 {
            return Err(Error::parse(
                n,
                "final digit of a full code must be at most 7",
            ));
        }
        Ok(Self { digits, form })
    }

    pub fn as_str(&self) -> &str {
        &self.digits
    }

    pub fn form(&self) -> HexForm {
        self.form
    }

    /// The `n` this code describes.
    pub fn n(&self) -> usize {
        match self.form {
            HexForm::Full => self.digits.len(),
            HexForm::Compact => self.digits.len() + 1,
        }
    }

    pub fn decode(&self) -> TurynQuad {
        let n = self.n();
        let mut digits: Vec<u8> = self.digits.bytes().map(digit_value).collect();
        if self.form == HexForm::Compact {
            digits.push(1);
        }
        let sign = |bit: u8| if bit == 1 { -1 } else { 1 };
        let mut parts: [Vec<i8>; 4] = Default::default();
        for &h in &digits[..n - 1] {
            for (k, part) in parts.iter_mut().enumerate() {
                part.push(sign(h >> (3 - k) & 1));
            }
        }
        let last = digits[n - 1];
        for (k, part) in parts.iter_mut().take(3).enumerate() {
            part.push(sign(last >> (2 - k) & 1));
        }
        let [a, b, c, d] = parts.map(BinarySeq::from_signs);
        TurynQuad::new(a, b, c, d).expect("decoded lengths are (n, n, n, n-1)")
    }
}

impl fmt::Display for HexCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digits)
    }
}

fn digit_value(b: u8) -> u8 {
    (b as char).to_digit(16).expect("validated hex digit") as u8
}

pub fn encode(quad: &TurynQuad, form: HexForm) -> Result<HexCode> {
    if form == HexForm::Compact && !quad.is_canonical() {
        return Err(Error::NotCanonical);
    }
    let n = quad.n();
    let bit = |v: i8| u8::from(v < 0);
    let [a, b, c, d] = quad.parts().map(|s| s.entries());
    let mut digits = String::with_capacity(n);
    for i in 0..n - 1 {
        let h = bit(a[i]) << 3 | bit(b[i]) << 2 | bit(c[i]) << 1 | bit(d[i]);
        digits.push(char::from_digit(h.into(), 16).unwrap());
    }
    if form == HexForm::Full {
        let h = bit(a[n - 1]) << 2 | bit(b[n - 1]) << 1 | bit(c[n - 1]);
        digits.push(char::from_digit(h.into(), 16).unwrap());
    }
    Ok(HexCode { digits, form })
}

/// Decodes a full or compact code for length `n`. The result has the right
/// shape; whether it is a Turyn-type sequence is a separate question.
pub fn decode(code: &str, n: usize) -> Result<TurynQuad> {
    Ok(HexCode::parse(code, n)?.decode())
}

/// A table of representatives: `INDEX HEXDIGITS` per line, with an optional
/// `# n=K` header.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Listing {
    pub n: Option<usize>,
    pub records: Vec<ListingRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListingRecord {
    pub index: usize,
    pub code: String,
}

impl Listing {
    pub fn from_codes<S: AsRef<str>>(n: usize, codes: impl IntoIterator<Item = S>) -> Self {
        let records = codes
            .into_iter()
            .enumerate()
            .map(|(i, c)| ListingRecord {
                index: i + 1,
                code: c.as_ref().to_owned(),
            })
            .collect();
        Self {
            n: Some(n),
            records,
        }
    }

    pub fn codes(&self) -> impl Iterator<Item = &str> {
        self.records.iter().map(|r| r.code.as_str())
    }
}

pub fn read_listing(text: &str) -> Result<Listing> {
    let mut listing = Listing::default();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("n=") {
                let n = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad header {line:?}")))?;
                listing.n = Some(n);
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(index), Some(code), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(
                lineno,
                format!("expected `INDEX HEX`, got {line:?}"),
            ));
        };
        let index = index
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad index {index:?}")))?;
        if !code.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::parse(lineno, format!("bad hex code {code:?}")));
        }
        listing.records.push(ListingRecord {
            index,
            code: code.to_ascii_lowercase(),
        });
    }
    Ok(listing)
}

pub fn write_listing(listing: &Listing) -> String {
    let mut out = String::new();
    if let Some(n) = listing.n {
        out.push_str(&format!("# n={n}\n"));
    }
    for r in &listing.records {
        out.push_str(&format!("{} {}\n", r.index, r.code));
    }
    out
}
