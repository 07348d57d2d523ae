//! Binary and ternary sequences, their nonperiodic autocorrelation, the
//! elementary transforms and the spectral density used for pruning.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Read access shared by [`BinarySeq`] and [`TernarySeq`].
pub trait Sequence {
    fn entries(&self) -> &[i8];

    fn len(&self) -> usize {
        self.entries().len()
    }

    fn is_empty(&self) -> bool {
        self.entries().is_empty()
    }

    /// Nonperiodic autocorrelation at every nonnegative lag below the length.
    fn naf(&self) -> NafProfile {
        NafProfile::of(self.entries())
    }

    /// `N(0) + 2 * sum_j N(j) cos(j theta)`, i.e. `|X(e^{i theta})|^2`.
    fn spectrum_value(&self, theta: f64) -> f64 {
        self.naf().spectrum_value(theta)
    }
}

/// A finite sequence over {+1, -1}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BinarySeq {
    entries: Vec<i8>,
}

/// A finite sequence over {0, +1, -1}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TernarySeq {
    entries: Vec<i8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Negate,
    Reverse,
    Alternate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl BinarySeq {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if let Some((position, &value)) =
            entries.iter().enumerate().find(|(_, &v)| v != 1 && v != -1)
        {
            return Err(Error::InvalidEntry {
                position,
                value: value.into(),
            });
        }
        Ok(Self { entries })
    }

    /// Trusted constructor for internal callers that only ever produce signs.
    pub(crate) fn from_signs(entries: Vec<i8>) -> Self {
        debug_assert!(entries.iter().all(|&v| v == 1 || v == -1));
        Self { entries }
    }

    pub fn ones(len: usize) -> Self {
        Self::from_signs(vec![1; len])
    }

    /// Bit `i` set means entry `i` is -1.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        assert!(len <= 64);
        Self::from_signs(
            (0..len)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        )
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.entries.len() <= 64);
        self.entries
            .iter()
            .enumerate()
            .fold(0, |m, (i, &v)| if v < 0 { m | 1 << i } else { m })
    }

    pub fn get(&self, i: usize) -> i8 {
        self.entries[i]
    }

    pub fn transform(&self, kind: Transform) -> Self {
        match kind {
            Transform::Negate => self.negate(),
            Transform::Reverse => self.reverse(),
            Transform::Alternate => self.alternate(),
        }
    }

    pub fn negate(&self) -> Self {
        Self::from_signs(self.entries.iter().map(|&v| -v).collect())
    }

    pub fn reverse(&self) -> Self {
        Self::from_signs(self.entries.iter().rev().copied().collect())
    }

    /// Multiplies entry `i` (0-based) by `(-1)^i`.
    pub fn alternate(&self) -> Self {
        Self::from_signs(
            self.entries
                .iter()
                .enumerate()
                .map(|(i, &v)| if i % 2 == 1 { -v } else { v })
                .collect(),
        )
    }

    pub fn row_sum(&self) -> i64 {
        self.entries.iter().map(|&v| i64::from(v)).sum()
    }

    pub fn concat(&self, other: &BinarySeq) -> BinarySeq {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self::from_signs(entries)
    }

    pub fn to_ternary(&self) -> TernarySeq {
        TernarySeq {
            entries: self.entries.clone(),
        }
    }
}

/// Entrywise `(a_i + b_i) / 2` or `(a_i - b_i) / 2`.
pub fn half_combine(a: &BinarySeq, b: &BinarySeq, sign: Sign) -> Result<TernarySeq> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let entries = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(&x, &y)| match sign {
            Sign::Plus => (x + y) / 2,
            Sign::Minus => (x - y) / 2,
        })
        .collect();
    Ok(TernarySeq { entries })
}

impl TernarySeq {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if let Some((position, &value)) = entries
            .iter()
            .enumerate()
            .find(|(_, &v)| !(-1..=1).contains(&v))
        {
            return Err(Error::InvalidEntry {
                position,
                value: value.into(),
            });
        }
        Ok(Self { entries })
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            entries: vec![0; len],
        }
    }

    pub fn concat(&self, other: &TernarySeq) -> TernarySeq {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self { entries }
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|&&v| v != 0).count()
    }
}

impl Sequence for BinarySeq {
    fn entries(&self) -> &[i8] {
        &self.entries
    }
}

impl Sequence for TernarySeq {
    fn entries(&self) -> &[i8] {
        &self.entries
    }
}

/// `N(0), N(1), ..., N(m-1)`. Negative lags and lags past the length are
/// implied (`N(-i) = N(i)`, `N(i) = 0` for `i >= m`) and never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NafProfile {
    values: Vec<i64>,
}

impl NafProfile {
    pub fn of(entries: &[i8]) -> Self {
        let m = entries.len();
        let values = (0..m)
            .map(|lag| {
                entries[..m - lag]
                    .iter()
                    .zip(&entries[lag..])
                    .map(|(&x, &y)| i64::from(x) * i64::from(y))
                    .sum()
            })
            .collect();
        Self { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Value at any integer lag, including the implied ones.
    pub fn at(&self, lag: i64) -> i64 {
        self.values
            .get(lag.unsigned_abs() as usize)
            .copied()
            .unwrap_or(0)
    }

    pub fn spectrum_value(&self, theta: f64) -> f64 {
        let Some((&zero, rest)) = self.values.split_first() else {
            return 0.0;
        };
        let tail: f64 = rest
            .iter()
            .enumerate()
            .map(|(j, &v)| v as f64 * ((j + 1) as f64 * theta).cos())
            .sum();
        zero as f64 + 2.0 * tail
    }
}

fn fmt_entries(entries: &[i8], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for &v in entries {
        f.write_str(match v {
            1 => "+",
            -1 => "-",
            _ => "0",
        })?;
    }
    Ok(())
}

impl fmt::Display for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_entries(&self.entries, f)
    }
}

impl fmt::Debug for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySeq({self})")
    }
}

impl fmt::Display for TernarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_entries(&self.entries, f)
    }
}

impl fmt::Debug for TernarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernarySeq({self})")
    }
}

fn parse_symbols(s: &str, allow_zero: bool) -> Result<Vec<i8>> {
    s.trim()
        .chars()
        .enumerate()
        .map(|(i, ch)| match ch {
            '+' => Ok(1),
            '-' | '\u{2212}' => Ok(-1),
            '0' if allow_zero => Ok(0),
            other => Err(Error::parse(i + 1, format!("unexpected symbol {other:?}"))),
        })
        .collect()
}

impl FromStr for BinarySeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_symbols(s, false).map(Self::from_signs)
    }
}

impl FromStr for TernarySeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_symbols(s, true).map(|entries| Self { entries })
    }
}
