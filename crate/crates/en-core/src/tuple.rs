use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::{Error, Result};

/// An assignment `(x_1, ..., x_n)` of arbitrary-precision integers.
///
/// Tuples are never empty; indexing in the public API is 1-based to match
/// the equation indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntTuple(Vec<BigInt>);

impl IntTuple {
    pub fn new(values: Vec<BigInt>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyTuple);
        }
        Ok(IntTuple(values))
    }

    /// Convenience constructor used pervasively in tests.
    pub fn from_i64s(values: &[i64]) -> Self {
        assert!(!values.is_empty(), "tuples must contain at least one entry");
        IntTuple(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 1-based coordinate access.
    pub fn coord(&self, i: usize) -> &BigInt {
        &self.0[i - 1]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.0
    }

    /// Parse one comma-separated line of signed decimal integers.
    pub fn parse_line(line: &str) -> Result<Self> {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            return Err(Error::EmptyTuple);
        }
        let mut values = Vec::new();
        for part in trimmed.split(',') {
            let part = part.trim();
            let v = BigInt::from_str(part)
                .map_err(|_| Error::parse(1, format!("invalid integer {:?}", part)))?;
            values.push(v);
        }
        IntTuple::new(values)
    }

    /// Parse a whole document: one tuple per line, `#` starts a comment,
    /// blank lines are skipped. Errors carry the 1-based line number.
    pub fn parse_tuples(text: &str) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            let tuple = Self::parse_line(line).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(idx + 1, msg),
                Error::EmptyTuple => Error::parse(idx + 1, "empty tuple"),
                other => other,
            })?;
            out.push(tuple);
        }
        Ok(out)
    }

    /// Stretch the tuple to length `m` by repeating the first coordinate:
    /// the result is `(x_1, ..., x_1, x_2, ..., x_n)` with `m - n + 1`
    /// leading copies of `x_1`.
    pub fn pad(&self, m: usize) -> Result<Self> {
        let n = self.len();
        if m < n {
            return Err(Error::PadTooShort { m, len: n });
        }
        let mut values = Vec::with_capacity(m);
        for _ in 0..(m - n + 1) {
            values.push(self.0[0].clone());
        }
        values.extend_from_slice(&self.0[1..]);
        IntTuple::new(values)
    }
}

impl fmt::Display for IntTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, v) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for IntTuple {
    type Output = BigInt;

    /// 0-based slice indexing; use [`IntTuple::coord`] for 1-based access.
    fn index(&self, idx: usize) -> &BigInt {
        &self.0[idx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pad_repeats_first_coordinate() {
        let t = IntTuple::from_i64s(&[3, 5]);
        assert_eq!(t.pad(4).unwrap(), IntTuple::from_i64s(&[3, 3, 3, 5]));
        assert_eq!(t.pad(3).unwrap(), IntTuple::from_i64s(&[3, 3, 5]));
    }

    #[test]
    fn pad_identity_at_same_length() {
        let t = IntTuple::from_i64s(&[7]);
        assert_eq!(t.pad(1).unwrap(), t);
        let t = IntTuple::from_i64s(&[2, 4]);
        assert_eq!(t.pad(3).unwrap(), IntTuple::from_i64s(&[2, 2, 4]));
    }

    #[test]
    fn pad_rejects_shrinking() {
        let t = IntTuple::from_i64s(&[1, 2]);
        assert_eq!(t.pad(1), Err(Error::PadTooShort { m: 1, len: 2 }));
    }

    #[test]
    fn parse_round_trips_display() {
        let t = IntTuple::parse_line(" -12, 0 , 99999999999999999999999 ").unwrap();
        assert_eq!(t.to_string(), "-12,0,99999999999999999999999");
        assert_eq!(IntTuple::parse_line(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn parse_rejects_junk_and_empty() {
        assert!(IntTuple::parse_line("1,,2").is_err());
        assert!(IntTuple::parse_line("abc").is_err());
        assert_eq!(IntTuple::parse_line("  "), Err(Error::EmptyTuple));
    }

    #[test]
    fn parse_tuples_skips_comments_and_numbers_lines() {
        let doc = "# witnesses\n1,2\n\n3,4 # inline\n";
        let ts = IntTuple::parse_tuples(doc).unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[1], IntTuple::from_i64s(&[3, 4]));
        let err = IntTuple::parse_tuples("1,2\nx,y\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
