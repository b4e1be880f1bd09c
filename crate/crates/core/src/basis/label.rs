use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A basis label: an index pair `(m,n)` or an opaque name.
///
/// Pairs sort before names; pairs sort lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Pair(usize, usize),
    Name(String),
}

impl Label {
    pub fn pair(&self) -> Option<(usize, usize)> {
        match *self {
            Label::Pair(m, n) => Some((m, n)),
            Label::Name(_) => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Pair(m, n) => write!(f, "({m},{n})"),
            Label::Name(s) => f.write_str(s),
        }
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::UnknownLabel(s.to_string()));
        }
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if let [a, b] = parts[..] {
                if let (Ok(m), Ok(n)) = (a.parse(), b.parse()) {
                    return Ok(Label::Pair(m, n));
                }
            }
            return Err(Error::UnknownLabel(s.to_string()));
        }
        Ok(Label::Name(t.to_string()))
    }
}

impl From<(usize, usize)> for Label {
    fn from((m, n): (usize, usize)) -> Self {
        Label::Pair(m, n)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
