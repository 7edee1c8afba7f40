//! PD (planar diagram) codes for knot diagrams.
//!
//! A crossing `X(e1,e2,e3,e4)` lists the four edge labels around a crossing
//! counterclockwise, starting from the incoming under-strand edge `e1`.
//! The under-strand runs e1 -> e3, the over-strand connects e2 and e4.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated PD code: every edge label occurs exactly twice.
///
/// The empty code is the round unknot diagram (no crossings, two regions);
/// it is only constructible through [`PDCode::unknot`] or a knot table, never
/// by parsing empty text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PDCode {
    crossings: Vec<[u64; 4]>,
}

#[derive(Serialize, Deserialize)]
struct PdJson {
    pd: Vec<[u64; 4]>,
}

impl PDCode {
    /// The zero-crossing unknot diagram.
    pub fn unknot() -> Self {
        PDCode {
            crossings: Vec::new(),
        }
    }

    /// Validates that each label occurs exactly twice across all crossings.
    pub fn from_crossings(crossings: Vec<[u64; 4]>) -> Result<Self> {
        let mut counts = std::collections::BTreeMap::new();
        for cr in &crossings {
            for &lab in cr {
                *counts.entry(lab).or_insert(0u32) += 1;
            }
        }
        for (lab, n) in counts {
            if n != 2 {
                return Err(Error::InvalidPd(format!(
                    "edge label {lab} occurs {n} times, expected 2"
                )));
            }
        }
        Ok(PDCode { crossings })
    }

    /// Parses either the text form `X(1,4,2,5);X(3,6,4,1);...` or the JSON
    /// form `{"pd": [[1,4,2,5],[3,6,4,1]]}`. Empty input is an error.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::InvalidPd("empty PD text".into()));
        }
        if trimmed.starts_with('{') {
            let parsed: PdJson = serde_json::from_str(trimmed)
                .map_err(|e| Error::InvalidPd(format!("bad PD JSON: {e}")))?;
            if parsed.pd.is_empty() {
                return Err(Error::InvalidPd("PD JSON lists no crossings".into()));
            }
            return Self::from_crossings(parsed.pd);
        }
        let mut crossings = Vec::new();
        for part in trimmed.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let inner = part
                .strip_prefix("X(")
                .or_else(|| part.strip_prefix("x("))
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::InvalidPd(format!("expected X(a,b,c,d), got {part:?}")))?;
            let nums: Vec<u64> = inner
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::InvalidPd(format!("bad edge label {:?}", s.trim())))
                })
                .collect::<Result<_>>()?;
            let arr: [u64; 4] = nums.try_into().map_err(|v: Vec<u64>| {
                Error::InvalidPd(format!("crossing needs 4 labels, got {}", v.len()))
            })?;
            crossings.push(arr);
        }
        if crossings.is_empty() {
            return Err(Error::InvalidPd("no crossings in PD text".into()));
        }
        Self::from_crossings(crossings)
    }

    pub fn crossings(&self) -> &[[u64; 4]] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PdJson {
            pd: self.crossings.clone(),
        })
        .expect("PD serializes")
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.crossings.is_empty() {
            return write!(f, "unknot");
        }
        let parts: Vec<String> = self
            .crossings
            .iter()
            .map(|c| format!("X({},{},{},{})", c[0], c[1], c[2], c[3]))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl Serialize for PDCode {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PdJson {
            pd: self.crossings.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PDCode {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let parsed = PdJson::deserialize(de)?;
        PDCode::from_crossings(parsed.pd).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_text() {
        let pd = PDCode::parse("X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)").unwrap();
        assert_eq!(pd.len(), 3);
        assert_eq!(pd.crossings()[1], [3, 6, 4, 1]);
        assert_eq!(pd.to_string(), "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)");
    }

    #[test]
    fn parses_json() {
        let pd = PDCode::parse(r#"{"pd": [[1,4,2,5],[3,6,4,1],[5,2,6,3]]}"#).unwrap();
        assert_eq!(pd.len(), 3);
        let back = PDCode::parse(&pd.to_json()).unwrap();
        assert_eq!(back, pd);
    }

    #[test]
    fn rejects_empty_text() {
        assert!(matches!(PDCode::parse(""), Err(Error::InvalidPd(_))));
        assert!(matches!(PDCode::parse("  \n "), Err(Error::InvalidPd(_))));
        assert!(matches!(
            PDCode::parse(r#"{"pd": []}"#),
            Err(Error::InvalidPd(_))
        ));
    }

    #[test]
    fn rejects_bad_labels() {
        // label 5 occurs once, label 6 three times
        assert!(PDCode::parse("X(1,4,2,5);X(3,6,4,1);X(6,2,6,3)").is_err());
        assert!(PDCode::parse("X(1,2,3)").is_err());
        assert!(PDCode::parse("Y(1,2,3,4)").is_err());
        assert!(PDCode::parse("X(1,2,x,4)").is_err());
    }

    #[test]
    fn unknot_is_special() {
        let u = PDCode::unknot();
        assert!(u.is_empty());
        assert_eq!(u.to_string(), "unknot");
        // but an empty crossing list cannot come from text
        assert!(PDCode::parse("unknot").is_err());
    }
}
