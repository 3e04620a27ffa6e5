//! Ticker symbols stored as 8-byte right-space-padded ASCII, the wire layout
//! used by the equity feed.

use crate::CoreError;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol([u8; 8]);

impl Symbol {
    /// Build from a trimmed ticker like `"SPY"`. Must be 1..=8 printable
    /// ASCII characters with no embedded spaces.
    pub fn new(ticker: &str) -> Result<Self, CoreError> {
        let bytes = ticker.as_bytes();
        let ok = !bytes.is_empty()
            && bytes.len() <= 8
            && bytes.iter().all(|&b| b.is_ascii_graphic() && b != b' ');
        if !ok {
            return Err(CoreError::BadSymbol(ticker.to_string()));
        }
        let mut padded = [b' '; 8];
        padded[..bytes.len()].copy_from_slice(bytes);
        Ok(Self(padded))
    }

    /// Interpret 8 raw feed bytes. Rejects non-ASCII and embedded padding.
    pub fn from_padded(bytes: [u8; 8]) -> Result<Self, CoreError> {
        let trimmed_len = bytes
            .iter()
            .rposition(|&b| b != b' ')
            .map(|i| i + 1)
            .unwrap_or(0);
        let display = String::from_utf8_lossy(&bytes[..trimmed_len]).into_owned();
        let ok = trimmed_len > 0
            && bytes[..trimmed_len]
                .iter()
                .all(|&b| b.is_ascii_graphic() && b != b' ')
            && bytes[trimmed_len..].iter().all(|&b| b == b' ');
        if ok {
            Ok(Self(bytes))
        } else {
            Err(CoreError::BadSymbol(display))
        }
    }

    pub fn padded(&self) -> &[u8; 8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        let len = self
            .0
            .iter()
            .rposition(|&b| b != b' ')
            .map(|i| i + 1)
            .unwrap_or(0);
        // Constructors guarantee ASCII.
        std::str::from_utf8(&self.0[..len]).unwrap_or("")
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbol({})", self.as_str())
    }
}

impl Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        Symbol::new(&raw).map_err(serde::de::Error::custom)
    }
}
