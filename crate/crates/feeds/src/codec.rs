//! EQB-1 binary codec.
//!
//! Frame layout, everything big-endian:
//!
//! ```text
//! u16  payload length
//! u8   type: 'A' | 'E' | 'X' | 'D' | 'U' | 'P'
//! u64  nanosecond timestamp
//! ...  type-specific fields, in declaration order:
//!      'A'  order_id u64, side u8 ('B'/'S'), shares u32, symbol [u8;8], price u32
//!      'E'  order_id u64, executed_shares u32, match_id u64
//!      'X'  order_id u64, canceled_shares u32
//!      'D'  order_id u64
//!      'U'  order_id u64, new_order_id u64, new_shares u32, new_price u32
//!      'P'  side u8, shares u32, symbol [u8;8], price u32, match_id u64
//! ```
//!
//! Prices ride as u32 counts of 10^-4 dollars; symbols as 8 ASCII bytes,
//! right-padded with spaces. `decode(encode(m)) == m`, byte-exact.

use crate::message::{EquityMessage, Side};
use crate::FeedError;
use lagline_core::{NsTimestamp, PriceE4, Symbol};

const LEN_ADD: usize = 1 + 8 + 8 + 1 + 4 + 8 + 4;
const LEN_EXECUTE: usize = 1 + 8 + 8 + 4 + 8;
const LEN_CANCEL: usize = 1 + 8 + 8 + 4;
const LEN_DELETE: usize = 1 + 8 + 8;
const LEN_REPLACE: usize = 1 + 8 + 8 + 8 + 4 + 4;
const LEN_HIDDEN: usize = 1 + 8 + 1 + 4 + 8 + 4 + 8;

struct Writer<'a>(&'a mut Vec<u8>);

impl Writer<'_> {
    fn u8(&mut self, v: u8) {
        self.0.push(v);
    }
    fn u16(&mut self, v: u16) {
        self.0.extend_from_slice(&v.to_be_bytes());
    }
    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_be_bytes());
    }
    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_be_bytes());
    }
    fn side(&mut self, side: Side) {
        self.u8(match side {
            Side::Bid => b'B',
            Side::Ask => b'S',
        });
    }
    fn symbol(&mut self, sym: &Symbol) {
        self.0.extend_from_slice(sym.padded());
    }
    fn price(&mut self, p: PriceE4) -> Result<(), FeedError> {
        let units = p.units();
        if !(0..=u32::MAX as i64).contains(&units) {
            return Err(FeedError::Malformed(format!(
                "price {units} not encodable as u32"
            )));
        }
        self.u32(units as u32);
        Ok(())
    }
}

/// Append one framed message to `out`.
pub fn encode_equity_message(msg: &EquityMessage, out: &mut Vec<u8>) -> Result<(), FeedError> {
    let payload_len = match msg {
        EquityMessage::Add { .. } => LEN_ADD,
        EquityMessage::Execute { .. } => LEN_EXECUTE,
        EquityMessage::Cancel { .. } => LEN_CANCEL,
        EquityMessage::Delete { .. } => LEN_DELETE,
        EquityMessage::Replace { .. } => LEN_REPLACE,
        EquityMessage::HiddenTrade { .. } => LEN_HIDDEN,
    };
    let mut w = Writer(out);
    w.u16(payload_len as u16);
    w.u8(msg.type_byte());
    w.u64(msg.ts().value());
    match *msg {
        EquityMessage::Add {
            order_id,
            side,
            shares,
            ref symbol,
            price,
            ..
        } => {
            w.u64(order_id);
            w.side(side);
            w.u32(shares);
            w.symbol(symbol);
            w.price(price)?;
        }
        EquityMessage::Execute {
            order_id,
            executed_shares,
            match_id,
            ..
        } => {
            w.u64(order_id);
            w.u32(executed_shares);
            w.u64(match_id);
        }
        EquityMessage::Cancel {
            order_id,
            canceled_shares,
            ..
        } => {
            w.u64(order_id);
            w.u32(canceled_shares);
        }
        EquityMessage::Delete { order_id, .. } => {
            w.u64(order_id);
        }
        EquityMessage::Replace {
            order_id,
            new_order_id,
            new_shares,
            new_price,
            ..
        } => {
            w.u64(order_id);
            w.u64(new_order_id);
            w.u32(new_shares);
            w.price(new_price)?;
        }
        EquityMessage::HiddenTrade {
            side,
            shares,
            ref symbol,
            price,
            match_id,
            ..
        } => {
            w.side(side);
            w.u32(shares);
            w.symbol(symbol);
            w.price(price)?;
            w.u64(match_id);
        }
    }
    Ok(())
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], FeedError> {
        if self.pos + n > self.buf.len() {
            return Err(FeedError::Malformed(
                "payload shorter than declared field layout".into(),
            ));
        }
        let slice = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }
    fn u8(&mut self) -> Result<u8, FeedError> {
        Ok(self.take(1)?[0])
    }
    fn u32(&mut self) -> Result<u32, FeedError> {
        Ok(u32::from_be_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64, FeedError> {
        Ok(u64::from_be_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn side(&mut self) -> Result<Side, FeedError> {
        match self.u8()? {
            b'B' => Ok(Side::Bid),
            b'S' => Ok(Side::Ask),
            other => Err(FeedError::Malformed(format!("bad side byte 0x{other:02x}"))),
        }
    }
    fn symbol(&mut self) -> Result<Symbol, FeedError> {
        let raw: [u8; 8] = self.take(8)?.try_into().unwrap();
        Symbol::from_padded(raw).map_err(|e| FeedError::Malformed(e.to_string()))
    }
    fn price(&mut self) -> Result<PriceE4, FeedError> {
        Ok(PriceE4::new(self.u32()? as i64))
    }
    fn ts(&mut self) -> Result<NsTimestamp, FeedError> {
        NsTimestamp::new(self.u64()?).map_err(|e| FeedError::Malformed(e.to_string()))
    }
}

/// Decode one framed message from the front of `bytes`.
///
/// Returns the message and the total bytes consumed (frame prefix included).
pub fn decode_equity_message(bytes: &[u8]) -> Result<(EquityMessage, usize), FeedError> {
    if bytes.len() < 2 {
        return Err(FeedError::Incomplete {
            needed: 2 - bytes.len(),
        });
    }
    let payload_len = u16::from_be_bytes([bytes[0], bytes[1]]) as usize;
    if bytes.len() < 2 + payload_len {
        return Err(FeedError::Incomplete {
            needed: 2 + payload_len - bytes.len(),
        });
    }
    let payload = &bytes[2..2 + payload_len];
    let mut r = Reader {
        buf: payload,
        pos: 0,
    };
    let type_byte = r.u8()?;
    let expected_len = match type_byte {
        b'A' => LEN_ADD,
        b'E' => LEN_EXECUTE,
        b'X' => LEN_CANCEL,
        b'D' => LEN_DELETE,
        b'U' => LEN_REPLACE,
        b'P' => LEN_HIDDEN,
        other => return Err(FeedError::UnknownMessage(other)),
    };
    if payload_len != expected_len {
        return Err(FeedError::Malformed(format!(
            "type '{}' payload must be {expected_len} bytes, frame says {payload_len}",
            type_byte as char
        )));
    }
    let ts = r.ts()?;
    let msg = match type_byte {
        b'A' => EquityMessage::Add {
            ts,
            order_id: r.u64()?,
            side: r.side()?,
            shares: r.u32()?,
            symbol: r.symbol()?,
            price: r.price()?,
        },
        b'E' => EquityMessage::Execute {
            ts,
            order_id: r.u64()?,
            executed_shares: r.u32()?,
            match_id: r.u64()?,
        },
        b'X' => EquityMessage::Cancel {
            ts,
            order_id: r.u64()?,
            canceled_shares: r.u32()?,
        },
        b'D' => EquityMessage::Delete {
            ts,
            order_id: r.u64()?,
        },
        b'U' => EquityMessage::Replace {
            ts,
            order_id: r.u64()?,
            new_order_id: r.u64()?,
            new_shares: r.u32()?,
            new_price: r.price()?,
        },
        b'P' => EquityMessage::HiddenTrade {
            ts,
            side: r.side()?,
            shares: r.u32()?,
            symbol: r.symbol()?,
            price: r.price()?,
            match_id: r.u64()?,
        },
        _ => unreachable!(),
    };
    Ok((msg, 2 + payload_len))
}

/// Iterator over a contiguous EQB-1 byte stream.
///
/// Yields messages until the buffer is exhausted; a trailing partial frame or
/// a decode failure surfaces as a final `Err`.
pub struct MessageStream<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> MessageStream<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }
}

impl Iterator for MessageStream<'_> {
    type Item = Result<EquityMessage, FeedError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.pos >= self.bytes.len() {
            return None;
        }
        match decode_equity_message(&self.bytes[self.pos..]) {
            Ok((msg, consumed)) => {
                self.pos += consumed;
                Some(Ok(msg))
            }
            Err(e) => {
                self.pos = self.bytes.len();
                Some(Err(e))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spy() -> Symbol {
        Symbol::new("SPY").unwrap()
    }

    #[test]
    fn add_round_trip_matches_spec_example() {
        let msg = EquityMessage::Add {
            ts: NsTimestamp::new(34_200_000_000_000).unwrap(),
            order_id: 1,
            side: Side::Bid,
            shares: 400,
            symbol: spy(),
            price: PriceE4::new(1_301_300),
        };
        let mut buf = Vec::new();
        encode_equity_message(&msg, &mut buf).unwrap();
        let (decoded, consumed) = decode_equity_message(&buf).unwrap();
        assert_eq!(decoded, msg);
        assert_eq!(consumed, buf.len());
    }

    #[test]
    fn empty_input_is_incomplete() {
        assert!(matches!(
            decode_equity_message(&[]),
            Err(FeedError::Incomplete { .. })
        ));
    }

    #[test]
    fn truncated_payload_is_incomplete() {
        let msg = EquityMessage::Delete {
            ts: NsTimestamp::new(1).unwrap(),
            order_id: 7,
        };
        let mut buf = Vec::new();
        encode_equity_message(&msg, &mut buf).unwrap();
        assert!(matches!(
            decode_equity_message(&buf[..buf.len() - 1]),
            Err(FeedError::Incomplete { needed: 1 })
        ));
    }

    #[test]
    fn unknown_type_byte_rejected() {
        let mut buf = Vec::new();
        buf.extend_from_slice(&(9u16).to_be_bytes());
        buf.push(b'Z');
        buf.extend_from_slice(&[0u8; 8]);
        assert_eq!(
            decode_equity_message(&buf),
            Err(FeedError::UnknownMessage(b'Z'))
        );
    }

    #[test]
    fn non_ascii_symbol_rejected() {
        let msg = EquityMessage::Add {
            ts: NsTimestamp::new(1).unwrap(),
            order_id: 1,
            side: Side::Bid,
            shares: 1,
            symbol: spy(),
            price: PriceE4::new(100),
        };
        let mut buf = Vec::new();
        encode_equity_message(&msg, &mut buf).unwrap();
        // Symbol field of an Add starts after len(2) + type(1) + ts(8) + id(8) + side(1) + shares(4).
        buf[2 + 1 + 8 + 8 + 1 + 4] = 0xFF;
        assert!(matches!(
            decode_equity_message(&buf),
            Err(FeedError::Malformed(_))
        ));
    }
}
