//! Feed codecs and order-book reconstruction.
//!
//! Three session input formats are owned end-to-end by this crate:
//!
//! * **EQB-1** — a length-prefixed big-endian binary equity feed carrying
//!   every displayable order event with nanosecond timestamps.
//! * **FDF-1** — a futures trade CSV (`ms,kind,price_ticks,size`).
//! * **TTF-1** — a consolidated trade-tape CSV (`ms,symbol,price_e4,size`).
//!
//! [`LimitOrderBook`] replays an EQB-1 stream into displayed depth and emits
//! the signed per-level share changes ([`BookDelta`]) that drive the
//! liquidity-response measurement downstream.

pub mod book;
pub mod codec;
pub mod message;
pub mod text;

pub use book::{BookDelta, LimitOrderBook};
pub use codec::{decode_equity_message, encode_equity_message, MessageStream};
pub use message::{EquityMessage, Side};
pub use text::{
    parse_futures_feed, parse_trade_tape, write_futures_feed, write_trade_tape, FuturesTrade,
    TapeTrade,
};

/// Feed decoding, parsing, and book-replay errors.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FeedError {
    #[error("incomplete frame: need {needed} more bytes")]
    Incomplete { needed: usize },
    #[error("unknown message type byte 0x{0:02x}")]
    UnknownMessage(u8),
    #[error("malformed message: {0}")]
    Malformed(String),
    #[error("line {line}: {reason}")]
    BadRow { line: usize, reason: String },
    #[error(
        "oversized cancel: order {order_id} has {remaining} shares, tried to remove {requested}"
    )]
    Overfill {
        order_id: u64,
        remaining: u32,
        requested: u32,
    },
    #[error("duplicate order id {0}")]
    DuplicateOrder(u64),
    #[error("unsorted input: timestamps must be nondecreasing")]
    Unsorted,
}
