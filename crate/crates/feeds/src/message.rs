//! Equity feed message model.

use lagline_core::{NsTimestamp, PriceE4, Symbol};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Bid,
    Ask,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Bid => Side::Ask,
            Side::Ask => Side::Bid,
        }
    }
}

/// One displayable-order event.
///
/// `Execute`, `Cancel`, `Delete`, and `Replace` reference a resting order by
/// id and carry no side/symbol/price of their own; the book state supplies
/// those. `HiddenTrade` reports a non-displayed execution and never touches
/// displayed depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquityMessage {
    Add {
        ts: NsTimestamp,
        order_id: u64,
        side: Side,
        shares: u32,
        symbol: Symbol,
        price: PriceE4,
    },
    Execute {
        ts: NsTimestamp,
        order_id: u64,
        executed_shares: u32,
        match_id: u64,
    },
    Cancel {
        ts: NsTimestamp,
        order_id: u64,
        canceled_shares: u32,
    },
    Delete {
        ts: NsTimestamp,
        order_id: u64,
    },
    Replace {
        ts: NsTimestamp,
        order_id: u64,
        new_order_id: u64,
        new_shares: u32,
        new_price: PriceE4,
    },
    HiddenTrade {
        ts: NsTimestamp,
        side: Side,
        shares: u32,
        symbol: Symbol,
        price: PriceE4,
        match_id: u64,
    },
}

impl EquityMessage {
    pub fn ts(&self) -> NsTimestamp {
        match *self {
            EquityMessage::Add { ts, .. }
            | EquityMessage::Execute { ts, .. }
            | EquityMessage::Cancel { ts, .. }
            | EquityMessage::Delete { ts, .. }
            | EquityMessage::Replace { ts, .. }
            | EquityMessage::HiddenTrade { ts, .. } => ts,
        }
    }

    /// Wire type byte for this variant.
    pub fn type_byte(&self) -> u8 {
        match self {
            EquityMessage::Add { .. } => b'A',
            EquityMessage::Execute { .. } => b'E',
            EquityMessage::Cancel { .. } => b'X',
            EquityMessage::Delete { .. } => b'D',
            EquityMessage::Replace { .. } => b'U',
            EquityMessage::HiddenTrade { .. } => b'P',
        }
    }
}
