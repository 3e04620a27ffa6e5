//! Displayed-depth limit order book reconstruction.

use crate::message::{EquityMessage, Side};
use crate::FeedError;
use lagline_core::{NsTimestamp, PriceE4, Symbol};
use std::collections::{BTreeMap, HashMap};

/// Signed displayed-share change at one price level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BookDelta {
    pub ts: NsTimestamp,
    pub side: Side,
    pub price: PriceE4,
    pub share_change: i64,
}

#[derive(Debug, Clone, Copy)]
struct OpenOrder {
    side: Side,
    price: PriceE4,
    remaining: u32,
}

/// One symbol's displayed book, rebuilt message by message.
///
/// Depth at a level is always the sum of remaining shares of the open orders
/// resting there; the last order leaving a level removes the level. Messages
/// referencing unknown order ids are counted and skipped (real feeds start
/// mid-state), adds for other symbols are ignored, and hidden trades never
/// touch depth.
#[derive(Debug, Clone)]
pub struct LimitOrderBook {
    symbol: Symbol,
    open_orders: HashMap<u64, OpenOrder>,
    bid_depth: BTreeMap<i64, u64>,
    ask_depth: BTreeMap<i64, u64>,
    orphan_count: u64,
    foreign_count: u64,
}

impl LimitOrderBook {
    pub fn new(symbol: Symbol) -> Self {
        Self {
            symbol,
            open_orders: HashMap::new(),
            bid_depth: BTreeMap::new(),
            ask_depth: BTreeMap::new(),
            orphan_count: 0,
            foreign_count: 0,
        }
    }

    pub fn symbol(&self) -> Symbol {
        self.symbol
    }

    /// Messages that referenced an unknown order id.
    pub fn orphan_count(&self) -> u64 {
        self.orphan_count
    }

    /// Adds observed for other symbols.
    pub fn foreign_count(&self) -> u64 {
        self.foreign_count
    }

    pub fn depth_at(&self, side: Side, price: PriceE4) -> u64 {
        self.depth_map(side)
            .get(&price.units())
            .copied()
            .unwrap_or(0)
    }

    pub fn open_order_count(&self) -> usize {
        self.open_orders.len()
    }

    pub fn has_order(&self, order_id: u64) -> bool {
        self.open_orders.contains_key(&order_id)
    }

    fn depth_map(&self, side: Side) -> &BTreeMap<i64, u64> {
        match side {
            Side::Bid => &self.bid_depth,
            Side::Ask => &self.ask_depth,
        }
    }

    fn depth_map_mut(&mut self, side: Side) -> &mut BTreeMap<i64, u64> {
        match side {
            Side::Bid => &mut self.bid_depth,
            Side::Ask => &mut self.ask_depth,
        }
    }

    /// All levels as (side, price, depth), bids then asks, ascending price.
    pub fn levels(&self) -> Vec<(Side, PriceE4, u64)> {
        let mut out = Vec::with_capacity(self.bid_depth.len() + self.ask_depth.len());
        for (&p, &d) in &self.bid_depth {
            out.push((Side::Bid, PriceE4::new(p), d));
        }
        for (&p, &d) in &self.ask_depth {
            out.push((Side::Ask, PriceE4::new(p), d));
        }
        out
    }

    /// Recompute the full depth map from the open-order set. This is the slow
    /// independent route used to cross-check the incrementally maintained
    /// depth in tests.
    pub fn depth_from_orders(&self) -> HashMap<(Side, i64), u64> {
        let mut depth: HashMap<(Side, i64), u64> = HashMap::new();
        for order in self.open_orders.values() {
            *depth.entry((order.side, order.price.units())).or_default() += order.remaining as u64;
        }
        depth
    }

    fn change_level(
        &mut self,
        ts: NsTimestamp,
        side: Side,
        price: PriceE4,
        change: i64,
        deltas: &mut Vec<BookDelta>,
    ) {
        let map = self.depth_map_mut(side);
        let entry = map.entry(price.units()).or_insert(0);
        let updated = (*entry as i64) + change;
        debug_assert!(updated >= 0, "depth must never go negative");
        if updated == 0 {
            map.remove(&price.units());
        } else {
            *entry = updated as u64;
        }
        deltas.push(BookDelta {
            ts,
            side,
            price,
            share_change: change,
        });
    }

    fn reduce_order(
        &mut self,
        ts: NsTimestamp,
        order_id: u64,
        shares: u32,
        deltas: &mut Vec<BookDelta>,
    ) -> Result<(), FeedError> {
        let order = match self.open_orders.get_mut(&order_id) {
            Some(o) => o,
            None => {
                self.orphan_count += 1;
                return Ok(());
            }
        };
        if shares > order.remaining {
            return Err(FeedError::Overfill {
                order_id,
                remaining: order.remaining,
                requested: shares,
            });
        }
        order.remaining -= shares;
        let (side, price, emptied) = (order.side, order.price, order.remaining == 0);
        if emptied {
            self.open_orders.remove(&order_id);
        }
        self.change_level(ts, side, price, -(shares as i64), deltas);
        Ok(())
    }

    fn remove_order(
        &mut self,
        ts: NsTimestamp,
        order_id: u64,
        deltas: &mut Vec<BookDelta>,
    ) -> Result<Option<OpenOrder>, FeedError> {
        match self.open_orders.remove(&order_id) {
            Some(order) => {
                self.change_level(
                    ts,
                    order.side,
                    order.price,
                    -(order.remaining as i64),
                    deltas,
                );
                Ok(Some(order))
            }
            None => {
                self.orphan_count += 1;
                Ok(None)
            }
        }
    }

    /// Apply one message, returning the displayed-depth deltas it caused.
    pub fn apply(&mut self, msg: &EquityMessage) -> Result<Vec<BookDelta>, FeedError> {
        let mut deltas = Vec::new();
        match *msg {
            EquityMessage::Add {
                ts,
                order_id,
                side,
                shares,
                symbol,
                price,
            } => {
                if symbol != self.symbol {
                    self.foreign_count += 1;
                    return Ok(deltas);
                }
                if shares == 0 {
                    return Err(FeedError::Malformed(format!(
                        "add order {order_id} with zero shares"
                    )));
                }
                if self.open_orders.contains_key(&order_id) {
                    return Err(FeedError::DuplicateOrder(order_id));
                }
                self.open_orders.insert(
                    order_id,
                    OpenOrder {
                        side,
                        price,
                        remaining: shares,
                    },
                );
                self.change_level(ts, side, price, shares as i64, &mut deltas);
            }
            EquityMessage::Execute {
                ts,
                order_id,
                executed_shares,
                ..
            } => {
                self.reduce_order(ts, order_id, executed_shares, &mut deltas)?;
            }
            EquityMessage::Cancel {
                ts,
                order_id,
                canceled_shares,
            } => {
                self.reduce_order(ts, order_id, canceled_shares, &mut deltas)?;
            }
            EquityMessage::Delete { ts, order_id } => {
                self.remove_order(ts, order_id, &mut deltas)?;
            }
            EquityMessage::Replace {
                ts,
                order_id,
                new_order_id,
                new_shares,
                new_price,
            } => {
                if new_shares == 0 {
                    return Err(FeedError::Malformed(format!(
                        "replace into order {new_order_id} with zero shares"
                    )));
                }
                if self.open_orders.contains_key(&new_order_id) {
                    return Err(FeedError::DuplicateOrder(new_order_id));
                }
                if let Some(old) = self.remove_order(ts, order_id, &mut deltas)? {
                    self.open_orders.insert(
                        new_order_id,
                        OpenOrder {
                            side: old.side,
                            price: new_price,
                            remaining: new_shares,
                        },
                    );
                    self.change_level(ts, old.side, new_price, new_shares as i64, &mut deltas);
                }
            }
            EquityMessage::HiddenTrade { .. } => {}
        }
        Ok(deltas)
    }

    /// Replay a whole message sequence, collecting every delta.
    pub fn replay<'a, I>(&mut self, messages: I) -> Result<Vec<BookDelta>, FeedError>
    where
        I: IntoIterator<Item = &'a EquityMessage>,
    {
        let mut all = Vec::new();
        for msg in messages {
            all.extend(self.apply(msg)?);
        }
        Ok(all)
    }
}
