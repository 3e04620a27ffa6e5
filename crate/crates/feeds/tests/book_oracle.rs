//! Replay a large random-but-valid message stream and cross-check the
//! incrementally maintained book against independent accounting.

use lagline_core::{NsTimestamp, PriceE4, Symbol};
use lagline_feeds::{EquityMessage, LimitOrderBook, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Drives a book with a self-consistent stream: references only live ids,
/// never over-cancels.
struct StreamDriver {
    rng: ChaCha8Rng,
    next_order_id: u64,
    next_match_id: u64,
    live: Vec<(u64, u32)>, // (order_id, remaining)
    clock: u64,
    symbol: Symbol,
}

impl StreamDriver {
    fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            next_order_id: 1,
            next_match_id: 1,
            live: Vec::new(),
            clock: 34_200_000_000_000,
            symbol: Symbol::new("SPY").unwrap(),
        }
    }

    fn ts(&mut self) -> NsTimestamp {
        self.clock += self.rng.gen_range(1..2_000_000);
        NsTimestamp::new(self.clock).unwrap()
    }

    fn price(&mut self) -> PriceE4 {
        PriceE4::new(1_300_000 + 100 * self.rng.gen_range(-20i64..=20))
    }

    fn next(&mut self) -> EquityMessage {
        let roll: f64 = self.rng.gen();
        let ts = self.ts();
        if self.live.is_empty() || roll < 0.45 {
            let order_id = self.next_order_id;
            self.next_order_id += 1;
            let shares = self.rng.gen_range(100..=1000);
            self.live.push((order_id, shares));
            let side = if self.rng.gen() { Side::Bid } else { Side::Ask };
            let price = self.price();
            EquityMessage::Add {
                ts,
                order_id,
                side,
                shares,
                symbol: self.symbol,
                price,
            }
        } else if roll < 0.60 {
            let idx = self.rng.gen_range(0..self.live.len());
            let (order_id, remaining) = self.live[idx];
            let executed = self.rng.gen_range(1..=remaining);
            if executed == remaining {
                self.live.swap_remove(idx);
            } else {
                self.live[idx].1 -= executed;
            }
            let match_id = self.next_match_id;
            self.next_match_id += 1;
            EquityMessage::Execute {
                ts,
                order_id,
                executed_shares: executed,
                match_id,
            }
        } else if roll < 0.75 {
            let idx = self.rng.gen_range(0..self.live.len());
            let (order_id, remaining) = self.live[idx];
            let canceled = self.rng.gen_range(1..=remaining);
            if canceled == remaining {
                self.live.swap_remove(idx);
            } else {
                self.live[idx].1 -= canceled;
            }
            EquityMessage::Cancel {
                ts,
                order_id,
                canceled_shares: canceled,
            }
        } else if roll < 0.85 {
            let idx = self.rng.gen_range(0..self.live.len());
            let (order_id, _) = self.live.swap_remove(idx);
            EquityMessage::Delete { ts, order_id }
        } else if roll < 0.95 {
            let idx = self.rng.gen_range(0..self.live.len());
            let (order_id, _) = self.live[idx];
            let new_order_id = self.next_order_id;
            self.next_order_id += 1;
            let new_shares = self.rng.gen_range(100..=1000);
            self.live[idx] = (new_order_id, new_shares);
            let new_price = self.price();
            EquityMessage::Replace {
                ts,
                order_id,
                new_order_id,
                new_shares,
                new_price,
            }
        } else {
            let match_id = self.next_match_id;
            self.next_match_id += 1;
            let side = if self.rng.gen() { Side::Bid } else { Side::Ask };
            let price = self.price();
            let shares = self.rng.gen_range(100..=1000);
            EquityMessage::HiddenTrade {
                ts,
                side,
                shares,
                symbol: self.symbol,
                price,
                match_id,
            }
        }
    }
}

#[test]
fn ten_thousand_message_stream_matches_brute_force_depth() {
    let mut driver = StreamDriver::new(42);
    let mut book = LimitOrderBook::new(Symbol::new("SPY").unwrap());
    let mut delta_sums: HashMap<(Side, i64), i64> = HashMap::new();

    for _ in 0..10_000 {
        let msg = driver.next();
        let deltas = book.apply(&msg).expect("valid stream must replay cleanly");
        for d in deltas {
            *delta_sums.entry((d.side, d.price.units())).or_default() += d.share_change;
        }
    }
    assert_eq!(book.orphan_count(), 0);

    // Brute-force depth from the open-order set must equal maintained depth.
    let brute = book.depth_from_orders();
    for (side, price, depth) in book.levels() {
        assert_eq!(
            brute.get(&(side, price.units())).copied().unwrap_or(0),
            depth,
            "level {side:?} {price}"
        );
    }
    let maintained: usize = book.levels().len();
    assert_eq!(brute.len(), maintained, "level sets must coincide");

    // Conservation: summed deltas per level equal final depth (zero levels
    // must sum to zero).
    for ((side, price_units), sum) in &delta_sums {
        let depth = book.depth_at(*side, PriceE4::new(*price_units));
        assert_eq!(*sum, depth as i64, "level {side:?} {price_units}");
        assert!(*sum >= 0);
    }
}

#[test]
fn no_negative_depth_on_any_prefix() {
    let mut driver = StreamDriver::new(7);
    let mut book = LimitOrderBook::new(Symbol::new("SPY").unwrap());
    let mut running: HashMap<(Side, i64), i64> = HashMap::new();
    for _ in 0..5_000 {
        let msg = driver.next();
        for d in book.apply(&msg).unwrap() {
            let level = running.entry((d.side, d.price.units())).or_default();
            *level += d.share_change;
            assert!(*level >= 0, "depth went negative at {:?}", d);
        }
    }
}
