//! Response-measurement invariants on randomized inputs.

use lagline_core::{FuturesPrice, MsTimestamp, NsTimestamp, PriceE4, Symbol};
use lagline_feeds::FuturesTrade;
use lagline_feeds::{BookDelta, Side, TapeTrade};
use lagline_response::{in_force_series, liquidity_contributions, screen_price_events, PriceEvent};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spy() -> Symbol {
    Symbol::new("SPY").unwrap()
}

fn random_day(seed: u64) -> (Vec<PriceEvent>, Vec<BookDelta>, Vec<TapeTrade>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tape = vec![TapeTrade {
        ts: MsTimestamp::new(5_000).unwrap(),
        symbol: spy(),
        price: PriceE4::new(1_301_300),
        size: 100,
    }];
    let mut events = Vec::new();
    let mut at = 10_000u64;
    for _ in 0..50 {
        at += rng.gen_range(5..5_000);
        events.push(PriceEvent {
            ms: MsTimestamp::new(at).unwrap(),
            direction: if rng.gen() { 1 } else { -1 },
            in_force_price: FuturesPrice::from_ticks(402),
            ref_equity_price: None,
        });
    }
    let mut deltas = Vec::new();
    let mut ts = 9_000_000_000u64; // 9000 ms in ns
    for _ in 0..2_000 {
        ts += rng.gen_range(1..200_000_000);
        if ts >= 86_400_000_000_000 {
            break;
        }
        deltas.push(BookDelta {
            ts: NsTimestamp::new(ts).unwrap(),
            side: if rng.gen() { Side::Bid } else { Side::Ask },
            price: PriceE4::new(1_301_300 + 100 * rng.gen_range(-3i64..=3)),
            share_change: rng.gen_range(-500i64..=500),
        });
    }
    (events, deltas, tape)
}

#[test]
fn direction_antisymmetry() {
    // Negating every event direction and every book delta leaves the
    // liquidity curve invariant.
    for seed in [1u64, 2, 3] {
        let (events, deltas, tape) = random_day(seed);
        let flipped_events: Vec<PriceEvent> = events
            .iter()
            .map(|e| PriceEvent {
                direction: -e.direction,
                ..*e
            })
            .collect();
        let flipped_deltas: Vec<BookDelta> = deltas
            .iter()
            .map(|d| BookDelta {
                share_change: -d.share_change,
                ..*d
            })
            .collect();

        let base = liquidity_contributions(&events, &deltas, &tape, spy()).unwrap();
        let flipped =
            liquidity_contributions(&flipped_events, &flipped_deltas, &tape, spy()).unwrap();
        let (a, b) = (base.mean(), flipped.mean());
        for idx in 0..a.len() {
            assert!((a[idx] - b[idx]).abs() < 1e-9, "seed {seed} idx {idx}");
        }
    }
}

#[test]
fn screening_is_intensity_faithful() {
    // A random-walk futures stream where every trade moves the price one
    // tick: every millisecond with a trade whose in-force differs from the
    // previous in-force must screen as exactly one event.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut trades = Vec::new();
    let mut price = 5_000i64;
    let mut at = 34_200_000u64;
    for _ in 0..5_000 {
        at += rng.gen_range(1..4_000);
        if at >= 57_600_000 {
            break;
        }
        price += if rng.gen() { 1 } else { -1 };
        trades.push(FuturesTrade {
            ts: MsTimestamp::new(at).unwrap(),
            price: FuturesPrice::from_ticks(price),
            size: 1,
        });
    }
    let series = in_force_series(&trades).unwrap();
    let events = screen_price_events(&series);

    // Independent count: walk the per-ms series by hand.
    let mut expected = 0usize;
    let mut prev: Option<i64> = None;
    for p in series.values() {
        if let Some(q) = prev {
            if p.ticks() != q {
                expected += 1;
            }
        }
        prev = Some(p.ticks());
    }
    assert_eq!(events.len(), expected);
    // Directions match the sign of each in-force change.
    let mut prev: Option<i64> = None;
    let mut idx = 0usize;
    for p in series.values() {
        if let Some(q) = prev {
            if p.ticks() != q {
                let expected_dir = if p.ticks() > q { 1 } else { -1 };
                assert_eq!(events[idx].direction, expected_dir);
                idx += 1;
            }
        }
        prev = Some(p.ticks());
    }
}
