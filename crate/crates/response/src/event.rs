//! In-force screening of the futures stream into directed price events.

use crate::ResponseError;
use lagline_core::{FuturesPrice, MsTimestamp, PriceE4, Symbol};
use lagline_feeds::{FuturesTrade, TapeTrade};
use std::collections::BTreeMap;

/// A millisecond whose in-force futures trade changed price.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceEvent {
    pub ms: MsTimestamp,
    /// +1 for an uptick, -1 for a downtick.
    pub direction: i8,
    pub in_force_price: FuturesPrice,
    /// Last equity traded price as of the end of the event millisecond; set
    /// by [`resolve_reference_prices`], `None` until then.
    pub ref_equity_price: Option<PriceE4>,
}

/// Per-millisecond in-force price: for each millisecond containing at least
/// one trade, the price of its last trade. Input must be time-ordered.
pub fn in_force_series(
    trades: &[FuturesTrade],
) -> Result<BTreeMap<MsTimestamp, FuturesPrice>, ResponseError> {
    let mut series = BTreeMap::new();
    let mut prev_ms: Option<MsTimestamp> = None;
    for trade in trades {
        if let Some(prev) = prev_ms {
            if trade.ts < prev {
                return Err(ResponseError::Unsorted);
            }
        }
        prev_ms = Some(trade.ts);
        // Later trades in the same millisecond overwrite: last one is in force.
        series.insert(trade.ts, trade.price);
    }
    Ok(series)
}

/// One event per millisecond whose in-force price differs from the most
/// recent earlier in-force price. The first in-force price of the day seeds
/// the comparator and emits no event.
pub fn screen_price_events(series: &BTreeMap<MsTimestamp, FuturesPrice>) -> Vec<PriceEvent> {
    let mut events = Vec::new();
    let mut prev: Option<FuturesPrice> = None;
    for (&ms, &price) in series {
        if let Some(prev_price) = prev {
            if price != prev_price {
                events.push(PriceEvent {
                    ms,
                    direction: if price > prev_price { 1 } else { -1 },
                    in_force_price: price,
                    ref_equity_price: None,
                });
            }
        }
        prev = Some(price);
    }
    events
}

/// Attach to each event the last tape-traded price of `symbol` as of the end
/// of the event millisecond. Returns the events that found one, plus the
/// count skipped for want of any prior trade.
pub fn resolve_reference_prices(
    events: &[PriceEvent],
    tape: &[TapeTrade],
    symbol: Symbol,
) -> Result<(Vec<PriceEvent>, usize), ResponseError> {
    let own: Vec<&TapeTrade> = tape.iter().filter(|t| t.symbol == symbol).collect();
    if own.windows(2).any(|w| w[1].ts < w[0].ts) {
        return Err(ResponseError::Unsorted);
    }
    let mut resolved = Vec::with_capacity(events.len());
    let mut skipped = 0usize;
    for event in events {
        // Last trade with ts <= event ms.
        let idx = own.partition_point(|t| t.ts <= event.ms);
        if idx == 0 {
            skipped += 1;
            continue;
        }
        let mut e = *event;
        e.ref_equity_price = Some(own[idx - 1].price);
        resolved.push(e);
    }
    Ok((resolved, skipped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use lagline_core::Symbol;

    fn ms(v: u64) -> MsTimestamp {
        MsTimestamp::new(v).unwrap()
    }

    fn trade(ts_ms: u64, ticks: i64) -> FuturesTrade {
        FuturesTrade {
            ts: ms(ts_ms),
            price: FuturesPrice::from_ticks(ticks),
            size: 1,
        }
    }

    #[test]
    fn last_trade_in_millisecond_is_in_force() {
        // 100.25 then 100.50 inside ms 1000 (E-mini quarter ticks: 401, 402).
        let series =
            in_force_series(&[trade(1000, 401), trade(1000, 402), trade(1001, 401)]).unwrap();
        assert_eq!(series[&ms(1000)], FuturesPrice::from_ticks(402));
        assert_eq!(series[&ms(1001)], FuturesPrice::from_ticks(401));
    }

    #[test]
    fn empty_and_unsorted() {
        assert!(in_force_series(&[]).unwrap().is_empty());
        assert_eq!(
            in_force_series(&[trade(1001, 401), trade(1000, 402)]),
            Err(ResponseError::Unsorted)
        );
    }

    #[test]
    fn screen_emits_directed_events_after_seed() {
        // Seed at ms 999 with 401, then up to 402 at 1000, down to 401 at 1001.
        let series =
            in_force_series(&[trade(999, 401), trade(1000, 402), trade(1001, 401)]).unwrap();
        let events = screen_price_events(&series);
        assert_eq!(events.len(), 2);
        assert_eq!((events[0].ms, events[0].direction), (ms(1000), 1));
        assert_eq!((events[1].ms, events[1].direction), (ms(1001), -1));
    }

    #[test]
    fn constant_price_day_has_no_events() {
        let series =
            in_force_series(&[trade(1000, 401), trade(2000, 401), trade(3000, 401)]).unwrap();
        assert!(screen_price_events(&series).is_empty());
    }

    #[test]
    fn intra_ms_round_trip_is_invisible() {
        // Price pops up and back within ms 2000: in-force unchanged, no event.
        let series = in_force_series(&[
            trade(1000, 401),
            trade(2000, 402),
            trade(2000, 401),
            trade(3000, 401),
        ])
        .unwrap();
        assert!(screen_price_events(&series).is_empty());
    }

    #[test]
    fn reference_prices_join_and_skip() {
        let spy = Symbol::new("SPY").unwrap();
        let tape = vec![TapeTrade {
            ts: ms(1500),
            symbol: spy,
            price: PriceE4::new(1_301_300),
            size: 100,
        }];
        let events = vec![
            PriceEvent {
                ms: ms(1000),
                direction: 1,
                in_force_price: FuturesPrice::from_ticks(402),
                ref_equity_price: None,
            },
            PriceEvent {
                ms: ms(2000),
                direction: -1,
                in_force_price: FuturesPrice::from_ticks(401),
                ref_equity_price: None,
            },
        ];
        let (resolved, skipped) = resolve_reference_prices(&events, &tape, spy).unwrap();
        assert_eq!(skipped, 1);
        assert_eq!(resolved.len(), 1);
        assert_eq!(resolved[0].ms, ms(2000));
        assert_eq!(resolved[0].ref_equity_price, Some(PriceE4::new(1_301_300)));
    }

    #[test]
    fn reference_price_includes_event_millisecond() {
        let spy = Symbol::new("SPY").unwrap();
        let tape = vec![
            TapeTrade {
                ts: ms(900),
                symbol: spy,
                price: PriceE4::new(1_000_000),
                size: 1,
            },
            TapeTrade {
                ts: ms(1000),
                symbol: spy,
                price: PriceE4::new(1_000_100),
                size: 1,
            },
        ];
        let events = vec![PriceEvent {
            ms: ms(1000),
            direction: 1,
            in_force_price: FuturesPrice::from_ticks(402),
            ref_equity_price: None,
        }];
        let (resolved, _) = resolve_reference_prices(&events, &tape, spy).unwrap();
        // "End of the event millisecond": the trade stamped at 1000 counts.
        assert_eq!(resolved[0].ref_equity_price, Some(PriceE4::new(1_000_100)));
    }
}
