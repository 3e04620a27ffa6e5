//! Per-event lag-bin accumulation for the three response kinds.

use crate::bootstrap::{bootstrap_sigma, BootstrapConfig};
use crate::curve::{ResponseCurve, ResponseKind, LAG_MAX, LAG_MIN, N_LAGS};
use crate::event::{resolve_reference_prices, PriceEvent};
use crate::ResponseError;
use lagline_core::Symbol;
use lagline_feeds::{BookDelta, Side, TapeTrade};
use std::collections::HashMap;

/// Retained per-event contribution vectors: the raw material for both the
/// averaged curve and its bootstrap uncertainties.
#[derive(Debug, Clone)]
pub struct EventContributions {
    pub kind: ResponseKind,
    pub per_event: Vec<[f64; N_LAGS]>,
    /// Events dropped because no equity trade preceded them.
    pub skipped_no_reference: usize,
}

impl EventContributions {
    pub fn n_events(&self) -> usize {
        self.per_event.len()
    }

    /// Mean curve without uncertainties.
    pub fn mean(&self) -> [f64; N_LAGS] {
        let mut mean = [0.0; N_LAGS];
        if self.per_event.is_empty() {
            return mean;
        }
        for contribution in &self.per_event {
            for (m, c) in mean.iter_mut().zip(contribution) {
                *m += c;
            }
        }
        let n = self.per_event.len() as f64;
        for m in &mut mean {
            *m /= n;
        }
        mean
    }

    /// Assemble the final curve, bootstrap sigmas included.
    pub fn into_curve(&self, bootstrap: &BootstrapConfig) -> Result<ResponseCurve, ResponseError> {
        let sigmas = bootstrap_sigma(&self.per_event, bootstrap)?;
        Ok(ResponseCurve {
            kind: self.kind,
            values: self.mean(),
            sigmas,
            n_events: self.per_event.len(),
        })
    }
}

/// Index from millisecond to the contiguous run of entries stamped there.
/// Requires nondecreasing stamps.
fn ms_index<T>(
    items: &[T],
    stamp: impl Fn(&T) -> u32,
) -> Result<HashMap<u32, (u32, u32)>, ResponseError> {
    let mut index: HashMap<u32, (u32, u32)> = HashMap::new();
    let mut run_start = 0usize;
    for i in 0..items.len() {
        if i > 0 && stamp(&items[i]) < stamp(&items[i - 1]) {
            return Err(ResponseError::Unsorted);
        }
        if i + 1 == items.len() || stamp(&items[i + 1]) != stamp(&items[i]) {
            index.insert(stamp(&items[i]), (run_start as u32, (i + 1) as u32));
            run_start = i + 1;
        }
    }
    Ok(index)
}

fn accumulate_over_bins<F>(
    events: &[PriceEvent],
    kind: ResponseKind,
    skipped: usize,
    mut bin_value: F,
) -> EventContributions
where
    F: FnMut(&PriceEvent, u32) -> f64,
{
    let mut per_event = Vec::with_capacity(events.len());
    for event in events {
        let mut contribution = [0.0; N_LAGS];
        for k in LAG_MIN..=LAG_MAX {
            let Some(bin_ms) = event.ms.offset(k as i64) else {
                continue;
            };
            let raw = bin_value(event, bin_ms.value());
            contribution[ResponseCurve::index_of(k)] = event.direction as f64 * raw;
        }
        per_event.push(contribution);
    }
    EventContributions {
        kind,
        per_event,
        skipped_no_reference: skipped,
    }
}

/// Liquidity response: for each event with frozen reference price `p`, bin
/// `k` collects the net shares added to the bid side at `{p - $0.01, p,
/// p + $0.01}` plus the net shares removed from the ask side at the same
/// three levels, among book deltas stamped in `event_ms + k`.
pub fn liquidity_contributions(
    events: &[PriceEvent],
    deltas: &[BookDelta],
    tape: &[TapeTrade],
    symbol: Symbol,
) -> Result<EventContributions, ResponseError> {
    let (resolved, skipped) = resolve_reference_prices(events, tape, symbol)?;
    let index = ms_index(deltas, |d: &BookDelta| d.ts.to_ms().value())?;

    let contributions = accumulate_over_bins(
        &resolved,
        ResponseKind::Liquidity,
        skipped,
        |event, bin_ms| {
            let Some(&(start, end)) = index.get(&bin_ms) else {
                return 0.0;
            };
            let p = event
                .ref_equity_price
                .expect("resolved events carry a reference price");
            let levels = [p.offset_cents(-1), p, p.offset_cents(1)];
            let mut net = 0i64;
            for delta in &deltas[start as usize..end as usize] {
                if !levels.contains(&delta.price) {
                    continue;
                }
                match delta.side {
                    // Added to the bid counts positively...
                    Side::Bid => net += delta.share_change,
                    // ...as does removal from the ask.
                    Side::Ask => net -= delta.share_change,
                }
            }
            net as f64
        },
    );
    Ok(contributions)
}

/// Trade response: bin `k` collects the signed price changes of
/// price-changing tape trades stamped in `event_ms + k`, in 10^-4 dollars. A
/// tape trade is price-changing when its price differs from the immediately
/// preceding tape trade in the same symbol.
pub fn trade_contributions(
    events: &[PriceEvent],
    tape: &[TapeTrade],
    symbol: Symbol,
) -> Result<EventContributions, ResponseError> {
    let (resolved, skipped) = resolve_reference_prices(events, tape, symbol)?;

    let own: Vec<&TapeTrade> = tape.iter().filter(|t| t.symbol == symbol).collect();
    let mut changes: Vec<(u32, i64)> = Vec::new();
    for pair in own.windows(2) {
        let diff = pair[1].price.units() - pair[0].price.units();
        if diff != 0 {
            changes.push((pair[1].ts.value(), diff));
        }
    }
    let index = ms_index(&changes, |c: &(u32, i64)| c.0)?;

    let contributions =
        accumulate_over_bins(&resolved, ResponseKind::Trade, skipped, |_event, bin_ms| {
            let Some(&(start, end)) = index.get(&bin_ms) else {
                return 0.0;
            };
            changes[start as usize..end as usize]
                .iter()
                .map(|&(_, diff)| diff as f64)
                .sum()
        });
    Ok(contributions)
}

/// Excess traded volume: bin `k` collects tape shares stamped in
/// `event_ms + k`, minus the baseline per-millisecond volume estimated from
/// event-free milliseconds (those not within any event's 61-bin window).
/// Contributions are unsigned by direction: volume responds to activity, not
/// to its sign.
pub fn excess_volume_contributions(
    events: &[PriceEvent],
    tape: &[TapeTrade],
    symbol: Symbol,
) -> Result<EventContributions, ResponseError> {
    let (resolved, skipped) = resolve_reference_prices(events, tape, symbol)?;

    let own: Vec<&TapeTrade> = tape.iter().filter(|t| t.symbol == symbol).collect();
    let volumes: Vec<(u32, u64)> = own.iter().map(|t| (t.ts.value(), t.size as u64)).collect();
    let index = ms_index(&volumes, |v: &(u32, u64)| v.0)?;

    let baseline = baseline_volume_per_ms(&resolved, &volumes);

    // Volume is direction-independent; neutralize the sign the shared
    // accumulator applies.
    let mut contributions =
        accumulate_over_bins(&resolved, ResponseKind::Volume, skipped, |event, bin_ms| {
            let in_bin: f64 = match index.get(&bin_ms) {
                Some(&(start, end)) => volumes[start as usize..end as usize]
                    .iter()
                    .map(|&(_, v)| v as f64)
                    .sum(),
                None => 0.0,
            };
            event.direction as f64 * (in_bin - baseline)
        });
    contributions.kind = ResponseKind::Volume;
    Ok(contributions)
}

fn baseline_volume_per_ms(events: &[PriceEvent], volumes: &[(u32, u64)]) -> f64 {
    if volumes.is_empty() {
        return 0.0;
    }
    let first = volumes[0].0;
    let last = volumes[volumes.len() - 1].0;
    if last <= first {
        return 0.0;
    }

    // Milliseconds covered by any event window, as sorted disjoint spans.
    let mut spans: Vec<(i64, i64)> = events
        .iter()
        .map(|e| {
            (
                e.ms.value() as i64 + LAG_MIN as i64,
                e.ms.value() as i64 + LAG_MAX as i64,
            )
        })
        .collect();
    spans.sort_unstable();
    let mut merged: Vec<(i64, i64)> = Vec::with_capacity(spans.len());
    for span in spans {
        match merged.last_mut() {
            Some(last_span) if span.0 <= last_span.1 + 1 => {
                last_span.1 = last_span.1.max(span.1);
            }
            _ => merged.push(span),
        }
    }

    let in_window = |ms: i64| {
        merged
            .binary_search_by(|&(lo, hi)| {
                if hi < ms {
                    std::cmp::Ordering::Less
                } else if lo > ms {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            })
            .is_ok()
    };

    let mut covered: i64 = 0;
    for &(lo, hi) in &merged {
        let lo = lo.max(first as i64);
        let hi = hi.min(last as i64);
        if hi >= lo {
            covered += hi - lo + 1;
        }
    }
    let total_ms = last as i64 - first as i64 + 1;
    let free_ms = total_ms - covered;
    if free_ms <= 0 {
        return 0.0;
    }

    let free_volume: f64 = volumes
        .iter()
        .filter(|&&(ms, _)| !in_window(ms as i64))
        .map(|&(_, v)| v as f64)
        .sum();
    free_volume / free_ms as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::PriceEvent;
    use lagline_core::{FuturesPrice, MsTimestamp, NsTimestamp, PriceE4};

    fn spy() -> Symbol {
        Symbol::new("SPY").unwrap()
    }

    fn ms(v: u64) -> MsTimestamp {
        MsTimestamp::new(v).unwrap()
    }

    fn event(at_ms: u64, direction: i8) -> PriceEvent {
        PriceEvent {
            ms: ms(at_ms),
            direction,
            in_force_price: FuturesPrice::from_ticks(402),
            ref_equity_price: None,
        }
    }

    fn tape_trade(at_ms: u64, price_e4: i64) -> TapeTrade {
        TapeTrade {
            ts: ms(at_ms),
            symbol: spy(),
            price: PriceE4::new(price_e4),
            size: 100,
        }
    }

    fn delta(at_ms: u64, side: Side, price_e4: i64, change: i64) -> BookDelta {
        BookDelta {
            ts: NsTimestamp::new(at_ms * 1_000_000 + 500).unwrap(),
            side,
            price: PriceE4::new(price_e4),
            share_change: change,
        }
    }

    #[test]
    fn single_bid_add_lands_in_its_bin() {
        let events = vec![event(10_000, 1)];
        let tape = vec![tape_trade(9_000, 1_301_300)];
        let deltas = vec![delta(10_007, Side::Bid, 1_301_300, 400)];
        let c = liquidity_contributions(&events, &deltas, &tape, spy()).unwrap();
        assert_eq!(c.n_events(), 1);
        let mean = c.mean();
        for k in ResponseCurve::lags() {
            let expected = if k == 7 { 400.0 } else { 0.0 };
            assert_eq!(mean[ResponseCurve::index_of(k)], expected, "bin {k}");
        }
    }

    #[test]
    fn downtick_flips_the_sign() {
        let events = vec![event(10_000, -1)];
        let tape = vec![tape_trade(9_000, 1_301_300)];
        let deltas = vec![delta(10_007, Side::Bid, 1_301_300, 400)];
        let c = liquidity_contributions(&events, &deltas, &tape, spy()).unwrap();
        assert_eq!(c.mean()[ResponseCurve::index_of(7)], -400.0);
    }

    #[test]
    fn ask_removal_counts_like_bid_add() {
        let events = vec![event(10_000, 1)];
        let tape = vec![tape_trade(9_000, 1_301_300)];
        let deltas = vec![
            delta(10_007, Side::Ask, 1_301_400, -250),
            // Outside the three levels: ignored.
            delta(10_007, Side::Ask, 1_301_600, -999),
            delta(10_007, Side::Bid, 1_300_900, 999),
        ];
        let c = liquidity_contributions(&events, &deltas, &tape, spy()).unwrap();
        assert_eq!(c.mean()[ResponseCurve::index_of(7)], 250.0);
    }

    #[test]
    fn event_without_reference_is_skipped() {
        let events = vec![event(10_000, 1), event(20_000, 1)];
        let tape = vec![tape_trade(15_000, 1_301_300)];
        let deltas = vec![];
        let c = liquidity_contributions(&events, &deltas, &tape, spy()).unwrap();
        assert_eq!(c.n_events(), 1);
        assert_eq!(c.skipped_no_reference, 1);
    }

    #[test]
    fn trade_response_spec_example() {
        // Reference trade at p, then in bin 5 a trade at p (no change) and one
        // at p + $0.01: value[5] = +$0.01 = 100 e-4 dollars.
        let events = vec![event(10_000, 1)];
        let tape = vec![
            tape_trade(9_000, 1_301_300),
            tape_trade(10_005, 1_301_300),
            tape_trade(10_005, 1_301_400),
        ];
        let c = trade_contributions(&events, &tape, spy()).unwrap();
        let mean = c.mean();
        for k in ResponseCurve::lags() {
            let expected = if k == 5 { 100.0 } else { 0.0 };
            assert_eq!(mean[ResponseCurve::index_of(k)], expected, "bin {k}");
        }
    }

    #[test]
    fn no_price_changing_trades_zero_curve() {
        let events = vec![event(10_000, 1)];
        let tape = vec![
            tape_trade(9_000, 1_301_300),
            tape_trade(10_003, 1_301_300),
            tape_trade(10_009, 1_301_300),
        ];
        let c = trade_contributions(&events, &tape, spy()).unwrap();
        assert!(c.mean().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn other_symbols_do_not_leak() {
        let events = vec![event(10_000, 1)];
        let mut tape = vec![tape_trade(9_000, 1_301_300)];
        tape.push(TapeTrade {
            ts: ms(10_005),
            symbol: Symbol::new("XLF").unwrap(),
            price: PriceE4::new(150_000),
            size: 100,
        });
        let c = trade_contributions(&events, &tape, spy()).unwrap();
        assert!(c.mean().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn excess_volume_subtracts_baseline() {
        // One event; tape volume 100 in bin 3; steady background of 100
        // shares every 200 ms far from the event keeps the baseline at 0.5.
        let events = vec![event(50_000, 1)];
        let mut tape = vec![tape_trade(10_000, 1_301_300)];
        for i in 0..100 {
            tape.push(tape_trade(10_000 + i * 200, 1_301_300));
        }
        tape.push(tape_trade(50_003, 1_301_300));
        tape.sort_by_key(|t| t.ts);
        let c = excess_volume_contributions(&events, &tape, spy()).unwrap();
        let mean = c.mean();
        // Independent accounting: 101 trades of 100 shares sit outside the
        // event window; the observed span is [10_000, 50_003] and the window
        // claims the 34 ms [49_970, 50_003] of it.
        let baseline = 101.0 * 100.0 / ((50_003.0 - 10_000.0 + 1.0) - 34.0);
        let idx3 = ResponseCurve::index_of(3);
        assert!(
            (mean[idx3] - (100.0 - baseline)).abs() < 1e-9,
            "bin 3 {} vs {}",
            mean[idx3],
            100.0 - baseline
        );
        let idx0 = ResponseCurve::index_of(0);
        assert!((mean[idx0] - (0.0 - baseline)).abs() < 1e-9);
    }

    #[test]
    fn overlapping_windows_match_brute_force_double_loop() {
        // Two events 10 ms apart; deltas scattered so several live in both
        // windows.
        let events = vec![event(10_000, 1), event(10_010, -1)];
        let tape = vec![tape_trade(9_000, 1_301_300)];
        let mut deltas = Vec::new();
        for i in 0..40 {
            let at = 9_995 + i;
            let change = if i % 3 == 0 { 200 } else { -100 };
            deltas.push(delta(at, Side::Bid, 1_301_300, change));
        }
        let c = liquidity_contributions(&events, &deltas, &tape, spy()).unwrap();

        // Brute force: loop over every (event, delta) pair.
        let mut total_grid = [0.0f64; N_LAGS];
        for e in &events {
            for d in &deltas {
                let lag = d.ts.to_ms().value() as i64 - e.ms.value() as i64;
                if !(LAG_MIN as i64..=LAG_MAX as i64).contains(&lag) {
                    continue;
                }
                total_grid[ResponseCurve::index_of(lag as i32)] +=
                    e.direction as f64 * d.share_change as f64;
            }
        }
        let mean = c.mean();
        for idx in 0..N_LAGS {
            let brute = total_grid[idx] / events.len() as f64;
            assert!(
                (mean[idx] - brute).abs() < 1e-9,
                "idx {idx}: {} vs {}",
                mean[idx],
                brute
            );
        }
    }
}
