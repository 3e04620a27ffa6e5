//! The session generator.
//!
//! Generation runs in two passes. First the futures drive process is drawn
//! and reduced to per-millisecond in-force price events, exactly as the
//! downstream screen will see them. Then every equity-side action (book
//! seeding, responder reactions, background noise, tape prints) is scheduled
//! on a common timeline and processed in time order against a single market
//! state, so reference prices and order ids evolve consistently.
//!
//! All randomness comes from per-purpose streams of one seeded ChaCha8, so a
//! seed pins every output byte.

use crate::config::SimConfig;
use crate::truth::{SimGroundTruth, TruthEvent, TruthResponder};
use crate::SimError;
use lagline_core::FuturesPrice;
use lagline_core::{MsTimestamp, NsTimestamp, PriceE4, Symbol};
use lagline_feeds::{
    encode_equity_message, write_futures_feed, write_trade_tape, EquityMessage, FuturesTrade, Side,
    TapeTrade,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Shares in each pre-seeded resting order; deep enough that a full day of
/// responder cancels cannot drain any level.
const SEED_SHARES: u32 = 20_000_000;
/// Initial seeded band half-width around the opening price, cents.
const BAND_HALF_CENTS: i64 = 500;
/// Extend the band when the price walks within this margin of an edge.
const BAND_MARGIN_CENTS: i64 = 50;
/// Levels added per extension.
const BAND_EXTEND_CENTS: i64 = 200;
/// Tape print size for responder fills, shares.
const FILL_SIZE: u32 = 200;

/// A generated session: the three feeds plus ground truth.
#[derive(Debug, Clone)]
pub struct SimSession {
    pub futures: Vec<FuturesTrade>,
    pub equity: Vec<EquityMessage>,
    pub tape: Vec<TapeTrade>,
    pub truth: SimGroundTruth,
}

impl SimSession {
    pub fn futures_csv(&self) -> String {
        write_futures_feed(&self.futures)
    }

    pub fn tape_csv(&self) -> String {
        write_trade_tape(&self.tape)
    }

    pub fn equity_bytes(&self) -> Vec<u8> {
        let mut bytes = Vec::with_capacity(self.equity.len() * 40);
        for msg in &self.equity {
            encode_equity_message(msg, &mut bytes).expect("generated messages always encode");
        }
        bytes
    }

    pub fn truth_json(&self) -> String {
        serde_json::to_string_pretty(&self.truth).expect("truth serializes")
    }
}

fn stream(seed: u64, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(purpose);
    rng
}

fn exponential_gap_ms(rng: &mut ChaCha8Rng, rate_hz: f64) -> f64 {
    let u: f64 = rng.gen();
    -(1.0 - u).ln() / rate_hz * 1000.0
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; u1 kept away from zero.
    let u1: f64 = rng.gen::<f64>().max(1e-12);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn poisson_times(rng: &mut ChaCha8Rng, rate_hz: f64, start_ms: f64, end_ms: f64) -> Vec<f64> {
    let mut times = Vec::new();
    if rate_hz <= 0.0 {
        return times;
    }
    let mut t = start_ms;
    loop {
        t += exponential_gap_ms(rng, rate_hz);
        if t >= end_ms {
            return times;
        }
        times.push(t);
    }
}

struct DriveTrade {
    time_ms: f64,
    ticks: i64,
    size: u32,
}

struct EventDraft {
    event_ms: u32,
    event_time_ms: f64,
    direction: i8,
}

struct ResponderDraft {
    event_idx: usize,
    arrival_ms: f64,
    fill: bool,
}

enum ActionKind {
    SeedBook,
    SeedTape,
    Freeze { event_idx: usize },
    Respond { responder_idx: usize },
    NoiseBook,
    NoiseTrade,
}

struct Action {
    time_ms: f64,
    /// Freezes sort before same-time activity.
    rank: u8,
    seq: u32,
    kind: ActionKind,
}

struct MarketState {
    cur_price_units: i64,
    standing_bid: HashMap<i64, (u64, u64)>,
    standing_ask: HashMap<i64, (u64, u64)>,
    band_lo: i64,
    band_hi: i64,
    noise_orders: Vec<u64>,
    next_order_id: u64,
    equity: Vec<EquityMessage>,
    tape_raw: Vec<(u32, u32, PriceE4, u32)>,
    symbol: Symbol,
}

impl MarketState {
    fn ns(time_ms: f64) -> NsTimestamp {
        let ns = (time_ms * 1e6).round() as u64;
        NsTimestamp::new(ns).expect("session times stay within the day")
    }

    fn push_add(&mut self, time_ms: f64, side: Side, price_units: i64, shares: u32) -> u64 {
        let order_id = self.next_order_id;
        self.next_order_id += 1;
        self.equity.push(EquityMessage::Add {
            ts: Self::ns(time_ms),
            order_id,
            side,
            shares,
            symbol: self.symbol,
            price: PriceE4::new(price_units),
        });
        order_id
    }

    fn seed_level(&mut self, time_ms: f64, price_units: i64) {
        let bid_id = self.push_add(time_ms, Side::Bid, price_units, SEED_SHARES);
        self.standing_bid
            .insert(price_units, (bid_id, SEED_SHARES as u64));
        let ask_id = self.push_add(time_ms, Side::Ask, price_units, SEED_SHARES);
        self.standing_ask
            .insert(price_units, (ask_id, SEED_SHARES as u64));
    }

    fn seed_band(&mut self, time_ms: f64) {
        let lo = self.cur_price_units - BAND_HALF_CENTS * 100;
        let hi = self.cur_price_units + BAND_HALF_CENTS * 100;
        let mut level = lo;
        while level <= hi {
            self.seed_level(time_ms, level);
            level += 100;
        }
        self.band_lo = lo;
        self.band_hi = hi;
    }

    /// Keep the standing band comfortably around the current price. New
    /// levels appear at least BAND_MARGIN_CENTS away from the price, far
    /// outside any measured three-level window.
    fn maintain_band(&mut self, time_ms: f64) {
        while self.cur_price_units - self.band_lo < BAND_MARGIN_CENTS * 100 {
            let new_lo = self.band_lo - BAND_EXTEND_CENTS * 100;
            let mut level = new_lo;
            while level < self.band_lo {
                self.seed_level(time_ms, level);
                level += 100;
            }
            self.band_lo = new_lo;
        }
        while self.band_hi - self.cur_price_units < BAND_MARGIN_CENTS * 100 {
            let new_hi = self.band_hi + BAND_EXTEND_CENTS * 100;
            let mut level = self.band_hi + 100;
            while level <= new_hi {
                self.seed_level(time_ms, level);
                level += 100;
            }
            self.band_hi = new_hi;
        }
    }

    fn cancel_standing(&mut self, time_ms: f64, side: Side, price_units: i64, shares: u64) {
        let map = match side {
            Side::Bid => &mut self.standing_bid,
            Side::Ask => &mut self.standing_ask,
        };
        let Some((order_id, remaining)) = map.get_mut(&price_units) else {
            debug_assert!(false, "standing order missing at {price_units}");
            return;
        };
        // Leave a share behind so the order id stays live for later cancels.
        let take = shares.min(remaining.saturating_sub(1));
        if take == 0 {
            return;
        }
        *remaining -= take;
        let order_id = *order_id;
        self.equity.push(EquityMessage::Cancel {
            ts: Self::ns(time_ms),
            order_id,
            canceled_shares: take as u32,
        });
    }

    fn push_tape(&mut self, stamp_ms: u32, price_units: i64, size: u32) {
        let seq = self.tape_raw.len() as u32;
        self.tape_raw
            .push((stamp_ms, seq, PriceE4::new(price_units), size));
    }
}

/// Generate one session. Deterministic: identical configs (seed included)
/// produce byte-identical feeds.
pub fn simulate_session(cfg: &SimConfig) -> Result<SimSession, SimError> {
    cfg.validate()?;
    let start = cfg.session_start_ms as f64;
    let end = cfg.session_end_ms as f64;

    // Futures drive: Poisson-timed one-tick moves.
    let mut drive_rng = stream(cfg.seed, 1);
    let mut drive: Vec<DriveTrade> = Vec::new();
    {
        let mut ticks = cfg.start_futures_ticks;
        for time_ms in poisson_times(&mut drive_rng, cfg.drive_rate_hz, start, end) {
            ticks += if drive_rng.gen::<bool>() { 1 } else { -1 };
            let size = drive_rng.gen_range(1..=10);
            drive.push(DriveTrade {
                time_ms,
                ticks,
                size,
            });
        }
    }

    // Reduce to per-millisecond in-force events, exactly as the screen will.
    let mut events: Vec<EventDraft> = Vec::new();
    {
        let mut prev_in_force: Option<i64> = None;
        let mut i = 0usize;
        while i < drive.len() {
            let ms = drive[i].time_ms.floor() as u32;
            let mut last = i;
            while last + 1 < drive.len() && drive[last + 1].time_ms.floor() as u32 == ms {
                last += 1;
            }
            let in_force = drive[last].ticks;
            if let Some(prev) = prev_in_force {
                if in_force != prev {
                    events.push(EventDraft {
                        event_ms: ms,
                        event_time_ms: drive[last].time_ms,
                        direction: if in_force > prev { 1 } else { -1 },
                    });
                }
            }
            prev_in_force = Some(in_force);
            i = last + 1;
        }
    }

    // Responder draws per event.
    let mut latency_rng = stream(cfg.seed, 2);
    let mut presignal_rng = stream(cfg.seed, 4);
    let mut fill_rng = stream(cfg.seed, 6);
    let mut responders: Vec<ResponderDraft> = Vec::new();
    let mut truth_events: Vec<TruthEvent> = Vec::new();
    for (event_idx, event) in events.iter().enumerate() {
        let pick: f64 = latency_rng.gen();
        let mut acc = 0.0;
        let mut latency = cfg.latency_mixture.last().expect("validated").latency_ms;
        for component in &cfg.latency_mixture {
            acc += component.weight;
            if pick < acc {
                latency = component.latency_ms;
                break;
            }
        }
        if cfg.latency_jitter_ms > 0.0 {
            latency += cfg.latency_jitter_ms * gaussian(&mut latency_rng);
        }
        latency = latency.max(cfg.light_floor_ms);

        let mut arrivals = vec![TruthResponder {
            arrival_ms: event.event_time_ms + latency,
            presignal: false,
        }];
        responders.push(ResponderDraft {
            event_idx,
            arrival_ms: event.event_time_ms + latency,
            fill: fill_rng.gen::<f64>() < cfg.fill_probability,
        });

        if presignal_rng.gen::<f64>() < cfg.presignal.fraction {
            let arrival = event.event_time_ms + (cfg.light_floor_ms - cfg.presignal.lead_ms);
            arrivals.push(TruthResponder {
                arrival_ms: arrival,
                presignal: true,
            });
            responders.push(ResponderDraft {
                event_idx,
                arrival_ms: arrival,
                fill: fill_rng.gen::<f64>() < cfg.fill_probability,
            });
        }

        truth_events.push(TruthEvent {
            event_ms: event.event_ms,
            intra_ms_offset: event.event_time_ms - event.event_ms as f64,
            direction: event.direction,
            responders: arrivals,
        });
    }

    // Background noise schedules.
    let mut noise_book_rng = stream(cfg.seed, 3);
    let noise_book_times = poisson_times(
        &mut noise_book_rng,
        cfg.background.book_events_per_sec,
        start,
        end,
    );
    let mut noise_trade_rng = stream(cfg.seed, 5);
    let noise_trade_times = poisson_times(
        &mut noise_trade_rng,
        cfg.background.trades_per_sec,
        start,
        end,
    );
    let mut jitter_rng = stream(cfg.seed, 7);

    // One timeline.
    let mut actions: Vec<Action> = Vec::new();
    let mut seq = 0u32;
    let mut push_action = |actions: &mut Vec<Action>, time_ms: f64, rank: u8, kind: ActionKind| {
        actions.push(Action {
            time_ms,
            rank,
            seq,
            kind,
        });
        seq += 1;
    };
    push_action(&mut actions, start - 60_000.0, 0, ActionKind::SeedBook);
    push_action(&mut actions, start - 30_000.0, 1, ActionKind::SeedTape);
    for (event_idx, event) in events.iter().enumerate() {
        push_action(
            &mut actions,
            event.event_ms as f64 + 1.0,
            0,
            ActionKind::Freeze { event_idx },
        );
    }
    for (responder_idx, responder) in responders.iter().enumerate() {
        push_action(
            &mut actions,
            responder.arrival_ms,
            1,
            ActionKind::Respond { responder_idx },
        );
    }
    for &t in &noise_book_times {
        push_action(&mut actions, t, 1, ActionKind::NoiseBook);
    }
    for &t in &noise_trade_times {
        push_action(&mut actions, t, 1, ActionKind::NoiseTrade);
    }
    actions.sort_by(|a, b| {
        a.time_ms
            .partial_cmp(&b.time_ms)
            .expect("times are finite")
            .then(a.rank.cmp(&b.rank))
            .then(a.seq.cmp(&b.seq))
    });

    // Process the timeline.
    let mut state = MarketState {
        cur_price_units: cfg.start_equity_price.units(),
        standing_bid: HashMap::new(),
        standing_ask: HashMap::new(),
        band_lo: 0,
        band_hi: 0,
        noise_orders: Vec::new(),
        next_order_id: 1,
        equity: Vec::new(),
        tape_raw: Vec::new(),
        symbol: cfg.symbol,
    };
    let mut frozen: Vec<Option<i64>> = vec![None; events.len()];
    let half = (cfg.response_shares / 2).max(1);
    let rest = cfg.response_shares.saturating_sub(half).max(1);

    for action in &actions {
        match action.kind {
            ActionKind::SeedBook => state.seed_band(action.time_ms),
            ActionKind::SeedTape => {
                let stamp = action.time_ms.floor() as u32;
                state.push_tape(stamp, state.cur_price_units, 100);
            }
            ActionKind::Freeze { event_idx } => {
                frozen[event_idx] = Some(state.cur_price_units);
            }
            ActionKind::Respond { responder_idx } => {
                let responder = &responders[responder_idx];
                let event = &events[responder.event_idx];
                // A presignal acting inside the event millisecond predates
                // the freeze; it targets the live price instead.
                let p_ref = frozen[responder.event_idx].unwrap_or(state.cur_price_units);
                let t = responder.arrival_ms;
                if event.direction > 0 {
                    state.push_add(t, Side::Bid, p_ref, half);
                    state.cancel_standing(t, Side::Ask, p_ref + 100, rest as u64);
                } else {
                    state.push_add(t, Side::Ask, p_ref, half);
                    state.cancel_standing(t, Side::Bid, p_ref - 100, rest as u64);
                }
                if responder.fill {
                    let fill_price = p_ref + event.direction as i64 * 100;
                    let stamp = stamp_tape(t, cfg.tape_jitter, &mut jitter_rng);
                    state.push_tape(stamp, fill_price, FILL_SIZE);
                    state.cur_price_units = fill_price;
                    state.maintain_band(t);
                }
            }
            ActionKind::NoiseBook => {
                let t = action.time_ms;
                let add = noise_book_rng.gen::<bool>() || state.noise_orders.is_empty();
                if add {
                    let side = if noise_book_rng.gen::<bool>() {
                        Side::Bid
                    } else {
                        Side::Ask
                    };
                    let offset: i64 = noise_book_rng.gen_range(-5..=5);
                    let shares = 100 * noise_book_rng.gen_range(1..=5) as u32;
                    let price = state.cur_price_units + offset * 100;
                    let id = state.push_add(t, side, price, shares);
                    state.noise_orders.push(id);
                } else {
                    let idx = noise_book_rng.gen_range(0..state.noise_orders.len());
                    let order_id = state.noise_orders.swap_remove(idx);
                    state.equity.push(EquityMessage::Delete {
                        ts: MarketState::ns(t),
                        order_id,
                    });
                }
            }
            ActionKind::NoiseTrade => {
                let t = action.time_ms;
                let step: i64 = noise_trade_rng.gen_range(-1..=1);
                state.cur_price_units += step * 100;
                state.maintain_band(t);
                let size = 100 * noise_trade_rng.gen_range(1..=3) as u32;
                let stamp = stamp_tape(t, cfg.tape_jitter, &mut jitter_rng);
                state.push_tape(stamp, state.cur_price_units, size);
            }
        }
    }

    // Assemble the feeds.
    let futures: Vec<FuturesTrade> = drive
        .iter()
        .map(|d| FuturesTrade {
            ts: MsTimestamp::new(d.time_ms.floor() as u64).expect("inside session"),
            price: FuturesPrice::from_ticks(d.ticks),
            size: d.size,
        })
        .collect();

    let mut tape_raw = state.tape_raw;
    tape_raw.sort_by_key(|&(stamp, seq, _, _)| (stamp, seq));
    let tape: Vec<TapeTrade> = tape_raw
        .into_iter()
        .map(|(stamp, _, price, size)| TapeTrade {
            ts: MsTimestamp::new(stamp as u64).expect("inside day"),
            symbol: cfg.symbol,
            price,
            size,
        })
        .collect();

    debug_assert!(state.equity.windows(2).all(|w| w[0].ts() <= w[1].ts()));

    Ok(SimSession {
        futures,
        equity: state.equity,
        tape,
        truth: SimGroundTruth {
            seed: cfg.seed,
            light_floor_ms: cfg.light_floor_ms,
            events: truth_events,
        },
    })
}

fn stamp_tape(time_ms: f64, jitter: bool, rng: &mut ChaCha8Rng) -> u32 {
    let jittered = if jitter {
        time_ms + rng.gen_range(0.0..2.0)
    } else {
        time_ms
    };
    jittered.floor() as u32
}
