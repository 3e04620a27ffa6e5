//! FDF-1 and TTF-1 session CSV formats.

use crate::FeedError;
use lagline_core::{FuturesPrice, MsTimestamp, PriceE4, Symbol};
use serde::{Deserialize, Serialize};

pub const FUTURES_HEADER: &str = "ms,kind,price_ticks,size";
pub const TAPE_HEADER: &str = "ms,symbol,price_e4,size";

/// One futures trade, millisecond-stamped at the matching engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuturesTrade {
    pub ts: MsTimestamp,
    pub price: FuturesPrice,
    pub size: u32,
}

/// One consolidated-tape trade.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TapeTrade {
    pub ts: MsTimestamp,
    pub symbol: Symbol,
    pub price: PriceE4,
    pub size: u32,
}

fn split_row<const N: usize>(line: &str, lineno: usize) -> Result<[&str; N], FeedError> {
    let mut fields = [""; N];
    let mut count = 0;
    for part in line.split(',') {
        if count == N {
            return Err(FeedError::BadRow {
                line: lineno,
                reason: format!("expected {N} fields"),
            });
        }
        fields[count] = part;
        count += 1;
    }
    if count != N {
        return Err(FeedError::BadRow {
            line: lineno,
            reason: format!("expected {N} fields, got {count}"),
        });
    }
    Ok(fields)
}

fn parse_num<T: std::str::FromStr>(raw: &str, what: &str, lineno: usize) -> Result<T, FeedError> {
    raw.trim().parse().map_err(|_| FeedError::BadRow {
        line: lineno,
        reason: format!("bad {what} {raw:?}"),
    })
}

fn parse_ms(raw: &str, lineno: usize) -> Result<MsTimestamp, FeedError> {
    let v: u64 = parse_num(raw, "millisecond timestamp", lineno)?;
    MsTimestamp::new(v).map_err(|e| FeedError::BadRow {
        line: lineno,
        reason: e.to_string(),
    })
}

fn parse_size(raw: &str, lineno: usize) -> Result<u32, FeedError> {
    let size: u32 = parse_num(raw, "size", lineno)?;
    if size == 0 {
        return Err(FeedError::BadRow {
            line: lineno,
            reason: "size must be > 0".into(),
        });
    }
    Ok(size)
}

fn check_header(line: Option<&str>, expected: &str) -> Result<(), FeedError> {
    match line {
        Some(l) if l.trim_end() == expected => Ok(()),
        Some(l) => Err(FeedError::BadRow {
            line: 1,
            reason: format!("expected header {expected:?}, got {:?}", l.trim_end()),
        }),
        // An entirely empty file parses as an empty sequence.
        None => Ok(()),
    }
}

/// Parse an FDF-1 futures session file. Records come back in file order.
pub fn parse_futures_feed(text: &str) -> Result<Vec<FuturesTrade>, FeedError> {
    let mut lines = text.lines();
    check_header(lines.next(), FUTURES_HEADER)?;
    let mut out = Vec::new();
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        if line.trim().is_empty() {
            continue;
        }
        let [ms, kind, ticks, size] = split_row(line, lineno)?;
        if kind.trim() != "TRADE" {
            return Err(FeedError::BadRow {
                line: lineno,
                reason: format!("unknown record kind {kind:?}"),
            });
        }
        out.push(FuturesTrade {
            ts: parse_ms(ms, lineno)?,
            price: FuturesPrice::from_ticks(parse_num(ticks, "price_ticks", lineno)?),
            size: parse_size(size, lineno)?,
        });
    }
    Ok(out)
}

/// Parse a TTF-1 consolidated-tape file.
pub fn parse_trade_tape(text: &str) -> Result<Vec<TapeTrade>, FeedError> {
    let mut lines = text.lines();
    check_header(lines.next(), TAPE_HEADER)?;
    let mut out = Vec::new();
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        if line.trim().is_empty() {
            continue;
        }
        let [ms, symbol, price, size] = split_row(line, lineno)?;
        let symbol = Symbol::new(symbol.trim()).map_err(|e| FeedError::BadRow {
            line: lineno,
            reason: e.to_string(),
        })?;
        out.push(TapeTrade {
            ts: parse_ms(ms, lineno)?,
            symbol,
            price: PriceE4::new(parse_num(price, "price_e4", lineno)?),
            size: parse_size(size, lineno)?,
        });
    }
    Ok(out)
}

pub fn write_futures_feed(trades: &[FuturesTrade]) -> String {
    let mut out = String::with_capacity(trades.len() * 24 + 32);
    out.push_str(FUTURES_HEADER);
    out.push('\n');
    for t in trades {
        out.push_str(&format!(
            "{},TRADE,{},{}\n",
            t.ts.value(),
            t.price.ticks(),
            t.size
        ));
    }
    out
}

pub fn write_trade_tape(trades: &[TapeTrade]) -> String {
    let mut out = String::with_capacity(trades.len() * 28 + 32);
    out.push_str(TAPE_HEADER);
    out.push('\n');
    for t in trades {
        out.push_str(&format!(
            "{},{},{},{}\n",
            t.ts.value(),
            t.symbol,
            t.price.units(),
            t.size
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn futures_row_maps_fields() {
        let parsed =
            parse_futures_feed("ms,kind,price_ticks,size\n34200001,TRADE,5200,3\n").unwrap();
        assert_eq!(
            parsed,
            vec![FuturesTrade {
                ts: MsTimestamp::new(34_200_001).unwrap(),
                price: FuturesPrice::from_ticks(5200),
                size: 3,
            }]
        );
    }

    #[test]
    fn empty_file_is_empty_sequence() {
        assert!(parse_futures_feed("").unwrap().is_empty());
        assert!(parse_futures_feed("ms,kind,price_ticks,size\n")
            .unwrap()
            .is_empty());
    }

    #[test]
    fn malformed_row_reports_line_number() {
        let err =
            parse_futures_feed("ms,kind,price_ticks,size\n34200001,TRADE,5200,3\nnot,a,row\n")
                .unwrap_err();
        assert!(matches!(err, FeedError::BadRow { line: 3, .. }), "{err}");
    }

    #[test]
    fn tape_row_maps_fields() {
        let parsed =
            parse_trade_tape("ms,symbol,price_e4,size\n34200007,SPY,1301300,100\n").unwrap();
        assert_eq!(parsed[0].ts.value(), 34_200_007);
        assert_eq!(parsed[0].symbol.as_str(), "SPY");
        assert_eq!(parsed[0].price.units(), 1_301_300);
        assert_eq!(parsed[0].size, 100);
    }

    #[test]
    fn out_of_range_ms_rejected() {
        let err =
            parse_trade_tape("ms,symbol,price_e4,size\n86400000,SPY,1301300,100\n").unwrap_err();
        assert!(matches!(err, FeedError::BadRow { line: 2, .. }), "{err}");
    }

    #[test]
    fn zero_size_rejected() {
        let err = parse_futures_feed("ms,kind,price_ticks,size\n1000,TRADE,5200,0\n").unwrap_err();
        assert!(matches!(err, FeedError::BadRow { line: 2, .. }));
    }

    #[test]
    fn writers_round_trip() {
        let trades = vec![
            FuturesTrade {
                ts: MsTimestamp::new(1000).unwrap(),
                price: FuturesPrice::from_ticks(5200),
                size: 3,
            },
            FuturesTrade {
                ts: MsTimestamp::new(1001).unwrap(),
                price: FuturesPrice::from_ticks(5199),
                size: 1,
            },
        ];
        assert_eq!(
            parse_futures_feed(&write_futures_feed(&trades)).unwrap(),
            trades
        );

        let tape = vec![TapeTrade {
            ts: MsTimestamp::new(1000).unwrap(),
            symbol: Symbol::new("SPY").unwrap(),
            price: PriceE4::new(1_301_300),
            size: 100,
        }];
        assert_eq!(parse_trade_tape(&write_trade_tape(&tape)).unwrap(), tape);
    }
}
