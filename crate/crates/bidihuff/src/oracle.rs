//! Brute-force reference implementations for validating the decoder.
//!
//! Everything here works by exhaustive recursion over reversed-codeword
//! matches, with no trie and no scenario list, so it is an independent
//! path against which the decoder's decision traces are checked.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::codebook::{BitString, Codebook};
use crate::decoder::DecisionEvent;

pub const DEFAULT_PARSE_CAP: usize = 32;
pub const DEFAULT_MESSAGE_CAP: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("input of {len} bits exceeds the {cap}-bit oracle cap")]
    BitCapExceeded { len: usize, cap: usize },
    #[error("{count} messages exceed the {cap}-message oracle cap")]
    MessageCapExceeded { count: u64, cap: u64 },
    #[error("no viable parse of the first {0} bits")]
    NoParse(usize),
    #[error("{0} complete parses at end of stream (expected exactly one)")]
    AmbiguousStream(usize),
}

/// All complete decompositions of a bit string into reversed codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseSet {
    pub parses: Vec<Vec<u16>>,
}

/// A decomposition of a prefix: fully matched symbols plus the length of the
/// residual suffix, which is either empty or a proper prefix of some
/// reversed codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PartialParse {
    symbols: Vec<u16>,
    residual: usize,
}

fn reversed_codewords(codebook: &Codebook) -> Vec<(u16, BitString)> {
    codebook.reverse_code()
}

fn viable_partials(rev: &[(u16, BitString)], bits: &[u8]) -> Vec<PartialParse> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    explore(rev, bits, 0, &mut acc, &mut out);
    out
}

fn explore(
    rev: &[(u16, BitString)],
    bits: &[u8],
    pos: usize,
    acc: &mut Vec<u16>,
    out: &mut Vec<PartialParse>,
) {
    let rest = &bits[pos..];
    if rest.is_empty() {
        out.push(PartialParse {
            symbols: acc.clone(),
            residual: 0,
        });
        return;
    }
    // residual option: the whole remainder is a proper prefix of a codeword
    if rev
        .iter()
        .any(|(_, cw)| cw.len() > rest.len() && cw.bits().starts_with(rest))
    {
        out.push(PartialParse {
            symbols: acc.clone(),
            residual: rest.len(),
        });
    }
    for (sym, cw) in rev {
        if rest.starts_with(cw.bits()) {
            acc.push(*sym);
            explore(rev, bits, pos + cw.len(), acc, out);
            acc.pop();
        }
    }
}

/// Every complete parse of `reversed_bits` into reversed codewords.
pub fn all_parses(codebook: &Codebook, reversed_bits: &BitString) -> Result<ParseSet, OracleError> {
    all_parses_capped(codebook, reversed_bits, DEFAULT_PARSE_CAP)
}

pub fn all_parses_capped(
    codebook: &Codebook,
    reversed_bits: &BitString,
    cap: usize,
) -> Result<ParseSet, OracleError> {
    if reversed_bits.len() > cap {
        return Err(OracleError::BitCapExceeded {
            len: reversed_bits.len(),
            cap,
        });
    }
    let rev = reversed_codewords(codebook);
    let parses = viable_partials(&rev, reversed_bits.bits())
        .into_iter()
        .filter(|p| p.residual == 0)
        .map(|p| p.symbols)
        .collect();
    Ok(ParseSet { parses })
}

/// Reference decision trace: after each prefix, over the set of viable
/// partial parses, commit the longest common symbol prefix. Matches the
/// decoder with early commit off.
pub fn oracle_decision_trace(
    codebook: &Codebook,
    reversed_bits: &BitString,
) -> Result<Vec<DecisionEvent>, OracleError> {
    oracle_decision_trace_capped(codebook, reversed_bits, DEFAULT_PARSE_CAP)
}

pub fn oracle_decision_trace_capped(
    codebook: &Codebook,
    reversed_bits: &BitString,
    cap: usize,
) -> Result<Vec<DecisionEvent>, OracleError> {
    let n = reversed_bits.len();
    if n > cap {
        return Err(OracleError::BitCapExceeded { len: n, cap });
    }
    let rev = reversed_codewords(codebook);
    let bits = reversed_bits.bits();

    let mut events: Vec<DecisionEvent> = Vec::new();
    let mut committed: usize = 0; // symbols committed so far, across all parses
    let mut consumed: u64 = 0; // reversed-codeword bits of committed symbols
    let mut last: Vec<PartialParse> = Vec::new();

    for t in 1..=n {
        let partials = viable_partials(&rev, &bits[..t]);
        if partials.is_empty() {
            return Err(OracleError::NoParse(t));
        }
        let mut decided: Vec<u16> = Vec::new();
        let mut offset = committed;
        loop {
            if partials.iter().any(|p| p.symbols.len() <= offset) {
                break;
            }
            let first = partials[0].symbols[offset];
            if !partials.iter().all(|p| p.symbols[offset] == first) {
                break;
            }
            decided.push(first);
            offset += 1;
        }
        if !decided.is_empty() {
            committed = offset;
            events.push(make_event(
                events.len() as u32 + 1,
                decided,
                t as u64,
                &mut consumed,
                codebook,
            ));
        }
        last = partials;
    }

    let complete: Vec<&PartialParse> = if n == 0 {
        return Ok(events);
    } else {
        last.iter().filter(|p| p.residual == 0).collect()
    };
    if complete.len() != 1 {
        return Err(OracleError::AmbiguousStream(complete.len()));
    }
    let tail: Vec<u16> = complete[0].symbols[committed..].to_vec();
    if !tail.is_empty() {
        events.push(make_event(
            events.len() as u32 + 1,
            tail,
            n as u64,
            &mut consumed,
            codebook,
        ));
    }
    Ok(events)
}

fn make_event(
    index: u32,
    symbols: Vec<u16>,
    commit_time: u64,
    consumed: &mut u64,
    codebook: &Codebook,
) -> DecisionEvent {
    let first_end = *consumed + codebook.codeword(symbols[0]).len() as u64;
    for &s in &symbols {
        *consumed += codebook.codeword(s).len() as u64;
    }
    DecisionEvent {
        index,
        symbols,
        commit_time,
        first_end,
        delay: commit_time as i64 - first_end as i64,
    }
}

/// Exact average per-decision delay over all `m^message_len` messages,
/// each weighted by its dyadic probability.
pub fn exhaustive_avg_delay(
    codebook: &Codebook,
    message_len: usize,
) -> Result<BigRational, OracleError> {
    exhaustive_avg_delay_capped(codebook, message_len, DEFAULT_MESSAGE_CAP, usize::MAX)
}

pub fn exhaustive_avg_delay_capped(
    codebook: &Codebook,
    message_len: usize,
    message_cap: u64,
    bit_cap: usize,
) -> Result<BigRational, OracleError> {
    let m = codebook.alphabet_size() as u64;
    let count = m.checked_pow(message_len as u32).unwrap_or(u64::MAX);
    if count > message_cap {
        return Err(OracleError::MessageCapExceeded {
            count,
            cap: message_cap,
        });
    }
    let mut weighted_delay = BigRational::zero();
    let mut weighted_events = BigRational::zero();
    let mut message = vec![0u16; message_len];
    loop {
        let bits = codebook.encode(&message).expect("ids in range");
        let events = oracle_decision_trace_capped(codebook, &bits.reversed(), bit_cap)?;
        let prob = BigRational::new(BigInt::one(), BigInt::from(2u8).pow(bits.len() as u32));
        let total_delay: i64 = events.iter().map(|e| e.delay).sum();
        weighted_delay += &prob * BigRational::from(BigInt::from(total_delay));
        weighted_events += &prob * BigRational::from(BigInt::from(events.len() as u64));
        // odometer increment over the symbol alphabet
        let mut i = message_len;
        loop {
            if i == 0 {
                return Ok(if weighted_events.is_zero() {
                    BigRational::zero()
                } else {
                    weighted_delay / weighted_events
                });
            }
            i -= 1;
            message[i] += 1;
            if (message[i] as u64) < m {
                break;
            }
            message[i] = 0;
        }
    }
}
