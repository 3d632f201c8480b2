//! Scenario-list backward decoder with per-decision delay instrumentation.
//!
//! The decoder processes the bitwise-reversed stream left to right over the
//! backward trie. Each scenario holds a buffer of tentatively committed
//! symbols plus a trie cursor. Entering a middle square spawns a twin
//! scenario restarted at the root; entering a leaf square replaces the
//! scenario by its restarted form; entering a null node kills it. After every
//! bit, symbols agreed on by all live scenarios are committed as a decision
//! event carrying its measured delay.
//!
//! Delay convention: `delay = t - e` where `t` is the 1-based index of the
//! reversed-stream bit after whose processing the commit fires and `e` is the
//! reversed-stream position of the final bit of the event's first committed
//! codeword. End-of-stream commits use `t = N`. With the optional early
//! commit (single live scenario, empty buffer, branchless chain below the
//! cursor) the delay is `-k` for a chain of `k` bits.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::backtrie::{BackwardTrie, NodeId, NodeKind, ROOT};
use crate::codebook::BitString;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("invalid stream at bit {at}: {reason}")]
    InvalidStream { at: u64, reason: String },
    #[error("decoder invariant violated at bit {at}: {reason}")]
    InvariantViolation { at: u64, reason: String },
}

/// One live decoding hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    /// Committed-but-undecided symbols, in backward-stream order.
    pub buffer: VecDeque<u16>,
    pub cursor: NodeId,
    /// Set while an early-committed codeword is still being walked.
    pub pending: Option<u16>,
}

/// A decode decision: one or more symbols committed after some bit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecisionEvent {
    /// 1-based decision ordinal within the stream.
    pub index: u32,
    /// Symbols committed at this decision, in backward-stream order.
    pub symbols: Vec<u16>,
    /// 1-based reversed-stream bit position at which the decision fired.
    pub commit_time: u64,
    /// Reversed-stream position of the last bit of the first committed codeword.
    pub first_end: u64,
    /// `commit_time - first_end`, in bits.
    pub delay: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecodeResult {
    /// Decoded message in forward order.
    pub symbols: Vec<u16>,
    pub events: Vec<DecisionEvent>,
    /// Peak live list size observed after any bit.
    pub max_list_size: u32,
    /// Total scenarios created over the run.
    pub scenario_adds: u64,
}

/// Checks whether the subtree below `node` (nulls excluded) is a branchless
/// chain ending in a leaf square with no middle square strictly before it.
/// Returns the inevitable symbol and the chain length in bits.
pub fn early_commit_check(trie: &BackwardTrie, node: NodeId) -> Option<(u16, u32)> {
    let mut cur = node;
    let mut k = 0u32;
    loop {
        if trie.node(cur).kind == NodeKind::LeafSquare {
            return None; // no children to walk; cursors never rest here anyway
        }
        let non_null: Vec<NodeId> = (0..2u8)
            .map(|b| trie.child(cur, b))
            .filter(|&c| trie.node(c).kind != NodeKind::Null)
            .collect();
        if non_null.len() != 1 {
            return None;
        }
        let child = non_null[0];
        k += 1;
        match trie.node(child).kind {
            NodeKind::MiddleSquare => return None,
            NodeKind::LeafSquare => {
                return Some((trie.node(child).symbol.expect("squares carry a symbol"), k))
            }
            NodeKind::Plain => cur = child,
            NodeKind::Null => unreachable!("null children were filtered"),
        }
    }
}

/// Decodes `bits` (a forward-order encoding) backwards. See module docs.
pub fn backward_decode(
    trie: &BackwardTrie,
    bits: &BitString,
    early_commit: bool,
) -> Result<DecodeResult, DecodeError> {
    decode_inner(trie, bits, early_commit, None)
}

/// As [`backward_decode`], additionally returning a line-per-bit log of the
/// full scenario list.
pub fn backward_decode_trace(
    trie: &BackwardTrie,
    bits: &BitString,
    early_commit: bool,
) -> Result<(DecodeResult, Vec<String>), DecodeError> {
    let mut log = Vec::new();
    let result = decode_inner(trie, bits, early_commit, Some(&mut log))?;
    Ok((result, log))
}

fn decode_inner(
    trie: &BackwardTrie,
    bits: &BitString,
    early_commit: bool,
    mut trace: Option<&mut Vec<String>>,
) -> Result<DecodeResult, DecodeError> {
    let reversed = bits.reversed();
    let n = reversed.len() as u64;
    let codebook = trie.codebook();

    let mut list: Vec<Scenario> = vec![Scenario {
        buffer: VecDeque::new(),
        cursor: ROOT,
        pending: None,
    }];
    let mut events: Vec<DecisionEvent> = Vec::new();
    let mut max_list_size: u32 = 1;
    let mut scenario_adds: u64 = 0;
    // total reversed-codeword bits of all committed symbols so far
    let mut consumed: u64 = 0;

    for (i, &bit) in reversed.bits().iter().enumerate() {
        let t = i as u64 + 1;
        let mut next: Vec<Scenario> = Vec::with_capacity(list.len() + 1);
        let mut root_reset: Option<usize> = None;
        let mut adds_this_bit: u64 = 0;

        let push_reset = |next: &mut Vec<Scenario>,
                              root_reset: &mut Option<usize>,
                              adds: &mut u64,
                              scenario: Scenario|
         -> Result<(), DecodeError> {
            debug_assert_eq!(scenario.cursor, ROOT);
            if let Some(idx) = *root_reset {
                if next[idx] == scenario {
                    return Ok(()); // duplicate complete parse of the prefix
                }
                return Err(DecodeError::InvariantViolation {
                    at: t,
                    reason: "two distinct complete parses of a prefix".into(),
                });
            }
            *root_reset = Some(next.len());
            next.push(scenario);
            *adds += 1;
            Ok(())
        };

        for mut s in list.drain(..) {
            let child = trie.child(s.cursor, bit);
            match trie.node(child).kind {
                NodeKind::Null => {} // scenario dies
                NodeKind::Plain => {
                    s.cursor = child;
                    next.push(s);
                }
                NodeKind::LeafSquare => {
                    let sym = trie.node(child).symbol.unwrap();
                    if let Some(pending) = s.pending.take() {
                        if pending != sym {
                            return Err(DecodeError::InvariantViolation {
                                at: t,
                                reason: "early-committed symbol mismatch".into(),
                            });
                        }
                        // already committed; restart without buffering
                    } else {
                        s.buffer.push_back(sym);
                    }
                    s.cursor = ROOT;
                    push_reset(&mut next, &mut root_reset, &mut adds_this_bit, s)?;
                }
                NodeKind::MiddleSquare => {
                    if s.pending.is_some() {
                        return Err(DecodeError::InvariantViolation {
                            at: t,
                            reason: "middle square on an early-commit chain".into(),
                        });
                    }
                    let sym = trie.node(child).symbol.unwrap();
                    let mut twin = s.clone();
                    twin.buffer.push_back(sym);
                    twin.cursor = ROOT;
                    s.cursor = child;
                    next.push(s);
                    push_reset(&mut next, &mut root_reset, &mut adds_this_bit, twin)?;
                }
            }
        }

        if next.is_empty() {
            return Err(DecodeError::InvalidStream {
                at: t,
                reason: "scenario list became empty".into(),
            });
        }
        if adds_this_bit > 1 {
            return Err(DecodeError::InvariantViolation {
                at: t,
                reason: format!("{adds_this_bit} scenarios inserted in one step"),
            });
        }
        scenario_adds += adds_this_bit;
        list = next;
        check_structure(trie, &list, t)?;
        max_list_size = max_list_size.max(list.len() as u32);

        // step 4: commit while every first buffered symbol agrees
        let mut decided: Vec<u16> = Vec::new();
        while let Some(&first) = list[0].buffer.front() {
            if !list.iter().all(|s| s.buffer.front() == Some(&first)) {
                break;
            }
            for s in &mut list {
                s.buffer.pop_front();
            }
            decided.push(first);
        }
        if !decided.is_empty() {
            events.push(make_event(
                events.len() as u32 + 1,
                decided,
                t,
                &mut consumed,
                codebook,
            ));
        }

        if early_commit && list.len() == 1 {
            let s = &mut list[0];
            if s.buffer.is_empty() && s.pending.is_none() {
                if let Some((sym, k)) = early_commit_check(trie, s.cursor) {
                    s.pending = Some(sym);
                    let event = make_event(
                        events.len() as u32 + 1,
                        vec![sym],
                        t,
                        &mut consumed,
                        codebook,
                    );
                    debug_assert_eq!(event.delay, -(k as i64));
                    events.push(event);
                }
            }
        }

        if let Some(log) = trace.as_deref_mut() {
            log.push(trace_line(trie, t, bit, &list, &events));
        }
    }

    // end of stream: only a root-cursor scenario is a complete parse
    list.retain(|s| s.cursor == ROOT);
    if list.len() != 1 {
        return Err(DecodeError::InvalidStream {
            at: n,
            reason: format!("{} root-cursor scenarios at end of stream", list.len()),
        });
    }
    let survivor = list.pop().unwrap();
    if !survivor.buffer.is_empty() {
        events.push(make_event(
            events.len() as u32 + 1,
            survivor.buffer.into_iter().collect(),
            n,
            &mut consumed,
            codebook,
        ));
    }

    let mut symbols: Vec<u16> = events.iter().flat_map(|e| e.symbols.iter().copied()).collect();
    symbols.reverse();
    Ok(DecodeResult {
        symbols,
        events,
        max_list_size,
        scenario_adds,
    })
}

fn make_event(
    index: u32,
    symbols: Vec<u16>,
    commit_time: u64,
    consumed: &mut u64,
    codebook: &crate::codebook::Codebook,
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

/// Property 2 and the distinct-levels lemma, enforced after every bit.
fn check_structure(trie: &BackwardTrie, list: &[Scenario], t: u64) -> Result<(), DecodeError> {
    let mut levels: Vec<u32> = Vec::with_capacity(list.len());
    for s in list {
        let node = trie.node(s.cursor);
        if matches!(node.kind, NodeKind::LeafSquare | NodeKind::Null) {
            return Err(DecodeError::InvariantViolation {
                at: t,
                reason: "cursor resting on a leaf square or null node".into(),
            });
        }
        levels.push(node.level());
    }
    levels.sort_unstable();
    if levels.windows(2).any(|w| w[0] == w[1]) {
        return Err(DecodeError::InvariantViolation {
            at: t,
            reason: "two cursors on the same trie level".into(),
        });
    }
    if list.len() as u32 > trie.depth() {
        return Err(DecodeError::InvariantViolation {
            at: t,
            reason: "list size exceeds the trie level count".into(),
        });
    }
    Ok(())
}

fn trace_line(
    trie: &BackwardTrie,
    t: u64,
    bit: u8,
    list: &[Scenario],
    events: &[DecisionEvent],
) -> String {
    let mut line = format!("t={} bit={} |L|={} scenarios=[", t, bit, list.len());
    for (i, s) in list.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push('{');
        for (j, sym) in s.buffer.iter().enumerate() {
            if j > 0 {
                line.push(',');
            }
            let _ = write!(line, "c{}", sym + 1);
        }
        line.push(';');
        let label = trie.node(s.cursor).label.to_string();
        if label.is_empty() {
            line.push('-');
        } else {
            line.push_str(&label);
        }
        line.push('}');
    }
    line.push_str("] decided=[");
    let decided: Vec<String> = events
        .iter()
        .filter(|e| e.commit_time == t)
        .flat_map(|e| e.symbols.iter().map(|s| format!("c{}", s + 1)))
        .collect();
    line.push_str(&decided.join(","));
    line.push(']');
    line
}
