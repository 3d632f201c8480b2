//! Delay measures on the backward E-tree and the argmax-M code search.
//!
//! `m_plus` weights the middle squares by `2^-level`; `m_delta` weights the
//! children of the middle squares and of the root by `eta * 2^-level`, where
//! `eta` is +1 on middle squares, -1 on null nodes and 0 elsewhere. The `M`
//! measure is their sum; the search picks the equivalent code maximizing it.
//! All arithmetic is exact rational.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::backtrie::{BackwardTrie, NodeId, NodeKind, ROOT};
use crate::codebook::{Codebook, LengthVector};
use crate::enumerator::{enumerate_codes, EnumeratorError};

/// Classification of leaf squares in the eta function. The default treats
/// them as "other" nodes (eta = 0); the alternate mode scores every square
/// +1 and exists for experimentation only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EtaMode {
    #[default]
    LeavesZero,
    LeavesPositive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureReport {
    pub m_plus: BigRational,
    pub m_delta: BigRational,
    pub m_total: BigRational,
}

pub fn eta(kind: NodeKind, mode: EtaMode) -> i32 {
    match kind {
        NodeKind::MiddleSquare => 1,
        NodeKind::Null => -1,
        NodeKind::Plain => 0,
        NodeKind::LeafSquare => match mode {
            EtaMode::LeavesZero => 0,
            EtaMode::LeavesPositive => 1,
        },
    }
}

fn level_weight(level: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2u8).pow(level))
}

/// Sum of `2^-level` over the middle square nodes.
pub fn m_plus(trie: &BackwardTrie) -> BigRational {
    trie.node_classes()
        .v
        .iter()
        .map(|&id| level_weight(trie.node(id).level()))
        .fold(BigRational::zero(), |acc, w| acc + w)
}

/// Sum of `eta(n) * 2^-level(n)` over `Q = Children(V) union Children(Root)`.
/// `Q` is a set: a node reached both ways counts once.
pub fn m_delta(trie: &BackwardTrie, mode: EtaMode) -> BigRational {
    let mut q: BTreeSet<NodeId> = BTreeSet::new();
    let mut parents: Vec<NodeId> = trie.node_classes().v;
    parents.push(ROOT);
    for p in parents {
        for bit in 0..2u8 {
            q.insert(trie.child(p, bit));
        }
    }
    q.iter()
        .map(|&id| {
            let n = trie.node(id);
            BigRational::from(BigInt::from(eta(n.kind, mode))) * level_weight(n.level())
        })
        .fold(BigRational::zero(), |acc, w| acc + w)
}

/// Builds the backward trie of `code` and reports all three measures.
pub fn m_measure(code: &Codebook, mode: EtaMode) -> MeasureReport {
    let trie = BackwardTrie::build(code);
    let m_plus = m_plus(&trie);
    let m_delta = m_delta(&trie, mode);
    let m_total = &m_plus + &m_delta;
    MeasureReport {
        m_plus,
        m_delta,
        m_total,
    }
}

/// Enumerates the family of `lv` and returns the code maximizing `M`.
/// Ties break to the lexicographically smallest codeword table.
pub fn select_min_delay_code(
    lv: &LengthVector,
    cap: u64,
    mode: EtaMode,
) -> Result<(Codebook, MeasureReport), EnumeratorError> {
    let family = enumerate_codes(lv, cap)?;
    let mut best: Option<(Codebook, MeasureReport, String)> = None;
    for code in family.iter() {
        let report = m_measure(&code, mode);
        let key = code.to_text();
        let better = match &best {
            None => true,
            Some((_, b, bkey)) => {
                report.m_total > b.m_total || (report.m_total == b.m_total && key < *bkey)
            }
        };
        if better {
            best = Some((code, report, key));
        }
    }
    let (code, report, _) = best.expect("families are never empty");
    Ok((code, report))
}
