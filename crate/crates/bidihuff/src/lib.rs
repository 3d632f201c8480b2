//! Bidirectional-decoding toolkit for complete binary prefix codes.
//!
//! The core object is the backward decoder: a scenario-list algorithm that
//! reads an encoded stream from its last bit toward its first and reports,
//! for every decision it makes, how many bits late that decision was. On top
//! of it sit brute-force oracles, enumeration of all codes sharing a length
//! vector, structural delay measures with a minimum-delay code search, and a
//! Monte Carlo lab that reproduces the published reference tables.

pub mod backtrie;
pub mod cli;
pub mod codebook;
pub mod decoder;
pub mod enumerator;
pub mod measures;
pub mod oracle;
pub mod published;
pub mod simlab;

pub use backtrie::{BackwardTrie, NodeClasses, NodeKind};
pub use codebook::{BitString, Codebook, LengthVector};
pub use decoder::{backward_decode, backward_decode_trace, DecisionEvent, DecodeResult};
pub use enumerator::{complete_length_vectors, count_equivalent, enumerate_codes};
pub use measures::{m_measure, select_min_delay_code, EtaMode, MeasureReport};
pub use simlab::{simulate_code, sweep_family, DelayStats, SimConfig};
